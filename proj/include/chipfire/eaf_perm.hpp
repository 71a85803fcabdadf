#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace chipfire {

// Bijection t of Z with t(n + k) = t(n) + k, stored as the window t(0..k-1).
class EafPerm {
public:
    EafPerm(int k, std::vector<long long> window);

    static EafPerm identity(int k);
    static EafPerm shift(int k, long long d);
    // Swaps n + mk and n + 1 + mk for every m. Needs k >= 2.
    static EafPerm sigma(int k, int n);

    int modulus() const { return k_; }
    const std::vector<long long>& window() const { return w_; }
    long long operator()(long long n) const;
    long long shift_amount() const;
    long long min_displacement() const;
    long long max_displacement() const;

    // (a * b)(n) = a(b(n)).
    friend EafPerm operator*(const EafPerm& a, const EafPerm& b);
    EafPerm inverse() const;

    bool operator==(const EafPerm&) const = default;

private:
    int k_;
    std::vector<long long> w_;
};

long long inv_k(const EafPerm& p);
long long sci(const EafPerm& p);

// #{l >= b : p(l) < a}
long long s_count(const EafPerm& p, long long a, long long b);

struct ReducedWord {
    long long shift;
    std::vector<int> letters;  // p = shift * sigma_{letters[0]} * sigma_{letters[1]} * ...
};
ReducedWord reduced_word(const EafPerm& p);

EafPerm demazure(const EafPerm& a, const EafPerm& b);
EafPerm embed(const EafPerm& p, int K);

std::string format_window(const EafPerm& p);
nlohmann::json to_json(const EafPerm& p);
EafPerm eaf_from_json(const nlohmann::json& j);

}  // namespace chipfire
