#include "chipfire/eaf_perm.hpp"

#include <algorithm>
#include <stdexcept>

namespace chipfire {

namespace {

long long floordiv(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

EafPerm::EafPerm(int k, std::vector<long long> window) : k_(k), w_(std::move(window)) {
    if (k < 1) throw std::invalid_argument("modulus must be positive");
    if (static_cast<int>(w_.size()) != k) throw std::invalid_argument("window length must equal the modulus");
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    long long disp = 0;
    for (int i = 0; i < k; ++i) {
        const long long r = w_[static_cast<std::size_t>(i)] - static_cast<long long>(k) * floordiv(w_[static_cast<std::size_t>(i)], k);
        if (seen[static_cast<std::size_t>(r)]) throw std::invalid_argument("window residues are not distinct");
        seen[static_cast<std::size_t>(r)] = 1;
        disp += w_[static_cast<std::size_t>(i)] - i;
    }
    if (disp % k != 0) throw std::invalid_argument("window shift is not an integer");
}

EafPerm EafPerm::identity(int k) { return shift(k, 0); }

EafPerm EafPerm::shift(int k, long long d) {
    std::vector<long long> w(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) w[static_cast<std::size_t>(i)] = i + d;
    return EafPerm(k, std::move(w));
}

EafPerm EafPerm::sigma(int k, int n) {
    if (k < 2) throw std::invalid_argument("simple reflections need modulus >= 2");
    if (n < 0 || n >= k) throw std::invalid_argument("reflection index out of range");
    std::vector<long long> w(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) w[static_cast<std::size_t>(i)] = i;
    if (n < k - 1) {
        std::swap(w[static_cast<std::size_t>(n)], w[static_cast<std::size_t>(n) + 1]);
    } else {
        w[0] = -1;
        w[static_cast<std::size_t>(k) - 1] = k;
    }
    return EafPerm(k, std::move(w));
}

long long EafPerm::operator()(long long n) const {
    const long long q = floordiv(n, k_);
    return w_[static_cast<std::size_t>(n - q * k_)] + q * k_;
}

long long EafPerm::shift_amount() const {
    long long s = 0;
    for (int i = 0; i < k_; ++i) s += w_[static_cast<std::size_t>(i)] - i;
    return s / k_;
}

long long EafPerm::min_displacement() const {
    long long m = w_[0];
    for (int i = 0; i < k_; ++i) m = std::min(m, w_[static_cast<std::size_t>(i)] - i);
    return m;
}

long long EafPerm::max_displacement() const {
    long long m = w_[0];
    for (int i = 0; i < k_; ++i) m = std::max(m, w_[static_cast<std::size_t>(i)] - i);
    return m;
}

EafPerm operator*(const EafPerm& a, const EafPerm& b) {
    if (a.k_ != b.k_) throw std::invalid_argument("modulus mismatch");
    std::vector<long long> w(static_cast<std::size_t>(a.k_));
    for (int i = 0; i < a.k_; ++i) w[static_cast<std::size_t>(i)] = a(b(i));
    return EafPerm(a.k_, std::move(w));
}

EafPerm EafPerm::inverse() const {
    std::vector<long long> w(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) {
        const long long v = w_[static_cast<std::size_t>(i)];
        const long long q = floordiv(v, k_);
        w[static_cast<std::size_t>(v - q * k_)] = i - q * k_;
    }
    return EafPerm(k_, std::move(w));
}

long long inv_k(const EafPerm& p) {
    const long long spread = p.max_displacement() - p.min_displacement();
    long long total = 0;
    for (long long b = 0; b < p.modulus(); ++b) {
        const long long tb = p(b);
        for (long long n = b - spread; n < b; ++n)
            if (p(n) > tb) ++total;
    }
    return total;
}

long long sci(const EafPerm& p) {
    // p(u) > 0 forces u >= 1 - maxd; p(v) <= 0 forces v <= -mind.
    const long long lo = 1 - p.max_displacement();
    const long long hi = -p.min_displacement();
    long long total = 0;
    long long positives = 0;
    for (long long x = lo; x <= hi; ++x) {
        const long long t = p(x);
        if (t <= 0) total += positives;
        else ++positives;
    }
    return total;
}

long long s_count(const EafPerm& p, long long a, long long b) {
    long long c = 0;
    for (long long l = b; l < a - p.min_displacement(); ++l)
        if (p(l) < a) ++c;
    return c;
}

ReducedWord reduced_word(const EafPerm& p) {
    const int k = p.modulus();
    EafPerm cur = p;
    std::vector<int> peeled;
    for (;;) {
        int d = -1;
        for (int i = 0; i < k && k >= 2; ++i)
            if (cur(i) > cur(i + 1)) {
                d = i;
                break;
            }
        if (d < 0) break;
        cur = cur * EafPerm::sigma(k, d);
        peeled.push_back(d);
    }
    std::reverse(peeled.begin(), peeled.end());
    return {cur.shift_amount(), std::move(peeled)};
}

EafPerm demazure(const EafPerm& a, const EafPerm& b) {
    if (a.modulus() != b.modulus()) throw std::invalid_argument("modulus mismatch; embed first");
    const int k = a.modulus();
    const ReducedWord rw = reduced_word(b);
    EafPerm cur = a * EafPerm::shift(k, rw.shift);
    for (int j : rw.letters)
        if (cur(j) < cur(j + 1)) cur = cur * EafPerm::sigma(k, j);
    return cur;
}

EafPerm embed(const EafPerm& p, int K) {
    if (K < 1 || K % p.modulus() != 0) throw std::invalid_argument("target modulus is not a multiple");
    std::vector<long long> w(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i) w[static_cast<std::size_t>(i)] = p(i);
    return EafPerm(K, std::move(w));
}

std::string format_window(const EafPerm& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.window().size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(p.window()[i]);
    }
    return s + "]";
}

nlohmann::json to_json(const EafPerm& p) { return {{"modulus", p.modulus()}, {"window", p.window()}}; }

EafPerm eaf_from_json(const nlohmann::json& j) {
    return EafPerm(j.at("modulus").get<int>(), j.at("window").get<std::vector<long long>>());
}

}  // namespace chipfire
