#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "chipfire/graph.hpp"

namespace chipfire {

class Divisor {
public:
    Divisor() = default;
    explicit Divisor(std::size_t n) : c_(n, 0) {}
    explicit Divisor(std::vector<long long> c) : c_(std::move(c)) {}

    static Divisor point(std::size_t n, Vertex v, long long k = 1) {
        Divisor d(n);
        d.c_[static_cast<std::size_t>(v)] = k;
        return d;
    }

    std::size_t size() const { return c_.size(); }
    long long operator[](Vertex v) const { return c_[static_cast<std::size_t>(v)]; }
    long long& operator[](Vertex v) { return c_[static_cast<std::size_t>(v)]; }
    const std::vector<long long>& coefficients() const { return c_; }

    long long degree() const {
        long long s = 0;
        for (long long x : c_) s += x;
        return s;
    }
    bool effective() const {
        for (long long x : c_)
            if (x < 0) return false;
        return true;
    }
    bool is_zero() const {
        for (long long x : c_)
            if (x != 0) return false;
        return true;
    }

    Divisor& add(Vertex v, long long k = 1) {
        c_[static_cast<std::size_t>(v)] += k;
        return *this;
    }
    Divisor& operator+=(const Divisor& o) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Divisor& operator-=(const Divisor& o) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
    friend Divisor operator*(long long k, Divisor a) {
        for (auto& x : a.c_) x *= k;
        return a;
    }
    friend Divisor operator-(Divisor a) { return -1 * std::move(a); }

    auto operator<=>(const Divisor&) const = default;
    bool operator==(const Divisor&) const = default;

private:
    std::vector<long long> c_;
};

struct DivisorHash {
    std::size_t operator()(const Divisor& d) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (long long x : d.coefficients()) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

// "s0.1:2 s2.3:-1"; zero divisor prints as "0".
std::string format_divisor(const Graph& g, const Divisor& d);

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Enumeration cap: CHIPFIRE_CLASS_CAP if set, else 10^7.
std::size_t class_cap();

struct FiringStep {
    std::vector<Vertex> set;
    long long times;
};

struct ReducedForm {
    Divisor divisor;
    Vertex base;
    std::vector<FiringStep> certificate;
};

// Fire every vertex of `set` `times` times.
void fire(const Graph& g, Divisor& d, const std::vector<Vertex>& set, long long times);
Divisor replay(const Graph& g, Divisor d, const std::vector<FiringStep>& cert);

ReducedForm dhar_reduce(const Graph& g, const Divisor& d, Vertex q);
// Same reduction without recording the certificate.
Divisor reduce(const Graph& g, const Divisor& d, Vertex q);
bool is_reduced(const Graph& g, const Divisor& d, Vertex q);

Divisor canonical_divisor(const Graph& g);
bool linear_equivalent(const Graph& g, const Divisor& a, const Divisor& b);

// Rank oracle interface. canonical() returns the reduced representative at
// graph().default_base(); every oracle for a given graph returns the same one.
class RankOracle {
public:
    virtual ~RankOracle() = default;
    virtual const Graph& graph() const = 0;
    virtual int rank(const Divisor& d) = 0;
    virtual Divisor canonical(const Divisor& d) = 0;
    bool effective_class(const Divisor& d) { return rank(d) >= 0; }
};

enum class RankStrategy {
    Auto,              // {L,R} on bananas, all vertices otherwise
    FullVertexSet,
    RankDeterminingSet
};

// Baker-Norine rank by descent over a rank-determining set, memoized on
// reduced forms. Holds a reference to the graph.
class BakerNorineRank final : public RankOracle {
public:
    explicit BakerNorineRank(const Graph& g, RankStrategy s = RankStrategy::Auto,
                             bool use_riemann_roch = true);
    const Graph& graph() const override { return g_; }
    int rank(const Divisor& d) override;
    Divisor canonical(const Divisor& d) override { return reduce(g_, d, base_); }
    const std::vector<Vertex>& test_set() const { return test_set_; }

private:
    int rank_reduced(const Divisor& r);

    const Graph& g_;
    Vertex base_;
    std::vector<Vertex> test_set_;
    Divisor K_;
    bool rr_;
    std::unordered_map<Divisor, int, DivisorHash> memo_;
};

int rank(const Graph& g, const Divisor& d);

std::vector<Vertex> support_complex(RankOracle& o, const Divisor& d);
std::vector<Vertex> support_complex(const Graph& g, const Divisor& d);

// Degree-0 reduced divisors at q, one per class, in discovery order.
std::vector<Divisor> enumerate_jacobian(const Graph& g, Vertex q, std::size_t cap = class_cap());

}  // namespace chipfire
