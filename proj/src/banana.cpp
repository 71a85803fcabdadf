#include "chipfire/banana.hpp"

#include <algorithm>
#include <stdexcept>

namespace chipfire {

namespace {

long long floordiv(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
long long floormod(long long a, long long b) { return a - b * floordiv(a, b); }
long long choose2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

void check_shape(const BananaTuple& t) {
    if (t.spec.lengths.size() < 2 || t.entries.size() != t.spec.lengths.size())
        throw std::invalid_argument("tuple length does not match the banana");
}

// Entries equal to n_a fill the earliest free strands; the rest become 0.
void left_justify(const std::vector<int>& n, std::vector<long long>& a) {
    std::size_t full = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] == n[i]) ++full;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && a[i] != n[i]) continue;
        a[i] = full > 0 ? n[i] : 0;
        if (full > 0) --full;
    }
}

// Core of reduce_tuple_fast; returns the number of full strands.
long long crossing_reduce(const std::vector<int>& n, std::vector<long long>& a) {
    const std::size_t m = a.size();
    long long q = 0;
    for (std::size_t i = 0; i < m; ++i) {
        q += floordiv(a[i], n[i]);
        a[i] = floormod(a[i], n[i]);
    }
    auto full_at = [&](long long s) {
        long long t = q;
        for (std::size_t i = 0; i < m; ++i) t += floordiv(a[i] + s, n[i]);
        return t;
    };
    long long lo, hi;
    if (full_at(0) >= 0) {
        hi = 0;
        lo = -1;
        while (full_at(lo) >= 0) lo *= 2;
    } else {
        lo = 0;
        hi = 1;
        while (full_at(hi) < 0) hi *= 2;
    }
    while (hi - lo > 1) {
        long long mid = lo + (hi - lo) / 2;
        (full_at(mid) >= 0 ? hi : lo) = mid;
    }
    const long long full = full_at(hi);
    long long left = full;
    for (std::size_t i = 0; i < m; ++i) {
        a[i] = floormod(a[i] + hi, n[i]);
        if (a[i] == 0 && left > 0) {
            a[i] = n[i];
            --left;
        }
    }
    if (left != 0) throw std::logic_error("tuple reduction left full strands unplaced");
    return full;
}

}  // namespace

bool is_reduced_tuple(const BananaTuple& t) {
    check_shape(t);
    const auto& n = t.spec.lengths;
    bool zero = false;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (t.entries[i] < 0 || t.entries[i] > n[i]) return false;
        if (t.entries[i] == 0) zero = true;
    }
    if (!zero) return false;
    for (std::size_t i = 0; i < n.size(); ++i)
        for (std::size_t j = 0; j < n.size(); ++j)
            if (t.entries[i] == n[i] && t.entries[j] == 0 && !(i < j)) return false;
    return true;
}

BananaTuple reduce_tuple(const BananaTuple& t) {
    check_shape(t);
    BananaTuple out = t;
    auto& a = out.entries;
    const auto& n = out.spec.lengths;
    auto normalize = [&] {
        long long m = *std::min_element(a.begin(), a.end());
        for (auto& x : a) x -= m;
        return m;
    };
    normalize();
    // Terminates: the accumulated shift only decreases after the first
    // normalization, and between shifts every step uses up a zero entry.
    for (long long steps = 0;; ++steps) {
        if (steps > 1'000'000) throw std::logic_error("tuple reduction did not terminate");
        std::size_t i = 0;
        while (i < a.size() && a[i] <= n[i]) ++i;
        if (i == a.size()) break;
        const auto j = static_cast<std::size_t>(std::find(a.begin(), a.end(), 0LL) - a.begin());
        a[i] -= n[i];
        a[j] = n[j];
        normalize();
    }
    left_justify(n, a);
    return out;
}

BananaTuple reduce_tuple_fast(const BananaTuple& t) {
    check_shape(t);
    BananaTuple out = t;
    crossing_reduce(out.spec.lengths, out.entries);
    return out;
}

BananaTuple divisor_to_tuple(const Graph& g, const Divisor& d) {
    if (!g.banana()) throw GraphError("not a banana graph");
    if (d.size() != g.size()) throw GraphError("divisor size does not match graph");
    const auto& spec = *g.banana();
    BananaTuple t{spec, std::vector<long long>(spec.lengths.size(), 0), d.degree()};
    t.entries[0] += d[g.right()] * spec.lengths[0];
    for (int a = 0; a <= spec.genus(); ++a)
        for (int i = 1; i < spec.lengths[static_cast<std::size_t>(a)]; ++i)
            t.entries[static_cast<std::size_t>(a)] += d[g.banana_vertex(a, i)] * i;
    return reduce_tuple_fast(t);
}

BananaReducedDivisor tuple_to_reduced_divisor(const BananaTuple& t, long long degree) {
    if (!is_reduced_tuple(t)) throw std::invalid_argument("tuple is not reduced");
    BananaReducedDivisor r;
    long long nonzero = 0;
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        const long long x = t.entries[i];
        if (x == 0) continue;
        ++nonzero;
        if (x == t.spec.lengths[i]) ++r.b;
        else r.interior[static_cast<int>(i)] = static_cast<int>(x);
    }
    r.a = degree - nonzero;
    return r;
}

Divisor to_divisor(const Graph& g, const BananaReducedDivisor& r) {
    Divisor d(g.size());
    d.add(g.left(), r.a).add(g.right(), r.b);
    for (auto [strand, pos] : r.interior) d.add(g.banana_vertex(strand, pos), 1);
    return d;
}

int banana_rank(long long a, long long b, int e, int g) {
    if (b < 0 || e < 0 || e > g + 1 || b > g - e) throw std::invalid_argument("not a reduced banana divisor");
    if (a < 0) return -1;
    return static_cast<int>(std::min(a, b) + std::max(0LL, std::max(a, b) - (g - e)));
}

std::string to_string(TauCase c) {
    switch (c) {
        case TauCase::MultivalentPair: return "MultivalentPair";
        case TauCase::OneOff: return "OneOff";
        case TauCase::BothOffSimple: return "BothOffSimple";
        case TauCase::BothOff: return "BothOff";
    }
    return "?";
}

std::string to_string(BoundCase c) {
    switch (c) {
        case BoundCase::MultivalentPair: return "MultivalentPair";
        case BoundCase::OneOff: return "OneOff";
        case BoundCase::BothOffMin: return "BothOffMin";
    }
    return "?";
}

MarkedGraph tau_case_marks(TauCase c, const Graph& g) {
    if (!g.banana()) throw GraphError("not a banana graph");
    const auto& n = g.banana()->lengths;
    switch (c) {
        case TauCase::MultivalentPair: return MarkedGraph{g, g.left(), g.right()};
        case TauCase::OneOff: return MarkedGraph{g, g.left(), g.banana_vertex(0, n[0] - 1)};
        case TauCase::BothOffSimple:
        case TauCase::BothOff: return MarkedGraph{g, g.banana_vertex(0, 1), g.banana_vertex(1, n[1] - 1)};
    }
    throw std::invalid_argument("unknown case");
}

Divisor tau_case_divisor(const Graph& g) {
    return Divisor::point(g.size(), g.right(), g.genus());
}

std::optional<long long> predicted_tau(TauCase c, const BananaSpec& spec, long long b) {
    const long long g = spec.genus();
    const long long n0 = spec.lengths[0], n1 = spec.lengths[1];
    switch (c) {
        case TauCase::MultivalentPair:
            if (b < 0 || b > g) return std::nullopt;
            return g - b;
        case TauCase::OneOff: {
            if (n0 < 2 || b < 0 || b * (n0 - 1) > n0 * g) return std::nullopt;
            const long long res = b % n0;
            if (res == 0) return b / n0;
            if (res == n0 - 1) return g + (b + 1) / n0;
            return g + 2 * (b / n0) - b + 1;
        }
        case TauCase::BothOffSimple:
            if (n0 < 2 || n1 < 2) return std::nullopt;
            // Fails at b = g + 2 - n0; the window starts one later.
            if (b < std::max(2LL, g + 3 - n0) || b > std::min(g - 1, n1 - 2)) return std::nullopt;
            return g - b + 2;
        case TauCase::BothOff: {
            if (n0 < 2 || n1 < 2 || b < 1 || b * (n1 - 1) > n1 * g) return std::nullopt;
            const long long res = b % n1;
            if (res == 0) {
                if (b > n1 * (n0 - 1)) return std::nullopt;
                return b / n1 + 1;
            }
            if (res == n1 - 1) {
                // b = 1 with n1 = 2 is a genuine exception.
                if (b < 2 || b > n1 * (n0 - 1 - g) - 1) return std::nullopt;
                return g + (b + 1) / n1;
            }
            if (b < 2 || 2 * (b / n1) - b > n0 - 3 - g) return std::nullopt;
            return g + 2 * (b / n1) - b + 2;
        }
    }
    throw std::invalid_argument("unknown case");
}

long long inversion_lower_bound(BoundCase c, const BananaSpec& spec) {
    const long long g = spec.genus();
    const long long n0 = spec.lengths[0], n1 = spec.lengths[1];
    switch (c) {
        case BoundCase::MultivalentPair: return choose2(g + 1);
        case BoundCase::OneOff: {
            if (n0 < 2) throw std::invalid_argument("OneOff needs n0 >= 2");
            auto f = [&](long long x) { return x / (n0 - 1); };
            const long long fg = f(g);
            const long long h = fg * (n0 - 2) + std::min(n0 - 2, f(n0 * g) - n0 * fg);
            return choose2(fg + 1) + fg * h + choose2(h);
        }
        case BoundCase::BothOffMin:
            if (std::min(n0, n1) < g + 1) throw std::invalid_argument("BothOffMin needs min(n0,n1) >= g+1");
            return choose2(g - 2);
    }
    throw std::invalid_argument("unknown case");
}

BananaRank::BananaRank(const Graph& g) : g_(g) {
    if (!g.banana()) throw GraphError("not a banana graph");
    strand_of_.assign(g.size(), -1);
    pos_of_.assign(g.size(), 0);
    const auto& n = g.banana()->lengths;
    for (int a = 0; a < static_cast<int>(n.size()); ++a)
        for (int i = 1; i < n[static_cast<std::size_t>(a)]; ++i) {
            Vertex v = g.banana_vertex(a, i);
            strand_of_[static_cast<std::size_t>(v)] = a;
            pos_of_[static_cast<std::size_t>(v)] = i;
        }
    strand_of_[static_cast<std::size_t>(g.right())] = 0;
    pos_of_[static_cast<std::size_t>(g.right())] = n[0];
}

BananaRank::Reduced BananaRank::reduced(const Divisor& d) const {
    const auto& n = g_.banana()->lengths;
    Reduced r;
    r.entries.assign(n.size(), 0);
    for (Vertex v = 0; v < static_cast<Vertex>(d.size()); ++v) {
        const int s = strand_of_[static_cast<std::size_t>(v)];
        if (s >= 0 && d[v] != 0) r.entries[static_cast<std::size_t>(s)] += d[v] * pos_of_[static_cast<std::size_t>(v)];
    }
    r.full = static_cast<int>(crossing_reduce(n, r.entries));
    for (std::size_t i = 0; i < n.size(); ++i)
        if (r.entries[i] != 0 && r.entries[i] != n[i]) ++r.interior;
    return r;
}

int BananaRank::rank(const Divisor& d) {
    const long long deg = d.degree();
    const int g = g_.genus();
    if (deg < 0) return -1;
    if (deg > 2LL * g - 2) return static_cast<int>(deg - g);
    const Reduced r = reduced(d);
    return banana_rank(deg - r.interior - r.full, r.full, r.interior, g);
}

Divisor BananaRank::canonical(const Divisor& d) {
    const Reduced r = reduced(d);
    const auto& n = g_.banana()->lengths;
    Divisor out(g_.size());
    out.add(g_.left(), d.degree() - r.interior - r.full).add(g_.right(), r.full);
    for (std::size_t i = 0; i < n.size(); ++i)
        if (r.entries[i] != 0 && r.entries[i] != n[i])
            out.add(g_.banana_vertex(static_cast<int>(i), static_cast<int>(r.entries[i])), 1);
    return out;
}

std::unique_ptr<RankOracle> make_rank_oracle(const Graph& g) {
    if (g.banana()) return std::make_unique<BananaRank>(g);
    return std::make_unique<BakerNorineRank>(g);
}

std::vector<BananaTuple> enumerate_reduced_tuples(const BananaSpec& spec) {
    const auto& n = spec.lengths;
    std::vector<BananaTuple> out;
    std::vector<long long> cur(n.size(), 0);
    std::vector<char> free(n.size(), 0);
    // -1 marks a free strand (entry 0 or n, decided by the count of full ones).
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n.size()) {
            const auto f = static_cast<std::size_t>(std::count(free.begin(), free.end(), 1));
            for (std::size_t b = 0; b < f; ++b) {
                BananaTuple t{spec, cur, 0};
                std::size_t placed = 0;
                for (std::size_t k = 0; k < n.size(); ++k)
                    if (free[k]) t.entries[k] = placed++ < b ? n[k] : 0;
                out.push_back(std::move(t));
            }
            return;
        }
        free[i] = 1;
        cur[i] = 0;
        self(self, i + 1);
        free[i] = 0;
        for (int x = 1; x < n[i]; ++x) {
            cur[i] = x;
            self(self, i + 1);
        }
        cur[i] = 0;
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const BananaTuple& a, const BananaTuple& b) { return a.entries < b.entries; });
    return out;
}

std::vector<Divisor> jacobian_classes(const Graph& g, std::size_t cap) {
    std::vector<Divisor> out;
    if (g.banana()) {
        const auto order = jacobian_order(g);
        if (static_cast<std::uint64_t>(order) > cap)
            throw CapExceeded("Jacobian has " + std::to_string(order) + " classes, above the cap of " +
                              std::to_string(cap));
        for (const auto& t : enumerate_reduced_tuples(*g.banana()))
            out.push_back(to_divisor(g, tuple_to_reduced_divisor(t, 0)));
    } else {
        out = enumerate_jacobian(g, g.default_base(), cap);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace chipfire
