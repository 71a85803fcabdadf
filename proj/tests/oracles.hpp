#pragma once
// Slow reference implementations for the test suites. Each one works from
// the definitions and shares no code with the library beyond the Graph and
// Divisor containers.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "chipfire/divisor.hpp"
#include "chipfire/eaf_perm.hpp"
#include "chipfire/graph.hpp"

namespace oracle {

using chipfire::Divisor;
using chipfire::EafPerm;
using chipfire::Graph;
using chipfire::Vertex;

inline std::vector<std::pair<Vertex, Vertex>> edge_list(const Graph& g) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const auto& [e, m] : g.edges())
        for (int i = 0; i < m; ++i) out.push_back(e);
    return out;
}

// Spanning trees by subset enumeration with union-find.
inline std::int64_t spanning_trees(const Graph& g) {
    const auto edges = edge_list(g);
    const std::size_t n = g.size(), m = edges.size();
    if (n == 1) return 1;
    std::int64_t count = 0;
    std::vector<std::size_t> pick(n - 1);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t depth) {
        if (depth == n - 1) {
            std::vector<std::size_t> parent(n);
            std::iota(parent.begin(), parent.end(), 0);
            std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
                return parent[x] == x ? x : parent[x] = root(parent[x]);
            };
            for (std::size_t i : pick) {
                auto a = root(static_cast<std::size_t>(edges[i].first));
                auto b = root(static_cast<std::size_t>(edges[i].second));
                if (a == b) return;
                parent[a] = b;
            }
            ++count;
            return;
        }
        for (std::size_t i = from; i < m; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return count;
}

inline std::vector<int> distances(const Graph& g, Vertex q) {
    std::vector<int> dist(g.size(), -1);
    std::deque<Vertex> queue{q};
    dist[static_cast<std::size_t>(q)] = 0;
    while (!queue.empty()) {
        Vertex x = queue.front();
        queue.pop_front();
        for (const auto& nb : g.neighbors(x))
            if (dist[static_cast<std::size_t>(nb.to)] < 0) {
                dist[static_cast<std::size_t>(nb.to)] = dist[static_cast<std::size_t>(x)] + 1;
                queue.push_back(nb.to);
            }
    }
    return dist;
}

inline void fire_set(const Graph& g, Divisor& d, const std::vector<char>& in) {
    for (const auto& [e, m] : g.edges()) {
        const bool a = in[static_cast<std::size_t>(e.first)], b = in[static_cast<std::size_t>(e.second)];
        if (a == b) continue;
        const Vertex from = a ? e.first : e.second, to = a ? e.second : e.first;
        d.add(from, -m).add(to, m);
    }
}

// q-reduced form: fix the farthest debt by firing the ball just inside it,
// then burn from q and fire whatever survives, one firing at a time.
inline Divisor reduce(const Graph& g, Divisor d, Vertex q) {
    const auto dist = distances(g, q);
    const auto n = static_cast<Vertex>(g.size());
    for (;;) {
        Vertex worst = -1;
        for (Vertex x = 0; x < n; ++x)
            if (x != q && d[x] < 0 && (worst < 0 || dist[static_cast<std::size_t>(x)] > dist[static_cast<std::size_t>(worst)]))
                worst = x;
        if (worst < 0) break;
        std::vector<char> ball(g.size());
        for (Vertex x = 0; x < n; ++x) ball[static_cast<std::size_t>(x)] = dist[static_cast<std::size_t>(x)] < dist[static_cast<std::size_t>(worst)];
        fire_set(g, d, ball);
    }
    for (;;) {
        std::vector<char> burnt(g.size());
        burnt[static_cast<std::size_t>(q)] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (Vertex x = 0; x < n; ++x) {
                if (burnt[static_cast<std::size_t>(x)]) continue;
                long long fire = 0;
                for (const auto& nb : g.neighbors(x))
                    if (burnt[static_cast<std::size_t>(nb.to)]) fire += nb.mult;
                if (fire > d[x]) {
                    burnt[static_cast<std::size_t>(x)] = 1;
                    grew = true;
                }
            }
        }
        std::vector<char> unburnt(g.size());
        bool any = false;
        for (std::size_t i = 0; i < g.size(); ++i) {
            unburnt[i] = !burnt[i];
            any = any || unburnt[i];
        }
        if (!any) return d;
        fire_set(g, d, unburnt);
    }
}

// Definition: nonnegative off q and no nonempty S inside V - q can fire.
inline bool is_reduced(const Graph& g, const Divisor& d, Vertex q) {
    const auto n = static_cast<Vertex>(g.size());
    for (Vertex x = 0; x < n; ++x)
        if (x != q && d[x] < 0) return false;
    std::vector<Vertex> others;
    for (Vertex x = 0; x < n; ++x)
        if (x != q) others.push_back(x);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << others.size()); ++mask) {
        std::vector<char> in(g.size());
        for (std::size_t i = 0; i < others.size(); ++i)
            if (mask >> i & 1) in[static_cast<std::size_t>(others[i])] = 1;
        Divisor e = d;
        fire_set(g, e, in);
        bool legal = true;
        for (Vertex x = 0; x < n; ++x)
            if (in[static_cast<std::size_t>(x)] && e[x] < 0) legal = false;
        if (legal) return false;
    }
    return true;
}

inline bool effective_class(const Graph& g, const Divisor& d) { return oracle::reduce(g, d, 0)[0] >= 0; }

// Baker-Norine rank straight from the definition over all vertices.
inline int rank(const Graph& g, const Divisor& d) {
    if (!effective_class(g, d)) return -1;
    const auto n = static_cast<Vertex>(g.size());
    for (int r = 1;; ++r) {
        std::vector<Vertex> e(static_cast<std::size_t>(r), 0);
        bool ok = true;
        for (;;) {
            Divisor t = d;
            for (Vertex x : e) t.add(x, -1);
            if (!effective_class(g, t)) {
                ok = false;
                break;
            }
            int i = r - 1;
            while (i >= 0 && e[static_cast<std::size_t>(i)] == n - 1) --i;
            if (i < 0) break;
            const Vertex next = e[static_cast<std::size_t>(i)] + 1;
            for (int j = i; j < r; ++j) e[static_cast<std::size_t>(j)] = next;
        }
        if (!ok) return r - 1;
    }
}

inline int delta(const Graph& g, Vertex u, Vertex v, const Divisor& d) {
    Divisor du = d, dv = d, duv = d;
    du.add(u, -1);
    dv.add(v, -1);
    duv.add(u, -1).add(v, -1);
    return oracle::rank(g, d) - oracle::rank(g, du) - oracle::rank(g, dv) + oracle::rank(g, duv);
}

inline long long torsion_order(const Graph& g, Vertex u, Vertex v) {
    Divisor d(g.size());
    for (long long k = 1;; ++k) {
        d.add(u, 1).add(v, -1);
        if (oracle::reduce(g, d, 0).is_zero()) return k;
    }
}

// Degree-0 classes by closing {0} under +-(x - y) over edges, as reduced forms.
inline std::vector<Divisor> jacobian(const Graph& g) {
    std::vector<Divisor> seen{Divisor(g.size())};
    std::deque<Divisor> queue{seen.front()};
    auto has = [&](const Divisor& d) { return std::find(seen.begin(), seen.end(), d) != seen.end(); };
    while (!queue.empty()) {
        Divisor d = queue.front();
        queue.pop_front();
        for (Vertex x = 1; x < static_cast<Vertex>(g.size()); ++x) {
            for (int s : {1, -1}) {
                Divisor e = d;
                e.add(x, s).add(0, -s);
                e = oracle::reduce(g, e, 0);
                if (!has(e)) {
                    seen.push_back(e);
                    queue.push_back(e);
                }
            }
        }
    }
    return seen;
}

// Transmission permutation from its defining property, by scanning a window
// of twists: tau(b) = a where Delta(D + a u - b v) = 1.
inline std::vector<long long> tau_window(const Graph& g, Vertex u, Vertex v, const Divisor& d, long long k) {
    std::vector<long long> w;
    const int gen = g.genus();
    for (long long b = 0; b < k; ++b) {
        long long found = std::numeric_limits<long long>::min();
        for (long long a = b - d.degree() - 2; a <= b - d.degree() + 2 * gen + 2; ++a) {
            Divisor t = d;
            t.add(u, a).add(v, -b);
            if (delta(g, u, v, t) == 1) found = a;
        }
        w.push_back(found);
    }
    return w;
}

// Demazure product by the min-plus law on counting functions.
inline long long s_count(const EafPerm& p, long long a, long long b) {
    long long c = 0;
    for (long long l = b; l < a + 4 * p.modulus() + 64; ++l)
        if (p(l) < a) ++c;
    return c;
}
inline long long minplus(const EafPerm& a, const EafPerm& b, long long x, long long y) {
    long long best = std::numeric_limits<long long>::max();
    for (long long c = std::min(x, y) - 40; c <= std::max(x, y) + 40; ++c)
        best = std::min(best, oracle::s_count(a, x, c) + oracle::s_count(b, c, y));
    return best;
}

// k-inversions: pairs (i, j), 0 <= i < k, i < j, p(i) > p(j).
inline long long inversions(const EafPerm& p) {
    long long c = 0;
    const long long k = p.modulus();
    for (long long i = 0; i < k; ++i)
        for (long long j = i + 1; j < i + 200 * k + 200; ++j)
            if (p(i) > p(j)) ++c;
    return c;
}

// Pairs i < j (mod shift) with p(i) > 0 >= p(j) counted once per class.
inline long long sign_changing(const EafPerm& p) {
    long long c = 0;
    const long long k = p.modulus();
    for (long long i = -300; i < 300; ++i)
        for (long long j = i + 1; j < 300; ++j)
            if (p(i) > 0 && p(j) <= 0) ++c;
    (void)k;
    return c;
}

inline EafPerm random_eaf(int k, std::mt19937& rng, int spread = 2) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<long long> w;
    std::uniform_int_distribution<int> off(-spread, spread);
    for (int i = 0; i < k; ++i) w.push_back(perm[static_cast<std::size_t>(i)] + static_cast<long long>(k) * off(rng));
    return EafPerm(k, w);
}

// Small graphs of several shapes, for property sweeps.
inline std::vector<Graph> small_graphs() {
    using chipfire::build_banana;
    using chipfire::build_general;
    std::vector<Graph> out = {
        build_banana({1, 1, 1}),
        build_banana({2, 1, 3}),
        build_banana({2, 2, 2}),
        build_banana({1, 2, 1, 2}),
        build_banana({3, 1}),
        build_general({"a", "b", "c", "d", "e"},
                      {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}, {"d", "e"}, {"e", "c"}}),
        build_general({"a", "b", "c", "d"},
                      {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}}),
        build_general({"a", "b", "c", "p"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"a", "b"}, {"c", "p"}}),
        build_general({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}}),
        build_general({"a", "b", "c", "d", "e"},
                      {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}, {"a", "c"}, {"b", "e"}, {"e", "d"}}),
    };
    return out;
}

inline Divisor random_divisor(const Graph& g, std::mt19937& rng, long long degree, int spread = 2) {
    Divisor d(g.size());
    std::uniform_int_distribution<int> c(-spread, spread);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(g.size()) - 1);
    for (std::size_t i = 0; i < g.size(); ++i) d[static_cast<Vertex>(i)] = c(rng);
    d.add(pick(rng), degree - d.degree());
    return d;
}

}  // namespace oracle
