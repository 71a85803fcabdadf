#include "chipfire/divisor.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <deque>
#include <unordered_set>

namespace chipfire {

std::string format_divisor(const Graph& g, const Divisor& d) {
    std::string out;
    for (Vertex v = 0; v < static_cast<Vertex>(d.size()); ++v) {
        if (d[v] == 0) continue;
        if (!out.empty()) out += ' ';
        out += g.name(v) + ":" + std::to_string(d[v]);
    }
    return out.empty() ? "0" : out;
}

std::size_t class_cap() {
    if (const char* env = std::getenv("CHIPFIRE_CLASS_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 10'000'000;
}

void fire(const Graph& g, Divisor& d, const std::vector<Vertex>& set, long long times) {
    std::vector<char> in(g.size(), 0);
    for (Vertex v : set) in[static_cast<std::size_t>(v)] = 1;
    for (Vertex v : set) {
        for (const auto& nb : g.neighbors(v)) {
            if (in[static_cast<std::size_t>(nb.to)]) continue;
            d[v] -= times * nb.mult;
            d[nb.to] += times * nb.mult;
        }
    }
}

Divisor replay(const Graph& g, Divisor d, const std::vector<FiringStep>& cert) {
    for (const auto& step : cert) fire(g, d, step.set, step.times);
    return d;
}

namespace {

Divisor reduce_impl(const Graph& g, Divisor d, Vertex q, std::vector<FiringStep>* cert) {
    const auto n = g.size();
    if (d.size() != n) throw GraphError("divisor size does not match graph");
    if (q < 0 || static_cast<std::size_t>(q) >= n) throw GraphError("base vertex out of range");

    // Stage 1: clear debt off q by firing BFS balls around q, outermost shell first.
    std::vector<int> level(n, -1);
    std::vector<std::vector<Vertex>> shells;
    level[static_cast<std::size_t>(q)] = 0;
    shells.push_back({q});
    for (std::size_t r = 0; r < shells.size(); ++r) {
        std::vector<Vertex> next;
        for (Vertex x : shells[r])
            for (const auto& nb : g.neighbors(x))
                if (level[static_cast<std::size_t>(nb.to)] < 0) {
                    level[static_cast<std::size_t>(nb.to)] = static_cast<int>(r) + 1;
                    next.push_back(nb.to);
                }
        if (next.empty()) break;
        shells.push_back(std::move(next));
    }
    for (std::size_t r = shells.size() - 1; r-- > 0;) {
        long long c = 0;
        for (Vertex w : shells[r + 1]) {
            if (d[w] >= 0) continue;
            long long e = 0;
            for (const auto& nb : g.neighbors(w))
                if (level[static_cast<std::size_t>(nb.to)] == static_cast<int>(r)) e += nb.mult;
            c = std::max(c, (-d[w] + e - 1) / e);
        }
        if (c == 0) continue;
        for (Vertex x : shells[r])
            for (const auto& nb : g.neighbors(x))
                if (level[static_cast<std::size_t>(nb.to)] == static_cast<int>(r) + 1) {
                    d[x] -= c * nb.mult;
                    d[nb.to] += c * nb.mult;
                }
        if (cert) {
            FiringStep step{{}, c};
            for (std::size_t k = 0; k <= r; ++k) step.set.insert(step.set.end(), shells[k].begin(), shells[k].end());
            std::sort(step.set.begin(), step.set.end());
            cert->push_back(std::move(step));
        }
    }

    // Stage 2: Dhar burning; fire the unburnt set as often as stays legal.
    std::vector<char> burnt(n);
    std::vector<long long> cnt(n);
    std::vector<Vertex> queue;
    queue.reserve(n);
    for (;;) {
        std::fill(burnt.begin(), burnt.end(), 0);
        std::fill(cnt.begin(), cnt.end(), 0);
        queue.clear();
        burnt[static_cast<std::size_t>(q)] = 1;
        queue.push_back(q);
        for (std::size_t h = 0; h < queue.size(); ++h) {
            for (const auto& nb : g.neighbors(queue[h])) {
                auto y = static_cast<std::size_t>(nb.to);
                if (burnt[y]) continue;
                cnt[y] += nb.mult;
                if (cnt[y] > d[nb.to]) {
                    burnt[y] = 1;
                    queue.push_back(nb.to);
                }
            }
        }
        if (queue.size() == n) break;
        long long times = LLONG_MAX;
        for (std::size_t v = 0; v < n; ++v)
            if (!burnt[v] && cnt[v] > 0) times = std::min(times, d[static_cast<Vertex>(v)] / cnt[v]);
        FiringStep step{{}, times};
        for (std::size_t v = 0; v < n; ++v) {
            if (burnt[v]) continue;
            if (cert) step.set.push_back(static_cast<Vertex>(v));
            if (cnt[v] == 0) continue;
            d[static_cast<Vertex>(v)] -= times * cnt[v];
            for (const auto& nb : g.neighbors(static_cast<Vertex>(v)))
                if (burnt[static_cast<std::size_t>(nb.to)]) d[nb.to] += times * nb.mult;
        }
        if (cert) cert->push_back(std::move(step));
    }
    return d;
}

}  // namespace

ReducedForm dhar_reduce(const Graph& g, const Divisor& d, Vertex q) {
    ReducedForm out{{}, q, {}};
    out.divisor = reduce_impl(g, d, q, &out.certificate);
    return out;
}

Divisor reduce(const Graph& g, const Divisor& d, Vertex q) { return reduce_impl(g, d, q, nullptr); }

bool is_reduced(const Graph& g, const Divisor& d, Vertex q) {
    for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
        if (v != q && d[v] < 0) return false;
    return reduce(g, d, q) == d;
}

Divisor canonical_divisor(const Graph& g) {
    Divisor k(g.size());
    for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) k[v] = g.valence(v) - 2;
    return k;
}

bool linear_equivalent(const Graph& g, const Divisor& a, const Divisor& b) {
    if (a.degree() != b.degree()) return false;
    return reduce(g, a, g.default_base()) == reduce(g, b, g.default_base());
}

BakerNorineRank::BakerNorineRank(const Graph& g, RankStrategy s, bool use_riemann_roch)
    : g_(g), base_(g.default_base()), K_(canonical_divisor(g)), rr_(use_riemann_roch) {
    bool rds = s == RankStrategy::RankDeterminingSet || (s == RankStrategy::Auto && g.banana());
    if (rds) {
        if (!g.banana()) throw GraphError("no known rank-determining set for this graph");
        test_set_ = {g.left(), g.right()};
    } else {
        for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) test_set_.push_back(v);
    }
    // Base first: R - q has a negative base coefficient exactly when R(q) = 0.
    auto it = std::find(test_set_.begin(), test_set_.end(), base_);
    if (it != test_set_.end()) std::rotate(test_set_.begin(), it, it + 1);
}

int BakerNorineRank::rank(const Divisor& d) {
    const long long deg = d.degree();
    const long long g = g_.genus();
    if (deg < 0) return -1;
    if (rr_) {
        if (deg > 2 * g - 2) return static_cast<int>(deg - g);
        if (deg > g - 1) return static_cast<int>(deg - g + 1) + rank(K_ - d);
    }
    return rank_reduced(reduce(g_, d, base_));
}

int BakerNorineRank::rank_reduced(const Divisor& r) {
    if (r[base_] < 0) return -1;
    if (auto it = memo_.find(r); it != memo_.end()) return it->second;
    int best = INT_MAX;
    // Vertices without chips first: they are the likeliest to drop the rank to -1.
    for (int pass = 0; pass < 2 && best > -1; ++pass) {
        for (Vertex v : test_set_) {
            bool empty = r[v] == 0;
            if ((pass == 0) != empty) continue;
            if (v == base_ && empty) {
                best = -1;
                break;
            }
            Divisor s = r;
            s.add(v, -1);
            best = std::min(best, rank(s));
            if (best == -1) break;
        }
    }
    const int result = best + 1;
    if (memo_.size() > (1u << 20)) memo_.clear();
    memo_.emplace(r, result);
    return result;
}

int rank(const Graph& g, const Divisor& d) {
    BakerNorineRank o(g);
    return o.rank(d);
}

std::vector<Vertex> support_complex(RankOracle& o, const Divisor& d) {
    std::vector<Vertex> out;
    for (Vertex w = 0; w < static_cast<Vertex>(o.graph().size()); ++w) {
        Divisor e = d;
        e.add(w, -1);
        if (o.rank(e) >= 0) out.push_back(w);
    }
    return out;
}

std::vector<Vertex> support_complex(const Graph& g, const Divisor& d) {
    BakerNorineRank o(g);
    return support_complex(o, d);
}

std::vector<Divisor> enumerate_jacobian(const Graph& g, Vertex q, std::size_t cap) {
    const auto order = jacobian_order(g);
    if (static_cast<std::uint64_t>(order) > cap)
        throw CapExceeded("Jacobian has " + std::to_string(order) + " classes, above the cap of " +
                          std::to_string(cap));
    std::vector<Divisor> list;
    list.reserve(static_cast<std::size_t>(order));
    auto hash = [&list](std::size_t i) { return DivisorHash{}(list[i]); };
    auto eq = [&list](std::size_t a, std::size_t b) { return list[a] == list[b]; };
    std::unordered_set<std::size_t, decltype(hash), decltype(eq)> seen(static_cast<std::size_t>(order) * 2, hash, eq);

    list.emplace_back(g.size());
    seen.insert(0);
    for (std::size_t i = 0; i < list.size(); ++i) {
        for (Vertex w = 0; w < static_cast<Vertex>(g.size()); ++w) {
            if (w == q) continue;
            Divisor x = list[i];
            x.add(w, 1).add(q, -1);
            list.push_back(reduce(g, x, q));
            if (!seen.insert(list.size() - 1).second) list.pop_back();
        }
    }
    return list;
}

}  // namespace chipfire
