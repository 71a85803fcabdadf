#include "chipfire/transmission.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "chipfire/banana.hpp"

namespace chipfire {

long long WeierstrassPartition::size() const {
    long long s = 0;
    for (long long p : parts) s += p;
    return s;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t, unsigned)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&](unsigned id) {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i, id);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

Divisor twist(const MarkedGraph& mg, const Divisor& d, long long a, long long b) {
    Divisor t = d;
    t.add(mg.u, a).add(mg.v, -b);
    return t;
}

int delta_with(RankOracle& o, const MarkedGraph& mg, const Divisor& d) {
    Divisor du = d, dv = d;
    du.add(mg.u, -1);
    dv.add(mg.v, -1);
    Divisor duv = du;
    duv.add(mg.v, -1);
    return o.rank(d) - o.rank(du) - o.rank(dv) + o.rank(duv);
}

long long order_with(RankOracle& o, const Divisor& d0) {
    Divisor cur(d0.size());
    long long n = 0;
    do {
        cur = o.canonical(cur + d0);
        ++n;
    } while (!cur.is_zero());
    return n;
}

// Rows b = 0..k of N(a, b) = r(D + a u - b v) + 1, indexed by the twist degree
// j = deg D + a - b in [-3, 2g+2]; delta(a, b) is a 2x2 difference of it.
EafPerm tau_with(RankOracle& o, const MarkedGraph& mg, long long k, const Divisor& d) {
    if (mg.degenerate()) throw DegenerateMarksError();
    const long long g = mg.graph.genus();
    const long long deg = d.degree();
    const long long lo = -3, hi = 2 * g + 2;
    const auto width = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::vector<long long>> N(static_cast<std::size_t>(k) + 1, std::vector<long long>(width));
    for (long long b = 0; b <= k; ++b)
        for (long long j = lo; j <= hi; ++j) {
            long long val;
            if (j < 0) val = 0;
            else if (j > 2 * g - 2) val = j - g + 1;
            else val = o.rank(twist(mg, d, b - deg + j, b)) + 1;
            N[static_cast<std::size_t>(b)][static_cast<std::size_t>(j - lo)] = val;
        }
    auto at = [&](long long b, long long j) { return N[static_cast<std::size_t>(b)][static_cast<std::size_t>(j - lo)]; };

    std::vector<long long> window(static_cast<std::size_t>(k));
    for (long long b = 0; b < k; ++b) {
        bool found = false;
        for (long long j = -1; j <= 2 * g + 1; ++j) {
            const long long a = b - deg + j;
            const long long dl = at(b, j) - at(b, j - 1) - at(b + 1, j - 1) + at(b + 1, j - 2);
            if (dl < 0) throw NonSubmodularError("twist with negative delta", twist(mg, d, a, b));
            if (dl == 1) {
                if (found) throw NonSubmodularError("two values of tau in one column", twist(mg, d, a, b));
                window[static_cast<std::size_t>(b)] = a;
                found = true;
            }
        }
        if (!found) throw NonSubmodularError("no value of tau in a column", twist(mg, d, b - deg, b));
    }
    return EafPerm(static_cast<int>(k), std::move(window));
}

}  // namespace

Transmission::Transmission(MarkedGraph mg) : mg_(std::move(mg)), oracle_(make_rank_oracle(mg_.graph)) {}

int Transmission::delta(const Divisor& d) { return delta_with(*oracle_, mg_, d); }

SubmodularResult Transmission::is_submodular_divisor(const Divisor& d) {
    const long long k = torsion_order();
    const long long deg = d.degree();
    // Delta vanishes identically for twist degrees outside [0, 2g].
    for (long long e = 0; e <= 2LL * mg_.graph.genus(); ++e)
        for (long long a = 0; a < k; ++a) {
            Divisor t = twist(mg_, d, a, a - (e - deg));
            if (delta(t) < 0) return {false, std::move(t)};
        }
    return {};
}

long long Transmission::torsion_order() {
    if (!k_) {
        if (mg_.degenerate()) {
            k_ = 1;
        } else {
            Divisor d0(mg_.graph.size());
            d0.add(mg_.u, 1).add(mg_.v, -1);
            k_ = order_with(*oracle_, d0);
        }
    }
    return *k_;
}

EafPerm Transmission::transmission_permutation(const Divisor& d) {
    if (mg_.degenerate()) throw DegenerateMarksError();
    return tau_with(*oracle_, mg_, torsion_order(), d);
}

TwistOrbit Transmission::twist_orbit(const Divisor& d, long long degree) {
    const long long k = torsion_order();
    TwistOrbit out{d, degree, {}};
    for (long long a = 0; a < k; ++a) out.representatives.push_back(twist(mg_, d, a, a - (degree - d.degree())));
    return out;
}

SubmodularResult Transmission::all_submodular(unsigned threads, std::size_t cap) {
    const int g = mg_.graph.genus();
    if (g == 0) return {};
    const auto classes = jacobian_classes(mg_.graph, cap);
    const Vertex q = mg_.graph.default_base();
    const std::size_t n = classes.size() * static_cast<std::size_t>(2 * g - 1);
    const unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    std::vector<std::unique_ptr<RankOracle>> oracles;
    for (unsigned t = 0; t < workers; ++t) oracles.push_back(make_rank_oracle(mg_.graph));
    std::atomic<std::size_t> first_fail{n};
    // Tasks run degree-major: degree 1 + i / |Jac|, class i % |Jac|.
    parallel_for(n, workers, [&](std::size_t i, unsigned id) {
        if (i > first_fail.load()) return;
        Divisor d = classes[i % classes.size()];
        d.add(q, static_cast<long long>(1 + i / classes.size()));
        if (delta_with(*oracles[id], mg_, d) < 0) {
            std::size_t cur = first_fail.load();
            while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {}
        }
    });
    if (first_fail.load() == n) return {};
    const std::size_t i = first_fail.load();
    Divisor d = classes[i % classes.size()];
    d.add(q, static_cast<long long>(1 + i / classes.size()));
    return {false, oracle_->canonical(d)};
}

KgtReport Transmission::kgt_check(unsigned threads, std::size_t cap) {
    if (mg_.degenerate()) throw DegenerateMarksError();
    KgtReport rep;
    rep.k = torsion_order();
    rep.genus = mg_.graph.genus();

    const auto classes = jacobian_classes(mg_.graph, cap);
    Divisor step(mg_.graph.size());
    step.add(mg_.u, 1).add(mg_.v, -1);
    std::vector<char> seen(classes.size(), 0);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (seen[i]) continue;
        reps.push_back(i);
        Divisor cur = classes[i];
        std::size_t idx = i;
        do {
            seen[idx] = 1;
            cur = oracle_->canonical(cur + step);
            auto it = std::lower_bound(classes.begin(), classes.end(), cur);
            if (it == classes.end() || *it != cur) throw std::logic_error("orbit left the class list");
            idx = static_cast<std::size_t>(it - classes.begin());
        } while (idx != i);
    }
    rep.orbits = reps.size();

    const unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    std::vector<std::unique_ptr<RankOracle>> oracles;
    for (unsigned t = 0; t < workers; ++t) oracles.push_back(make_rank_oracle(mg_.graph));
    std::vector<long long> inv(reps.size(), -1);
    std::vector<std::optional<Divisor>> witness(reps.size());
    std::atomic<std::size_t> first_fail{reps.size()};
    parallel_for(reps.size(), workers, [&](std::size_t i, unsigned id) {
        if (i > first_fail.load()) return;
        try {
            inv[i] = inv_k(tau_with(*oracles[id], mg_, rep.k, classes[reps[i]]));
        } catch (const NonSubmodularError& e) {
            witness[i] = e.witness();
            std::size_t cur = first_fail.load();
            while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {}
        }
    });

    if (const std::size_t f = first_fail.load(); f < reps.size()) {
        rep.submodular = false;
        rep.pass = false;
        rep.witness = witness[f];
        return rep;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < reps.size(); ++i)
        if (inv[i] > inv[best]) best = i;
    rep.max_inv = inv[best];
    rep.extremal = classes[reps[best]];
    rep.extremal_tau = tau_with(*oracle_, mg_, rep.k, *rep.extremal);
    rep.pass = rep.max_inv <= rep.genus;
    return rep;
}

int delta(const MarkedGraph& mg, const Divisor& d) { return Transmission(mg).delta(d); }
SubmodularResult is_submodular_divisor(const MarkedGraph& mg, const Divisor& d) {
    return Transmission(mg).is_submodular_divisor(d);
}
long long torsion_order(const MarkedGraph& mg) { return Transmission(mg).torsion_order(); }
EafPerm transmission_permutation(const MarkedGraph& mg, const Divisor& d) {
    return Transmission(mg).transmission_permutation(d);
}
SubmodularResult all_submodular(const MarkedGraph& mg, unsigned threads) { return Transmission(mg).all_submodular(threads); }
KgtReport kgt_check(const MarkedGraph& mg, unsigned threads) { return Transmission(mg).kgt_check(threads); }

long long class_order(RankOracle& o, const Divisor& d0) {
    if (d0.degree() != 0) throw GraphError("class order needs a degree-0 divisor");
    return order_with(o, d0);
}

std::optional<RecurrenceWitness> recurrence_witness(RankOracle& o, const Divisor& d0) {
    const long long k = class_order(o, d0);
    const auto nv = static_cast<Vertex>(o.graph().size());
    std::vector<long long> first(static_cast<std::size_t>(nv), 0);
    Divisor cur(d0.size());
    for (long long n = 1; n < k; ++n) {
        cur = o.canonical(cur + d0);
        for (Vertex w = 0; w < nv; ++w) {
            Divisor e = cur;
            e.add(w, 1);
            if (!o.effective_class(e)) continue;
            if (first[static_cast<std::size_t>(w)] != 0) return RecurrenceWitness{w, first[static_cast<std::size_t>(w)], n};
            first[static_cast<std::size_t>(w)] = n;
        }
    }
    return std::nullopt;
}

bool non_recurrent(const Graph& g, const Divisor& d0) {
    auto o = make_rank_oracle(g);
    return !recurrence_witness(*o, d0).has_value();
}

WeierstrassPartition weierstrass_partition(RankOracle& o, Vertex v, const Divisor& d) {
    const long long g = o.graph().genus();
    const long long deg = d.degree();
    WeierstrassPartition out;
    for (long long i = 0; i < g; ++i) {
        // r(D + l v) >= i needs l >= i - deg and holds once l >= i + g - deg.
        long long l = std::max(i - deg, out.pole_orders.empty() ? i - deg : out.pole_orders.back() + 1);
        for (;; ++l) {
            Divisor e = d;
            e.add(v, l);
            if (o.rank(e) >= i) break;
        }
        out.pole_orders.push_back(l);
        out.parts.push_back(i - l + g - deg);
    }
    return out;
}

WeierstrassPartition weierstrass_partition(const Graph& g, Vertex v, const Divisor& d) {
    auto o = make_rank_oracle(g);
    return weierstrass_partition(*o, v, d);
}

}  // namespace chipfire
