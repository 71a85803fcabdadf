#include "chipfire/certify.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

#include "chipfire/banana.hpp"

namespace chipfire {

using nlohmann::json;

long long rho(long long g, long long r, long long d) { return g - (r + 1) * (g - d + r); }

bool Census::contains(long long d, long long r) const {
    if (r < 0) return true;
    if (d < 0) return false;
    if (d > 2LL * genus - 2) return r <= d - genus;
    return r <= max_rank[static_cast<std::size_t>(d)];
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::CertifiedGeneral: return "CERTIFIED_GENERAL";
        case Verdict::NotGeneral: return "NOT_GENERAL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Kgt: return "KGT";
        case Verdict::NotKgt: return "NOT_KGT";
        case Verdict::Kgt2: return "KGT2";
        case Verdict::NonSubmodular: return "NON_SUBMODULAR";
        case Verdict::SubmodularNotKgt: return "SUBMODULAR_NOT_KGT";
    }
    return "?";
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::CertifiedGeneral:
        case Verdict::Pass:
        case Verdict::Kgt:
        case Verdict::Kgt2: return 0;
        case Verdict::Inconclusive: return 2;
        default: return 1;
    }
}

json to_json(const Certificate& c) {
    return {{"verdict", to_string(c.verdict)}, {"method", c.method}, {"evidence", c.evidence}};
}

json divisor_json(const Graph& g, const Divisor& d) { return format_divisor(g, d); }

namespace {

unsigned worker_count(unsigned threads) {
    return threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
}

std::vector<std::unique_ptr<RankOracle>> oracles_for(const Graph& g, unsigned workers) {
    std::vector<std::unique_ptr<RankOracle>> out;
    for (unsigned t = 0; t < workers; ++t) out.push_back(make_rank_oracle(g));
    return out;
}

int delta_of(RankOracle& o, Vertex u, Vertex v, const Divisor& d) {
    Divisor du = d, dv = d, duv = d;
    du.add(u, -1);
    dv.add(v, -1);
    duv.add(u, -1).add(v, -1);
    return o.rank(d) - o.rank(du) - o.rank(dv) + o.rank(duv);
}

// Banana layout of a marked graph: itself when built as a banana, else the
// recognized relabeling. image maps original vertices to banana vertices.
std::optional<Relabeled> banana_form(const MarkedGraph& mg) {
    if (mg.graph.banana()) {
        Relabeled r{mg, {}};
        r.image.resize(mg.graph.size());
        std::iota(r.image.begin(), r.image.end(), 0);
        return r;
    }
    auto view = recognize_banana(mg.graph);
    if (!view) return std::nullopt;
    return as_banana(mg, *view);
}

Divisor pull_back(const Divisor& d, const std::vector<Vertex>& image) {
    Divisor out(image.size());
    for (std::size_t x = 0; x < image.size(); ++x) out[static_cast<Vertex>(x)] = d[image[x]];
    return out;
}

bool multivalent(const Graph& g, Vertex x) { return g.valence(x) >= 3; }

// Strands shared by u and v with the two positions on each.
struct Shared {
    int strand;
    int i;  // position of u
    int j;  // position of v
};
std::vector<Shared> shared_strands(const Graph& b, Vertex u, Vertex v) {
    std::vector<Shared> out;
    for (const auto& pu : b.strand_positions(u))
        for (const auto& pv : b.strand_positions(v))
            if (pu.strand == pv.strand) out.push_back({pu.strand, pu.pos, pv.pos});
    return out;
}

json tau_json(const Graph& g, const Divisor& d, const EafPerm& t) {
    return {{"divisor", divisor_json(g, d)}, {"modulus", t.modulus()}, {"window", t.window()}, {"inv_k", inv_k(t)}};
}

}  // namespace

Census divisor_census(const Graph& g, unsigned threads, std::size_t cap) {
    Census c;
    c.genus = g.genus();
    const long long top = 2LL * c.genus - 2;
    if (top < 0) return c;
    const auto classes = jacobian_classes(g, cap);
    const Vertex q = g.default_base();
    const auto degrees = static_cast<std::size_t>(top + 1);
    const unsigned workers = worker_count(threads);
    auto oracles = oracles_for(g, workers);
    std::vector<int> ranks(classes.size() * degrees);
    parallel_for(ranks.size(), workers, [&](std::size_t t, unsigned id) {
        Divisor d = classes[t % classes.size()];
        d.add(q, static_cast<long long>(t / classes.size()));
        ranks[t] = oracles[id]->rank(d);
    });
    for (std::size_t d = 0; d < degrees; ++d) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < classes.size(); ++i)
            if (ranks[d * classes.size() + i] > ranks[d * classes.size() + best]) best = i;
        Divisor w = classes[best];
        w.add(q, static_cast<long long>(d));
        c.max_rank.push_back(ranks[d * classes.size() + best]);
        c.argmax.push_back(w);
        for (long long r = 0; r <= c.max_rank.back(); ++r)
            c.entries.push_back({static_cast<long long>(d), r, rho(c.genus, r, static_cast<long long>(d)), w});
    }
    return c;
}

Certificate kgt_certificate(const Graph& g, const KgtReport& r) {
    Certificate c;
    c.verdict = r.pass ? Verdict::Pass : Verdict::Fail;
    c.method = "exhaustive sweep over twist orbits";
    c.evidence = {{"k", r.k}, {"g", r.genus}, {"orbits", r.orbits}, {"all_submodular", r.submodular}};
    if (r.submodular) {
        c.evidence["max_inv"] = r.max_inv;
        c.evidence["extremal"] = tau_json(g, *r.extremal, *r.extremal_tau);
    } else {
        c.evidence["delta_witness"] = divisor_json(g, *r.witness);
    }
    return c;
}

Certificate bn_general_unmarked(const Graph& g, unsigned threads) {
    const Census census = divisor_census(g, threads);
    Certificate c;
    c.method = "divisor census";
    json pairs = json::array();
    for (std::size_t d = 0; d < census.max_rank.size(); ++d)
        pairs.push_back({{"d", d}, {"max_rank", census.max_rank[d]}, {"witness", divisor_json(g, census.argmax[d])}});
    c.evidence = {{"g", census.genus}, {"base", g.name(g.default_base())}, {"census", pairs}};
    for (const auto& e : census.entries)
        if (e.rho < 0) {
            c.verdict = Verdict::NotGeneral;
            c.evidence["violation"] = {{"d", e.d}, {"r", e.r}, {"rho", e.rho}, {"witness", divisor_json(g, *e.witness)}};
            return c;
        }
    c.verdict = Verdict::CertifiedGeneral;
    return c;
}

Certificate bn_general_marked(const Graph& g, Vertex v, unsigned threads) {
    const auto classes = jacobian_classes(g);
    const unsigned workers = worker_count(threads);
    auto oracles = oracles_for(g, workers);
    std::vector<long long> sizes(classes.size());
    parallel_for(classes.size(), workers, [&](std::size_t i, unsigned id) {
        sizes[i] = weierstrass_partition(*oracles[id], v, classes[i]).size();
    });
    std::size_t worst = 0;
    for (std::size_t i = 1; i < classes.size(); ++i)
        if (sizes[i] > sizes[worst]) worst = i;
    Certificate c;
    c.method = "Weierstrass partitions over Jac(G)";
    const auto part = weierstrass_partition(g, v, classes[worst]);
    c.evidence = {{"g", g.genus()},
                  {"mark", g.name(v)},
                  {"classes", classes.size()},
                  {"max_size", sizes[worst]},
                  {"extremal", divisor_json(g, classes[worst])},
                  {"partition", part.parts}};
    c.verdict = sizes[worst] <= g.genus() ? Verdict::CertifiedGeneral : Verdict::NotGeneral;
    return c;
}

std::vector<Divisor> theta_nonsubmodular_set(const MarkedGraph& mg) {
    if (mg.graph.genus() != 2) throw GraphError("theta graph expected");
    if (mg.degenerate()) throw DegenerateMarksError();
    auto form = banana_form(mg);
    if (!form) throw GraphError("theta graph expected");
    const Graph& b = form->marked.graph;
    const Vertex u = form->marked.u, v = form->marked.v;
    auto oracle = make_rank_oracle(b);
    std::set<Divisor> classes;
    for (const auto& s : shared_strands(b, u, v)) {
        const int n = b.banana()->length(s.strand);
        for (int k = std::max(0, s.j - s.i); k <= std::min(n, s.j - s.i + n); ++k) {
            if (k == n - s.i || k == s.j) continue;
            Divisor d(b.size());
            d.add(b.banana_vertex(s.strand, k), 1).add(u, 1);
            classes.insert(oracle->canonical(d));
        }
    }
    std::vector<Divisor> out;
    for (const auto& d : classes) out.push_back(pull_back(d, form->image));
    // Canonical forms are taken on the original graph so callers can compare.
    auto orig = make_rank_oracle(mg.graph);
    for (auto& d : out) d = orig->canonical(d);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

Certificate classify_theta(const MarkedGraph& orig, const Relabeled& form) {
    const Graph& b = form.marked.graph;
    const Vertex u = form.marked.u, v = form.marked.v;
    auto oracle = make_rank_oracle(b);
    Certificate c;
    c.evidence = {{"shape", "theta"}, {"lengths", b.banana()->lengths}};

    if (multivalent(b, u) && multivalent(b, v)) {
        Transmission t(form.marked);
        const Divisor d = tau_case_divisor(b);
        const EafPerm tau = t.transmission_permutation(d);
        c.verdict = Verdict::NotKgt;
        c.method = "multivalent marks: inversion lower bound";
        c.evidence["case"] = "multivalent";
        c.evidence["bound"] = inversion_lower_bound(BoundCase::MultivalentPair, *b.banana());
        c.evidence["witness_tau"] = tau_json(orig.graph, pull_back(d, form.image), tau);
        return c;
    }

    std::string which;
    for (const auto& s : shared_strands(b, u, v)) {
        const int n = b.banana()->length(s.strand);
        const int lo = std::min(s.i, s.j), hi = std::max(s.i, s.j);
        if (lo == 0 && hi == n - 1) which = "3a";
        else if (lo == 1 && hi == n) which = "3b";
    }
    if (which.empty() && shared_strands(b, u, v).empty()) which = "3c";

    if (which.empty()) {
        const auto bad = theta_nonsubmodular_set(orig);
        c.evidence["case"] = "same strand";
        c.evidence["nonsubmodular_classes"] = bad.size();
        if (bad.empty()) {
            c.verdict = Verdict::Inconclusive;
            c.method = "same-strand marks but no delta < 0 class found";
            return c;
        }
        c.verdict = Verdict::NotKgt;
        c.method = "non-submodular divisor from the theta bijection";
        c.evidence["delta_witness"] = divisor_json(orig.graph, bad.front());
        return c;
    }

    Divisor d0(b.size());
    d0.add(u, 1).add(v, -1);
    const long long k = class_order(*oracle, d0);
    c.evidence["case"] = which;
    c.evidence["k"] = k;
    if (which == "3c") {
        const auto pu = b.strand_positions(u).front(), pv = b.strand_positions(v).front();
        const long long na = b.banana()->length(pu.strand), nb = b.banana()->length(pv.strand);
        c.evidence["evenly_marked"] = pu.pos * nb == pv.pos * na;
    }
    const auto rw = recurrence_witness(*oracle, d0);
    if (rw) {
        c.verdict = Verdict::NotKgt;
        c.method = "rigidly marked theta: [u-v] is recurrent";
        const auto w = static_cast<Vertex>(std::find(form.image.begin(), form.image.end(), rw->w) - form.image.begin());
        c.evidence["recurrence"] = {{"vertex", orig.graph.name(w)}, {"n1", rw->n1}, {"n2", rw->n2}};
    } else {
        c.verdict = Verdict::Kgt;
        c.method = which == "3c" && c.evidence["evenly_marked"].get<bool>()
                       ? "evenly marked theta: [u-v] non-recurrent"
                       : "rigidly marked theta: [u-v] non-recurrent";
    }
    return c;
}

Certificate classify_two_loops(const MarkedGraph& mg, const TwoLoopsView& view) {
    const Graph& g = mg.graph;
    auto oracle = make_rank_oracle(g);
    auto index_in = [](const std::vector<Vertex>& loop, Vertex x) -> long long {
        auto it = std::find(loop.begin(), loop.end(), x);
        return it == loop.end() ? -1 : it - loop.begin();
    };
    Certificate c;
    c.evidence = {{"shape", "two loops"},
                  {"cut", g.name(view.cut)},
                  {"loop_lengths", {view.loop_a.size(), view.loop_b.size()}}};
    const long long ua = index_in(view.loop_a, mg.u), va = index_in(view.loop_a, mg.v);
    const long long ub = index_in(view.loop_b, mg.u), vb = index_in(view.loop_b, mg.v);
    const bool u_cut = mg.u == view.cut, v_cut = mg.v == view.cut;

    if (!u_cut && !v_cut && ((ua >= 0) != (va >= 0))) {
        auto order = [](long long len, long long d) { return len / std::gcd(len, d); };
        const long long ku = ua >= 0 ? order(static_cast<long long>(view.loop_a.size()), ua)
                                     : order(static_cast<long long>(view.loop_b.size()), ub);
        const long long kv = va >= 0 ? order(static_cast<long long>(view.loop_a.size()), va)
                                     : order(static_cast<long long>(view.loop_b.size()), vb);
        c.evidence["case"] = "1";
        c.evidence["component_k"] = {ku, kv};
        if (ku == kv) {
            c.verdict = Verdict::Kgt;
            c.method = "gluing of two cycles with equal torsion order";
            c.evidence["k"] = ku;
        } else {
            Divisor d0(g.size());
            d0.add(mg.u, 1).add(mg.v, -1);
            const auto rw = recurrence_witness(*oracle, d0);
            c.verdict = Verdict::NotKgt;
            c.method = "gluing of cycles with unequal torsion orders: [u-v] is recurrent";
            if (rw) c.evidence["recurrence"] = {{"vertex", g.name(rw->w)}, {"n1", rw->n1}, {"n2", rw->n2}};
        }
        return c;
    }

    const auto& loop = (ua >= 0 && va >= 0) ? view.loop_a : view.loop_b;
    c.evidence["case"] = "same loop";
    if (loop.size() == 2) {
        c.verdict = Verdict::Kgt;
        c.method = "marks on a loop of length 2 (torsion order 2)";
        c.evidence["case"] = "2";
        c.evidence["k"] = 2;
        return c;
    }
    for (Vertex w : loop) {
        if (w == mg.u || w == mg.v) continue;
        Divisor d(g.size());
        d.add(mg.u, 1).add(w, 1);
        if (delta_of(*oracle, mg.u, mg.v, d) < 0) {
            c.verdict = Verdict::NotKgt;
            c.method = "marks on one loop of length >= 3: delta(u + w) < 0";
            c.evidence["delta_witness"] = divisor_json(g, d);
            return c;
        }
    }
    const auto sub = all_submodular(mg);
    c.verdict = Verdict::NotKgt;
    c.method = "marks on one loop: exhaustive delta search";
    if (sub.witness) c.evidence["delta_witness"] = divisor_json(g, *sub.witness);
    if (sub.ok) {
        c.verdict = Verdict::Inconclusive;
        c.method = "marks on one loop but no delta < 0 found";
    }
    return c;
}

}  // namespace

Certificate classify_genus2(const MarkedGraph& mg) {
    if (mg.graph.genus() != 2) throw GraphError("classify_genus2 needs genus 2");
    if (mg.degenerate()) throw DegenerateMarksError();
    int contracted = 0;
    MarkedGraph core = contract_bridges(mg, &contracted);
    if (core.degenerate()) throw DegenerateMarksError();
    Certificate c;
    if (auto form = banana_form(core)) {
        c = classify_theta(core, *form);
    } else if (auto loops = recognize_two_loops(core.graph)) {
        c = classify_two_loops(core, *loops);
    } else {
        throw GraphError("bridgeless genus-2 graph is neither a theta nor two loops");
    }
    c.evidence["bridges_contracted"] = contracted;
    return c;
}

Certificate classify_banana(const MarkedGraph& mg, unsigned threads) {
    if (mg.degenerate()) throw DegenerateMarksError();
    auto form = banana_form(mg);
    if (!form) throw GraphError("banana graph expected");
    const Graph& b = form->marked.graph;
    const int g = b.genus();
    if (g < 3) throw GraphError("classify_banana needs genus >= 3");
    const Vertex u = form->marked.u, v = form->marked.v;
    const auto& n = b.banana()->lengths;
    auto oracle = make_rank_oracle(b);

    Certificate c;
    c.evidence = {{"lengths", n}, {"g", g}};
    const auto shared = shared_strands(b, u, v);
    std::string exception;
    for (const auto& s : shared) {
        const int len = n[static_cast<std::size_t>(s.strand)];
        const int lo = std::min(s.i, s.j), hi = std::max(s.i, s.j);
        if ((lo == 0 && hi == len) || (lo == 1 && hi == len) || (lo == 0 && hi == len - 1)) exception = "1a";
    }
    std::optional<StrandPos> pu, pv;
    if (shared.empty()) {
        pu = b.strand_positions(u).front();
        pv = b.strand_positions(v).front();
        const int na = n[static_cast<std::size_t>(pu->strand)], nb = n[static_cast<std::size_t>(pv->strand)];
        if ((pu->pos == 1 && pv->pos == nb - 1) || (pu->pos == na - 1 && pv->pos == 1)) exception = "1b";
    }
    c.evidence["placement"] = exception.empty() ? "generic" : exception;

    auto pull = [&](const Divisor& d) { return pull_back(d, form->image); };

    if (exception.empty()) {
        std::vector<Divisor> candidates;
        auto at = [&](int strand, int pos) { return b.banana_vertex(strand, pos); };
        if (pu) {
            // Both constructions, under strand reversal and under swapping u, v.
            for (int swap = 0; swap < 2; ++swap)
                for (int rev = 0; rev < 2; ++rev) {
                    const StrandPos p = swap ? *pv : *pu, q = swap ? *pu : *pv;
                    const int na = n[static_cast<std::size_t>(p.strand)], nb = n[static_cast<std::size_t>(q.strand)];
                    auto P = [&](int pos) { return at(p.strand, rev ? na - pos : pos); };
                    auto Q = [&](int pos) { return at(q.strand, rev ? nb - pos : pos); };
                    const int i = rev ? na - p.pos : p.pos;
                    Divisor d1(b.size()), d2(b.size());
                    d1.add(P(1), 1).add(P(i), 1).add(Q(nb - 1), 1);
                    d2.add(P(i), 1).add(P(na - 1), 1).add(Q(1), 1);
                    candidates.push_back(d1);
                    candidates.push_back(d2);
                }
        }
        for (const auto& s : shared) {
            const int len = n[static_cast<std::size_t>(s.strand)];
            for (int k = 0; k <= len; ++k) {
                Divisor d(b.size());
                d.add(at(s.strand, k), 1).add(u, 1);
                candidates.push_back(d);
                Divisor e(b.size());
                e.add(at(s.strand, k), 1).add(v, 1);
                candidates.push_back(e);
            }
        }
        c.verdict = Verdict::NonSubmodular;
        for (const auto& d : candidates)
            if (delta_of(*oracle, u, v, d) < 0) {
                c.method = "explicit construction, delta verified";
                c.evidence["delta_witness"] = divisor_json(mg.graph, pull(d));
                c.evidence["delta"] = delta_of(*oracle, u, v, d);
                return c;
            }
        const auto sub = all_submodular(form->marked, threads);
        if (sub.ok) {
            c.verdict = Verdict::Inconclusive;
            c.method = "generic placement but no delta < 0 found";
            return c;
        }
        c.method = "exhaustive delta search";
        c.evidence["delta_witness"] = divisor_json(mg.graph, pull(*sub.witness));
        return c;
    }

    Transmission t(form->marked);
    const auto sub = t.all_submodular(threads);
    if (!sub.ok) {
        c.verdict = Verdict::NonSubmodular;
        c.method = "exceptional placement, exhaustive delta search";
        c.evidence["delta_witness"] = divisor_json(mg.graph, pull(*sub.witness));
        return c;
    }
    const long long k = t.torsion_order();
    c.evidence["k"] = k;
    if (k == 2) {
        c.verdict = Verdict::Kgt2;
        c.method = "all divisors submodular and torsion order 2";
        return c;
    }

    std::optional<long long> bound;
    std::string bound_case;
    if (multivalent(b, u) && multivalent(b, v)) {
        bound = inversion_lower_bound(BoundCase::MultivalentPair, *b.banana());
        bound_case = to_string(BoundCase::MultivalentPair);
    } else if (exception == "1a") {
        const auto& s = shared.front();
        const int len = n[static_cast<std::size_t>(s.strand)];
        if (len >= 2) {
            BananaSpec spec = *b.banana();
            std::swap(spec.lengths[0], spec.lengths[static_cast<std::size_t>(s.strand)]);
            bound = inversion_lower_bound(BoundCase::OneOff, spec);
            bound_case = to_string(BoundCase::OneOff);
        }
    } else {
        const int na = n[static_cast<std::size_t>(pu->strand)], nb = n[static_cast<std::size_t>(pv->strand)];
        if (std::min(na, nb) >= g + 1) {
            BananaSpec spec = *b.banana();
            spec.lengths[0] = na;
            spec.lengths[1] = nb;
            bound = inversion_lower_bound(BoundCase::BothOffMin, spec);
            bound_case = to_string(BoundCase::BothOffMin);
        }
    }
    if (bound) c.evidence["bound"] = {{"case", bound_case}, {"value", *bound}};

    std::optional<std::pair<Divisor, EafPerm>> best;
    for (Vertex end : {b.right(), b.left()}) {
        const Divisor d = Divisor::point(b.size(), end, g);
        EafPerm tau = t.transmission_permutation(d);
        if (!best || inv_k(tau) > inv_k(best->second)) best.emplace(d, std::move(tau));
    }
    if (inv_k(best->second) > g) {
        c.verdict = Verdict::SubmodularNotKgt;
        c.method = "witness permutation of g times a multivalent vertex";
        c.evidence["witness_tau"] = tau_json(mg.graph, pull(best->first), best->second);
        return c;
    }
    const auto rep = t.kgt_check(threads);
    c.method = "exhaustive sweep over twist orbits";
    c.evidence["max_inv"] = rep.max_inv;
    if (rep.pass) {
        c.verdict = Verdict::Kgt;
    } else {
        c.verdict = Verdict::SubmodularNotKgt;
        c.evidence["witness_tau"] = tau_json(mg.graph, pull(*rep.extremal), *rep.extremal_tau);
    }
    return c;
}

std::size_t chain_split_index(const std::vector<int>& genera) {
    const long long total = std::accumulate(genera.begin(), genera.end(), 0LL);
    long long prefix = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < genera.size(); ++i) {
        const long long suffix = total - prefix;
        prefix += genera[i];
        if (prefix <= suffix) j = i + 1;
    }
    return j;
}

Certificate chain_certify(const ChainSpec& spec, unsigned threads) {
    Certificate c;
    c.method = "chain theorem";
    const std::size_t l = spec.components.size();
    if (l == 0) throw GraphError("empty chain");
    std::vector<int> genera;
    std::vector<long long> ks;
    json comps = json::array();
    std::optional<std::string> failure;
    for (std::size_t i = 0; i < l; ++i) {
        const auto& mg = spec.components[i];
        if (mg.degenerate()) throw DegenerateMarksError();
        const KgtReport rep = kgt_check(mg, threads);
        genera.push_back(mg.graph.genus());
        ks.push_back(rep.k);
        comps.push_back({{"index", i + 1}, {"g", rep.genus}, {"k", rep.k}, {"kgt", rep.pass}, {"max_inv", rep.max_inv}});
        if (!rep.pass && !failure) failure = "component " + std::to_string(i + 1) + " lacks k-general transmission";
    }
    const long long total = std::accumulate(genera.begin(), genera.end(), 0LL);
    c.evidence = {{"components", comps}, {"g", total}, {"bridges", spec.bridges}};
    if (failure) {
        c.verdict = Verdict::Inconclusive;
        c.evidence["reason"] = *failure;
        return c;
    }

    json ineq = json::array();
    bool marked = true, unmarked = true;
    long long prefix = 0;
    for (std::size_t i = 0; i < l; ++i) {
        const long long suffix = total - prefix;
        prefix += genera[i];
        const bool m_ok = ks[i] > prefix;
        const bool u_ok = ks[i] > std::min(prefix, suffix);
        marked = marked && m_ok;
        unmarked = unmarked && u_ok;
        ineq.push_back({{"i", i + 1}, {"k", ks[i]}, {"prefix", prefix}, {"suffix", suffix}, {"marked", m_ok}, {"unmarked", u_ok}});
    }
    c.evidence["inequalities"] = ineq;
    c.evidence["split_index"] = chain_split_index(genera);
    c.evidence["marked_general_at_end"] = marked;
    bool half = false;
    if (l == 1) {
        half = 2 * ks[0] >= total + 2;
        c.evidence["single_component_half_bound"] = half;
    }
    if (unmarked || half) {
        c.verdict = Verdict::CertifiedGeneral;
        if (!unmarked) c.method = "single component with k >= g/2 + 1";
    } else {
        c.verdict = Verdict::Inconclusive;
        c.evidence["reason"] = "the chain inequalities fail; they are sufficient only";
    }
    return c;
}

}  // namespace chipfire
