// chipfire: command-line front end for the chip-firing library.

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chipfire/banana.hpp"
#include "chipfire/certify.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/spec_io.hpp"
#include "chipfire/transmission.hpp"

using namespace chipfire;
using nlohmann::json;

namespace {

struct Options {
    std::string spec;
    std::string divisor;
    std::string base;
    std::string marked;
    std::string witness_file;
    bool json = false;
    bool no_timing = false;
    unsigned threads = 0;
};

struct Outcome {
    json result;
    std::optional<Certificate> certificate;
    std::string text;
    int code = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Input {
    LoadedSpec spec;
    std::string digest;
};

Input load(const Options& o) {
    std::string bytes = read_file(o.spec);
    Input in{load_spec(bytes), {}};
    if (!o.divisor.empty()) bytes += "\ndivisor-arg " + o.divisor;
    if (!o.base.empty()) bytes += "\nbase-arg " + o.base;
    if (!o.marked.empty()) bytes += "\nmarked-arg " + o.marked;
    in.digest = input_digest(bytes);
    return in;
}

const MarkedGraph& need_marks(const Input& in) {
    if (!in.spec.marked) throw UsageError("the spec must mark both u and v");
    return *in.spec.marked;
}

Divisor need_divisor(const Input& in, const Options& o) {
    if (!o.divisor.empty()) return parse_divisor(in.spec.graph, o.divisor);
    if (in.spec.divisor) return *in.spec.divisor;
    throw UsageError("no divisor: pass --divisor or add a 'divisor' line to the spec");
}

std::string verdict_line(const Certificate& c) { return to_string(c.verdict) + " (" + c.method + ")"; }

Certificate nonsubmodular(const Graph& g, const Divisor& w, const std::string& method) {
    Certificate c;
    c.verdict = Verdict::Fail;
    c.method = method;
    c.evidence = {{"delta_witness", divisor_json(g, w)}};
    return c;
}

Outcome cmd_rank(const Input& in, const Options& o) {
    const Divisor d = need_divisor(in, o);
    const int r = make_rank_oracle(in.spec.graph)->rank(d);
    return {{{"divisor", divisor_json(in.spec.graph, d)}, {"degree", d.degree()}, {"rank", r}}, std::nullopt, std::to_string(r), 0};
}

Outcome cmd_reduce(const Input& in, const Options& o) {
    const Graph& g = in.spec.graph;
    const Divisor d = need_divisor(in, o);
    const Vertex base = o.base.empty() ? g.default_base() : g.vertex(o.base);
    const ReducedForm rf = dhar_reduce(g, d, base);
    json steps = json::array();
    for (const auto& s : rf.certificate) {
        json set = json::array();
        for (Vertex x : s.set) set.push_back(g.name(x));
        steps.push_back({{"fire", set}, {"times", s.times}});
    }
    return {{{"base", g.name(base)}, {"reduced", divisor_json(g, rf.divisor)}, {"firings", steps}},
            std::nullopt, format_divisor(g, rf.divisor), 0};
}

Outcome cmd_tau(const Input& in, const Options& o) {
    const MarkedGraph& mg = need_marks(in);
    const Divisor d = need_divisor(in, o);
    try {
        const EafPerm t = transmission_permutation(mg, d);
        json r = {{"modulus", t.modulus()}, {"window", t.window()}, {"inv_k", inv_k(t)}, {"sci", sci(t)}};
        return {r, std::nullopt, format_window(t) + " k=" + std::to_string(t.modulus()) + " inv=" + std::to_string(inv_k(t)), 0};
    } catch (const NonSubmodularError& e) {
        Certificate c = nonsubmodular(mg.graph, e.witness(), "twist with delta < 0");
        return {{{"submodular", false}}, c, "not submodular: " + format_divisor(mg.graph, e.witness()) + " has delta < 0", 1};
    }
}

Outcome cmd_delta(const Input& in, const Options& o) {
    const MarkedGraph& mg = need_marks(in);
    const Divisor d = need_divisor(in, o);
    const int v = delta(mg, d);
    Outcome out{{{"divisor", divisor_json(mg.graph, d)}, {"delta", v}}, std::nullopt, std::to_string(v), v < 0 ? 1 : 0};
    if (v < 0) out.certificate = nonsubmodular(mg.graph, d, "direct evaluation");
    return out;
}

Outcome cmd_submodular(const Input& in, const Options& o) {
    const MarkedGraph& mg = need_marks(in);
    const auto r = all_submodular(mg, o.threads);
    if (r.ok) {
        Certificate c{Verdict::Pass, "exhaustive delta sweep", json::object()};
        return {{{"submodular", true}}, c, "every divisor is submodular", 0};
    }
    Certificate c = nonsubmodular(mg.graph, *r.witness, "exhaustive delta sweep");
    return {{{"submodular", false}}, c, "not submodular: " + format_divisor(mg.graph, *r.witness) + " has delta < 0", 1};
}

Outcome cmd_torsion(const Input& in, const Options&) {
    const long long k = torsion_order(need_marks(in));
    return {{{"k", k}}, std::nullopt, std::to_string(k), 0};
}

Outcome cmd_kgt(const Input& in, const Options& o) {
    const MarkedGraph& mg = need_marks(in);
    const KgtReport r = kgt_check(mg, o.threads);
    Certificate c = kgt_certificate(mg.graph, r);
    std::ostringstream text;
    text << to_string(c.verdict) << " k=" << r.k << " g=" << r.genus;
    if (r.submodular) text << " max_inv=" << r.max_inv;
    else text << " non-submodular witness " << format_divisor(mg.graph, *r.witness);
    json res = {{"k", r.k}, {"g", r.genus}, {"submodular", r.submodular}, {"max_inv", r.max_inv}, {"orbits", r.orbits}};
    return {res, c, text.str(), exit_code(c.verdict)};
}

Outcome cmd_bn(const Input& in, const Options& o) {
    const Graph& g = in.spec.graph;
    Certificate c = o.marked.empty() ? bn_general_unmarked(g, o.threads) : bn_general_marked(g, g.vertex(o.marked), o.threads);
    return {{{"g", g.genus()}, {"marked", o.marked.empty() ? json(nullptr) : json(o.marked)}}, c, verdict_line(c), exit_code(c.verdict)};
}

Outcome cmd_census(const Input& in, const Options& o) {
    const Graph& g = in.spec.graph;
    const Census c = divisor_census(g, o.threads);
    json rows = json::array();
    std::ostringstream text;
    text << "d max_rank\n";
    for (std::size_t d = 0; d < c.max_rank.size(); ++d) {
        rows.push_back({{"d", d}, {"max_rank", c.max_rank[d]}, {"witness", divisor_json(g, c.argmax[d])}});
        text << d << ' ' << c.max_rank[d] << '\n';
    }
    std::string t = text.str();
    t.pop_back();
    return {{{"g", c.genus}, {"census", rows}}, std::nullopt, t, 0};
}

Outcome cmd_certify_chain(const Input& in, const Options& o) {
    if (!in.spec.chain) throw UsageError("certify-chain needs a chain spec");
    Certificate c = chain_certify(*in.spec.chain, o.threads);
    return {{{"components", in.spec.chain->components.size()}, {"g", in.spec.graph.genus()}}, c, verdict_line(c), exit_code(c.verdict)};
}

Outcome cmd_classify(const Input& in, const Options& o) {
    const MarkedGraph& mg = need_marks(in);
    const int g = mg.graph.genus();
    Certificate c;
    if (g == 2) c = classify_genus2(mg);
    else if (g >= 3) c = classify_banana(mg, o.threads);
    else throw UsageError("classify needs genus 2, or a banana of genus at least 3");
    return {{{"g", g}}, c, verdict_line(c), exit_code(c.verdict)};
}

// Re-checks the witness embedded in a saved JSON output, using a fresh
// full-vertex-set rank computation without Riemann-Roch shortcuts.
Outcome cmd_verify_witness(const Input& in, const Options& o) {
    const json saved = json::parse(read_file(o.witness_file));
    if (!saved.contains("certificate") || saved["certificate"].is_null()) throw UsageError("no certificate in witness file");
    const json& ev = saved["certificate"]["evidence"];
    const Graph& g = in.spec.graph;
    BakerNorineRank oracle(g, RankStrategy::FullVertexSet, false);
    json checks = json::array();
    bool all = true;
    auto record = [&](const std::string& kind, bool ok, json detail) {
        all = all && ok;
        detail["kind"] = kind;
        detail["confirmed"] = ok;
        checks.push_back(detail);
    };
    if (ev.contains("delta_witness")) {
        const MarkedGraph& mg = need_marks(in);
        const Divisor d = parse_divisor(g, ev["delta_witness"].get<std::string>());
        Divisor du = d, dv = d, duv = d;
        du.add(mg.u, -1);
        dv.add(mg.v, -1);
        duv.add(mg.u, -1).add(mg.v, -1);
        const int v = oracle.rank(d) - oracle.rank(du) - oracle.rank(dv) + oracle.rank(duv);
        record("delta", v < 0, {{"delta", v}});
    }
    if (ev.contains("violation")) {
        const json& vi = ev["violation"];
        const Divisor d = parse_divisor(g, vi["witness"].get<std::string>());
        const long long deg = vi["d"], r = vi["r"];
        const int actual = oracle.rank(d);
        record("census", d.degree() == deg && actual >= r && rho(g.genus(), r, deg) < 0, {{"rank", actual}});
    }
    for (const char* key : {"witness_tau", "extremal"}) {
        if (!ev.contains(key) || !ev[key].is_object()) continue;
        if (std::string(key) == "extremal" && saved["certificate"]["verdict"] != "FAIL") continue;
        const MarkedGraph& mg = need_marks(in);
        const Divisor d = parse_divisor(g, ev[key]["divisor"].get<std::string>());
        const EafPerm t = transmission_permutation(mg, d);
        const long long inv = inv_k(t);
        record("tau", inv > g.genus() && t.window() == ev[key]["window"].get<std::vector<long long>>(), {{"inv_k", inv}});
    }
    if (ev.contains("mark") && ev.contains("extremal") && ev["extremal"].is_string()) {
        const Divisor d = parse_divisor(g, ev["extremal"].get<std::string>());
        const auto part = weierstrass_partition(oracle, g.vertex(ev["mark"].get<std::string>()), d);
        record("partition", part.size() > g.genus(), {{"size", part.size()}});
    }
    if (ev.contains("recurrence")) {
        const MarkedGraph& mg = need_marks(in);
        const json& rc = ev["recurrence"];
        const Vertex w = g.vertex(rc["vertex"].get<std::string>());
        bool ok = true;
        for (long long n : {rc["n1"].get<long long>(), rc["n2"].get<long long>()}) {
            Divisor d(g.size());
            d.add(mg.u, n).add(mg.v, -n).add(w, 1);
            ok = ok && oracle.rank(d) >= 0;
        }
        record("recurrence", ok && rc["n1"] != rc["n2"], json::object());
    }
    if (checks.empty()) throw UsageError("no witness found in the certificate evidence");
    return {{{"checks", checks}}, std::nullopt, all ? "witness confirmed" : "witness REJECTED", all ? 0 : 1};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chip-firing ranks, transmission permutations and Brill-Noether certificates"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Machine-readable output");
    app.add_flag("--no-timing", o.no_timing, "Report elapsed_ms as 0");
    app.add_option("--threads", o.threads, "Worker threads, 0 for all cores")->capture_default_str();

    using Handler = Outcome (*)(const Input&, const Options&);
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto add = [&](const std::string& name, const std::string& help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("spec", o.spec, "Graph or chain spec file")->required()->check(CLI::ExistingFile);
        sub->add_flag("--json", o.json, "Machine-readable output");
        sub->add_flag("--no-timing", o.no_timing, "Report elapsed_ms as 0");
        sub->add_option("--threads", o.threads, "Worker threads, 0 for all cores");
        commands.emplace_back(sub, h);
        return sub;
    };
    for (const auto& [name, help, h] : std::vector<std::tuple<std::string, std::string, Handler>>{
             {"rank", "Baker-Norine rank of a divisor", cmd_rank},
             {"tau", "Transmission permutation of a divisor", cmd_tau},
             {"delta", "Delta of a divisor at the marks", cmd_delta}}) {
        add(name, help, h)->add_option("--divisor", o.divisor, "Divisor text, or @file");
    }
    auto* reduce = add("reduce", "Reduced form at a base vertex", cmd_reduce);
    reduce->add_option("--divisor", o.divisor, "Divisor text, or @file");
    reduce->add_option("--base", o.base, "Base vertex (default: least name)");
    add("submodular", "Check every divisor for delta >= 0", cmd_submodular);
    add("torsion", "Order of [u - v]", cmd_torsion);
    add("kgt", "k-general transmission check", cmd_kgt);
    add("bn", "Brill-Noether generality by census", cmd_bn)->add_option("--marked", o.marked, "Check the marked version at this vertex");
    add("census", "Maximal rank in each degree", cmd_census);
    add("certify-chain", "Certify a chain of twice-marked graphs", cmd_certify_chain);
    add("classify", "Classify genus-2 graphs and bananas", cmd_classify);
    auto* verify = add("verify-witness", "", cmd_verify_witness);
    verify->add_option("witness", o.witness_file, "JSON output to re-check")->required()->check(CLI::ExistingFile);
    verify->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::string name;
    Handler handler = nullptr;
    for (const auto& [sub, h] : commands)
        if (sub->parsed()) {
            name = sub->get_name();
            handler = h;
        }

    try {
        const auto start = std::chrono::steady_clock::now();
        const Input in = load(o);
        Outcome out = handler(in, o);
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        if (o.json) {
            json j = {{"command", name},
                      {"input_digest", in.digest},
                      {"result", out.result},
                      {"certificate", out.certificate ? to_json(*out.certificate) : json(nullptr)},
                      {"elapsed_ms", o.no_timing ? 0 : ms}};
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << out.text << '\n';
        }
        return out.code;
    } catch (const ParseError& e) {
        std::cerr << o.spec << ':' << e.what() << '\n';
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 2;
}
