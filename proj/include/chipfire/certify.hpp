#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chipfire/divisor.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/transmission.hpp"

namespace chipfire {

long long rho(long long g, long long r, long long d);

struct CensusEntry {
    long long d = 0;
    long long r = 0;
    long long rho = 0;
    std::optional<Divisor> witness;  // degree d, rank >= r
};

// Max rank per degree 0..2g-2, each expanded to every r from 0 up to it.
// Degrees above 2g-2 carry rank d-g and are left implicit.
struct Census {
    int genus = 0;
    std::vector<long long> max_rank;  // index d
    std::vector<Divisor> argmax;      // first class reaching max_rank[d]
    std::vector<CensusEntry> entries;
    bool contains(long long d, long long r) const;
};
Census divisor_census(const Graph& g, unsigned threads = 1, std::size_t cap = class_cap());

enum class Verdict {
    CertifiedGeneral,
    NotGeneral,
    Inconclusive,
    Pass,
    Fail,
    Kgt,
    NotKgt,
    Kgt2,
    NonSubmodular,
    SubmodularNotKgt
};
std::string to_string(Verdict v);
// 0 for positive verdicts, 1 for negative ones, 2 for Inconclusive.
int exit_code(Verdict v);

struct Certificate {
    Verdict verdict = Verdict::Inconclusive;
    std::string method;
    nlohmann::json evidence = nlohmann::json::object();
};
nlohmann::json to_json(const Certificate& c);

// format_divisor text; parse_divisor reads it back.
nlohmann::json divisor_json(const Graph& g, const Divisor& d);

Certificate kgt_certificate(const Graph& g, const KgtReport& r);

Certificate bn_general_unmarked(const Graph& g, unsigned threads = 1);
Certificate bn_general_marked(const Graph& g, Vertex v, unsigned threads = 1);

// Classes [v_{a,k} + u] of delta < 0 on a theta graph, one divisor per class
// in canonical form, sorted. Empty unless the marks share a strand.
std::vector<Divisor> theta_nonsubmodular_set(const MarkedGraph& mg);

Certificate classify_genus2(const MarkedGraph& mg);
Certificate classify_banana(const MarkedGraph& mg, unsigned threads = 1);

struct ChainSpec {
    std::vector<MarkedGraph> components;
    std::vector<int> bridges;  // empty, or one entry per junction
};

// Index j (1-based) with g_1+..+g_j <= g_j+..+g_l, maximal.
std::size_t chain_split_index(const std::vector<int>& genera);

Certificate chain_certify(const ChainSpec& spec, unsigned threads = 1);

}  // namespace chipfire
