#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chipfire/divisor.hpp"
#include "chipfire/eaf_perm.hpp"
#include "chipfire/graph.hpp"

namespace chipfire {

class NonSubmodularError : public std::runtime_error {
public:
    NonSubmodularError(const std::string& what, Divisor witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const Divisor& witness() const { return witness_; }

private:
    Divisor witness_;
};

class DegenerateMarksError : public std::runtime_error {
public:
    DegenerateMarksError() : std::runtime_error("marks coincide; transmission is undefined for u = v") {}
};

// D + a*u - b*v with a - b fixed and a = 0..k-1.
struct TwistOrbit {
    Divisor base;
    long long degree = 0;
    std::vector<Divisor> representatives;
};

// parts[i] = i - pole_orders[i] + g - deg D for i = 0..g-1.
struct WeierstrassPartition {
    std::vector<long long> parts;
    std::vector<long long> pole_orders;
    long long size() const;
};

struct SubmodularResult {
    bool ok = true;
    std::optional<Divisor> witness;  // a twist with delta < 0
};

struct KgtReport {
    bool submodular = true;
    bool pass = false;
    long long k = 0;
    int genus = 0;
    long long max_inv = 0;
    std::optional<Divisor> extremal;   // first orbit representative reaching max_inv
    std::optional<EafPerm> extremal_tau;
    std::optional<Divisor> witness;    // delta < 0, when not submodular
    std::size_t orbits = 0;
};

// Owns a marked graph and a rank oracle for it. Not thread-safe; the
// multi-threaded sweeps build one oracle per worker.
class Transmission {
public:
    explicit Transmission(MarkedGraph mg);
    Transmission(const Transmission&) = delete;
    Transmission& operator=(const Transmission&) = delete;

    const MarkedGraph& marked() const { return mg_; }
    const Graph& graph() const { return mg_.graph; }
    RankOracle& oracle() { return *oracle_; }

    int delta(const Divisor& d);
    SubmodularResult is_submodular_divisor(const Divisor& d);
    long long torsion_order();
    EafPerm transmission_permutation(const Divisor& d);
    TwistOrbit twist_orbit(const Divisor& d, long long degree);

    SubmodularResult all_submodular(unsigned threads = 1, std::size_t cap = class_cap());
    KgtReport kgt_check(unsigned threads = 1, std::size_t cap = class_cap());

private:
    MarkedGraph mg_;
    std::unique_ptr<RankOracle> oracle_;
    std::optional<long long> k_;
};

int delta(const MarkedGraph& mg, const Divisor& d);
SubmodularResult is_submodular_divisor(const MarkedGraph& mg, const Divisor& d);
long long torsion_order(const MarkedGraph& mg);
EafPerm transmission_permutation(const MarkedGraph& mg, const Divisor& d);
SubmodularResult all_submodular(const MarkedGraph& mg, unsigned threads = 1);
KgtReport kgt_check(const MarkedGraph& mg, unsigned threads = 1);

// Order of a degree-0 class.
long long class_order(RankOracle& o, const Divisor& d0);

struct RecurrenceWitness {
    Vertex w;
    long long n1;
    long long n2;
};
// Empty when d0 is non-recurrent, else a vertex w with two n in 1..k-1 making
// n*d0 + w effective. Throws GraphError on nonzero degree.
std::optional<RecurrenceWitness> recurrence_witness(RankOracle& o, const Divisor& d0);
bool non_recurrent(const Graph& g, const Divisor& d0);

WeierstrassPartition weierstrass_partition(RankOracle& o, Vertex v, const Divisor& d);
WeierstrassPartition weierstrass_partition(const Graph& g, Vertex v, const Divisor& d);

// Calls fn(i, worker) for i in [0, n) on up to `threads` workers (0 = all
// cores). The first exception thrown by fn is rethrown once workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t, unsigned)>& fn);

}  // namespace chipfire
