#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chipfire/divisor.hpp"
#include "chipfire/graph.hpp"

namespace chipfire {

// Coset [a_0..a_g] of Z^{g+1} modulo (1,..,1) and n_0 e_0 - n_a e_a, carried
// together with the degree of the class it stands for.
struct BananaTuple {
    BananaSpec spec;
    std::vector<long long> entries;
    long long degree_offset = 0;
    bool operator==(const BananaTuple&) const = default;
};

// a*L + b*R + one chip at each listed interior strand position.
struct BananaReducedDivisor {
    long long a = 0;
    long long b = 0;
    std::map<int, int> interior;
    bool operator==(const BananaReducedDivisor&) const = default;
};

bool is_reduced_tuple(const BananaTuple& t);

// Normalize by (1,..,1), trade an overfull entry for a zero one, repeat, then
// left-justify the full entries. Throws std::logic_error past 10^6 steps.
BananaTuple reduce_tuple(const BananaTuple& t);

// Same coset representative, found directly: with r = a mod n and
// Q = sum floor(a/n), shifting by s gives Q(s) = Q + sum floor((r+s)/n) full
// strands; the reduced tuple sits at the least s with Q(s) >= 0.
BananaTuple reduce_tuple_fast(const BananaTuple& t);

BananaTuple divisor_to_tuple(const Graph& g, const Divisor& d);
BananaReducedDivisor tuple_to_reduced_divisor(const BananaTuple& t, long long degree);
Divisor to_divisor(const Graph& g, const BananaReducedDivisor& r);

// min(a,b) + max(0, max(a,b) - (g - e)); -1 when a < 0.
int banana_rank(long long a, long long b, int e, int g);

enum class TauCase {
    MultivalentPair,  // marks (L, R)
    OneOff,           // marks (s0.0, s0.(n0-1))
    BothOffSimple,    // marks (s0.1, s1.(n1-1)), the g-b+2 window
    BothOff           // same marks, three residue cases
};
enum class BoundCase { MultivalentPair, OneOff, BothOffMin };

std::string to_string(TauCase c);
std::string to_string(BoundCase c);

// Marks and divisor g*R for which the closed forms are stated.
MarkedGraph tau_case_marks(TauCase c, const Graph& banana);
Divisor tau_case_divisor(const Graph& banana);

std::optional<long long> predicted_tau(TauCase c, const BananaSpec& spec, long long b);
long long inversion_lower_bound(BoundCase c, const BananaSpec& spec);

// Rank and reduced forms through the tuple calculus.
class BananaRank final : public RankOracle {
public:
    explicit BananaRank(const Graph& g);
    const Graph& graph() const override { return g_; }
    int rank(const Divisor& d) override;
    Divisor canonical(const Divisor& d) override;

private:
    struct Reduced {
        std::vector<long long> entries;
        int interior = 0;
        int full = 0;
    };
    Reduced reduced(const Divisor& d) const;

    const Graph& g_;
    std::vector<int> strand_of_;
    std::vector<int> pos_of_;
};

// BananaRank on banana graphs, BakerNorineRank elsewhere.
std::unique_ptr<RankOracle> make_rank_oracle(const Graph& g);

// Every reduced tuple of the spec, in lexicographic order of the tuple.
std::vector<BananaTuple> enumerate_reduced_tuples(const BananaSpec& spec);

// Degree-0 canonical representatives of Jac(G), sorted. Closed form on
// bananas, breadth-first closure elsewhere.
std::vector<Divisor> jacobian_classes(const Graph& g, std::size_t cap = class_cap());

}  // namespace chipfire
