#pragma once

#include "favres/params.hpp"
#include "favres/zmod_linalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace favres {

// Finite group given by an explicit multiplication table.
struct FiniteGroup {
    int order = 0;
    std::vector<std::vector<int>> table; // table[a][b] = index of a*b
    int identity = 0;
    std::vector<std::string> names; // optional element labels (may be empty)

    int mul(int a, int b) const { return table[a][b]; }
    int inverse(int a) const;
};

// Validates the table (closure, identity, inverses, associativity) and
// locates the identity. Throws std::invalid_argument on any defect.
FiniteGroup make_group(std::vector<std::vector<int>> table,
                       std::vector<std::string> names = {});

FiniteGroup make_cyclic_group(int n);
FiniteGroup make_symmetric_group(int n); // permutations of n letters, lex order
FiniteGroup make_dihedral_group(int n);  // order 2n; index i + n*f for r^i s^f

// Candidate trace function with values in Z/modulus.
struct PseudoRep {
    Int modulus = 0;
    int d = 0;                // claimed dimension
    std::vector<Int> values;  // indexed by group element, residues in [0, modulus)
};

enum class PseudoRepStatus {
    Valid,
    FailsCondition1, // value at the identity is not d
    FailsCondition2, // not a class function on products: tau(ab) != tau(ba)
    FailsCondition3, // the (d+1)-letter alternating identity fails
    NotMinimal,      // the d-letter identity already holds at dimension d-1
};

struct PseudoRepVerdict {
    PseudoRepStatus status = PseudoRepStatus::Valid;
    bool sampled = false;      // some sweep exceeded the budget and was sampled
    std::vector<int> witness;  // failing tuple of element indices, if any
    std::string message;
};

bool verdict_ok(const PseudoRepVerdict& v);
std::string status_name(PseudoRepStatus s);

// Product over the disjoint cycles of sigma of tau applied to the ordered
// product of the tuple entries along each cycle. sigma is given by images
// (sigma[i] = image of letter i) and must have sigma.size() == tuple.size().
Int tau_sigma(const FiniteGroup& g, const PseudoRep& pr, const std::vector<int>& sigma,
              const std::vector<int>& tuple);

// Alternating sum over all permutations of tuple.size() letters of
// sign(sigma) * tau_sigma(...). Vanishing for all (d+1)-tuples is the
// dimension-d trace identity.
Int alternating_trace_sum(const FiniteGroup& g, const PseudoRep& pr,
                          const std::vector<int>& tuple);

// Full verdict: value at identity, centrality, the (d+1)-letter identity on
// all tuples, and minimality (the d-letter identity must fail somewhere when
// d >= 2). Sweeps are exhaustive up to `budget` tuples per sweep; larger
// spaces are checked on `budget` seeded samples and flagged as sampled.
PseudoRepVerdict check_pseudo_rep(const FiniteGroup& g, const PseudoRep& pr,
                                  long long budget = 10'000'000,
                                  std::uint64_t seed = 0);

// Trace of an explicit matrix representation rho (element index -> n x n
// matrix over Z/modulus). Validates that rho respects the table; throws
// std::invalid_argument otherwise. Result has d = n.
PseudoRep trace_of_rep(const FiniteGroup& g, const std::vector<Mat>& rho, Int modulus);

// Polynomial with integer coefficients in commuting variables t_0..t_{n-1}
// (one per group element). Monomials are multisets of variable indices,
// stored sorted.
struct Polynomial {
    std::map<std::vector<int>, long long> coeffs;

    void add_term(std::vector<int> monomial, long long c);
    bool is_zero() const { return coeffs.empty(); }
    bool operator==(const Polynomial& o) const { return coeffs == o.coeffs; }
    std::string to_string(const std::vector<std::string>& names) const;
};

Polynomial poly_sub(const Polynomial& a, const Polynomial& b);

// Replaces every occurrence of the given variable by the scalar 2.
Polynomial substitute_two(const Polynomial& poly, int var);

// Evaluates at tau (variable i -> tau[i]) modulo `modulus`.
Int evaluate_polynomial(const Polynomial& poly, const std::vector<Int>& tau, Int modulus);

// Defining relations of the universal ring for two-dimensional trace
// functions on g: the identity-normalization t_1 - 2, the commutator
// differences t_{ab} - t_{ba}, and the three-letter cubic relations.
// Syntactic zeros are dropped; the list is deduplicated (up to overall sign)
// and deterministically ordered.
std::vector<Polynomial> universal_ring_relations(const FiniteGroup& g);

// Evaluates every relation at tau; all-zero output characterizes the
// two-letter trace conditions without minimality.
std::vector<Int> evaluate_relations(const std::vector<Polynomial>& relations,
                                    const std::vector<Int>& tau, Int modulus);

// Pulls an eigenvalue table back to a candidate trace function along a
// labeling of group elements by class labels, then checks it at d = 2.
// Throws std::invalid_argument when an element's label is missing from the
// table. On return *out (if non-null) holds the assembled candidate.
PseudoRepVerdict hecke_assignment(const FiniteGroup& g,
                                  const std::vector<std::string>& element_labels,
                                  const std::map<std::string, Int>& eigenvalues,
                                  Int modulus, PseudoRep* out = nullptr,
                                  long long budget = 10'000'000,
                                  std::uint64_t seed = 0);

} // namespace favres
