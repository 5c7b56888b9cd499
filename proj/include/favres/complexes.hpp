#pragma once

#include <map>

#include "favres/terms.hpp"

namespace favres {

/// One matrix entry of a differential or chain map: multiplication by
/// alpha times the order-R product of canonical sections, from the source
/// summand (column) to the target summand (row). alpha lives in [0, p^m).
struct HomEntry {
    int row = 0;
    int col = 0;
    Int alpha = 0;
    Tuple shift;

    bool operator==(const HomEntry&) const = default;
};

/// A standalone hom between two terms (used by the admissibility API).
struct Hom {
    Term source;
    Term target;
    Int alpha = 0;
    Tuple shift;

    bool operator==(const Hom&) const = default;
};

/// Zero homs are admissible outright. A nontrivial hom needs: the weight
/// difference realized by the shift, vanishing orders carried along
/// (source.M_i > 0 forces target.M_i > 0 and source.M_i + R_i >= target.M_i),
/// and equal parallel components.
bool is_admissible(const Params& params, const Hom& h);

/// A hom is the zero map when its coefficient vanishes or its shift already
/// vanishes to the target's full order on some axis (R_j >= target.M_j > 0):
/// the section is divisible by the target stratum's defining equation.
bool is_zero_map(const Params& params, const Term& target, Int alpha, const Tuple& shift);

/// Composition g after f; closure: the composite of admissible homs is admissible.
Hom compose(const Params& params, const Hom& g, const Hom& f);

/// Bounded complex of terms. Degree lo + d holds terms[d]; diffs[d] maps
/// degree lo + d to lo + d + 1 and has size terms.size() - 1 (or 0).
struct AdmissibleComplex {
    Int w = 0;
    int lo = 0;
    std::vector<std::vector<Term>> terms;
    std::vector<std::vector<HomEntry>> diffs;

    int hi() const { return lo + (int)terms.size() - 1; }
    bool operator==(const AdmissibleComplex&) const = default;
};

void validate_complex(const Params& params, const AdmissibleComplex& c);

struct DSquareViolation {
    int degree = 0; // source degree of the length-two composite
    int row = 0;
    int col = 0;
    Tuple shift;

    bool operator==(const DSquareViolation&) const = default;
};

/// Composite entries are grouped by total shift; a group vanishes when its
/// coefficient is 0 mod p^m or its shift kills the target stratum.
std::vector<DSquareViolation> check_d_squared(const Params& params, const AdmissibleComplex& c);

/// Drops entries that are zero maps (coefficient zero or stratum-killed).
void normalize_zero_entries(const Params& params, AdmissibleComplex& c);

/// Appends correction entries until every length-two composite group
/// vanishes (coefficient zero mod p^m or stratum-killed). A residual group
/// from a source summand to a far summand two degrees up is cancelled by
/// factoring through an adjacent entry with invertible coefficient; the
/// added entry must itself be admissible and act nontrivially on the
/// stratum. Deterministic; throws InternalError when some residual group
/// admits no such factorization or the correction budget runs out.
void strictify_d_squared(const Params& params, AdmissibleComplex& c);

/// Degree-preserving chain map between complexes; maps[i] holds the matrix
/// at source degree source.lo + i (empty when either side is empty there).
struct ChainMap {
    AdmissibleComplex source;
    AdmissibleComplex target;
    std::vector<std::vector<HomEntry>> maps;
};

/// Entrywise admissibility plus commutation with the differentials
/// (compared groupwise up to zero maps).
void validate_chain_map(const Params& params, const ChainMap& phi);

/// Mapping cone: degree n is target^n (+) source^{n+1} with differential
/// [[d_target, phi], [0, -d_source]]; target summands are listed first.
AdmissibleComplex cone(const Params& params, const ChainMap& phi);

/// C[s]: degree n holds C^{n+s}; differentials pick up the sign (-1)^s.
AdmissibleComplex shift_complex(const Params& params, const AdmissibleComplex& c, int s);

AdmissibleComplex direct_sum(const Params& params, const AdmissibleComplex& a,
                             const AdmissibleComplex& b);

/// Grid of terms with commuting squares. cells[i][j] sits at row_lo + i,
/// col_lo + j; horiz[i][j] maps into column j + 1, vert[i][j] into row i + 1.
struct DoubleComplex {
    Int w = 0;
    int row_lo = 0;
    int col_lo = 0;
    std::vector<std::vector<std::vector<Term>>> cells;
    std::vector<std::vector<std::vector<HomEntry>>> horiz;
    std::vector<std::vector<std::vector<HomEntry>>> vert;
};

void validate_double_complex(const Params& params, const DoubleComplex& dc);

/// Location of a grid summand inside the totalization.
struct TotalIndex {
    int row = 0;
    int col = 0;
    int comp = 0;
    int degree = 0; // row + col
    int index = 0;  // position within the total degree
};

struct Totalization {
    AdmissibleComplex complex;
    std::vector<TotalIndex> placements;
};

/// Total complex: degree n collects cells with row + col = n (rows ascending);
/// vertical entries acquire the sign (-1)^col.
Totalization total(const Params& params, const DoubleComplex& dc);

/// Result of splitting at the top dimension r: the classes hold the
/// dimension-r terms per support, rest holds everything lower (shifted one
/// degree down with negated differentials), and connecting is the chain map
/// from the direct sum of the classes to rest whose cone (shifted by [-1])
/// reassembles the input.
struct DimensionSplit {
    std::vector<std::pair<Axes, AdmissibleComplex>> classes; // lex-ordered supports
    AdmissibleComplex rest;
    ChainMap connecting;
};

DimensionSplit split_by_dimension(const Params& params, const AdmissibleComplex& c, int r);

} // namespace favres
