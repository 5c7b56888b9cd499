#pragma once

#include "favres/complexes.hpp"

namespace favres {

/// Subsets of `axes` with exactly `size` elements, in lexicographic order.
std::vector<Axes> subsets_of_size(const Axes& axes, int size);

/// Exponent data chosen for one support class during a resolution pass.
struct ClassPlan {
    Axes J;          // common support of the class
    Tuple exponents; // one positive step multiple per axis of J
    Tuple witness;   // accepted twist exponents on the axes off J
    Int total = 0;   // sum of all search exponents, for reporting
};

/// Record of one pass of the main loop.
struct IterationPlan {
    int r = 0;                      // dimension cleared by this pass
    std::vector<ClassPlan> classes; // lex-ordered by J
    Int lower_level = 0;            // uniform exponent for lower-dimensional rows
};

/// A termwise resolution: `bracket` lives in degrees 0..len-1 and the in-map
/// multiplies by the order-`in_shift` section product into bracket degree 0
/// (alpha = 1). The remaining fields record how the bracket was built so
/// connecting morphisms can be derived.
struct TermResolution {
    Term source;
    AdmissibleComplex bracket;
    Tuple in_shift;
    bool uniform = false; // false: Koszul along the support; true: uniform level
    Axes J;               // Koszul only: the support resolved along
    Tuple exponents;      // Koszul only: per-axis exponents, aligned with J
    Int level = 0;        // uniform only
};

/// Koszul resolution along the support of t. Degree-s summands are indexed
/// by I subset support(t), #I = s, in lex order; each is the term
/// (k + sum_{j} N_j p_j, M + sum_{i in I} N_i e_i). Differentials are signed
/// restrictions (shift 0); the in-map shift is N padded by zeros.
TermResolution koszul_stratum_resolution(const Params& params, const Term& t, const Tuple& n_on_J);

/// Uniform-level resolution. Degree-s summands are indexed by all
/// L subset {0..g-1}, #L = s, in lex order; each has weight k + N * sum_i p_i
/// and orders N on L, M_l + N on positive axes off L, 0 elsewhere.
/// Differentials are signed restrictions/projections (shift 0); the in-map
/// shift is N everywhere.
TermResolution lower_dim_resolution(const Params& params, const Term& t, Int level);

/// Lifts a nontrivial admissible hom f between the resolved sources to a
/// degreewise chain map between the brackets: entries are diagonal on the
/// component subsets, with shift f.shift for matching kinds and
/// f.shift + level - exponents (padded) from a Koszul row into a uniform row.
/// maps[s] holds the entries at bracket degree s. Throws when resolutions are
/// incompatible or an induced entry fails admissibility.
std::vector<std::vector<HomEntry>> connect_resolutions(const Params& params,
                                                       const TermResolution& source_res,
                                                       const TermResolution& target_res,
                                                       const Hom& f);

struct FavorableResolutionResult {
    AdmissibleComplex complex; // lo = 0; every term favorable
    /// Augmentation from the starting term into degree 0 (row aug_row);
    /// the augmented complex is exact.
    Hom augmentation;
    int aug_row = 0;
    int iterations = 0;
    std::vector<IterationPlan> plans;
    bool g1_degenerate = false;
};

/// Builds a bounded complex of favorable terms whose realization is
/// quasi-isomorphic to the realization of the single starting term
/// (wt, orders 0): each pass resolves every non-favorable slot (top dimension
/// by Koszul rows, the rest at the uniform level), totalizes the grid with
/// the favorable part carried along, and re-flags; the top non-favorable
/// dimension drops strictly, so at most g+1 passes run.
FavorableResolutionResult favorable_resolution(const Params& params, const Weight& wt);

} // namespace favres
