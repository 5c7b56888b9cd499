#pragma once

#include "favres/complexes.hpp"
#include "favres/zmod_linalg.hpp"

namespace favres {

/// Multigraded monomial quotient of a polynomial ring over Z/p^m: entry i of
/// `bounds` is the relation exponent on axis i (x_i^{b_i} = 0), 0 meaning no
/// relation. Realizes a term by forgetting its weight.
struct MonomialQuotient {
    Tuple bounds;

    bool operator==(const MonomialQuotient&) const = default;
};

MonomialQuotient realize_term(const Params& params, const Term& t);

/// Realized complex: modules mirror the source grading; every entry is
/// multiplication by alpha * x^shift. `windows[d][i]` is the multidegree at
/// which summand i of degree d starts contributing: the monomial x^u of the
/// summand sits at global multidegree u + window. Windows are solved from the
/// entry shifts (per connected component, normalized to start at zero) so
/// that every map is multigrading-preserving.
struct ToyComplex {
    int lo = 0;
    std::vector<std::vector<MonomialQuotient>> modules;
    std::vector<std::vector<HomEntry>> diffs;
    std::vector<std::vector<Tuple>> windows;
};

/// Drops zero-map entries, checks the remaining ones are realizable
/// (carrying condition on bounds), and solves the windows.
ToyComplex realize_complex(const Params& params, const AdmissibleComplex& c);

/// Same, with the augmentation glued in as a single summand at degree
/// c.lo - 1 mapping into row aug_row of degree c.lo.
ToyComplex realize_augmented(const Params& params, const AdmissibleComplex& c, const Hom& aug,
                             int aug_row);

/// One multidegree slice: a bounded complex of free Z/p^m modules.
/// dims[n - lo] counts the contributing summands; mats[n - lo] is the matrix
/// of the differential out of degree n (absent for the top degree).
struct StrandComplex {
    int lo = 0;
    std::vector<int> dims;
    std::vector<Mat> mats;
};

StrandComplex strand(const Params& params, const ToyComplex& tc, const Tuple& a);

struct StrandFailure {
    Tuple multidegree;         // representative multidegree (cell corner)
    int degree = 0;            // absolute complex degree with nonzero homology
    std::vector<int> divisors; // exponents e of the invariant factors p^e

    bool operator==(const StrandFailure&) const = default;
};

struct VerificationReport {
    bool ok = true;
    long long strands_checked = 0; // multidegrees covered (box volume)
    long long cells = 0;           // constant-pattern boxes actually examined
    long long failed_strands = 0;
    std::vector<StrandFailure> failures; // sorted by multidegree then degree; capped
    Tuple box;                           // box actually used
};

/// Number of detailed failures kept in a report.
inline constexpr int kMaxReportedFailures = 256;

struct VerifyOptions {
    std::optional<Tuple> box; // per-axis exclusive upper bounds; default derived
    int jobs = 1;             // worker threads over the leading axis
    bool direct = false;      // enumerate every multidegree (no cell grouping)
};

/// Raised when a box fails the size precondition (every exponent and finite
/// bound on axis i must be < B_i).
struct BoxTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Smallest box satisfying both the exponent/bound rule (strictly above every
/// entry shift, finite bound, and length-two composite sum per axis) and
/// window completeness (strictly above every window start and window end, so
/// the constant tail pattern is represented inside the box).
Tuple default_box(const Params& params, const ToyComplex& tc);

/// Checks that every strand inside the box is exact at every degree.
VerificationReport verify_exactness(const Params& params, const ToyComplex& tc,
                                    const VerifyOptions& options = {});

VerificationReport verify_exactness(const Params& params, const AdmissibleComplex& c,
                                    const VerifyOptions& options = {});

/// Checks that the augmented complex (source glued in one degree below via
/// the in-map) is exact everywhere: the in-map is a quasi-isomorphism onto
/// the complex, whose homology is then concentrated in the bottom degree.
VerificationReport verify_quasi_isomorphism(const Params& params, const AdmissibleComplex& c,
                                            const Hom& aug, int aug_row,
                                            const VerifyOptions& options = {});

} // namespace favres
