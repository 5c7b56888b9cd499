#pragma once

#include "favres/weight_lattice.hpp"

namespace favres {

/// Per-axis vanishing orders: each entry zero or a positive multiple of step.
using Orders = Tuple;

void validate_orders(const Params& params, const Orders& M);

/// Axes where the order vanishes (the open directions of the stratum).
Axes support(const Orders& M);
/// Number of open directions.
int dimension(const Orders& M);

/// One summand: a weight restricted to the vanishing stratum of M.
struct Term {
    Weight weight;
    Orders orders;

    bool operator==(const Term&) const = default;
};

void validate_term(const Params& params, const Term& t);

struct Favorability {
    bool favorable = false;
    bool budget_exhausted = false;
    /// The q-twist certifying favorability, when found.
    std::optional<Tuple> witness;
};

/// A term is favorable when some valid q-twist T (zero on the support, and
/// elsewhere zero or a step-multiple exceeding M_r + step) moves its weight
/// into the robust cone relative to (M, support(M)). The search pushes a
/// uniform twist outward and is exact for the threshold cone model: axes
/// untouched by any allowed twist must already clear the threshold.
Favorability is_favorable(const Params& params, const Term& t);

} // namespace favres
