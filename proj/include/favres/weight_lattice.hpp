#pragma once

#include <optional>

#include "favres/params.hpp"

namespace favres {

/// A weight (k_1..k_g; w): per-axis components plus a parallel component.
struct Weight {
    Tuple k;
    Int w = 0;

    bool operator==(const Weight&) const = default;
};

/// Axis sets are kept as sorted 0-based index vectors.
using Axes = std::vector<int>;

bool is_paritious(const Weight& wt);
bool is_regular(const Weight& wt);

/// Basis shift vector p_i = p*e_{i-1} - e_i (cyclic, 0-based axis i).
Tuple shift_p(const Params& params, int i);
/// Basis shift vector q_i = p*e_{i-1} + e_i.
Tuple shift_q(const Params& params, int i);

/// Weight change effected by multiplying with the order-M product of the
/// canonical per-axis sections: sum_i M_i * p_i. Component j is p*M_{j+1} - M_j.
Tuple weight_shift_of(const Params& params, const Tuple& M);

/// Same but for the q-family: sum_i T_i * q_i. Component j is p*T_{j+1} + T_j.
Tuple q_shift_of(const Params& params, const Tuple& T);

Tuple add_tuples(const Tuple& a, const Tuple& b);
Tuple sub_tuples(const Tuple& a, const Tuple& b);

/// Membership in the positivity cone model: paritious and min_i k_i >= threshold.
bool in_delta(const Params& params, const Weight& wt);

/// Robust cone membership: wt is regular and every paritious weight within
/// sup-distance p * #J * max_i M_i of wt lies in the cone. Since vanishing
/// orders are even, this is equivalent to min_i k_i - radius >= threshold.
bool star_condition(const Params& params, const Weight& wt, const Tuple& M, const Axes& J);

/// Exact membership test for the diagonal cylinder: all entries positive,
/// (a, w) paritious, squared distance to the diagonal < C2, and squared
/// length of the diagonal projection > D2.
bool cylinder_membership(const Params& params, const Tuple& a, Int w,
                         const Rational64& C2, const Rational64& D2);

/// Search budget for exponent searches: bounds the total sum of exponents.
Int search_budget(const Params& params, Int max_order, Int weight_magnitude);

struct FavorableExponents {
    Tuple n_on_J;         // positive multiples of step, one per axis in J
    Tuple n_off_J;        // multiples of step with N_j > M_j + step, one per axis off J
    Int total = 0;        // sum of all exponents, for reporting
};

/// Finds exponents N so that for every supplied weight k, the shifted weight
/// k + sum_{j in J} N_j p_j + sum_{j not in J} N_j q_j satisfies the robust
/// cone condition with respect to M and J. Candidates are enumerated by
/// increasing total sum, ties broken lexicographically; throws
/// BudgetExhausted when the budget runs out.
FavorableExponents make_favorable_exponents(const Params& params, const Axes& J,
                                            const Tuple& M, const std::vector<Weight>& weights);

} // namespace favres
