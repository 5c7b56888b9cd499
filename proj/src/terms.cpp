#include "favres/terms.hpp"

#include <algorithm>
#include <numeric>

namespace favres {

void validate_orders(const Params& params, const Orders& M) {
    if ((int)M.size() != params.g) throw std::invalid_argument("orders: size mismatch");
    for (Int mi : M) {
        if (mi < 0) throw std::invalid_argument("orders: negative entry");
        if (mi % params.step != 0)
            throw std::invalid_argument("orders: entries must be multiples of 2p^(m-1)");
    }
}

Axes support(const Orders& M) {
    Axes out;
    for (int i = 0; i < (int)M.size(); ++i)
        if (M[i] == 0) out.push_back(i);
    return out;
}

int dimension(const Orders& M) {
    return (int)support(M).size();
}

void validate_term(const Params& params, const Term& t) {
    validate_orders(params, t.orders);
    if ((int)t.weight.k.size() != params.g) throw std::invalid_argument("term: weight size mismatch");
    if (!is_paritious(t.weight)) throw std::invalid_argument("term: weight must be paritious");
}

Favorability is_favorable(const Params& params, const Term& t) {
    validate_term(params, t);
    const Orders& M = t.orders;
    Axes J = support(M);

    // Axis j of the weight moves under q-twists on axes j and j+1 only; if
    // both carry zero orders no twist may touch it, so it must already clear
    // the robust threshold.
    Int max_order = *std::max_element(M.begin(), M.end());
    Int radius = checked_mul(checked_mul(params.p, (Int)J.size()), max_order);
    for (int j = 0; j < params.g; ++j) {
        bool stuck = (M[j] == 0) && (M[params.next(j)] == 0);
        if (stuck && t.weight.k[j] - radius < params.delta_threshold)
            return {false, false, std::nullopt};
    }

    Int mag = 0;
    for (Int ki : t.weight.k) mag = std::max(mag, std::abs(ki));
    Int budget = search_budget(params, max_order, mag);

    for (Int extra = 0;; extra += params.step) {
        Tuple T(params.g, 0);
        Int total = 0;
        for (int r = 0; r < params.g; ++r) {
            if (M[r] > 0) {
                T[r] = M[r] + 2 * params.step + extra;
                total = checked_add(total, T[r]);
            }
        }
        if (total > budget) {
            if (total == 0) break; // no twistable axis at all: only T = 0 was available
            return {false, true, std::nullopt};
        }
        Weight twisted{add_tuples(t.weight.k, q_shift_of(params, T)), t.weight.w};
        if (star_condition(params, twisted, M, J)) return {true, false, T};
        if (total == 0) break; // M = 0: T is forced to zero
    }
    return {false, false, std::nullopt};
}

} // namespace favres
