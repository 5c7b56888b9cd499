#include "favres/weight_lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace favres {

bool is_paritious(const Weight& wt) {
    for (Int ki : wt.k)
        if (((ki - wt.w) % 2 + 2) % 2 != 0) return false;
    return true;
}

bool is_regular(const Weight& wt) {
    return std::all_of(wt.k.begin(), wt.k.end(), [](Int ki) { return ki > 1; });
}

Tuple shift_p(const Params& params, int i) {
    Tuple v(params.g, 0);
    v[params.prev(i)] += params.p;
    v[i] -= 1;
    return v;
}

Tuple shift_q(const Params& params, int i) {
    Tuple v(params.g, 0);
    v[params.prev(i)] += params.p;
    v[i] += 1;
    return v;
}

Tuple weight_shift_of(const Params& params, const Tuple& M) {
    if ((int)M.size() != params.g) throw std::invalid_argument("weight_shift_of: size mismatch");
    Tuple out(params.g, 0);
    for (int j = 0; j < params.g; ++j)
        out[j] = checked_add(checked_mul(params.p, M[params.next(j)]), -M[j]);
    return out;
}

Tuple q_shift_of(const Params& params, const Tuple& T) {
    if ((int)T.size() != params.g) throw std::invalid_argument("q_shift_of: size mismatch");
    Tuple out(params.g, 0);
    for (int j = 0; j < params.g; ++j)
        out[j] = checked_add(checked_mul(params.p, T[params.next(j)]), T[j]);
    return out;
}

Tuple add_tuples(const Tuple& a, const Tuple& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add_tuples: size mismatch");
    Tuple out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
    return out;
}

Tuple sub_tuples(const Tuple& a, const Tuple& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub_tuples: size mismatch");
    Tuple out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], -b[i]);
    return out;
}

bool in_delta(const Params& params, const Weight& wt) {
    if ((int)wt.k.size() != params.g) throw std::invalid_argument("in_delta: size mismatch");
    if (!is_paritious(wt)) return false;
    return *std::min_element(wt.k.begin(), wt.k.end()) >= params.delta_threshold;
}

bool star_condition(const Params& params, const Weight& wt, const Tuple& M, const Axes& J) {
    if ((int)wt.k.size() != params.g || (int)M.size() != params.g)
        throw std::invalid_argument("star_condition: size mismatch");
    if (!is_paritious(wt)) return false;
    if (!is_regular(wt)) return false;
    Int max_order = M.empty() ? 0 : *std::max_element(M.begin(), M.end());
    Int radius = checked_mul(checked_mul(params.p, (Int)J.size()), max_order);
    Int min_k = *std::min_element(wt.k.begin(), wt.k.end());
    return min_k - radius >= params.delta_threshold;
}

bool cylinder_membership(const Params& params, const Tuple& a, Int w,
                         const Rational64& C2, const Rational64& D2) {
    if ((int)a.size() != params.g) throw std::invalid_argument("cylinder_membership: size mismatch");
    for (Int ai : a)
        if (ai <= 0) return false;
    if (!is_paritious(Weight{a, w})) return false;
    __int128 sum = 0, sumsq = 0;
    for (Int ai : a) {
        sum += ai;
        sumsq += (__int128)ai * ai;
    }
    Int g = params.g;
    // dist^2 = |a|^2 - S^2/g < C2  <=>  (g*|a|^2 - S^2) * C2.den < g * C2.num
    __int128 lhs = ((__int128)g * sumsq - sum * sum) * C2.den;
    __int128 rhs = (__int128)g * C2.num;
    if (!(lhs < rhs)) return false;
    // |E(a)|^2 = S^2/g > D2  <=>  S^2 * D2.den > g * D2.num
    if (!(sum * sum * D2.den > (__int128)g * D2.num)) return false;
    return true;
}

Int search_budget(const Params& params, Int max_order, Int weight_magnitude) {
    return checked_mul(checked_mul(64 * params.step, (Int)params.g),
                       checked_add(params.delta_threshold, checked_add(max_order, weight_magnitude)));
}

namespace {

// Enumerates extras (t_0..t_{g-1}) with sum == total in lexicographic order.
bool accept_candidate(const Params& params, const Axes& J, const std::vector<bool>& on_J,
                      const Tuple& M, const std::vector<Weight>& weights, const Tuple& N) {
    Tuple shift(params.g, 0);
    for (int j = 0; j < params.g; ++j) {
        Tuple base = on_J[j] ? shift_p(params, j) : shift_q(params, j);
        for (int c = 0; c < params.g; ++c) shift[c] = checked_add(shift[c], checked_mul(N[j], base[c]));
    }
    for (const Weight& wt : weights) {
        Weight shifted{add_tuples(wt.k, shift), wt.w};
        if (!star_condition(params, shifted, M, J)) return false;
    }
    return true;
}

} // namespace

FavorableExponents make_favorable_exponents(const Params& params, const Axes& J,
                                            const Tuple& M, const std::vector<Weight>& weights) {
    if ((int)M.size() != params.g) throw std::invalid_argument("make_favorable_exponents: size mismatch");
    std::vector<bool> on_J(params.g, false);
    for (int j : J) {
        if (j < 0 || j >= params.g) throw std::invalid_argument("make_favorable_exponents: bad axis");
        on_J[j] = true;
    }
    for (int j = 0; j < params.g; ++j) {
        if (M[j] < 0 || M[j] % params.step != 0)
            throw std::invalid_argument("make_favorable_exponents: orders must be nonnegative multiples of step");
        if (on_J[j] != (M[j] == 0))
            throw std::invalid_argument("make_favorable_exponents: J must equal the support of M");
    }
    Int w0 = weights.empty() ? 0 : weights.front().w;
    for (const Weight& wt : weights) {
        if ((int)wt.k.size() != params.g || wt.w != w0)
            throw std::invalid_argument("make_favorable_exponents: weights must share w");
        if (!is_paritious(wt)) throw std::invalid_argument("make_favorable_exponents: weights must be paritious");
    }

    Tuple lower(params.g);
    for (int j = 0; j < params.g; ++j)
        lower[j] = on_J[j] ? params.step : M[j] + 2 * params.step;
    Int lower_total = std::accumulate(lower.begin(), lower.end(), Int(0));

    Int max_order = *std::max_element(M.begin(), M.end());
    Int mag = 0;
    for (const Weight& wt : weights)
        for (Int ki : wt.k) mag = std::max(mag, std::abs(ki));
    Int budget = search_budget(params, max_order, mag);

    Tuple N(params.g, 0);
    std::optional<FavorableExponents> found;
    // Walk candidates outward from the diagonal: total sum ascending, lex order within.
    std::function<bool(int, Int)> place = [&](int axis, Int remaining) -> bool {
        if (axis == params.g - 1) {
            N[axis] = lower[axis] + remaining;
            if (accept_candidate(params, J, on_J, M, weights, N)) return true;
            return false;
        }
        for (Int take = 0; take <= remaining; take += params.step) {
            N[axis] = lower[axis] + take;
            if (place(axis + 1, remaining - take)) return true;
        }
        return false;
    };
    for (Int total = lower_total; total <= budget; total += params.step) {
        if (place(0, total - lower_total)) {
            FavorableExponents out;
            out.total = total;
            for (int j = 0; j < params.g; ++j)
                (on_J[j] ? out.n_on_J : out.n_off_J).push_back(N[j]);
            return out;
        }
    }
    throw BudgetExhausted("make_favorable_exponents: no exponents within budget " + std::to_string(budget));
}

} // namespace favres
