#pragma once

#include "favres/complexes.hpp"
#include "favres/zmod_linalg.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace favres::testing {

inline Params P(Int p, int g, int m, Int thr = 5) { return Params(p, g, m, thr); }

inline Int ipow(Int b, int e) {
    Int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline std::vector<Int> apply_mat(const Mat& a, const std::vector<Int>& x, Int mod) {
    std::vector<Int> y(a.rows, 0);
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < a.cols; ++c)
            y[r] = add_mod(y[r], mul_mod(a.at(r, c), x[c], mod), mod);
    return y;
}

/// Elementary divisors of ker(d_out)/im(d_in) over Z/p^m by brute-force
/// element enumeration. d_in : R^a -> R^r, d_out : R^r -> R^b. Keep
/// pm^max(a, r) small.
inline std::vector<int> homology_by_enumeration(const Mat& d_in, const Mat& d_out, Int p,
                                                int m) {
    Int pm = ipow(p, m);
    int r = d_in.rows;
    // image of d_in
    std::set<std::vector<Int>> image;
    {
        std::vector<Int> y(d_in.cols, 0);
        while (true) {
            image.insert(apply_mat(d_in, y, pm));
            int i = (int)y.size() - 1;
            while (i >= 0 && y[i] + 1 >= pm) y[i--] = 0;
            if (i < 0) break;
            ++y[i];
        }
    }
    // kernel scan: counts[t] = #{x in ker : p^t * x in image}
    std::vector<long long> counts(m + 1, 0);
    std::vector<Int> x(r, 0);
    while (true) {
        bool in_ker = true;
        if (d_out.rows > 0)
            for (Int v : apply_mat(d_out, x, pm))
                if (v != 0) {
                    in_ker = false;
                    break;
                }
        if (in_ker) {
            Int scale = 1;
            for (int t = 0; t <= m; ++t) {
                std::vector<Int> sx(r);
                for (int i = 0; i < r; ++i) sx[i] = normalize_mod(x[i] * scale, pm);
                if (image.count(sx)) counts[t] += 1;
                scale *= p;
            }
        }
        if (r == 0) break;
        int i = r - 1;
        while (i >= 0 && x[i] + 1 >= pm) x[i--] = 0;
        if (i < 0) break;
        ++x[i];
    }
    // counts[t]/counts[0] = p^{#divisors >= 1 clipped at t}; recover the multiset
    auto logp = [&](long long n) {
        int e = 0;
        while (n > 1) {
            n /= p;
            ++e;
        }
        return e;
    };
    std::vector<int> at_least(m + 2, 0); // at_least[t] = #divisors >= t
    for (int t = 1; t <= m; ++t) at_least[t] = logp(counts[t]) - logp(counts[t - 1]);
    std::vector<int> div;
    for (int t = 1; t <= m; ++t)
        for (int c = 0; c < at_least[t] - at_least[t + 1]; ++c) div.push_back(t);
    std::sort(div.begin(), div.end());
    return div;
}

/// Builds a random pair (d_in, d_out) with d_out * d_in = 0 over Z/p^m by
/// conjugating a trivially-composable pair with elementary row operations.
inline std::pair<Mat, Mat> random_composable_pair(std::mt19937_64& rng, Int p, int m, int a,
                                                  int r, int b) {
    Int pm = ipow(p, m);
    auto rnd = [&](Int bound) { return (Int)(rng() % (std::uint64_t)bound); };
    int s = r == 0 ? 0 : (int)(rng() % (std::uint64_t)(r + 1)); // d_in lands in coords < s
    Mat din(r, a), dout(b, r);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < a; ++j) din.at(i, j) = rnd(pm);
    for (int i = 0; i < b; ++i)
        for (int j = s; j < r; ++j) dout.at(i, j) = rnd(pm);
    // conjugate: rows of d_in get L, columns of d_out get L^{-1}
    for (int step = 0; step < 3 * r; ++step) {
        int i = r ? (int)(rng() % (std::uint64_t)r) : 0;
        int j = r ? (int)(rng() % (std::uint64_t)r) : 0;
        if (r == 0 || i == j) continue;
        Int c = rnd(pm);
        for (int k = 0; k < a; ++k)
            din.at(i, k) = add_mod(din.at(i, k), mul_mod(c, din.at(j, k), pm), pm);
        for (int k = 0; k < b; ++k)
            dout.at(k, j) = add_mod(dout.at(k, j), normalize_mod(-mul_mod(c, dout.at(k, i), pm), pm),
                                    pm);
    }
    return {din, dout};
}

/// Standard (n-1)-dimensional representation of a permutation given in
/// one-line form, over Z/modulus, in the basis e_j - e_{j+1}.
inline Mat perm_std_matrix(const std::vector<int>& pi, Int modulus) {
    int n = (int)pi.size();
    Mat out(n - 1, n - 1);
    for (int j = 0; j + 1 < n; ++j) {
        int a = pi[j], b = pi[j + 1];
        if (a < b)
            for (int l = a; l < b; ++l) out.at(l, j) = 1 % modulus;
        else
            for (int l = b; l < a; ++l) out.at(l, j) = normalize_mod(-1, modulus);
    }
    return out;
}

/// Random valid orders tuple: entries 0 or step multiples up to 3*step.
inline Tuple random_orders(std::mt19937_64& rng, const Params& params) {
    Tuple M(params.g, 0);
    for (int i = 0; i < params.g; ++i) {
        int c = (int)(rng() % 4); // 0..3
        M[i] = c * params.step;
    }
    return M;
}

/// Random admissible nontrivial hom ending at a random target term.
inline Hom random_admissible_hom(std::mt19937_64& rng, const Params& params, Int w) {
    Tuple tgt_orders = random_orders(rng, params);
    Tuple shift(params.g, 0);
    Tuple src_orders(params.g, 0);
    for (int i = 0; i < params.g; ++i) {
        shift[i] = (Int)(rng() % 3) * params.step;
        if (tgt_orders[i] > 0) {
            // keep the map nonzero: the shift must not kill the target
            if (shift[i] >= tgt_orders[i]) shift[i] = tgt_orders[i] - params.step;
            // carry the relation: source order 0 (free) or >= target - shift
            if (rng() % 2 == 0) {
                Int lo = std::max<Int>(params.step, tgt_orders[i] - shift[i]);
                src_orders[i] = lo + (Int)(rng() % 2) * params.step;
            }
        }
        // an open target axis forces an open source axis (no relation to carry)
    }
    Tuple src_k(params.g);
    for (int i = 0; i < params.g; ++i) src_k[i] = w + 2 * (Int)(rng() % 7) - 6;
    Tuple tgt_k = add_tuples(src_k, weight_shift_of(params, shift));
    Int alpha = 1 + (Int)(rng() % (std::uint64_t)(params.pm - 1));
    return Hom{Term{Weight{src_k, w}, src_orders}, Term{Weight{tgt_k, w}, tgt_orders}, alpha,
               shift};
}

} // namespace favres::testing
