#include "favres/zmod_linalg.hpp"

#include <algorithm>

namespace favres {

Mat Mat::identity(int n) {
    Mat out(n, n);
    for (int i = 0; i < n; ++i) out.at(i, i) = 1;
    return out;
}

Mat mat_mul(const Mat& x, const Mat& y, Int mod) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    Mat out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            Int xv = x.at(i, k);
            if (xv == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                out.at(i, j) = add_mod(out.at(i, j), mul_mod(xv, y.at(k, j), mod), mod);
        }
    return out;
}

SmithResult smith_local(const Mat& a, Int p, int m, bool want_col_inv) {
    Int pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    Mat w = a;
    for (Int& v : w.a) v = normalize_mod(v, pm);
    Mat ci = want_col_inv ? Mat::identity(a.cols) : Mat();

    int n = std::min(a.rows, a.cols);
    SmithResult out;
    out.val.assign(n, m);

    auto swap_rows = [&](int r1, int r2) {
        if (r1 == r2) return;
        for (int j = 0; j < w.cols; ++j) std::swap(w.at(r1, j), w.at(r2, j));
    };
    auto swap_cols = [&](int c1, int c2) {
        if (c1 == c2) return;
        for (int i = 0; i < w.rows; ++i) std::swap(w.at(i, c1), w.at(i, c2));
        if (want_col_inv)
            for (int j = 0; j < ci.cols; ++j) std::swap(ci.at(c1, j), ci.at(c2, j));
    };

    for (int t = 0; t < n; ++t) {
        // pivot: entry of minimal p-valuation in the trailing submatrix
        int best_v = m, bi = -1, bj = -1;
        for (int i = t; i < w.rows && best_v > 0; ++i)
            for (int j = t; j < w.cols; ++j) {
                if (w.at(i, j) == 0) continue;
                int v = p_valuation(w.at(i, j), p, m);
                if (v < best_v) {
                    best_v = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        if (bi < 0) break;
        swap_rows(t, bi);
        swap_cols(t, bj);

        // scale the pivot row so the pivot is exactly p^v
        Int piv = w.at(t, t);
        Int pv = 1;
        for (int i = 0; i < best_v; ++i) pv *= p;
        Int unit = piv / pv;
        if (unit % p == 0) throw InternalError("smith_local: pivot unit not a unit");
        Int unit_inv = inv_mod(unit, pm);
        for (int j = t; j < w.cols; ++j) w.at(t, j) = mul_mod(w.at(t, j), unit_inv, pm);

        // clear the pivot column with row operations (untracked)
        for (int i = t + 1; i < w.rows; ++i) {
            Int v = w.at(i, t);
            if (v == 0) continue;
            Int f = v / pv; // exact: valuation >= best_v
            for (int j = t; j < w.cols; ++j)
                w.at(i, j) = normalize_mod(w.at(i, j) - mul_mod(f, w.at(t, j), pm), pm);
        }
        // clear the pivot row with column operations (mirrored on ci)
        for (int j = t + 1; j < w.cols; ++j) {
            Int v = w.at(t, j);
            if (v == 0) continue;
            Int f = v / pv;
            for (int i = t; i < w.rows; ++i)
                w.at(i, j) = normalize_mod(w.at(i, j) - mul_mod(f, w.at(i, t), pm), pm);
            if (want_col_inv)
                for (int c = 0; c < ci.cols; ++c)
                    ci.at(t, c) = add_mod(ci.at(t, c), mul_mod(f, ci.at(j, c), pm), pm);
        }
        out.val[t] = best_v;
    }
    out.col_inv = std::move(ci);
    return out;
}

std::vector<int> homology_over_Zpm(const Mat& d_in, const Mat& d_out, Int p, int m) {
    if (d_in.rows != d_out.cols)
        throw std::invalid_argument("homology_over_Zpm: middle dimension mismatch");
    Int pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    Mat z = mat_mul(d_out, d_in, pm);
    for (Int v : z.a)
        if (v != 0) throw std::invalid_argument("homology_over_Zpm: d_out * d_in != 0");

    int r = d_in.rows;
    // ker(d_out) in transformed coordinates y = V^{-1} x: y_i ranges over
    // p^{m - val_i} * R, so generator i has annihilator p^{val_i}.
    SmithResult s = smith_local(d_out, p, m, true);
    std::vector<int> ann(r, m); // r may exceed the diagonal length
    for (int i = 0; i < (int)s.val.size(); ++i) ann[i] = s.val[i];

    Mat ain = mat_mul(s.col_inv, d_in, pm);
    // generators with ann = 0 are trivial; collect the others
    std::vector<int> gen;
    for (int i = 0; i < r; ++i)
        if (ann[i] > 0) gen.push_back(i);
    int ng = (int)gen.size();
    Mat rel(ng, ng + d_in.cols);
    for (int t = 0; t < ng; ++t) {
        Int pv = 1;
        for (int i = 0; i < ann[gen[t]]; ++i) pv *= p;
        rel.at(t, t) = normalize_mod(pv, pm);
    }
    for (int c = 0; c < d_in.cols; ++c)
        for (int t = 0; t < ng; ++t) {
            int i = gen[t];
            Int v = ain.at(i, c);
            // coordinates of the image inside the kernel generator lattice:
            // divide by p^{m - ann_i}; exact because d_out * d_in = 0
            Int dv = 1;
            for (int e = 0; e < m - ann[i]; ++e) dv *= p;
            if (v % dv != 0) throw InternalError("homology_over_Zpm: inexact kernel division");
            rel.at(t, ng + c) = normalize_mod(v / dv, pm);
        }

    SmithResult hs = smith_local(rel, p, m, false);
    std::vector<int> divisors;
    for (int e : hs.val)
        if (e > 0) divisors.push_back(e);
    std::sort(divisors.begin(), divisors.end());
    return divisors;
}

int rank_mod_p(const Mat& a, Int p) {
    Mat w = a;
    for (Int& v : w.a) v = normalize_mod(v, p);
    int rank = 0;
    for (int c = 0; c < w.cols && rank < w.rows; ++c) {
        int piv = -1;
        for (int i = rank; i < w.rows; ++i)
            if (w.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < w.cols; ++j) std::swap(w.at(rank, j), w.at(piv, j));
        Int inv = inv_mod(w.at(rank, c), p);
        for (int j = c; j < w.cols; ++j) w.at(rank, j) = mul_mod(w.at(rank, j), inv, p);
        for (int i = 0; i < w.rows; ++i) {
            if (i == rank || w.at(i, c) == 0) continue;
            Int f = w.at(i, c);
            for (int j = c; j < w.cols; ++j)
                w.at(i, j) = normalize_mod(w.at(i, j) - mul_mod(f, w.at(rank, j), p), p);
        }
        ++rank;
    }
    return rank;
}

} // namespace favres
