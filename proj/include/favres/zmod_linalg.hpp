#pragma once

#include "favres/params.hpp"

namespace favres {

/// Dense row-major matrix with entries in [0, mod).
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}
    Int& at(int r, int c) { return a[(size_t)r * cols + c]; }
    Int at(int r, int c) const { return a[(size_t)r * cols + c]; }
    static Mat identity(int n);
    bool operator==(const Mat&) const = default;
};

Mat mat_mul(const Mat& x, const Mat& y, Int mod);

/// Diagonalization over Z/p^m. The diagonal of the reduced matrix is
/// p^{val[0]} | p^{val[1]} | ...; val has length min(rows, cols) with the
/// convention val = m for zero diagonal entries. Column operations are
/// mirrored inversely on col_inv, so col_inv maps original column
/// coordinates to reduced ones. Equivalently this is integer Smith reduction
/// of the lift with the p^m lattice adjoined, which keeps entries reduced.
struct SmithResult {
    std::vector<int> val;
    Mat col_inv;
};

SmithResult smith_local(const Mat& a, Int p, int m, bool want_col_inv);

/// Elementary divisor exponents (sorted ascending, zeros dropped) of
/// ker(d_out)/im(d_in) over Z/p^m, where d_in : R^a -> R^r and
/// d_out : R^r -> R^b. Throws std::invalid_argument unless d_out*d_in = 0.
std::vector<int> homology_over_Zpm(const Mat& d_in, const Mat& d_out, Int p, int m);

/// Rank over the field Z/p (used as the m = 1 exactness fast path).
int rank_mod_p(const Mat& a, Int p);

} // namespace favres
