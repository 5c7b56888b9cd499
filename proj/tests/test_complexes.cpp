#include "helpers.hpp"

#include "favres/toy_model.hpp"

#include <doctest.h>

using namespace favres;
using favres::testing::P;

namespace {

// 0 -> A -> B1 (+) B2 -> C -> 0 with monomial entries and a sign so that
// the two length-two composites cancel. p = 3, g = 2, m = 1.
AdmissibleComplex sign_square(Int c_order = 4) {
    AdmissibleComplex c;
    c.w = 1;
    c.lo = 0;
    Term a{Weight{{3, 3}, 1}, {0, 0}};
    Term b1{Weight{{1, 9}, 1}, {4, 0}};
    Term b2{Weight{{9, 1}, 1}, {0, 4}};
    Term cc{Weight{{7, 7}, 1}, {c_order, c_order}};
    c.terms = {{a}, {b1, b2}, {cc}};
    c.diffs = {{{0, 0, 1, {2, 0}}, {1, 0, 1, {0, 2}}},
               {{0, 0, 1, {0, 2}}, {0, 1, 2, {2, 0}}}};
    return c;
}

void check_term_multisets(const AdmissibleComplex& x, const AdmissibleComplex& y) {
    REQUIRE(x.lo == y.lo);
    REQUIRE(x.terms.size() == y.terms.size());
    for (size_t d = 0; d < x.terms.size(); ++d) {
        auto key = [](const Term& t) { return std::make_pair(t.weight.k, t.orders); };
        std::multiset<std::pair<Tuple, Tuple>> xs, ys;
        for (const Term& t : x.terms[d]) xs.insert(key(t));
        for (const Term& t : y.terms[d]) ys.insert(key(t));
        CHECK(xs == ys);
    }
}

} // namespace

TEST_CASE("admissibility") {
    Params params = P(3, 2, 1);
    Term a{Weight{{3, 3}, 1}, {0, 0}};
    Term b{Weight{{1, 9}, 1}, {4, 0}};

    CHECK(is_admissible(params, Hom{a, b, 1, {2, 0}}));
    CHECK(is_admissible(params, Hom{a, b, 0, {7, -1}})); // zero map: anything goes
    // wrong weight bookkeeping
    CHECK_FALSE(is_admissible(params, Hom{a, b, 1, {0, 2}}));
    // negative or non-step shifts
    CHECK_FALSE(is_admissible(params, Hom{a, a, 1, {-2, 2}}));
    CHECK_FALSE(is_admissible(params, Hom{a, Term{Weight{{5, 5}, 1}, {0, 0}}, 1, {1, 1}}));
    // parallel components must agree
    Term aw{Weight{{3, 3}, 3}, {0, 0}};
    CHECK_FALSE(is_admissible(params, Hom{aw, b, 1, {2, 0}}));
    // orders must be carried: source x^2 relation cannot land in an x^6 quotient
    Term src{Weight{{3, 3}, 1}, {2, 0}};
    Term tgt{Weight{{1, 9}, 1}, {6, 0}};
    CHECK_FALSE(is_admissible(params, Hom{src, tgt, 1, {2, 0}}));
    // ... and an open target axis cannot absorb a vanishing source axis
    Term open_tgt{Weight{{1, 9}, 1}, {0, 0}};
    CHECK_FALSE(is_admissible(params, Hom{src, open_tgt, 1, {2, 0}}));
}

TEST_CASE("zero map detection") {
    Params params = P(3, 2, 1);
    Term tgt{Weight{{1, 1}, 1}, {2, 0}};
    CHECK(is_zero_map(params, tgt, 0, {0, 0}));
    CHECK(is_zero_map(params, tgt, 3, {0, 0}));  // 3 = 0 in Z/3
    CHECK(is_zero_map(params, tgt, 1, {2, 0}));  // shift reaches the order
    CHECK(is_zero_map(params, tgt, 1, {4, 0}));
    CHECK_FALSE(is_zero_map(params, tgt, 1, {0, 4})); // axis 1 is open
    CHECK_FALSE(is_zero_map(params, tgt, 2, {0, 0}));
}

TEST_CASE("composition multiplies coefficients and adds shifts") {
    Params params = P(3, 2, 1);
    std::mt19937_64 rng(5);
    int nontrivial = 0;
    for (int it = 0; it < 200; ++it) {
        Hom f = favres::testing::random_admissible_hom(rng, params, 1);
        Hom h = favres::testing::random_admissible_hom(rng, params, 1);
        h.target = f.source; // re-root h so the pair composes
        h.source.weight.k = sub_tuples(f.source.weight.k, weight_shift_of(params, h.shift));
        if (!is_admissible(params, h)) continue; // re-rooting may break carrying
        Hom fh = compose(params, f, h);
        CHECK(fh.shift == add_tuples(f.shift, h.shift));
        CHECK(fh.alpha == mul_mod(f.alpha, h.alpha, params.pm));
        CHECK(is_admissible(params, fh)); // closure
        if (!is_zero_map(params, fh.target, fh.alpha, fh.shift)) ++nontrivial;
    }
    CHECK(nontrivial > 10);
    CHECK_THROWS_AS(
        compose(params, Hom{Term{Weight{{3, 3}, 1}, {0, 0}}, Term{Weight{{3, 3}, 1}, {0, 0}}, 1, {0, 0}},
                Hom{Term{Weight{{5, 3}, 1}, {0, 0}}, Term{Weight{{5, 3}, 1}, {0, 0}}, 1, {0, 0}}),
        std::invalid_argument);
}

TEST_CASE("complex validation") {
    Params params = P(3, 2, 1);
    AdmissibleComplex c = sign_square();
    CHECK_NOTHROW(validate_complex(params, c));

    AdmissibleComplex missing = c;
    missing.diffs.pop_back();
    CHECK_THROWS_AS(validate_complex(params, missing), std::invalid_argument);

    AdmissibleComplex bad_index = c;
    bad_index.diffs[0][0].row = 5;
    CHECK_THROWS_AS(validate_complex(params, bad_index), std::invalid_argument);

    AdmissibleComplex bad_weight = c;
    bad_weight.terms[1][0].weight.k = {3, 3};
    CHECK_THROWS_AS(validate_complex(params, bad_weight), std::invalid_argument);
}

TEST_CASE("d squared vanishes via the sign, groupwise") {
    Params params = P(3, 2, 1);
    CHECK(check_d_squared(params, sign_square()).empty());

    AdmissibleComplex broken = sign_square();
    broken.diffs[1][1].alpha = 1; // kill the cancellation
    auto v = check_d_squared(params, broken);
    REQUIRE(v.size() == 1);
    CHECK(v[0].degree == 0);
    CHECK(v[0].row == 0);
    CHECK(v[0].col == 0);
    CHECK(v[0].shift == Tuple{2, 2});
}

TEST_CASE("stratum-killed composites do not count against d squared") {
    Params params = P(3, 2, 1);
    // shrink C to order (2,2): both composites x^(2,2) die in the target
    AdmissibleComplex c = sign_square(2);
    c.diffs[1][1].alpha = 1; // would violate cancellation if the group were alive
    CHECK(check_d_squared(params, c).empty());

    AdmissibleComplex n = c;
    normalize_zero_entries(params, n);
    CHECK(n.diffs[1].empty()); // both entries into C were already zero maps
    CHECK(n.diffs[0].size() == 2);
}

TEST_CASE("strictifying residual composites appends factoring corrections") {
    // a clean complex is left untouched
    Params params2 = P(3, 2, 1);
    AdmissibleComplex clean = sign_square();
    strictify_d_squared(params2, clean);
    CHECK(clean == sign_square());

    // A -> B -> C with a single live composite: the correction factors through
    // the first leg and cancels the second leg coefficientwise
    Params params = P(3, 1, 1);
    AdmissibleComplex c;
    c.w = 1;
    c.lo = 0;
    c.terms = {{Term{Weight{{1}, 1}, {6}}},
               {Term{Weight{{5}, 1}, {8}}},
               {Term{Weight{{9}, 1}, {6}}}};
    c.diffs = {{{0, 0, 1, {2}}}, {{0, 0, 1, {2}}}};
    REQUIRE(check_d_squared(params, c).size() == 1);
    strictify_d_squared(params, c);
    CHECK(check_d_squared(params, c).empty());
    CHECK_NOTHROW(validate_complex(params, c));
    REQUIRE(c.diffs[1].size() == 2);
    CHECK(c.diffs[1][1] == HomEntry{0, 0, 2, {2}});

    // when the composite's own first leg has a non-invertible coefficient the
    // correction must route through a parallel summand instead
    Params params9 = P(3, 1, 2);
    AdmissibleComplex q;
    q.w = 1;
    q.lo = 0;
    q.terms = {{Term{Weight{{1}, 1}, {6}}},
               {Term{Weight{{13}, 1}, {12}}, Term{Weight{{13}, 1}, {12}}},
               {Term{Weight{{25}, 1}, {18}}}};
    q.diffs = {{{0, 0, 3, {6}}, {1, 0, 1, {6}}}, {{0, 0, 1, {6}}}};
    REQUIRE(check_d_squared(params9, q).size() == 1);
    strictify_d_squared(params9, q);
    CHECK(check_d_squared(params9, q).empty());
    CHECK_NOTHROW(validate_complex(params9, q));
    REQUIRE(q.diffs[1].size() == 2);
    CHECK(q.diffs[1][1] == HomEntry{0, 1, 6, {6}});
}

TEST_CASE("chain map validation and the cone of the identity") {
    Params params = P(3, 2, 1);
    AdmissibleComplex c = sign_square();
    ChainMap id;
    id.source = c;
    id.target = c;
    id.maps.resize(c.terms.size());
    for (size_t d = 0; d < c.terms.size(); ++d)
        for (int i = 0; i < (int)c.terms[d].size(); ++i)
            id.maps[d].push_back({i, i, 1, {0, 0}});
    CHECK_NOTHROW(validate_chain_map(params, id));

    ChainMap bad = id;
    bad.maps[0][0].alpha = 2; // scaled on one degree only: no longer commutes
    CHECK_THROWS_AS(validate_chain_map(params, bad), std::invalid_argument);

    AdmissibleComplex cn = cone(params, id);
    CHECK(cn.lo == c.lo - 1);
    CHECK(cn.terms.size() == c.terms.size() + 1);
    CHECK(check_d_squared(params, cn).empty());
    // the cone of an isomorphism is exact on every strand
    VerificationReport report = verify_exactness(params, cn, {});
    CHECK(report.ok);
    CHECK(report.failed_strands == 0);
}

TEST_CASE("shifting a complex") {
    Params params = P(3, 2, 1);
    AdmissibleComplex c = sign_square();
    AdmissibleComplex s1 = shift_complex(params, c, 1);
    CHECK(s1.lo == -1);
    CHECK(s1.diffs[0][0].alpha == params.pm - 1);
    CHECK(shift_complex(params, shift_complex(params, c, 1), 1) == shift_complex(params, c, 2));
    CHECK(shift_complex(params, s1, -1) == c);
}

TEST_CASE("direct sum stacks blocks") {
    Params params = P(3, 2, 1);
    AdmissibleComplex c = sign_square();
    AdmissibleComplex s = direct_sum(params, c, c);
    CHECK(s.terms[1].size() == 4);
    CHECK(s.diffs[0].size() == 4);
    CHECK_NOTHROW(validate_complex(params, s));
    CHECK(check_d_squared(params, s).empty());
    CHECK(direct_sum(params, c, AdmissibleComplex{1, 0, {}, {}}) == c);
}

TEST_CASE("double complex validation and totalization") {
    Params params = P(3, 2, 1);
    Term a{Weight{{3, 3}, 1}, {0, 0}};
    Term b{Weight{{1, 9}, 1}, {4, 0}};
    Term a2{Weight{{9, 1}, 1}, {0, 4}};
    Term b2{Weight{{7, 7}, 1}, {4, 4}};

    DoubleComplex dc;
    dc.w = 1;
    dc.row_lo = 0;
    dc.col_lo = 0;
    dc.cells = {{{a}, {b}}, {{a2}, {b2}}};
    dc.horiz = {{{{0, 0, 1, {2, 0}}}}, {{{0, 0, 1, {2, 0}}}}};
    dc.vert = {{{{0, 0, 1, {0, 2}}}, {{0, 0, 1, {0, 2}}}}};
    CHECK_NOTHROW(validate_double_complex(params, dc));

    DoubleComplex bad = dc;
    bad.horiz[1][0][0].alpha = 2; // square no longer commutes
    CHECK_THROWS_AS(validate_double_complex(params, bad), std::invalid_argument);

    Totalization tot = total(params, dc);
    REQUIRE(tot.complex.terms.size() == 3);
    CHECK(tot.complex.terms[1].size() == 2);
    CHECK(check_d_squared(params, tot.complex).empty());
    REQUIRE(tot.placements.size() == 4);
    for (const TotalIndex& pl : tot.placements) CHECK(pl.degree == pl.row + pl.col);
}

TEST_CASE("splitting off the top dimension reassembles the complex") {
    Params params = P(3, 2, 1);
    AdmissibleComplex c = sign_square();
    DimensionSplit split = split_by_dimension(params, c, 2);
    REQUIRE(split.classes.size() == 1);
    CHECK(split.classes[0].first == Axes{0, 1});
    CHECK(split.rest.lo == c.lo - 1);
    CHECK_NOTHROW(validate_chain_map(params, split.connecting));

    AdmissibleComplex back = shift_complex(params, cone(params, split.connecting), -1);
    CHECK(back.lo == c.lo);
    check_term_multisets(back, c);
    CHECK(check_d_squared(params, back).empty());
    // single class in front: the reassembly is literally the original
    AdmissibleComplex trimmed = back;
    while (!trimmed.terms.empty() && trimmed.terms.back().empty()) {
        trimmed.terms.pop_back();
        if (!trimmed.diffs.empty()) trimmed.diffs.pop_back();
    }
    CHECK(trimmed == c);
}
