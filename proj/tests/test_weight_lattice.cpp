#include "helpers.hpp"

#include <doctest.h>

#include <numeric>

using namespace favres;
using favres::testing::P;

TEST_CASE("parity and regularity") {
    CHECK(is_paritious(Weight{{3, 5}, 1}));
    CHECK(is_paritious(Weight{{-3, 5}, 1}));
    CHECK_FALSE(is_paritious(Weight{{2, 5}, 1}));
    CHECK(is_paritious(Weight{{4, 6}, 0}));
    CHECK(is_regular(Weight{{2, 2}, 0}));
    CHECK_FALSE(is_regular(Weight{{1, 5}, 1}));
}

TEST_CASE("basis shift vectors, cyclic indexing") {
    Params params = P(3, 2, 1);
    CHECK(shift_p(params, 0) == Tuple{-1, 3});
    CHECK(shift_p(params, 1) == Tuple{3, -1});
    CHECK(shift_q(params, 0) == Tuple{1, 3});
    CHECK(shift_q(params, 1) == Tuple{3, 1});
}

TEST_CASE("weight shift of an orders tuple") {
    Params params = P(3, 2, 1);
    CHECK(weight_shift_of(params, {2, 0}) == Tuple{-2, 6});
    CHECK(q_shift_of(params, {2, 0}) == Tuple{2, 6});

    // multiplying by every axis section once raises each component by p - 1
    Params p3 = P(3, 3, 1);
    CHECK(weight_shift_of(p3, {1, 1, 1}) == Tuple{2, 2, 2});
    Params p2 = P(2, 3, 1);
    CHECK(weight_shift_of(p2, {1, 1, 1}) == Tuple{1, 1, 1});
}

TEST_CASE("weight shift is additive and injective") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        int g = 1 + (int)(rng() % 4);
        Params params = P(rng() % 2 ? 2 : 3, g, 1 + (int)(rng() % 2));
        Tuple M(g), N(g);
        for (int i = 0; i < g; ++i) {
            M[i] = (Int)(rng() % 9) - 4;
            N[i] = (Int)(rng() % 9) - 4;
        }
        CHECK(weight_shift_of(params, add_tuples(M, N)) ==
              add_tuples(weight_shift_of(params, M), weight_shift_of(params, N)));
        if (M != N) CHECK(weight_shift_of(params, M) != weight_shift_of(params, N));
        CHECK(q_shift_of(params, add_tuples(M, N)) ==
              add_tuples(q_shift_of(params, M), q_shift_of(params, N)));
    }
}

TEST_CASE("cone membership with threshold") {
    Params params = P(3, 2, 1, 5);
    CHECK(in_delta(params, Weight{{5, 7}, 1}));
    CHECK_FALSE(in_delta(params, Weight{{3, 7}, 1}));
    CHECK_FALSE(in_delta(params, Weight{{5, 6}, 1})); // parity fails
}

TEST_CASE("robust cone condition") {
    Params params = P(3, 2, 1, 5);
    // radius = p * #J * max(M) = 3 * 1 * 2 = 6
    CHECK_FALSE(star_condition(params, Weight{{11, 9}, 1}, {2, 0}, {1}));
    CHECK(star_condition(params, Weight{{13, 11}, 1}, {2, 0}, {1}));
    CHECK_FALSE(star_condition(params, Weight{{13, 10}, 1}, {2, 0}, {1})); // parity
    CHECK_FALSE(star_condition(params, Weight{{13, 1}, 1}, {2, 0}, {1}));  // regularity
    // empty J: radius 0, reduces to the plain threshold
    CHECK(star_condition(params, Weight{{5, 5}, 1}, {2, 2}, {}));
}

TEST_CASE("diagonal cylinder membership is exact") {
    Params params = P(3, 2, 1);
    // a = (4,6): dist^2 to the diagonal = 2, projection length^2 = 50
    CHECK(cylinder_membership(params, {4, 6}, 0, Rational64(3, 1), Rational64(49, 1)));
    CHECK_FALSE(cylinder_membership(params, {4, 6}, 0, Rational64(2, 1), Rational64(49, 1)));
    CHECK_FALSE(cylinder_membership(params, {4, 6}, 0, Rational64(3, 1), Rational64(50, 1)));
    CHECK(cylinder_membership(params, {4, 6}, 0, Rational64(9, 4), Rational64(199, 4)));
    CHECK_FALSE(cylinder_membership(params, {4, 6}, 1, Rational64(3, 1), Rational64(49, 1)));
    CHECK_FALSE(cylinder_membership(params, {4, -6}, 0, Rational64(3, 1), Rational64(49, 1)));
}

TEST_CASE("favorable exponent search: smallest total wins") {
    Params params = P(3, 1, 1, 5);
    FavorableExponents fe = make_favorable_exponents(params, {0}, {0}, {Weight{{9}, 1}});
    CHECK(fe.n_on_J == Tuple{2});
    CHECK(fe.n_off_J.empty());
    CHECK(fe.total == 2);
}

TEST_CASE("favorable exponent search: ascending total, lexicographic ties") {
    Params params = P(3, 2, 1, 7);
    FavorableExponents fe = make_favorable_exponents(params, {0, 1}, {0, 0}, {Weight{{1, 1}, 1}});
    // totals 4 and 6 fail ((2,2) -> (5,5); (2,4)/(4,2) leave a small component);
    // at total 8 the lex walk tries (2,6) before accepting (4,4)
    CHECK(fe.n_on_J == Tuple{4, 4});
    CHECK(fe.total == 8);

    // accepted exponents certify the robust cone condition for every weight
    Tuple shift(params.g, 0);
    for (int j = 0; j < params.g; ++j)
        for (int c = 0; c < params.g; ++c) shift[c] += fe.n_on_J[j] * shift_p(params, j)[c];
    CHECK(star_condition(params, Weight{add_tuples({1, 1}, shift), 1}, {0, 0}, {0, 1}));
}

TEST_CASE("favorable exponent search: off-support axes twist outward") {
    Params params = P(3, 2, 1, 5);
    // J = {1}, M = (2,0): axis 0 exponents start at M_0 + 2*step = 6
    FavorableExponents fe = make_favorable_exponents(params, {1}, {2, 0}, {Weight{{3, 3}, 1}});
    REQUIRE(fe.n_off_J.size() == 1);
    REQUIRE(fe.n_on_J.size() == 1);
    CHECK(fe.n_off_J[0] >= 6);
    Tuple shift(params.g, 0);
    Tuple n_full = {fe.n_off_J[0], fe.n_on_J[0]};
    for (int c = 0; c < params.g; ++c) {
        shift[c] += n_full[0] * shift_q(params, 0)[c];
        shift[c] += n_full[1] * shift_p(params, 1)[c];
    }
    CHECK(star_condition(params, Weight{add_tuples({3, 3}, shift), 1}, {2, 0}, {1}));
}

TEST_CASE("favorable exponent search rejects malformed input") {
    Params params = P(3, 2, 1);
    CHECK_THROWS_AS(make_favorable_exponents(params, {0, 5}, {0, 0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_favorable_exponents(params, {0}, {0, 3}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_favorable_exponents(params, {0}, {0, 0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_favorable_exponents(params, {0, 1}, {0, 0}, {Weight{{2, 1}, 1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_favorable_exponents(params, {0, 1}, {0, 0},
                                             {Weight{{1, 1}, 1}, Weight{{2, 2}, 0}}),
                    std::invalid_argument);
}

TEST_CASE("search budget grows with the inputs") {
    Params params = P(3, 2, 1, 5);
    CHECK(search_budget(params, 0, 1) > 0);
    CHECK(search_budget(params, 10, 1) > search_budget(params, 0, 1));
    CHECK(search_budget(params, 0, 50) > search_budget(params, 0, 1));
}
