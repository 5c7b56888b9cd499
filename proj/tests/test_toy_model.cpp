#include "helpers.hpp"

#include "favres/resolution.hpp"
#include "favres/toy_model.hpp"

#include <algorithm>
#include <utility>

#include <doctest.h>

using namespace favres;
using favres::testing::P;

namespace {

// three axes, one closed direction of order 2, opened along axes 1 and 2
// with exponent 2 each; the augmented realization is the four-term sequence
// driven by multiplication with x1^2 x2^2.
struct Fixture {
    Params params = P(3, 3, 1);
    TermResolution res;
    ToyComplex tc;

    Fixture() {
        Term t{Weight{{3, 3, 3}, 1}, {2, 0, 0}};
        res = koszul_stratum_resolution(params, t, {2, 2});
        Hom aug{res.source, res.bracket.terms[0][0], 1, res.in_shift};
        tc = realize_augmented(params, res.bracket, aug, 0);
    }
};

} // namespace

TEST_CASE("term realization keeps the relation exponents") {
    Params params = P(3, 2, 1);
    CHECK(realize_term(params, Term{Weight{{3, 3}, 1}, {4, 0}}) == MonomialQuotient{{4, 0}});
    CHECK_THROWS_AS(realize_term(params, Term{Weight{{3, 3}, 1}, {3, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(realize_term(params, Term{Weight{{3, 2}, 1}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("windows make every entry multigrading-preserving") {
    Fixture fx;
    const ToyComplex& tc = fx.tc;
    CHECK(tc.lo == -1);
    REQUIRE(tc.modules.size() == 4);
    CHECK(tc.windows[0][0] == Tuple{0, 2, 2});
    for (size_t d = 0; d + 1 < tc.modules.size(); ++d)
        for (const HomEntry& e : tc.diffs[d])
            CHECK(tc.windows[d][e.col] == add_tuples(tc.windows[d + 1][e.row], e.shift));
}

TEST_CASE("strand slices at chosen multidegrees") {
    Fixture fx;
    StrandComplex origin = strand(fx.params, fx.tc, {0, 0, 0});
    CHECK(origin.lo == -1);
    CHECK(origin.dims == std::vector<int>{0, 1, 2, 1});
    REQUIRE(origin.mats.size() == 3);
    CHECK(origin.mats[0].rows == 1);
    CHECK(origin.mats[0].cols == 0);
    Mat expected_mid(2, 1);
    expected_mid.at(0, 0) = 1;
    expected_mid.at(1, 0) = 1;
    CHECK(origin.mats[1] == expected_mid);
    Mat expected_top(1, 2);
    expected_top.at(0, 0) = 2; // alternating restriction sign, reduced mod 3
    expected_top.at(0, 1) = 1;
    CHECK(origin.mats[2] == expected_top);

    StrandComplex deep = strand(fx.params, fx.tc, {0, 2, 2});
    CHECK(deep.dims == std::vector<int>{1, 1, 0, 0});
    Mat one(1, 1);
    one.at(0, 0) = 1;
    CHECK(deep.mats[0] == one);
}

TEST_CASE("default box covers bounds, shifts, windows, and composites") {
    Fixture fx;
    CHECK(default_box(fx.params, fx.tc) == Tuple{3, 3, 3});
}

TEST_CASE("exact complex verifies cleanly; a broken coefficient is caught") {
    Fixture fx;
    VerificationReport good = verify_exactness(fx.params, fx.tc, {});
    CHECK(good.ok);
    CHECK(good.failed_strands == 0);
    CHECK(good.failures.empty());
    CHECK(good.box == Tuple{3, 3, 3});
    CHECK(good.strands_checked == 27);
    CHECK(good.cells <= good.strands_checked);

    ToyComplex broken = fx.tc;
    broken.diffs[0][0].alpha = 0; // kill the augmentation: homology appears, d^2 stays zero
    VerificationReport bad = verify_exactness(fx.params, broken, {});
    CHECK_FALSE(bad.ok);
    CHECK(bad.failed_strands > 0);
    REQUIRE(!bad.failures.empty());
    CHECK(std::is_sorted(bad.failures.begin(), bad.failures.end(),
                         [](const StrandFailure& x, const StrandFailure& y) {
                             return std::make_pair(x.multidegree, x.degree) <
                                    std::make_pair(y.multidegree, y.degree);
                         }));
    for (const StrandFailure& f : bad.failures) {
        CHECK(!f.divisors.empty());
        for (int e : f.divisors) CHECK(e == 1); // field case: all invariant factors are p
    }
}

TEST_CASE("cell grouping, direct walk, and threads agree") {
    Fixture fx;
    ToyComplex broken = fx.tc;
    broken.diffs[0][0].alpha = 0;

    VerifyOptions direct;
    direct.direct = true;
    VerifyOptions two_jobs;
    two_jobs.jobs = 2;

    VerificationReport a = verify_exactness(fx.params, broken, {});
    VerificationReport b = verify_exactness(fx.params, broken, direct);
    VerificationReport c = verify_exactness(fx.params, broken, two_jobs);

    CHECK(a.ok == b.ok);
    CHECK(a.strands_checked == b.strands_checked);
    CHECK(a.failed_strands == b.failed_strands);
    CHECK(a.box == b.box);
    CHECK(b.cells == b.strands_checked); // the direct walk never groups

    CHECK(a.ok == c.ok);
    CHECK(a.strands_checked == c.strands_checked);
    CHECK(a.failed_strands == c.failed_strands);
    CHECK(a.failures == c.failures);
    CHECK(a.cells == c.cells);

    // every multidegree the direct walk flags lies in a flagged cell
    for (const StrandFailure& f : b.failures) {
        bool covered = false;
        for (const StrandFailure& cf : a.failures)
            covered = covered || cf.degree == f.degree;
        CHECK(covered);
    }
}

TEST_CASE("odd-order homology shows the right divisors") {
    Params params = P(3, 1, 2); // Z/9, multiplication by 3 has kernel and cokernel Z/3
    AdmissibleComplex c;
    c.w = 1;
    c.lo = 0;
    Term t{Weight{{1}, 1}, {0}};
    c.terms = {{t}, {t}};
    c.diffs = {{{0, 0, 3, {0}}}};
    validate_complex(params, c);
    CHECK(check_d_squared(params, c).empty());

    VerificationReport report = verify_exactness(params, c, {});
    CHECK_FALSE(report.ok);
    CHECK(report.strands_checked == 1);
    CHECK(report.failed_strands == 1);
    REQUIRE(report.failures.size() == 2);
    CHECK(report.failures[0].degree == 0);
    CHECK(report.failures[0].divisors == std::vector<int>{1});
    CHECK(report.failures[1].degree == 1);
    CHECK(report.failures[1].divisors == std::vector<int>{1});
}

TEST_CASE("box preconditions") {
    Fixture fx;
    VerifyOptions opt;
    opt.box = Tuple{1, 1, 1};
    CHECK_THROWS_AS(verify_exactness(fx.params, fx.tc, opt), BoxTooSmall);
    opt.box = Tuple{5, 5};
    CHECK_THROWS_AS(verify_exactness(fx.params, fx.tc, opt), std::invalid_argument);
    opt.box = Tuple{5, 5, 5};
    VerificationReport report = verify_exactness(fx.params, fx.tc, opt);
    CHECK(report.ok);
    CHECK(report.strands_checked == 125);
}

TEST_CASE("euler characteristic vanishes strandwise on exact complexes") {
    Fixture fx;
    Tuple box = default_box(fx.params, fx.tc);
    Tuple a(3, 0);
    while (true) {
        StrandComplex sc = strand(fx.params, fx.tc, a);
        long long chi = 0;
        for (size_t d = 0; d < sc.dims.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * sc.dims[d];
        CHECK(chi == 0);
        int i = 2;
        while (i >= 0 && a[i] + 1 >= box[i]) a[i--] = 0;
        if (i < 0) break;
        ++a[i];
    }
}

TEST_CASE("quasi-isomorphism onto a single term") {
    Params params = P(3, 2, 1);
    Term t{Weight{{5, 5}, 1}, {2, 2}};
    AdmissibleComplex c;
    c.w = 1;
    c.lo = 0;
    c.terms = {{t}};
    Hom aug{t, t, 1, {0, 0}};
    VerificationReport report = verify_quasi_isomorphism(params, c, aug, 0, {});
    CHECK(report.ok);
}
