#include "helpers.hpp"

#include "favres/serialization.hpp"

#include <doctest.h>

using namespace favres;
using favres::testing::P;

TEST_CASE("parameter round trip") {
    Params params = P(3, 2, 2, 7);
    Json j = params_to_json(params);
    Params back = params_from_json(j);
    CHECK(back.p == 3);
    CHECK(back.g == 2);
    CHECK(back.m == 2);
    CHECK(back.delta_threshold == 7);
    CHECK(dump_json(params_to_json(back)) == dump_json(j));

    CHECK_THROWS_AS(params_from_json(parse_json_text("{\"p\": 3}")), ParseError);
    CHECK_THROWS_AS(params_from_json(parse_json_text("{\"p\": \"x\", \"g\": 1, \"m\": 1, "
                                                     "\"delta_threshold\": 5}")),
                    ParseError);
}

TEST_CASE("complex file round trip with augmentation and metadata") {
    Params params = P(3, 2, 1);
    FavorableResolutionResult res = favorable_resolution(params, Weight{{1, 1}, 1});
    ComplexFile file = to_complex_file(params, res);
    REQUIRE(file.augmentation.has_value());
    REQUIRE(file.metadata.has_value());
    CHECK(file.metadata->iterations == res.iterations);

    Json j = complex_file_to_json(file);
    std::string text = dump_json(j);
    CHECK(text.back() == '\n');

    ComplexFile back = complex_file_from_json(parse_json_text(text));
    CHECK(back.complex == file.complex);
    REQUIRE(back.augmentation.has_value());
    CHECK(*back.augmentation == *file.augmentation);
    CHECK(back.aug_row == file.aug_row);
    REQUIRE(back.metadata.has_value());
    CHECK(back.metadata->iterations == file.metadata->iterations);
    CHECK(back.metadata->g1_degenerate == file.metadata->g1_degenerate);
    REQUIRE(back.metadata->plans.size() == file.metadata->plans.size());
    for (size_t i = 0; i < back.metadata->plans.size(); ++i) {
        CHECK(back.metadata->plans[i].r == file.metadata->plans[i].r);
        CHECK(back.metadata->plans[i].lower_level == file.metadata->plans[i].lower_level);
        REQUIRE(back.metadata->plans[i].classes.size() == file.metadata->plans[i].classes.size());
        for (size_t c = 0; c < back.metadata->plans[i].classes.size(); ++c) {
            CHECK(back.metadata->plans[i].classes[c].J == file.metadata->plans[i].classes[c].J);
            CHECK(back.metadata->plans[i].classes[c].exponents ==
                  file.metadata->plans[i].classes[c].exponents);
        }
    }
    // byte determinism through a full decode/encode cycle
    CHECK(dump_json(complex_file_to_json(back)) == text);
}

TEST_CASE("complex file without optional blocks") {
    Params params = P(3, 2, 1);
    ComplexFile file;
    file.params = params;
    file.complex.w = 1;
    file.complex.lo = 0;
    file.complex.terms = {{Term{Weight{{3, 3}, 1}, {0, 0}}}};
    Json j = complex_file_to_json(file);
    CHECK_FALSE(j.contains("augmentation"));
    CHECK_FALSE(j.contains("metadata"));
    ComplexFile back = complex_file_from_json(j);
    CHECK_FALSE(back.augmentation.has_value());
    CHECK_FALSE(back.metadata.has_value());
    CHECK(back.complex == file.complex);
}

TEST_CASE("malformed complex files raise parse errors") {
    CHECK_THROWS_AS(parse_json_text("{ not json"), ParseError);
    CHECK_THROWS_AS(complex_file_from_json(parse_json_text("[]")), ParseError);
    CHECK_THROWS_AS(complex_file_from_json(parse_json_text("{}")), ParseError);

    Params params = P(3, 2, 1);
    ComplexFile file;
    file.params = params;
    file.complex.w = 1;
    file.complex.terms = {{Term{Weight{{3, 3}, 1}, {0, 0}}}};
    Json good = complex_file_to_json(file);

    Json bad = good;
    bad["degrees"] = Json::array({0});
    CHECK_THROWS_AS(complex_file_from_json(bad), ParseError);

    bad = good;
    bad["terms"][0][0]["k"] = Json::array({3});
    CHECK_THROWS_AS(complex_file_from_json(bad), ParseError);

    bad = good;
    bad["differentials"] = Json::array({Json::array()});
    CHECK_THROWS_AS(complex_file_from_json(bad), ParseError);

    bad = good;
    bad["augmentation"] = Json{{"source", term_to_json(file.complex.terms[0][0])},
                               {"row", 5},
                               {"alpha", 1},
                               {"shift", Json::array({0, 0})}};
    CHECK_THROWS_AS(complex_file_from_json(bad), ParseError);
}

TEST_CASE("report round trip") {
    VerificationReport report;
    report.ok = false;
    report.strands_checked = 27;
    report.cells = 9;
    report.failed_strands = 2;
    report.box = {3, 3};
    report.failures = {{{0, 1}, 1, {1, 2}}, {{2, 0}, 0, {1}}};
    Json j = report_to_json(report);
    VerificationReport back = report_from_json(j);
    CHECK(back.ok == report.ok);
    CHECK(back.strands_checked == report.strands_checked);
    CHECK(back.cells == report.cells);
    CHECK(back.failed_strands == report.failed_strands);
    CHECK(back.box == report.box);
    CHECK(back.failures == report.failures);
    CHECK(dump_json(report_to_json(back)) == dump_json(j));
}

TEST_CASE("group file round trip") {
    GroupFile file;
    file.group = make_dihedral_group(3);
    file.labels = {"e", "r", "r", "s", "s", "s"};
    Json j = group_file_to_json(file);
    GroupFile back = group_file_from_json(j);
    CHECK(back.group.order == 6);
    CHECK(back.group.table == file.group.table);
    CHECK(back.labels == file.labels);
    CHECK(dump_json(group_file_to_json(back)) == dump_json(j));

    Json bad = j;
    bad["labels"] = Json::array({"x"});
    CHECK_THROWS_AS(group_file_from_json(bad), ParseError);

    bad = j;
    bad["table"][0][0] = 99;
    CHECK_THROWS_AS(group_file_from_json(bad), ParseError);

    // labels are optional
    Json plain = j;
    plain.erase("labels");
    CHECK(group_file_from_json(plain).labels.empty());
}

TEST_CASE("verdict serialization uses stable status names") {
    PseudoRepVerdict v;
    v.status = PseudoRepStatus::FailsCondition2;
    v.sampled = true;
    v.witness = {1, 4};
    v.message = "broken";
    Json j = verdict_to_json(v);
    CHECK(j["status"] == "fails-at-condition-2");
    CHECK(j["sampled"] == true);
    CHECK(j["witness"] == Json::array({1, 4}));
    CHECK(j["message"] == "broken");
}

TEST_CASE("file i/o") {
    Json j = Json{{"a", 1}, {"b", Json::array({1, 2})}};
    std::string path = "serialization_io_test.json";
    write_json_file(path, j);
    Json back = parse_json_file(path);
    CHECK(back == j);
    CHECK_THROWS_AS(parse_json_file("does-not-exist.json"), ParseError);
    std::remove(path.c_str());
}
