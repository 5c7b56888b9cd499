#include "favres/serialization.hpp"

#include <fstream>

namespace favres {

namespace {

const Json& need(const Json& j, const char* key) {
    if (!j.is_object()) throw ParseError("expected an object with key '" + std::string(key) + "'");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError("missing key '" + std::string(key) + "'");
    return *it;
}

Int to_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<Int>();
}

bool to_bool(const Json& j, const char* what) {
    if (!j.is_boolean()) throw ParseError(std::string(what) + " must be a boolean");
    return j.get<bool>();
}

std::string to_str(const Json& j, const char* what) {
    if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

Tuple to_tuple(const Json& j, const char* what, int size = -1) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    Tuple out;
    for (const Json& x : j) out.push_back(to_int(x, what));
    if (size >= 0 && (int)out.size() != size)
        throw ParseError(std::string(what) + " has the wrong length");
    return out;
}

std::vector<int> to_ints(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const Json& x : j) out.push_back((int)to_int(x, what));
    return out;
}

Json hom_entry_to_json(const HomEntry& e) {
    Json j;
    j["row"] = e.row;
    j["col"] = e.col;
    j["alpha"] = e.alpha;
    j["shift"] = e.shift;
    return j;
}

HomEntry hom_entry_from_json(const Json& j, int g) {
    HomEntry e;
    e.row = (int)to_int(need(j, "row"), "row");
    e.col = (int)to_int(need(j, "col"), "col");
    e.alpha = to_int(need(j, "alpha"), "alpha");
    e.shift = to_tuple(need(j, "shift"), "shift", g);
    return e;
}

Json class_plan_to_json(const ClassPlan& c) {
    Json j;
    j["J"] = c.J;
    j["exponents"] = c.exponents;
    j["witness"] = c.witness;
    j["total"] = c.total;
    return j;
}

ClassPlan class_plan_from_json(const Json& j) {
    ClassPlan c;
    c.J = to_ints(need(j, "J"), "J");
    c.exponents = to_tuple(need(j, "exponents"), "exponents");
    c.witness = to_tuple(need(j, "witness"), "witness");
    c.total = to_int(need(j, "total"), "total");
    return c;
}

Json plan_to_json(const IterationPlan& p) {
    Json j;
    j["r"] = p.r;
    j["lower_level"] = p.lower_level;
    Json classes = Json::array();
    for (const ClassPlan& c : p.classes) classes.push_back(class_plan_to_json(c));
    j["classes"] = std::move(classes);
    return j;
}

IterationPlan plan_from_json(const Json& j) {
    IterationPlan p;
    p.r = (int)to_int(need(j, "r"), "r");
    p.lower_level = to_int(need(j, "lower_level"), "lower_level");
    const Json& classes = need(j, "classes");
    if (!classes.is_array()) throw ParseError("classes must be an array");
    for (const Json& c : classes) p.classes.push_back(class_plan_from_json(c));
    return p;
}

} // namespace

Json params_to_json(const Params& params) {
    Json j;
    j["p"] = params.p;
    j["g"] = params.g;
    j["m"] = params.m;
    j["delta_threshold"] = params.delta_threshold;
    return j;
}

Params params_from_json(const Json& j) {
    Int p = to_int(need(j, "p"), "p");
    int g = (int)to_int(need(j, "g"), "g");
    int m = (int)to_int(need(j, "m"), "m");
    Int threshold = to_int(need(j, "delta_threshold"), "delta_threshold");
    return Params(p, g, m, threshold);
}

Json term_to_json(const Term& t) {
    Json j;
    j["k"] = t.weight.k;
    j["M"] = t.orders;
    return j;
}

Term term_from_json(const Json& j, Int w, int g) {
    Term t;
    t.weight.k = to_tuple(need(j, "k"), "k", g);
    t.weight.w = w;
    t.orders = to_tuple(need(j, "M"), "M", g);
    return t;
}

ComplexFile to_complex_file(const Params& params, const FavorableResolutionResult& result) {
    ComplexFile file;
    file.params = params;
    file.complex = result.complex;
    file.augmentation = result.augmentation;
    file.aug_row = result.aug_row;
    ResolutionMetadata meta;
    meta.iterations = result.iterations;
    meta.g1_degenerate = result.g1_degenerate;
    meta.plans = result.plans;
    file.metadata = std::move(meta);
    return file;
}

Json complex_file_to_json(const ComplexFile& file) {
    Json j;
    j["params"] = params_to_json(file.params);
    j["w"] = file.complex.w;
    j["degrees"] = Json::array({file.complex.lo, file.complex.hi()});
    Json terms = Json::array();
    for (const auto& degree : file.complex.terms) {
        Json row = Json::array();
        for (const Term& t : degree) row.push_back(term_to_json(t));
        terms.push_back(std::move(row));
    }
    j["terms"] = std::move(terms);
    Json diffs = Json::array();
    for (const auto& degree : file.complex.diffs) {
        Json row = Json::array();
        for (const HomEntry& e : degree) row.push_back(hom_entry_to_json(e));
        diffs.push_back(std::move(row));
    }
    j["differentials"] = std::move(diffs);
    if (file.augmentation) {
        Json aug;
        aug["source"] = term_to_json(file.augmentation->source);
        aug["row"] = file.aug_row;
        aug["alpha"] = file.augmentation->alpha;
        aug["shift"] = file.augmentation->shift;
        j["augmentation"] = std::move(aug);
    }
    if (file.metadata) {
        Json meta;
        meta["iterations"] = file.metadata->iterations;
        meta["g1_degenerate"] = file.metadata->g1_degenerate;
        Json plans = Json::array();
        for (const IterationPlan& p : file.metadata->plans) plans.push_back(plan_to_json(p));
        meta["plans"] = std::move(plans);
        j["metadata"] = std::move(meta);
    }
    return j;
}

ComplexFile complex_file_from_json(const Json& j) {
    ComplexFile file;
    file.params = params_from_json(need(j, "params"));
    int g = file.params.g;
    Int w = to_int(need(j, "w"), "w");
    Tuple degrees = to_tuple(need(j, "degrees"), "degrees", 2);

    AdmissibleComplex c;
    c.w = w;
    c.lo = (int)degrees[0];
    const Json& terms = need(j, "terms");
    if (!terms.is_array()) throw ParseError("terms must be an array");
    for (const Json& row : terms) {
        if (!row.is_array()) throw ParseError("terms entries must be arrays");
        std::vector<Term> degree;
        for (const Json& t : row) degree.push_back(term_from_json(t, w, g));
        c.terms.push_back(std::move(degree));
    }
    if (degrees[1] - degrees[0] + 1 != (Int)c.terms.size())
        throw ParseError("degrees range does not match the number of term rows");
    const Json& diffs = need(j, "differentials");
    if (!diffs.is_array()) throw ParseError("differentials must be an array");
    for (const Json& row : diffs) {
        if (!row.is_array()) throw ParseError("differentials entries must be arrays");
        std::vector<HomEntry> degree;
        for (const Json& e : row) degree.push_back(hom_entry_from_json(e, g));
        c.diffs.push_back(std::move(degree));
    }
    size_t expected_rows = c.terms.empty() ? 0 : c.terms.size() - 1;
    if (c.diffs.size() != expected_rows)
        throw ParseError("differentials row count does not match the degrees");
    file.complex = std::move(c);

    if (j.contains("augmentation")) {
        const Json& aug = j.at("augmentation");
        int row = (int)to_int(need(aug, "row"), "row");
        if (file.complex.terms.empty() || row < 0 ||
            row >= (int)file.complex.terms[0].size())
            throw ParseError("augmentation row out of range");
        Hom h;
        h.source = term_from_json(need(aug, "source"), w, g);
        h.target = file.complex.terms[0][row];
        h.alpha = to_int(need(aug, "alpha"), "alpha");
        h.shift = to_tuple(need(aug, "shift"), "shift", g);
        file.augmentation = std::move(h);
        file.aug_row = row;
    }
    if (j.contains("metadata")) {
        const Json& meta = j.at("metadata");
        ResolutionMetadata md;
        md.iterations = (int)to_int(need(meta, "iterations"), "iterations");
        md.g1_degenerate = to_bool(need(meta, "g1_degenerate"), "g1_degenerate");
        const Json& plans = need(meta, "plans");
        if (!plans.is_array()) throw ParseError("plans must be an array");
        for (const Json& p : plans) md.plans.push_back(plan_from_json(p));
        file.metadata = std::move(md);
    }
    return file;
}

Json report_to_json(const VerificationReport& report) {
    Json j;
    j["ok"] = report.ok;
    j["strands_checked"] = report.strands_checked;
    j["cells"] = report.cells;
    j["failed_strands"] = report.failed_strands;
    j["box"] = report.box;
    Json failures = Json::array();
    for (const StrandFailure& f : report.failures) {
        Json fj;
        fj["multidegree"] = f.multidegree;
        fj["degree"] = f.degree;
        fj["divisors"] = f.divisors;
        failures.push_back(std::move(fj));
    }
    j["failures"] = std::move(failures);
    return j;
}

VerificationReport report_from_json(const Json& j) {
    VerificationReport report;
    report.ok = to_bool(need(j, "ok"), "ok");
    report.strands_checked = to_int(need(j, "strands_checked"), "strands_checked");
    report.cells = to_int(need(j, "cells"), "cells");
    report.failed_strands = to_int(need(j, "failed_strands"), "failed_strands");
    report.box = to_tuple(need(j, "box"), "box");
    const Json& failures = need(j, "failures");
    if (!failures.is_array()) throw ParseError("failures must be an array");
    for (const Json& f : failures) {
        StrandFailure sf;
        sf.multidegree = to_tuple(need(f, "multidegree"), "multidegree");
        sf.degree = (int)to_int(need(f, "degree"), "degree");
        const std::vector<int> div = to_ints(need(f, "divisors"), "divisors");
        sf.divisors = div;
        report.failures.push_back(std::move(sf));
    }
    return report;
}

Json group_file_to_json(const GroupFile& file) {
    Json j;
    j["elements"] = file.group.names;
    j["table"] = file.group.table;
    if (!file.labels.empty()) j["labels"] = file.labels;
    return j;
}

GroupFile group_file_from_json(const Json& j) {
    const Json& elements = need(j, "elements");
    if (!elements.is_array()) throw ParseError("elements must be an array");
    std::vector<std::string> names;
    for (const Json& e : elements) names.push_back(to_str(e, "elements"));
    const Json& table_json = need(j, "table");
    if (!table_json.is_array()) throw ParseError("table must be an array");
    std::vector<std::vector<int>> table;
    for (const Json& row : table_json) table.push_back(to_ints(row, "table row"));
    GroupFile file;
    try {
        file.group = make_group(std::move(table), std::move(names));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid group table: ") + e.what());
    }
    if (j.contains("labels")) {
        const Json& labels = j.at("labels");
        if (!labels.is_array()) throw ParseError("labels must be an array");
        for (const Json& l : labels) file.labels.push_back(to_str(l, "labels"));
        if ((int)file.labels.size() != file.group.order)
            throw ParseError("labels must have one entry per element");
    }
    return file;
}

Json verdict_to_json(const PseudoRepVerdict& v) {
    Json j;
    j["status"] = status_name(v.status);
    j["sampled"] = v.sampled;
    j["witness"] = v.witness;
    j["message"] = v.message;
    return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

Json parse_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_json_text(text);
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << dump_json(j);
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace favres
