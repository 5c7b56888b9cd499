#pragma once

#include "favres/pseudo_rep.hpp"
#include "favres/resolution.hpp"
#include "favres/toy_model.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace favres {

// Ordered maps keep serialization byte-deterministic: fixed key order, fixed
// integer formatting.
using Json = nlohmann::ordered_json;

/// Thrown for malformed input files (missing keys, wrong types, bad ranges).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

Json params_to_json(const Params& params);
Params params_from_json(const Json& j);

Json term_to_json(const Term& t);
Term term_from_json(const Json& j, Int w, int g);

/// Resolution metadata carried alongside an emitted complex.
struct ResolutionMetadata {
    int iterations = 0;
    bool g1_degenerate = false;
    std::vector<IterationPlan> plans;
};

/// On-disk form of a complex: parameters, the complex itself, and optionally
/// the augmentation edge plus build metadata.
struct ComplexFile {
    Params params;
    AdmissibleComplex complex;
    std::optional<Hom> augmentation;
    int aug_row = 0;
    std::optional<ResolutionMetadata> metadata;
};

ComplexFile to_complex_file(const Params& params, const FavorableResolutionResult& result);
Json complex_file_to_json(const ComplexFile& file);
ComplexFile complex_file_from_json(const Json& j);

Json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const Json& j);

/// Group table plus optional per-element class labels (for eigenvalue tables).
struct GroupFile {
    FiniteGroup group;
    std::vector<std::string> labels;
};

Json group_file_to_json(const GroupFile& file);
GroupFile group_file_from_json(const Json& j);

Json verdict_to_json(const PseudoRepVerdict& v);

/// Canonical text form: 2-space indent, trailing newline.
std::string dump_json(const Json& j);

Json parse_json_text(const std::string& text);
Json parse_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace favres
