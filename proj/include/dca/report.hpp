#pragma once

#include <json.hpp>
#include <string>

#include "dca/free_dga.hpp"
#include "dca/pipeline.hpp"

namespace dca {

using Json = nlohmann::ordered_json;

// Reporting helpers shared by the command-line tool.  Everything renders
// from std::map iteration order, so output is byte-stable for equal inputs.

Json cohomology_json(const CohomologyTable& H);
Json block_dims_json(const BlockComplex& cx);
Json presentation_json(const FreeDgaPresentation& F);
Json algebra_dims_json(const TruncatedAlgebra& A);

std::string presentation_text(const FreeDgaPresentation& F);

// Plain-text rendering of a report tree: scalars as "key: value" lines,
// arrays of scalars inline, arrays of objects as one "- k=v ..." line each.
std::string render_text(const Json& j);

}  // namespace dca
