#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gramlocus/experiments.hpp"
#include "gramlocus/flatten.hpp"
#include "gramlocus/hosvd.hpp"
#include "gramlocus/locus.hpp"
#include "gramlocus/sos.hpp"
#include "gramlocus/tensor.hpp"
#include "gramlocus/tri_invariants.hpp"

namespace gramlocus {

using Json = nlohmann::json;

/// Parses text as JSON; syntax errors become ValidationError.
Json parse_json(const std::string& text);

// Tensor format: {"dims": [2, 2, 2], "entries": [...]}, entries in layout
// order. "dims" may be omitted for binary tensors.
Json to_json(const BinaryTensor& tensor);
Json to_json(const GeneralTensor& tensor);
GeneralTensor general_tensor_from_json(const Json& j);
BinaryTensor binary_tensor_from_json(const Json& j);

// Certificate format: {"n", "pivot" (1-based), "terms": [{"coeff": "p/q",
// "form": [{"sign": +-1, "i": [bits], "j": [bits]}]}]}.
Json to_json(const SosCertificate& cert);
SosCertificate certificate_from_json(const Json& j);

Json to_json(const GramTuple& tuple);
Json to_json(std::span<const SingularPair> pairs);
Json to_json(const Membership& m);
Json to_json(const InvariantVector& v);
Json to_json(const FuzzReport& report);
Json to_json(const ExamplesReport& report);

/// Comma-separated reals, e.g. "0.25,0,0".
std::vector<double> parse_number_list(const std::string& text);

/// Header "d1,d2,d3" or "s1,s2,s3", then one point per line with 17
/// significant digits. Sigma columns are sigma_max at t = 1.
void write_surface_csv(std::ostream& out, std::span<const SurfacePoint> points, SurfaceCoords coords);

}  // namespace gramlocus
