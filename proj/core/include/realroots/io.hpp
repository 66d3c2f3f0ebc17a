#pragma once

// JSON interchange for systems, certificates and count results.
//
// System format:
//   {"n": 2, "degrees": [2, 3],
//    "polynomials": [{"terms": [{"exponents": [2, 0, 0], "coeff": 1.0}, ...]}, ...]}
// With "affine": true the exponent vectors have n entries and the polynomials
// need not be homogeneous; "degrees" is then optional.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "realroots/certification.hpp"
#include "realroots/poly.hpp"
#include "realroots/root_count.hpp"

namespace realroots::io {

using Json = nlohmann::json;

/// Throws ParseError on malformed or inconsistent input.
PolynomialSystem system_from_json(const Json& j);
std::vector<AffinePolynomial> affine_system_from_json(const Json& j);
bool is_affine_json(const Json& j);
/// Parses text, then system_from_json.
Json parse_json(const std::string& text);

Json to_json(const PolynomialSystem& f);
Json to_json(const SpherePoint& x);
Json to_json(const Certificate& c);
Json to_json(const RefinedZero& z);
/// {count, zeros, final_eta, iterations, evaluations, stopped, predicted_threshold}
/// plus "history" when `with_stats`.
Json to_json(const CountResult& r, bool with_stats = false);

/// Non-finite numbers become the strings "inf", "-inf" or "nan", which JSON
/// cannot carry as numbers.
Json number(double v);

}  // namespace realroots::io
