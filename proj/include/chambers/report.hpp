#pragma once

#include "chambers/orbit.hpp"
#include "chambers/polynomial.hpp"
#include "chambers/volumes.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace chambers {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

// C99 hexadecimal float, exact for replay (e.g. 0x1.8p+1).
std::string hex_float(double v);
// Parses decimal or hexadecimal float text; throws PreconditionError.
double parse_float(const std::string& text);

Json decimal_strings(const std::vector<BigInt>& values);
Json decimal_strings(const std::vector<std::uint64_t>& values);
Json vector_json(const Vector& v);
Json hex_vector_json(const Vector& v);

Json polynomial_json(const IntegerPolynomial& p);
// Per-point record. Elapsed time is included only when with_timing is set so
// that reruns compare byte for byte.
Json orbit_report_json(const OrbitReport& r, bool with_timing);
Json volumes_json(const VolumeEstimate& est, const VolumeComparison& cmp);

// {tool_version, config, results, timing}
Json envelope(Json config, Json results, std::optional<double> elapsed_seconds);

// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);

// Columns k, nu_hat, stderr, target, z.
std::string volumes_csv(const VolumeEstimate& est, const VolumeComparison& cmp);

// Fixed-width text table; the first row is the header.
std::string text_table(const std::vector<std::vector<std::string>>& rows);

std::string format_double(double v);

}  // namespace chambers
