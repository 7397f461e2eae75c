#include "chambers/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace chambers {

std::string hex_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_float(const std::string& text) {
  if (text.empty()) throw PreconditionError("empty number");
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw PreconditionError("not a finite number: '" + text + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json decimal_strings(const std::vector<BigInt>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

Json decimal_strings(const std::vector<std::uint64_t>& values) {
  Json out = Json::array();
  for (auto v : values) out.push_back(std::to_string(v));
  return out;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json hex_vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(hex_float(v(i)));
  return out;
}

Json polynomial_json(const IntegerPolynomial& p) {
  Json out = Json::array();
  for (const auto& s : p.to_decimal_strings()) out.push_back(s);
  return out;
}

Json orbit_report_json(const OrbitReport& r, bool with_timing) {
  Json j;
  j["group"] = r.group;
  j["base_point"] = vector_json(r.base_point);
  j["base_point_hex"] = hex_vector_json(r.base_point);
  if (r.weights) {
    j["weights"] = vector_json(*r.weights);
    j["weights_hex"] = hex_vector_json(*r.weights);
  } else {
    j["weights"] = nullptr;
  }
  j["counts"] = decimal_strings(r.counts);
  j["chi_abs"] = decimal_strings(r.chi_abs);
  j["orbit_size"] = std::to_string(r.orbit_size);
  j["verified"] = r.verified;
  j["resamples"] = r.resamples;
  j["warnings"] = r.warnings;
  if (with_timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

Json volumes_json(const VolumeEstimate& est, const VolumeComparison& cmp) {
  Json j;
  j["samples"] = std::to_string(est.samples);
  j["seed"] = std::to_string(est.seed);
  j["rejected"] = std::to_string(est.rejected);
  j["counts"] = decimal_strings(est.counts);
  Json rows = Json::array();
  for (std::size_t k = 0; k < est.nu_hat.size(); ++k) {
    Json row;
    row["k"] = k;
    row["nu_hat"] = est.nu_hat[k];
    row["stderr"] = est.std_error[k];
    row["target"] = cmp.target[k];
    // infinite z only for a nonzero difference at zero variance
    row["z"] = std::isfinite(cmp.z[k]) ? Json(cmp.z[k]) : Json(format_double(cmp.z[k]));
    row["flagged"] = static_cast<bool>(cmp.flagged[k]);
    rows.push_back(row);
  }
  j["volumes"] = rows;
  j["threshold"] = cmp.threshold;
  j["flagged"] = cmp.any_flagged();
  return j;
}

Json envelope(Json config, Json results, std::optional<double> elapsed_seconds) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["config"] = std::move(config);
  j["results"] = std::move(results);
  if (elapsed_seconds) {
    j["timing"] = Json{{"elapsed_seconds", *elapsed_seconds}};
  } else {
    j["timing"] = nullptr;
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string volumes_csv(const VolumeEstimate& est, const VolumeComparison& cmp) {
  std::ostringstream out;
  out << "k,nu_hat,stderr,target,z\n";
  for (std::size_t k = 0; k < est.nu_hat.size(); ++k) {
    out << k << ',' << format_double(est.nu_hat[k]) << ',' << format_double(est.std_error[k]) << ','
        << format_double(cmp.target[k]) << ',' << format_double(cmp.z[k]) << '\n';
  }
  return out.str();
}

std::string text_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      out << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace chambers
