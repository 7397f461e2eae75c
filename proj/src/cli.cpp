#include "chambers/cli.hpp"

#include "chambers/arrangement.hpp"
#include "chambers/coxeter.hpp"
#include "chambers/orbit.hpp"
#include "chambers/parallel.hpp"
#include "chambers/report.hpp"
#include "chambers/volumes.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace chambers {

namespace {

struct Options {
  std::string group;
  std::string format = "text";
  std::string output;
  int threads = 0;
  bool timing = false;
  Tolerances tol;

  std::vector<std::string> checks;
  int points = 1;
  std::uint64_t seed = 0;
  std::string weights = "none";
  bool allow_e8 = false;
  int max_resamples = 100;
  std::string base_point;
  std::string weight_vector;
  std::uint64_t samples = 100000;
  bool inequalities = false;
  std::string method = "descent";
};

// Output of one subcommand before it is written out.
struct Outcome {
  int code = kExitOk;
  Json config;
  Json results = Json::array();
  std::string text;
  std::string csv;
};

Json tolerances_json(const Tolerances& tol) {
  return Json{{"lin", tol.lin}, {"sign", tol.sign}, {"dedup", tol.dedup}, {"rank", tol.rank},
              {"generic", tol.generic}};
}

Json base_config(const std::string& command, const Options& o) {
  Json c;
  c["subcommand"] = command;
  c["group"] = o.group;
  c["format"] = o.format;
  c["tolerances"] = tolerances_json(o.tol);
  return c;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

Vector parse_vector(const std::string& text, int n, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_float(item));
  if (static_cast<int>(values.size()) != n) {
    throw PreconditionError(std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
  }
  return Eigen::Map<Vector>(values.data(), n);
}

void require_e8_opt_in(const CoxeterDiagram& d, const Options& o) {
  for (const auto& f : d.factors) {
    if (f.family == Family::E && f.rank == 8 && !o.allow_e8) {
      throw PreconditionError("E8 orbits have 696729600 points; pass --allow-e8 to run anyway");
    }
  }
}

std::vector<std::string> abs_strings(const IntegerPolynomial& p, int n) {
  std::vector<std::string> out;
  for (int k = 0; k <= n; ++k) out.push_back(BigInt(abs(p.coeff(k))).str());
  return out;
}

Outcome cmd_charpoly(const Options& o) {
  Outcome res;
  res.config = base_config("charpoly", o);
  res.config["checks"] = o.checks;

  const CoxeterDiagram diagram = parse_group_spec(o.group);
  const int n = ambient_dimension(diagram);
  const IntegerPolynomial chi = char_poly_exponents(diagram);

  Json entry;
  entry["group"] = diagram.label;
  entry["ambient_dim"] = n;
  entry["rank"] = diagram.rank();
  entry["exponents"] = exponents(diagram);
  entry["group_order"] = std::to_string(group_order(diagram));
  entry["chi"] = polynomial_json(chi);
  entry["chi_text"] = chi.to_string();
  entry["poincare"] = polynomial_json(poincare_polynomial(chi, diagram.rank()));

  std::ostringstream text;
  text << chi.to_string() << '\n';
  std::vector<std::vector<std::string>> csv_rows{{"k", "exponents"}};
  for (int k = 0; k <= n; ++k) csv_rows.push_back({std::to_string(k), chi.coeff(k).str()});

  Json checks = Json::object();
  for (const auto& method : o.checks) {
    std::optional<IntegerPolynomial> other;
    if (method == "moebius") {
      const RootSystem rs = build_root_system(diagram, o.tol);
      other = char_poly_moebius(intersection_lattice(rs.positive_roots, rs.ambient_dim, o.tol));
    } else {
      other = char_poly_finite_field(diagram);
      if (!other) {
        throw PreconditionError("finite-field check needs a crystallographic group with at most 4 coordinates");
      }
    }
    const bool agree = *other == chi;
    if (!agree) res.code = kExitDisagreement;
    checks[method] = Json{{"chi", polynomial_json(*other)}, {"agree", agree}};
    text << method << ": " << (agree ? "agree" : "DISAGREE") << '\n';
    if (!agree) {
      text << "  " << method << ": " << other->to_string() << '\n';
      for (int k = 0; k <= std::max(n, other->degree()); ++k) {
        if (other->coeff(k) != chi.coeff(k)) {
          text << "  t^" << k << ": exponents " << chi.coeff(k).str() << ", " << method << ' '
               << other->coeff(k).str() << '\n';
        }
      }
    }
    csv_rows[0].push_back(method);
    for (int k = 0; k <= n; ++k) csv_rows[k + 1].push_back(other->coeff(k).str());
  }
  entry["checks"] = checks;
  res.results.push_back(entry);
  res.text = text.str();
  for (const auto& row : csv_rows) res.csv += join(row, ",") + "\n";
  return res;
}

Outcome cmd_verify(const Options& o, int threads) {
  Outcome res;
  res.config = base_config("verify", o);
  res.config["points"] = o.points;
  res.config["seed"] = std::to_string(o.seed);
  res.config["weights"] = o.weights;
  res.config["max_resamples"] = o.max_resamples;
  if (!o.base_point.empty()) res.config["base_point"] = o.base_point;
  if (!o.weight_vector.empty()) res.config["weight_vector"] = o.weight_vector;

  const CoxeterDiagram diagram = parse_group_spec(o.group);
  require_e8_opt_in(diagram, o);
  const RootSystem rs = build_root_system(diagram, o.tol);
  const int n = rs.ambient_dim;
  const IntegerPolynomial chi = char_poly_exponents(diagram);

  std::vector<OrbitReport> reports;
  if (!o.base_point.empty()) {
    std::optional<Vector> w;
    if (!o.weight_vector.empty()) w = parse_vector(o.weight_vector, n, "--weight-vector");
    reports.push_back(count_projection_dims(rs, parse_vector(o.base_point, n, "--base-point"), w, threads, o.tol));
  } else {
    VerifyOptions vo;
    vo.num_points = o.points;
    vo.weights = o.weights == "random" ? WeightPolicy::random : WeightPolicy::unit;
    vo.seed = o.seed;
    vo.threads = threads;
    vo.max_resamples = o.max_resamples;
    vo.tol = o.tol;
    reports = verify_conjecture(rs, vo);
  }

  bool all_verified = true;
  for (const auto& r : reports) all_verified &= r.verified;
  const bool constant = counts_constant(reports);
  const bool pass = all_verified && constant;
  if (!pass) res.code = kExitVerificationFailure;

  Json entry;
  entry["group"] = diagram.label;
  entry["group_order"] = std::to_string(group_order(diagram));
  entry["chi"] = polynomial_json(chi);
  Json points = Json::array();
  for (const auto& r : reports) points.push_back(orbit_report_json(r, o.timing));
  entry["points"] = points;
  entry["counts_constant"] = constant;
  entry["verified"] = pass;
  res.results.push_back(entry);

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"point"};
  for (int k = 0; k <= n; ++k) header.push_back("b_" + std::to_string(k));
  header.insert(header.end(), {"resamples", "status"});
  rows.push_back(header);
  std::vector<std::string> target{"|a_k|"};
  for (const auto& s : abs_strings(chi, n)) target.push_back(s);
  target.insert(target.end(), {"", ""});
  rows.push_back(target);
  res.csv = "point,k,count,chi_abs\n";
  for (std::size_t p = 0; p < reports.size(); ++p) {
    const auto& r = reports[p];
    std::vector<std::string> row{std::to_string(p)};
    for (int k = 0; k <= n; ++k) {
      row.push_back(std::to_string(r.counts[k]));
      res.csv += std::to_string(p) + "," + std::to_string(k) + "," + std::to_string(r.counts[k]) + "," +
                 r.chi_abs[k].str() + "\n";
    }
    row.push_back(std::to_string(r.resamples));
    row.push_back(r.verified ? "ok" : "MISMATCH");
    rows.push_back(row);
  }

  std::ostringstream text;
  text << diagram.label << "  |W| = " << group_order(diagram) << "  chi = " << chi.to_string() << '\n';
  text << text_table(rows);
  for (const auto& r : reports) {
    for (const auto& w : r.warnings) text << "warning: " << w << '\n';
    if (!r.verified) {
      std::vector<std::string> hex;
      for (Eigen::Index i = 0; i < r.base_point.size(); ++i) hex.push_back(hex_float(r.base_point(i)));
      text << "replay: --base-point " << join(hex, ",");
      if (r.weights) {
        std::vector<std::string> whex;
        for (Eigen::Index i = 0; i < r.weights->size(); ++i) whex.push_back(hex_float((*r.weights)(i)));
        text << " --weight-vector " << join(whex, ",");
      }
      text << '\n';
    }
  }
  if (!constant) text << "counts differ between base points\n";
  text << (pass ? "PASS" : "FAIL") << '\n';
  res.text = text.str();
  return res;
}

Outcome cmd_volumes(const Options& o, int threads) {
  Outcome res;
  res.config = base_config("volumes", o);
  res.config["samples"] = std::to_string(o.samples);
  res.config["seed"] = std::to_string(o.seed);

  const CoxeterDiagram diagram = parse_group_spec(o.group);
  const RootSystem rs = build_root_system(diagram, o.tol);
  const Chamber<double> chamber(rs, o.tol.sign);
  const IntegerPolynomial chi = char_poly_exponents(diagram);
  const VolumeEstimate est = estimate_volumes(chamber, o.samples, o.seed, threads);
  const VolumeComparison cmp = compare_volumes(est, chi, BigInt(group_order(diagram)));
  if (cmp.any_flagged()) res.code = kExitStatisticalFlag;

  Json entry = volumes_json(est, cmp);
  entry["group"] = diagram.label;
  entry["group_order"] = std::to_string(group_order(diagram));
  entry["chi"] = polynomial_json(chi);
  res.results.push_back(entry);
  res.csv = volumes_csv(est, cmp);

  std::vector<std::vector<std::string>> rows{{"k", "nu_hat", "stderr", "target", "z", "flag"}};
  for (std::size_t k = 0; k < est.nu_hat.size(); ++k) {
    char buf[4][32];
    std::snprintf(buf[0], sizeof buf[0], "%.6f", est.nu_hat[k]);
    std::snprintf(buf[1], sizeof buf[1], "%.6f", est.std_error[k]);
    std::snprintf(buf[2], sizeof buf[2], "%.6f", cmp.target[k]);
    std::snprintf(buf[3], sizeof buf[3], "%.3f", cmp.z[k]);
    rows.push_back({std::to_string(k), buf[0], buf[1], buf[2], buf[3], cmp.flagged[k] ? "*" : ""});
  }
  std::ostringstream text;
  text << diagram.label << "  N = " << est.samples << "  seed = " << est.seed << "  rejected = " << est.rejected
       << '\n'
       << text_table(rows) << (cmp.any_flagged() ? "FLAGGED" : "OK") << '\n';
  res.text = text.str();
  return res;
}

Outcome cmd_faces(const Options& o) {
  Outcome res;
  res.config = base_config("faces", o);
  res.config["inequalities"] = o.inequalities;

  const CoxeterDiagram diagram = parse_group_spec(o.group);
  const RootSystem rs = build_root_system(diagram, o.tol);
  const Chamber<double> chamber(rs, o.tol.sign);
  const int d = rs.rank();
  if (d > 12) throw PreconditionError("faces lists 2^d chambers; rank above 12 is refused");

  Json faces = Json::array();
  std::vector<std::vector<std::string>> rows{{"K", "dim", "generators"}};
  res.csv = "K,dim,generator,kind,coordinates\n";
  for (std::uint32_t mask : chamber.hamming_order()) {
    const FaceIndex face = make_face(mask, rs.ambient_dim);
    Matrix gens(rs.ambient_dim, d);
    std::vector<std::string> kinds;
    Json gen_json = Json::array();
    std::vector<std::string> gen_text;
    for (int i = 0; i < d; ++i) {
      const bool neg = face.contains(i);
      gens.col(i) = neg ? Vector(-rs.simple_roots.row(i).transpose()) : Vector(rs.dual_roots.row(i).transpose());
      const std::string name = (neg ? "-r_" : "s_") + std::to_string(i + 1);
      gen_json.push_back(Json{{"name", name}, {"vector", vector_json(gens.col(i))}});
      gen_text.push_back(name);
      std::vector<std::string> coords;
      for (int c = 0; c < rs.ambient_dim; ++c) coords.push_back(format_double(gens(c, i)));
      std::vector<std::string> k1;
      for (int idx : face.indices()) k1.push_back(std::to_string(idx + 1));
      res.csv += "\"" + join(k1, " ") + "\"," + std::to_string(face.dim) + "," + name + "," +
                 (neg ? "root" : "dual") + ",\"" + join(coords, " ") + "\"\n";
    }
    std::vector<std::string> k1;
    for (int idx : face.indices()) k1.push_back(std::to_string(idx + 1));
    Json fj;
    fj["K"] = Json::array();
    for (int idx : face.indices()) fj["K"].push_back(idx + 1);
    fj["dim"] = face.dim;
    fj["generators"] = gen_json;
    if (o.inequalities) {
      // rows a with a . x >= 0 describing the cone inside span{r_i}
      const Matrix ineq = (gens.transpose() * gens).ldlt().solve(gens.transpose());
      Json ij = Json::array();
      for (int i = 0; i < d; ++i) ij.push_back(vector_json(ineq.row(i).transpose()));
      fj["inequalities"] = ij;
    }
    faces.push_back(fj);
    rows.push_back({"{" + join(k1, ",") + "}", std::to_string(face.dim), join(gen_text, " ")});
  }
  Json entry;
  entry["group"] = diagram.label;
  entry["ambient_dim"] = rs.ambient_dim;
  entry["faces"] = faces;
  res.results.push_back(entry);

  std::ostringstream text;
  text << diagram.label << "  " << faces.size() << " projection chambers\n" << text_table(rows);
  res.text = text.str();
  return res;
}

struct OrbitCounter {
  std::uint64_t count = 0;
  void add(const Vector&) { ++count; }
  void merge(const OrbitCounter& other) { count += other.count; }
};

Outcome cmd_orbit_count(const Options& o, int threads) {
  Outcome res;
  res.config = base_config("orbit-count", o);
  res.config["seed"] = std::to_string(o.seed);
  res.config["method"] = o.method;

  const CoxeterDiagram diagram = parse_group_spec(o.group);
  require_e8_opt_in(diagram, o);
  const RootSystem rs = build_root_system(diagram, o.tol);
  CounterRng rng(o.seed, {0});
  const ChamberPoint point = sample_chamber_point(rs, rng, o.tol);

  std::uint64_t visits = 0;
  if (o.method == "bfs") {
    visits = orbit_traverse_bfs(rs, point.coords, [](const Vector&) {}, o.tol);
  } else if (o.method == "signed") {
    const auto kind = signed_permutation_kind(diagram);
    if (!kind) throw PreconditionError("signed-permutation enumeration needs an irreducible A, B or D group");
    for_each_signed_permutation(rs.ambient_dim, *kind, [&](const SignedPermutation&) { ++visits; });
  } else {
    visits = orbit_reduce(rs, point.coords, threads, o.tol, [] { return OrbitCounter{}; }).count;
  }
  const std::uint64_t order = group_order(diagram);
  if (visits != order) res.code = kExitVerificationFailure;

  Json entry;
  entry["group"] = diagram.label;
  entry["base_point"] = vector_json(point.coords);
  entry["base_point_hex"] = hex_vector_json(point.coords);
  entry["orbit_size"] = std::to_string(visits);
  entry["group_order"] = std::to_string(order);
  entry["match"] = visits == order;
  res.results.push_back(entry);
  res.csv = "group,method,orbit_size,group_order\n" + diagram.label + "," + o.method + "," +
            std::to_string(visits) + "," + std::to_string(order) + "\n";
  res.text = diagram.label + "  orbit size " + std::to_string(visits) + "  |W| = " + std::to_string(order) +
             (visits == order ? "  ok\n" : "  MISMATCH\n");
  return res;
}

void add_group(CLI::App* sub, Options& o) {
  sub->add_option("group", o.group, "Group label, e.g. A3, B4, I2:7, H3, A1xB2")->required();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Projection-dimension counts and characteristic polynomials of finite reflection groups",
               "chamber_count"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--output,-o", o.output, "Write results to this file instead of stdout");
  app.add_option("--threads", o.threads,
                 "Worker threads (default: CHAMBER_COUNT_THREADS, then hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", o.timing, "Include elapsed times in JSON output");
  app.add_option("--eps-lin", o.tol.lin, "Tolerance for linear-algebra identities")->check(CLI::PositiveNumber);
  app.add_option("--eps-sign", o.tol.sign, "Tolerance for sign tests")->check(CLI::PositiveNumber);
  app.add_option("--eps-dedup", o.tol.dedup, "Deduplication grid")->check(CLI::PositiveNumber);
  app.add_option("--eps-rank", o.tol.rank, "Subspace membership tolerance")->check(CLI::PositiveNumber);
  app.add_option("--eps-gen", o.tol.generic, "Minimum distance of base points to mirrors")
      ->check(CLI::PositiveNumber);

  auto* charpoly = app.add_subcommand("charpoly", "Characteristic polynomial of the reflection arrangement");
  add_group(charpoly, o);
  charpoly->add_option("--check", o.checks, "Independent method to compare against (repeatable)")
      ->check(CLI::IsMember({"moebius", "finitefield"}));

  auto* verify = app.add_subcommand("verify", "Count projection dimensions over orbits of random points");
  add_group(verify, o);
  verify->add_option("--points", o.points, "Number of base points")->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed, "Random seed")->required();
  verify->add_option("--weights", o.weights, "Weight policy")->check(CLI::IsMember({"none", "random"}));
  verify->add_option("--max-resamples", o.max_resamples, "Resamples per point after a degenerate orbit")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--base-point", o.base_point, "Replay one base point (comma-separated, hex floats allowed)");
  verify->add_option("--weight-vector", o.weight_vector, "Weights for --base-point");
  verify->add_flag("--allow-e8", o.allow_e8, "Permit E8 (several hours)");

  auto* volumes = app.add_subcommand("volumes", "Monte Carlo projection volumes against |a_k|/|W|");
  add_group(volumes, o);
  volumes->add_option("-N,--samples", o.samples, "Number of Gaussian samples")->check(CLI::PositiveNumber);
  volumes->add_option("--seed", o.seed, "Random seed")->required();

  auto* faces = app.add_subcommand("faces", "Generators of the projection chamber of every face");
  add_group(faces, o);
  faces->add_flag("--inequalities", o.inequalities, "Also print an inequality description");

  auto* orbit = app.add_subcommand("orbit-count", "Size of the orbit of a generic point");
  add_group(orbit, o);
  orbit->add_option("--seed", o.seed, "Random seed for the base point")->capture_default_str();
  orbit->add_option("--method", o.method, "Traversal")->check(CLI::IsMember({"descent", "bfs", "signed"}));
  orbit->add_flag("--allow-e8", o.allow_e8, "Permit E8");

  std::vector<char*> argv;
  std::vector<std::string> storage(args);
  if (storage.empty()) storage.push_back("chamber_count");
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  const int threads = resolve_threads(o.threads);
  Outcome res;
  try {
    if (charpoly->parsed()) {
      res = cmd_charpoly(o);
    } else if (verify->parsed()) {
      res = cmd_verify(o, threads);
    } else if (volumes->parsed()) {
      res = cmd_volumes(o, threads);
    } else if (faces->parsed()) {
      res = cmd_faces(o);
    } else {
      res = cmd_orbit_count(o, threads);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfiniteGroupError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailure;
  }

  std::string payload;
  if (o.format == "json") {
    std::optional<double> elapsed;
    if (o.timing) elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    payload = dump(envelope(res.config, res.results, elapsed));
  } else if (o.format == "csv") {
    payload = res.csv;
  } else {
    payload = res.text;
  }

  if (o.output.empty()) {
    out << payload;
  } else {
    std::ofstream file(o.output, std::ios::binary);
    file << payload;
    if (!file) {
      err << "error: cannot write " << o.output << '\n';
      return kExitUsage;
    }
  }
  return res.code;
}

}  // namespace chambers
