#include "chambers/cli.hpp"
#include "chambers/report.hpp"

#include <doctest.h>

#include <sstream>

using namespace chambers;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "chamber_count");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("charpoly text and JSON") {
  const auto t = run({"charpoly", "A3"});
  CHECK(t.code == kExitOk);
  CHECK(t.out.rfind("t^4 - 6t^3 + 11t^2 - 6t", 0) == 0);

  const auto j = run({"charpoly", "H3", "--check", "moebius", "--format", "json"});
  CHECK(j.code == kExitOk);
  const auto doc = Json::parse(j.out);
  CHECK(doc["tool_version"] == "1.0.0");
  CHECK(doc["timing"].is_null());
  CHECK(doc["results"][0]["chi"] == Json::parse(R"(["-45","59","-15","1"])"));
}

TEST_CASE("verify reports and replays") {
  const auto r = run({"verify", "B3", "--points", "2", "--seed", "7", "--weights", "random"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("PASS") != std::string::npos);

  const auto j = run({"verify", "A3", "--seed", "1", "--format", "json"});
  const auto doc = Json::parse(j.out);
  const auto& p = doc["results"][0]["points"][0];
  const std::string bp = p["base_point_hex"][0].get<std::string>() + "," + p["base_point_hex"][1].get<std::string>() +
                         "," + p["base_point_hex"][2].get<std::string>() + "," +
                         p["base_point_hex"][3].get<std::string>();
  const auto replay = run({"verify", "A3", "--seed", "1", "--base-point", bp, "--format", "json"});
  CHECK(replay.code == kExitOk);
  CHECK(Json::parse(replay.out)["results"][0]["points"][0]["counts"] == p["counts"]);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"charpoly", "D2"}).code == kExitUsage);
  CHECK(run({"verify", "A2"}).code == kExitUsage);  // --seed is required
  CHECK(run({"verify", "E8", "--seed", "1"}).code == kExitUsage);
  CHECK(run({"verify", "A2", "--seed", "1", "--base-point", "1,1,2"}).code == kExitVerificationFailure);
  CHECK(run({"charpoly", "H3", "--check", "moebius", "--eps-rank", "0.5"}).code == kExitDisagreement);
  CHECK(run({"volumes", "B2", "--seed", "1", "-N", "1000", "--format", "csv"}).code == kExitOk);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("volumes CSV header") {
  const auto r = run({"volumes", "A2", "--seed", "3", "-N", "2000", "--format", "csv"});
  CHECK(r.out.rfind("k,nu_hat,stderr,target,z\n", 0) == 0);
}

TEST_CASE("faces and orbit counts") {
  const auto f = run({"faces", "B2", "--inequalities"});
  CHECK(f.code == kExitOk);
  CHECK(f.out.find("{1,2}") != std::string::npos);
  for (const char* m : {"descent", "bfs", "signed"}) {
    const auto o = run({"orbit-count", "B3", "--method", m, "--format", "json"});
    CHECK(o.code == kExitOk);
    CHECK(Json::parse(o.out)["results"][0]["orbit_size"] == "48");
  }
}

TEST_CASE("JSON does not depend on the thread count") {
  const auto a = run({"verify", "H3", "--points", "2", "--seed", "42", "--threads", "1", "--format", "json"});
  const auto b = run({"verify", "H3", "--points", "2", "--seed", "42", "--threads", "4", "--format", "json"});
  CHECK(a.out == b.out);
}

TEST_CASE("report helpers") {
  CHECK(hex_float(0.5) == "0x1p-1");
  CHECK(parse_float("0x1.8p+1") == 3.0);
  CHECK(parse_float("2.5") == 2.5);
  CHECK_THROWS(parse_float("2.5x"));
  CHECK_THROWS(parse_float("inf"));
  CHECK(format_double(0.25) == "0.25");
}
