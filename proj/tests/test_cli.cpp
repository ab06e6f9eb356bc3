#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "gramlocus/io.hpp"

using namespace gramlocus;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "gramlocus");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("gramlocus_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("sos --verify emits the three-term certificate") {
  const Result r = call({"sos", "--n", "3", "--pivot", "1", "--verify"});
  CHECK(r.code == 0);
  const Json j = parse_json(r.out);
  CHECK(j["terms"].size() == 3);
  CHECK(j["pivot"] == 1);
  const SosCertificate c = certificate_from_json(j);
  CHECK(verify_certificate(c));
}

TEST_CASE("sos verifies golden files and rejects a corrupted one") {
  CHECK(call({"sos", "--input", std::string(GRAMLOCUS_TEST_DATA) + "/reference_cert_n4.json"}).code == 0);
  Json j = to_json(build_certificate(3, 0));
  j["terms"][2]["form"][0]["sign"] = -j["terms"][2]["form"][0]["sign"].get<int>();
  const Result bad = call({"sos", "--input", temp_file("bad_cert.json", j.dump())});
  CHECK(bad.code == 2);
  CHECK(parse_json(bad.out)["verified"] == false);
}

TEST_CASE("member on a hull facet") {
  const Result r = call({"member", "--d", "0.25,0,0"});
  CHECK(r.code == 0);
  CHECK(parse_json(r.out)["status"] == "Outside");
  CHECK(parse_json(call({"member", "--d", "0.1,0.1,0.1,0.1"}).out)["mode"] == "conjecture");
  CHECK(parse_json(call({"member", "--d", "0.1,0.1"}).out)["mode"] == "hull");
  CHECK(call({"member", "--d", "0.1,x,0.1"}).code == 1);
  CHECK(call({"member", "--d", "0.1,0.1,0.1", "--mode", "conjecture"}).code == 1);
}

TEST_CASE("vertex output pipes into gram") {
  const Result v = call({"vertex", "--n", "3", "--k", "2"});
  REQUIRE(v.code == 0);
  const Result g = call({"gram"}, v.out);
  REQUIRE(g.code == 0);
  const Json j = parse_json(g.out);
  CHECK(j["dets"][0].get<double>() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(j["dets"][1].get<double>() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(j["dets"][2].get<double>() == 0.0);
}

TEST_CASE("gram on a general-format tensor") {
  const Result g = call({"gram"}, to_json(example_223()).dump());
  REQUIRE(g.code == 0);
  const Json j = parse_json(g.out);
  CHECK(j["dets"][0].get<double>() == doctest::Approx(0.25));
}

TEST_CASE("svals and hyperdet") {
  const std::string counter = to_json(example_counter()).dump();
  const Json s = parse_json(call({"svals"}, counter).out);
  CHECK(s.size() == 3);
  CHECK(s[2]["sigma_max"].get<double>() == doctest::Approx(std::sqrt(1.0 / std::sqrt(2.0))));
  const Json h = parse_json(call({"hyperdet", "--input", temp_file("counter.json", counter)}).out);
  CHECK(h["invariants"]["t"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("equiv finds the identity") {
  const std::string path = temp_file("eq.json", to_json(example_counter()).dump());
  const Result r = call({"equiv", "--a", path, "--b", path, "--grid", "8"});
  CHECK(r.code == 0);
  CHECK(parse_json(r.out)["found"] == true);
}

TEST_CASE("fuzz smoke run") {
  const Result r = call({"fuzz", "--n", "4", "--mode", "conjecture", "--samples", "1000", "--seed", "1", "--threads", "1"});
  CHECK(r.code == 0);
  const Json j = parse_json(r.out);
  CHECK(j["violations"] == 0);
  CHECK(j["samples"] == 1000);
  CHECK(call({"fuzz", "--n", "3", "--mode", "conjecture", "--samples", "10"}).code == 1);
}

TEST_CASE("surface CSV") {
  const Result r = call({"surface", "--res", "9", "--coords", "sigma"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("s1,s2,s3\n", 0) == 0);
  const std::string path = (std::filesystem::temp_directory_path() / "gramlocus_test_pts.csv").string();
  CHECK(call({"surface", "--res", "9", "--out", path}).code == 0);
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  CHECK(header == "d1,d2,d3");
}

TEST_CASE("examples report") {
  const Result r = call({"examples"});
  CHECK(r.code == 0);
  CHECK(parse_json(r.out)["passed"] == true);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(call({}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);
  CHECK(call({"sos", "--n", "3", "--bogus"}).code == 1);
  CHECK(call({"sos", "--n", "3", "--pivot", "4"}).code == 1);
  CHECK(call({"gram"}, "not json").code == 1);
  CHECK(call({"gram", "--input", "/nonexistent/file.json"}).code == 1);
  CHECK(call({"vertex", "--n", "3", "--k", "1"}).code == 1);
  CHECK(call({"--help"}).code == 0);
}
