#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdiff/cli.hpp"
#include "qdiff/differential.hpp"
#include "qdiff/parser.hpp"
#include "test_support.hpp"

using namespace qdiff;

namespace {

struct RunResult {
  int status;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = run_command(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("normalize command") {
  auto r = run({"normalize", "--algebra", "plane-pq-d2", "y*x"});
  CHECK(r.status == 0);
  CHECK(r.out == "(1/q)*x*y\n");
}

TEST_CASE("normalize agrees with the library") {
  const Presentation& P = preset(PresetId::SplanePQD3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    Element e = normalize(qdiff::test::random_element(P, rng), P);
    auto r = run({"normalize", "--algebra", "splane-pq-d3", P.element_str(e)});
    REQUIRE(r.status == 0);
    CHECK(r.out == P.element_str(e) + "\n");
  }
}

TEST_CASE("parse and print round-trip on canonical elements") {
  for (PresetId id : all_presets()) {
    const Presentation& P = preset(id);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
      Element e = normalize(qdiff::test::random_element(P, rng), P);
      CHECK(parse_element(P.element_str(e), P) == e);
    }
  }
}

TEST_CASE("diff command") {
  auto r = run({"diff", "--algebra", "plane-pq-d3", "--times", "2", "x"});
  CHECK(r.status == 0);
  CHECK(r.out == "d2x\n");
  auto r3 = run({"diff", "--algebra", "plane-pq-d3", "--times", "3", "x"});
  CHECK(r3.status == 0);
  CHECK(r3.out == "0\n");
}

TEST_CASE("check commands and exit codes") {
  CHECK(run({"check", "confluence", "--algebra", "plane-pq-d2"}).status == 0);

  auto r = run({"check", "confluence", "--algebra", "plane-pq-d3"});
  CHECK(r.status == 1);

  auto r2 = run({"check", "confluence", "--algebra", "plane-pq-d3", "--subst",
                 "p=j^2*q^-1"});
  CHECK(r2.status == 0);
  CHECK(r2.out.rfind("0 obstructions", 0) == 0);

  CHECK(run({"check", "nilpotency", "--algebra", "splane-q-d3", "--max-len",
             "4"}).status == 0);
  CHECK(run({"check", "covariance", "--algebra", "splane-pq-d2"}).status == 0);
  CHECK(run({"check", "leibniz", "--algebra", "plane-pq-d3", "--samples", "40"})
            .status == 1);
}

TEST_CASE("usage and parse errors exit with 2") {
  CHECK(run({"normalize", "--algebra", "plane-pq-d2", "x*w"}).status == 2);
  CHECK(run({"normalize", "--algebra", "plane-pq-d2", "x*"}).status == 2);
  CHECK(run({"normalize", "--algebra", "no-such-algebra", "x"}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"normalize"}).status == 2);
  CHECK(run({"limit", "--algebra", "plane-pq-d2"}).status == 2);
}

TEST_CASE("scalar syntax in expressions") {
  auto r = run({"normalize", "--algebra", "plane-pq-d3",
                "(j^2*q*p-1)/(1+q*p)*dx*y"});
  REQUIRE(r.status == 0);
  const Presentation& P = preset(PresetId::PlanePQD3);
  CHECK(parse_element(r.out.substr(0, r.out.size() - 1), P) ==
        parse_element("((j^2*q*p-1)/(1+q*p))*dx*y", P));
}

TEST_CASE("limit prints the specialized presentation") {
  auto r = run({"limit", "--algebra", "splane-pq-d2", "--subst", "p=q", "--json"});
  REQUIRE(r.status == 0);
  Presentation back = presentation_from_json(r.out);
  CHECK(qdiff::test::same_presentation(back, preset(PresetId::SplaneQD2)));
}

TEST_CASE("presets export writes loadable spec files") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "qdiff_presets_test";
  fs::create_directories(dir);
  auto r = run({"presets", "--export", dir.string()});
  REQUIRE(r.status == 0);
  for (PresetId id : all_presets()) {
    std::ifstream f(dir / (preset_name(id) + ".json"));
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(qdiff::test::same_presentation(presentation_from_json(buf.str()),
                                         preset(id)));
  }
  fs::remove_all(dir);
}

TEST_CASE("solve ansatz command") {
  auto r = run({"solve", "ansatz", "--json"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\"rank\": 15") != std::string::npos);
}
