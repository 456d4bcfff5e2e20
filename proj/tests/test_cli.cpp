#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "cli_harness.hpp"
#include "graff/coords.hpp"
#include "graff/io.hpp"
#include "graff/metric.hpp"
#include "support.hpp"

using namespace graff;
using namespace graff::testing;

namespace {

const std::string kBinary = GRAFF_BINARY;

RunResult run(const TempDir& dir, const std::string& args, const std::string& env = "") {
  return run_graff(kBinary, args, dir, env);
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

constexpr const char* kAxis = R"({"n":2,"k":1,"A":[[1,0]],"b":[0,0]})";
constexpr const char* kLine1 = R"({"n":2,"k":1,"A":[[1,0]],"b":[0,1]})";
constexpr const char* kLine2 = R"({"n":2,"k":1,"A":[[1,0]],"b":[0,2]})";
constexpr const char* kPoint = R"({"n":2,"k":0,"A":[],"b":[0,1]})";
constexpr const char* kYAxis = R"({"n":2,"k":1,"A":[[0,1]],"b":[0,0]})";

}  // namespace

TEST_CASE("distance command") {
  TempDir dir;
  const auto axis = dir.write("axis.json", kAxis);
  const auto line1 = dir.write("line1.json", kLine1);
  const auto line2 = dir.write("line2.json", kLine2);
  const auto point = dir.write("point.json", kPoint);
  const auto yaxis = dir.write("yaxis.json", kYAxis);

  auto r = run(dir, "distance --kind grassmann " + axis + " " + line1);
  CHECK(r.code == 0);
  CHECK(r.out == "0.7853981633974483\n");
  r = run(dir, "distance " + axis + " " + line2);
  CHECK(std::abs(std::stod(r.out) - std::acos(1 / std::sqrt(5.0))) < 1e-12);
  r = run(dir, "distance " + point + " " + axis);
  CHECK(r.code == 0);
  CHECK(std::abs(std::stod(r.out) - kPi / 4) < 1e-12);
  r = run(dir, "distance --kind martin " + axis + " " + yaxis);
  CHECK(r.out == "inf\n");
  r = run(dir, "distance --verbose " + axis + " " + line1);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[1].rfind("{\"thetas\":[", 0) == 0);
  r = run(dir, "distance --infinite " + point + " " + axis);
  CHECK(std::abs(std::stod(r.out) - kPi / 4 * std::sqrt(5.0)) < 1e-12);
  r = run(dir, "distance --infinite --kind asimov " + point + " " + axis);
  CHECK(r.code == 2);
  CHECK(r.err.find("UnsupportedKind") != std::string::npos);
  r = run(dir, "distance --kind nonsense " + axis + " " + line1);
  CHECK(r.code == 2);
}

TEST_CASE("distance command: ambient mismatch needs --pad") {
  TempDir dir;
  const auto axis = dir.write("axis.json", kAxis);
  const auto axis3 = dir.write("axis3.json", R"({"n":3,"k":1,"A":[[1,0,0]],"b":[0,1,0]})");
  auto r = run(dir, "distance " + axis + " " + axis3);
  CHECK(r.code == 2);
  CHECK(r.err.find("DimensionError") != std::string::npos);
  r = run(dir, "distance --pad " + axis + " " + axis3);
  CHECK(r.code == 0);
  CHECK(std::abs(std::stod(r.out) - kPi / 4) < 1e-12);
}

TEST_CASE("convert command") {
  TempDir dir;
  const auto axis = dir.write("axis.json", kAxis);
  auto r = run(dir, "convert --to stiefel " + axis);
  CHECK(r.code == 0);
  CHECK(r.out == "[[1,0],[0,0],[0,1]]\n");
  r = run(dir, "convert --to projection-affine " + axis);
  CHECK(r.out == "{\"P\":[[1,0],[0,0]],\"b\":[0,0]}\n");

  const auto bad = dir.write("bad.json", R"({"n":2,"k":1,"A":[[0,0]],"b":[0,0]})");
  r = run(dir, "convert --to stiefel " + bad);
  CHECK(r.code == 2);
  CHECK(r.err.find("RankDeficient") != std::string::npos);

  // Projection round trip through a reconstructed flat.
  const auto flat = dir.write("flat.json", R"({"n":4,"k":2,"A":[[1,2,0,1],[0,1,1,-1]],"b":[3,-1,2,0.5]})");
  r = run(dir, "convert --to projection " + flat);
  const auto proj = dir.write("proj.json", r.out);
  r = run(dir, "convert --from projection --to flat " + proj);
  CHECK(r.code == 0);
  const auto original = flat_from_json(R"({"n":4,"k":2,"A":[[1,2,0,1],[0,1,1,-1]],"b":[3,-1,2,0.5]})");
  CHECK(equal_flats(flat_from_json(r.out), original, 1e-10));

  r = run(dir, "convert --to stiefel " + flat);
  const auto stiefel = dir.write("stiefel.json", r.out);
  r = run(dir, "convert --from stiefel --to flat " + stiefel);
  CHECK(equal_flats(flat_from_json(r.out), original, 1e-10));

  const auto horizontal = dir.write("h.json", "[[1],[0],[0]]");
  r = run(dir, "convert --from stiefel --to flat " + horizontal);
  CHECK(r.code == 3);
  CHECK(r.err.find("NotAFlat") != std::string::npos);
}

TEST_CASE("geodesic command") {
  TempDir dir;
  const auto axis = dir.write("axis.json", kAxis);
  const auto line1 = dir.write("line1.json", kLine1);
  const auto yaxis = dir.write("yaxis.json", kYAxis);
  auto r = run(dir, "geodesic " + axis + " " + line1 + " --t 0 0.5 1");
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(equal_flats(flat_from_json(ls[0]), flat_from_json(kAxis), 1e-8));
  CHECK(std::abs(flat_from_json(ls[1]).offset()(1) - std::tan(kPi / 8)) < 1e-10);
  CHECK(equal_flats(flat_from_json(ls[2]), flat_from_json(kLine1), 1e-8));
  r = run(dir, "geodesic " + axis + " " + yaxis + " --t 0.5");
  CHECK(r.code == 3);
  CHECK(r.err.find("SingularPair") != std::string::npos);
}

TEST_CASE("invariant command") {
  TempDir dir;
  CHECK(run(dir, "invariant --what dim 1 3").out == "4\n");
  CHECK(run(dir, "invariant --what betti 2 4").out == "3\n");
  CHECK(run(dir, "invariant --what homotopy 1 2 1").out == "Z\n");
  CHECK(run(dir, "invariant --what homotopy 3 inf 4").out == "Z\n");
  CHECK(run(dir, "invariant --what homotopy 2 5 4").out == "unknown\n");
  CHECK(run(dir, "invariant --what schubert-dim 2").out == "2\n");
  CHECK(run(dir, "invariant --what psi-plus-dim 1 2 3").out == "1\n");
  CHECK(run(dir, "invariant --what psi-minus-dim 1 2 3").out == "2\n");
  CHECK(run(dir, "invariant --what stiefel-dim 1 3").out == "{\"compact\":3,\"noncompact\":6}\n");
  CHECK(std::abs(std::stod(run(dir, "invariant --what volume --space gr 1 2").out) - kPi) < 1e-12);
  CHECK(std::abs(std::stod(run(dir, "invariant --what volume 0 1").out) - kPi) < 1e-12);
  CHECK(run(dir, "invariant --what relative-volume 1 2 3").code == 0);
  auto r = run(dir, "invariant --what dim 3 3");
  CHECK(r.code == 2);
  CHECK(r.err.find("DimensionError") != std::string::npos);
  r = run(dir, "invariant --what schubert-dim 2 2");
  CHECK(r.code == 2);
  CHECK(r.err.find("InvalidFlag") != std::string::npos);
  CHECK(run(dir, "invariant --what dim x 3").code == 2);
  CHECK(run(dir, "invariant --what bogus 1 2").code == 2);
}

TEST_CASE("sample command is reproducible") {
  TempDir dir;
  const auto params = dir.write("u.json", R"({"k":1,"n":3})");
  auto a = run(dir, "sample --dist uniform --params " + params + " --seed 7 --count 5");
  auto b = run(dir, "sample --dist uniform --params " + params + " --seed 7 --count 5");
  auto c = run(dir, "sample --dist uniform --params " + params + " --seed 8 --count 5");
  CHECK(a.code == 0);
  CHECK(lines(a.out).size() == 5);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  for (const auto& l : lines(a.out)) CHECK(flat_from_json(l).dim() == 1);

  const auto lp = dir.write("l.json", R"({"k":1,"n":2,"S":[[2,0,0],[0,0,0],[0,0,0]],"burn_in":50,"thin":2})");
  a = run(dir, "sample --dist langevin --params " + lp + " --seed 1 --count 4");
  b = run(dir, "sample --dist langevin --params " + lp + " --seed 1 --count 4");
  CHECK(a.code == 0);
  CHECK(lines(a.out).size() == 4);
  CHECK(a.out == b.out);

  const auto lg = dir.write("lg.json", R"({"k":1,"n":3,"S":[[1,0,0],[0,0,0],[0,0,0]],"sigma2":0.5})");
  a = run(dir, "sample --dist langevin-gaussian --params " + lg + " --seed 3 --count 3");
  CHECK(a.code == 0);
  for (const auto& l : lines(a.out)) {
    const auto f = flat_from_json(l);
    CHECK((f.basis().transpose() * f.offset()).norm() < 1e-12);
  }

  auto missing = run(dir, "sample --dist uniform --params " + dir.path("nope.json"));
  CHECK(missing.code == 2);
  const auto no_sigma = dir.write("ns.json", R"({"k":1,"n":3,"S":[[1,0,0],[0,0,0],[0,0,0]]})");
  CHECK(run(dir, "sample --dist langevin-gaussian --params " + no_sigma).code == 2);
}

TEST_CASE("fit command") {
  TempDir dir;
  auto r = run(dir, "fit --method flat --k 1 " + dir.write("c.csv", "x,y\n0,1\n1,1\n2,1\n"));
  CHECK(r.code == 0);
  CHECK(equal_flats(flat_from_json(r.out), flat_from_json(kLine1), 1e-10));
  r = run(dir, "fit --method eiv " + dir.write("e.csv", "0,0\n1,1\n"));
  CHECK(r.code == 0);

  r = run(dir, "fit --method regression " + dir.write("r.csv", "0,0\n1,1\n2,1\n"));
  CHECK(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  const auto coef = nlohmann::json::parse(ls[1]);
  CHECK(std::abs(coef["beta"][0].get<double>() - 0.5) < 1e-12);
  CHECK(std::abs(coef["intercept"].get<double>() - 1.0 / 6.0) < 1e-12);

  r = run(dir, "fit --method svm " + dir.write("s.csv", "0,0,-1\n2,0,1\n"));
  CHECK(r.code == 0);
  ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  const auto svm = nlohmann::json::parse(ls[1]);
  CHECK(std::abs(svm["w"][0].get<double>() - 1.0) < 1e-8);
  CHECK(std::abs(svm["beta"].get<double>() - 1.0) < 1e-8);

  r = run(dir, "fit --method svm " + dir.write("n.csv", "0,-1\n1,1\n2,-1\n"));
  CHECK(r.code == 3);
  CHECK(r.err.find("NotSeparable") != std::string::npos);
  r = run(dir, "fit --method regression " + dir.write("d.csv", "1,1\n1,2\n1,3\n"));
  CHECK(r.code == 2);
  CHECK(r.err.find("RankDeficient") != std::string::npos);
  CHECK(run(dir, "fit --method flat " + dir.path("c.csv")).code == 2);
}

TEST_CASE("usage errors and tolerance settings") {
  TempDir dir;
  CHECK(run(dir, "").code == 2);
  CHECK(run(dir, "frobnicate").code == 2);
  CHECK(run(dir, "--help").code == 0);
  CHECK(run(dir, "--tol 2 invariant --what dim 1 3").code == 2);
  CHECK(run(dir, "--tol 1e-8 invariant --what dim 1 3").out == "4\n");
  CHECK(run(dir, "invariant --what dim 1 3", "GRAFF_TOL=1e-8").code == 0);
  CHECK(run(dir, "invariant --what dim 1 3", "GRAFF_TOL=abc").code == 2);
  // A nearly dependent basis is rank deficient only under a loose tolerance.
  const auto near = dir.write("near.json", R"({"n":3,"k":2,"A":[[1,0,0],[1,1e-9,0]],"b":[0,0,1]})");
  CHECK(run(dir, "convert --to stiefel " + near).code == 0);
  CHECK(run(dir, "--tol 1e-6 convert --to stiefel " + near).code == 2);
  CHECK(run(dir, "convert --to stiefel " + near, "GRAFF_TOL=1e-6").code == 2);
}
