// graff: command-line front end to the library. Every command prints one
// value or one JSON document per line on stdout; errors go to stderr as
// "error: <Name>: <message>".
//
// Exit codes: 0 success, 2 input or usage error, 3 domain error
// (NotSeparable, SingularPair, NotAFlat), 1 anything unexpected.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graff/errors.hpp"
#include "graff/fitting.hpp"
#include "graff/invariants.hpp"
#include "graff/io.hpp"
#include "graff/metric.hpp"
#include "graff/probability.hpp"

namespace {

using graff::AffineFlat;
using graff::Matrix;
using graff::Vector;

AffineFlat load_flat(const std::string& path) { return graff::flat_from_json(graff::read_text_file(path)); }

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw graff::InvalidArgument(std::string(what) + " must be an integer, got '" + s + "'");
}

void expect_args(const std::vector<std::string>& args, std::size_t count, const std::string& usage) {
  if (args.size() != count) throw graff::InvalidArgument("expected arguments: " + usage);
}

// --- convert ---------------------------------------------------------------

struct ConvertArgs {
  std::string input;
  std::string from = "flat";
  std::string to;
};

void run_convert(const ConvertArgs& a) {
  AffineFlat flat = [&] {
    if (a.from == "flat") return load_flat(a.input);
    const Matrix m = graff::matrix_from_json(graff::read_text_file(a.input));
    if (a.from == "stiefel") return graff::unembed(m);
    if (m.rows() != m.cols() || m.rows() < 2) throw graff::DimensionError("projection matrix must be square, n+1 >= 2");
    return graff::flat_from_projection(m);
  }();
  if (a.to == "stiefel") {
    std::cout << graff::matrix_to_json(graff::stiefel_coords(flat)) << '\n';
  } else if (a.to == "projection") {
    std::cout << graff::matrix_to_json(graff::projection_coords(flat)) << '\n';
  } else if (a.to == "projection-affine") {
    const auto pair = graff::projection_affine_coords(flat);
    std::cout << "{\"P\":" << graff::matrix_to_json(pair.projection) << ",\"b\":" << graff::vector_to_json(pair.offset)
              << "}\n";
  } else {
    std::cout << graff::flat_to_json(flat) << '\n';
  }
}

// --- distance --------------------------------------------------------------

struct DistanceArgs {
  std::string first;
  std::string second;
  std::string kind = "grassmann";
  bool infinite = false;
  bool pad = false;
  bool verbose = false;
};

void run_distance(const DistanceArgs& a) {
  const auto kind = graff::parse_distance_kind(a.kind);
  if (!kind) throw graff::UnsupportedKind("unknown distance kind '" + a.kind + "'");
  AffineFlat f = load_flat(a.first);
  AffineFlat g = load_flat(a.second);
  if (a.pad && f.ambient_dim() != g.ambient_dim()) {
    const int m = std::max(f.ambient_dim(), g.ambient_dim());
    f = graff::pad_ambient(f, m);
    g = graff::pad_ambient(g, m);
  }
  double value;
  if (a.infinite) {
    value = graff::infinite_metric(f, g, *kind);
  } else if (f.dim() == g.dim()) {
    value = graff::distance(f, g, *kind);
  } else {
    value = graff::delta_distance(f, g, *kind);
  }
  std::cout << graff::format_double(value) << '\n';
  if (a.verbose) {
    std::cout << "{\"thetas\":" << graff::vector_to_json(graff::principal_decomposition(f, g).thetas) << "}\n";
  }
}

// --- geodesic --------------------------------------------------------------

struct GeodesicArgs {
  std::string first;
  std::string second;
  std::vector<double> times{0.0, 0.5, 1.0};
};

void run_geodesic(const GeodesicArgs& a) {
  const auto curve = graff::geodesic(load_flat(a.first), load_flat(a.second));
  for (double t : a.times) std::cout << graff::flat_to_json(graff::evaluate_geodesic(curve, t)) << '\n';
}

// --- invariant -------------------------------------------------------------

struct InvariantArgs {
  std::string what;
  std::vector<std::string> args;
  std::string space = "graff";
  bool log = false;
};

void run_invariant(const InvariantArgs& a) {
  const auto& v = a.args;
  auto arg = [&](std::size_t i, const char* name) { return parse_int(v[i], name); };
  if (a.what == "dim") {
    expect_args(v, 2, "k n");
    std::cout << graff::dim_graff(arg(0, "k"), arg(1, "n")) << '\n';
  } else if (a.what == "stiefel-dim") {
    expect_args(v, 2, "k n");
    const auto d = graff::dim_stiefel_affine(arg(0, "k"), arg(1, "n"));
    std::cout << "{\"compact\":" << d.compact << ",\"noncompact\":" << d.noncompact << "}\n";
  } else if (a.what == "psi-plus-dim") {
    expect_args(v, 3, "k l n");
    std::cout << graff::dim_psi_plus(arg(0, "k"), arg(1, "l"), arg(2, "n")) << '\n';
  } else if (a.what == "psi-minus-dim") {
    expect_args(v, 3, "k l n");
    std::cout << graff::dim_psi_minus(arg(0, "k"), arg(1, "l"), arg(2, "n")) << '\n';
  } else if (a.what == "schubert-dim") {
    if (v.empty()) throw graff::InvalidFlag("expected arguments: d1 d2 ... dk");
    std::vector<int> dims;
    for (std::size_t i = 0; i < v.size(); ++i) dims.push_back(arg(i, "flag dimension"));
    std::cout << graff::dim_schubert_affine(dims) << '\n';
  } else if (a.what == "volume") {
    expect_args(v, 2, "k n");
    const int k = arg(0, "k");
    const int n = arg(1, "n");
    graff::ScaledValue vol;
    if (a.space == "gr") {
      vol = graff::volume_gr(k, n);
    } else if (a.space == "graff") {
      vol = graff::volume_graff(k, n);
    } else {
      throw graff::InvalidArgument("--space must be gr or graff");
    }
    std::cout << graff::format_double(a.log ? vol.log_value : vol.value) << '\n';
  } else if (a.what == "relative-volume") {
    expect_args(v, 3, "k l n");
    std::cout << graff::format_double(graff::relative_volume(arg(0, "k"), arg(1, "l"), arg(2, "n"))) << '\n';
  } else if (a.what == "betti") {
    expect_args(v, 2, "k i");
    std::cout << graff::betti(arg(0, "k"), arg(1, "i")) << '\n';
  } else if (a.what == "homotopy") {
    expect_args(v, 3, "k n r  (n may be 'inf')");
    std::optional<int> n;
    if (v[1] != "inf") n = arg(1, "n");
    std::cout << graff::to_string(graff::homotopy_group(arg(0, "k"), n, arg(2, "r"))) << '\n';
  } else {
    throw graff::InvalidArgument("unknown invariant '" + a.what + "'");
  }
}

// --- sample ----------------------------------------------------------------

struct SampleArgs {
  std::string dist;
  std::string params;
  std::uint64_t seed = 0;
  int count = 1;
};

int json_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw graff::ParseError(std::string("params need integer \"") + key + "\"");
  return j[key].get<int>();
}

Matrix json_matrix(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw graff::ParseError(std::string("params need \"") + key + "\"");
  return graff::matrix_from_json(j[key].dump());
}

void run_sample(const SampleArgs& a) {
  if (a.count < 1) throw graff::InvalidArgument("--count must be positive");
  nlohmann::json p;
  try {
    p = nlohmann::json::parse(graff::read_text_file(a.params));
  } catch (const nlohmann::json::exception& e) {
    throw graff::ParseError(std::string("params: ") + e.what());
  }
  if (!p.is_object()) throw graff::ParseError("params must be a JSON object");
  const int k = json_int(p, "k");
  const int n = json_int(p, "n");
  if (n < 1 || k < 0 || k >= n) throw graff::DimensionError("need 0 <= k < n");

  graff::MetropolisConfig config;
  if (p.contains("step_size")) config.step_size = p["step_size"].get<double>();
  if (p.contains("burn_in")) config.burn_in = p["burn_in"].get<int>();
  if (p.contains("thin")) config.thin = p["thin"].get<int>();

  graff::RandomStream rng(a.seed);
  if (a.dist == "uniform") {
    for (int i = 0; i < a.count; ++i) std::cout << graff::flat_to_json(graff::sample_uniform(k, n, rng)) << '\n';
    return;
  }
  graff::ChainResult chain;
  if (a.dist == "langevin") {
    chain = graff::langevin_chain(graff::LangevinParams(json_matrix(p, "S"), k, n), a.count, config, rng);
  } else if (a.dist == "langevin-gaussian") {
    if (!p.contains("sigma2") || !p["sigma2"].is_number()) throw graff::ParseError("params need number \"sigma2\"");
    graff::LangevinGaussianParams params(json_matrix(p, "S"), p["sigma2"].get<double>(), k, n);
    chain = graff::langevin_gaussian_chain(params, a.count, config, rng);
  } else {
    throw graff::InvalidArgument("unknown distribution '" + a.dist + "'");
  }
  for (const auto& flat : chain.samples) std::cout << graff::flat_to_json(flat) << '\n';
}

// --- fit -------------------------------------------------------------------

struct FitArgs {
  std::string method;
  std::string cloud;
  int k = -1;
};

void run_fit(const FitArgs& a) {
  const std::string text = graff::read_text_file(a.cloud);
  if (a.method == "svm") {
    auto doc = graff::parse_cloud_csv(text, true);
    const auto fit = graff::svm_hyperplane(graff::LabeledCloud(std::move(doc.points), std::move(*doc.labels)));
    std::cout << graff::flat_to_json(fit.flat) << '\n';
    std::cout << "{\"w\":" << graff::vector_to_json(fit.w) << ",\"beta\":" << graff::format_double(fit.beta)
              << ",\"iterations\":" << fit.iterations << "}\n";
    return;
  }
  auto doc = graff::parse_cloud_csv(text, false);
  if (a.method == "regression") {
    if (doc.points.cols() < 2) throw graff::DimensionError("regression needs predictor columns and a response column");
    const auto p = doc.points.cols() - 1;
    const auto fit = graff::linear_regression(doc.points.leftCols(p), doc.points.col(p));
    std::cout << graff::flat_to_json(fit.flat) << '\n';
    std::cout << "{\"beta\":" << graff::vector_to_json(fit.beta)
              << ",\"intercept\":" << graff::format_double(fit.intercept) << "}\n";
  } else if (a.method == "flat" || a.method == "eiv") {
    const int k = a.method == "eiv" ? 1 : a.k;
    if (k < 0) throw graff::InvalidArgument("--k is required for --method flat");
    const auto fit = graff::fit_flat(graff::PointCloud(std::move(doc.points)), k);
    if (fit.degenerate_spectrum) std::cerr << "warning: tied singular values; the fitted flat is not unique\n";
    std::cout << graff::flat_to_json(fit.flat) << '\n';
  } else {
    throw graff::InvalidArgument("unknown method '" + a.method + "'");
  }
}

// graff::Error messages already start with the error name.
int report(const std::string& message, int code) {
  std::cerr << "error: " << message << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine subspaces of R^n: coordinates, distances, invariants, sampling, fitting"};
  app.require_subcommand(1);
  std::optional<double> tol;
  app.add_option("--tol", tol, "numerical tolerance (default 1e-10, or $GRAFF_TOL)");

  std::function<void()> action;

  ConvertArgs conv;
  auto* c = app.add_subcommand("convert", "convert between coordinate systems");
  c->add_option("input", conv.input, "input file")->required();
  c->add_option("--from", conv.from, "input format")->check(CLI::IsMember({"flat", "stiefel", "projection"}));
  c->add_option("--to", conv.to, "output format")
      ->required()
      ->check(CLI::IsMember({"stiefel", "projection", "projection-affine", "flat"}));
  c->callback([&] { action = [&] { run_convert(conv); }; });

  DistanceArgs dist;
  auto* d = app.add_subcommand("distance", "distance between two flats");
  d->add_option("first", dist.first)->required();
  d->add_option("second", dist.second)->required();
  d->add_option("--kind", dist.kind, "grassmann, asimov, binet-cauchy, chordal, fubini-study, martin, "
                                     "procrustes, projection, spectral");
  d->add_flag("--infinite", dist.infinite, "metric across dimensions (grassmann, chordal, procrustes)");
  d->add_flag("--pad", dist.pad, "zero-pad to a common ambient dimension");
  d->add_flag("--verbose", dist.verbose, "also print the principal angles");
  d->callback([&] { action = [&] { run_distance(dist); }; });

  GeodesicArgs geo;
  auto* g = app.add_subcommand("geodesic", "points on the minimizing geodesic");
  g->add_option("first", geo.first)->required();
  g->add_option("second", geo.second)->required();
  g->add_option("--t", geo.times, "curve parameters")->expected(1, -1);
  g->callback([&] { action = [&] { run_geodesic(geo); }; });

  InvariantArgs inv;
  auto* i = app.add_subcommand("invariant", "dimensions, volumes, Betti numbers, homotopy groups");
  i->add_option("--what", inv.what)
      ->required()
      ->check(CLI::IsMember({"dim", "stiefel-dim", "psi-plus-dim", "psi-minus-dim", "schubert-dim", "volume",
                             "relative-volume", "betti", "homotopy"}));
  i->add_option("--space", inv.space, "volume of gr or graff (default graff)");
  i->add_flag("--log", inv.log, "print the natural log of the volume");
  i->add_option("args", inv.args, "integer arguments");
  i->callback([&] { action = [&] { run_invariant(inv); }; });

  SampleArgs smp;
  auto* s = app.add_subcommand("sample", "draw random flats");
  s->add_option("--dist", smp.dist)->required()->check(CLI::IsMember({"uniform", "langevin", "langevin-gaussian"}));
  s->add_option("--params", smp.params, "JSON file with k, n and distribution parameters")->required();
  s->add_option("--seed", smp.seed);
  s->add_option("--count", smp.count);
  s->callback([&] { action = [&] { run_sample(smp); }; });

  FitArgs fit;
  auto* f = app.add_subcommand("fit", "fit a flat to a point cloud");
  f->add_option("--method", fit.method)->required()->check(CLI::IsMember({"flat", "regression", "eiv", "svm"}));
  f->add_option("--k", fit.k, "flat dimension for --method flat");
  f->add_option("cloud", fit.cloud, "CSV file")->required();
  f->callback([&] { action = [&] { run_fit(fit); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report(std::string("UsageError: ") + e.what(), 2);
  }

  try {
    if (tol) {
      graff::set_default_tolerance(*tol);
    } else if (const char* env = std::getenv("GRAFF_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0') throw graff::InvalidArgument(std::string("GRAFF_TOL is not a number: ") + env);
      graff::set_default_tolerance(v);
    }
    action();
    std::cout.flush();
  } catch (const graff::Error& e) {
    return report(e.what(), e.is_domain_error() ? 3 : (e.name() == "InternalError" ? 1 : 2));
  } catch (const std::exception& e) {
    return report(std::string("InternalError: ") + e.what(), 1);
  }
  return 0;
}
