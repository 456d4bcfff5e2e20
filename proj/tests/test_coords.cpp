#include <doctest.h>

#include "graff/coords.hpp"
#include "graff/errors.hpp"
#include "support.hpp"

using namespace graff;
using namespace graff::testing;

namespace {
Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}
}  // namespace

TEST_CASE("make_flat drops the in-span part of the displacement") {
  const auto f = make_flat(vec({1, 0}), vec({3, 1}));
  CHECK(f.ambient_dim() == 2);
  CHECK(f.dim() == 1);
  CHECK((f.basis() - vec({1, 0})).norm() < 1e-15);
  CHECK((f.offset() - vec({0, 1})).norm() < 1e-15);
}

TEST_CASE("make_flat normalizes the basis") {
  const auto f = make_flat(vec({1, 1, 0}), Vector::Zero(3));
  CHECK((f.basis() - vec({1, 1, 0}) / std::sqrt(2.0)).norm() < 1e-15);
  CHECK(f.offset().norm() == 0.0);
}

TEST_CASE("make_flat sign convention: first significant entry positive") {
  const auto f = make_flat(vec({-2, 0, 0}), vec({0, 0, 1}));
  CHECK(f.basis()(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("make_flat rejects bad input") {
  Matrix a(3, 2);
  a << 1, 2, 1, 2, 0, 0;
  CHECK_THROWS_AS(make_flat(a, Vector::Zero(3)), RankDeficient);
  CHECK_THROWS_AS(make_flat(Matrix::Identity(2, 2), Vector::Zero(2)), DimensionError);
  CHECK_THROWS_AS(make_flat(Matrix::Identity(3, 1), Vector::Zero(2)), DimensionError);
}

TEST_CASE("from_orthogonal validates orthogonality") {
  CHECK_NOTHROW(AffineFlat::from_orthogonal(vec({1, 0}), vec({0, 1})));
  CHECK_THROWS_AS(AffineFlat::from_orthogonal(vec({1, 0}), vec({1, 1})), InvalidArgument);
  CHECK_THROWS_AS(AffineFlat::from_orthogonal(vec({2, 0}), vec({0, 1})), InvalidArgument);
}

TEST_CASE("stiefel coordinates of the line y=1 and of the point (0,1)") {
  const auto line = make_flat(vec({1, 0}), vec({0, 1}));
  Matrix expected(3, 2);
  expected << 1, 0, 0, 1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0);
  CHECK((stiefel_coords(line) - expected).norm() < 1e-15);

  const auto point = make_flat(Matrix(2, 0), vec({0, 1}));
  CHECK((stiefel_coords(point) - vec({0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0)})).norm() < 1e-15);
  CHECK((embed(point) - stiefel_coords(point)).norm() == 0.0);
}

TEST_CASE("x-axis stiefel coordinates") {
  const auto axis = make_flat(vec({1, 0}), Vector::Zero(2));
  Matrix expected(3, 2);
  expected << 1, 0, 0, 0, 0, 1;
  CHECK((stiefel_coords(axis) - expected).norm() == 0.0);
}

TEST_CASE("projection coordinates are the idempotent Y Y^T") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(1, 9);
    const int k = rng.integer(0, n - 1);
    const auto f = random_flat(k, n, rng, 3.0);
    const Matrix p = projection_coords(f);
    const Matrix y = oracle_stiefel(f.basis(), f.offset());
    CHECK((p - y * y.transpose()).norm() < 1e-12);
    CHECK((p * p - p).norm() < 1e-12);
    CHECK((p - p.transpose()).norm() == 0.0);
    CHECK(p.trace() == doctest::Approx(k + 1).epsilon(1e-12));
    CHECK((stiefel_coords(f) - y).norm() < 1e-15);
  }
}

TEST_CASE("projection-affine pair") {
  const auto line = make_flat(vec({1, 0}), vec({0, 1}));
  const auto pair = projection_affine_coords(line);
  Matrix e1e1 = Matrix::Zero(2, 2);
  e1e1(0, 0) = 1;
  CHECK((pair.projection - e1e1).norm() < 1e-15);
  CHECK((pair.offset - vec({0, 1})).norm() < 1e-15);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_flat(2, 5, rng);
    const auto pr = projection_affine_coords(f);
    CHECK((pr.projection * pr.offset).norm() < 1e-12);
    CHECK((pr.projection * pr.projection - pr.projection).norm() < 1e-12);
  }
}

TEST_CASE("unembed inverts embed and ignores the choice of frame") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.integer(1, 12);
    const int k = rng.integer(0, n - 1);
    const auto f = random_flat(k, n, rng, 2.0);
    CHECK(equal_flats(unembed(embed(f)), f, 1e-9));
    // Any frame of the same (k+1)-plane, e.g. Y M for invertible M.
    const Matrix m = rng.gaussian(k + 1, k + 1) + 3.0 * Matrix::Identity(k + 1, k + 1);
    CHECK(equal_flats(unembed(embed(f) * m), f, 1e-8));
  }
}

TEST_CASE("unembed error cases") {
  Matrix horizontal = Matrix::Zero(3, 1);
  horizontal(0, 0) = 1.0;
  CHECK_THROWS_AS(unembed(horizontal), NotAFlat);
  Matrix tiny = horizontal;
  tiny(2, 0) = 1e-12;
  CHECK_THROWS_AS(unembed(tiny), NotAFlat);
  Matrix dependent(3, 2);
  dependent << 1, 2, 0, 0, 1, 2;
  CHECK_THROWS_AS(unembed(dependent), RankDeficient);
}

TEST_CASE("flat_from_projection recovers the flat") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(1, 8);
    const int k = rng.integer(0, n - 1);
    const auto f = random_flat(k, n, rng);
    CHECK(equal_flats(flat_from_projection(projection_coords(f)), f, 1e-9));
  }
}

TEST_CASE("equal_flats is invariant to basis rotation and rejects mixed ambients") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(2, 8);
    const int k = rng.integer(1, n - 1);
    const auto f = random_flat(k, n, rng);
    const Matrix q = random_orthogonal(k, rng);
    const auto g = AffineFlat::from_orthogonal(f.basis() * q, f.offset());
    CHECK(equal_flats(f, g, 1e-12));
    CHECK((projection_coords(f) - projection_coords(g)).norm() < 1e-12);
    CHECK((projection_affine_coords(f).projection - projection_affine_coords(g).projection).norm() < 1e-12);
  }
  const auto a = make_flat(vec({1, 0}), Vector::Zero(2));
  const auto b = make_flat(vec({1, 0, 0}), Vector::Zero(3));
  CHECK_THROWS_AS(equal_flats(a, b, 1e-9), DimensionError);
  CHECK_FALSE(equal_flats(a, make_flat(vec({1, 0}), vec({0, 1e-3})), 1e-9));
}

TEST_CASE("pad_ambient zero-pads") {
  const auto f = make_flat(vec({1, 1}), vec({1, -1}));
  const auto g = pad_ambient(f, 4);
  CHECK(g.ambient_dim() == 4);
  CHECK(g.basis().bottomRows(2).norm() == 0.0);
  CHECK((g.offset().head(2) - f.offset()).norm() == 0.0);
  CHECK(equal_flats(pad_ambient(f, 2), f, 0.0));
  CHECK_THROWS_AS(pad_ambient(f, 1), DimensionError);
}

TEST_CASE("points are 0-flats") {
  const auto p = make_flat(Matrix(3, 0), vec({1, 2, 3}));
  CHECK(p.dim() == 0);
  CHECK((p.offset() - vec({1, 2, 3})).norm() == 0.0);
  CHECK(projection_coords(p).trace() == doctest::Approx(1.0));
  CHECK(equal_flats(unembed(embed(p)), p, 1e-12));
}
