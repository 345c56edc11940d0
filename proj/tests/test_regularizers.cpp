#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "pnt/regularizers.hpp"
#include "pnt/rng.hpp"

using namespace pnt;

namespace {

Vector random_vector(std::size_t n, Rng& rng, double scale = 2.0) {
  Vector v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

std::vector<std::shared_ptr<Regularizer>> sample_regularizers() {
  return {
      std::make_shared<L1>(0.7),
      std::make_shared<ZeroReg>(),
      std::make_shared<Box>(Vector{-1.0, -0.5, 0.0}, Vector{1.0, 2.0, 0.25}),
      std::make_shared<EuclideanNorm>(1.3),
  };
}

}  // namespace

TEST_CASE("l1 prox examples") {
  CHECK(l1_prox(1.0, {3.0, -0.5, 1.0}, 1.0) == Vector{2.0, 0.0, 0.0});
  CHECK(l1_prox(0.0, {1.5, -2.0}, 3.0) == Vector{1.5, -2.0});
  CHECK(l1_prox(0.3, {-0.7}, 1.0)[0] == doctest::Approx(-0.4));
}

TEST_CASE("box prox examples") {
  CHECK(box_prox({0.0, 0.0}, {1.0, 1.0}, {2.0, -1.0}, 1.0) ==
        Vector{1.0, 0.0});
  CHECK(box_prox({-2.0, -2.0}, {2.0, 2.0}, {0.5, -1.0}, 1.0) ==
        Vector{0.5, -1.0});
  CHECK(box_prox({-1.0}, {1.0}, {0.5}, 0.1) == Vector{0.5});
  CHECK_THROWS_AS(Box(Vector{1.0}, Vector{0.0}), std::invalid_argument);
}

TEST_CASE("regularizer values") {
  CHECK(reg_value(L1(2.0), {1.0, -3.0}) == 8.0);
  CHECK(reg_value(ZeroReg(), {5.0, 5.0}) == 0.0);
  CHECK(reg_value(Box(Vector{0.0}, Vector{1.0}), {2.0}) == kInfValue);
  CHECK(reg_value(Box(Vector{0.0}, Vector{1.0}), {0.5}) == 0.0);
  CHECK(1e300 < kInfValue);  // any finite value compares below the sentinel
}

TEST_CASE("euclidean norm prox") {
  EuclideanNorm g(1.0);
  // ||u|| below the threshold collapses to zero
  CHECK(g.prox({0.3, 0.4}, 1.0) == Vector{0.0, 0.0});
  // above: shrink toward the origin, direction preserved
  Vector p = g.prox({3.0, 4.0}, 1.0);
  CHECK(p[0] == doctest::Approx(3.0 * (1.0 - 1.0 / 5.0)));
  CHECK(p[1] == doctest::Approx(4.0 * (1.0 - 1.0 / 5.0)));
}

TEST_CASE("prox nonexpansiveness and firm nonexpansiveness") {
  Rng rng(101);
  for (const auto& g : sample_regularizers()) {
    for (int rep = 0; rep < 200; ++rep) {
      Vector u = random_vector(3, rng);
      Vector v = random_vector(3, rng);
      double t = 0.05 + 2.0 * rng.uniform();
      Vector pu = g->prox(u, t), pv = g->prox(v, t);
      CHECK(norm_diff(pu, pv) <= norm_diff(u, v) + 1e-12);
      double inner = 0.0, psq = 0.0;
      for (std::size_t j = 0; j < u.size(); ++j) {
        inner += (pu[j] - pv[j]) * (u[j] - v[j]);
        psq += (pu[j] - pv[j]) * (pu[j] - pv[j]);
      }
      CHECK(inner >= psq - 1e-12);
    }
  }
}

TEST_CASE("prox optimality against sampled competitors") {
  Rng rng(202);
  for (const auto& g : sample_regularizers()) {
    for (int rep = 0; rep < 200; ++rep) {
      Vector u = random_vector(3, rng);
      double t = 0.05 + 2.0 * rng.uniform();
      Vector p = g->prox(u, t);
      double obj_p = g->value(p) + norm_diff(p, u) * norm_diff(p, u) / (2 * t);
      for (int c = 0; c < 50; ++c) {
        Vector x = random_vector(3, rng);
        double gx = g->value(x);
        if (gx == kInfValue) continue;
        double obj_x = gx + norm_diff(x, u) * norm_diff(x, u) / (2 * t);
        CHECK(obj_p <= obj_x + 1e-12);
      }
    }
  }
}

TEST_CASE("separable prox equals coordinatewise prox exactly") {
  Rng rng(303);
  for (const auto& g : sample_regularizers()) {
    if (!g->separable()) continue;
    for (int rep = 0; rep < 50; ++rep) {
      Vector u = random_vector(3, rng);
      double t = 0.05 + 2.0 * rng.uniform();
      Vector full = g->prox(u, t);
      for (std::size_t j = 0; j < u.size(); ++j)
        CHECK(full[j] == g->prox_coordinate(j, u[j], t));
    }
  }
}

TEST_CASE("non-separable regularizer rejects coordinate prox") {
  EuclideanNorm g(1.0);
  CHECK_FALSE(g.separable());
  CHECK_THROWS_AS(g.prox_coordinate(0, 1.0, 1.0), std::logic_error);
}
