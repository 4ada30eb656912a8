#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>

#include "crowdperm/reference_ls.hpp"
#include "crowdperm/rng.hpp"
#include "crowdperm/scenarios.hpp"

using namespace crowdperm;

namespace {

double frob_dist(const DenseMatrix& a, const DenseMatrix& b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.data.size(); ++k) {
    const double diff = a.data[k] - b.data[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

DenseMatrix random_matrix(std::uint64_t key, int rows, int cols, double lo,
                          double hi, int offset = 0) {
  DenseMatrix m(rows, cols);
  for (std::size_t k = 0; k < m.data.size(); ++k) {
    m.data[k] = lo + (hi - lo) * rng::uniform01(key, offset + k);
  }
  return m;
}

// Exhaustive 2x2 grid search for the bimonotone projection: rows and
// columns non-increasing, entries on a regular grid of the box.
DenseMatrix grid_projection_2x2(const DenseMatrix& m, double lo, double hi,
                                double step) {
  const int points = static_cast<int>(std::llround((hi - lo) / step)) + 1;
  auto value = [&](int g) { return lo + g * step; };
  double best = std::numeric_limits<double>::infinity();
  DenseMatrix best_m(2, 2);
  for (int ga = 0; ga < points; ++ga) {
    const double a = value(ga);
    for (int gb = 0; gb <= ga; ++gb) {
      const double b = value(gb);
      for (int gc = 0; gc <= ga; ++gc) {
        const double c = value(gc);
        const int gd_max = std::min(gb, gc);
        for (int gd = 0; gd <= gd_max; ++gd) {
          const double d = value(gd);
          const double cost = (a - m.at(0, 0)) * (a - m.at(0, 0)) +
                              (b - m.at(0, 1)) * (b - m.at(0, 1)) +
                              (c - m.at(1, 0)) * (c - m.at(1, 0)) +
                              (d - m.at(1, 1)) * (d - m.at(1, 1));
          if (cost < best) {
            best = cost;
            best_m.at(0, 0) = a;
            best_m.at(0, 1) = b;
            best_m.at(1, 0) = c;
            best_m.at(1, 1) = d;
          }
        }
      }
    }
  }
  return best_m;
}

bool is_bimonotone_with_box(const DenseMatrix& m, double lo, double hi,
                            double tol) {
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      const double v = m.at(r, c);
      if (v < lo - tol || v > hi + tol) return false;
      if (c + 1 < m.cols && m.at(r, c + 1) > v + tol) return false;
      if (r + 1 < m.rows && m.at(r + 1, c) > v + tol) return false;
    }
  }
  return true;
}

double ls_cost(const ResponseMatrix& y, double p_obs,
               const std::array<double, 4>& q, const std::vector<int>& x) {
  double cost = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double diff = y(i, j) / p_obs - (2.0 * q[i * 2 + j] - 1.0) * x[j];
      cost += diff * diff;
    }
  }
  return cost;
}

bool grid_point_feasible(const std::array<double, 4>& q) {
  // Bimonotone under one of the four 2x2 row/column arrangements.
  const auto ok = [&](int r0, int r1, int c0, int c1) {
    const double a = q[r0 * 2 + c0], b = q[r0 * 2 + c1];
    const double c = q[r1 * 2 + c0], d = q[r1 * 2 + c1];
    return a >= b && c >= d && a >= c && b >= d;
  };
  return ok(0, 1, 0, 1) || ok(0, 1, 1, 0) || ok(1, 0, 0, 1) || ok(1, 0, 1, 0);
}

// Fully exhaustive 2x2 least squares oracle on a 0.02 ability grid,
// scanning answer vectors in the same lexicographic order as the solver.
std::vector<int> grid_ls_answers_2x2(const ResponseMatrix& y, double p_obs) {
  const double step = 0.02;
  const int points = 26;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_x;
  for (int code = 0; code < 4; ++code) {
    const std::vector<int> x = {code & 2 ? 1 : -1, code & 1 ? 1 : -1};
    for (int ga = 0; ga < points; ++ga) {
      for (int gb = 0; gb < points; ++gb) {
        for (int gc = 0; gc < points; ++gc) {
          for (int gd = 0; gd < points; ++gd) {
            const std::array<double, 4> q = {
                0.5 + ga * step, 0.5 + gb * step, 0.5 + gc * step,
                0.5 + gd * step};
            if (!grid_point_feasible(q)) continue;
            const double cost = ls_cost(y, p_obs, q, x);
            if (cost < best) {
              best = cost;
              best_x = x;
            }
          }
        }
      }
    }
  }
  return best_x;
}

}  // namespace

TEST_CASE("pava produces the nearest non-increasing sequence") {
  std::vector<double> v = {1.0, 3.0, 2.0, 0.5};
  pava_non_increasing(v);
  CHECK(v == std::vector<double>{2.0, 2.0, 2.0, 0.5});
  std::vector<double> sorted = {5.0, 4.0, 4.0, 1.0};
  pava_non_increasing(sorted);
  CHECK(sorted == std::vector<double>{5.0, 4.0, 4.0, 1.0});
}

TEST_CASE("projection leaves feasible points unchanged") {
  const DenseMatrix m(2, 3, {0.9, 0.8, 0.8, 0.7, 0.6, 0.5});
  const DenseMatrix p = project_bimonotone(m, 0.5, 1.0);
  CHECK(frob_dist(m, p) <= 1e-12);
}

TEST_CASE("projection of a 1x2 point onto the monotone box") {
  const DenseMatrix m(1, 2, {0.4, 0.8});
  const DenseMatrix p = project_bimonotone(m, 0.5, 1.0);
  CHECK(p.at(0, 0) == doctest::Approx(0.6).epsilon(1e-8));
  CHECK(p.at(0, 1) == doctest::Approx(0.6).epsilon(1e-8));

  // cross-check against a 1e-3 grid search over {a >= b} in the box
  double best = std::numeric_limits<double>::infinity();
  double best_a = 0, best_b = 0;
  for (int ga = 0; ga <= 500; ++ga) {
    const double a = 0.5 + ga * 1e-3;
    for (int gb = 0; gb <= ga; ++gb) {
      const double b = 0.5 + gb * 1e-3;
      const double cost = (a - 0.4) * (a - 0.4) + (b - 0.8) * (b - 0.8);
      if (cost < best) {
        best = cost;
        best_a = a;
        best_b = b;
      }
    }
  }
  CHECK(std::abs(best_a - p.at(0, 0)) <= 1e-2);
  CHECK(std::abs(best_b - p.at(0, 1)) <= 1e-2);
}

TEST_CASE("projection matches the 2x2 grid oracle") {
  for (int rep = 0; rep < 10; ++rep) {
    const DenseMatrix m =
        random_matrix(rng::derive_stream(2718, rep), 2, 2, 0.0, 1.5);
    const DenseMatrix p = project_bimonotone(m, 0.5, 1.0, 1e-8, 10000);
    const DenseMatrix oracle = grid_projection_2x2(m, 0.5, 1.0, 0.005);
    CHECK(frob_dist(p, oracle) <= 1e-2);
  }
}

TEST_CASE("projection output is feasible and idempotent") {
  const double tol = 1e-8;
  for (int rep = 0; rep < 10; ++rep) {
    const DenseMatrix m =
        random_matrix(rng::derive_stream(6283, rep), 4, 5, -0.5, 2.0);
    const DenseMatrix p = project_bimonotone(m, 0.5, 1.0, tol, 10000);
    CHECK(is_bimonotone_with_box(p, 0.5, 1.0, tol));
    const DenseMatrix pp = project_bimonotone(p, 0.5, 1.0, tol, 10000);
    CHECK(frob_dist(p, pp) <= 2 * tol);
  }
}

TEST_CASE("projection is non-expansive") {
  for (int rep = 0; rep < 10; ++rep) {
    const std::uint64_t key = rng::derive_stream(1618, rep);
    const DenseMatrix a = random_matrix(key, 3, 3, -0.5, 2.0, 0);
    const DenseMatrix b = random_matrix(key, 3, 3, -0.5, 2.0, 100);
    const DenseMatrix pa = project_bimonotone(a, 0.5, 1.0);
    const DenseMatrix pb = project_bimonotone(b, 0.5, 1.0);
    CHECK(frob_dist(pa, pb) <= frob_dist(a, b) + 1e-9);
  }
}

TEST_CASE("projection argument validation") {
  const DenseMatrix m(1, 1, {0.7});
  CHECK_THROWS_AS(project_bimonotone(m, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(project_bimonotone(m, 0.5, 1.0, -1.0),
                  std::invalid_argument);
}

TEST_CASE("least squares recovers noiseless data with zero cost") {
  const auto q = ProbabilityMatrix::constant(3, 3, 1.0);
  const std::vector<int> truth = {1, -1, 1};
  const TruthInstance instance(q, truth, 1.0);
  const auto y = sample_responses(instance, 3);
  const LsSolution solution = least_squares(y, 1.0);
  CHECK(solution.answers == truth);
  CHECK(solution.objective <= 1e-12);
  for (double v : solution.q_hat.data()) {
    CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("least squares dominates the generating truth") {
  for (int rep = 0; rep < 5; ++rep) {
    const std::uint64_t key = rng::derive_stream(417, rep);
    std::vector<double> abilities(3);
    for (int i = 0; i < 3; ++i) {
      abilities[i] = 0.5 + 0.5 * rng::uniform01(key, i);
    }
    const auto q = ProbabilityMatrix::from_worker_abilities(abilities, 3);
    std::vector<int> truth(3);
    for (int j = 0; j < 3; ++j) {
      truth[j] = rng::uniform01(key, 10 + j) < 0.5 ? -1 : 1;
    }
    const TruthInstance instance(q, truth, 1.0);
    const auto y = sample_responses(instance, rng::derive_stream(key, 99));

    const LsSolution solution = least_squares(y, 1.0);
    double truth_cost = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double diff = y(i, j) - (2.0 * q(i, j) - 1.0) * truth[j];
        truth_cost += diff * diff;
      }
    }
    CHECK(solution.objective <= truth_cost + 1e-6);

    // q_hat is bimonotone in the frame of the reported permutations.
    DenseMatrix permuted(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        permuted.at(r, c) = solution.q_hat(solution.pi[r], solution.sigma[c]);
      }
    }
    CHECK(is_bimonotone_with_box(permuted, 0.5, 1.0, 1e-7));
  }
}

TEST_CASE("least squares answers match the exhaustive 2x2 grid oracle") {
  for (int rep = 0; rep < 5; ++rep) {
    const std::uint64_t key = rng::derive_stream(523, rep);
    std::vector<std::int8_t> entries(4);
    for (int k = 0; k < 4; ++k) {
      entries[k] = rng::uniform01(key, k) < 0.5 ? -1 : 1;
    }
    const ResponseMatrix y(2, 2, std::move(entries));
    const LsSolution solution = least_squares(y, 1.0);
    CHECK(solution.answers == grid_ls_answers_2x2(y, 1.0));
  }
}

TEST_CASE("least squares breaks exact cost ties lexicographically") {
  // An all-zero response matrix makes every (x, pi, sigma) attain cost 0
  // with q_hat = 1/2, so the first candidate in scan order must win.
  const ResponseMatrix y(2, 2, std::vector<std::int8_t>(4, 0));
  const LsSolution solution = least_squares(y, 0.5);
  CHECK(solution.answers == std::vector<int>{-1, -1});
  CHECK(solution.pi == std::vector<int>{0, 1});
  CHECK(solution.sigma == std::vector<int>{0, 1});
  CHECK(solution.objective == 0.0);
  for (double v : solution.q_hat.data()) {
    CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("least squares refuses sizes beyond the enumeration cap") {
  const ResponseMatrix y(6, 2, std::vector<std::int8_t>(12, 1));
  CHECK_THROWS_AS(least_squares(y, 1.0), std::invalid_argument);
}
