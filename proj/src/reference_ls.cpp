#include "crowdperm/reference_ls.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace crowdperm {

DykstraError::DykstraError(double last_change_in)
    : std::runtime_error(
          "bimonotone projection did not converge; last sweep moved " +
          std::to_string(last_change_in)),
      last_change(last_change_in) {}

namespace {

// Non-decreasing pool-adjacent-violators on values[0..size), equal weights.
void pava_non_decreasing(double* values, std::size_t size) {
  if (size < 2) return;
  // Blocks of pooled entries: (mean, count), maintained as a stack.
  std::vector<std::pair<double, std::size_t>> blocks;
  blocks.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    blocks.emplace_back(values[i], 1);
    while (blocks.size() > 1 &&
           blocks[blocks.size() - 2].first > blocks.back().first) {
      const auto [mb, cb] = blocks.back();
      blocks.pop_back();
      auto& [ma, ca] = blocks.back();
      ma = (ma * ca + mb * cb) / static_cast<double>(ca + cb);
      ca += cb;
    }
  }
  std::size_t pos = 0;
  for (const auto& [mean, count] : blocks) {
    std::fill_n(values + pos, count, mean);
    pos += count;
  }
}

void project_rows_non_increasing(DenseMatrix& m) {
  std::vector<double> reversed(m.cols);
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      reversed[c] = m.at(r, m.cols - 1 - c);
    }
    pava_non_decreasing(reversed.data(), reversed.size());
    for (int c = 0; c < m.cols; ++c) {
      m.at(r, m.cols - 1 - c) = reversed[c];
    }
  }
}

void project_cols_non_increasing(DenseMatrix& m) {
  std::vector<double> reversed(m.rows);
  for (int c = 0; c < m.cols; ++c) {
    for (int r = 0; r < m.rows; ++r) {
      reversed[r] = m.at(m.rows - 1 - r, c);
    }
    pava_non_decreasing(reversed.data(), reversed.size());
    for (int r = 0; r < m.rows; ++r) {
      m.at(m.rows - 1 - r, c) = reversed[r];
    }
  }
}

void project_box(DenseMatrix& m, double lo, double hi) {
  for (double& v : m.data) {
    v = std::clamp(v, lo, hi);
  }
}

double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.data.size(); ++k) {
    const double diff = a.data[k] - b.data[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace

void pava_non_increasing(std::vector<double>& values) {
  std::reverse(values.begin(), values.end());
  pava_non_decreasing(values.data(), values.size());
  std::reverse(values.begin(), values.end());
}

DenseMatrix project_bimonotone(const DenseMatrix& m, double lo, double hi,
                               double tol, int max_sweeps) {
  if (!(lo < hi)) {
    throw std::invalid_argument("projection box needs lo < hi");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("projection tolerance must be positive");
  }

  DenseMatrix x = m;
  const std::size_t cells = x.data.size();
  std::vector<double> inc_rows(cells, 0.0), inc_cols(cells, 0.0),
      inc_box(cells, 0.0);
  DenseMatrix previous = x;

  double last_change = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    // Dykstra: each set re-adds its stored correction before projecting.
    for (std::size_t k = 0; k < cells; ++k) x.data[k] += inc_rows[k];
    DenseMatrix before = x;
    project_rows_non_increasing(x);
    for (std::size_t k = 0; k < cells; ++k) {
      inc_rows[k] = before.data[k] - x.data[k];
    }

    for (std::size_t k = 0; k < cells; ++k) x.data[k] += inc_cols[k];
    before = x;
    project_cols_non_increasing(x);
    for (std::size_t k = 0; k < cells; ++k) {
      inc_cols[k] = before.data[k] - x.data[k];
    }

    for (std::size_t k = 0; k < cells; ++k) x.data[k] += inc_box[k];
    before = x;
    project_box(x, lo, hi);
    for (std::size_t k = 0; k < cells; ++k) {
      inc_box[k] = before.data[k] - x.data[k];
    }

    last_change = frobenius_distance(x, previous);
    if (last_change <= tol) {
      return x;
    }
    previous = x;
  }
  throw DykstraError(last_change);
}

namespace {

// x vectors in {-1,+1}^d in lexicographic order with -1 < +1.
std::vector<int> answer_vector_for_code(std::uint64_t code, int d) {
  std::vector<int> x(d);
  for (int j = 0; j < d; ++j) {
    x[j] = (code >> (d - 1 - j)) & 1 ? 1 : -1;
  }
  return x;
}

}  // namespace

LsSolution least_squares(const ResponseMatrix& y, double p_obs, int max_dim) {
  if (!(p_obs > 0.0 && p_obs <= 1.0)) {
    throw std::invalid_argument("p_obs must lie in (0, 1]");
  }
  const int n = y.workers();
  const int d = y.questions();
  if (n > max_dim || d > max_dim) {
    throw std::invalid_argument(
        "least_squares enumerates 2^d * n! * d! candidates and refuses " +
        std::to_string(n) + " x " + std::to_string(d) + " (cap " +
        std::to_string(max_dim) + ")");
  }

  const double proj_tol = 1e-10;
  const int proj_sweeps = 20000;

  std::vector<int> identity_rows(n), identity_cols(d);
  std::iota(identity_rows.begin(), identity_rows.end(), 0);
  std::iota(identity_cols.begin(), identity_cols.end(), 0);

  bool have_best = false;
  double best_cost = 0.0;
  std::vector<int> best_x, best_pi, best_sigma;
  DenseMatrix best_q;

  DenseMatrix scaled(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      scaled.at(i, j) = y(i, j) / p_obs;
    }
  }

  for (std::uint64_t code = 0; code < (1ull << d); ++code) {
    const std::vector<int> x = answer_vector_for_code(code, d);
    // Target of the inner projection: (1/2) (Y/p) diag(x) + 1/2; the cost at
    // a feasible Q is 4 * ||target - Q||_F^2.
    DenseMatrix target(n, d);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) {
        target.at(i, j) = 0.5 * scaled.at(i, j) * x[j] + 0.5;
      }
    }

    std::vector<int> pi = identity_rows;  // pi[r] = row at canonical rank r
    do {
      std::vector<int> sigma = identity_cols;
      do {
        DenseMatrix permuted(n, d);
        for (int r = 0; r < n; ++r) {
          for (int c = 0; c < d; ++c) {
            permuted.at(r, c) = target.at(pi[r], sigma[c]);
          }
        }
        const DenseMatrix projected =
            project_bimonotone(permuted, 0.5, 1.0, proj_tol, proj_sweeps);
        double cost = 0.0;
        for (std::size_t k = 0; k < projected.data.size(); ++k) {
          const double diff = permuted.data[k] - projected.data[k];
          cost += diff * diff;
        }
        cost *= 4.0;
        // Iteration order is lexicographic in (x, pi, sigma), so strict
        // improvement keeps the lexicographically smallest tie.
        if (!have_best || cost < best_cost) {
          have_best = true;
          best_cost = cost;
          best_x = x;
          best_pi = pi;
          best_sigma = sigma;
          best_q = DenseMatrix(n, d);
          for (int r = 0; r < n; ++r) {
            for (int c = 0; c < d; ++c) {
              best_q.at(pi[r], sigma[c]) = projected.at(r, c);
            }
          }
        }
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    } while (std::next_permutation(pi.begin(), pi.end()));
  }

  // Clamp away projection round-off so the matrix type accepts the entries.
  for (double& v : best_q.data) {
    v = std::clamp(v, 0.5, 1.0);
  }
  return LsSolution{best_x,
                    ProbabilityMatrix(n, d, std::move(best_q.data)),
                    best_cost, best_pi, best_sigma};
}

}  // namespace crowdperm
