#include "crowdperm/spectral.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crowdperm/rng.hpp"

namespace crowdperm {

WorkerOrdering::WorkerOrdering(std::vector<int> order_in)
    : order(std::move(order_in)) {
  std::vector<char> seen(order.size(), 0);
  for (int w : order) {
    if (w < 0 || static_cast<std::size_t>(w) >= order.size() || seen[w]) {
      throw std::invalid_argument(
          "worker ordering must be a permutation of 0..n-1");
    }
    seen[w] = 1;
  }
  if (order.empty()) {
    throw std::invalid_argument("worker ordering must be nonempty");
  }
}

WorkerOrdering WorkerOrdering::identity(int workers) {
  std::vector<int> order(workers);
  std::iota(order.begin(), order.end(), 0);
  return WorkerOrdering(std::move(order));
}

PowerIterationError::PowerIterationError(double residual_in,
                                         std::vector<double> last_iterate_in)
    : std::runtime_error("power iteration did not converge; last residual " +
                         std::to_string(residual_in)),
      residual(residual_in), last_iterate(std::move(last_iterate_in)) {}

namespace {

// Deterministic start vector: the all-ones direction plus a fixed
// hash-driven perturbation. The perturbation breaks the exact orthogonality
// that discrete response matrices can exhibit between the all-ones vector
// and their top eigenvector, while staying aligned with the consensus
// direction that dominates in well-separated instances.
Eigen::VectorXd start_vector(int n) {
  constexpr std::uint64_t kStartKey = 0x9d8cbb2f1ull;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = 1.0 + 0.25 * (rng::uniform01(kStartKey, i) - 0.5);
  }
  v /= v.norm();
  return v;
}

// Flip u in place if the squared mass on negative entries exceeds the mass
// on positive entries; an exact tie keeps the current sign.
void apply_sign_rule(Eigen::VectorXd& u) {
  double positive = 0.0, negative = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double sq = u[i] * u[i];
    if (u[i] > 0.0) {
      positive += sq;
    } else if (u[i] < 0.0) {
      negative += sq;
    }
  }
  if (positive < negative) u = -u;
}

}  // namespace

TopEigenvector top_eigenvector(const ResponseMatrix& y, double tol,
                               int max_iter) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("eigenvector tolerance must be positive");
  }
  if (max_iter < 1) {
    throw std::invalid_argument("max_iter must be at least 1");
  }
  const int n = y.workers();
  const int d = y.questions();

  Eigen::MatrixXd responses(n, d);
  bool all_zero = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      const int v = y(i, j);
      responses(i, j) = static_cast<double>(v);
      all_zero = all_zero && v == 0;
    }
  }

  TopEigenvector result;
  if (all_zero) {
    // Any unit vector is an eigenvector of the zero matrix; use the
    // deterministic start vector.
    result.vector.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    result.value = 0.0;
    result.degenerate = true;
    return result;
  }

  Eigen::MatrixXd gram(n, n);
  gram.noalias() = responses * responses.transpose();

  Eigen::VectorXd u = start_vector(n);
  for (int iter = 1; iter <= max_iter; ++iter) {
    Eigen::VectorXd next = gram * u;
    const double norm = next.norm();
    if (norm == 0.0) {
      // Iterate fell into the kernel; restart. If the start itself lies in
      // the kernel this never progresses and the loop ends in the explicit
      // non-convergence failure.
      next = start_vector(n);
    } else {
      next /= norm;
    }
    const double aligned_diff =
        std::min((next - u).norm(), (next + u).norm());
    u = next;
    if (aligned_diff <= tol) {
      const Eigen::VectorXd gu = gram * u;
      const double lambda = u.dot(gu);
      const double residual = (gu - lambda * u).norm();
      if (residual <= tol * std::max(lambda, 1.0)) {
        apply_sign_rule(u);
        result.vector.assign(u.data(), u.data() + n);
        result.value = lambda;
        result.iterations = iter;
        return result;
      }
    }
  }
  const Eigen::VectorXd gu = gram * u;
  const double lambda = u.dot(gu);
  apply_sign_rule(u);
  throw PowerIterationError((gu - lambda * u).norm(),
                            std::vector<double>(u.data(), u.data() + n));
}

WorkerOrdering ordering_from_vector(const std::vector<double>& u) {
  for (double v : u) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("ordering vector entries must be finite");
    }
  }
  std::vector<int> order(u.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return u[a] > u[b]; });
  return WorkerOrdering(std::move(order));
}

}  // namespace crowdperm
