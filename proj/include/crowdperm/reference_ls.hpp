#pragma once

#include <stdexcept>
#include <vector>

#include "crowdperm/core_model.hpp"
#include "crowdperm/dense_matrix.hpp"

// Desk-scale reference solver for the least squares estimator over the
// permutation-based class: exhaustive enumeration of answer vectors and
// permutation pairs, with the inner minimization done as a Euclidean
// projection onto bimonotone matrices.

namespace crowdperm {

class DykstraError : public std::runtime_error {
 public:
  explicit DykstraError(double last_change_in);
  double last_change;  // Frobenius movement of the final sweep
};

// Euclidean projection of m onto
//   { A : rows non-increasing, columns non-increasing, entries in [lo, hi] },
// computed by Dykstra's alternating projections (with correction terms) over
// the three convex sets: row-wise pool-adjacent-violators, column-wise
// pool-adjacent-violators, and the box clip. Terminates when a full sweep
// moves the iterate by <= tol in Frobenius norm; throws DykstraError after
// max_sweeps.
DenseMatrix project_bimonotone(const DenseMatrix& m, double lo, double hi,
                               double tol = 1e-8, int max_sweeps = 10000);

// In-place isotonic regression: nearest non-increasing sequence in l2.
// Implemented as non-decreasing pool-adjacent-violators on the reversed
// sequence.
void pava_non_increasing(std::vector<double>& values);

struct LsSolution {
  std::vector<int> answers;     // length d, entries in {-1,+1}
  ProbabilityMatrix q_hat;      // entries in [0.5, 1], bimonotone under (pi, sigma)
  double objective = 0.0;       // attained squared Frobenius cost
  std::vector<int> pi;          // worker ranks: pi[r] = worker at rank r (best first)
  std::vector<int> sigma;       // question ranks: sigma[r] = question at rank r
};

// Minimizes || Y / p_obs - (2Q - 1 1^T) diag(x) ||_F^2 over x in {-1,+1}^d
// and Q in the permutation-based class intersected with [0.5, 1]^{n x d},
// by enumerating every x and every permutation pair and projecting
//   (1/2) (Y / p_obs) diag(x) + 1/2
// onto the bimonotone set in the permuted frame. Exact cost ties return the
// lexicographically smallest (x, pi, sigma).
//
// Enumeration cost is 2^d * n! * d! projections, so sizes above
// max_dim (default 5) are refused rather than approximated.
LsSolution least_squares(const ResponseMatrix& y, double p_obs,
                         int max_dim = 5);

}  // namespace crowdperm
