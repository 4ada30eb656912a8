#pragma once

#include <vector>

#include "crowdperm/core_model.hpp"

// Error metrics for answer estimates. All of these are exact floating-point
// formulas with no tolerance knobs.

namespace crowdperm {

// A normalized loss in [0, 1].
struct LossValue {
  double value = 0.0;
};

// Fraction of questions answered differently: (1/d) sum_j 1{xhat_j != xstar_j}.
LossValue hamming(const std::vector<int>& xhat, const std::vector<int>& xstar);

// (1/n) sum_i (2 w_i - 1)^2 for a vector of worker abilities in [0, 1].
// Measures how much aggregate signal the crowd carries.
double collective_intelligence(const std::vector<double>& abilities);

// Difficulty-weighted Hamming error: each misanswered question j contributes
// its column's collective intelligence (1/n) sum_i (2 q_ij - 1)^2, averaged
// over questions. For a rank-one matrix q = w 1^T this factors exactly into
// collective_intelligence(w) * hamming(xhat, xstar).
LossValue qstar_loss(const ProbabilityMatrix& q, const std::vector<int>& xhat,
                     const std::vector<int>& xstar);

// (1/(d*n)) * squared Frobenius distance between two probability matrices.
double frobenius_error(const ProbabilityMatrix& qhat,
                       const ProbabilityMatrix& qstar);

}  // namespace crowdperm
