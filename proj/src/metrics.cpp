#include "crowdperm/metrics.hpp"

#include <stdexcept>
#include <string>

namespace crowdperm {

LossValue hamming(const std::vector<int>& xhat, const std::vector<int>& xstar) {
  if (xstar.empty()) {
    throw std::invalid_argument("hamming needs at least one question");
  }
  check_answer_vector(xstar, xstar.size(), "xstar");
  check_answer_vector(xhat, xstar.size(), "xhat");
  int mismatches = 0;
  for (std::size_t j = 0; j < xstar.size(); ++j) {
    mismatches += (xhat[j] != xstar[j]);
  }
  return LossValue{static_cast<double>(mismatches) /
                   static_cast<double>(xstar.size())};
}

double collective_intelligence(const std::vector<double>& abilities) {
  if (abilities.empty()) {
    throw std::invalid_argument("collective_intelligence of an empty crowd");
  }
  double sum = 0.0;
  for (double w : abilities) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw std::invalid_argument("ability " + std::to_string(w) +
                                  " outside [0, 1]");
    }
    const double centered = 2.0 * w - 1.0;
    sum += centered * centered;
  }
  return sum / static_cast<double>(abilities.size());
}

LossValue qstar_loss(const ProbabilityMatrix& q, const std::vector<int>& xhat,
                     const std::vector<int>& xstar) {
  const auto d = static_cast<std::size_t>(q.questions());
  check_answer_vector(xstar, d, "xstar");
  check_answer_vector(xhat, d, "xhat");
  double sum = 0.0;
  for (int j = 0; j < q.questions(); ++j) {
    if (xhat[j] == xstar[j]) continue;
    double column_weight = 0.0;
    for (int i = 0; i < q.workers(); ++i) {
      const double centered = 2.0 * q(i, j) - 1.0;
      column_weight += centered * centered;
    }
    sum += column_weight;
  }
  return LossValue{sum / (static_cast<double>(q.questions()) *
                          static_cast<double>(q.workers()))};
}

double frobenius_error(const ProbabilityMatrix& qhat,
                       const ProbabilityMatrix& qstar) {
  if (qhat.workers() != qstar.workers() ||
      qhat.questions() != qstar.questions()) {
    throw std::invalid_argument("frobenius_error dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < qhat.data().size(); ++k) {
    const double diff = qhat.data()[k] - qstar.data()[k];
    sum += diff * diff;
  }
  return sum / (static_cast<double>(qhat.workers()) *
                static_cast<double>(qhat.questions()));
}

}  // namespace crowdperm
