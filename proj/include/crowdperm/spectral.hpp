#pragma once

#include <stdexcept>
#include <vector>

#include "crowdperm/core_model.hpp"

// Spectral worker ordering: the top eigenvector of Y Y^T ranks workers by
// how strongly their answers correlate with the crowd consensus.

namespace crowdperm {

// Permutation of the n workers, best first: order[0] is the index of the
// highest-ranked worker.
struct WorkerOrdering {
  std::vector<int> order;

  explicit WorkerOrdering(std::vector<int> order_in);

  static WorkerOrdering identity(int workers);

  int workers() const { return static_cast<int>(order.size()); }
};

struct TopEigenvector {
  std::vector<double> vector;  // unit l2 norm
  double value = 0.0;          // Rayleigh quotient u^T (Y Y^T) u
  int iterations = 0;
  bool degenerate = false;     // Y was all zero; vector is (1,...,1)/sqrt(n)
};

class PowerIterationError : public std::runtime_error {
 public:
  PowerIterationError(double residual_in, std::vector<double> last_iterate_in);

  double residual;                   // ||G u - lambda u||_2 at the last iterate
  std::vector<double> last_iterate;  // unit vector, sign rule applied
};

// Top eigenvector of the Gram matrix Y Y^T by power iteration from a
// deterministic start vector (the all-ones direction with a fixed hashed
// perturbation, so no discrete response matrix can be exactly blind to it).
// Converges when successive iterates differ by <= tol in l2 after sign
// alignment and the eigen-residual satisfies
// ||G u - lambda u|| <= tol * max(lambda, 1). The global sign is chosen so
// that the squared mass on positive entries is at least the squared mass on
// negative entries; an exact tie keeps the iterate's sign.
//
// An all-zero Y returns (1,...,1)/sqrt(n) with the degenerate flag set.
// Throws PowerIterationError if not converged within max_iter.
TopEigenvector top_eigenvector(const ResponseMatrix& y, double tol = 1e-10,
                               int max_iter = 1000);

// Workers sorted by descending entry of u, ties broken by ascending index.
WorkerOrdering ordering_from_vector(const std::vector<double>& u);

}  // namespace crowdperm
