#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Core observation model for binary crowd labeling: a probability matrix
// holding per-(worker, question) correctness probabilities, a ground-truth
// instance, the sampled response matrix, and membership tests for the
// nested model classes (Dawid-Skene, intermediate, permutation-based).

namespace crowdperm {

// n x d matrix whose (i, j) entry is the probability that worker i answers
// question j correctly. Entries must lie in [0.5, 1] unless the matrix is
// explicitly flagged as allowing adversarial workers, in which case the
// range widens to [0, 1]. The flag exists so that accidental violations of
// the permutation-based class surface as construction errors.
class ProbabilityMatrix {
 public:
  ProbabilityMatrix(int workers, int questions, std::vector<double> entries,
                    bool allows_adversarial = false);

  // All entries equal to `value`.
  static ProbabilityMatrix constant(int workers, int questions, double value,
                                    bool allows_adversarial = false);

  // Dawid-Skene style matrix: row i constant at abilities[i].
  static ProbabilityMatrix from_worker_abilities(
      const std::vector<double>& abilities, int questions,
      bool allows_adversarial = false);

  int workers() const { return workers_; }
  int questions() const { return questions_; }
  bool allows_adversarial() const { return allows_adversarial_; }

  double operator()(int worker, int question) const {
    return entries_[static_cast<std::size_t>(worker) * questions_ + question];
  }

  const std::vector<double>& data() const { return entries_; }

  // Mean of row `worker`; used as the worker's scalar ability.
  double worker_ability(int worker) const;

 private:
  int workers_;
  int questions_;
  std::vector<double> entries_;  // row-major
  bool allows_adversarial_;
};

// Ground truth: the probability matrix, the correct answers in {-1,+1}^d,
// and the probability that any (worker, question) pair is observed.
//
// p_obs = 0 is accepted so that the degenerate all-unobserved matrix can be
// sampled; estimators that divide by p_obs reject it at their own boundary.
struct TruthInstance {
  ProbabilityMatrix q;
  std::vector<int> truth;
  double p_obs;

  TruthInstance(ProbabilityMatrix q_in, std::vector<int> truth_in,
                double p_obs_in);
};

// Observed n x d response matrix with entries in {-1, 0, +1}; 0 marks an
// unasked pair.
class ResponseMatrix {
 public:
  ResponseMatrix(int workers, int questions, std::vector<std::int8_t> entries);

  int workers() const { return workers_; }
  int questions() const { return questions_; }

  int operator()(int worker, int question) const {
    return entries_[static_cast<std::size_t>(worker) * questions_ + question];
  }

  const std::vector<std::int8_t>& data() const { return entries_; }

 private:
  int workers_;
  int questions_;
  std::vector<std::int8_t> entries_;  // row-major
};

// Class membership of a probability matrix. The classes nest:
// Dawid-Skene c intermediate c permutation-based.
struct ModelClassReport {
  bool in_ds = false;
  bool in_int = false;
  bool in_perm = false;
  double tolerance = 0.0;
};

// Samples one response matrix: each entry independently equals truth[j] with
// probability p_obs * q(i,j), -truth[j] with probability p_obs * (1-q(i,j)),
// and 0 otherwise. Pure function of (instance, seed).
ResponseMatrix sample_responses(const TruthInstance& instance,
                                std::uint64_t seed);

// Tests membership in the three model classes within absolute tolerance tol.
//
// in_ds:   all columns equal (every row constant) and entries in [0.5, 1].
// in_int:  Q - 1/2 factors as r (1-h)^T with r in [0, 1/2]^n and
//          (1-h) in [0, 1]^d. Checked with 2x2 minors of Q - 1/2 anchored
//          at the largest entry, then one explicit factorization attempt.
// in_perm: entries in [0.5, 1] and some row/column permutation makes every
//          row and column non-increasing. Rows are ordered by descending
//          row sum (entrywise domination between rows forces that order),
//          columns by descending column sum, ties kept in index order.
ModelClassReport classify_matrix(const ProbabilityMatrix& q,
                                 double tol = 1e-9);

// Empirical observation probability: nonzero entries / (n * d).
double estimate_pobs(const ResponseMatrix& y);

// Validates a {-1,+1} answer vector of the expected length; throws
// std::invalid_argument otherwise. `what` names the argument in errors.
void check_answer_vector(const std::vector<int>& x, std::size_t expected_size,
                         const std::string& what);

}  // namespace crowdperm
