#include "crowdperm/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crowdperm/rng.hpp"

namespace crowdperm {

namespace {

void check_dimensions(int workers, int questions) {
  if (workers <= 0 || questions <= 0) {
    throw std::invalid_argument("matrix dimensions must be positive, got " +
                                std::to_string(workers) + " x " +
                                std::to_string(questions));
  }
}

}  // namespace

ProbabilityMatrix::ProbabilityMatrix(int workers, int questions,
                                     std::vector<double> entries,
                                     bool allows_adversarial)
    : workers_(workers), questions_(questions), entries_(std::move(entries)),
      allows_adversarial_(allows_adversarial) {
  check_dimensions(workers, questions);
  if (entries_.size() != static_cast<std::size_t>(workers) * questions) {
    throw std::invalid_argument("entry count does not match dimensions");
  }
  const double lower = allows_adversarial_ ? 0.0 : 0.5;
  for (double v : entries_) {
    if (!(v >= lower && v <= 1.0)) {
      throw std::invalid_argument(
          "probability entry " + std::to_string(v) + " outside [" +
          std::to_string(lower) + ", 1]; adversarial entries need the flag");
    }
  }
}

ProbabilityMatrix ProbabilityMatrix::constant(int workers, int questions,
                                              double value,
                                              bool allows_adversarial) {
  return ProbabilityMatrix(
      workers, questions,
      std::vector<double>(static_cast<std::size_t>(workers) * questions,
                          value),
      allows_adversarial);
}

ProbabilityMatrix ProbabilityMatrix::from_worker_abilities(
    const std::vector<double>& abilities, int questions,
    bool allows_adversarial) {
  const int workers = static_cast<int>(abilities.size());
  check_dimensions(workers, questions);
  std::vector<double> entries(static_cast<std::size_t>(workers) * questions);
  for (int i = 0; i < workers; ++i) {
    std::fill_n(entries.begin() + static_cast<std::size_t>(i) * questions,
                questions, abilities[i]);
  }
  return ProbabilityMatrix(workers, questions, std::move(entries),
                           allows_adversarial);
}

double ProbabilityMatrix::worker_ability(int worker) const {
  const auto begin = entries_.begin() +
                     static_cast<std::size_t>(worker) * questions_;
  return std::accumulate(begin, begin + questions_, 0.0) / questions_;
}

TruthInstance::TruthInstance(ProbabilityMatrix q_in, std::vector<int> truth_in,
                             double p_obs_in)
    : q(std::move(q_in)), truth(std::move(truth_in)), p_obs(p_obs_in) {
  check_answer_vector(truth, static_cast<std::size_t>(q.questions()), "truth");
  if (!(p_obs >= 0.0 && p_obs <= 1.0)) {
    throw std::invalid_argument("p_obs must lie in [0, 1]");
  }
}

ResponseMatrix::ResponseMatrix(int workers, int questions,
                               std::vector<std::int8_t> entries)
    : workers_(workers), questions_(questions), entries_(std::move(entries)) {
  check_dimensions(workers, questions);
  if (entries_.size() != static_cast<std::size_t>(workers) * questions) {
    throw std::invalid_argument("entry count does not match dimensions");
  }
  for (std::int8_t v : entries_) {
    if (v < -1 || v > 1) {
      throw std::invalid_argument("response entries must be -1, 0 or +1");
    }
  }
}

ResponseMatrix sample_responses(const TruthInstance& instance,
                                std::uint64_t seed) {
  const int n = instance.q.workers();
  const int d = instance.q.questions();
  std::vector<std::int8_t> entries(static_cast<std::size_t>(n) * d);
  const double p = instance.p_obs;
  std::size_t cell = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j, ++cell) {
      const double u = rng::uniform01(seed, cell);
      std::int8_t value = 0;
      if (u < p * instance.q(i, j)) {
        value = static_cast<std::int8_t>(instance.truth[j]);
      } else if (u < p) {
        value = static_cast<std::int8_t>(-instance.truth[j]);
      }
      entries[cell] = value;
    }
  }
  return ResponseMatrix(n, d, std::move(entries));
}

namespace {

// Indices 0..size-1 sorted by descending key, ties in ascending index order.
std::vector<int> sort_descending(const std::vector<double>& keys) {
  std::vector<int> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return keys[a] > keys[b]; });
  return idx;
}

bool entries_in_class_range(const ProbabilityMatrix& q, double tol) {
  return std::all_of(q.data().begin(), q.data().end(),
                     [tol](double v) { return v >= 0.5 - tol; });
}

bool is_dawid_skene(const ProbabilityMatrix& q, double tol) {
  if (!entries_in_class_range(q, tol)) return false;
  for (int i = 0; i < q.workers(); ++i) {
    double lo = q(i, 0), hi = q(i, 0);
    for (int j = 1; j < q.questions(); ++j) {
      lo = std::min(lo, q(i, j));
      hi = std::max(hi, q(i, j));
    }
    if (hi - lo > tol) return false;
  }
  return true;
}

// Rank-one test of M = Q - 1/2 via minors anchored at the largest entry,
// followed by the explicit factorization r (1-h)^T normalized so that the
// anchor column gives r and the anchor row gives 1-h.
bool is_intermediate(const ProbabilityMatrix& q, double tol) {
  const int n = q.workers();
  const int d = q.questions();
  int ai = 0, aj = 0;
  double anchor = -1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      const double m = q(i, j) - 0.5;
      if (m < -tol) return false;  // negative entries are not factorizable
      if (m > anchor) {
        anchor = m;
        ai = i;
        aj = j;
      }
    }
  }
  if (anchor <= tol) return true;  // Q ~ all 1/2: r = 0, any h
  for (int i = 0; i < n; ++i) {
    const double r_i = q(i, aj) - 0.5;
    for (int j = 0; j < d; ++j) {
      const double minor =
          (q(i, j) - 0.5) * anchor - r_i * (q(ai, j) - 0.5);
      if (std::abs(minor) > tol) return false;
    }
  }
  // Factorization: r_i = M(i, aj) in [0, 1/2] holds because the anchor is
  // the largest entry and Q <= 1; (1-h)_j = M(ai, j) / anchor in [0, 1].
  // Verify the reconstruction within tol.
  for (int i = 0; i < n; ++i) {
    const double r_i = q(i, aj) - 0.5;
    if (r_i < -tol || r_i > 0.5 + tol) return false;
    for (int j = 0; j < d; ++j) {
      const double one_minus_h = (q(ai, j) - 0.5) / anchor;
      if (one_minus_h < -tol || one_minus_h > 1.0 + tol) return false;
      if (std::abs((q(i, j) - 0.5) - r_i * one_minus_h) > tol) return false;
    }
  }
  return true;
}

bool is_permutation_class(const ProbabilityMatrix& q, double tol) {
  if (!entries_in_class_range(q, tol)) return false;
  const int n = q.workers();
  const int d = q.questions();
  std::vector<double> row_sums(n, 0.0), col_sums(d, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      row_sums[i] += q(i, j);
      col_sums[j] += q(i, j);
    }
  }
  const std::vector<int> rows = sort_descending(row_sums);
  const std::vector<int> cols = sort_descending(col_sums);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < d; ++c) {
      const double v = q(rows[r], cols[c]);
      if (c + 1 < d && q(rows[r], cols[c + 1]) > v + tol) return false;
      if (r + 1 < n && q(rows[r + 1], cols[c]) > v + tol) return false;
    }
  }
  return true;
}

}  // namespace

ModelClassReport classify_matrix(const ProbabilityMatrix& q, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("classification tolerance must be positive");
  }
  ModelClassReport report;
  report.tolerance = tol;
  report.in_ds = is_dawid_skene(q, tol);
  report.in_int = is_intermediate(q, tol);
  report.in_perm = is_permutation_class(q, tol);
  return report;
}

double estimate_pobs(const ResponseMatrix& y) {
  const std::size_t nonzero =
      y.data().size() - std::count(y.data().begin(), y.data().end(),
                                   static_cast<std::int8_t>(0));
  return static_cast<double>(nonzero) / static_cast<double>(y.data().size());
}

void check_answer_vector(const std::vector<int>& x, std::size_t expected_size,
                         const std::string& what) {
  if (x.size() != expected_size) {
    throw std::invalid_argument(what + " has length " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(expected_size));
  }
  for (int v : x) {
    if (v != -1 && v != 1) {
      throw std::invalid_argument(what + " entries must be exactly -1 or +1");
    }
  }
}

}  // namespace crowdperm
