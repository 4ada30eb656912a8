#include "crowdperm/estimators.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "crowdperm/rng.hpp"

namespace crowdperm {

namespace {

// ln(d*n)^1.5, the log factor shared by the window floor and the
// significance threshold.
double log_factor(int workers, int questions) {
  const double ln = std::log(static_cast<double>(workers) *
                             static_cast<double>(questions));
  return std::pow(ln, 1.5);
}

long long window_floor_for(int workers, int questions, double p_obs) {
  const double raw = log_factor(workers, questions) / p_obs;
  if (raw >= static_cast<double>(std::numeric_limits<long long>::max())) {
    return std::numeric_limits<long long>::max();
  }
  return std::max(1ll, static_cast<long long>(std::ceil(raw)));
}

void check_pobs(double p_obs) {
  if (!(p_obs > 0.0 && p_obs <= 1.0)) {
    throw std::invalid_argument("p_obs must lie in (0, 1]");
  }
}

int sign_to_answer(long long sum) { return sum >= 0 ? 1 : -1; }

}  // namespace

std::vector<int> majority_vote(const ResponseMatrix& y) {
  const int n = y.workers();
  const int d = y.questions();
  std::vector<long long> sums(d, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      sums[j] += y(i, j);
    }
  }
  std::vector<int> answers(d);
  for (int j = 0; j < d; ++j) {
    answers[j] = sign_to_answer(sums[j]);
  }
  return answers;
}

WanOutput wan(const ResponseMatrix& y, const WorkerOrdering& ordering,
              double p_obs) {
  check_pobs(p_obs);
  const int n = y.workers();
  const int d = y.questions();
  if (ordering.workers() != n) {
    throw std::invalid_argument("ordering size does not match worker count");
  }

  WanOutput out;
  out.window_floor = window_floor_for(n, d, p_obs);

  const double lf = log_factor(n, d);
  std::vector<long long> prefix(d, 0);
  int best_k = n;  // fallback when the window search is empty (floor > n)
  if (out.window_floor <= n) {
    int best_count = -1;
    for (int k = 1; k <= n; ++k) {
      const int worker = ordering.order[k - 1];
      for (int j = 0; j < d; ++j) {
        prefix[j] += y(worker, j);
      }
      if (k < out.window_floor) continue;
      const double threshold = std::sqrt(static_cast<double>(k) * p_obs * lf);
      int count = 0;
      for (int j = 0; j < d; ++j) {
        count += static_cast<double>(std::llabs(prefix[j])) >= threshold;
      }
      if (count > best_count) {  // smallest maximizing k wins ties
        best_count = count;
        best_k = k;
      }
    }
  }
  out.k_wan = best_k;

  std::fill(prefix.begin(), prefix.end(), 0);
  for (int k = 0; k < out.k_wan; ++k) {
    const int worker = ordering.order[k];
    for (int j = 0; j < d; ++j) {
      prefix[j] += y(worker, j);
    }
  }
  out.answers.resize(d);
  for (int j = 0; j < d; ++j) {
    out.answers[j] = sign_to_answer(prefix[j]);
  }
  return out;
}

namespace {

// Columns of y restricted to `questions`, in the listed order.
ResponseMatrix take_columns(const ResponseMatrix& y,
                            const std::vector<int>& questions) {
  const int n = y.workers();
  const int sub_d = static_cast<int>(questions.size());
  std::vector<std::int8_t> entries(static_cast<std::size_t>(n) * sub_d);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < sub_d; ++c) {
      entries[static_cast<std::size_t>(i) * sub_d + c] =
          static_cast<std::int8_t>(y(i, questions[c]));
    }
  }
  return ResponseMatrix(n, sub_d, std::move(entries));
}

WorkerOrdering ordering_for_half(const ResponseMatrix& half) {
  try {
    return ordering_from_vector(top_eigenvector(half).vector);
  } catch (const PowerIterationError& err) {
    // A stalled iteration means the top eigenvalues are nearly tied, so any
    // vector in their span ranks workers equally well; use the last iterate.
    return ordering_from_vector(err.last_iterate);
  }
}

}  // namespace

std::vector<int> obi_wan(const ResponseMatrix& y, double p_obs,
                         std::uint64_t seed) {
  check_pobs(p_obs);
  const int d = y.questions();
  if (d < 2) {
    throw std::invalid_argument("obi_wan needs at least two questions");
  }

  std::vector<int> side0, side1;
  for (std::uint64_t attempt = 0;; ++attempt) {
    side0.clear();
    side1.clear();
    const std::uint64_t coin_key = rng::derive_stream(seed, attempt);
    for (int j = 0; j < d; ++j) {
      (rng::uniform01(coin_key, static_cast<std::uint64_t>(j)) < 0.5
           ? side0
           : side1)
          .push_back(j);
    }
    if (!side0.empty() && !side1.empty()) break;
  }

  const ResponseMatrix y0 = take_columns(y, side0);
  const ResponseMatrix y1 = take_columns(y, side1);

  // When a side's window floor reaches the worker count, WAN on that side
  // majority-votes all workers for any ordering, so the eigenvector of the
  // opposite side is skipped; the output is unchanged.
  const bool ordering_matters_0 =
      window_floor_for(y.workers(), y0.questions(), p_obs) < y.workers();
  const bool ordering_matters_1 =
      window_floor_for(y.workers(), y1.questions(), p_obs) < y.workers();

  const WorkerOrdering pi0 = ordering_matters_1
                                 ? ordering_for_half(y0)
                                 : WorkerOrdering::identity(y.workers());
  const WorkerOrdering pi1 = ordering_matters_0
                                 ? ordering_for_half(y1)
                                 : WorkerOrdering::identity(y.workers());

  const WanOutput wan0 = wan(y0, pi1, p_obs);
  const WanOutput wan1 = wan(y1, pi0, p_obs);

  std::vector<int> answers(d);
  for (std::size_t c = 0; c < side0.size(); ++c) {
    answers[side0[c]] = wan0.answers[c];
  }
  for (std::size_t c = 0; c < side1.size(); ++c) {
    answers[side1[c]] = wan1.answers[c];
  }
  return answers;
}

std::vector<int> easy_question_set(const ProbabilityMatrix& q,
                                   const WorkerOrdering& ordering,
                                   double p_obs) {
  check_pobs(p_obs);
  const int n = q.workers();
  const int d = q.questions();
  if (ordering.workers() != n) {
    throw std::invalid_argument("ordering size does not match worker count");
  }

  const double lf = log_factor(n, d);
  const long long k_min = window_floor_for(n, d, p_obs);
  std::vector<int> easy;
  if (k_min > n) return easy;

  std::vector<char> selected(d, 0);
  std::vector<double> prefix(d, 0.0);
  for (int k = 1; k <= n; ++k) {
    const int worker = ordering.order[k - 1];
    for (int j = 0; j < d; ++j) {
      prefix[j] += q(worker, j) - 0.5;
    }
    if (k < k_min) continue;
    const double threshold =
        0.75 * std::sqrt(static_cast<double>(k) / p_obs * lf);
    for (int j = 0; j < d; ++j) {
      if (!selected[j] && prefix[j] >= threshold) selected[j] = 1;
    }
  }
  for (int j = 0; j < d; ++j) {
    if (selected[j]) easy.push_back(j);
  }
  return easy;
}

}  // namespace crowdperm
