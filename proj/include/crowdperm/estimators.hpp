#pragma once

#include <cstdint>
#include <vector>

#include "crowdperm/core_model.hpp"
#include "crowdperm/spectral.hpp"

// Answer estimators: plain majority vote, the windowed aggregator over a
// given worker ordering (WAN), and the sample-splitting composition that
// first orders workers spectrally (OBI-WAN).

namespace crowdperm {

struct WanOutput {
  std::vector<int> answers;    // length d, entries in {-1,+1}
  int k_wan = 0;               // selected window size in [1, n]
  long long window_floor = 0;  // lower limit of the window search (may be > n)
};

// Per question, the sign of the column sum of Y; a zero sum returns +1.
std::vector<int> majority_vote(const ResponseMatrix& y);

// Windowing-and-aggregating estimator. Step 1 searches window sizes
// k in {L,...,n}, L = ceil(p_obs^-1 * ln(d*n)^1.5), for the k whose top-k
// prefix sums are significant (|sum| >= sqrt(k * p_obs * ln(d*n)^1.5)) on
// the most questions, taking the smallest maximizer. Step 2 majority-votes
// the top k_wan workers under `ordering`, zero sums breaking to +1.
//
// L is clamped to at least 1. If L > n, the window search is empty and the
// estimator falls back to k_wan = n (a full majority vote); window_floor
// still records L. The d in the log factors is always the column count of
// the matrix actually passed in.
WanOutput wan(const ResponseMatrix& y, const WorkerOrdering& ordering,
              double p_obs);

// Sample-splitting estimator for an unknown worker ordering. Questions are
// split into two sets by i.i.d. fair coin (resampling with the next seed
// substream if a side comes out empty); each side is answered by wan() using
// the ordering derived from the other side's top eigenvector. Pure function
// of (y, p_obs, seed). Requires d >= 2.
std::vector<int> obi_wan(const ResponseMatrix& y, double p_obs,
                         std::uint64_t seed);

// Diagnostic: the questions whose prefix ability sums clear the windowing
// threshold, i.e. all j such that some k in [ceil(L), n] has
// sum_{i<=k} (q(pi^-1(i), j) - 1/2) >= (3/4) sqrt((k/p_obs) ln(d*n)^1.5).
// Needs the true probability matrix, so this is test-side only.
std::vector<int> easy_question_set(const ProbabilityMatrix& q,
                                   const WorkerOrdering& ordering,
                                   double p_obs);

}  // namespace crowdperm
