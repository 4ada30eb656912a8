#include <doctest.h>

#include <cmath>

#include "crowdperm/metrics.hpp"
#include "crowdperm/rng.hpp"

using namespace crowdperm;

namespace {

std::vector<int> random_answers(std::uint64_t key, int d, int offset = 0) {
  std::vector<int> x(d);
  for (int j = 0; j < d; ++j) {
    x[j] = rng::uniform01(key, offset + j) < 0.5 ? -1 : 1;
  }
  return x;
}

}  // namespace

TEST_CASE("hamming error") {
  CHECK(hamming({1, -1, 1}, {1, -1, 1}).value == 0.0);
  CHECK(hamming({-1, 1, -1, 1}, {1, -1, 1, -1}).value == 1.0);
  CHECK(hamming({1, 1, -1, -1}, {1, -1, -1, 1}).value == 0.5);
  CHECK_THROWS_AS(hamming({1, -1}, {1, -1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(hamming({1, 0, 1}, {1, -1, 1}), std::invalid_argument);
}

TEST_CASE("collective intelligence") {
  CHECK(collective_intelligence({0.5, 0.5, 0.5}) == 0.0);
  CHECK(collective_intelligence({1.0, 1.0}) == 1.0);
  CHECK(collective_intelligence({0.9, 0.5}) == doctest::Approx(0.32).epsilon(1e-15));
  CHECK_THROWS_AS(collective_intelligence({}), std::invalid_argument);
  CHECK_THROWS_AS(collective_intelligence({1.2}), std::invalid_argument);
}

TEST_CASE("qstar_loss basic values") {
  const auto q = ProbabilityMatrix::from_worker_abilities({0.9, 0.5}, 2);
  CHECK(qstar_loss(q, {1, -1}, {1, -1}).value == 0.0);
  CHECK(qstar_loss(q, {1, 1}, {1, -1}).value ==
        doctest::Approx(0.16).epsilon(1e-15));
  CHECK_THROWS_AS(qstar_loss(q, {1}, {1, -1}), std::invalid_argument);
}

TEST_CASE("qstar_loss factors exactly on Dawid-Skene matrices") {
  for (int rep = 0; rep < 50; ++rep) {
    const std::uint64_t key = rng::derive_stream(31337, rep);
    const int n = 2 + static_cast<int>(rng::uniform01(key, 0) * 8);
    const int d = 2 + static_cast<int>(rng::uniform01(key, 1) * 8);
    std::vector<double> abilities(n);
    for (int i = 0; i < n; ++i) {
      abilities[i] = 0.5 + 0.5 * rng::uniform01(key, 10 + i);
    }
    const auto q = ProbabilityMatrix::from_worker_abilities(abilities, d);
    const auto xstar = random_answers(key, d, 100);
    const auto xhat = random_answers(key, d, 200);
    const double lhs = qstar_loss(q, xhat, xstar).value;
    const double rhs =
        collective_intelligence(abilities) * hamming(xhat, xstar).value;
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("qstar_loss is a symmetric pseudo-metric dominated by hamming") {
  for (int rep = 0; rep < 30; ++rep) {
    const std::uint64_t key = rng::derive_stream(90210, rep);
    const int n = 3, d = 6;
    std::vector<double> entries(n * d);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      entries[k] = 0.5 + 0.5 * rng::uniform01(key, k);
    }
    const ProbabilityMatrix q(n, d, entries);
    const auto a = random_answers(key, d, 100);
    const auto b = random_answers(key, d, 200);
    const auto c = random_answers(key, d, 300);
    const double ab = qstar_loss(q, a, b).value;
    const double ba = qstar_loss(q, b, a).value;
    const double ac = qstar_loss(q, a, c).value;
    const double cb = qstar_loss(q, c, b).value;
    CHECK(ab == ba);
    CHECK(ab <= ac + cb + 1e-15);
    CHECK(ab <= hamming(a, b).value + 1e-15);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
  }
}

TEST_CASE("frobenius error") {
  const auto half = ProbabilityMatrix::constant(2, 2, 0.5);
  const auto ones = ProbabilityMatrix::constant(2, 2, 1.0);
  CHECK(frobenius_error(half, half) == 0.0);
  CHECK(frobenius_error(ProbabilityMatrix::constant(1, 1, 0.5),
                        ProbabilityMatrix::constant(1, 1, 1.0)) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(frobenius_error(half, ones) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(frobenius_error(half, ProbabilityMatrix::constant(2, 3, 0.5)),
                  std::invalid_argument);
}
