#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "csm/entropy.hpp"
#include "csm/rng.hpp"

namespace {

std::vector<double> random_spectrum(csm::RngStream& rng, int n) {
  std::vector<double> half(static_cast<std::size_t>(n) + 1);
  for (auto& v : half) v = rng.next_unit() * rng.next_unit();
  std::vector<double> s(2 * static_cast<std::size_t>(n) + 1);
  double total = 0.0;
  for (int k = -n; k <= n; ++k) total += s[k + n] = half[static_cast<std::size_t>(std::abs(k))];
  for (auto& v : s) v /= total;
  return s;
}

}  // namespace

TEST(EntanglementEntropy, Examples) {
  EXPECT_EQ(csm::entanglement_entropy(1.0), 0.0);
  EXPECT_EQ(csm::entanglement_entropy(-1.0), 0.0);
  EXPECT_NEAR(csm::entanglement_entropy(0.0), 1.0, 1e-15);
  EXPECT_NEAR(csm::entanglement_entropy(0.5), -0.75 * std::log2(0.75) - 0.25 * std::log2(0.25), 1e-15);
  EXPECT_NEAR(csm::entanglement_entropy(0.5), 0.811278, 1e-6);
  EXPECT_THROW(csm::entanglement_entropy(1.0 + 1e-9), std::domain_error);
}

TEST(EntanglementEntropy, EvenAndDecreasingInMagnitude) {
  double prev = 1.0 + 1e-12;
  for (int i = 0; i <= 100; ++i) {
    const double f = i / 100.0;
    const double s = csm::entanglement_entropy(f);
    EXPECT_EQ(s, csm::entanglement_entropy(-f));
    EXPECT_LT(s, prev);
    prev = s;
  }
}

TEST(Renyi, Examples) {
  const std::vector<double> delta{0.0, 1.0, 0.0};
  EXPECT_EQ(csm::renyi_s1(delta), 0.0);
  EXPECT_EQ(csm::renyi_s2(delta), 0.0);
  const std::vector<double> pair{0.5, 0.0, 0.5};
  EXPECT_NEAR(csm::renyi_s1(pair), 1.0, 1e-15);
  EXPECT_NEAR(csm::renyi_s2(pair), 1.0, 1e-15);
  for (int n : {1, 4, 15, 30}) {
    const std::vector<double> uniform(2 * n + 1, 1.0 / (2 * n + 1));
    EXPECT_NEAR(csm::renyi_s1(uniform), std::log2(2 * n + 1), 1e-12);
    EXPECT_NEAR(csm::renyi_s2(uniform), std::log2(2 * n + 1), 1e-12);
  }
}

TEST(Renyi, RejectsInvalidSpectra) {
  EXPECT_THROW(csm::renyi_s1(std::vector<double>{0.5, 0.5, 0.1}), std::invalid_argument);
  EXPECT_THROW(csm::renyi_s2(std::vector<double>{0.5, 0.4}), std::invalid_argument);
  EXPECT_THROW(csm::renyi_s1(std::vector<double>{1.2, -0.2, 0.0}), std::invalid_argument);
}

TEST(Renyi, OrderingBoundsAndInvariance) {
  csm::RngStream rng(1, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 30;
    auto s = random_spectrum(rng, n);
    const double s1 = csm::renyi_s1(s);
    const double s2 = csm::renyi_s2(s);
    EXPECT_LE(s2, s1 + 1e-12);
    EXPECT_GE(s2, 0.0);
    EXPECT_LE(s1, std::log2(2 * n + 1) + 1e-12);
    std::reverse(s.begin(), s.end());
    EXPECT_NEAR(csm::renyi_s1(s), s1, 1e-12);
    std::rotate(s.begin(), s.begin() + 1, s.end());
    EXPECT_NEAR(csm::renyi_s2(s), s2, 1e-12);
  }
}

TEST(Renyi, EqualityOnlyForUniformSupport) {
  const std::vector<double> flat{0.25, 0.0, 0.25, 0.25, 0.25};
  EXPECT_NEAR(csm::renyi_s1(flat), csm::renyi_s2(flat), 1e-14);
  const std::vector<double> skewed{0.1, 0.0, 0.6, 0.0, 0.3};
  EXPECT_GT(csm::renyi_s1(skewed) - csm::renyi_s2(skewed), 1e-3);
}

TEST(Pipeline, AllEntropiesVanishAtTimeZero) {
  const csm::CouplingSet c({1000.0, -2000.0, 3500.0});
  const auto s = csm::hamming_intensities(c, 0.0);
  EXPECT_EQ(csm::entanglement_entropy(csm::fid(c, 0.0)), 0.0);
  EXPECT_EQ(csm::renyi_s1(s), 0.0);
  EXPECT_EQ(csm::renyi_s2(s), 0.0);
}

TEST(Saturation, ConstantAndAlternatingTraces) {
  std::vector<double> t(40), v(40, 2.5), w(40);
  for (int i = 0; i < 40; ++i) {
    t[i] = i * 1e-4;
    w[i] = 2.5 + (i % 2 ? 0.01 : -0.01);
  }
  const auto flat = csm::saturation_value(t, v, 1.9e-3);
  EXPECT_EQ(flat.mean, 2.5);
  EXPECT_NEAR(flat.stddev, 0.0, 1e-15);
  EXPECT_EQ(flat.n_samples, 20u);
  const auto noisy = csm::saturation_value(t, w, 1.9e-3);
  EXPECT_NEAR(noisy.mean, 2.5, 1e-14);
  EXPECT_NEAR(noisy.stddev, 0.01, 1e-12);
  EXPECT_THROW(csm::saturation_value(t, v, 3.1e-3), std::invalid_argument);
}

TEST(Equilibration, StepAndConstantTraces) {
  std::vector<double> t(20), step(20), flat(20, 1.0);
  for (int i = 0; i < 20; ++i) {
    t[i] = i * 1e-4;
    step[i] = i < 7 ? 0.0 : 3.0;
  }
  EXPECT_DOUBLE_EQ(*csm::equilibration_time(t, step, 3.0), 7e-4);
  EXPECT_EQ(*csm::equilibration_time(t, flat, 1.0), 0.0);
  EXPECT_FALSE(csm::equilibration_time(t, step, 3.5).has_value());
}

TEST(EntropyTrace, ValidateChecksShape) {
  csm::EntropyTrace trace;
  trace.times = {0.0, 1.0, 2.0};
  trace.s_ent = trace.s1 = trace.s2 = {0.0, 0.5, 0.7};
  EXPECT_NO_THROW(trace.validate());
  EXPECT_EQ(trace.series(csm::EntropyKind::kS1).size(), 3u);
  trace.times = {0.0, 2.0, 1.0};
  EXPECT_THROW(trace.validate(), std::invalid_argument);
  trace.times = {0.0, 1.0};
  EXPECT_THROW(trace.validate(), std::invalid_argument);
}
