// Copyright 2026 The tweetinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tweetinfo/svm.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "oracles/qp_oracle.h"
#include "svm_fixtures.h"
#include "test_util.h"
#include "tweetinfo/error.h"
#include "tweetinfo/kernel_cache.h"
#include "tweetinfo/random.h"

namespace tweetinfo {
namespace {

using ::tweetinfo::testing::ToSparse;

constexpr double kTanhOne = 0.7615941559557649;

struct Toy {
  std::vector<SparseVector> x = {ToSparse({1, 0}), ToSparse({1, 1}),
                                 ToSparse({-1, 0}), ToSparse({-1, -1})};
  std::vector<Label> labels = {Label::kInformative, Label::kInformative,
                               Label::kUninformative, Label::kUninformative};
};

SvmParams Params(double c, double gamma, double coef0, double tol,
                 std::size_t max_passes = 100000) {
  SvmParams p;
  p.c = c;
  p.gamma = gamma;
  p.coef0 = coef0;
  p.tol = tol;
  p.max_passes = max_passes;
  return p;
}

TEST(SigmoidKernelTest, Examples) {
  EXPECT_EQ(SigmoidKernel(ToSparse({1, 0}), ToSparse({0, 1}), 1.0, 0.0), 0.0);
  EXPECT_NEAR(SigmoidKernel(ToSparse({0, 1}), ToSparse({0, 1}), 1.0, 0.0),
              kTanhOne, 1e-15);
  EXPECT_NEAR(SigmoidKernel(ToSparse({1, 0}), ToSparse({0, 1}), 1.0, 1.0),
              kTanhOne, 1e-15);
}

TEST(SigmoidKernelTest, Symmetric) {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    oracle::Dense a(6), b(6);
    for (double& v : a) v = rng.Below(3) ? 0.0 : rng.Unit() - 0.5;
    for (double& v : b) v = rng.Below(3) ? 0.0 : rng.Unit() - 0.5;
    const double g = 0.1 + rng.Unit(), r = rng.Unit() - 0.5;
    EXPECT_EQ(SigmoidKernel(ToSparse(a), ToSparse(b), g, r),
              SigmoidKernel(ToSparse(b), ToSparse(a), g, r));
    EXPECT_NEAR(SigmoidKernel(ToSparse(a), ToSparse(b), g, r),
                oracle::DenseSigmoid(a, b, g, r), 1e-15);
  }
}

TEST(SvmParamsTest, DefaultsAndValidation) {
  const SvmParams d = DefaultSvmParams(200, 30);
  EXPECT_EQ(d.gamma, 1.0 / 200);
  EXPECT_EQ(d.c, 1.0);
  EXPECT_EQ(d.coef0, 0.0);
  EXPECT_EQ(d.tol, 1e-3);
  EXPECT_EQ(d.max_passes, 300u);
  EXPECT_NO_THROW(d.Validate());
  EXPECT_THROW(Params(0, 1, 0, 1e-3).Validate(), InvalidArgument);
  EXPECT_THROW(Params(1, -1, 0, 1e-3).Validate(), InvalidArgument);
  EXPECT_THROW(Params(1, 1, NAN, 1e-3).Validate(), InvalidArgument);
  EXPECT_THROW(Params(1, 1, 0, 0).Validate(), InvalidArgument);
  EXPECT_THROW(Params(1, 1, 0, 1e-3, 0).Validate(), InvalidArgument);
}

TEST(TrainSvmTest, ToySetIsSeparated) {
  const Toy toy;
  const TrainResult r = TrainSvm(toy.x, toy.labels, Params(1, 0.5, 0, 1e-3), 1);
  EXPECT_TRUE(r.report.converged);
  for (std::size_t i = 0; i < toy.x.size(); ++i) {
    EXPECT_GT(SignOf(toy.labels[i]) * r.model.Decision(toy.x[i]), 0.0) << i;
  }

  // Same signs as the exhaustive dual solution.
  std::vector<oracle::Dense> dense = {{1, 0}, {1, 1}, {-1, 0}, {-1, -1}};
  const auto sol = oracle::SolveDual(oracle::KernelMatrix(dense, 0.5, 0),
                                     {1, 1, -1, -1}, 1.0);
  ASSERT_TRUE(sol);
  for (std::size_t i = 0; i < 4; ++i) {
    const double lo = sol->margin_part[i] + sol->bias_lo;
    const double hi = sol->margin_part[i] + sol->bias_hi;
    EXPECT_EQ(lo > 0, r.model.Decision(toy.x[i]) > 0);
    EXPECT_EQ(hi > 0, r.model.Decision(toy.x[i]) > 0);
  }
}

// Duplicating every point leaves the optimal decision function unchanged as
// long as no multiplier reaches C (the duplicated problem is the original
// with C doubled).
TEST(TrainSvmTest, DuplicatedDatasetSameDecisionFunction) {
  const Toy toy;
  const SvmParams p = Params(100, 0.5, 0, 1e-10);
  const TrainResult once = TrainSvm(toy.x, toy.labels, p, 3);
  std::vector<SparseVector> x2;
  std::vector<Label> l2;
  for (std::size_t i = 0; i < toy.x.size(); ++i) {
    for (int copy = 0; copy < 2; ++copy) {
      x2.push_back(toy.x[i]);
      l2.push_back(toy.labels[i]);
    }
  }
  const TrainResult twice = TrainSvm(x2, l2, p, 3);
  ASSERT_TRUE(once.report.converged);
  ASSERT_TRUE(twice.report.converged);
  EXPECT_EQ(once.report.bounded_support_vectors, 0u);
  EXPECT_EQ(twice.report.bounded_support_vectors, 0u);
  for (double u = -2; u <= 2; u += 0.25) {
    for (double v = -2; v <= 2; v += 0.25) {
      const SparseVector probe = ToSparse({u, v});
      EXPECT_NEAR(once.model.Decision(probe), twice.model.Decision(probe),
                  1e-6)
          << u << "," << v;
    }
  }
}

TEST(TrainSvmTest, InputErrors) {
  const Toy toy;
  const std::vector<Label> same(4, Label::kInformative);
  try {
    TrainSvm(toy.x, same, Params(1, 1, 0, 1e-3), 1);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("UNINFORMATIVE"), std::string::npos);
  }
  EXPECT_THROW(TrainSvm({}, {}, Params(1, 1, 0, 1e-3), 1), InvalidArgument);
  EXPECT_THROW(TrainSvm(toy.x, std::vector<Label>(3, Label::kInformative),
                        Params(1, 1, 0, 1e-3), 1),
               InvalidArgument);
  EXPECT_THROW(TrainSvm(toy.x, toy.labels, Params(-1, 1, 0, 1e-3), 1),
               InvalidArgument);
  std::vector<SparseVector> mixed = toy.x;
  mixed[0] = ToSparse({1, 0, 0});
  EXPECT_THROW(TrainSvm(mixed, toy.labels, Params(1, 1, 0, 1e-3), 1),
               InvalidArgument);
}

TEST(TrainSvmTest, MatchesExhaustiveDualOnSmallProblems) {
  std::size_t compared = 0;
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const auto p = testing::MakeSmallProblem(seed);
    const auto sol = oracle::SolveDual(
        oracle::KernelMatrix(p.dense, p.gamma, p.coef0), p.y, p.c);
    ASSERT_TRUE(sol) << "seed " << seed;
    const TrainResult r = TrainSvm(p.vectors, p.labels,
                                   Params(p.c, p.gamma, p.coef0, 1e-9), seed);
    ASSERT_TRUE(r.report.converged) << "seed " << seed;
    EXPECT_NEAR(r.report.dual_objective, sol->objective, 1e-7)
        << "seed " << seed;
    for (std::size_t i = 0; i < p.y.size(); ++i) {
      EXPECT_NEAR(r.alphas[i], sol->alpha[i], 1e-5) << "seed " << seed;
      const double f = r.model.Decision(p.vectors[i]);
      const double lo = sol->margin_part[i] + sol->bias_lo;
      const double hi = sol->margin_part[i] + sol->bias_hi;
      if (lo > 1e-6 || hi < -1e-6) {
        EXPECT_EQ(f > 0, lo > 0) << "seed " << seed << " point " << i;
        ++compared;
      }
      if (sol->bias_hi - sol->bias_lo < 1e-12) {
        EXPECT_NEAR(f, lo, 1e-5) << "seed " << seed << " point " << i;
      }
    }
  }
  EXPECT_GT(compared, 100u);
}

// y_i f(x_i) against the multiplier bounds, from the model alone.
void ExpectKkt(const TrainResult& r, std::span<const SparseVector> x,
               std::span<const Label> labels, const SvmParams& p) {
  double balance = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = r.alphas[i];
    const double yf = SignOf(labels[i]) * r.model.Decision(x[i]);
    ASSERT_GE(a, 0.0);
    ASSERT_LE(a, p.c);
    if (a == 0.0) {
      EXPECT_GE(yf, 1.0 - p.tol - 1e-12) << i;
    } else if (a == p.c) {
      EXPECT_LE(yf, 1.0 + p.tol + 1e-12) << i;
    } else {
      EXPECT_NEAR(yf, 1.0, p.tol + 1e-12) << i;
    }
    balance += a * SignOf(labels[i]);
  }
  EXPECT_LE(std::abs(balance), 1e-8);
}

TEST(TrainSvmTest, KktOnOverlappingClasses) {
  SplitMix64 rng(8);
  std::vector<SparseVector> x;
  std::vector<Label> labels;
  for (int i = 0; i < 150; ++i) {
    const bool pos = rng.Below(2);
    const double cx = pos ? 0.7 : -0.7;
    x.push_back(ToSparse({cx + rng.Unit() * 2 - 1, rng.Unit() * 2 - 1, 0.5}));
    labels.push_back(pos ? Label::kInformative : Label::kUninformative);
  }
  for (double coef0 : {0.0, -0.5, 0.5}) {
    const SvmParams p = Params(2.0, 0.7, coef0, 1e-4);
    TrainOptions opts;
    opts.monitor_objective = true;
    const TrainResult r = TrainSvm(x, labels, p, 11, opts);
    ASSERT_TRUE(r.report.converged) << coef0;
    EXPECT_EQ(r.report.objective_decreases, 0u);
    EXPECT_LE(r.report.max_kkt_violation, p.tol);
    EXPECT_GT(r.report.bounded_support_vectors, 0u);
    ExpectKkt(r, x, labels, p);
  }
}

TEST(TrainSvmTest, SmallCacheGivesSameModel) {
  const auto s = testing::MakeSeparablePlane(80, 4);
  const SvmParams p = Params(1, 0.5, 0, 1e-3);
  TrainOptions tiny;
  tiny.cache_bytes = 1;
  const TrainResult a = TrainSvm(s.vectors, s.labels, p, 2);
  const TrainResult b = TrainSvm(s.vectors, s.labels, p, 2, tiny);
  EXPECT_EQ(a.model.Serialize(), b.model.Serialize());
  EXPECT_GT(b.report.cache_misses, a.report.cache_misses);
}

TEST(TrainSvmTest, Deterministic) {
  const auto s = testing::MakeSeparablePlane(100, 9);
  const SvmParams p = Params(1, 0.5, 0, 1e-3);
  EXPECT_EQ(TrainSvm(s.vectors, s.labels, p, 5).model.Serialize(),
            TrainSvm(s.vectors, s.labels, p, 5).model.Serialize());
}

TEST(TrainSvmTest, SeparablePlaneTrainingF1) {
  const auto s = testing::MakeSeparablePlane(200, 1);
  const TrainResult r =
      TrainSvm(s.vectors, s.labels, DefaultSvmParams(2, 200), 1);
  EXPECT_TRUE(r.report.converged);
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < s.vectors.size(); ++i) {
    const bool predicted = r.model.Decision(s.vectors[i]) >= 0;
    const bool actual = s.labels[i] == Label::kInformative;
    tp += predicted && actual;
    fp += predicted && !actual;
    fn += !predicted && actual;
  }
  EXPECT_GE(2.0 * tp / static_cast<double>(2 * tp + fp + fn), 0.95);
}

TEST(TrainSvmTest, MaxPassesExhaustedIsReported) {
  const auto s = testing::MakeSeparablePlane(100, 2);
  const TrainResult r = TrainSvm(s.vectors, s.labels, Params(1, 0.5, 0, 1e-9, 3), 1);
  EXPECT_FALSE(r.report.converged);
  EXPECT_EQ(r.report.iterations, 3u);
  EXPECT_GT(r.report.kkt_gap, 1e-9);
}

SvmModel ThreeVectorModel() {
  return SvmModel(Params(2, 0.8, 0.1, 1e-3), 4,
                  {ToSparse({1, 0, 0, 0}), ToSparse({0, 0.6, 0.8, 0}),
                   ToSparse({0.5, 0.5, 0, 0})},
                  {1.5, -2.0, 0.25}, -0.3, PlattScaling{-1.7, 0.2});
}

TEST(SvmModelTest, DecisionFormula) {
  const SvmModel m = ThreeVectorModel();
  const SparseVector x = ToSparse({0.2, 0.4, 0.1, 0.9});
  const double expected = 1.5 * std::tanh(0.8 * 0.2 + 0.1) -
                          2.0 * std::tanh(0.8 * (0.24 + 0.08) + 0.1) +
                          0.25 * std::tanh(0.8 * 0.3 + 0.1) - 0.3;
  EXPECT_NEAR(m.Decision(x), expected, 1e-14);
  EXPECT_THROW(m.Decision(ToSparse({1, 0})), InvalidArgument);
}

TEST(SvmModelTest, SupportVectorOrderDoesNotMatter) {
  const SvmModel m = ThreeVectorModel();
  const SvmModel r(m.params(), 4,
                   {m.support_vectors()[2], m.support_vectors()[0],
                    m.support_vectors()[1]},
                   {m.dual_coefs()[2], m.dual_coefs()[0], m.dual_coefs()[1]},
                   m.bias());
  SplitMix64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const SparseVector x = ToSparse({rng.Unit(), rng.Unit(), rng.Unit(), 0});
    EXPECT_NEAR(m.Decision(x), r.Decision(x), 1e-12);
  }
}

TEST(SvmModelTest, UnusedComponentsDoNotMatter) {
  const SvmModel m = ThreeVectorModel();  // no support vector uses index 3
  EXPECT_EQ(m.Decision(ToSparse({0.2, 0.4, 0.1, 0.9})),
            m.Decision(ToSparse({0.2, 0.4, 0.1, 9.0})));
}

TEST(SvmModelTest, ConstructorValidation) {
  const auto sv = std::vector<SparseVector>{ToSparse({1, 0})};
  const SvmParams p = Params(1, 1, 0, 1e-3);
  EXPECT_THROW(SvmModel(p, 2, sv, {1.5}, 0.0), InvalidArgument);
  EXPECT_THROW(SvmModel(p, 2, sv, {0.0}, 0.0), InvalidArgument);
  EXPECT_THROW(SvmModel(p, 2, sv, {0.5, 0.5}, 0.0), InvalidArgument);
  EXPECT_THROW(SvmModel(p, 3, sv, {0.5}, 0.0), InvalidArgument);
  EXPECT_THROW(SvmModel(p, 2, sv, {0.5}, NAN), InvalidArgument);
  EXPECT_NO_THROW(SvmModel(p, 2, sv, {-1.0}, 0.0));
}

TEST(SvmModelTest, ProbabilityNeedsPlatt) {
  SvmModel m = ThreeVectorModel();
  const SparseVector zero = ToSparse({0, 0, 0, 0});
  SvmModel bare(m.params(), 4, m.support_vectors(), m.dual_coefs(), m.bias());
  EXPECT_THROW(bare.PredictProba(zero), ValidationError);
  EXPECT_THROW(bare.Predict(zero), ValidationError);
  const ConfidencePair c = m.Predict(zero);
  EXPECT_EQ(c.decision, m.Decision(zero));
  EXPECT_EQ(c.probability, m.platt()->Probability(c.decision));
}

TEST(SvmModelTest, ProbabilityMidpointAndRange) {
  // With coef0 = 0 a zero probe gives tanh(0) = 0 for every support vector,
  // so the decision is the bias: 0.5 = -B/A.
  SvmModel m(Params(1, 1, 0, 1e-3), 2, {ToSparse({1, 0})}, {1.0}, 0.5,
             PlattScaling{-2.0, 1.0});
  EXPECT_EQ(m.Decision(ToSparse({0, 0})), 0.5);
  EXPECT_EQ(m.PredictProba(ToSparse({0, 0})), 0.5);
  // Larger decision, larger probability when A < 0.
  EXPECT_GT(m.PredictProba(ToSparse({1, 0})), m.PredictProba(ToSparse({0, 0})));

  const PlattScaling s{-1.0, 0.0};
  for (double f : {-1e6, -800.0, -40.0, 40.0, 800.0, 1e6}) {
    const double p = s.Probability(f);
    EXPECT_GT(p, 0.0) << f;
    EXPECT_LT(p, 1.0) << f;
  }
  double previous = 0.0;
  for (double f = -30; f <= 30; f += 0.5) {
    EXPECT_GT(s.Probability(f), previous);
    previous = s.Probability(f);
  }
}

TEST(SvmModelTest, SerializeRoundTrip) {
  testing::TempDir dir;
  const SvmModel m = ThreeVectorModel();
  const std::string text = m.Serialize();
  EXPECT_EQ(text.rfind("tweetinfo-svm 1\n", 0), 0u);
  const SvmModel back = SvmModel::Parse(text);
  EXPECT_EQ(back.Serialize(), text);
  EXPECT_EQ(back.params(), m.params());
  EXPECT_EQ(back.platt(), m.platt());
  const SparseVector x = ToSparse({0.3, 0.1, 0.7, 0.2});
  EXPECT_EQ(back.Decision(x), m.Decision(x));

  m.Save(dir.file("m.svm"));
  EXPECT_EQ(SvmModel::Load(dir.file("m.svm")).Serialize(), text);

  const SvmModel bare(m.params(), 4, m.support_vectors(), m.dual_coefs(),
                      m.bias());
  EXPECT_FALSE(SvmModel::Parse(bare.Serialize()).platt());
}

TEST(SvmModelTest, TrainedModelRoundTrip) {
  const auto s = testing::MakeSeparablePlane(60, 3);
  const SvmModel m =
      TrainSvm(s.vectors, s.labels, Params(1, 0.5, 0, 1e-3), 1).model;
  const SvmModel back = SvmModel::Parse(m.Serialize());
  for (const SparseVector& x : s.vectors) {
    EXPECT_EQ(back.Decision(x), m.Decision(x));
  }
}

TEST(SvmModelTest, ParseErrors) {
  const std::string good = ThreeVectorModel().Serialize();
  EXPECT_THROW(SvmModel::Parse(""), ParseError);
  EXPECT_THROW(SvmModel::Parse("not-a-model 1\n"), ParseError);
  std::string v2 = good;
  v2.replace(0, 15, "tweetinfo-svm 2");
  EXPECT_THROW(SvmModel::Parse(v2), ParseError);
  EXPECT_THROW(SvmModel::Parse(good.substr(0, good.size() / 2)), ParseError);
  std::string bad_index = good;
  bad_index.replace(bad_index.rfind(" 0:"), 3, " 9:");
  EXPECT_THROW(SvmModel::Parse(bad_index), Error);
}

TEST(KernelCacheTest, RowsMatchKernelAndEvict) {
  const std::vector<SparseVector> x = {ToSparse({1, 0, 0.5}),
                                       ToSparse({0, 1, 0}),
                                       ToSparse({0.3, 0.3, 0.3}),
                                       ToSparse({0, 0, 0})};
  KernelCache cache(x, 0.7, -0.1, 1);  // budget below two rows
  EXPECT_EQ(cache.capacity_rows(), 2u);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(cache.Diagonal(i), SigmoidKernel(x[i], x[i], 0.7, -0.1));
  }
  const KernelCache::Row r0 = cache.GetRow(0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    EXPECT_EQ((*r0)[k], SigmoidKernel(x[0], x[k], 0.7, -0.1));
  }
  cache.GetRow(1);
  cache.GetRow(0);  // hit; row 1 is now least recent
  EXPECT_EQ(cache.hits(), 1u);
  cache.GetRow(2);  // evicts row 1
  EXPECT_EQ(cache.cached_rows(), 2u);
  cache.GetRow(0);
  EXPECT_EQ(cache.hits(), 2u);
  cache.GetRow(1);
  EXPECT_EQ(cache.misses(), 4u);
  // Row 0 was evicted by now but the handle is still valid.
  cache.GetRow(3);
  EXPECT_EQ((*r0)[2], SigmoidKernel(x[0], x[2], 0.7, -0.1));
}

}  // namespace
}  // namespace tweetinfo
