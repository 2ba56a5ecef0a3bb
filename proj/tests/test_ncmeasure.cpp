#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "czlab/error.hpp"
#include "czlab/field_io.hpp"
#include "czlab/linalg.hpp"
#include "czlab/ncmeasure.hpp"
#include "oracles.hpp"

using namespace czlab;

namespace {
const GridSpec g11{1, 1, 1};
MatrixField two_zero() { return oracle::scalar_field(g11, {2.0, 0.0}); }
}  // namespace

TEST(Grid, CellVolumeTimesCountIsOne) {
  for (int d = 1; d <= 3; ++d)
    for (int L = 1; L <= 4; ++L) {
      GridSpec g{d, L, 1};
      EXPECT_DOUBLE_EQ(g.cell_volume() * static_cast<double>(g.cells()), 1.0);
    }
}

TEST(Grid, CoordinatesRoundTripAxisZeroMostSignificant) {
  GridSpec g{2, 2, 1};
  EXPECT_EQ(cell_coords(g, 1)[1], 1);
  EXPECT_EQ(cell_coords(g, 4)[0], 1);
  for (std::size_t c = 0; c < g.cells(); ++c) EXPECT_EQ(cell_index(g, cell_coords(g, c)), c);
  EXPECT_DOUBLE_EQ(cell_center(g, 0)[0], 0.125);
}

TEST(Grid, ValidateRejectsBadShapes) {
  EXPECT_THROW((GridSpec{0, 2, 1}).validate(), InvalidArgument);
  EXPECT_THROW((GridSpec{2, 2, 0}).validate(), InvalidArgument);
}

TEST(MatrixField, ArithmeticStaysOnGridAndChecksMismatch) {
  std::mt19937_64 rng(1);
  GridSpec g{1, 3, 2};
  auto f = oracle::random_field(g, rng), h = oracle::random_field(g, rng);
  EXPECT_LT(l2_distance((f + h) - h, f), 1e-13);
  EXPECT_LT(l2_distance(f.adjoint().adjoint(), f), 1e-15);
  EXPECT_THROW(f + MatrixField(GridSpec{1, 2, 2}), InvalidArgument);
  EXPECT_TRUE(MatrixField(g).is_zero());
  EXPECT_TRUE(f.all_finite());
}

TEST(Trace, Examples) {
  EXPECT_EQ(trace(MatrixField(g11)), cplx(0.0));
  EXPECT_NEAR(trace(MatrixField::identity(GridSpec{2, 3, 2})).real(), 2.0, 1e-14);
  EXPECT_NEAR(trace(two_zero()).real(), 1.0, 1e-15);
}

TEST(Trace, LinearAndConjugateUnderAdjoint) {
  std::mt19937_64 rng(2);
  GridSpec g{2, 2, 3};
  auto f = oracle::random_field(g, rng), h = oracle::random_field(g, rng);
  EXPECT_LT(std::abs(trace(f + cplx(2, 1) * h) - (trace(f) + cplx(2, 1) * trace(h))), 1e-12);
  EXPECT_LT(std::abs(trace(f.adjoint()) - std::conj(trace(f))), 1e-13);
  EXPECT_GE(trace(oracle::random_positive_field(g, rng)).real(), 0.0);
}

TEST(SingularFunction, Examples) {
  const auto mu = singular_function(two_zero());
  std::vector<SingularPair> nonzero;
  for (const auto& p : mu.pairs())
    if (p.value > 0) nonzero.push_back(p);
  ASSERT_EQ(nonzero.size(), 1u);
  EXPECT_DOUBLE_EQ(nonzero[0].value, 2.0);
  EXPECT_DOUBLE_EQ(nonzero[0].weight, 0.5);
  EXPECT_DOUBLE_EQ(mu.total_weight(), 1.0);
  EXPECT_DOUBLE_EQ(mu.mu(0.25), 2.0);
  EXPECT_DOUBLE_EQ(mu.mu(0.75), 0.0);

  Mat c = 3.0 * Mat::Identity(2, 2);
  const auto mc = singular_function(MatrixField::constant(GridSpec{1, 2, 2}, c));
  EXPECT_DOUBLE_EQ(mc.mu(1.9), 3.0);
  EXPECT_DOUBLE_EQ(mc.mu(2.1), 0.0);
  EXPECT_NEAR(mc.total_weight(), 2.0, 1e-14);
}

TEST(SingularFunction, UnitaryInvariance) {
  std::mt19937_64 rng(3);
  GridSpec g{1, 3, 3};
  auto f = oracle::random_field(g, rng);
  Eigen::HouseholderQR<Mat> q1(Mat::Random(3, 3)), q2(Mat::Random(3, 3));
  const Mat u = q1.householderQ(), v = q2.householderQ();
  auto rotated = MatrixField::constant(g, u) * f * MatrixField::constant(g, v);
  const auto a = singular_function(f), b = singular_function(rotated);
  for (double t : {0.01, 0.3, 1.2, 2.9}) EXPECT_NEAR(a.mu(t), b.mu(t), 1e-12);
}

TEST(SingularFunction, MatchesBruteForceRearrangementScalar) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    GridSpec g{1 + k % 2, 3, 1};
    auto f = oracle::random_field(g, rng);
    const auto r = oracle::rearrangement(f);
    const auto mu = singular_function(f);
    double acc = 0.0;
    for (auto [v, w] : r) {
      EXPECT_NEAR(mu.mu(acc + 0.5 * w), v, 1e-12);
      acc += w;
    }
  }
}

TEST(DistributionFunction, Examples) {
  EXPECT_DOUBLE_EQ(distribution_function(MatrixField(g11), 0.1), 0.0);
  EXPECT_DOUBLE_EQ(distribution_function(two_zero(), 1.0), 0.5);
  EXPECT_DOUBLE_EQ(distribution_function(two_zero(), 3.0), 0.0);
  EXPECT_DOUBLE_EQ(distribution_function(two_zero(), 2.0), 0.0);  // strictly above
}

TEST(LpNorm, Examples) {
  EXPECT_NEAR(lp_norm(MatrixField::identity(GridSpec{1, 2, 2}), 1.0), 2.0, 1e-14);
  EXPECT_NEAR(lp_norm(two_zero(), 1.0), 1.0, 1e-15);
  EXPECT_NEAR(lp_norm(two_zero(), 2.0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(lp_norm(two_zero(), INFINITY), 2.0, 1e-15);
}

TEST(LpNorm, ReconstructionFromMuMatchesDirect200Fields) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    GridSpec g{1 + k % 2, 1 + k % 6 / (1 + k % 2), 1 + k % 4};
    auto f = oracle::random_field(g, rng);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      double direct = 0.0;
      for (auto [v, w] : oracle::rearrangement(f)) direct += w * std::pow(v, p);
      direct = std::pow(direct, 1.0 / p);
      EXPECT_NEAR(lp_norm(f, p), direct, 1e-10 * direct);
    }
  }
}

TEST(LpNorm, HilbertSchmidtTriangleHolder) {
  std::mt19937_64 rng(6);
  GridSpec g{2, 2, 3};
  for (int k = 0; k < 20; ++k) {
    auto f = oracle::random_field(g, rng), h = oracle::random_field(g, rng);
    EXPECT_NEAR(std::pow(lp_norm(f, 2.0), 2), trace(f.adjoint() * f).real(), 1e-10);
    for (double p : {1.0, 2.0, 4.0, double(INFINITY)})
      EXPECT_LE(lp_norm(f + h, p), (lp_norm(f, p) + lp_norm(h, p)) * (1 + 1e-9));
    EXPECT_LE(lp_norm(f * h, 1.0), lp_norm(f, 2.0) * lp_norm(h, 2.0) * (1 + 1e-9));
  }
}

TEST(KFunctional, Examples) {
  const auto f3 = MatrixField::constant(GridSpec{1, 2, 2}, 3.0 * Mat::Identity(2, 2));
  EXPECT_NEAR(k_functional_L1_Linf(f3, 1.0), 3.0, 1e-14);
  EXPECT_NEAR(k_functional_L1_Linf(f3, 2.0), 6.0, 1e-14);
  EXPECT_NEAR(k_functional_L1_Linf(f3, 5.0), 6.0, 1e-14);
  EXPECT_NEAR(k_functional_L1_Linf(two_zero(), 0.3), 0.6, 1e-15);
  EXPECT_NEAR(k_functional_L1_Linf(two_zero(), 2.0), 1.0, 1e-15);
}

TEST(KFunctional, BoundedByOneSidedSplittingsAndConcave) {
  std::mt19937_64 rng(7);
  GridSpec g{1, 4, 2};
  auto f = oracle::random_field(g, rng);
  std::vector<double> ts;
  for (int k = 0; k < 60; ++k) ts.push_back(0.05 * (k + 1));
  std::vector<double> v;
  for (double t : ts) {
    v.push_back(k_functional_L1_Linf(f, t));
    EXPECT_LE(v.back(), std::min(lp_norm(f, 1.0), t * lp_norm(f, INFINITY)) * (1 + 1e-12));
    EXPECT_NEAR(v.back(), oracle::rearrangement_integral(f, t), 1e-12);
  }
  for (std::size_t k = 1; k + 1 < v.size(); ++k) EXPECT_LE(v[k + 1] - 2 * v[k] + v[k - 1], 1e-12);
  EXPECT_TRUE(k_profile(f, ts, Couple::L1_Linf).is_k_shaped());
}

TEST(KFunctionalCutoff, L1LinfMatchesHolmstedt) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 30; ++k) {
    GridSpec g{1 + k % 2, 2, 1 + k % 3};
    auto f = oracle::random_field(g, rng);
    for (double t : {1e-3, 0.1, 0.7, 1.0, 2.5, 10.0}) {
      const double exact = k_functional_L1_Linf(f, t);
      EXPECT_NEAR(k_functional_cutoff(f, t, Couple::L1_Linf), exact, 1e-9 * std::max(exact, 1e-300));
    }
  }
}

TEST(KFunctionalCutoff, L1L2Examples) {
  for (double t : {0.1, 0.5, 0.7071, 1.0, 3.0})
    EXPECT_NEAR(k_functional_cutoff(two_zero(), t, Couple::L1_L2), std::min(1.0, std::sqrt(2.0) * t), 1e-9);
  EXPECT_EQ(k_functional_cutoff(MatrixField(g11), 1.0, Couple::L1_L2), 0.0);
}

TEST(KFunctionalCutoff, L1L2NoWorseThanDenseScan) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    auto f = oracle::random_field(GridSpec{1, 3, 2}, rng);
    for (double t : {0.05, 0.4, 1.0, 4.0}) {
      const double scan = oracle::cutoff_scan(f, t, true);
      const double v = k_functional_cutoff(f, t, Couple::L1_L2);
      EXPECT_LE(v, scan * (1 + 1e-10));
      EXPECT_GE(v, scan * (1 - 1e-6));
    }
  }
}

TEST(CutoffSplit, ReconstructsAndSeparatesSpectrum) {
  std::mt19937_64 rng(10);
  auto f = oracle::random_field(GridSpec{1, 3, 3}, rng);
  const double c = singular_function(f).mu(1.0);
  auto sp = cutoff_split(f, c);
  EXPECT_LT(l2_distance(sp.y + sp.z, f), 1e-12);
  EXPECT_LE(lp_norm(sp.z, INFINITY), c * (1 + 1e-12));
  EXPECT_NEAR(lp_norm(sp.y, 1.0) + 1.0 * c, k_functional_L1_Linf(f, 1.0), 1e-10);
}

TEST(Linalg, ProjectionMeetAndParts) {
  Mat p1 = Mat::Zero(2, 2), p2 = Mat::Zero(2, 2);
  p1(0, 0) = 1;
  p2.setConstant(0.5);  // projection onto (1,1)/sqrt2
  EXPECT_LT(projection_meet({p1, p2}).norm(), 1e-12);
  EXPECT_LT((projection_meet({p1, Mat::Identity(2, 2)}) - p1).norm(), 1e-12);
  std::mt19937_64 rng(11);
  auto f = oracle::random_field(GridSpec{1, 1, 3}, rng);
  Mat a = f.cell(0);
  EXPECT_LT((hermitian_part(a) + cplx(0, 1) * antihermitian_part(a) - a).norm(), 1e-13);
  Mat pos, neg;
  positive_negative_parts(hermitian_part(a), pos, neg);
  EXPECT_LT((pos - neg - hermitian_part(a)).norm(), 1e-13);
  EXPECT_LT(projection_defect(projection_above(hermitian_part(a), 0.1)), 1e-12);
}

TEST(FieldIO, JsonAndBinaryRoundTrip) {
  std::mt19937_64 rng(12);
  auto f = oracle::random_field(GridSpec{2, 2, 3}, rng);
  EXPECT_EQ(l2_distance(field_from_json(field_to_json(f)), f), 0.0);
  std::stringstream ss;
  write_field_binary(ss, f);
  EXPECT_EQ(ss.str().size(), 16 + f.data().size() * 16);
  EXPECT_EQ(ss.str().substr(0, 4), "NCMF");
  EXPECT_EQ(l2_distance(read_field_binary(ss), f), 0.0);
  const auto dir = std::filesystem::temp_directory_path() / "czlab_io_test";
  std::filesystem::create_directories(dir);
  save_field(dir / "f.json", f);
  save_field(dir / "f.bin", f);
  EXPECT_EQ(l2_distance(load_field(dir / "f.json"), f), 0.0);
  EXPECT_EQ(l2_distance(load_field(dir / "f.bin"), f), 0.0);
}

TEST(FieldIO, RowMajorEntriesWithinCell) {
  MatrixField f(GridSpec{1, 1, 2});
  f.cell(0)(0, 1) = 7.0;
  const auto j = field_to_json(f);
  EXPECT_EQ(j["cells"][0][1][0].get<double>(), 7.0);
}

TEST(FieldIO, RejectsGarbage) {
  std::stringstream ss("XXXXnot a field");
  EXPECT_THROW(read_field_binary(ss), IoError);
  EXPECT_THROW(field_from_json(nlohmann::json{{"spec", 3}}), IoError);
}
