#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace chs;
using namespace chs::convex;

namespace {

CodewordPairSeq random_codeword(std::size_t n, Rng& rng, EvalVector* msg = nullptr) {
  EvalVector z(n);
  for (auto& v : z) v = random_between(Int(-8), Int(8), rng);
  if (msg) *msg = z;
  return encode_tc(z);
}

EvalVector recovered_message(const CodewordPairSeq& w, const L1Result& r, const OnlineSystem& sys) {
  Eigen::VectorXd a(static_cast<Eigen::Index>(sys.n));
  for (std::size_t i = 0; i < sys.n; ++i) a(static_cast<Eigen::Index>(i)) = w[i].a.get_d();
  Eigen::VectorXd z = sys.B * (a - r.v);
  EvalVector out(sys.n);
  for (std::size_t i = 0; i < sys.n; ++i) out[i] = static_cast<long>(std::llround(z(static_cast<Eigen::Index>(i))));
  return out;
}

}  // namespace

TEST(System, SmallExamples) {
  auto s = build_online_system(3);
  Eigen::MatrixXd B(3, 3);
  B << 1, 0, 0, 1, 1, 0, 1, 2, 1;
  EXPECT_EQ(s.B, B);
  EXPECT_EQ(s.combined.rows(), 3);
  EXPECT_EQ(s.combined.cols(), 6);
  EXPECT_THROW(build_online_system(41), PreconditionViolation);
}

TEST(System, ExactAtForty) {
  auto s = build_online_system(40);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j) {
      double want = j <= i ? oracle::binom(static_cast<long>(i), static_cast<long>(j)).get_d() : 0.0;
      ASSERT_EQ(s.B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), want);
      ASSERT_EQ(oracle::binom(static_cast<long>(i), static_cast<long>(j)),
                Int(static_cast<long>(s.B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))));
    }
}

TEST(L1, ZeroErrorInput) {
  Rng rng(1);
  for (std::size_t n : {4, 16, 32}) {
    auto sys = build_online_system(n);
    auto r = l1_decode(random_codeword(n, rng), sys);
    EXPECT_LE(r.u.cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LE(r.v.cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(L1, SingleEvaluationErrorAtThree) {
  Rng rng(2);
  auto sys = build_online_system(16);
  auto w = random_codeword(16, rng);
  w[3].z += 1;
  auto r = l1_decode(w, sys);
  Eigen::VectorXd e3 = Eigen::VectorXd::Zero(16);
  e3(3) = 1;
  EXPECT_LE((r.u - e3).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LE(r.v.lpNorm<1>(), 1e-6);
  auto l0 = l0_oracle(w, 3);
  ASSERT_TRUE(l0.has_value());
  EXPECT_EQ(l0->support, std::vector<std::size_t>{3});
}

TEST(L1, DimensionMismatch) {
  auto sys = build_online_system(5);
  CodewordPairSeq w(4, {Int(0), Int(0)});
  EXPECT_THROW(l1_decode(w, sys), PreconditionViolation);
  EXPECT_THROW(erasure_decode(CodewordPairSeq(5, {Int(0), Int(0)}), {7}, sys), PreconditionViolation);
}

TEST(L1, OptimalitySanity) {
  Rng rng(3);
  auto sys = build_online_system(16);
  for (int t = 0; t < 40; ++t) {
    auto w = random_codeword(16, rng);
    double inj = 0;
    for (int k = 0; k < 3; ++k) {
      std::size_t i = rng() % 16;
      long du = static_cast<long>(rng() % 5) - 2, dv = static_cast<long>(rng() % 3) - 1;
      w[i].z += du;
      w[i].a += dv;
      inj += std::abs(du) + std::abs(dv);
    }
    auto r = l1_decode(w, sys);
    // The injected (u0, v0) is feasible, though a single index may be hit twice.
    EXPECT_LE(r.objective, inj + 1e-6);
    EXPECT_LE(r.residual, 1e-6);
  }
}

TEST(L1, Deterministic) {
  Rng rng(4);
  auto sys = build_online_system(20);
  auto w = random_codeword(20, rng);
  w[5].z += 2;
  w[11].a -= 1;
  auto a = l1_decode(w, sys), b = l1_decode(w, sys);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.v, b.v);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Erasure, Examples) {
  Rng rng(5);
  auto sys = build_online_system(16);
  auto w = random_codeword(16, rng);
  w[2].z -= 1;
  auto a = erasure_decode(w, {}, sys), b = l1_decode(w, sys);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.v, b.v);

  auto clean = random_codeword(16, rng);
  auto c = erasure_decode(clean, {1, 4, 9}, sys);
  EXPECT_LE(c.u.cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LE(c.v.cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Erasure, ErasedCorruptionsRecoverExactly) {
  Rng rng(6);
  auto sys = build_online_system(16);
  for (int t = 0; t < 30; ++t) {
    EvalVector z;
    auto w = random_codeword(16, rng, &z);
    std::vector<std::size_t> erased;
    while (erased.size() < 3) {
      std::size_t i = rng() % 16;
      if (std::find(erased.begin(), erased.end(), i) == erased.end()) erased.push_back(i);
    }
    for (auto i : erased) w[i].z += static_cast<long>(rng() % 7) - 3;
    auto r = erasure_decode(w, erased, sys);
    EXPECT_EQ(recovered_message(w, r, sys), z);
  }
}

TEST(Erasure, PairedComparison) {
  // Same corrupted words: erasing the corrupted rows never does worse than the unrestricted program.
  auto sys = build_online_system(16);
  std::size_t ok_full = 0, ok_erased = 0;
  for (std::uint64_t t = 0; t < 60; ++t) {
    Rng rng = make_rng(77, t);
    EvalVector z;
    auto w = random_codeword(16, rng, &z);
    std::vector<std::size_t> bad;
    std::size_t k = 1 + rng() % 4;
    while (bad.size() < k) {
      std::size_t i = rng() % 16;
      if (std::find(bad.begin(), bad.end(), i) == bad.end()) bad.push_back(i);
    }
    for (auto i : bad) w[i].z += rng() % 2 ? 2 : -2;
    ok_full += recovered_message(w, l1_decode(w, sys), sys) == z;
    ok_erased += recovered_message(w, erasure_decode(w, bad, sys), sys) == z;
  }
  EXPECT_GE(ok_erased, ok_full);
  EXPECT_EQ(ok_erased, 60u);
}

TEST(L0, OracleBasics) {
  Rng rng(7);
  auto w = random_codeword(10, rng);
  auto r = l0_oracle(w, 3);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->support_size, 0u);
  w[2].z += 1;
  w[6].a += 1;
  r = l0_oracle(w, 3);
  ASSERT_TRUE(r.has_value());
  EXPECT_LE(r->support_size, 2u);
}

TEST(L0, AgreementHelperIsDeterministic) {
  auto a = l0_agreement(12, 10, 5), b = l0_agreement(12, 10, 5);
  EXPECT_EQ(a.agree, b.agree);
  EXPECT_EQ(a.l1_exact, b.l1_exact);
  EXPECT_GT(a.agree, 0u);
}

TEST(Rip, SingleColumnsAreIsometric) {
  Rng rng(8);
  auto sys = build_online_system(32);
  EXPECT_LE(rip_probe(sys, 1, 2000, rng).delta_hat, std::ldexp(1.0, -50));
  Rng r2(9);
  EXPECT_LE(variant_rip_probe(PointSource::SUNFLOWER, 12, 1, 200, r2).delta_hat, 1e-12);
}

TEST(Rip, MonotoneInSparsity) {
  auto sys = build_online_system(24);
  double prev = 0;
  for (std::size_t S : {1, 2, 3, 4, 6, 8}) {
    Rng rng(10);
    double d = rip_probe(sys, S, 500, rng).delta_hat;
    EXPECT_GE(d, prev);
    prev = d;
  }
}

TEST(Rip, MonotoneInTrials) {
  auto sys = build_online_system(24);
  double prev = 0;
  for (std::size_t T : {10, 50, 200, 1000}) {
    Rng rng(11);
    double d = rip_probe(sys, 4, T, rng).delta_hat;
    EXPECT_GE(d, prev);
    prev = d;
  }
}

TEST(Rip, NewtonSourceIsTheOnlineSystem) {
  auto sys = build_online_system(16);
  Rng a(12), b(12);
  EXPECT_EQ(rip_probe(sys, 4, 300, a).delta_hat, variant_rip_probe(PointSource::NEWTON, 16, 4, 300, b).delta_hat);
  Rng c(13);
  EXPECT_THROW(rip_probe(sys, 33, 1, c), PreconditionViolation);
}

TEST(Rip, VariantSourcesRun) {
  for (auto src : {PointSource::CYCLOTOMIC, PointSource::SUNFLOWER, PointSource::WEYL}) {
    Rng rng(14);
    auto e = variant_rip_probe(src, 10, 4, 100, rng);
    EXPECT_GE(e.delta_hat, 0);
    EXPECT_TRUE(std::isfinite(e.delta_hat));
  }
  // Variant matrices are lower triangular with a unit diagonal.
  auto A = variant_matrix(PointSource::WEYL, 6, {});
  for (Eigen::Index i = 0; i < 6; ++i) {
    EXPECT_NEAR(std::abs(A(i, i) - std::complex<double>(1, 0)), 0, 1e-12);
    for (Eigen::Index j = i + 1; j < 6; ++j) EXPECT_EQ(A(i, j), std::complex<double>(0, 0));
  }
}
