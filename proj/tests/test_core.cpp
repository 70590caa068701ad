#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace chs;

namespace {

EvalVector V(std::initializer_list<long> xs) {
  EvalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

CodewordPairSeq P(std::initializer_list<std::pair<long, long>> xs) {
  CodewordPairSeq w;
  for (auto [z, a] : xs) w.push_back({Int(z), Int(a)});
  return w;
}

// All vectors of length n over [lo, hi].
template <class F>
void for_each_vector(std::size_t n, long lo, long hi, F f) {
  EvalVector z(n, Int(lo));
  for (;;) {
    f(z);
    std::size_t i = 0;
    while (i < n && z[i] == hi) z[i++] = lo;
    if (i == n) return;
    z[i] += 1;
  }
}

}  // namespace

TEST(Binomial, Examples) {
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(4, 2), 6);
  PascalTable C(30);
  for (long i = 0; i < 30; ++i)
    for (long j = 0; j <= i; ++j) EXPECT_EQ(C(i, j), oracle::binom(i, j));
}

TEST(Transform, NewtonToEvalExamples) {
  EXPECT_EQ(newton_to_eval(V({1, 0, 0, 0})), V({1, 1, 1, 1}));
  EXPECT_EQ(newton_to_eval(V({0, 1, 0, 0})), V({0, 1, 2, 3}));
  EXPECT_EQ(newton_to_eval(V({1, 1, 1, 1})), V({1, 2, 4, 8}));
}

TEST(Transform, EvalToNewtonExamples) {
  EXPECT_EQ(eval_to_newton(V({1, 1, 1, 1})), V({1, 0, 0, 0}));
  EXPECT_EQ(eval_to_newton(V({0, 0, 1})), V({0, 0, 1}));
  EXPECT_EQ(eval_to_newton(V({1, 2, 4, 8})), V({1, 1, 1, 1}));
}

TEST(Transform, EncodeExamples) {
  EXPECT_EQ(encode_tc(V({0, 0, 0})), P({{0, 0}, {0, 0}, {0, 0}}));
  EXPECT_EQ(encode_tc(V({1, 1, 1})), P({{1, 1}, {1, 0}, {1, 0}}));
  EXPECT_EQ(encode_tc(V({0, 1, 2})), P({{0, 0}, {1, 1}, {2, 0}}));
}

TEST(Transform, MatchesForwardDifferences) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 12;
    EvalVector z(n);
    for (auto& x : z) x = random_between(Int(-1000), Int(1000), rng);
    EXPECT_EQ(eval_to_newton(z), oracle::forward_differences(z));
  }
}

TEST(Transform, RoundTripExhaustiveSmall) {
  for (std::size_t n = 1; n <= 6; ++n) {
    PascalTable C(n);
    for_each_vector(n, -3, 3, [&](const EvalVector& z) { ASSERT_EQ(newton_to_eval(eval_to_newton(z, C), C), z); });
  }
}

TEST(Transform, RoundTripRandom) {
  Rng rng(1);
  PascalTable C(12);
  for (int t = 0; t < 10000; ++t) {
    std::size_t n = 1 + rng() % 12;
    EvalVector z(n);
    for (auto& x : z) x = random_between(Int(-3), Int(3), rng);
    ASSERT_EQ(newton_to_eval(eval_to_newton(z, C), C), z);
  }
}

TEST(Transform, Linearity) {
  Rng rng(2);
  for (int t = 0; t < 500; ++t) {
    std::size_t n = 1 + rng() % 16;
    EvalVector x(n), y(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = random_between(Int(-50), Int(50), rng);
      y[i] = random_between(Int(-50), Int(50), rng);
      s[i] = x[i] + y[i];
    }
    auto ex = encode_tc(x), ey = encode_tc(y), es = encode_tc(s);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(es[i].z, ex[i].z + ey[i].z);
      EXPECT_EQ(es[i].a, ex[i].a + ey[i].a);
    }
  }
}

TEST(Transform, OnlineProperty) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng() % 14;
    EvalVector z(n);
    for (auto& x : z) x = random_between(Int(-9), Int(9), rng);
    auto full = encode_tc(z);
    for (std::size_t k = 0; k <= n; ++k) {
      auto part = encode_tc(EvalVector(z.begin(), z.begin() + static_cast<long>(k)));
      ASSERT_EQ(part, CodewordPairSeq(full.begin(), full.begin() + static_cast<long>(k)));
    }
  }
}

TEST(Transform, AdditiveUncertaintyExhaustive) {
  for (std::size_t n = 1; n <= 8; ++n) {
    PascalTable C(n);
    for_each_vector(n, -1, 1, [&](const EvalVector& z) {
      std::size_t c = 0;
      while (c < n && z[c] == 0) ++c;
      if (c == n) return;
      auto a = eval_to_newton(z, C);
      std::size_t sz = sparsity(EvalVector(z.begin() + static_cast<long>(c), z.end()));
      std::size_t sa = sparsity(NewtonVector(a.begin() + static_cast<long>(c), a.end()));
      ASSERT_GE(sz + sa, n - c + 1);
    });
  }
}

TEST(Transform, DistanceHalfBinary) {
  for (std::size_t n = 1; n <= 6; ++n) {
    PascalTable C(n);
    std::vector<EvalVector> xs;
    std::vector<CodewordPairSeq> codes;
    for_each_vector(n, 0, 1, [&](const EvalVector& z) {
      xs.push_back(z);
      codes.push_back(encode_tc(z, C));
    });
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = a + 1; b < xs.size(); ++b) {
        std::size_t s = 0;
        while (xs[a][s] == xs[b][s]) ++s;
        ASSERT_TRUE(oracle::tree_distance_ok(codes[a], codes[b], s));
      }
  }
}

TEST(Transform, CoefficientBound) {
  Rng rng(4);
  for (int t = 0; t < 2000; ++t) {
    std::size_t n = 1 + rng() % 40;
    Int Z = random_between(Int(1), Int(1000), rng);
    EvalVector z(n);
    for (auto& x : z) x = random_between(-Z, Z, rng);
    auto a = eval_to_newton(z);
    for (std::size_t i = 0; i < n; ++i) ASSERT_LE(abs(a[i]), Z << static_cast<mp_bitcnt_t>(i));
  }
}

TEST(Transform, PairHamming) {
  auto x = P({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  EXPECT_EQ(pair_hamming(x, x), 0u);
  auto y = x;
  y[3].a = 9;
  EXPECT_EQ(pair_hamming(x, y), 1u);
  EXPECT_EQ(pair_hamming(P({{0, 0}, {1, 1}}), P({{0, 1}, {1, 1}})), 1u);
  EXPECT_THROW(pair_hamming(x, P({{0, 0}})), PreconditionViolation);
}

TEST(Bounds, MessageAndReceived) {
  EXPECT_NO_THROW(check_message_bound(V({-2, 2}), Int(2)));
  EXPECT_THROW(check_message_bound(V({3}), Int(2)), BoundViolation);
  EXPECT_NO_THROW(check_received_bounds(P({{1, 4}, {0, -4}}), Int(1)));
  EXPECT_THROW(check_received_bounds(P({{1, 5}, {0, 0}}), Int(1)), BoundViolation);
}

TEST(Json, RoundTrip) {
  Rng rng(5);
  EvalVector z(20);
  for (auto& x : z) x = random_between(Int(-1) << 100, Int(1) << 100, rng);
  auto w = encode_tc(z);
  auto j = io::to_json(w);
  EXPECT_EQ(io::pairs_from_json(io::json::parse(j.dump())), w);
  EXPECT_EQ(io::eval_vector_from_json(io::json::parse(io::to_json(z).dump())), z);
  EXPECT_TRUE(io::to_json(z)[0].is_string());
  EXPECT_THROW(io::eval_vector_from_json(io::json::parse("[\"12x\"]")), ParseError);
}

TEST(Prime, SmallExamples) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto a = generate_prime(2, Int(1), seed);
    EXPECT_GT(a.p, 32);
    EXPECT_LE(a.p, 64);
    Rng rng(seed);
    EXPECT_TRUE(is_probable_prime(a.p, 20, rng));
    auto b = generate_prime(1, Int(1), seed);
    EXPECT_TRUE(b.p == 5 || b.p == 7);
    EXPECT_TRUE(satisfies_prime_bounds(a));
  }
}

TEST(Prime, Deterministic) {
  EXPECT_EQ(generate_prime(12, Int(5), 99).p, generate_prime(12, Int(5), 99).p);
  EXPECT_EQ(generate_prime(20, Int(1), 7).p, generate_prime(20, Int(1), 7).p);
}

TEST(Prime, MillerRabinAgainstSieve) {
  Rng rng(6);
  std::vector<char> composite(5000, 0);
  for (std::size_t i = 2; i < composite.size(); ++i)
    for (std::size_t j = 2 * i; j < composite.size(); j += i) composite[j] = 1;
  for (std::size_t v = 2; v < composite.size(); ++v) EXPECT_EQ(is_probable_prime(Int(v), 30, rng), !composite[v]) << v;
  EXPECT_FALSE(is_probable_prime(Int("3215031751"), 30, rng));  // strong pseudoprime to bases 2, 3, 5, 7
}
