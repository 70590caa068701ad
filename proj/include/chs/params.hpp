#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace chs::decode {

struct DecodeParams {
  std::int64_t n = 0, alpha = 0, beta = 0, delta = 0, epsilon = 0;
  double r = 0;
  double c = 1;
};

enum class Condition { R_BOUNDS = 1, WINDOW = 2, DELTA = 3, ALPHA_LE_BETA = 4, LOCATABLE = 5, RANGE = 6 };

struct Violation {
  Condition which;
  std::string detail;
};

// Largest admissible delta (real-valued).
inline long double delta_bound(const DecodeParams& p) {
  long double n = p.n, a = p.alpha, b = p.beta, e = p.epsilon, r = p.r;
  return -a * a * e / n - a * b * e / n - r * (n - (a + b) + 1) + a - 1;
}

// Slack of each condition; negative means violated.
struct ConditionSlacks {
  long double r_lower, r_upper, window, delta, alpha_le_beta, locatable;
};

inline ConditionSlacks condition_slacks(const DecodeParams& p) {
  ConditionSlacks s{};
  long double n = p.n > 0 ? p.n : 1;
  s.r_lower = p.r;
  s.r_upper = static_cast<long double>(p.alpha) * p.epsilon / n - p.r;
  s.window = n / 2 - static_cast<long double>(p.alpha + p.beta - 1);
  s.delta = p.n > 0 ? delta_bound(p) - p.delta : -1;
  s.alpha_le_beta = p.beta - p.alpha;
  s.locatable = p.delta - p.epsilon;
  return s;
}

inline std::vector<Violation> validate_params(const DecodeParams& p) {
  std::vector<Violation> out;
  auto in_range = [&](std::int64_t v) { return v >= 1 && v <= p.n; };
  if (p.n < 1 || !in_range(p.alpha) || !in_range(p.beta) || !in_range(p.delta) || !in_range(p.epsilon) ||
      !(p.r > 0 && p.r < 1) || !(p.c > 0))
    out.push_back({Condition::RANGE, "alpha, beta, delta, epsilon must lie in [1, n], r in (0, 1), c > 0"});
  if (p.n < 1) return out;
  auto s = condition_slacks(p);
  if (!(s.r_lower > 0 && s.r_upper > 0)) out.push_back({Condition::R_BOUNDS, "0 < r < alpha*epsilon/n"});
  if (s.window < 0) out.push_back({Condition::WINDOW, "alpha + beta - 1 <= n/2"});
  if (s.delta < 0) out.push_back({Condition::DELTA, "delta above its bound"});
  if (s.alpha_le_beta < 0) out.push_back({Condition::ALPHA_LE_BETA, "alpha <= beta"});
  if (s.locatable < 0) out.push_back({Condition::LOCATABLE, "delta - epsilon + 1 >= 1"});
  return out;
}

inline std::string describe(const std::vector<Violation>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "; ") + x.detail;
  return s;
}

inline DecodeParams closed_form_params(std::int64_t n, double c) {
  if (n < 2 || !(c > 0)) throw InfeasibleParams("closed form needs n >= 2 and c > 0");
  long double nn = n, ln = std::log(nn), sq = std::sqrt(static_cast<long double>(c) + 1);
  DecodeParams p;
  p.n = n;
  p.c = c;
  p.alpha = p.beta = static_cast<std::int64_t>(std::floor((2 + 2 * sq) * std::sqrt(nn * ln)));
  long double eps = std::sqrt(nn) / ((8 * c + 16 * sq + 17) * std::sqrt(ln)) - 2;
  if (eps < 1) throw InfeasibleParams("closed form infeasible at n=" + std::to_string(n) + ": epsilon < 1");
  p.epsilon = static_cast<std::int64_t>(std::floor(eps));
  long double r = std::sqrt((c + 1) * ln / nn);
  p.r = static_cast<double>(r);
  long double a = p.alpha;
  p.delta = static_cast<std::int64_t>(std::floor(-2 * a * a * p.epsilon / nn - r * (nn - 2 * a + 1) + a - 1));
  auto v = validate_params(p);
  if (!v.empty()) throw InfeasibleParams("closed form infeasible at n=" + std::to_string(n) + ": " + describe(v));
  return p;
}

// Lexicographic: largest epsilon, then largest r on the grid r* k/64, then most
// locatable indices, then smallest alpha. beta = alpha throughout: raising beta
// only lowers the delta bound.
inline DecodeParams search_params(std::int64_t n, double c) {
  if (n < 8) throw PreconditionViolation("search_params needs n >= 8");
  if (!(c > 0)) throw PreconditionViolation("search_params needs c > 0");
  const long double nn = n;
  const long double r_star = std::sqrt((static_cast<long double>(c) + 1) * std::log(nn) / nn);
  const std::int64_t a_max = static_cast<std::int64_t>(std::floor((nn / 2 + 1) / 2));

  for (std::int64_t eps = n / 4; eps >= 1; --eps) {
    for (int k = 64; k >= 1; --k) {
      const double r = static_cast<double>(r_star * k / 64);
      if (!(r < 1)) continue;
      DecodeParams trial;
      trial.n = n;
      trial.epsilon = eps;
      trial.r = r;
      auto f = [&](std::int64_t a) {
        trial.alpha = trial.beta = a;
        return std::floor(delta_bound(trial));
      };
      std::int64_t a_min = static_cast<std::int64_t>(std::floor(r * nn / eps));
      if (a_min < 1) a_min = 1;
      while (a_min <= a_max && !(r < static_cast<long double>(a_min) * eps / nn)) ++a_min;
      if (a_min > a_max) continue;
      long double vertex = (1 + 2 * static_cast<long double>(r)) * nn / (4 * eps);
      std::int64_t v = static_cast<std::int64_t>(std::floor(vertex));
      std::int64_t best_a = a_min;
      long double best = f(a_min);
      for (std::int64_t cand : {v - 1, v, v + 1, v + 2, a_max}) {
        if (cand < a_min || cand > a_max) continue;
        long double val = f(cand);
        if (val > best) best = val, best_a = cand;
      }
      if (best < eps || best > nn) continue;
      // floor(f) is nondecreasing left of the vertex: the smallest maximizer by bisection.
      std::int64_t lo = a_min, hi = best_a;
      while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (f(mid) >= best) hi = mid;
        else lo = mid + 1;
      }
      DecodeParams p;
      p.n = n;
      p.c = c;
      p.alpha = p.beta = lo;
      p.epsilon = eps;
      p.r = r;
      p.delta = static_cast<std::int64_t>(best);
      if (!validate_params(p).empty()) continue;
      return p;
    }
  }
  throw InfeasibleParams("no feasible parameters at n=" + std::to_string(n));
}

// Union bound over the locator calls that feed one recovered symbol.
inline double failure_budget(const DecodeParams& p) {
  double calls = 2.0 * static_cast<double>(p.delta - p.epsilon + 1);
  double b = calls * std::exp(-static_cast<double>(p.n) * p.r * p.r);
  return b > 1 ? 1 : b;
}

}  // namespace chs::decode
