#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "decoder.hpp"
#include "serialize.hpp"

namespace chs::sim {

enum class Placement { UNIFORM, PREFIX, SUFFIX, ADVERSARIAL };

inline std::string to_string(Placement p) {
  switch (p) {
    case Placement::UNIFORM: return "uniform";
    case Placement::PREFIX: return "prefix";
    case Placement::SUFFIX: return "suffix";
    case Placement::ADVERSARIAL: return "adversarial";
  }
  return "?";
}

inline Placement placement_from_string(const std::string& s) {
  if (s == "uniform") return Placement::UNIFORM;
  if (s == "prefix") return Placement::PREFIX;
  if (s == "suffix") return Placement::SUFFIX;
  if (s == "adversarial") return Placement::ADVERSARIAL;
  throw ParseError("unknown placement '" + s + "'");
}

struct Corruption {
  std::size_t index = 0;
  Int z, a;
};

struct ChannelSpec {
  std::size_t errors = 0;
  Placement placement = Placement::UNIFORM;
  std::vector<Corruption> list;  // adversarial placement only
};

// Replaces `errors` pairs by different in-bound pairs. Returns the touched indices.
inline std::vector<std::size_t> apply_channel(CodewordPairSeq& w, const ChannelSpec& ch, const Int& Z, Rng& rng) {
  const std::size_t n = w.size();
  Int za = Z << static_cast<mp_bitcnt_t>(n);
  std::vector<std::size_t> idx;
  if (ch.placement == Placement::ADVERSARIAL) {
    for (const auto& c : ch.list) {
      if (c.index >= n) throw BoundViolation("adversarial index outside [0, n)");
      if (abs(c.z) > Z || abs(c.a) > za) throw BoundViolation("adversarial pair outside the received bounds");
      w[c.index] = {c.z, c.a};
      idx.push_back(c.index);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
  }
  if (ch.errors > n) throw BoundViolation("more errors than positions");
  switch (ch.placement) {
    case Placement::UNIFORM: {
      std::vector<std::size_t> pool(n);
      std::iota(pool.begin(), pool.end(), 0);
      for (std::size_t i = 0; i < ch.errors; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
      }
      idx.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(ch.errors));
      break;
    }
    case Placement::PREFIX:
      for (std::size_t i = 0; i < ch.errors; ++i) idx.push_back(i);
      break;
    case Placement::SUFFIX:
      for (std::size_t i = n - ch.errors; i < n; ++i) idx.push_back(i);
      break;
    default:
      break;
  }
  std::sort(idx.begin(), idx.end());
  auto fresh = [&](const Int& old, const Int& bound) {
    for (;;) {
      Int v = random_between(-bound, bound, rng);
      if (v != old) return v;
    }
  };
  std::uniform_int_distribution<int> kind(0, 2);
  for (auto i : idx) {
    int k = kind(rng);
    if (k != 1) w[i].z = fresh(w[i].z, Z);
    if (k != 0) w[i].a = fresh(w[i].a, za);
  }
  return idx;
}

struct SimConfig {
  std::size_t n = 0;
  Int Z = 1;
  double c = 1.0;
  ChannelSpec channel;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t budget = 16;
  std::size_t threads = 0;  // 0: hardware concurrency
};

struct TrialOutcome {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> error_positions;
  bool accepted = false;
  std::size_t attempts = 0;
  std::size_t verification_distance = 0;
  bool first_symbol_ok = false;
  std::size_t prefix_correct = 0;
  bool exact = false;
  bool false_accept = false;
  std::string failure;
};

struct ExperimentReport {
  SimConfig config;
  decode::DecodeParams params;
  std::size_t prime_bits = 0;
  double failure_budget = 0;
  std::vector<TrialOutcome> outcomes;
  double first_symbol_rate = 0;
  double sigma = 0;  // binomial sd at the guaranteed rate 1 - 2 * budget
  double rate_bound = 0;
  std::size_t accepted = 0, false_accepts = 0;
  double mean_attempts = 0;
  std::vector<double> prefix_curve;  // fraction of trials with z'_i = z_i
  double wall_clock_s = 0;
};

inline std::uint64_t prime_seed(std::uint64_t seed) { return split_seed(seed, 0xffffffffULL); }

inline TrialOutcome run_trial(const SimConfig& cfg, const decode::DecoderContext& ctx, std::size_t t) {
  TrialOutcome out;
  out.trial = t;
  out.seed = split_seed(cfg.seed, t);
  Rng msg_rng = make_rng(out.seed, 1), ch_rng = make_rng(out.seed, 2), dec_rng = make_rng(out.seed, 3);
  const std::size_t n = cfg.n;
  EvalVector z(n);
  for (auto& v : z) v = random_between(-cfg.Z, cfg.Z, msg_rng);
  CodewordPairSeq sent = encode_tc(z, ctx.pascal());
  CodewordPairSeq got = sent;
  out.error_positions = apply_channel(got, cfg.channel, cfg.Z, ch_rng);
  try {
    auto res = decode::amplified_decode(got, cfg.Z, ctx, dec_rng, cfg.budget);
    out.accepted = true;
    out.attempts = res.attempts;
    out.verification_distance = res.distance;
    // Independent re-check of the acceptance criterion.
    bool in_bounds = std::all_of(res.z.begin(), res.z.end(), [&](const Int& v) { return abs(v) <= cfg.Z; });
    std::size_t d = pair_hamming(encode_tc(res.z), got);
    out.false_accept = !in_bounds || 2 * d > n || d != res.distance;
    while (out.prefix_correct < n && res.z[out.prefix_correct] == z[out.prefix_correct]) ++out.prefix_correct;
    out.first_symbol_ok = n > 0 && res.z[0] == z[0];
    out.exact = out.prefix_correct == n;
  } catch (const BudgetExhausted& e) {
    out.attempts = cfg.budget;
    out.failure = e.what();
  }
  return out;
}

inline ExperimentReport summarize(const SimConfig& cfg, const decode::DecoderContext& ctx,
                                  std::vector<TrialOutcome> outcomes) {
  ExperimentReport rep;
  rep.config = cfg;
  rep.params = *ctx.params_for(cfg.n);
  rep.prime_bits = mpz_sizeinbase(ctx.p().get_mpz_t(), 2);
  rep.failure_budget = decode::failure_budget(rep.params);
  rep.outcomes = std::move(outcomes);
  const double T = static_cast<double>(rep.outcomes.size());
  std::size_t first_ok = 0, total_attempts = 0;
  rep.prefix_curve.assign(cfg.n, 0.0);
  for (const auto& o : rep.outcomes) {
    first_ok += o.first_symbol_ok;
    rep.accepted += o.accepted;
    rep.false_accepts += o.false_accept;
    total_attempts += o.attempts;
    for (std::size_t i = 0; i < o.prefix_correct; ++i) rep.prefix_curve[i] += 1;
  }
  for (auto& v : rep.prefix_curve) v = T > 0 ? v / T : 0;
  rep.first_symbol_rate = T > 0 ? first_ok / T : 0;
  rep.mean_attempts = T > 0 ? total_attempts / T : 0;
  double p0 = std::max(0.0, 1 - 2 * rep.failure_budget);
  rep.sigma = T > 0 ? std::sqrt(p0 * (1 - p0) / T) : 0;
  rep.rate_bound = 1 - 2 * rep.failure_budget - 3 * rep.sigma;
  return rep;
}

inline ExperimentReport simulate(const SimConfig& cfg, const decode::DecoderContext& ctx) {
  if (ctx.field().n != cfg.n) throw PreconditionViolation("simulate: context length differs from n");
  if (!ctx.params_for(cfg.n)) throw InfeasibleParams("no feasible parameters at n=" + std::to_string(cfg.n));
  auto start = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> outcomes(cfg.trials);
  std::size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(cfg.trials, 1));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t; (t = next++) < cfg.trials;) outcomes[t] = run_trial(cfg, ctx, t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  auto rep = summarize(cfg, ctx, std::move(outcomes));
  rep.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline ExperimentReport simulate(const SimConfig& cfg) {
  decode::DecoderContext ctx(generate_prime(cfg.n, cfg.Z, prime_seed(cfg.seed)), cfg.c);
  return simulate(cfg, ctx);
}

inline std::optional<std::size_t> largest_feasible_n(std::size_t max_n, double c) {
  for (std::size_t n = max_n; n >= 8; --n) {
    try {
      decode::search_params(static_cast<std::int64_t>(n), c);
      return n;
    } catch (const InfeasibleParams&) {
    }
  }
  return std::nullopt;
}

inline io::json to_json(const ExperimentReport& r) {
  using io::json;
  json trials = json::array();
  for (const auto& o : r.outcomes)
    trials.push_back({{"trial", o.trial},
                      {"seed", std::to_string(o.seed)},
                      {"error_positions", o.error_positions},
                      {"accepted", o.accepted},
                      {"attempts", o.attempts},
                      {"verification_distance", o.verification_distance},
                      {"first_symbol_ok", o.first_symbol_ok},
                      {"prefix_correct", o.prefix_correct},
                      {"exact", o.exact},
                      {"false_accept", o.false_accept},
                      {"failure", o.failure}});
  json channel = {{"errors", r.config.channel.errors}, {"placement", to_string(r.config.channel.placement)}};
  if (r.config.channel.placement == Placement::ADVERSARIAL) {
    json list = json::array();
    for (const auto& c : r.config.channel.list) list.push_back({c.index, to_dec(c.z), to_dec(c.a)});
    channel["list"] = list;
  }
  return {{"config",
           {{"n", r.config.n},
            {"Z", to_dec(r.config.Z)},
            {"c", r.config.c},
            {"channel", channel},
            {"trials", r.config.trials},
            {"seed", std::to_string(r.config.seed)},
            {"budget", r.config.budget}}},
          {"params", io::to_json(r.params)},
          {"prime_bits", r.prime_bits},
          {"failure_budget", r.failure_budget},
          {"aggregate",
           {{"first_symbol_rate", r.first_symbol_rate},
            {"sigma", r.sigma},
            {"rate_bound", r.rate_bound},
            {"accepted", r.accepted},
            {"false_accepts", r.false_accepts},
            {"mean_attempts", r.mean_attempts},
            {"prefix_curve", r.prefix_curve}}},
          {"wall_clock_s", r.wall_clock_s},
          {"trials", trials}};
}

}  // namespace chs::sim
