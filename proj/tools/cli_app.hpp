#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "chs/chs.hpp"

namespace chs::cli {

using io::json;

enum ExitCode { OK = 0, FAILURE = 1, PARSE = 2, BOUNDS = 3, BUDGET = 4, INFEASIBLE = 5 };

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

inline std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), {}};
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

inline std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> v;
  for (const auto& t : split(s, ',')) v.push_back(parse_int(t));
  if (v.empty()) throw ParseError("empty integer list");
  return v;
}

inline mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

struct ThetaOpts {
  std::string poly = "-1,1,1", lo = "3/5", hi = "7/10";
  variants::AlgebraicReal get() const { return {parse_int_list(poly), parse_rational(lo), parse_rational(hi)}; }
};

inline void add_theta(CLI::App* cmd, ThetaOpts& t) {
  cmd->add_option("--theta-poly", t.poly, "minimal polynomial of theta, lowest degree first");
  cmd->add_option("--theta-lo", t.lo, "isolating interval lower end (rational)");
  cmd->add_option("--theta-hi", t.hi, "isolating interval upper end (rational)");
}

inline json params_row(const std::string& method, std::int64_t n, double c) {
  json row = {{"method", method}, {"n", n}, {"c", c}};
  try {
    auto p = method == "closed_form" ? decode::closed_form_params(n, c) : decode::search_params(n, c);
    auto s = decode::condition_slacks(p);
    auto v = decode::validate_params(p);
    row["feasible"] = v.empty();
    row["params"] = io::to_json(p);
    row["slacks"] = {{"r_lower", static_cast<double>(s.r_lower)},
                     {"r_upper", static_cast<double>(s.r_upper)},
                     {"window", static_cast<double>(s.window)},
                     {"delta", static_cast<double>(s.delta)},
                     {"alpha_le_beta", static_cast<double>(s.alpha_le_beta)},
                     {"locatable", static_cast<double>(s.locatable)}};
    json viol = json::array();
    for (const auto& x : v) viol.push_back(x.detail);
    row["violations"] = viol;
    row["failure_budget"] = decode::failure_budget(p);
  } catch (const Error& e) {
    row["feasible"] = false;
    row["error"] = e.what();
  }
  return row;
}

inline std::string params_csv(const json& rows) {
  std::ostringstream os;
  os << "method,n,c,feasible,alpha,beta,delta,epsilon,r,slack_r_lower,slack_r_upper,slack_window,slack_delta,"
        "slack_alpha_le_beta,slack_locatable,note\n";
  for (const auto& r : rows) {
    os << r["method"].get<std::string>() << ',' << r["n"] << ',' << r["c"] << ',' << (r["feasible"].get<bool>() ? 1 : 0);
    if (r.contains("params")) {
      const auto& p = r["params"];
      const auto& s = r["slacks"];
      os << ',' << p["alpha"] << ',' << p["beta"] << ',' << p["delta"] << ',' << p["epsilon"] << ',' << p["r"];
      for (const char* k : {"r_lower", "r_upper", "window", "delta", "alpha_le_beta", "locatable"}) os << ',' << s[k];
      os << ",\n";
    } else {
      os << ",,,,,,,,,,,," << '"' << r.value("error", "") << "\"\n";
    }
  }
  return os.str();
}

inline json verify_variants(const std::string& code, std::size_t n, const std::vector<Int>& alphabet,
                            std::size_t budget, std::size_t ell, unsigned P, double c_prec, const ThetaOpts& th) {
  json rep = {{"code", code}, {"n", n}, {"alphabet", io::to_json(alphabet)}, {"budget", budget}};
  std::optional<variants::DistanceCounterexample> cex;
  auto theta = th.get();
  if (code == "chs") {
    PascalTable C(n);
    cex = variants::check_distance_exhaustive([&](const EvalVector& z) { return encode_tc(z, C); }, n, alphabet, budget);
  } else if (code == "cyclotomic") {
    if (!ell) ell = variants::cyclotomic_conductor(n);
    rep["ell"] = ell;
    cex = variants::check_distance_exhaustive([&](const EvalVector& z) { return variants::encode_cyclotomic(z, ell); },
                                              n, alphabet, budget);
  } else if (code == "sunflower" || code == "weyl") {
    unsigned exp = code == "sunflower" ? 8 : 11;
    if (!P) P = variants::min_precision(n, exp, c_prec);
    rep["precision"] = P;
    if (code == "sunflower")
      cex = variants::check_distance_exhaustive(
          [&](const EvalVector& z) { return variants::encode_sunflower(z, theta, P, c_prec); }, n, alphabet, budget);
    else
      cex = variants::check_distance_exhaustive(
          [&](const EvalVector& z) { return variants::encode_weyl_squares(z, theta, P, c_prec); }, n, alphabet, budget);
  } else {
    throw ParseError("unknown code '" + code + "'");
  }
  rep["distance_ok"] = !cex;
  if (cex)
    rep["counterexample"] = {{"x", io::to_json(cex->x)},
                             {"y", io::to_json(cex->y)},
                             {"split", cex->split},
                             {"ell", cex->ell},
                             {"distance", cex->distance}};

  std::size_t checked = 0, checked_deg = 0;
  json bad = json::array();
  auto record = [&](const std::vector<variants::BatteryViolation>& v) {
    for (const auto& x : v) bad.push_back({{"rows", x.sel.rows}, {"cols", x.sel.cols}, {"det", x.det.str()}, {"reason", x.reason}});
  };
  record(variants::q_lgv_battery(3, 7, &checked));
  if (code == "cyclotomic" && n > 0) {
    record(variants::q_lgv_battery(3, n, &checked_deg, static_cast<long>(ell) - 1));
    checked += checked_deg;
  }
  rep["battery"] = {{"checked", checked}, {"violations", bad}};
  bool margins_ok = true;
  if (code == "sunflower" || code == "weyl") {
    auto kind = code == "sunflower" ? variants::HPKind::SUNFLOWER : variants::HPKind::WEYL;
    std::size_t mr = n ? std::min<std::size_t>(n - 1, 5) : 0, mchecked = 0;
    json mbad = json::array();
    for (const auto& sel : lgv::enumerate_selections(2, mr)) {
      ++mchecked;
      auto m = variants::determinant_margin(kind, sel, theta, P);
      if (!m.ok) mbad.push_back({{"rows", sel.rows}, {"cols", sel.cols}, {"abs_det", m.abs_det}, {"log2_budget", m.log2_budget}});
    }
    margins_ok = mbad.empty();
    rep["margins"] = {{"checked", mchecked}, {"violations", mbad}};
  }
  rep["pass"] = !cex && bad.empty() && margins_ok;
  return rep;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Integer tree codes: encoding, randomized decoding and variant verification"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "top-level seed");
  app.add_option("--out", g.out, "write output here instead of stdout");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string input = "-", code = "chs", Z_s = "1";
  std::size_t ell = 0, budget = 16, n = 0, trials = 1, errors = 0, threads = 0;
  unsigned precision = 0;
  double c = 1.0, c_prec = 1.0;
  ThetaOpts theta;
  std::string placement = "uniform", adversarial, alphabet_s = "0,1", S_s = "1,2,4,8", source = "newton", n_s;
  std::size_t vbudget = 100000;

  auto* enc = app.add_subcommand("encode", "encode a JSON integer array");
  enc->add_option("--input", input, "message file, '-' for stdin");
  enc->add_option("--code", code)->check(CLI::IsMember({"chs", "cyclotomic", "sunflower", "weyl"}));
  enc->add_option("--Z", Z_s, "input bound");
  enc->add_option("--ell", ell, "cyclotomic conductor (default: smallest prime above n^3)");
  enc->add_option("--precision", precision, "fixed-point bits (default: c_prec * n^8 or n^11)");
  enc->add_option("--c-prec", c_prec, "precision constant");
  add_theta(enc, theta);

  auto* dec = app.add_subcommand("decode", "decode a chs codeword file");
  dec->add_option("--input", input, "codeword file, '-' for stdin");
  dec->add_option("--Z", Z_s, "input bound");
  dec->add_option("--c", c, "success exponent");
  dec->add_option("--budget", budget, "amplification attempts");

  auto* sim = app.add_subcommand("simulate", "seeded channel experiment");
  sim->add_option("--n", n)->required();
  sim->add_option("--Z", Z_s);
  sim->add_option("--c", c);
  sim->add_option("--errors", errors);
  sim->add_option("--placement", placement)->check(CLI::IsMember({"uniform", "prefix", "suffix", "adversarial"}));
  sim->add_option("--adversarial", adversarial, "index:z:a triples, comma separated");
  sim->add_option("--trials", trials);
  sim->add_option("--budget", budget);
  sim->add_option("--threads", threads, "worker threads (0: all cores)");

  auto* par = app.add_subcommand("params", "closed-form and searched decoder parameters");
  par->add_option("--n", n_s, "depth; comma separated for several")->required();
  par->add_option("--c", c);

  auto* ver = app.add_subcommand("verify-variants", "exhaustive distance and determinant checks");
  ver->add_option("--code", code)->check(CLI::IsMember({"chs", "cyclotomic", "sunflower", "weyl"}));
  ver->add_option("--n", n)->required();
  ver->add_option("--alphabet", alphabet_s);
  ver->add_option("--budget", vbudget, "maximum input pairs");
  ver->add_option("--ell", ell);
  ver->add_option("--precision", precision);
  ver->add_option("--c-prec", c_prec);
  add_theta(ver, theta);

  auto* rip = app.add_subcommand("rip", "empirical restricted-isometry probe");
  rip->add_option("--source", source)->check(CLI::IsMember({"newton", "cyclotomic", "sunflower", "weyl"}));
  rip->add_option("--n", n)->required();
  rip->add_option("--S", S_s, "sparsity levels, comma separated");
  rip->add_option("--trials", trials);
  rip->add_option("--ell", ell);
  rip->add_option("--precision", precision);
  add_theta(rip, theta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return PARSE;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) {
      err << "cannot write '" << g.out << "'\n";
      return FAILURE;
    }
    sink = &file;
  }
  auto emit_json = [&](const json& j) { *sink << j.dump(2) << '\n'; };

  try {
    Int Z = parse_int(Z_s);
    if (Z < 1) throw ParseError("Z must be positive");
    if (*enc) {
      auto z = io::eval_vector_from_json(parse_json(read_input(input)));
      if (z.empty()) throw ParseError("message must be nonempty");
      check_message_bound(z, Z);
      json doc = {{"code", code}, {"n", z.size()}, {"Z", to_dec(Z)}};
      if (code == "chs") {
        doc["pairs"] = io::to_json(encode_tc(z));
      } else if (code == "cyclotomic") {
        if (!ell) ell = variants::cyclotomic_conductor(z.size());
        doc["ell"] = ell;
        json pairs = json::array();
        for (const auto& s : variants::encode_cyclotomic(z, ell)) pairs.push_back({{"z", to_dec(s.z)}, {"b", io::to_json(s.b)}});
        doc["pairs"] = pairs;
      } else {
        unsigned exp = code == "sunflower" ? 8 : 11;
        if (!precision) precision = variants::min_precision(z.size(), exp, c_prec);
        auto th = theta.get();
        auto syms = code == "sunflower" ? variants::encode_sunflower(z, th, precision, c_prec)
                                        : variants::encode_weyl_squares(z, th, precision, c_prec);
        doc["precision"] = precision;
        doc["theta"] = {{"poly", theta.poly}, {"lo", theta.lo}, {"hi", theta.hi}};
        json pairs = json::array();
        for (const auto& s : syms) pairs.push_back({{"z", to_dec(s.z)}, {"b", io::to_json(s.b)}});
        doc["pairs"] = pairs;
      }
      emit_json(doc);
      return OK;
    }
    if (*dec) {
      json doc = parse_json(read_input(input));
      std::string kind = doc.is_object() ? doc.value("code", "chs") : "chs";
      if (kind != "chs") {
        err << "no decoder exists for '" << kind << "' codewords; only chs codewords can be decoded\n";
        return INFEASIBLE;
      }
      auto w = io::pairs_from_json(doc.is_object() ? doc.at("pairs") : doc);
      if (w.empty()) throw ParseError("codeword must be nonempty");
      auto ctx = decode::make_context(w.size(), Z, c, sim::prime_seed(g.seed));
      Rng rng = make_rng(g.seed, 0);
      auto res = decode::amplified_decode(w, Z, ctx, rng, budget);
      emit_json({{"message", io::to_json(res.z)},
                 {"report",
                  {{"attempts", res.attempts},
                   {"verification_distance", res.distance},
                   {"n", w.size()},
                   {"params", io::to_json(*ctx.params_for(w.size()))},
                   {"seed", std::to_string(g.seed)}}}});
      return OK;
    }
    if (*sim) {
      sim::SimConfig cfg;
      cfg.n = n;
      cfg.Z = Z;
      cfg.c = c;
      cfg.trials = trials;
      cfg.seed = g.seed;
      cfg.budget = budget;
      cfg.threads = threads;
      cfg.channel.errors = errors;
      cfg.channel.placement = sim::placement_from_string(placement);
      for (const auto& t : split(adversarial, ',')) {
        auto f = split(t, ':');
        if (f.size() != 3) throw ParseError("adversarial entries are index:z:a");
        cfg.channel.list.push_back({std::stoul(f[0]), parse_int(f[1]), parse_int(f[2])});
      }
      if (n < 8) throw InfeasibleParams("no feasible parameters below n=8");
      decode::search_params(static_cast<std::int64_t>(n), c);
      auto rep = sim::simulate(cfg);
      if (g.format == "csv") {
        *sink << "trial,seed,accepted,attempts,verification_distance,first_symbol_ok,prefix_correct,exact,false_accept\n";
        for (const auto& o : rep.outcomes)
          *sink << o.trial << ',' << o.seed << ',' << o.accepted << ',' << o.attempts << ',' << o.verification_distance
                << ',' << o.first_symbol_ok << ',' << o.prefix_correct << ',' << o.exact << ',' << o.false_accept << '\n';
      } else {
        emit_json(sim::to_json(rep));
      }
      return OK;
    }
    if (*par) {
      json rows = json::array();
      for (const auto& t : split(n_s, ',')) {
        std::int64_t nn = std::stoll(t);
        rows.push_back(params_row("closed_form", nn, c));
        rows.push_back(params_row("search", nn, c));
      }
      if (g.format == "csv") *sink << params_csv(rows);
      else emit_json(rows);
      return OK;
    }
    if (*ver) {
      auto rep = verify_variants(code, n, parse_int_list(alphabet_s), vbudget, ell, precision, c_prec, theta);
      emit_json(rep);
      return rep["pass"].get<bool>() ? OK : FAILURE;
    }
    if (*rip) {
      std::vector<std::size_t> levels;
      for (const auto& t : split(S_s, ',')) levels.push_back(std::stoul(t));
      convex::VariantOptions opt;
      opt.ell = ell;
      opt.theta = theta.get();
      if (precision) opt.precision = precision;
      static const std::map<std::string, convex::PointSource> sources = {{"newton", convex::PointSource::NEWTON},
                                                                          {"cyclotomic", convex::PointSource::CYCLOTOMIC},
                                                                          {"sunflower", convex::PointSource::SUNFLOWER},
                                                                          {"weyl", convex::PointSource::WEYL}};
      if (g.format == "json") {
        json rows = json::array();
        for (auto S : levels) {
          Rng rng = make_rng(g.seed, 0);
          auto est = convex::variant_rip_probe(sources.at(source), n, S, trials, rng, opt);
          rows.push_back({{"source", source}, {"n", n}, {"S", S}, {"trials", trials}, {"delta_hat", est.delta_hat},
                          {"seed", std::to_string(g.seed)}});
        }
        emit_json(rows);
      } else {
        *sink << "source,n,S,trials,delta_hat,seed\n";
        for (auto S : levels) {
          Rng rng = make_rng(g.seed, 0);
          auto est = convex::variant_rip_probe(sources.at(source), n, S, trials, rng, opt);
          std::ostringstream v;
          v.precision(17);
          v << est.delta_hat;
          *sink << source << ',' << n << ',' << S << ',' << trials << ',' << v.str() << ',' << g.seed << '\n';
        }
      }
      return OK;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return PARSE;
  } catch (const BoundViolation& e) {
    err << "bound violation: " << e.what() << '\n';
    return BOUNDS;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return BUDGET;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return BUDGET;
  } catch (const InfeasibleParams& e) {
    err << "infeasible: " << e.what() << '\n';
    return INFEASIBLE;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return FAILURE;
  }
  return FAILURE;
}

}  // namespace chs::cli
