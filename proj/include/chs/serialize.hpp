#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "core_transform.hpp"
#include "params.hpp"
#include "variants.hpp"

namespace chs::io {

using json = nlohmann::json;

// Accepts decimal strings or JSON integers.
inline Int int_from_json(const json& j) {
  if (j.is_string()) return parse_int(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
    return Int(std::to_string(j.get<std::int64_t>()));
  }
  throw ParseError("expected an integer or decimal string, got " + j.dump());
}

inline json to_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_dec(x));
  return a;
}

inline EvalVector eval_vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a JSON array of integers");
  EvalVector v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

inline json to_json(const CodewordPairSeq& w) {
  json a = json::array();
  for (const auto& p : w) a.push_back(json::array({to_dec(p.z), to_dec(p.a)}));
  return a;
}

inline CodewordPairSeq pairs_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of [z, a] pairs");
  CodewordPairSeq w;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw ParseError("each pair must be a two-element array");
    w.push_back({int_from_json(p[0]), int_from_json(p[1])});
  }
  return w;
}

inline json to_json(const variants::CyclotomicElement& e) {
  return json{{"ell", e.ell()}, {"coeffs", to_json(e.coeffs())}};
}

inline variants::CyclotomicElement cyclotomic_from_json(const json& j) {
  if (!j.is_object() || !j.contains("ell") || !j.contains("coeffs")) throw ParseError("cyclotomic element needs ell and coeffs");
  return variants::CyclotomicElement(j.at("ell").get<std::size_t>(), eval_vector_from_json(j.at("coeffs")));
}

inline json to_json(const variants::HPComplex& h) {
  return json{{"P", h.P}, {"re", variants::to_hex(h.re)}, {"im", variants::to_hex(h.im)}};
}

inline variants::HPComplex hp_from_json(const json& j) {
  if (!j.is_object() || !j.contains("P") || !j.contains("re") || !j.contains("im"))
    throw ParseError("fixed-point complex needs P, re, im");
  return {variants::from_hex(j.at("re").get<std::string>()), variants::from_hex(j.at("im").get<std::string>()),
          j.at("P").get<unsigned>()};
}

inline json to_json(const decode::DecodeParams& p) {
  return json{{"n", p.n},         {"alpha", p.alpha}, {"beta", p.beta}, {"delta", p.delta},
              {"epsilon", p.epsilon}, {"r", p.r},     {"c", p.c}};
}

inline decode::DecodeParams params_from_json(const json& j) {
  decode::DecodeParams p;
  p.n = j.at("n").get<std::int64_t>();
  p.alpha = j.at("alpha").get<std::int64_t>();
  p.beta = j.at("beta").get<std::int64_t>();
  p.delta = j.at("delta").get<std::int64_t>();
  p.epsilon = j.at("epsilon").get<std::int64_t>();
  p.r = j.at("r").get<double>();
  p.c = j.at("c").get<double>();
  return p;
}

}  // namespace chs::io
