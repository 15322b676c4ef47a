#pragma once

// JSON input schema and report serialization.

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "edp/error.hpp"
#include "edp/monogrp.hpp"
#include "edp/oracle.hpp"
#include "edp/pipeline.hpp"
#include "edp/stab.hpp"
#include "edp/symrank.hpp"
#include "edp/zlat.hpp"

namespace edp {

using json = nlohmann::json;

struct ParsedInput {
  MonomialGroupPresentation presentation;
  std::vector<RepBlock> extra_blocks;
};

namespace detail {

inline Int parse_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<std::uint64_t>()) : Int(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return Int(s);
  }
  fail(ErrorCode::InvalidInput, where + ": expected an integer");
}

inline std::uint64_t parse_count(const json& j, const std::string& where) {
  Int x = parse_int(j, where);
  if (x < 0 || x > std::numeric_limits<std::uint32_t>::max()) fail(ErrorCode::InvalidInput, where + ": out of range");
  return x.convert_to<std::uint64_t>();
}

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) fail(ErrorCode::InvalidInput, where + ": missing key '" + key + "'");
  return j.at(key);
}

inline void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(ErrorCode::InvalidInput, where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(ErrorCode::InvalidInput, where + ": unknown key '" + it.key() + "'");
}

inline std::vector<IntVector> parse_weights(const json& j, std::size_t d, const std::string& where) {
  if (!j.is_array()) fail(ErrorCode::InvalidInput, where + ": weights must be an array");
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + ".weights[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != d) fail(ErrorCode::InvalidInput, w + ": expected " + std::to_string(d) + " integers");
    IntVector v;
    for (const auto& x : j[i]) v.push_back(parse_int(x, w));
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<MonomialElement> parse_generators(const json& j, std::size_t m, const std::string& where) {
  if (!j.is_array()) fail(ErrorCode::InvalidInput, where + ": generators must be an array");
  std::vector<MonomialElement> out;
  for (std::size_t g = 0; g < j.size(); ++g) {
    const std::string w = where + ".generators[" + std::to_string(g) + "]";
    reject_unknown(j[g], {"perm", "coeff_num", "coeff_den"}, w);
    const auto& perm = require(j[g], "perm", w);
    const auto& num = require(j[g], "coeff_num", w);
    const auto& den = require(j[g], "coeff_den", w);
    if (!perm.is_array() || !num.is_array() || !den.is_array() || perm.size() != m || num.size() != m || den.size() != m)
      fail(ErrorCode::InvalidInput, w + ": perm, coeff_num and coeff_den must each have one entry per line");
    MonomialElement x;
    for (std::size_t i = 0; i < m; ++i) {
      auto img = parse_count(perm[i], w + ".perm");
      if (img < 1 || img > m) fail(ErrorCode::InvalidInput, w + ".perm: entries must lie in 1.." + std::to_string(m));
      x.perm.push_back(img - 1);
      Int dd = parse_int(den[i], w + ".coeff_den");
      if (dd <= 0) fail(ErrorCode::InvalidInput, w + ".coeff_den: denominators must be positive");
      x.coeff.emplace_back(parse_int(num[i], w + ".coeff_num"), dd);
    }
    if (!is_permutation(x.perm)) fail(ErrorCode::InvalidInput, w + ".perm: not a permutation");
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace detail

inline ParsedInput parse_input(const json& j) {
  detail::reject_unknown(j, {"p", "torus_rank", "root_of_unity_exponent", "weights", "generators", "extra_blocks", "split"},
                         "input");
  ParsedInput in;
  auto& P = in.presentation;
  P.p = detail::parse_count(detail::require(j, "p", "input"), "p");
  P.torus_rank = detail::parse_count(detail::require(j, "torus_rank", "input"), "torus_rank");
  P.root_of_unity_exponent =
      detail::parse_count(detail::require(j, "root_of_unity_exponent", "input"), "root_of_unity_exponent");
  P.weights = detail::parse_weights(detail::require(j, "weights", "input"), P.torus_rank, "input");
  P.generators = detail::parse_generators(detail::require(j, "generators", "input"), P.lines(), "input");
  if (j.contains("split")) {
    if (!j["split"].is_boolean()) fail(ErrorCode::InvalidInput, "split: expected a boolean");
    P.split_claim = j["split"].get<bool>();
  }
  if (j.contains("extra_blocks")) {
    const auto& blocks = j["extra_blocks"];
    if (!blocks.is_array()) fail(ErrorCode::InvalidInput, "extra_blocks: expected an array");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const std::string w = "extra_blocks[" + std::to_string(b) + "]";
      detail::reject_unknown(blocks[b], {"weights", "generators"}, w);
      RepBlock blk;
      blk.weights = detail::parse_weights(detail::require(blocks[b], "weights", w), P.torus_rank, w);
      blk.generators = detail::parse_generators(detail::require(blocks[b], "generators", w), blk.weights.size(), w);
      if (blk.generators.size() != P.generators.size())
        fail(ErrorCode::InvalidInput, w + ": needs one generator per presentation generator");
      in.extra_blocks.push_back(std::move(blk));
    }
  }
  return in;
}

inline ParsedInput parse_input(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  return parse_input(j);
}

// ---------------------------------------------------------------------------
// Emission.  Integers that fit in 64 bits are numbers, larger ones strings.

inline json to_json(const Int& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return x.convert_to<std::int64_t>();
  return x.str();
}

inline json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

template <class T>
json optional_json(const std::optional<T>& x) {
  return x ? json(*x) : json(nullptr);
}

inline json generators_json(const std::vector<MonomialElement>& gens) {
  json a = json::array();
  for (const auto& g : gens) {
    json perm = json::array(), num = json::array(), den = json::array();
    for (std::size_t i = 0; i < g.size(); ++i) {
      perm.push_back(g.perm[i] + 1);
      num.push_back(to_json(g.coeff[i].num()));
      den.push_back(to_json(g.coeff[i].den()));
    }
    a.push_back({{"perm", perm}, {"coeff_num", num}, {"coeff_den", den}});
  }
  return a;
}

inline json weights_json(const std::vector<IntVector>& w) {
  json a = json::array();
  for (const auto& v : w) a.push_back(to_json(v));
  return a;
}

/// The input schema; parse_input(to_json(P)) reproduces P.
inline json to_json(const MonomialGroupPresentation& P, const std::vector<RepBlock>& extra = {}) {
  json j = {{"p", P.p},
            {"torus_rank", P.torus_rank},
            {"root_of_unity_exponent", P.root_of_unity_exponent},
            {"weights", weights_json(P.weights)},
            {"generators", generators_json(P.generators)}};
  if (P.split_claim) j["split"] = *P.split_claim;
  if (!extra.empty()) {
    json blocks = json::array();
    for (const auto& b : extra) blocks.push_back({{"weights", weights_json(b.weights)}, {"generators", generators_json(b.generators)}});
    j["extra_blocks"] = blocks;
  }
  return j;
}

inline json element_json(const MonomialElement& x) {
  json perm = json::array(), coeff = json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    perm.push_back(x.perm[i] + 1);
    coeff.push_back(x.coeff[i].str());
  }
  return {{"perm", perm}, {"coeff", coeff}, {"cycles", cycle_string(x.perm)}};
}

inline json to_json(const FiniteAbelianStructure& s) {
  json f = json::array();
  for (const auto& x : s.invariant_factors) f.push_back(to_json(x));
  return {{"invariant_factors", f}, {"free_rank", s.free_rank}, {"order", s.is_finite() ? to_json(s.torsion_order()) : json(nullptr)}};
}

inline json to_json(const ValidationReport& r) {
  json mats = json::array();
  for (const auto& m : r.induced_matrices) mats.push_back(to_json(m));
  return {{"component_order", r.component_order},
          {"induced_matrices", mats},
          {"split_witness", r.split_witness},
          {"literal_group_order", r.literal_group_order},
          {"diagnostics", r.diagnostics}};
}

inline json to_json(const StabilizerReport& s, const ComponentGroup& F) {
  json elems = json::array();
  for (auto x : s.pi_S) elems.push_back(element_json(F.representative(x)));
  return {{"torus_part", to_json(s.torus_part)},
          {"pi_S", {{"order", s.pi_S.size()}, {"elements", elems}}},
          {"p_rank_S", optional_json(s.p_rank_S)},
          {"p_faithful", s.p_faithful},
          {"p_generically_free", s.p_generically_free},
          {"stabilizer_order", to_json(s.order())},
          {"witness", s.witness}};
}

inline json to_json(const SymRankResult& r) {
  json w = json::array();
  for (const auto& v : r.witness) w.push_back(to_json(v));
  return {{"value", r.value},
          {"witness", w},
          {"status", to_string(r.status)},
          {"lower_bound_used", r.lower_bound_used},
          {"lower_bound_hypotheses_hold", r.lower_bound_hypotheses_hold},
          {"search_bound", r.search_bound},
          {"shells_searched", r.shells_searched},
          {"search_complete", r.search_complete},
          {"steps", r.steps}};
}

inline json to_json(const EtaResult& e) {
  return {{"lower", e.lower},
          {"upper", optional_json(e.upper)},
          {"exact", optional_json(e.exact)},
          {"split_witness", e.split_witness},
          {"lower_bound_note", e.lower_bound.note},
          {"symrank", e.symrank ? to_json(*e.symrank) : json(nullptr)}};
}

inline json to_json(const EdReport& r) {
  return {{"dim_G", r.dim_G},
          {"component_order", r.component_order},
          {"dim_V", r.dim_V},
          {"eta_lower", r.eta_lower},
          {"eta_upper", optional_json(r.eta_upper)},
          {"eta_exact", optional_json(r.eta_exact)},
          {"rank_p_S", optional_json(r.rank_p_S)},
          {"dim_W", optional_json(r.dim_W)},
          {"ed_lower", r.ed_lower},
          {"ed_upper", optional_json(r.ed_upper)},
          {"exact", optional_json(r.exact)},
          {"hypotheses",
           {{"component_abelian", r.hypotheses.component_abelian},
            {"split_witness", r.hypotheses.split_witness},
            {"v_p_faithful", r.hypotheses.v_p_faithful},
            {"v_minimal", r.hypotheses.v_minimal},
            {"symrank_exact", r.hypotheses.symrank_exact}}},
          {"certificates", r.certificates},
          {"notes", r.notes}};
}

inline json to_json(const CaseReport& r) {
  json j = {{"family", r.family},
            {"n", r.n},
            {"p", r.p},
            {"h_description", r.h_description},
            {"ed", to_json(r.ed)},
            {"closed_form", r.closed_form},
            {"witness_bound", optional_json(r.witness_bound)},
            {"matches_closed_form", r.matches_closed_form}};
  if (r.label) j["label"] = std::string(1, r.label);
  return j;
}

inline json to_json(const FFStabilizerReport& r) {
  return {{"q", r.q},
          {"trials", r.trials},
          {"seed", r.seed},
          {"orders", r.orders},
          {"min_order", r.min_order},
          {"argmin_trial", r.argmin_trial},
          {"torus_part_order", r.torus_part_order},
          {"component_image", r.component_image}};
}

inline json to_json(const SylowBoundReport& r) {
  json w = json::array();
  for (const auto& g : r.witness) w.push_back(cycle_string(g));
  return {{"d", r.d},
          {"p", r.p},
          {"sylow_order", r.sylow_order},
          {"max_abelian_order", r.max_abelian_order},
          {"floor_bound", r.floor_bound},
          {"witness", w},
          {"pass", r.pass}};
}

}  // namespace edp
