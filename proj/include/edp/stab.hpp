#pragma once

// Stabilizer in general position of a monomial representation.
//
// For v with all coordinates nonzero and generic, an element t.f with
// f = (sigma, c) fixes v iff t^{w_i} = v_i / (zeta^{c_i} v_{sigma^-1(i)}) for
// every line i.  Such t exists iff the right-hand side is killed by every
// integer relation u among the weights (W u = 0).  Generic v forces u to be
// constant on the cycles of sigma, and what remains is sum_i u_i c_i = 0 in Q/Z.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "edp/error.hpp"
#include "edp/monogrp.hpp"
#include "edp/zlat.hpp"

namespace edp {

struct StabilizerReport {
  FiniteAbelianStructure torus_part;     ///< S intersected with T, as a finite abelian group
  std::vector<std::size_t> pi_S;         ///< component elements in the image of S, sorted
  std::optional<std::size_t> p_rank_S;   ///< absent when the representation is not p-faithful
  bool p_faithful = false;
  bool p_generically_free = false;
  std::string witness;                   ///< empty when p-generically free

  Int order() const { return torus_part.torsion_order() * Int(pi_S.size()); }
};

struct PredicateResult {
  bool holds = false;
  std::string witness;
};

namespace detail {

/// The representation's lines as one block, with every block checked against F.
inline RepBlock checked_flat(const ComponentGroup& F, const MonomialRep& R) {
  for (const auto& b : R.blocks) F.check_compatible(b);
  return R.flattened(F.generator_count());
}

inline IntMatrix weight_columns(const RepBlock& flat, std::size_t d) { return IntMatrix::from_columns(flat.weights, d); }

/// Elements of F whose coset meets the generic stabilizer.
inline std::vector<std::size_t> stabilizer_image(const ComponentGroup& F, const RepBlock& flat) {
  const auto kernel = kernel_basis(weight_columns(flat, F.torus_rank()));
  const auto act = F.element_actions(flat);
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < F.order(); ++x) {
    const auto& a = act[x];
    bool in = true;
    for (const auto& u : kernel) {
      for (std::size_t i = 0; i < u.size() && in; ++i)
        if (u[a.perm[i]] != u[i]) in = false;
      if (!in) break;
      QZ s;
      for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] != 0) s += u[i] * a.coeff[i];
      if (!s.is_zero()) {
        in = false;
        break;
      }
    }
    if (in) out.push_back(x);
  }
  return out;
}

inline void assert_subgroup(const ComponentGroup& F, const std::vector<std::size_t>& sub) {
  std::vector<bool> member(F.order(), false);
  for (auto x : sub) member[x] = true;
  if (sub.empty() || !member[F.identity()]) throw std::logic_error("stabilizer image misses the identity");
  for (auto a : sub) {
    if (!member[F.inverse_of(a)]) throw std::logic_error("stabilizer image is not closed under inverse");
    for (auto b : sub)
      if (!member[F.mul(a, b)]) throw std::logic_error("stabilizer image is not closed under product");
  }
}

inline std::size_t log_floor(std::size_t n, std::uint64_t p) {
  std::size_t r = 0;
  for (; n >= p; n /= p) ++r;
  return r;
}

}  // namespace detail

/// Largest r such that (Z/p)^r embeds in the subgroup `sub` of F.
inline std::size_t subgroup_p_rank(const ComponentGroup& F, const std::vector<std::size_t>& sub) {
  const std::uint64_t p = F.p();
  F.multiplication_table();
  auto power = [&](std::size_t x) {
    std::size_t y = F.identity();
    for (std::uint64_t i = 0; i < p; ++i) y = F.mul(y, x);
    return y;
  };
  std::vector<std::size_t> order_p;
  for (auto x : sub)
    if (x != F.identity() && power(x) == F.identity()) order_p.push_back(x);

  bool abelian = true;
  for (std::size_t i = 0; i < sub.size() && abelian; ++i)
    for (std::size_t j = i + 1; j < sub.size(); ++j)
      if (F.mul(sub[i], sub[j]) != F.mul(sub[j], sub[i])) {
        abelian = false;
        break;
      }
  if (abelian) return detail::log_floor(order_p.size() + 1, p);

  // Elementary abelian subgroups grown one generator at a time, with the
  // candidates restricted to later elements of order p centralizing the group.
  auto commute = [&](std::size_t a, std::size_t b) { return F.mul(a, b) == F.mul(b, a); };
  std::size_t best = order_p.empty() ? 0 : 1;
  std::vector<bool> in_group(F.order(), false);
  in_group[F.identity()] = true;
  std::vector<std::size_t> group{F.identity()};

  auto dfs = [&](auto&& self, std::size_t start, std::size_t r) -> void {
    best = std::max(best, r);
    std::vector<std::size_t> cand;
    std::size_t centralizing = group.size();
    for (std::size_t k = 0; k < order_p.size(); ++k) {
      std::size_t x = order_p[k];
      if (in_group[x]) continue;
      bool ok = true;
      for (auto g : group)
        if (!commute(g, x)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      ++centralizing;
      if (k >= start) cand.push_back(k);
    }
    if (detail::log_floor(centralizing, F.p()) <= best) return;
    for (auto k : cand) {
      std::size_t x = order_p[k];
      if (in_group[x]) continue;
      std::vector<std::size_t> added;
      for (auto g : group) {
        std::size_t y = g;
        for (std::uint64_t e = 1; e < p; ++e) {
          y = F.mul(y, x);
          added.push_back(y);
        }
      }
      for (auto y : added) in_group[y] = true;
      const std::size_t old = group.size();
      group.insert(group.end(), added.begin(), added.end());
      self(self, k + 1, r + 1);
      group.resize(old);
      for (auto y : added) in_group[y] = false;
    }
  };
  dfs(dfs, 0, 0);
  return best;
}

inline PredicateResult is_p_faithful(const ComponentGroup& F, const MonomialRep& R) {
  const RepBlock flat = detail::checked_flat(F, R);
  const std::size_t d = F.torus_rank();
  const IntMatrix w = detail::weight_columns(flat, d);
  auto coker = cokernel_structure(w);
  if (!coker.is_finite())
    return {false, "weights span rank " + std::to_string(d - coker.free_rank) + " < " + std::to_string(d) +
                       ": a subtorus acts trivially"};
  if (coker.torsion_order() % F.p() == 0)
    return {false, "torus kernel has order " + coker.torsion_order().str() + ", divisible by p"};
  TorsionImageReducer image(IntMatrix::from_rows(flat.weights, d));
  const auto act = F.element_actions(flat);
  const auto id = identity_permutation(flat.dimension());
  for (std::size_t x = 1; x < F.order(); ++x) {
    if (act[x].perm != id) continue;
    QZVector neg = act[x].coeff;
    for (auto& c : neg) c = -c;
    if (image.contains(neg))
      return {false, "component element " + std::to_string(x) + " has a lift acting trivially"};
  }
  return {true, ""};
}

inline PredicateResult is_p_faithful(const MonomialGroupPresentation& P, const MonomialRep& R, const Limits& limits = {}) {
  return is_p_faithful(component_group(P, limits), R);
}

inline StabilizerReport generic_stabilizer(const ComponentGroup& F, const MonomialRep& R) {
  const RepBlock flat = detail::checked_flat(F, R);
  const IntMatrix w = detail::weight_columns(flat, F.torus_rank());
  StabilizerReport rep;
  rep.torus_part = cokernel_structure(w);
  if (!rep.torus_part.is_finite())
    fail(ErrorCode::RankDeficientWeights, "representation weights span rank < torus_rank; the stabilizer is infinite");
  rep.pi_S = detail::stabilizer_image(F, flat);
  detail::assert_subgroup(F, rep.pi_S);

  auto faithful = is_p_faithful(F, R);
  rep.p_faithful = faithful.holds;
  rep.p_generically_free = rep.p_faithful && rep.pi_S.size() == 1;
  if (!rep.p_faithful) {
    rep.witness = faithful.witness;
  } else if (rep.pi_S.size() > 1) {
    const auto& x = F.representative(rep.pi_S[1]);
    rep.witness = "component element " + std::to_string(rep.pi_S[1]) + " with permutation " + cycle_string(x.perm) +
                  " lies in the generic stabilizer";
  }
  if (rep.torus_part.torsion_order() % F.p() != 0) rep.p_rank_S = subgroup_p_rank(F, rep.pi_S);
  return rep;
}

inline StabilizerReport generic_stabilizer(const MonomialGroupPresentation& P, const MonomialRep& R,
                                           const Limits& limits = {}) {
  return generic_stabilizer(component_group(P, limits), R);
}

/// p-rank of the generic stabilizer; refuses when p divides |S n T|.
inline std::size_t stabilizer_p_rank(const StabilizerReport& s) {
  if (!s.p_rank_S) fail(ErrorCode::NotPFaithfulForRank, "p divides the order of the torus part of the stabilizer");
  return *s.p_rank_S;
}

inline PredicateResult is_p_generically_free(const ComponentGroup& F, const MonomialRep& R) {
  auto faithful = is_p_faithful(F, R);
  if (!faithful.holds) return faithful;
  auto s = generic_stabilizer(F, R);
  return {s.p_generically_free, s.witness};
}

inline PredicateResult is_p_generically_free(const MonomialGroupPresentation& P, const MonomialRep& R,
                                             const Limits& limits = {}) {
  return is_p_generically_free(component_group(P, limits), R);
}

}  // namespace edp
