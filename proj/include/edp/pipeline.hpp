#pragma once

// Essential p-dimension of a torus-by-p-group extension from a p-faithful
// representation, plus the SL_n and SO_4n normalizer families.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edp/error.hpp"
#include "edp/monogrp.hpp"
#include "edp/oracle.hpp"
#include "edp/stab.hpp"
#include "edp/symrank.hpp"
#include "edp/zlat.hpp"

namespace edp {

struct GenericallyFreeExtension {
  MonomialRep W;
  std::vector<Character> characters;   ///< one per appended block
  StabilizerReport stabilizer_of_V;
  std::size_t blocks_added = 0;
};

/// V plus one character block per invariant factor of pi(S_V), the characters
/// chosen so that their restrictions form a dual basis of pi(S_V).
inline GenericallyFreeExtension build_generically_free_extension(const ComponentGroup& F, const MonomialRep& V) {
  auto faithful = is_p_faithful(F, V);
  if (!faithful.holds) fail(ErrorCode::NotPFaithful, "representation is not p-faithful: " + faithful.witness);
  if (!F.is_abelian()) fail(ErrorCode::NotAbelianComponent, "extension requires an abelian component group");

  GenericallyFreeExtension out;
  out.W = V;
  out.stabilizer_of_V = generic_stabilizer(F, V);
  const auto& pi = out.stabilizer_of_V.pi_S;
  if (pi.size() > 1) {
    const auto dec = F.abelian_decomposition();
    const std::size_t k = dec.moduli.size();

    // Lattice of pi(S) inside Z^k, containing every d_i e_i.
    std::vector<IntVector> gens;
    for (auto x : pi) gens.push_back(dec.coordinates[x]);
    for (std::size_t i = 0; i < k; ++i) {
      IntVector e(k);
      e[i] = dec.moduli[i];
      gens.push_back(std::move(e));
    }
    auto snf = smith_normal_form(IntMatrix::from_columns(gens, k));
    IntMatrix basis(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) basis(i, j) = snf.U_inv(i, j) * snf.invariant_factors[j];

    // pi(S) = Z^k / C Z^k in that basis, with C = basis^-1 diag(d).
    IntMatrix c(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      IntVector col(k);
      col[j] = dec.moduli[j];
      auto sol = solve_integer(basis, col);
      if (!sol) throw std::logic_error("modulus vector outside the stabilizer lattice");
      for (std::size_t i = 0; i < k; ++i) c(i, j) = (*sol)[i];
    }
    auto snf_c = smith_normal_form(c);
    IntMatrix gen_basis = basis * snf_c.U_inv;

    std::vector<Int> orders;
    std::vector<IntVector> hs;
    for (std::size_t j = 0; j < k; ++j)
      if (snf_c.invariant_factors[j] > 1) {
        orders.push_back(snf_c.invariant_factors[j]);
        hs.push_back(gen_basis.column(j));
      }
    const std::size_t r = orders.size();

    // res(l, i) = s_l h_{l,i} / d_i, so chi = sum a_i eps_i restricts to h_l as (res a)_l / s_l.
    IntMatrix system(r, k + r);
    for (std::size_t l = 0; l < r; ++l) {
      for (std::size_t i = 0; i < k; ++i) {
        Int num = orders[l] * hs[l][i];
        if (num % dec.moduli[i] != 0) throw std::logic_error("restriction map is not integral");
        system(l, i) = num / dec.moduli[i];
      }
      system(l, k + l) = orders[l];
    }
    for (std::size_t j = 0; j < r; ++j) {
      IntVector rhs(r);
      rhs[j] = 1;
      auto sol = solve_integer(system, rhs);
      if (!sol) throw std::logic_error("no character restricts to the requested dual basis element");
      Character chi{std::vector<QZ>(F.order())};
      for (std::size_t x = 0; x < F.order(); ++x)
        for (std::size_t i = 0; i < k; ++i)
          chi.values[x] += QZ((*sol)[i] * dec.coordinates[x][i], dec.moduli[i]);
      out.W = append_character_block(out.W, chi, F);
      out.characters.push_back(std::move(chi));
    }
    out.blocks_added = r;
  }
  auto free = is_p_generically_free(F, out.W);
  if (!free.holds) fail(ErrorCode::WitnessNotFree, "extension is not p-generically free: " + free.witness);
  if (out.W.dimension() != V.dimension() + out.blocks_added)
    throw std::logic_error("extension dimension does not match the number of appended blocks");
  return out;
}

inline GenericallyFreeExtension build_generically_free_extension(const MonomialGroupPresentation& P,
                                                                 const MonomialRep& V, const Limits& limits = {}) {
  return build_generically_free_extension(component_group(P, limits), V);
}

// ---------------------------------------------------------------------------

struct EdHypotheses {
  bool component_abelian = false;
  bool split_witness = false;
  bool v_p_faithful = false;
  bool v_minimal = false;       ///< dim V equals the exact minimal p-faithful dimension
  bool symrank_exact = false;
};

struct EdReport {
  std::size_t dim_G = 0;
  std::size_t component_order = 0;
  std::size_t dim_V = 0;
  std::size_t eta_lower = 0;
  std::optional<std::size_t> eta_upper;
  std::optional<std::size_t> eta_exact;
  std::optional<std::size_t> rank_p_S;
  std::optional<std::size_t> dim_W;
  std::int64_t ed_lower = 0;
  std::optional<std::int64_t> ed_upper;
  std::optional<std::int64_t> exact;
  EdHypotheses hypotheses;
  std::vector<std::string> certificates;
  std::vector<std::string> notes;
};

struct EdOptions {
  std::optional<std::size_t> search_bound;
  Limits limits;
};

/// Bounds on ed(G; p) from V (the defining representation when absent).
inline EdReport essential_p_dimension(const ComponentGroup& F, const MonomialRep& V, const EdOptions& opt = {}) {
  EdReport rep;
  rep.dim_G = F.torus_rank();
  rep.component_order = F.order();
  rep.dim_V = V.dimension();
  rep.hypotheses.component_abelian = F.is_abelian();
  rep.hypotheses.split_witness = F.split_witness();
  auto faithful = is_p_faithful(F, V);
  rep.hypotheses.v_p_faithful = faithful.holds;
  if (!faithful.holds) rep.notes.push_back("V is not p-faithful: " + faithful.witness);

  EtaOptions eo{opt.search_bound, rep.hypotheses.component_abelian, opt.limits};
  if (!rep.hypotheses.component_abelian) rep.notes.push_back("component group is not abelian; SymRank search skipped");
  auto e = eta(F, faithful.holds ? std::optional<MonomialRep>(V) : std::nullopt, eo);
  rep.eta_lower = e.lower;
  rep.eta_upper = e.upper;
  rep.eta_exact = e.exact;
  rep.hypotheses.symrank_exact = e.symrank && e.symrank->status == SymRankStatus::Exact;
  if (!e.lower_bound.hypotheses_hold) rep.notes.push_back("permutation lower bound: " + e.lower_bound.note);
  rep.ed_lower = std::max<std::int64_t>(0, std::int64_t(rep.eta_lower) - std::int64_t(rep.dim_G));

  if (faithful.holds) {
    auto s = generic_stabilizer(F, V);
    rep.rank_p_S = s.p_rank_S;
    if (rep.hypotheses.component_abelian) {
      auto ext = build_generically_free_extension(F, V);
      rep.dim_W = ext.W.dimension();
    } else if (s.p_generically_free) {
      rep.dim_W = V.dimension();
    }
  }
  if (rep.dim_W) rep.ed_upper = std::int64_t(*rep.dim_W) - std::int64_t(rep.dim_G);

  rep.hypotheses.v_minimal = rep.eta_exact && *rep.eta_exact == rep.dim_V;
  if (rep.hypotheses.component_abelian && rep.hypotheses.split_witness && rep.eta_exact && rep.hypotheses.v_minimal &&
      rep.rank_p_S && rep.dim_W) {
    const std::int64_t value = std::int64_t(*rep.eta_exact + *rep.rank_p_S) - std::int64_t(rep.dim_G);
    if (value != *rep.ed_upper) throw std::logic_error("exact value disagrees with dim W - dim G");
    rep.exact = value;
    rep.ed_lower = value;
    rep.certificates = {"component group abelian", "split witness: literal generators form a complement",
                        "SymRank " + std::to_string(*rep.eta_exact) + " meets the permutation lower bound",
                        "dim V = " + std::to_string(rep.dim_V) + " is minimal among p-faithful representations",
                        "rank_p(S) = " + std::to_string(*rep.rank_p_S)};
  }
  if (rep.ed_upper && rep.ed_lower > *rep.ed_upper) throw std::logic_error("ed lower bound exceeds upper bound");
  return rep;
}

inline EdReport essential_p_dimension(const MonomialGroupPresentation& P, const std::optional<MonomialRep>& V = std::nullopt,
                                      const EdOptions& opt = {}) {
  return essential_p_dimension(component_group(P, opt.limits), V.value_or(MonomialRep::defining(P)), opt);
}

// ---------------------------------------------------------------------------
// SL_n

/// Monomial lift of a permutation of the n coordinates into SL_n: odd
/// permutations carry 1/2 on their lowest moved line.
inline MonomialElement sl_lift(const Permutation& s) {
  MonomialElement x{s, QZVector(s.size())};
  if (!is_even(s))
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] != i) {
        x.coeff[i] = QZ(1, 2);
        break;
      }
  return x;
}

/// Preimage in the SL_n torus normalizer of the permutation group generated by h.
inline MonomialGroupPresentation sl_presentation(std::size_t n, std::uint64_t p, const std::vector<Permutation>& h) {
  if (n < 2) fail(ErrorCode::Unsupported, "n must be at least 2");
  MonomialGroupPresentation P;
  P.p = p;
  P.torus_rank = n - 1;
  P.root_of_unity_exponent = p;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    IntVector w(n - 1);
    w[i] = 1;
    P.weights.push_back(std::move(w));
  }
  P.weights.push_back(IntVector(n - 1, Int(-1)));
  for (const auto& s : h) {
    if (s.size() != n || !is_permutation(s)) fail(ErrorCode::InvalidInput, "permutation is not on n letters");
    P.generators.push_back(sl_lift(s));
  }
  return P;
}

struct SlnCase {
  std::size_t n = 0;
  std::uint64_t p = 0;
  char label = 'a';
  MonomialGroupPresentation presentation;
  std::vector<Permutation> h_generators;
  std::string h_description;
  /// Letters carrying the Sylow construction in the witness cases: p*q for
  /// n not divisible by p, n - 2 for n = 2 mod 4 with p = 2.
  std::size_t sylow_letters = 0;
};

inline std::string describe(const std::vector<Permutation>& gens) {
  if (gens.empty()) return "trivial";
  std::string s = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + cycle_string(gens[i]);
  return s + ">";
}

inline SlnCase sln_case(std::size_t n, std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::Unsupported, "p must be prime");
  if (n < 2) fail(ErrorCode::Unsupported, "n must be at least 2");
  SlnCase c;
  c.n = n;
  c.p = p;
  if (p >= 3 && n % p == 0) {
    c.label = 'a';
    for (std::size_t b = 0; b < n; b += p) {
      Permutation s = identity_permutation(n);
      for (std::size_t i = 0; i < p; ++i) s[b + i] = b + (i + 1) % p;
      c.h_generators.push_back(std::move(s));
    }
    c.h_description = "commuting p-cycles " + describe(c.h_generators);
  } else if (p == 2 && n % 4 == 0) {
    c.label = 'b';
    for (std::size_t b = 0; b < n; b += 4) {
      Permutation x = identity_permutation(n), y = identity_permutation(n);
      x[b] = b + 1, x[b + 1] = b, x[b + 2] = b + 3, x[b + 3] = b + 2;
      y[b] = b + 2, y[b + 2] = b, y[b + 1] = b + 3, y[b + 3] = b + 1;
      c.h_generators.push_back(std::move(x));
      c.h_generators.push_back(std::move(y));
    }
    c.h_description = "Klein four-groups on blocks of 4 " + describe(c.h_generators);
  } else if (n % p != 0) {
    c.label = p == 2 ? 'd' : 'c';
    c.sylow_letters = p * (n / p);
    c.h_generators = sylow_generators(c.sylow_letters, p, 0, n);
    c.h_description = "Sylow p-subgroup of the first " + std::to_string(c.sylow_letters) + " letters " +
                      describe(c.h_generators);
  } else {
    c.label = 'd';
    c.sylow_letters = n - 2;
    c.h_generators = sylow_generators(n - 2, p, 0, n);
    Permutation t = identity_permutation(n);
    std::swap(t[n - 2], t[n - 1]);
    c.h_generators.push_back(std::move(t));
    c.h_description = "Sylow 2-subgroup of the first " + std::to_string(n - 2) + " letters times the last transposition " +
                      describe(c.h_generators);
  }
  c.presentation = sl_presentation(n, p, c.h_generators);
  return c;
}

inline std::int64_t closed_form_sln(std::size_t n, std::uint64_t p) {
  if (n < 2) fail(ErrorCode::Unsupported, "n must be at least 2");
  const auto N = std::int64_t(n), P = std::int64_t(p);
  if (p >= 3 && n % p == 0) return N / P + 1;
  if (p == 2 && n % 4 == 0) return N / 2 + 1;
  return N / P;
}

inline std::int64_t closed_form_so(std::size_t n) {
  if (n < 1) fail(ErrorCode::Unsupported, "n must be at least 1");
  return 4 * std::int64_t(n);
}

/// The q-dimensional monomial representation of the Sylow group on the first
/// `letters` letters: one line per cluster of p consecutive letters, with a
/// rotation by s inside a cluster recorded as the coefficient s/p.
inline RepBlock cluster_block(const SlnCase& c) {
  const std::size_t p = c.p, q = c.sylow_letters / p;
  RepBlock b;
  b.weights.assign(q, IntVector(c.n - 1));
  for (const auto& s : c.h_generators) {
    MonomialElement x{identity_permutation(q), QZVector(q)};
    for (std::size_t k = 0; k < q; ++k) {
      const std::size_t target = s[k * p] / p;
      if (target >= q) fail(ErrorCode::InvalidInput, "permutation moves a cluster outside the Sylow letters");
      const std::size_t shift = s[k * p] % p;
      for (std::size_t j = 0; j < p; ++j)
        if (s[k * p + j] != target * p + (j + shift) % p)
          fail(ErrorCode::InvalidInput, "permutation does not rotate clusters rigidly");
      x.perm[k] = target;
      x.coeff[target] = QZ(Int(shift), Int(p));
    }
    b.generators.push_back(std::move(x));
  }
  return b;
}

struct UpperWitness {
  MonomialRep W;
  std::int64_t bound = 0;
  PredicateResult generically_free;
};

inline UpperWitness upper_witness_sln(const SlnCase& c, const Limits& limits = {}) {
  if (c.sylow_letters == 0 && !(c.label == 'c' || c.label == 'd'))
    fail(ErrorCode::Unsupported, "witness construction applies to cases c and d only");
  const auto& P = c.presentation;
  UpperWitness out;
  RepBlock cluster = cluster_block(c);
  if (c.n % c.p != 0) {
    // First n - 1 natural lines, which the Sylow group preserves.
    RepBlock natural;
    natural.weights.assign(P.weights.begin(), P.weights.end() - 1);
    for (const auto& g : P.generators) {
      if (g.perm[c.n - 1] != c.n - 1) fail(ErrorCode::InvalidInput, "generator moves the last letter");
      natural.generators.push_back(
          MonomialElement{Permutation(g.perm.begin(), g.perm.end() - 1), QZVector(g.coeff.begin(), g.coeff.end() - 1)});
    }
    out.W.blocks = {std::move(natural)};
  } else {
    out.W = MonomialRep::defining(P);
  }
  if (cluster.dimension() > 0) out.W.blocks.push_back(std::move(cluster));
  const ComponentGroup F = component_group(P, limits);
  out.generically_free = is_p_generically_free(F, out.W);
  if (!out.generically_free.holds)
    fail(ErrorCode::WitnessNotFree, "witness representation is not p-generically free: " + out.generically_free.witness);
  out.bound = std::int64_t(out.W.dimension()) - std::int64_t(P.torus_rank);
  return out;
}

inline UpperWitness upper_witness_sln(std::size_t n, std::uint64_t p, const Limits& limits = {}) {
  return upper_witness_sln(sln_case(n, p), limits);
}

struct LemmaCheck {
  bool torus_part_trivial = false;
  bool image_is_even_part = false;
  std::size_t h_order = 0;
  std::size_t pi_S_order = 0;
  std::size_t even_part_order = 0;
  bool holds() const { return torus_part_trivial && image_is_even_part; }
};

/// S n T = 1 and pi(S) = H n A_n for the natural representation.
inline LemmaCheck verify_lemma_sln(std::size_t n, const std::vector<Permutation>& h, std::uint64_t p,
                                   const Limits& limits = {}) {
  auto P = sl_presentation(n, p, h);
  const ComponentGroup F = component_group(P, limits);
  auto s = generic_stabilizer(F, MonomialRep::defining(P));
  LemmaCheck out;
  out.h_order = F.order();
  out.pi_S_order = s.pi_S.size();
  out.torus_part_trivial = s.torus_part.is_trivial();
  std::vector<bool> in(F.order(), false);
  for (auto x : s.pi_S) in[x] = true;
  out.image_is_even_part = true;
  for (std::size_t x = 0; x < F.order(); ++x) {
    const bool even = is_even(F.representative(x).perm);
    out.even_part_order += even;
    if (in[x] != even) out.image_is_even_part = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// SO_4n

/// Lines x_1..x_2n (weights e_i) then y_1..y_2n (weights -e_i); generators are
/// the paired swaps x_i <-> y_i on {2j-1, 2j} and the 2-cycles (2j-1 2j).
inline MonomialGroupPresentation so_case(std::size_t n) {
  if (n < 1) fail(ErrorCode::Unsupported, "n must be at least 1");
  const std::size_t d = 2 * n, m = 4 * n;
  MonomialGroupPresentation P;
  P.p = 2;
  P.torus_rank = d;
  P.root_of_unity_exponent = 2;
  for (int sign : {1, -1})
    for (std::size_t i = 0; i < d; ++i) {
      IntVector w(d);
      w[i] = sign;
      P.weights.push_back(std::move(w));
    }
  for (std::size_t j = 0; j < n; ++j) {
    Permutation s = identity_permutation(m);
    for (std::size_t i : {2 * j, 2 * j + 1}) s[i] = d + i, s[d + i] = i;
    P.generators.push_back(MonomialElement{std::move(s), QZVector(m)});
  }
  for (std::size_t j = 0; j < n; ++j) {
    Permutation s = identity_permutation(m);
    for (std::size_t off : {std::size_t{0}, d}) s[off + 2 * j] = off + 2 * j + 1, s[off + 2 * j + 1] = off + 2 * j;
    P.generators.push_back(MonomialElement{std::move(s), QZVector(m)});
  }
  return P;
}

// ---------------------------------------------------------------------------

struct CaseReport {
  std::string family;     ///< "sl" or "so"
  std::size_t n = 0;
  std::uint64_t p = 0;
  char label = 0;         ///< a-d for sl
  std::string h_description;
  EdReport ed;
  std::int64_t closed_form = 0;
  std::optional<std::int64_t> witness_bound;
  bool matches_closed_form = false;
};

inline CaseReport ed_case_sl(std::size_t n, std::uint64_t p, const EdOptions& opt = {}) {
  auto c = sln_case(n, p);
  CaseReport r;
  r.family = "sl";
  r.n = n;
  r.p = p;
  r.label = c.label;
  r.h_description = c.h_description;
  r.closed_form = closed_form_sln(n, p);
  const ComponentGroup F = component_group(c.presentation, opt.limits);
  r.ed = essential_p_dimension(F, MonomialRep::defining(c.presentation), opt);
  if (c.label == 'c' || c.label == 'd') {
    auto w = upper_witness_sln(c, opt.limits);
    r.witness_bound = w.bound;
    const std::int64_t cited = std::int64_t(n / p);
    if (!r.ed.ed_upper || w.bound < *r.ed.ed_upper) {
      r.ed.ed_upper = w.bound;
      r.ed.dim_W = w.W.dimension();
    }
    r.ed.notes.push_back("upper bound from the Sylow witness representation of dimension " +
                         std::to_string(w.W.dimension()));
    if (cited > r.ed.ed_lower) {
      r.ed.ed_lower = cited;
      r.ed.notes.push_back("lower bound floor(n/p) = " + std::to_string(cited) + " is cited, not computed");
    }
    if (r.ed.ed_lower == *r.ed.ed_upper && !r.ed.exact) r.ed.exact = r.ed.ed_lower;
  }
  r.matches_closed_form = r.ed.exact && *r.ed.exact == r.closed_form;
  return r;
}

inline CaseReport ed_case_so(std::size_t n, const EdOptions& opt = {}) {
  auto P = so_case(n);
  CaseReport r;
  r.family = "so";
  r.n = n;
  r.p = 2;
  r.closed_form = closed_form_so(n);
  const ComponentGroup F = component_group(P, opt.limits);
  r.h_description = "paired sign swaps and 2-cycles, order " + std::to_string(F.order());
  r.ed = essential_p_dimension(F, MonomialRep::defining(P), opt);
  if (r.ed.rank_p_S && *r.ed.rank_p_S != 2 * n)
    r.ed.notes.push_back("generic stabilizer image has 2-rank " + std::to_string(*r.ed.rank_p_S) +
                         ", while the closed form " + std::to_string(r.closed_form) + " presumes rank 2n = " +
                         std::to_string(2 * n));
  r.ed.notes.push_back("component group has order " + std::to_string(F.order()) + " = 2^" + std::to_string(2 * n) +
                       ", not 2^" + std::to_string(n));
  r.matches_closed_form = r.ed.exact && *r.ed.exact == r.closed_form;
  return r;
}

}  // namespace edp
