#pragma once

// Minimal size of a group-invariant subset of Z^d whose span has finite index
// prime to p, searched over unions of orbits of short vectors.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "edp/error.hpp"
#include "edp/monogrp.hpp"
#include "edp/stab.hpp"
#include "edp/zlat.hpp"

namespace edp {

using SmallVector = std::vector<std::int64_t>;

namespace detail {

inline std::int64_t to_i64(const Int& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::LimitExceeded, "matrix entry does not fit in 64 bits");
  return x.convert_to<std::int64_t>();
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::LimitExceeded, "64-bit overflow in orbit computation");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::LimitExceeded, "64-bit overflow in orbit computation");
  return r;
}

struct SmallMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> a;

  explicit SmallMatrix(const IntMatrix& m) : n(m.rows()) {
    for (const auto& x : m.entries()) a.push_back(to_i64(x));
  }
  SmallVector operator*(const SmallVector& v) const {
    SmallVector r(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a[i * n + j] != 0 && v[j] != 0) r[i] = checked_add(r[i], checked_mul(a[i * n + j], v[j]));
    return r;
  }
};

/// Row-reduced basis of a subspace of F_p^d.
class ModpSpan {
 public:
  ModpSpan(std::uint64_t p, std::size_t d) : p_(p), d_(d) {}

  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == d_; }

  /// Adds v; returns whether the rank increased.
  bool add(const SmallVector& v) {
    std::vector<std::uint64_t> r(d_);
    const auto sp = static_cast<std::int64_t>(p_);
    for (std::size_t i = 0; i < d_; ++i) r[i] = static_cast<std::uint64_t>(((v[i] % sp) + sp) % sp);
    return add_reduced(std::move(r));
  }

  void absorb(const ModpSpan& o) {
    for (const auto& [piv, row] : o.rows_) add_reduced(row);
  }

 private:
  bool add_reduced(std::vector<std::uint64_t> r) {
    for (const auto& [piv, row] : rows_) {
      if (r[piv] == 0) continue;
      const std::uint64_t f = r[piv];
      for (std::size_t i = 0; i < d_; ++i) r[i] = (r[i] + (p_ - f) * row[i]) % p_;
    }
    std::size_t piv = 0;
    while (piv < d_ && r[piv] == 0) ++piv;
    if (piv == d_) return false;
    const std::uint64_t inv = modpow(r[piv], p_ - 2);
    for (auto& x : r) x = x * inv % p_;
    for (auto& [q, row] : rows_) {
      if (row[piv] == 0) continue;
      const std::uint64_t f = row[piv];
      for (std::size_t i = 0; i < d_; ++i) row[i] = (row[i] + (p_ - f) * r[i]) % p_;
    }
    rows_.emplace(piv, std::move(r));
    return true;
  }

  std::uint64_t modpow(std::uint64_t b, std::uint64_t e) const {
    std::uint64_t r = 1;
    b %= p_;
    for (; e; e >>= 1, b = b * b % p_)
      if (e & 1) r = r * b % p_;
    return r;
  }

  std::uint64_t p_;
  std::size_t d_;
  std::map<std::size_t, std::vector<std::uint64_t>> rows_;
};

}  // namespace detail

struct Orbit {
  SmallVector representative;          ///< lexicographically smallest member
  std::vector<SmallVector> members;    ///< sorted
  std::size_t size() const { return members.size(); }
};

/// Orbits of all nonzero vectors of sup-norm <= bound, sorted by (size, representative).
inline std::vector<Orbit> orbit_pool(const FLattice& L, std::size_t bound, std::size_t max_vectors = 50'000'000) {
  const std::size_t d = L.rank;
  std::vector<detail::SmallMatrix> mats;
  for (const auto& m : L.matrices) mats.emplace_back(m);
  double count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= double(2 * bound + 1);
  if (count > double(max_vectors)) fail(ErrorCode::BudgetExceeded, "orbit pool box is too large");

  std::set<SmallVector> seen;
  std::vector<Orbit> out;
  const auto b = static_cast<std::int64_t>(bound);
  SmallVector v(d, -b);
  if (d == 0) return out;
  while (true) {
    if (std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; }) && !seen.count(v)) {
      std::set<SmallVector> orb;
      for (const auto& m : mats) orb.insert(m * v);
      Orbit o;
      o.members.assign(orb.begin(), orb.end());
      o.representative = o.members.front();
      seen.insert(orb.begin(), orb.end());
      out.push_back(std::move(o));
    }
    std::size_t i = d;
    while (i > 0 && v[i - 1] == b) v[--i] = -b;
    if (i == 0) break;
    ++v[i - 1];
  }
  std::sort(out.begin(), out.end(), [](const Orbit& x, const Orbit& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.representative < y.representative;
  });
  return out;
}

inline IntVector to_int_vector(const SmallVector& v) { return IntVector(v.begin(), v.end()); }

struct PermLowerBound {
  std::size_t value = 0;
  bool hypotheses_hold = false;
  std::string note;
};

/// max(d, p * log_p |group|) when the group is an abelian p-group with no
/// nontrivial element fixing a full-rank sublattice; otherwise d, flagged.
inline PermLowerBound perm_lower_bound(const FLattice& L, std::uint64_t p) {
  PermLowerBound out{L.rank, false, ""};
  if (!is_power_of(Int(L.order()), Int(p))) {
    out.note = "HYPOTHESES_FAIL: group order " + std::to_string(L.order()) + " is not a power of p";
    return out;
  }
  if (!L.is_abelian()) {
    out.note = "HYPOTHESES_FAIL: group is not abelian";
    return out;
  }
  const IntMatrix id = IntMatrix::identity(L.rank);
  for (const auto& a : L.matrices) {
    if (a == id) continue;
    IntMatrix diff = a;
    for (std::size_t i = 0; i < L.rank; ++i) diff(i, i) -= 1;
    if (rank(diff) == 0) {
      out.note = "HYPOTHESES_FAIL: a nontrivial element fixes a full-rank sublattice";
      return out;
    }
  }
  std::size_t k = 0;
  for (std::size_t n = L.order(); n > 1; n /= p) ++k;
  out.value = std::max<std::size_t>(L.rank, std::size_t(p) * k);
  out.hypotheses_hold = true;
  return out;
}

enum class SymRankStatus { Exact, UpperOnly };

inline std::string to_string(SymRankStatus s) { return s == SymRankStatus::Exact ? "EXACT" : "UPPER_ONLY"; }

struct SymRankResult {
  std::size_t value = 0;
  std::vector<IntVector> witness;   ///< sorted
  SymRankStatus status = SymRankStatus::UpperOnly;
  std::size_t lower_bound_used = 0;
  bool lower_bound_hypotheses_hold = false;
  std::size_t search_bound = 0;
  std::size_t shells_searched = 0;
  bool search_complete = true;      ///< false when the step cap cut the search short
  std::uint64_t steps = 0;
};

inline std::size_t default_search_bound(const FLattice& L) {
  Int m = 0;
  for (const auto& a : L.matrices)
    for (const auto& x : a.entries()) m = std::max(m, abs(x));
  return static_cast<std::size_t>(2 * m + 1);
}

namespace detail {

class OrbitSearch {
 public:
  OrbitSearch(const std::vector<Orbit>& pool, std::uint64_t p, std::size_t d, std::uint64_t max_steps)
      : pool_(pool), p_(p), d_(d), max_steps_(max_steps) {
    suffix_.assign(pool.size() + 1, ModpSpan(p, d));
    for (std::size_t i = pool.size(); i-- > 0;) {
      suffix_[i] = suffix_[i + 1];
      if (suffix_[i].full()) continue;
      for (const auto& v : pool[i].members) suffix_[i].add(v);
    }
  }

  /// Improves `best` (value, chosen orbit indices) until `target` is reached.
  void run(std::size_t& best, std::vector<std::size_t>& best_choice, std::size_t target) {
    target_ = target;
    std::vector<std::size_t> chosen;
    dfs(0, 0, ModpSpan(p_, d_), chosen, best, best_choice);
  }

  std::uint64_t steps() const { return steps_; }
  bool cut() const { return cut_; }

 private:
  bool done(std::size_t best) const { return cut_ || best <= target_; }

  void dfs(std::size_t i, std::size_t size, const ModpSpan& span, std::vector<std::size_t>& chosen, std::size_t& best,
           std::vector<std::size_t>& best_choice) {
    if (done(best)) return;
    if (++steps_ > max_steps_) {
      cut_ = true;
      return;
    }
    if (span.full()) {
      if (size < best) {
        best = size;
        best_choice = chosen;
      }
      return;
    }
    if (i >= pool_.size() || size + pool_[i].size() >= best) return;
    {
      ModpSpan reach = span;
      reach.absorb(suffix_[i]);
      if (!reach.full()) return;
    }
    ModpSpan with = span;
    bool grew = false;
    for (const auto& v : pool_[i].members) grew = with.add(v) || grew;
    if (grew) {
      chosen.push_back(i);
      dfs(i + 1, size + pool_[i].size(), with, chosen, best, best_choice);
      chosen.pop_back();
    }
    dfs(i + 1, size, span, chosen, best, best_choice);
  }

  const std::vector<Orbit>& pool_;
  std::uint64_t p_;
  std::size_t d_;
  std::uint64_t max_steps_;
  std::uint64_t steps_ = 0;
  bool cut_ = false;
  std::size_t target_ = 0;
  std::vector<ModpSpan> suffix_;
};

}  // namespace detail

/// Searches shells of sup-norm 1, 2, ..., bound and stops early once the
/// incumbent meets the certified lower bound.
inline SymRankResult symrank(const FLattice& L, std::uint64_t p, std::optional<std::size_t> bound = std::nullopt,
                             const Limits& limits = {}) {
  if (!is_prime(p)) fail(ErrorCode::InvalidInput, "p must be prime");
  SymRankResult res;
  res.search_bound = bound.value_or(default_search_bound(L));
  if (res.search_bound < 1) fail(ErrorCode::InvalidInput, "search bound must be at least 1");
  auto lb = perm_lower_bound(L, p);
  res.lower_bound_used = lb.value;
  res.lower_bound_hypotheses_hold = lb.hypotheses_hold;

  if (L.rank == 0) {
    res.status = SymRankStatus::Exact;
    return res;
  }
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::size_t best = none;
  std::vector<IntVector> best_witness;
  std::uint64_t budget = limits.max_steps;
  for (std::size_t b = 1; b <= res.search_bound; ++b) {
    auto pool = orbit_pool(L, b);
    detail::OrbitSearch search(pool, p, L.rank, budget);
    std::vector<std::size_t> choice;
    std::size_t value = best;
    search.run(value, choice, res.lower_bound_used);
    res.steps += search.steps();
    budget -= std::min(budget, search.steps());
    res.shells_searched = b;
    if (value < best) {
      best = value;
      best_witness.clear();
      for (auto i : choice)
        for (const auto& v : pool[i].members) best_witness.push_back(to_int_vector(v));
      std::sort(best_witness.begin(), best_witness.end());
    }
    if (search.cut()) {
      res.search_complete = false;
      break;
    }
    if (best <= res.lower_bound_used) break;
  }
  if (best == none)
    fail(res.search_complete ? ErrorCode::Inconclusive : ErrorCode::LimitExceeded,
         "no invariant p-spanning union of orbits within sup-norm " + std::to_string(res.search_bound));
  res.value = best;
  res.witness = std::move(best_witness);
  res.status = res.value == res.lower_bound_used ? SymRankStatus::Exact : SymRankStatus::UpperOnly;
  return res;
}

/// Re-checks a witness: invariant under the group and p-spanning.
inline bool is_invariant_p_spanning(const FLattice& L, const std::vector<IntVector>& witness, std::uint64_t p) {
  std::set<IntVector> s(witness.begin(), witness.end());
  if (s.size() != witness.size()) return false;
  for (const auto& a : L.matrices)
    for (const auto& v : witness)
      if (!s.count(a * v)) return false;
  auto idx = sublattice_p_index(witness, L.rank, Int(p));
  return idx && *idx == 0;
}

// ---------------------------------------------------------------------------

struct EtaOptions {
  std::optional<std::size_t> search_bound;
  bool run_search = true;
  Limits limits;
};

struct EtaResult {
  std::size_t lower = 0;
  std::optional<std::size_t> upper;
  std::optional<std::size_t> exact;
  bool split_witness = false;
  std::optional<SymRankResult> symrank;
  PermLowerBound lower_bound;
};

/// Bounds on the minimal dimension of a p-faithful representation.
inline EtaResult eta(const ComponentGroup& F, const std::optional<MonomialRep>& V, const EtaOptions& opt = {}) {
  EtaResult out;
  const FLattice L = character_lattice_action(F, opt.limits);
  out.split_witness = F.split_witness();
  out.lower_bound = perm_lower_bound(L, F.p());
  out.lower = out.lower_bound.value;
  if (opt.run_search) {
    out.symrank = symrank(L, F.p(), opt.search_bound, opt.limits);
    if (out.symrank->status == SymRankStatus::Exact) out.lower = std::max(out.lower, out.symrank->value);
    if (out.split_witness) out.upper = out.symrank->value;
  }
  if (V) {
    auto faithful = is_p_faithful(F, *V);
    if (!faithful.holds) fail(ErrorCode::VNotPFaithful, "supplied representation is not p-faithful: " + faithful.witness);
    const std::size_t dim = V->dimension();
    out.upper = out.upper ? std::min(*out.upper, dim) : dim;
  }
  if (out.upper && *out.upper == out.lower) out.exact = out.lower;
  return out;
}

inline EtaResult eta(const MonomialGroupPresentation& P, const std::optional<MonomialRep>& V, const EtaOptions& opt = {}) {
  return eta(component_group(P, opt.limits), V, opt);
}

}  // namespace edp
