#pragma once

// Brute-force cross-checks: stabilizers over a finite field, exhaustive
// SymRank on tiny lattices, and abelian subgroups of Sylow subgroups of S_d.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "edp/error.hpp"
#include "edp/monogrp.hpp"
#include "edp/stab.hpp"
#include "edp/symrank.hpp"
#include "edp/zlat.hpp"

namespace edp {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (b %= m; e; e >>= 1, b = mulmod(b, b, m))
    if (e & 1) r = mulmod(r, b, m);
  return r;
}

inline std::uint64_t primitive_root(std::uint64_t q) {
  std::vector<std::uint64_t> primes;
  std::uint64_t n = q - 1;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) {
      primes.push_back(f);
      while (n % f == 0) n /= f;
    }
  if (n > 1) primes.push_back(n);
  for (std::uint64_t g = 2; g < q; ++g)
    if (std::all_of(primes.begin(), primes.end(), [&](auto f) { return powmod(g, (q - 1) / f, q) != 1; })) return g;
  return 1;
}

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

}  // namespace detail

/// Exponent the field must support: lcm of e, all coefficient denominators on
/// the representation, and the invariant factors of its torus kernel.
inline Int required_root_order(const ComponentGroup& F, const RepBlock& flat, std::uint64_t e) {
  Int l = e;
  for (const auto& a : F.element_actions(flat))
    for (const auto& c : a.coeff) l = lcm(l, c.den());
  for (const auto& f : cokernel_structure(IntMatrix::from_columns(flat.weights, F.torus_rank())).invariant_factors)
    l = lcm(l, f);
  return l;
}

/// Smallest prime q with q = 1 mod l and q > min_exclusive.
inline std::uint64_t admissible_modulus(const Int& l, std::uint64_t min_exclusive) {
  const auto step = l.convert_to<std::uint64_t>();
  for (std::uint64_t q = step + 1;; q += step)
    if (q > min_exclusive && is_prime(q)) return q;
}

struct FFStabilizerOptions {
  std::optional<std::uint64_t> q;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  double budget = 1e7;
};

struct FFStabilizerReport {
  std::uint64_t q = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> orders;          ///< per trial
  std::uint64_t min_order = 0;
  std::size_t argmin_trial = 0;
  std::uint64_t torus_part_order = 0;          ///< torus points acting trivially
  std::vector<std::size_t> component_image;   ///< component elements met by the argmin stabilizer
};

inline FFStabilizerReport ff_stabilizer(const MonomialGroupPresentation& P, const MonomialRep& R,
                                        const FFStabilizerOptions& opt = {}, const Limits& limits = {}) {
  const ComponentGroup F = component_group(P, limits);
  for (const auto& b : R.blocks) F.check_compatible(b);
  const RepBlock flat = R.flattened(F.generator_count());
  const std::size_t d = P.torus_rank, m = flat.dimension();
  const Int need = required_root_order(F, flat, P.root_of_unity_exponent);

  FFStabilizerReport rep;
  rep.trials = opt.trials;
  rep.seed = opt.seed;
  if (opt.q) {
    rep.q = *opt.q;
    if (!is_prime(rep.q)) fail(ErrorCode::BadModulus, "q = " + std::to_string(rep.q) + " is not prime");
    if ((Int(rep.q) - 1) % need != 0)
      fail(ErrorCode::BadModulus, "q - 1 is not divisible by the required root order " + need.str());
  } else {
    rep.q = admissible_modulus(need, m);
  }
  const std::uint64_t q = rep.q, n = q - 1;
  double cost = double(F.order());
  for (std::size_t i = 0; i < d; ++i) cost *= double(q);
  if (cost > opt.budget)
    fail(ErrorCode::BudgetExceeded, "q^d * |F| = " + std::to_string(static_cast<long double>(cost)) + " exceeds the budget");
  if (opt.trials == 0) fail(ErrorCode::InvalidInput, "at least one trial is required");

  const std::uint64_t g = detail::primitive_root(q);
  std::vector<std::uint32_t> exp_table(n);
  for (std::uint64_t k = 0, x = 1; k < n; ++k, x = detail::mulmod(x, g, q)) exp_table[k] = static_cast<std::uint32_t>(x);
  auto residue_of_log = [&](const Int& k) { return exp_table[mod(k, Int(n)).convert_to<std::uint64_t>()]; };

  // Every torus point t = (g^{a_1}, ..., g^{a_d}) and its action on the lines.
  std::vector<std::vector<std::int64_t>> w(m, std::vector<std::int64_t>(d));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) w[i][j] = mod(flat.weights[i][j], Int(n)).convert_to<std::int64_t>();
  std::unordered_map<std::vector<std::uint32_t>, std::uint64_t, detail::VectorHash> image;
  std::vector<std::uint64_t> a(d, 0);
  std::vector<std::uint32_t> ones(m, 1);
  while (true) {
    std::vector<std::uint32_t> v(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < d; ++j) s = (s + std::uint64_t(w[i][j]) * a[j]) % n;
      v[i] = exp_table[s];
    }
    ++image[v];
    std::size_t j = d;
    while (j > 0 && a[j - 1] == n - 1) a[--j] = 0;
    if (j == 0) break;
    ++a[j - 1];
  }
  const std::uint64_t kernel = image.count(ones) ? image[ones] : 0;

  // Element f = (sigma, c) as a monomial matrix over F_q.
  const auto act = F.element_actions(flat);
  std::vector<std::vector<std::uint32_t>> zeta(F.order(), std::vector<std::uint32_t>(m));
  for (std::size_t x = 0; x < F.order(); ++x)
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = act[x].coeff[i];
      zeta[x][i] = residue_of_log(c.num() * (Int(n) / c.den()));
    }

  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::uint64_t> coord(1, q - 1);
  rep.min_order = ~std::uint64_t{0};
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    std::vector<std::uint64_t> v(m);
    for (auto& x : v) x = coord(rng);
    std::uint64_t total = 0;
    std::vector<std::size_t> met;
    for (std::size_t x = 0; x < F.order(); ++x) {
      const auto& s = act[x].perm;
      std::vector<std::uint32_t> y(m);
      for (std::size_t j = 0; j < m; ++j) {
        // f.v has v_j scaled by zeta at position sigma(j); t.f.v = v needs t^{w_{sigma(j)}} = v_{sigma(j)} / (zeta v_j).
        std::uint64_t denom = detail::mulmod(zeta[x][s[j]], v[j], q);
        y[s[j]] = static_cast<std::uint32_t>(detail::mulmod(v[s[j]], detail::powmod(denom, q - 2, q), q));
      }
      auto it = image.find(y);
      if (it != image.end()) {
        total += it->second;
        met.push_back(x);
      }
    }
    rep.orders.push_back(total);
    if (total < rep.min_order) {
      rep.min_order = total;
      rep.argmin_trial = trial;
      rep.component_image = std::move(met);
    }
  }
  rep.torus_part_order = kernel;
  return rep;
}

// ---------------------------------------------------------------------------

struct BruteforceOptions {
  std::size_t max_rank = 2;
  std::size_t max_bound = 3;
  std::uint64_t max_steps = 100'000'000;
};

/// Minimum size of an invariant p-spanning union of orbits of vectors with
/// sup-norm <= bound, by enumerating orbit subsets in order of total size.
inline std::size_t symrank_bruteforce(const FLattice& L, std::uint64_t p, std::size_t bound,
                                      const BruteforceOptions& opt = {}) {
  if (L.rank > opt.max_rank || bound > opt.max_bound)
    fail(ErrorCode::BudgetExceeded, "exhaustive SymRank is limited to rank <= " + std::to_string(opt.max_rank) +
                                        " and bound <= " + std::to_string(opt.max_bound));
  if (L.rank == 0) return 0;
  // Orbits by closure under the matrices, independent of symrank's pool.
  std::set<IntVector> seen;
  std::vector<std::vector<IntVector>> orbits;
  const auto b = static_cast<long long>(bound);
  std::vector<long long> v(L.rank, -b);
  while (true) {
    IntVector x(v.begin(), v.end());
    bool nonzero = std::any_of(x.begin(), x.end(), [](const Int& y) { return y != 0; });
    if (nonzero && !seen.count(x)) {
      std::vector<IntVector> orb{x};
      seen.insert(x);
      for (std::size_t k = 0; k < orb.size(); ++k)
        for (const auto& a : L.matrices) {
          IntVector y = a * orb[k];
          if (seen.insert(y).second) orb.push_back(y);
        }
      orbits.push_back(std::move(orb));
    }
    std::size_t i = L.rank;
    while (i > 0 && v[i - 1] == b) v[--i] = -b;
    if (i == 0) break;
    ++v[i - 1];
  }

  std::size_t total = 0;
  for (const auto& o : orbits) total += o.size();
  std::uint64_t steps = 0;
  for (std::size_t target = L.rank; target <= total; ++target) {
    // Subsets of orbits with sizes summing exactly to target.
    std::vector<std::size_t> pick;
    bool found = false;
    auto rec = [&](auto&& self, std::size_t start, std::size_t remaining) -> void {
      if (found) return;
      if (++steps > opt.max_steps) fail(ErrorCode::BudgetExceeded, "exhaustive SymRank exceeded its step budget");
      if (remaining == 0) {
        std::vector<IntVector> vecs;
        for (auto k : pick) vecs.insert(vecs.end(), orbits[k].begin(), orbits[k].end());
        auto idx = sublattice_p_index(vecs, L.rank, Int(p));
        if (idx && *idx == 0) found = true;
        return;
      }
      for (std::size_t k = start; k < orbits.size() && !found; ++k) {
        if (orbits[k].size() > remaining) continue;
        pick.push_back(k);
        self(self, k + 1, remaining - orbits[k].size());
        pick.pop_back();
      }
    };
    rec(rec, 0, target);
    if (found) return target;
  }
  fail(ErrorCode::Inconclusive, "no invariant p-spanning subset within the bound");
}

// ---------------------------------------------------------------------------

struct SylowBoundReport {
  std::size_t d = 0;
  std::uint64_t p = 0;
  std::uint64_t sylow_order = 0;
  std::uint64_t max_abelian_order = 0;
  std::uint64_t floor_bound = 0;            ///< p^floor(d/p)
  std::vector<Permutation> witness;         ///< generators of a largest abelian subgroup
  bool pass = false;                        ///< max^p <= p^d
};

/// Generators of the standard Sylow p-subgroup of S_n: the iterated wreath
/// products on consecutive blocks of size p^k given by the base-p digits of n.
inline std::vector<Permutation> sylow_generators(std::size_t n, std::uint64_t p, std::size_t offset = 0,
                                                 std::size_t total = 0) {
  if (total == 0) total = n + offset;
  std::vector<Permutation> gens;
  std::size_t start = offset, remaining = n;
  std::vector<std::size_t> sizes;
  for (std::size_t pk = 1; pk <= remaining; pk *= p) sizes.push_back(pk);
  for (std::size_t s = sizes.size(); s-- > 0;) {
    const std::size_t block = sizes[s];
    while (remaining >= block && block > 1) {
      // Wreath product on [start, start + block): recurse into the first
      // sub-block, then permute the p sub-blocks cyclically.
      std::size_t sub = block / p;
      for (std::size_t level = sub; level >= 1; level /= p) {
        Permutation g = identity_permutation(total);
        for (std::size_t i = 0; i < level * p; ++i) g[start + i] = start + (i + level) % (level * p);
        gens.push_back(std::move(g));
        if (level == 1) break;
      }
      start += block;
      remaining -= block;
    }
  }
  return gens;
}

inline std::vector<Permutation> permutation_closure(const std::vector<Permutation>& gens, std::size_t n,
                                                    std::size_t cap = 1'000'000) {
  std::set<Permutation> seen{identity_permutation(n)};
  std::vector<Permutation> out{identity_permutation(n)};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      Permutation y = compose(out[i], g);
      if (seen.insert(y).second) {
        out.push_back(std::move(y));
        if (out.size() > cap) fail(ErrorCode::BudgetExceeded, "permutation group closure exceeded its cap");
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline SylowBoundReport sylow_abelian_bound_check(std::size_t d, std::uint64_t p, std::uint64_t max_steps = 50'000'000) {
  if (!is_prime(p)) fail(ErrorCode::InvalidInput, "p must be prime");
  if (d > 9) fail(ErrorCode::BudgetExceeded, "symmetric group degree is limited to 9");
  SylowBoundReport rep;
  rep.d = d;
  rep.p = p;
  const auto group = permutation_closure(sylow_generators(d, p), d);
  rep.sylow_order = group.size();
  Int fact = 1;
  for (std::size_t k = 2; k <= d; ++k) fact *= k;
  Int p_part = 1;
  while (fact % p == 0) fact /= p, p_part *= p;
  if (Int(rep.sylow_order) != p_part)
    throw std::logic_error("Sylow construction has the wrong order");

  const std::size_t N = group.size();
  std::map<Permutation, std::size_t> index;
  for (std::size_t i = 0; i < N; ++i) index.emplace(group[i], i);
  std::vector<std::vector<std::size_t>> mul(N, std::vector<std::size_t>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) mul[i][j] = index.at(compose(group[i], group[j]));
  std::vector<std::vector<bool>> commutes(N, std::vector<bool>(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) commutes[i][j] = mul[i][j] == mul[j][i];
  const std::size_t id = index.at(identity_permutation(d));

  std::set<std::vector<bool>> visited;
  std::uint64_t steps = 0;
  std::vector<std::size_t> gens;
  auto search = [&](auto&& self, const std::vector<bool>& members, std::size_t size) -> void {
    if (++steps > max_steps) fail(ErrorCode::BudgetExceeded, "abelian subgroup search exceeded its step budget");
    if (size > rep.max_abelian_order) {
      rep.max_abelian_order = size;
      rep.witness.clear();
      for (auto k : gens) rep.witness.push_back(group[k]);
    }
    std::vector<std::size_t> centralizer;
    for (std::size_t x = 0; x < N; ++x) {
      bool ok = true;
      for (std::size_t y = 0; y < N && ok; ++y)
        if (members[y] && !commutes[x][y]) ok = false;
      if (ok) centralizer.push_back(x);
    }
    if (centralizer.size() <= rep.max_abelian_order) return;
    for (auto x : centralizer) {
      if (members[x]) continue;
      // Subgroup generated by the current members and x.
      std::vector<bool> next = members;
      std::vector<std::size_t> list;
      for (std::size_t y = 0; y < N; ++y)
        if (next[y]) list.push_back(y);
      for (std::size_t k = 0; k < list.size(); ++k) {
        std::size_t y = mul[list[k]][x];
        if (!next[y]) {
          next[y] = true;
          list.push_back(y);
        }
      }
      if (!visited.insert(next).second) continue;
      gens.push_back(x);
      self(self, next, list.size());
      gens.pop_back();
    }
  };
  std::vector<bool> trivial(N, false);
  trivial[id] = true;
  visited.insert(trivial);
  search(search, trivial, 1);

  rep.floor_bound = 1;
  for (std::size_t k = 0; k < d / p; ++k) rep.floor_bound *= p;
  Int lhs = 1, rhs = 1;
  for (std::uint64_t k = 0; k < p; ++k) lhs *= rep.max_abelian_order;
  for (std::size_t k = 0; k < d; ++k) rhs *= p;
  rep.pass = lhs <= rhs;
  return rep;
}

}  // namespace edp
