#pragma once

// Monomial presentations of extensions 1 -> T -> G -> F -> 1 with T a split
// torus of rank d and F a finite p-group.
//
// Action convention: a torus point t acts on line i by the character w_i.  A
// monomial element (sigma, c) sends coordinate v_{sigma^-1(i)} to position i
// and scales it by zeta^{c_i}, where zeta^{a/b} means a primitive b-th root of
// unity raised to the a-th power.  Products follow
//     (s1, c1)(s2, c2) = (s1 s2, c1 + s1 . c2),   (s . c)_{s(j)} = c_j.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "edp/error.hpp"
#include "edp/zlat.hpp"

namespace edp {

/// 0-based image list: perm[i] is the image of i.
using Permutation = std::vector<std::size_t>;

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

inline bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

/// (a b)(i) = a(b(i))
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline Permutation inverse(const Permutation& a) {
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = i;
  return r;
}

inline bool is_even(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) seen[j] = true, ++len;
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

/// Cycles of p, each starting at its smallest point, ordered by that point.
inline std::vector<std::vector<std::size_t>> cycles(const Permutation& p) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cyc;
    for (std::size_t j = i; !seen[j]; j = p[j]) seen[j] = true, cyc.push_back(j);
    out.push_back(std::move(cyc));
  }
  return out;
}

/// Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"; "()" for the identity.
inline std::string cycle_string(const Permutation& p) {
  std::ostringstream os;
  for (const auto& c : cycles(p)) {
    if (c.size() < 2) continue;
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k] + 1;
    os << ')';
  }
  auto s = os.str();
  return s.empty() ? "()" : s;
}

struct MonomialElement {
  Permutation perm;
  QZVector coeff;

  static MonomialElement identity(std::size_t n) { return {identity_permutation(n), QZVector(n)}; }
  std::size_t size() const { return perm.size(); }

  friend bool operator==(const MonomialElement&, const MonomialElement&) = default;
  friend bool operator<(const MonomialElement& a, const MonomialElement& b) {
    return std::tie(a.perm, a.coeff) < std::tie(b.perm, b.coeff);
  }
};

/// (s . c)_{s(j)} = c_j
inline QZVector permute(const Permutation& s, const QZVector& c) {
  QZVector r(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) r[s[j]] = c[j];
  return r;
}

inline MonomialElement operator*(const MonomialElement& a, const MonomialElement& b) {
  if (a.size() != b.size()) fail(ErrorCode::InvalidInput, "monomial product size mismatch");
  MonomialElement r{compose(a.perm, b.perm), permute(a.perm, b.coeff)};
  for (std::size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] += a.coeff[i];
  return r;
}

inline MonomialElement inverse(const MonomialElement& a) {
  auto inv = inverse(a.perm);
  QZVector c = permute(inv, a.coeff);
  for (auto& x : c) x = -x;
  return {std::move(inv), std::move(c)};
}

// ---------------------------------------------------------------------------

struct MonomialGroupPresentation {
  std::uint64_t p = 2;
  std::size_t torus_rank = 0;
  std::uint64_t root_of_unity_exponent = 1;
  std::vector<IntVector> weights;              ///< one weight per line of the defining representation
  std::vector<MonomialElement> generators;     ///< monomial lifts of generators of F
  std::optional<bool> split_claim;

  std::size_t lines() const { return weights.size(); }

  /// d x m matrix whose columns are the weights.
  IntMatrix weight_matrix() const { return IntMatrix::from_columns(weights, torus_rank); }
};

/// One summand of a monomial representation: its weights and, for each
/// presentation generator, the monomial action on the summand's lines.
struct RepBlock {
  std::vector<IntVector> weights;
  std::vector<MonomialElement> generators;

  std::size_t dimension() const { return weights.size(); }
};

struct MonomialRep {
  std::vector<RepBlock> blocks;

  static MonomialRep defining(const MonomialGroupPresentation& p) {
    return MonomialRep{{RepBlock{p.weights, p.generators}}};
  }

  std::size_t dimension() const {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.dimension();
    return n;
  }

  /// All blocks concatenated into one.
  RepBlock flattened(std::size_t generator_count) const {
    RepBlock out;
    out.generators.assign(generator_count, MonomialElement{});
    std::size_t offset = 0;
    for (const auto& b : blocks) {
      if (b.generators.size() != generator_count)
        fail(ErrorCode::IncompatibleRep, "block generator count differs from presentation");
      out.weights.insert(out.weights.end(), b.weights.begin(), b.weights.end());
      for (std::size_t g = 0; g < generator_count; ++g) {
        const auto& src = b.generators[g];
        if (src.size() != b.dimension()) fail(ErrorCode::IncompatibleRep, "block generator size mismatch");
        for (std::size_t i = 0; i < src.size(); ++i) {
          out.generators[g].perm.push_back(src.perm[i] + offset);
          out.generators[g].coeff.push_back(src.coeff[i]);
        }
      }
      offset += b.dimension();
    }
    return out;
  }
};

/// A finite group of unimodular matrices acting on Z^rank; the first matrix is the identity.
struct FLattice {
  std::size_t rank = 0;
  std::vector<IntMatrix> matrices;

  std::size_t order() const { return matrices.size(); }

  static FLattice generated_by(std::size_t rank, const std::vector<IntMatrix>& generators,
                               const Limits& limits = {}) {
    FLattice lat{rank, {IntMatrix::identity(rank)}};
    std::map<IntMatrix, std::size_t> seen{{lat.matrices[0], 0}};
    for (std::size_t i = 0; i < lat.matrices.size(); ++i)
      for (const auto& g : generators) {
        if (g.rows() != rank || g.cols() != rank) fail(ErrorCode::InvalidInput, "lattice generator shape mismatch");
        IntMatrix prod = lat.matrices[i] * g;
        if (seen.emplace(prod, lat.matrices.size()).second) {
          lat.matrices.push_back(std::move(prod));
          if (lat.matrices.size() > limits.max_elements)
            fail(ErrorCode::LimitExceeded, "matrix group closure exceeded element cap");
        }
      }
    return lat;
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < matrices.size(); ++i)
      for (std::size_t j = i + 1; j < matrices.size(); ++j)
        if (matrices[i] * matrices[j] != matrices[j] * matrices[i]) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------

struct AbelianDecomposition {
  std::vector<Int> moduli;               ///< invariant factors, each > 1
  std::vector<IntVector> coordinates;    ///< per element, entries reduced mod moduli
};

/// Values of a homomorphism F -> Q/Z, indexed by element.
struct Character {
  std::vector<QZ> values;
};

class ComponentGroup;
ComponentGroup component_group(const MonomialGroupPresentation& pres, const Limits& limits = {});

/// The enumerated component group F = G/T.  Elements are stored in
/// breadth-first order from the identity; each keeps the first monomial
/// representative reached on the defining lines.
class ComponentGroup {
 public:
  std::size_t order() const { return reps_.size(); }
  std::size_t identity() const { return 0; }
  std::size_t generator_count() const { return gen_index_.size(); }
  std::uint64_t p() const { return p_; }
  std::size_t torus_rank() const { return d_; }

  const MonomialElement& representative(std::size_t i) const { return reps_.at(i); }
  const IntMatrix& induced_matrix(std::size_t i) const { return matrices_.at(i); }
  /// Element index of the class of the g-th presentation generator.
  std::size_t generator_element(std::size_t g) const { return gen_index_.at(g); }
  std::size_t parent(std::size_t i) const { return parent_.at(i); }
  std::size_t parent_generator(std::size_t i) const { return parent_gen_.at(i); }
  const IntVector& exponent_vector(std::size_t i) const { return exponents_.at(i); }
  bool split_witness() const { return split_witness_; }
  std::size_t literal_group_order() const { return literal_order_; }

  /// Index of the class containing a monomial element on the defining lines.
  std::size_t index_of(const MonomialElement& x) const {
    auto it = index_.find(key(x));
    if (it == index_.end()) fail(ErrorCode::InvalidInput, "monomial element is not in the group");
    return it->second;
  }
  std::optional<std::size_t> find(const MonomialElement& x) const {
    auto it = index_.find(key(x));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t mul(std::size_t a, std::size_t b) const {
    if (!table_.empty()) return table_[a][b];
    return index_of(reps_.at(a) * reps_.at(b));
  }
  std::size_t inverse_of(std::size_t a) const { return index_of(inverse(reps_.at(a))); }

  std::size_t element_order(std::size_t a) const {
    std::size_t n = 1;
    for (std::size_t x = a; x != identity(); x = mul(x, a)) ++n;
    return n;
  }

  /// Full table, computed once and then used by mul().
  const std::vector<std::vector<std::size_t>>& multiplication_table() const {
    if (table_.empty()) {
      std::vector<std::vector<std::size_t>> t(order(), std::vector<std::size_t>(order()));
      for (std::size_t a = 0; a < order(); ++a)
        for (std::size_t b = 0; b < order(); ++b) t[a][b] = index_of(reps_[a] * reps_[b]);
      table_ = std::move(t);
    }
    return table_;
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < gen_index_.size(); ++i)
      for (std::size_t j = i + 1; j < gen_index_.size(); ++j)
        if (mul(gen_index_[i], gen_index_[j]) != mul(gen_index_[j], gen_index_[i])) return false;
    return true;
  }

  /// Monomial action of every element on the lines of `block`, following the
  /// breadth-first tree (element = parent * generator).
  std::vector<MonomialElement> element_actions(const RepBlock& block) const {
    if (block.generators.size() != generator_count())
      fail(ErrorCode::IncompatibleRep, "block generator count differs from presentation");
    std::vector<MonomialElement> act(order());
    act[0] = MonomialElement::identity(block.dimension());
    for (std::size_t i = 1; i < order(); ++i) act[i] = act[parent_[i]] * block.generators[parent_gen_[i]];
    return act;
  }

  /// Checks that the block is a representation of the same group G: its
  /// weights are permuted compatibly with the induced matrices, and every
  /// defining relation of F holds jointly on the defining lines and the block
  /// up to one common torus element.
  void check_compatible(const RepBlock& block) const {
    const std::size_t m = block.dimension();
    for (const auto& w : block.weights)
      if (w.size() != d_) fail(ErrorCode::IncompatibleRep, "block weight has wrong length");
    if (block.generators.size() != generator_count())
      fail(ErrorCode::IncompatibleRep, "block generator count differs from presentation");
    for (std::size_t g = 0; g < generator_count(); ++g) {
      const auto& x = block.generators[g];
      if (x.perm.size() != m || x.coeff.size() != m || !is_permutation(x.perm))
        fail(ErrorCode::IncompatibleRep, "block generator " + std::to_string(g + 1) + " is not a monomial element");
      const IntMatrix& a = matrices_[gen_index_[g]];
      for (std::size_t i = 0; i < m; ++i)
        if (a * block.weights[i] != block.weights[x.perm[i]])
          fail(ErrorCode::IncompatibleRep, "block weights are not permuted by generator " + std::to_string(g + 1));
    }
    // Stacked torus image: (Q/Z)^d -> (Q/Z)^{m_P + m}.
    IntMatrix stacked(defining_weights_.size() + m, d_);
    for (std::size_t i = 0; i < defining_weights_.size(); ++i)
      for (std::size_t j = 0; j < d_; ++j) stacked(i, j) = defining_weights_[i][j];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < d_; ++j) stacked(defining_weights_.size() + i, j) = block.weights[i][j];
    TorsionImageReducer joint(stacked);

    auto act = element_actions(block);
    for (std::size_t x = 0; x < order(); ++x)
      for (std::size_t g = 0; g < generator_count(); ++g) {
        std::size_t y = mul(x, gen_index_[g]);
        MonomialElement on_def = reps_[x] * gen_def_[g];
        MonomialElement on_block = act[x] * block.generators[g];
        if (on_block.perm != act[y].perm)
          fail(ErrorCode::IncompatibleRep, "block permutations do not factor through the component group");
        QZVector delta;
        for (std::size_t i = 0; i < on_def.size(); ++i) delta.push_back(on_def.coeff[i] - reps_[y].coeff[i]);
        for (std::size_t i = 0; i < m; ++i) delta.push_back(on_block.coeff[i] - act[y].coeff[i]);
        if (!joint.contains(delta))
          fail(ErrorCode::IncompatibleRep, "block coefficients violate a relation of the group");
      }
  }

  /// Invariant-factor decomposition of an abelian F with coordinates of every element.
  AbelianDecomposition abelian_decomposition() const {
    if (!is_abelian()) fail(ErrorCode::NotAbelianComponent, "component group is not abelian");
    const std::size_t k = generator_count();
    std::vector<IntVector> relations;
    for (std::size_t x = 0; x < order(); ++x)
      for (std::size_t g = 0; g < k; ++g) {
        IntVector r = exponents_[x];
        r[g] += 1;
        const IntVector& target = exponents_[mul(x, gen_index_[g])];
        bool zero = true;
        for (std::size_t i = 0; i < k; ++i) {
          r[i] -= target[i];
          if (r[i] != 0) zero = false;
        }
        if (!zero) relations.push_back(std::move(r));
      }
    std::sort(relations.begin(), relations.end());
    relations.erase(std::unique(relations.begin(), relations.end()), relations.end());

    AbelianDecomposition out;
    if (k == 0 || relations.empty()) {
      if (order() != 1) fail(ErrorCode::InvalidInput, "relation lattice does not present a finite group");
      out.coordinates.assign(order(), IntVector{});
      return out;
    }
    auto snf = smith_normal_form(IntMatrix::from_columns(relations, k));
    if (snf.rank < k) fail(ErrorCode::InvalidInput, "relation lattice does not present a finite group");
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < k; ++i)
      if (snf.invariant_factors[i] > 1) {
        kept.push_back(i);
        out.moduli.push_back(snf.invariant_factors[i]);
      }
    for (std::size_t x = 0; x < order(); ++x) {
      IntVector ua = snf.U * exponents_[x];
      IntVector c;
      for (std::size_t j = 0; j < kept.size(); ++j) c.push_back(mod(ua[kept[j]], out.moduli[j]));
      out.coordinates.push_back(std::move(c));
    }
    return out;
  }

 private:
  friend ComponentGroup component_group(const MonomialGroupPresentation&, const Limits&);

  struct Key {
    Permutation perm;
    QZVector tail;
    friend bool operator<(const Key& a, const Key& b) { return std::tie(a.perm, a.tail) < std::tie(b.perm, b.tail); }
  };
  Key key(const MonomialElement& x) const { return {x.perm, reducer_.key(x.coeff)}; }

  std::uint64_t p_ = 2;
  std::size_t d_ = 0;
  std::vector<IntVector> defining_weights_;
  std::vector<MonomialElement> gen_def_;
  TorsionImageReducer reducer_;
  std::vector<MonomialElement> reps_;
  std::vector<IntMatrix> matrices_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_gen_;
  std::vector<IntVector> exponents_;
  std::vector<std::size_t> gen_index_;
  std::map<Key, std::size_t> index_;
  bool split_witness_ = false;
  std::size_t literal_order_ = 0;
  mutable std::vector<std::vector<std::size_t>> table_;
};

struct ValidationReport {
  std::vector<IntMatrix> induced_matrices;  ///< A_g per generator
  std::size_t component_order = 0;
  bool split_witness = false;
  std::size_t literal_group_order = 0;
  std::vector<std::string> diagnostics;
};

namespace detail {

inline void check_structure(const MonomialGroupPresentation& P) {
  if (!is_prime(P.p)) fail(ErrorCode::InvalidInput, "p = " + std::to_string(P.p) + " is not prime");
  if (P.root_of_unity_exponent == 0) fail(ErrorCode::InvalidInput, "root_of_unity_exponent must be positive");
  const std::size_t m = P.lines();
  for (std::size_t i = 0; i < m; ++i)
    if (P.weights[i].size() != P.torus_rank)
      fail(ErrorCode::InvalidInput, "weight " + std::to_string(i + 1) + " does not have length torus_rank");
  for (std::size_t g = 0; g < P.generators.size(); ++g) {
    const auto& x = P.generators[g];
    const std::string name = "generator " + std::to_string(g + 1);
    if (x.perm.size() != m || !is_permutation(x.perm)) fail(ErrorCode::InvalidInput, name + ": perm is not a permutation of the lines");
    if (x.coeff.size() != m) fail(ErrorCode::InvalidInput, name + ": coefficient vector has wrong length");
    for (const auto& c : x.coeff)
      if (Int(P.root_of_unity_exponent) % c.den() != 0)
        fail(ErrorCode::InvalidInput, name + ": coefficient denominator " + c.den().str() +
                                          " does not divide root_of_unity_exponent");
  }
}

/// A with A w_i = w_{sigma(i)} for every line i.
inline std::optional<IntMatrix> induced_matrix(const MonomialGroupPresentation& P, const Permutation& sigma) {
  const std::size_t d = P.torus_rank, m = P.lines();
  IntMatrix wt = IntMatrix::from_rows(P.weights, d);  // m x d
  IntMatrix a(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    IntVector rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = P.weights[sigma[i]][r];
    auto row = solve_integer(wt, rhs);
    if (!row) return std::nullopt;
    for (std::size_t j = 0; j < d; ++j) a(r, j) = (*row)[j];
  }
  if (abs(determinant(a)) != 1) return std::nullopt;
  return a;
}

}  // namespace detail

inline ComponentGroup component_group(const MonomialGroupPresentation& P, const Limits& limits) {
  detail::check_structure(P);
  const std::size_t d = P.torus_rank, m = P.lines(), k = P.generators.size();
  if (rank(P.weight_matrix()) != d)
    fail(ErrorCode::RankDeficient, "weights span a sublattice of rank < torus_rank");

  ComponentGroup F;
  F.p_ = P.p;
  F.d_ = d;
  F.defining_weights_ = P.weights;
  F.gen_def_ = P.generators;
  F.reducer_ = TorsionImageReducer(IntMatrix::from_rows(P.weights, d));

  std::vector<IntMatrix> gen_mats;
  for (std::size_t g = 0; g < k; ++g) {
    auto a = detail::induced_matrix(P, P.generators[g].perm);
    if (!a) fail(ErrorCode::NoInducedAction, "no integral matrix realizes the permutation of generator " + std::to_string(g + 1));
    gen_mats.push_back(std::move(*a));
  }

  // Breadth-first closure; each level is sorted by class key.
  F.reps_.push_back(MonomialElement::identity(m));
  F.matrices_.push_back(IntMatrix::identity(d));
  F.parent_.push_back(0);
  F.parent_gen_.push_back(0);
  F.exponents_.push_back(IntVector(k));
  F.index_.emplace(F.key(F.reps_[0]), 0);

  struct Pending {
    ComponentGroup::Key key;
    MonomialElement rep;
    std::size_t parent, gen;
  };
  std::size_t level_begin = 0;
  while (level_begin < F.reps_.size()) {
    const std::size_t level_end = F.reps_.size();
    std::map<ComponentGroup::Key, Pending> next;
    for (std::size_t x = level_begin; x < level_end; ++x)
      for (std::size_t g = 0; g < k; ++g) {
        MonomialElement y = F.reps_[x] * P.generators[g];
        auto key = F.key(y);
        if (F.index_.count(key) || next.count(key)) continue;
        next.emplace(key, Pending{key, std::move(y), x, g});
        if (F.reps_.size() + next.size() > limits.max_elements)
          fail(ErrorCode::LimitExceeded, "component group closure exceeded " + std::to_string(limits.max_elements) + " elements");
      }
    for (auto& [key, pend] : next) {
      const std::size_t idx = F.reps_.size();
      F.index_.emplace(key, idx);
      F.reps_.push_back(std::move(pend.rep));
      F.matrices_.push_back(F.matrices_[pend.parent] * gen_mats[pend.gen]);
      F.parent_.push_back(pend.parent);
      F.parent_gen_.push_back(pend.gen);
      IntVector e = F.exponents_[pend.parent];
      e[pend.gen] += 1;
      F.exponents_.push_back(std::move(e));
    }
    level_begin = level_end;
  }
  for (std::size_t g = 0; g < k; ++g) F.gen_index_.push_back(F.index_of(P.generators[g]));

  if (!is_power_of(Int(F.order()), Int(P.p)))
    fail(ErrorCode::NotPGroup, "component group has order " + std::to_string(F.order()) +
                                   ", which is not a power of p = " + std::to_string(P.p));

  // Literal closure of the generator pairs, compared exactly.
  std::map<MonomialElement, bool> literal{{MonomialElement::identity(m), true}};
  std::vector<MonomialElement> queue{MonomialElement::identity(m)};
  bool capped = false;
  for (std::size_t i = 0; i < queue.size() && !capped; ++i)
    for (const auto& g : P.generators) {
      MonomialElement y = queue[i] * g;
      if (literal.emplace(y, true).second) {
        queue.push_back(std::move(y));
        if (queue.size() > F.order()) {
          capped = true;
          break;
        }
      }
    }
  F.literal_order_ = queue.size();
  F.split_witness_ = !capped && queue.size() == F.order();
  return F;
}

inline ValidationReport validate(const MonomialGroupPresentation& P, const Limits& limits = {}) {
  ComponentGroup F = component_group(P, limits);
  ValidationReport r;
  for (std::size_t g = 0; g < F.generator_count(); ++g) r.induced_matrices.push_back(F.induced_matrix(F.generator_element(g)));
  r.component_order = F.order();
  r.split_witness = F.split_witness();
  r.literal_group_order = F.literal_group_order();
  if (P.split_claim.value_or(false) && !F.split_witness())
    r.diagnostics.push_back("split claim rejected: the literal generators generate a group of order " +
                            (F.literal_group_order() > F.order() ? std::string("greater than ") + std::to_string(F.order())
                                                                 : std::to_string(F.literal_group_order())) +
                            ", not a complement of order " + std::to_string(F.order()));
  if (P.split_claim.has_value() && !*P.split_claim && F.split_witness())
    r.diagnostics.push_back("presentation claims non-split, but the literal generators form a complement");
  return r;
}

/// The character lattice X(T) = Z^d with the matrix group induced by F.
inline FLattice character_lattice_action(const ComponentGroup& F, const Limits& limits = {}) {
  std::vector<IntMatrix> gens;
  for (std::size_t g = 0; g < F.generator_count(); ++g) gens.push_back(F.induced_matrix(F.generator_element(g)));
  return FLattice::generated_by(F.torus_rank(), gens, limits);
}

inline FLattice character_lattice_action(const MonomialGroupPresentation& P, const Limits& limits = {}) {
  return character_lattice_action(component_group(P, limits), limits);
}

/// Character with values given on the generator classes, extended along the
/// breadth-first tree.  Not checked; pass it to append_character_block.
inline Character character_from_generator_values(const ComponentGroup& F, const QZVector& generator_values) {
  if (generator_values.size() != F.generator_count()) fail(ErrorCode::InvalidInput, "one value per generator required");
  Character chi{std::vector<QZ>(F.order())};
  for (std::size_t i = 1; i < F.order(); ++i)
    chi.values[i] = chi.values[F.parent(i)] + generator_values[F.parent_generator(i)];
  return chi;
}

/// Whether chi(x g) = chi(x) + chi(g) for every element x and generator class g.
inline bool is_character(const ComponentGroup& F, const Character& chi) {
  if (chi.values.size() != F.order() || !chi.values[F.identity()].is_zero()) return false;
  for (std::size_t x = 0; x < F.order(); ++x)
    for (std::size_t g = 0; g < F.generator_count(); ++g) {
      std::size_t ge = F.generator_element(g);
      if (chi.values[F.mul(x, ge)] != chi.values[x] + chi.values[ge]) return false;
    }
  return true;
}

/// R plus a one-dimensional zero-weight summand on which G acts through chi.
inline MonomialRep append_character_block(const MonomialRep& R, const Character& chi, const ComponentGroup& F) {
  if (!is_character(F, chi)) fail(ErrorCode::NotACharacter, "values do not define a homomorphism F -> Q/Z");
  RepBlock b;
  b.weights.push_back(IntVector(F.torus_rank()));
  for (std::size_t g = 0; g < F.generator_count(); ++g)
    b.generators.push_back(MonomialElement{{0}, {chi.values[F.generator_element(g)]}});
  MonomialRep out = R;
  out.blocks.push_back(std::move(b));
  return out;
}

}  // namespace edp
