#pragma once

#include "pimoduli/cohomology.hpp"

#include <variant>

namespace pimoduli {

/// Π-algebra concentrated in dimensions 1 and n: a finite group A_1 and a finite A_1-module A_n.
struct TwoStageDim1N {
  std::size_t n = 2;
  GModule an;  // carries A_1 as an.group()

  const FiniteGroup& a1() const noexcept { return an.group(); }
};

/// The map q : A_n -> A_{n+1} given by precomposition with the Hopf map.
///
/// Either `linear` (a matrix from A_n's generators to A_{n+1}'s generators; required for n >= 3,
/// where q factors through A_n ⊗ Z/2) or `values` (q of every element of A_n, indexed as
/// FgAbGroup::element(), each value a generator vector of A_{n+1}; only for n = 2).
struct QuadraticMap {
  std::optional<IntMatrix> linear;
  std::vector<IntVector> values;
};

/// Π-algebra concentrated in dimensions n and n+1.
struct TwoStageDimNN1 {
  std::size_t n = 3;
  FgAbGroup an;
  FgAbGroup an1;
  QuadraticMap q;
};

inline void validate(const TwoStageDim1N& a) {
  if (a.n < 2) throw ValidationError("dimension n must be at least 2", "n = " + std::to_string(a.n));
  // GModule validated its own invariants on construction.
}

/// q(x) for every element x of a finite A_n, in reduced normal coordinates of A_{n+1}.
inline std::vector<IntVector> quadratic_values(const TwoStageDimNN1& a, const SizeBounds& bounds = {}) {
  const std::size_t count = a.an.element_count(bounds.element_limit);
  std::vector<IntVector> out(count);
  for (std::size_t x = 0; x < count; ++x) {
    IntVector value = a.q.linear ? (*a.q.linear) * a.an.from_normal(a.an.element(x)) : a.q.values.at(x);
    out[x] = a.an1.normal_coords(value);
  }
  return out;
}

/// Stable-quadratic (n >= 3) or quadratic (n = 2) validation; throws ValidationError with a witness.
inline void validate(const TwoStageDimNN1& a, const SizeBounds& bounds = {}) {
  if (a.n < 2) throw ValidationError("dimension n must be at least 2", "n = " + std::to_string(a.n));
  if (a.n >= 3) {
    if (!a.q.linear)
      throw ValidationError("for n >= 3 the map q must be a homomorphism A_n ⊗ Z/2 -> A_{n+1} given as a matrix");
    // Well defined on A_n ⊗ Z/2: relations of A_n and twice every generator go to zero.
    AbHom(quotient_by_multiple(a.an, 2), a.an1, *a.q.linear);
    return;
  }
  if (!a.an.is_finite())
    throw ValidationError("for n = 2 the group A_n must be finite so q can be checked exhaustively",
                          "A_n = " + a.an.describe());
  if (a.q.linear) {
    AbHom(a.an, a.an1, *a.q.linear);
    return;
  }
  const std::size_t count = a.an.element_count(bounds.element_limit);
  if (a.q.values.size() != count)
    throw ValidationError("q must list a value for every element of A_n",
                          std::to_string(a.q.values.size()) + " given, |A_n| = " + std::to_string(count));
  for (std::size_t x = 0; x < count; ++x)
    if (a.q.values[x].size() != a.an1.generator_count())
      throw ValidationError("q value has the wrong length", "element " + std::to_string(x));
  const auto q = quadratic_values(a, bounds);
  auto index_of_sum = [&](std::size_t x, std::size_t y) {
    return a.an.index_of(a.an.reduce_normal([&] {
      IntVector s = a.an.element(x);
      const IntVector t = a.an.element(y);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += t[i];
      return s;
    }()));
  };
  // cross effect b(x, y) = q(x + y) - q(x) - q(y), in normal coordinates of A_{n+1}
  auto cross = [&](std::size_t x, std::size_t y) {
    IntVector v = q[index_of_sum(x, y)];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= q[x][i] + q[y][i];
    return a.an1.reduce_normal(v);
  };
  for (std::size_t x = 0; x < count; ++x)
    for (std::size_t x2 = 0; x2 < count; ++x2) {
      const std::size_t sum = index_of_sum(x, x2);
      for (std::size_t y = 0; y < count; ++y) {
        IntVector lhs = cross(sum, y);
        const IntVector r1 = cross(x, y);
        const IntVector r2 = cross(x2, y);
        for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] -= r1[i] + r2[i];
        if (a.an1.reduce_normal(lhs) != IntVector(lhs.size()))
          throw ValidationError("cross effect of q is not bilinear",
                                "(x, x', y) = (" + std::to_string(x) + ", " + std::to_string(x2) + ", " +
                                    std::to_string(y) + ")");
      }
    }
}

/// Compatible automorphism pairs, each a pair of element permutations.
/// Case A: (φ on A_1, ψ on A_n) with ψ(g·m) = φ(g)·ψ(m).
/// Case B: (ψ_n, ψ_{n+1}) with ψ_{n+1} ∘ q = q ∘ ψ_n.
/// Elements are sorted lexicographically, so index 0 is the identity pair.
class PiAut {
 public:
  using Pair = std::pair<Permutation, Permutation>;

  PiAut() = default;
  explicit PiAut(std::vector<Pair> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    std::map<Pair, std::size_t> index;
    for (std::size_t i = 0; i < elements_.size(); ++i) index[elements_[i]] = i;
    const std::size_t n = elements_.size();
    table_.assign(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Pair c{pimoduli::compose(elements_[i].first, elements_[j].first),
               pimoduli::compose(elements_[i].second, elements_[j].second)};
        auto it = index.find(c);
        if (it == index.end())
          throw InternalError("automorphism pairs not closed under composition at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
        table_[i][j] = it->second;
      }
    if (n == 0 || elements_[0].first != identity_permutation(elements_[0].first.size()) ||
        elements_[0].second != identity_permutation(elements_[0].second.size()))
      throw InternalError("automorphism pairs do not contain the identity");
  }

  std::size_t order() const noexcept { return elements_.size(); }
  const Pair& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<Pair>& elements() const noexcept { return elements_; }
  /// Index of element(i) ∘ element(j).
  std::size_t compose(std::size_t i, std::size_t j) const { return table_[i][j]; }
  std::size_t inverse(std::size_t i) const {
    for (std::size_t j = 0; j < order(); ++j)
      if (table_[i][j] == 0) return j;
    throw InternalError("automorphism pair without inverse");
  }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }

 private:
  std::vector<Pair> elements_;
  std::vector<std::vector<std::size_t>> table_;
};

/// Aut(A) could not be enumerated (infinite groups); only a description is available.
struct SymbolicAut {
  std::string description;
};

inline std::vector<Permutation> abelian_automorphisms(const FgAbGroup& a, const SizeBounds& bounds) {
  return automorphism_group(additive_group(a, bounds.group_order), bounds.automorphism_group_order);
}

inline PiAut pi_aut(const TwoStageDim1N& a, const SizeBounds& bounds = {}) {
  const auto aut1 = automorphism_group(a.a1(), bounds.automorphism_group_order);
  const auto autn = abelian_automorphisms(a.an.base(), bounds);
  if (aut1.size() * autn.size() > bounds.max_aut_pairs)
    throw SizeBoundError(std::to_string(aut1.size() * autn.size()) + " candidate automorphism pairs exceed max_aut_pairs " +
                         std::to_string(bounds.max_aut_pairs));
  const std::size_t g_order = a.a1().order();
  const std::size_t m_order = autn.front().size();
  std::vector<PiAut::Pair> pairs;
  for (const auto& phi : aut1)
    for (const auto& psi : autn) {
      bool ok = true;
      for (std::size_t g = 0; g < g_order && ok; ++g)
        for (std::size_t x = 0; x < m_order; ++x)
          if (psi[a.an.element_action(g)[x]] != a.an.element_action(phi[g])[psi[x]]) {
            ok = false;
            break;
          }
      if (ok) pairs.emplace_back(phi, psi);
    }
  return PiAut(std::move(pairs));
}

/// "Aut(Z/2 + Z/4)", "GL_2(Z)", ...
inline std::string automorphism_group_name(const FgAbGroup& g) {
  if (g.is_trivial()) return "1";
  if (g.torsion().empty()) return "GL_" + std::to_string(g.free_rank()) + "(Z)";
  return "Aut(" + g.describe() + ")";
}

inline std::variant<PiAut, SymbolicAut> pi_aut(const TwoStageDimNN1& a, const SizeBounds& bounds = {}) {
  const bool q_zero = a.q.linear ? AbHom(quotient_by_multiple(a.an, 2), a.an1, *a.q.linear).is_zero()
                                 : std::all_of(a.q.values.begin(), a.q.values.end(),
                                               [&](const IntVector& v) { return a.an1.is_zero(v); });
  if (!a.an.is_finite() || !a.an1.is_finite()) {
    const std::string product = automorphism_group_name(a.an) + " x " + automorphism_group_name(a.an1);
    return SymbolicAut{q_zero ? product : "{(a, b) in " + product + " : b∘q = q∘a}"};
  }
  const auto autn = abelian_automorphisms(a.an, bounds);
  const auto autn1 = abelian_automorphisms(a.an1, bounds);
  if (autn.size() * autn1.size() > bounds.max_aut_pairs)
    throw SizeBoundError(std::to_string(autn.size() * autn1.size()) +
                         " candidate automorphism pairs exceed max_aut_pairs " + std::to_string(bounds.max_aut_pairs));
  const auto values = quadratic_values(a, bounds);
  std::vector<std::size_t> q(values.size());
  for (std::size_t x = 0; x < values.size(); ++x) q[x] = a.an1.index_of(values[x]);
  std::vector<PiAut::Pair> pairs;
  for (const auto& psi : autn)
    for (const auto& psi1 : autn1) {
      bool ok = true;
      for (std::size_t x = 0; x < q.size(); ++x)
        if (psi1[q[x]] != q[psi[x]]) {
          ok = false;
          break;
        }
      if (ok) pairs.emplace_back(psi, psi1);
    }
  return PiAut(std::move(pairs));
}

/// Matrix of an automorphism of a finite abelian group (given on element indices) in
/// normal coordinates.
inline IntMatrix normal_matrix_of(const FgAbGroup& a, const Permutation& perm) {
  const std::size_t r = a.normal_rank();
  IntMatrix m(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    IntVector e(r);
    e[j] = 1;
    const IntVector image = a.element(perm.at(a.index_of(e)));
    for (std::size_t i = 0; i < r; ++i) m(i, j) = image[i];
  }
  return m;
}

/// Matrix, in normal coordinates of H, of [c] -> [ψ ∘ c ∘ (φ^{-1} coordinatewise)].
inline IntMatrix kinvariant_action_matrix(const TwoStageDim1N& a, const PiAut::Pair& aut, const CohomologyGroup& h) {
  const FiniteGroup& g = a.a1();
  const FgAbGroup& base = a.an.base();
  const std::size_t r = base.normal_rank();
  if (h.group().normal_rank() == 0) return IntMatrix(0, 0);
  const TupleIndex tuples(g.order(), h.degree());
  const Permutation phi_inv = inverse(aut.first);
  const IntMatrix psi = normal_matrix_of(base, aut.second);

  // source tuple for each target tuple
  std::vector<std::size_t> source(tuples.count());
  for (std::size_t t = 0; t < tuples.count(); ++t) {
    auto tup = tuples.tuple(t);
    for (auto& x : tup) x = phi_inv[x];
    source[t] = tuples.index(tup);
  }

  const auto reps = h.representatives();
  IntMatrix out(h.group().normal_rank(), reps.size());
  for (std::size_t j = 0; j < reps.size(); ++j) {
    Cocycle moved{h.degree(), IntVector(reps[j].values.size())};
    for (std::size_t t = 0; t < tuples.count(); ++t) {
      const IntVector image = psi * reps[j].value_at(source[t], r);
      for (std::size_t i = 0; i < r; ++i) moved.values[t * r + i] = image[i];
    }
    if (!h.is_cocycle(moved))
      throw InternalError("transported k-invariant representative is not a cocycle (generator " + std::to_string(j) + ")");
    const IntVector cls = h.class_of(moved);
    for (std::size_t i = 0; i < cls.size(); ++i) out(i, j) = cls[i];
  }
  return out;
}

/// The permutation of the elements of H (indexed as FgAbGroup::element) induced by aut.
inline Permutation act_on_kinvariants(const TwoStageDim1N& a, const PiAut::Pair& aut, const CohomologyGroup& h,
                                      const SizeBounds& bounds = {}) {
  const IntMatrix m = kinvariant_action_matrix(a, aut, h);
  const FgAbGroup& hg = h.group();
  const std::size_t count = hg.element_count(bounds.element_limit);
  Permutation perm(count);
  for (std::size_t x = 0; x < count; ++x) perm[x] = hg.index_of(hg.reduce_normal(m * hg.element(x)));
  if (!is_permutation_of_range(perm)) throw InternalError("induced map on k-invariants is not a bijection");
  return perm;
}

}  // namespace pimoduli
