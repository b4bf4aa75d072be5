#pragma once

#include "pimoduli/ab_group.hpp"

namespace pimoduli {

/// C^0 -> C^1 -> ... -> C^N with d_{k+1} ∘ d_k ≡ 0 modulo the relations of C^{k+2}.
class CochainComplex {
 public:
  CochainComplex() = default;

  /// `differentials[k]` maps groups[k] to groups[k+1].
  CochainComplex(std::vector<FgAbGroup> groups, std::vector<AbHom> differentials)
      : groups_(std::move(groups)), differentials_(std::move(differentials)) {
    if (!groups_.empty() && differentials_.size() + 1 != groups_.size())
      throw std::invalid_argument("CochainComplex: need exactly one differential between consecutive groups");
    for (std::size_t k = 0; k < differentials_.size(); ++k) {
      if (differentials_[k].matrix().cols() != groups_[k].generator_count() ||
          differentials_[k].matrix().rows() != groups_[k + 1].generator_count())
        throw std::invalid_argument("CochainComplex: differential " + std::to_string(k) + " has wrong shape");
    }
  }

  std::size_t length() const noexcept { return groups_.size(); }
  const FgAbGroup& group(std::size_t k) const { return groups_.at(k); }
  const AbHom& differential(std::size_t k) const { return differentials_.at(k); }
  const std::vector<FgAbGroup>& groups() const noexcept { return groups_; }

  /// Throws ValidationError naming the first generator of C^k whose image under d_{k+1} ∘ d_k is nonzero.
  void check_composite(std::size_t k) const {
    if (k + 2 >= groups_.size()) return;
    IntMatrix dd = differentials_[k + 1].matrix() * differentials_[k].matrix();
    for (std::size_t j = 0; j < dd.cols(); ++j)
      if (!groups_[k + 2].is_zero(dd.column(j)))
        throw ValidationError("d" + std::to_string(k + 1) + " ∘ d" + std::to_string(k) + " is not zero",
                              "generator " + std::to_string(j) + " of C^" + std::to_string(k));
  }

  void check_all_composites() const {
    for (std::size_t k = 0; k + 2 < groups_.size(); ++k) check_composite(k);
  }

 private:
  std::vector<FgAbGroup> groups_;
  std::vector<AbHom> differentials_;
};

/// A subquotient Z / B of a presented group, where Z is a sublattice of generator vectors and
/// B ⊆ Z. Carries the section that assigns class coordinates to elements of Z.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(LatticeBasis cycles, FgAbGroup group) : cycles_(std::move(cycles)), group_(std::move(group)) {}

  const FgAbGroup& group() const noexcept { return group_; }
  const LatticeBasis& cycles() const noexcept { return cycles_; }

  bool is_cycle(const IntVector& x) const { return cycles_.contains(x); }

  /// Normal coordinates of the class of x; x must lie in Z.
  IntVector class_of(const IntVector& x) const {
    auto y = cycles_.solve(x);
    if (!y) throw InternalError("class_of: vector is not a cocycle");
    return group_.normal_coords(*y);
  }

  /// A cycle representing the class with the given normal coordinates.
  IntVector representative(const IntVector& normal) const {
    return cycles_.basis() * group_.from_normal(normal);
  }

  /// The cycle representing the i-th normal generator.
  IntVector generator_representative(std::size_t i) const {
    IntVector e(group_.normal_rank());
    e.at(i) = 1;
    return representative(e);
  }

 private:
  LatticeBasis cycles_;
  FgAbGroup group_;
};

namespace detail {

/// Moduli n_i when the relations are diag(n_1, ..., n_N) with every n_i > 0.
inline std::optional<IntVector> diagonal_moduli(const FgAbGroup& g) {
  if (!g.diagonal_relations()) return std::nullopt;
  IntVector out(g.generator_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (g.relations()(i, i) <= 0) return std::nullopt;
    out[i] = g.relations()(i, i);
  }
  return out;
}

/// Basis of {x : d x ≡ 0 mod n_i in row i}, imposing one congruence at a time.
inline IntMatrix kernel_mod_diagonal(const IntMatrix& d, const IntVector& moduli) {
  const std::size_t m = d.cols();
  IntMatrix b = IntMatrix::identity(m);
  std::vector<std::size_t> support;
  IntVector v(m);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    const Integer& n = moduli[i];
    if (n == 1) continue;
    support.clear();
    for (std::size_t l = 0; l < m; ++l)
      if (d(i, l) != 0) support.push_back(l);
    if (support.empty()) continue;
    // v = (row i of d) * b, reduced mod n
    for (std::size_t j = 0; j < m; ++j) {
      Integer s = 0;
      for (auto l : support)
        if (b(l, j) != 0) s += d(i, l) * b(l, j);
      v[j] = mod_nonneg(s, n);
    }
    for (;;) {
      std::optional<std::size_t> p;
      for (std::size_t j = 0; j < m; ++j)
        if (v[j] != 0 && (!p || v[j] < v[*p])) p = j;
      if (!p) break;
      bool single = true;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == *p || v[j] == 0) continue;
        const Integer q = v[j] / v[*p];
        b.add_col_multiple(j, *p, -q);
        v[j] -= q * v[*p];
        if (v[j] != 0) single = false;
      }
      if (single) {
        const Integer scale = n / gcd(v[*p], n);
        for (std::size_t r = 0; r < m; ++r) b(r, *p) *= scale;
        break;
      }
    }
  }
  return b;
}

/// Generators of {x in Z^m : d x represents zero in target}.
inline IntMatrix cocycle_generators(const AbHom& d) {
  const FgAbGroup& target = d.target();
  const std::size_t m = d.source().generator_count();
  if (const auto moduli = diagonal_moduli(target)) return kernel_mod_diagonal(d.matrix(), *moduli);
  IntMatrix k = integer_kernel(hstack(d.matrix(), target.relations()));
  return k.row_range(0, m);
}

inline Subquotient make_subquotient(const IntMatrix& cycle_generators, const std::vector<IntVector>& boundaries) {
  LatticeBasis cycles(cycle_generators);
  IntMatrix coords(cycles.rank(), boundaries.size());
  for (std::size_t j = 0; j < boundaries.size(); ++j) {
    auto y = cycles.solve(boundaries[j]);
    if (!y) throw InternalError("boundary is not a cycle");
    for (std::size_t i = 0; i < y->size(); ++i) coords(i, j) = (*y)[i];
  }
  return Subquotient(std::move(cycles), FgAbGroup(cycles.rank(), coords));
}

}  // namespace detail

/// ker(d_k) / im(d_{k-1}) in normal form, together with its class-coordinate section.
/// Vectors are generator vectors of C^k; the relations of C^k count as coboundaries.
inline Subquotient homology_at(const CochainComplex& c, std::size_t k) {
  if (k >= c.length()) throw std::out_of_range("homology_at: degree outside complex");
  if (k >= 1) c.check_composite(k - 1);
  const FgAbGroup& ck = c.group(k);
  const std::size_t m = ck.generator_count();

  IntMatrix cycle_gens =
      k + 1 < c.length() ? detail::cocycle_generators(c.differential(k)) : IntMatrix::identity(m);

  std::vector<IntVector> boundaries;
  if (k >= 1) {
    const IntMatrix& d = c.differential(k - 1).matrix();
    for (std::size_t j = 0; j < d.cols(); ++j) boundaries.push_back(d.column(j));
  }
  for (std::size_t j = 0; j < ck.relations().cols(); ++j) boundaries.push_back(ck.relations().column(j));
  return detail::make_subquotient(cycle_gens, boundaries);
}

/// ker(d_k) modulo the relations of C^k only, i.e. the cocycle group Z^k.
inline Subquotient cocycles_at(const CochainComplex& c, std::size_t k) {
  if (k >= c.length()) throw std::out_of_range("cocycles_at: degree outside complex");
  const FgAbGroup& ck = c.group(k);
  IntMatrix cycle_gens = k + 1 < c.length() ? detail::cocycle_generators(c.differential(k))
                                            : IntMatrix::identity(ck.generator_count());
  std::vector<IntVector> boundaries;
  for (std::size_t j = 0; j < ck.relations().cols(); ++j) boundaries.push_back(ck.relations().column(j));
  return detail::make_subquotient(cycle_gens, boundaries);
}

}  // namespace pimoduli
