#pragma once

#include "pimoduli/errors.hpp"
#include "pimoduli/smith.hpp"

#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

namespace pimoduli {

/// Finitely generated abelian group Z^m / (column span of R).
///
/// The normal form (free rank plus invariant factors d_1 | d_2 | ... with d_i >= 2) is computed
/// from R by Smith normal form on first use and shared between copies. Normal coordinates
/// list the torsion factors first (ascending divisibility), then the free summands.
class FgAbGroup {
 public:
  FgAbGroup() : FgAbGroup(0, IntMatrix(0, 0)) {}

  FgAbGroup(std::size_t generators, IntMatrix relations)
      : state_(std::make_shared<State>()) {
    if (relations.rows() != generators && !(relations.cols() == 0 && relations.rows() == 0))
      throw std::invalid_argument("FgAbGroup: relation matrix must have one row per generator");
    if (relations.rows() != generators) relations = IntMatrix(generators, 0);
    state_->generators = generators;
    state_->diagonal = relations.rows() == relations.cols() && relations.is_diagonal();
    state_->relations = std::move(relations);
  }

  /// Z/d, or Z when d == 0.
  static FgAbGroup cyclic(const Integer& d) {
    if (d < 0) throw std::invalid_argument("FgAbGroup::cyclic: negative order");
    if (d == 0) return FgAbGroup(1, IntMatrix(1, 0));
    IntMatrix r(1, 1);
    r(0, 0) = d;
    return FgAbGroup(1, r);
  }

  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank, IntMatrix(rank, 0)); }

  /// Direct sum of cyclic groups with the given orders (0 = Z), one generator each.
  static FgAbGroup from_cyclic_factors(const IntVector& orders) {
    IntMatrix r(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (orders[i] < 0) throw std::invalid_argument("FgAbGroup: negative cyclic order");
      r(i, i) = orders[i];
    }
    return FgAbGroup(orders.size(), r);
  }

  std::size_t generator_count() const noexcept { return state_->generators; }
  const IntMatrix& relations() const noexcept { return state_->relations; }
  /// True when the relation matrix is square and diagonal.
  bool diagonal_relations() const noexcept { return state_->diagonal; }

  std::size_t free_rank() const { return normal().free_rank; }
  /// Invariant factors d_1 | d_2 | ..., each >= 2.
  const IntVector& torsion() const { return normal().torsion; }
  /// Modulus of each normal coordinate: the torsion factors, then 0 for each free summand.
  const IntVector& moduli() const { return normal().moduli; }
  std::size_t normal_rank() const { return normal().moduli.size(); }

  bool is_finite() const { return free_rank() == 0; }
  bool is_trivial() const { return normal_rank() == 0; }

  /// Group order; throws for infinite groups.
  Integer order() const {
    if (!is_finite()) throw std::domain_error("FgAbGroup::order: group is infinite");
    Integer o = 1;
    for (const auto& d : torsion()) o *= d;
    return o;
  }

  /// Reduced normal coordinates of the element represented by generator vector x.
  IntVector normal_coords(const IntVector& x) const {
    const Normal& nf = normal();
    if (x.size() != generator_count()) throw std::invalid_argument("FgAbGroup: element has wrong length");
    IntVector y = nf.to_normal * x;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (nf.moduli[i] != 0) y[i] = mod_nonneg(y[i], nf.moduli[i]);
    return y;
  }

  /// A generator vector representing the element with normal coordinates y.
  IntVector from_normal(const IntVector& y) const {
    const Normal& nf = normal();
    if (y.size() != nf.moduli.size()) throw std::invalid_argument("FgAbGroup: normal coordinates have wrong length");
    return nf.from_normal * y;
  }

  const IntMatrix& to_normal_matrix() const { return normal().to_normal; }
  const IntMatrix& from_normal_matrix() const { return normal().from_normal; }

  /// True when x lies in the relation lattice, i.e. represents zero.
  bool is_zero(const IntVector& x) const {
    if (x.size() != generator_count()) throw std::invalid_argument("FgAbGroup: element has wrong length");
    const IntMatrix& r = relations();
    if (state_->diagonal) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        if (r(i, i) == 0 || !mpz_divisible_p(x[i].get_mpz_t(), r(i, i).get_mpz_t())) return false;
      }
      return true;
    }
    for (const auto& v : normal_coords(x))
      if (v != 0) return false;
    return true;
  }

  // --- element enumeration (finite groups only) ---------------------------------------

  /// Number of elements; throws SizeBoundError when the group is infinite or exceeds `limit`.
  std::size_t element_count(std::size_t limit = std::size_t{1} << 24) const {
    if (!is_finite()) throw SizeBoundError("cannot enumerate elements of infinite group " + describe());
    Integer o = order();
    if (o > Integer(static_cast<unsigned long>(limit)))
      throw SizeBoundError("group " + describe() + " has " + o.get_str() + " elements, above enumeration limit " +
                           std::to_string(limit));
    return o.get_ui();
  }

  /// Normal coordinates of element `index` (mixed radix, last coordinate least significant).
  IntVector element(std::size_t index) const {
    const IntVector& mod = moduli();
    IntVector y(mod.size());
    for (std::size_t i = mod.size(); i-- > 0;) {
      const unsigned long d = mod[i].get_ui();
      y[i] = static_cast<unsigned long>(index % d);
      index /= d;
    }
    return y;
  }

  /// Inverse of element(); `y` must be reduced normal coordinates.
  std::size_t index_of(const IntVector& y) const {
    const IntVector& mod = moduli();
    std::size_t index = 0;
    for (std::size_t i = 0; i < mod.size(); ++i) index = index * mod[i].get_ui() + y[i].get_ui();
    return index;
  }

  /// Reduce arbitrary normal coordinates into canonical range.
  IntVector reduce_normal(IntVector y) const {
    const IntVector& mod = moduli();
    for (std::size_t i = 0; i < y.size(); ++i)
      if (mod[i] != 0) y[i] = mod_nonneg(y[i], mod[i]);
    return y;
  }

  /// "Z/2 + Z/4 + Z^2", or "0".
  std::string describe() const {
    std::string s;
    for (const auto& d : torsion()) s += (s.empty() ? "" : " + ") + std::string("Z/") + d.get_str();
    if (free_rank() == 1) s += (s.empty() ? "" : " + ") + std::string("Z");
    if (free_rank() > 1) s += (s.empty() ? "" : " + ") + std::string("Z^") + std::to_string(free_rank());
    return s.empty() ? "0" : s;
  }

  /// Isomorphism: equality of normal forms.
  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.free_rank() == b.free_rank() && a.torsion() == b.torsion();
  }

 private:
  struct Normal {
    std::size_t free_rank = 0;
    IntVector torsion;
    IntVector moduli;
    IntMatrix to_normal;    // kept rows of U
    IntMatrix from_normal;  // kept columns of U^{-1}
  };
  struct State {
    std::size_t generators = 0;
    IntMatrix relations;
    bool diagonal = false;
    std::once_flag once;
    Normal normal;
  };

  const Normal& normal() const {
    std::call_once(state_->once, [s = state_.get()] { compute_normal(*s); });
    return state_->normal;
  }

  static void compute_normal(State& s) {
    const std::size_t m = s.generators;
    SnfDecomposition snf = smith_normal_form(s.relations, {true, true, false});
    const std::size_t diag = std::min(snf.S.rows(), snf.S.cols());
    std::vector<std::size_t> kept;
    Normal& nf = s.normal;
    for (std::size_t i = 0; i < m; ++i) {
      Integer d = i < diag ? Integer(snf.S(i, i)) : Integer(0);
      if (d == 1) continue;
      kept.push_back(i);
      nf.moduli.push_back(d);
      if (d == 0)
        ++nf.free_rank;
      else
        nf.torsion.push_back(d);
    }
    nf.to_normal = IntMatrix(kept.size(), m);
    nf.from_normal = IntMatrix(m, kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
      for (std::size_t j = 0; j < m; ++j) {
        nf.to_normal(k, j) = snf.U(kept[k], j);
        nf.from_normal(j, k) = snf.U_inv(j, kept[k]);
      }
    }
  }

  std::shared_ptr<State> state_;
};

inline FgAbGroup direct_sum(const std::vector<FgAbGroup>& groups) {
  std::size_t gens = 0;
  std::vector<IntMatrix> blocks;
  for (const auto& g : groups) {
    gens += g.generator_count();
    blocks.push_back(g.relations());
  }
  return FgAbGroup(gens, block_diagonal(blocks));
}

/// B / dB, presented on B's generators.
inline FgAbGroup quotient_by_multiple(const FgAbGroup& b, const Integer& d) {
  IntMatrix extra = IntMatrix::identity(b.generator_count());
  for (std::size_t i = 0; i < b.generator_count(); ++i) extra(i, i) = d;
  return FgAbGroup(b.generator_count(), hstack(b.relations(), extra));
}

/// Homomorphism given by its matrix on generators (target generators x source generators).
class AbHom {
 public:
  AbHom() = default;

  /// Throws ValidationError when the matrix does not send source relations to target relations.
  AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
      throw ValidationError("homomorphism matrix has shape " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + ", expected " +
                            std::to_string(target_.generator_count()) + "x" +
                            std::to_string(source_.generator_count()));
    IntMatrix images = matrix_ * source_.relations();
    for (std::size_t j = 0; j < images.cols(); ++j)
      if (!target_.is_zero(images.column(j)))
        throw ValidationError("matrix does not respect source relations", "relation column " + std::to_string(j));
  }

  static AbHom zero(const FgAbGroup& source, const FgAbGroup& target) {
    return AbHom(source, target, IntMatrix(target.generator_count(), source.generator_count()));
  }

  static AbHom identity(const FgAbGroup& g) {
    return AbHom(g, g, IntMatrix::identity(g.generator_count()));
  }

  const FgAbGroup& source() const noexcept { return source_; }
  const FgAbGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  IntVector apply(const IntVector& x) const { return matrix_ * x; }

  /// True when every generator maps to zero in the target.
  bool is_zero() const {
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
      if (!target_.is_zero(matrix_.column(j))) return false;
    return true;
  }

  /// Matrix of the induced map in normal coordinates (target normal x source normal).
  IntMatrix normal_matrix() const {
    IntMatrix m = target_.to_normal_matrix() * matrix_ * source_.from_normal_matrix();
    const IntVector& mod = target_.moduli();
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (mod[i] != 0)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_nonneg(m(i, j), mod[i]);
    return m;
  }

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

/// outer ∘ inner
inline AbHom compose(const AbHom& outer, const AbHom& inner) {
  return AbHom(inner.source(), outer.target(), outer.matrix() * inner.matrix());
}

struct HomGroup {
  FgAbGroup group;
  /// generators[i] is the homomorphism represented by presentation generator i of `group`.
  std::vector<AbHom> generators;
};

/// Hom_Z(A, B), built summand by summand from the normal forms of A and B.
inline HomGroup hom_group(const FgAbGroup& a, const FgAbGroup& b) {
  const IntVector& ma = a.moduli();
  const IntVector& mb = b.moduli();
  IntVector orders;
  std::vector<AbHom> gens;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    for (std::size_t j = 0; j < mb.size(); ++j) {
      Integer order, scale = 1;
      if (ma[i] == 0) {
        order = mb[j];
      } else if (mb[j] == 0) {
        continue;
      } else {
        order = gcd(ma[i], mb[j]);
        if (order == 1) continue;
        scale = mb[j] / order;
      }
      IntMatrix e(mb.size(), ma.size());
      e(j, i) = scale;
      gens.emplace_back(a, b, b.from_normal_matrix() * e * a.to_normal_matrix());
      orders.push_back(order);
    }
  }
  return {FgAbGroup::from_cyclic_factors(orders), std::move(gens)};
}

/// Ext^1_Z(A, B) = direct sum over the torsion factors d of A of B / dB.
inline FgAbGroup ext_group(const FgAbGroup& a, const FgAbGroup& b) {
  std::vector<FgAbGroup> parts;
  for (const auto& d : a.torsion()) parts.push_back(quotient_by_multiple(b, d));
  return direct_sum(parts);
}

}  // namespace pimoduli
