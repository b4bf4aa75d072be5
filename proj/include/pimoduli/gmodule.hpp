#pragma once

#include "pimoduli/finite_group.hpp"

namespace pimoduli {

/// A finite abelian group with a left action of a finite group by automorphisms.
///
/// The action is supplied as one matrix per group element on the base's generators.
/// Internally everything is also kept in normal coordinates of the base, where the
/// relations are diagonal; cochains and cocycles downstream use those coordinates.
class GModule {
 public:
  GModule() = default;

  /// Validates every invariant exhaustively; violations throw ValidationError with a witness.
  GModule(FiniteGroup group, FgAbGroup base, std::vector<IntMatrix> action,
          std::size_t element_limit = std::size_t{1} << 16)
      : group_(std::move(group)), base_(std::move(base)) {
    if (!base_.is_finite()) throw ValidationError("module must be a finite abelian group", base_.describe());
    const std::size_t n = group_.order();
    if (action.size() != n)
      throw ValidationError("action must give one matrix per group element",
                            std::to_string(action.size()) + " given, group order " + std::to_string(n));
    for (std::size_t g = 0; g < n; ++g) {
      try {
        action_.emplace_back(base_, base_, action[g]);
      } catch (const ValidationError& e) {
        throw ValidationError("action of element " + std::to_string(g) + " is not a homomorphism of the base: " +
                                  e.what(),
                              "g = " + std::to_string(g));
      }
      normal_action_.push_back(action_.back().normal_matrix());
    }
    const IntMatrix id = IntMatrix::identity(base_.normal_rank());
    if (!(normal_action_[0] == id)) throw ValidationError("identity element does not act trivially", "g = 0");
    for (std::size_t g = 0; g < n; ++g)
      if (!(reduce(normal_action_[g] * normal_action_[group_.inverse(g)]) == id))
        throw ValidationError("action is not invertible", "g = " + std::to_string(g));
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h)
        if (!(reduce(normal_action_[g] * normal_action_[h]) == normal_action_[group_.mul(g, h)]))
          throw ValidationError("action(g)∘action(h) differs from action(gh)",
                                "(g, h) = (" + std::to_string(g) + ", " + std::to_string(h) + ")");

    const std::size_t m = base_.element_count(element_limit);
    element_action_.assign(n, Permutation(m));
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t x = 0; x < m; ++x)
        element_action_[g][x] = base_.index_of(base_.reduce_normal(normal_action_[g] * base_.element(x)));
  }

  static GModule trivial(const FiniteGroup& group, const FgAbGroup& base) {
    return GModule(group, base, std::vector<IntMatrix>(group.order(), IntMatrix::identity(base.generator_count())));
  }

  /// Expand per-generator action matrices (one per entry of `generators`) along words.
  /// The expanded table is validated like any other, so inconsistent generator data
  /// is reported with a (g, h) witness.
  static GModule from_generator_action(const FiniteGroup& group, const FgAbGroup& base,
                                       const std::vector<std::size_t>& generators,
                                       const std::vector<IntMatrix>& generator_action) {
    if (generators.size() != generator_action.size())
      throw ValidationError("need one action matrix per group generator");
    const WordTree tree = word_tree(group, generators);
    std::vector<IntMatrix> action(group.order());
    action[0] = IntMatrix::identity(base.generator_count());
    for (std::size_t k = 1; k < tree.order.size(); ++k) {
      const std::size_t e = tree.order[k];
      action[e] = action[tree.parent[e]] * generator_action.at(tree.via[e]);
    }
    GModule out(group, base, std::move(action));
    // generators that are not tree edges (the identity, repeats) must agree with the expansion
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const AbHom given(out.base_, out.base_, generator_action[i]);
      if (!(given.normal_matrix() == out.normal_action_[generators[i]]))
        throw ValidationError("action matrix of generator " + std::to_string(i) + " is inconsistent with the others",
                              "generator " + std::to_string(i) + " = element " + std::to_string(generators[i]));
    }
    return out;
  }

  const FiniteGroup& group() const noexcept { return group_; }
  const FgAbGroup& base() const noexcept { return base_; }
  const AbHom& action(std::size_t g) const { return action_.at(g); }

  /// Action of g on normal coordinates of the base, entries reduced.
  const IntMatrix& normal_action(std::size_t g) const { return normal_action_.at(g); }
  /// Action of g on element indices of the base.
  const Permutation& element_action(std::size_t g) const { return element_action_.at(g); }

  bool is_trivial_action() const {
    const IntMatrix id = IntMatrix::identity(base_.normal_rank());
    return std::all_of(normal_action_.begin(), normal_action_.end(), [&](const IntMatrix& a) { return a == id; });
  }

  /// Reduce the rows of a normal-coordinate matrix modulo the base's moduli.
  IntMatrix reduce(IntMatrix m) const {
    const IntVector& mod = base_.moduli();
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_nonneg(m(i, j), mod[i]);
    return m;
  }

 private:
  FiniteGroup group_;
  FgAbGroup base_;
  std::vector<AbHom> action_;
  std::vector<IntMatrix> normal_action_;
  std::vector<Permutation> element_action_;
};

}  // namespace pimoduli
