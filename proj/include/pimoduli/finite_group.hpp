#pragma once

#include "pimoduli/ab_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>

namespace pimoduli {

/// A permutation of {0, ..., n-1} as its image list.
using Permutation = std::vector<std::size_t>;

/// (p ∘ q)(x) = p(q(x))
inline Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(q.size());
  for (std::size_t x = 0; x < q.size(); ++x) r[x] = p.at(q[x]);
  return r;
}

inline Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[p[x]] = x;
  return r;
}

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

inline bool is_permutation_of_range(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (auto x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

/// Finite group as a Cayley table over element indices; index 0 is the identity.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<std::size_t>>;

  static constexpr std::size_t default_order_bound = 512;

  FiniteGroup() : FiniteGroup(Table{{0}}, {}) {}

  /// Validates identity at index 0, closure, unique inverses and associativity.
  static FiniteGroup from_table(const Table& table, std::size_t order_bound = default_order_bound) {
    const std::size_t n = table.size();
    if (n == 0) throw ValidationError("group table is empty");
    if (n > order_bound)
      throw SizeBoundError("group of order " + std::to_string(n) + " exceeds bound " + std::to_string(order_bound));
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) throw ValidationError("group table is not square", "row " + std::to_string(a));
      for (std::size_t b = 0; b < n; ++b)
        if (table[a][b] >= n)
          throw ValidationError("group table entry out of range", "(" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    for (std::size_t a = 0; a < n; ++a)
      if (table[0][a] != a || table[a][0] != a)
        throw ValidationError("element 0 is not the identity", "element " + std::to_string(a));
    for (std::size_t a = 0; a < n; ++a) {
      if (!is_permutation_of_range(table[a]))
        throw ValidationError("left multiplication is not bijective", "element " + std::to_string(a));
      std::vector<char> seen(n, 0);
      for (std::size_t b = 0; b < n; ++b) seen[table[b][a]] = 1;
      if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw ValidationError("right multiplication is not bijective", "element " + std::to_string(a));
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            throw ValidationError("multiplication is not associative",
                                  "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")");
    return FiniteGroup(table, {});
  }

  /// Closure of permutation generators. Elements are numbered breadth-first over words,
  /// extending each element by the generators in input order; (g·h)(x) = g(h(x)).
  static FiniteGroup from_permutations(const std::vector<Permutation>& perms,
                                       std::size_t order_bound = default_order_bound) {
    if (perms.empty()) return FiniteGroup();
    const std::size_t degree = perms.front().size();
    for (std::size_t i = 0; i < perms.size(); ++i)
      if (perms[i].size() != degree || !is_permutation_of_range(perms[i]))
        throw ValidationError("generator is not a permutation of a common set", "generator " + std::to_string(i));

    std::vector<Permutation> elements{identity_permutation(degree)};
    std::map<Permutation, std::size_t> index{{elements[0], 0}};
    for (std::size_t cursor = 0; cursor < elements.size(); ++cursor) {
      for (const auto& s : perms) {
        Permutation next = compose(elements[cursor], s);
        if (index.emplace(next, elements.size()).second) {
          elements.push_back(std::move(next));
          if (elements.size() > order_bound)
            throw SizeBoundError("generated group exceeds order bound " + std::to_string(order_bound));
        }
      }
    }
    const std::size_t n = elements.size();
    Table table(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(compose(elements[a], elements[b]));
    std::vector<std::size_t> gens;
    for (const auto& s : perms) gens.push_back(index.at(s));
    return FiniteGroup(std::move(table), std::move(gens));
  }

  /// Z/f_1 x ... x Z/f_k with mixed-radix element indices (last factor least significant).
  static FiniteGroup abelian(const std::vector<std::size_t>& factors, std::size_t order_bound = default_order_bound) {
    std::size_t n = 1;
    for (auto f : factors) {
      if (f == 0) throw ValidationError("cyclic factor of a finite group must be positive");
      n *= f;
      if (n > order_bound)
        throw SizeBoundError("group order exceeds bound " + std::to_string(order_bound));
    }
    auto digits = [&](std::size_t x) {
      std::vector<std::size_t> d(factors.size());
      for (std::size_t i = factors.size(); i-- > 0;) {
        d[i] = x % factors[i];
        x /= factors[i];
      }
      return d;
    };
    Table table(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      auto da = digits(a);
      for (std::size_t b = 0; b < n; ++b) {
        auto db = digits(b);
        std::size_t c = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) c = c * factors[i] + (da[i] + db[i]) % factors[i];
        table[a][b] = c;
      }
    }
    std::vector<std::size_t> gens;
    std::size_t stride = 1;
    for (std::size_t i = factors.size(); i-- > 0;) {
      gens.push_back(factors[i] > 1 ? stride : 0);  // one generator per factor
      stride *= factors[i];
    }
    std::reverse(gens.begin(), gens.end());
    return FiniteGroup(std::move(table), std::move(gens));
  }

  static FiniteGroup cyclic(std::size_t n) { return abelian({n}); }

  std::size_t order() const noexcept { return table_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverses_[a]; }
  const Table& table() const noexcept { return table_; }

  /// Element indices of the generators this group was built from (empty for literal tables).
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }

  std::size_t element_order(std::size_t a) const {
    std::size_t k = 1;
    for (std::size_t x = a; x != 0; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Subgroup generated by `gens`, as a sorted element list.
  std::vector<std::size_t> closure(const std::vector<std::size_t>& gens) const {
    std::vector<char> in(order(), 0);
    std::vector<std::size_t> out{0};
    in[0] = 1;
    for (std::size_t cursor = 0; cursor < out.size(); ++cursor)
      for (auto s : gens) {
        std::size_t next = mul(out[cursor], s);
        if (!in[next]) {
          in[next] = 1;
          out.push_back(next);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The group with element i renamed to relabel[i]; relabel must fix 0.
  FiniteGroup relabeled(const Permutation& relabel) const {
    if (relabel.size() != order() || !is_permutation_of_range(relabel) || relabel[0] != 0)
      throw std::invalid_argument("relabeled: need a permutation fixing the identity");
    Table t(order(), std::vector<std::size_t>(order()));
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < order(); ++b) t[relabel[a]][relabel[b]] = relabel[mul(a, b)];
    std::vector<std::size_t> gens;
    for (auto g : generators_) gens.push_back(relabel[g]);
    return FiniteGroup(std::move(t), std::move(gens));
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  FiniteGroup(Table table, std::vector<std::size_t> gens) : table_(std::move(table)), generators_(std::move(gens)) {
    inverses_.resize(table_.size());
    for (std::size_t a = 0; a < table_.size(); ++a)
      for (std::size_t b = 0; b < table_.size(); ++b)
        if (table_[a][b] == 0) inverses_[a] = b;
  }

  Table table_;
  std::vector<std::size_t> generators_;
  std::vector<std::size_t> inverses_;
};

/// Breadth-first spanning tree over words in `gens`: element e = parent[e] · gens[via[e]].
struct WordTree {
  std::vector<std::size_t> order;   // elements in discovery order, starting with 0
  std::vector<std::size_t> parent;  // meaningless for 0
  std::vector<std::size_t> via;
};

inline WordTree word_tree(const FiniteGroup& g, const std::vector<std::size_t>& gens) {
  WordTree t;
  t.parent.assign(g.order(), 0);
  t.via.assign(g.order(), 0);
  std::vector<char> seen(g.order(), 0);
  seen[0] = 1;
  t.order.push_back(0);
  for (std::size_t cursor = 0; cursor < t.order.size(); ++cursor) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      std::size_t next = g.mul(t.order[cursor], gens[s]);
      if (seen[next]) continue;
      seen[next] = 1;
      t.parent[next] = t.order[cursor];
      t.via[next] = s;
      t.order.push_back(next);
    }
  }
  if (t.order.size() != g.order()) throw ValidationError("the given elements do not generate the group");
  return t;
}

/// Generating set chosen greedily: scan elements by index, keep any not yet generated.
inline std::vector<std::size_t> greedy_generators(const FiniteGroup& g) {
  std::vector<std::size_t> gens;
  std::vector<std::size_t> sub{0};
  for (std::size_t e = 1; e < g.order(); ++e) {
    if (std::binary_search(sub.begin(), sub.end(), e)) continue;
    gens.push_back(e);
    sub = g.closure(gens);
    if (sub.size() == g.order()) break;
  }
  return gens;
}

/// All automorphisms as permutations of element indices, sorted lexicographically
/// (so the identity comes first). Brute force over images of a greedy generating set.
inline std::vector<Permutation> automorphism_group(const FiniteGroup& g, std::size_t order_bound = 64) {
  const std::size_t n = g.order();
  if (n > order_bound)
    throw SizeBoundError("automorphism search on group of order " + std::to_string(n) + " exceeds bound " +
                         std::to_string(order_bound));
  const auto gens = greedy_generators(g);
  const WordTree tree = word_tree(g, gens);

  std::vector<std::vector<std::size_t>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::size_t ord = g.element_order(gens[i]);
    for (std::size_t e = 1; e < n; ++e)
      if (g.element_order(e) == ord) candidates[i].push_back(e);
  }

  std::vector<Permutation> result;
  std::vector<std::size_t> choice(gens.size(), 0);
  Permutation f(n);
  std::vector<char> hit(n);
  auto try_assignment = [&] {
    f[0] = 0;
    for (std::size_t k = 1; k < tree.order.size(); ++k) {
      const std::size_t e = tree.order[k];
      f[e] = g.mul(f[tree.parent[e]], candidates[tree.via[e]][choice[tree.via[e]]]);
    }
    std::fill(hit.begin(), hit.end(), 0);
    for (auto v : f) {
      if (hit[v]) return;
      hit[v] = 1;
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (f[g.mul(a, b)] != g.mul(f[a], f[b])) return;
    result.push_back(f);
  };

  if (gens.empty()) return {identity_permutation(n)};
  for (;;) {
    try_assignment();
    std::size_t i = gens.size();
    while (i-- > 0) {
      if (++choice[i] < candidates[i].size()) break;
      choice[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  std::sort(result.begin(), result.end());
  return result;
}

/// Z^{|G|} modulo e_a + e_b - e_{ab}: the abelianization G / [G, G].
inline FgAbGroup abelianization(const FiniteGroup& g) {
  const std::size_t n = g.order();
  IntMatrix rel(n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t col = a * n + b;
      rel(a, col) += 1;
      rel(b, col) += 1;
      rel(g.mul(a, b), col) -= 1;
    }
  return FgAbGroup(n, rel);
}

/// The additive group of a finite abelian group, indexed as FgAbGroup::element().
inline FiniteGroup additive_group(const FgAbGroup& a, std::size_t order_bound = FiniteGroup::default_order_bound) {
  a.element_count(order_bound);
  std::vector<std::size_t> factors;
  for (const auto& d : a.moduli()) factors.push_back(d.get_ui());
  return FiniteGroup::abelian(factors, order_bound);
}

}  // namespace pimoduli
