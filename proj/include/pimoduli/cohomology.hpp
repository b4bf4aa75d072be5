#pragma once

#include "pimoduli/bounds.hpp"
#include "pimoduli/cochain.hpp"
#include "pimoduli/gmodule.hpp"

#include <unordered_set>

namespace pimoduli {

/// Indexing of k-tuples (g_1, ..., g_k) of non-identity elements: digit g_i - 1 in base |G| - 1,
/// g_1 most significant.
class TupleIndex {
 public:
  TupleIndex(std::size_t group_order, std::size_t degree) : base_(group_order - 1), degree_(degree) {
    count_ = 1;
    for (std::size_t i = 0; i < degree; ++i) count_ *= base_;
  }

  std::size_t count() const noexcept { return count_; }
  std::size_t degree() const noexcept { return degree_; }

  std::vector<std::size_t> tuple(std::size_t index) const {
    std::vector<std::size_t> t(degree_);
    for (std::size_t i = degree_; i-- > 0;) {
      t[i] = index % base_ + 1;
      index /= base_;
    }
    return t;
  }

  /// Index of a tuple of non-identity elements.
  std::size_t index(const std::vector<std::size_t>& t) const {
    std::size_t idx = 0;
    for (auto g : t) idx = idx * base_ + (g - 1);
    return idx;
  }

 private:
  std::size_t base_;
  std::size_t degree_;
  std::size_t count_ = 1;
};

/// Number of normalized k-cochain copies, (|G|-1)^k, checked against the rank bound.
inline std::size_t checked_cochain_copies(std::size_t group_order, std::size_t k, std::size_t module_rank,
                                          const SizeBounds& bounds) {
  if (module_rank == 0) return 0;  // zero module: every cochain group is 0
  std::size_t copies = 1;
  for (std::size_t i = 0; i < k; ++i) {
    copies *= group_order - 1;
    if (copies * module_rank > bounds.max_cochain_rank)
      throw SizeBoundError("bar complex degree " + std::to_string(k) + " needs at least " +
                           std::to_string(copies * module_rank) +
                           " generators, above max_cochain_rank " + std::to_string(bounds.max_cochain_rank));
  }
  return copies;
}

/// Normalized bar complex C^0 -> ... -> C^kmax of a finite G-module.
///
/// C^k is a direct sum of (|G|-1)^k copies of the module, in the module's normal coordinates
/// (block for tuple t occupies generators t*r .. t*r+r-1, r = number of invariant factors).
/// The differential is
///   (dφ)(g_1..g_{k+1}) = g_1·φ(g_2..g_{k+1}) + Σ_{i=1..k} (-1)^i φ(.., g_i g_{i+1}, ..)
///                        + (-1)^{k+1} φ(g_1..g_k),
/// dropping terms whose argument contains the identity.
inline CochainComplex bar_complex(const GModule& m, std::size_t kmax, const SizeBounds& bounds = {}) {
  const FiniteGroup& g = m.group();
  if (g.order() > bounds.bar_group_order)
    throw SizeBoundError("bar complex for group of order " + std::to_string(g.order()) + " exceeds bar_group_order " +
                         std::to_string(bounds.bar_group_order));
  const IntVector& moduli = m.base().moduli();
  const std::size_t r = moduli.size();

  std::vector<FgAbGroup> groups;
  for (std::size_t k = 0; k <= kmax; ++k) {
    const std::size_t copies = checked_cochain_copies(g.order(), k, r, bounds);
    IntVector rel;
    rel.reserve(copies * r);
    for (std::size_t t = 0; t < copies; ++t) rel.insert(rel.end(), moduli.begin(), moduli.end());
    groups.emplace_back(copies * r, IntMatrix::diagonal(rel));
  }

  std::vector<AbHom> diffs;
  for (std::size_t k = 0; k < kmax; ++k) {
    if (r == 0) {
      diffs.emplace_back(groups[k], groups[k + 1], IntMatrix(0, 0));
      continue;
    }
    const TupleIndex src(g.order(), k);
    const TupleIndex dst(g.order(), k + 1);
    IntMatrix d(dst.count() * r, src.count() * r);
    auto add_block = [&](std::size_t row_tuple, std::size_t col_tuple, const IntMatrix* block, long scalar) {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          if (block) {
            if ((*block)(i, j) != 0) d(row_tuple * r + i, col_tuple * r + j) += (*block)(i, j);
          } else if (i == j) {
            d(row_tuple * r + i, col_tuple * r + j) += scalar;
          }
        }
    };
    for (std::size_t tau = 0; tau < dst.count(); ++tau) {
      const auto t = dst.tuple(tau);
      // g_1 · φ(g_2, ..., g_{k+1})
      add_block(tau, src.index({t.begin() + 1, t.end()}), &m.normal_action(t[0]), 0);
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t prod = g.mul(t[i], t[i + 1]);
        if (prod == 0) continue;
        std::vector<std::size_t> s(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
        s.push_back(prod);
        s.insert(s.end(), t.begin() + static_cast<std::ptrdiff_t>(i) + 2, t.end());
        add_block(tau, src.index(s), nullptr, (i % 2 == 0) ? -1 : 1);  // (-1)^{i+1} for 0-based i
      }
      add_block(tau, src.index({t.begin(), t.end() - 1}), nullptr, ((k + 1) % 2 == 0) ? 1 : -1);
    }
    diffs.emplace_back(groups[k], groups[k + 1], std::move(d));
  }
  return CochainComplex(std::move(groups), std::move(diffs));
}

/// A normalized k-cochain: module values in normal coordinates, tuple by tuple.
struct Cocycle {
  std::size_t degree = 0;
  IntVector values;  // length (|G|-1)^degree * r

  IntVector value_at(std::size_t tuple_index, std::size_t module_rank) const {
    return IntVector(values.begin() + static_cast<std::ptrdiff_t>(tuple_index * module_rank),
                     values.begin() + static_cast<std::ptrdiff_t>((tuple_index + 1) * module_rank));
  }
};

/// H^k(G; M) with class coordinates and one representative cocycle per normal generator.
class CohomologyGroup {
 public:
  CohomologyGroup(std::size_t degree, Subquotient classes) : degree_(degree), classes_(std::move(classes)) {}

  std::size_t degree() const noexcept { return degree_; }
  const FgAbGroup& group() const noexcept { return classes_.group(); }
  const Subquotient& classes() const noexcept { return classes_; }

  bool is_cocycle(const Cocycle& c) const { return c.degree == degree_ && classes_.is_cycle(c.values); }

  /// Normal coordinates of [c].
  IntVector class_of(const Cocycle& c) const {
    if (c.degree != degree_) throw std::invalid_argument("class_of: cocycle has wrong degree");
    return classes_.class_of(c.values);
  }

  Cocycle representative(const IntVector& normal) const { return {degree_, classes_.representative(normal)}; }

  std::vector<Cocycle> representatives() const {
    std::vector<Cocycle> reps;
    for (std::size_t i = 0; i < group().normal_rank(); ++i)
      reps.push_back({degree_, classes_.generator_representative(i)});
    return reps;
  }

 private:
  std::size_t degree_;
  Subquotient classes_;
};

inline CohomologyGroup cohomology(const GModule& m, std::size_t k, const SizeBounds& bounds = {}) {
  const CochainComplex c = bar_complex(m, k + 1, bounds);
  return CohomologyGroup(k, homology_at(c, k));
}

/// Z^1(G; M): crossed homomorphisms d(gh) = g·d(h) + d(g), not reduced by principal ones.
/// Representatives are degree-1 cocycles (values on non-identity elements).
inline CohomologyGroup derivations(const GModule& m, const SizeBounds& bounds = {}) {
  const CochainComplex c = bar_complex(m, 2, bounds);
  return CohomologyGroup(1, cocycles_at(c, 1));
}

// --- brute-force oracle -------------------------------------------------------------------

namespace detail {

/// Invariant factors of a finite abelian group known only through a counting function:
/// killed(p, j) = log_p of #{x : p^j x = 0}. `order` is the group order.
template <class Killed>
IntVector invariant_factors_by_counting(std::uint64_t order, Killed killed) {
  std::vector<std::vector<unsigned>> exponents;  // per prime, descending
  std::vector<std::uint64_t> primes;
  std::uint64_t rest = order;
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (rest % p) continue;
    unsigned total = 0;
    while (rest % p == 0) {
      rest /= p;
      ++total;
    }
    // s_j = Σ_i min(j, e_i); s_j - s_{j-1} = #{i : e_i >= j}
    std::vector<unsigned> at_least;
    unsigned prev = 0;
    for (unsigned j = 1; prev < total; ++j) {
      const unsigned s = killed(p, j);
      at_least.push_back(s - prev);
      prev = s;
    }
    std::vector<unsigned> e;
    for (std::size_t j = 0; j < at_least.size(); ++j) {
      const unsigned next = j + 1 < at_least.size() ? at_least[j + 1] : 0;
      for (unsigned c = 0; c < at_least[j] - next; ++c) e.push_back(static_cast<unsigned>(j + 1));
    }
    std::sort(e.rbegin(), e.rend());
    primes.push_back(p);
    exponents.push_back(e);
  }
  std::size_t count = 0;
  for (const auto& e : exponents) count = std::max(count, e.size());
  IntVector factors(count, Integer(1));
  for (std::size_t q = 0; q < primes.size(); ++q)
    for (std::size_t i = 0; i < exponents[q].size(); ++i) {
      Integer pe;
      mpz_ui_pow_ui(pe.get_mpz_t(), primes[q], exponents[q][i]);
      factors[count - 1 - i] *= pe;
    }
  return factors;
}

}  // namespace detail

struct OracleOptions {
  /// Enumerate functions on all of G^k instead of the normalized ones.
  bool unnormalized = false;
};

/// H^k(G; M) by exhaustive enumeration of cochains: cocycles are found by evaluating the
/// coboundary formula on every (k+1)-tuple of G, coboundaries by applying it to every
/// (k-1)-cochain, and the group structure by counting elements killed by prime powers.
/// Uses only the module's element tables; no linear algebra on cochains.
inline FgAbGroup oracle_cohomology(const GModule& m, std::size_t k, const SizeBounds& bounds = {},
                                   OracleOptions opts = {}) {
  const FiniteGroup& g = m.group();
  const FiniteGroup add = additive_group(m.base(), bounds.element_limit);
  const std::size_t n = g.order();
  const std::uint64_t msize = add.order();

  // Argument tuples for cochains of a given degree.
  auto tuples = [&](std::size_t degree) {
    std::vector<std::vector<std::size_t>> out{{}};
    for (std::size_t i = 0; i < degree; ++i) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& t : out)
        for (std::size_t x = opts.unnormalized ? 0 : 1; x < n; ++x) {
          auto u = t;
          u.push_back(x);
          next.push_back(std::move(u));
        }
      out = std::move(next);
    }
    return out;
  };
  auto count_functions = [&](std::size_t arity) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (total > bounds.oracle_enumeration / msize)
        throw SizeBoundError("oracle would enumerate more than " + std::to_string(bounds.oracle_enumeration) +
                             " cochains in degree " + std::to_string(k));
      total *= msize;
    }
    return total;
  };

  const auto args_k = tuples(k);
  std::map<std::vector<std::size_t>, std::size_t> pos_k;
  for (std::size_t i = 0; i < args_k.size(); ++i) pos_k[args_k[i]] = i;
  const std::uint64_t num_k = count_functions(args_k.size());

  auto decode = [&](std::uint64_t code, std::size_t len) {
    std::vector<std::size_t> v(len);
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = code % msize;
      code /= msize;
    }
    return v;
  };
  auto encode = [&](const std::vector<std::size_t>& v) {
    std::uint64_t code = 0;
    for (std::size_t i = v.size(); i-- > 0;) code = code * msize + v[i];
    return code;
  };
  // f evaluated at an arbitrary tuple of G, zero off the enumerated arguments.
  auto eval = [](const std::vector<std::size_t>& f, const std::map<std::vector<std::size_t>, std::size_t>& pos,
                 const std::vector<std::size_t>& t) -> std::size_t {
    auto it = pos.find(t);
    return it == pos.end() ? 0 : f[it->second];
  };
  // (df)(t) for t of length deg+1.
  auto coboundary_at = [&](const std::vector<std::size_t>& f, const std::map<std::vector<std::size_t>, std::size_t>& pos,
                           const std::vector<std::size_t>& t) {
    const std::size_t deg = t.size() - 1;
    std::size_t acc = m.element_action(t[0])[eval(f, pos, {t.begin() + 1, t.end()})];
    for (std::size_t i = 0; i < deg; ++i) {
      std::vector<std::size_t> s(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
      s.push_back(g.mul(t[i], t[i + 1]));
      s.insert(s.end(), t.begin() + static_cast<std::ptrdiff_t>(i) + 2, t.end());
      std::size_t v = eval(f, pos, s);
      if (i % 2 == 0) v = add.inverse(v);
      acc = add.mul(acc, v);
    }
    std::size_t last = eval(f, pos, {t.begin(), t.end() - 1});
    if (deg % 2 == 0) last = add.inverse(last);
    return add.mul(acc, last);
  };

  // All (k+1)-tuples of G, identity included.
  std::vector<std::vector<std::size_t>> all_next{{}};
  for (std::size_t i = 0; i <= k; ++i) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& t : all_next)
      for (std::size_t x = 0; x < n; ++x) {
        auto u = t;
        u.push_back(x);
        next.push_back(std::move(u));
      }
    all_next = std::move(next);
  }

  std::vector<std::uint64_t> cocycles;
  for (std::uint64_t code = 0; code < num_k; ++code) {
    const auto f = decode(code, args_k.size());
    bool ok = true;
    for (const auto& t : all_next)
      if (coboundary_at(f, pos_k, t) != 0) {
        ok = false;
        break;
      }
    if (ok) cocycles.push_back(code);
  }

  std::unordered_set<std::uint64_t> boundaries{0};
  if (k >= 1) {
    const auto args_prev = tuples(k - 1);
    std::map<std::vector<std::size_t>, std::size_t> pos_prev;
    for (std::size_t i = 0; i < args_prev.size(); ++i) pos_prev[args_prev[i]] = i;
    const std::uint64_t num_prev = count_functions(args_prev.size());
    for (std::uint64_t code = 0; code < num_prev; ++code) {
      const auto f = decode(code, args_prev.size());
      std::vector<std::size_t> image(args_k.size());
      for (std::size_t i = 0; i < args_k.size(); ++i) image[i] = coboundary_at(f, pos_prev, args_k[i]);
      boundaries.insert(encode(image));
    }
  }

  if (cocycles.size() % boundaries.size() != 0)
    throw InternalError("oracle: coboundaries do not form a subgroup of cocycles");
  const std::uint64_t order = cocycles.size() / boundaries.size();

  auto killed = [&](std::uint64_t p, unsigned j) {
    std::uint64_t hits = 0;
    for (auto code : cocycles) {
      auto f = decode(code, args_k.size());
      for (auto& v : f)
        for (unsigned e = 0; e < j; ++e) {
          std::size_t s = 0;
          for (std::uint64_t c = 0; c < p; ++c) s = add.mul(s, v);
          v = s;
        }
      if (boundaries.count(encode(f))) ++hits;
    }
    std::uint64_t classes = hits / boundaries.size();
    unsigned log = 0;
    while (classes > 1) {
      classes /= p;
      ++log;
    }
    return log;
  };
  return FgAbGroup::from_cyclic_factors(detail::invariant_factors_by_counting(order, killed));
}

}  // namespace pimoduli
