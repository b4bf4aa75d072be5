#pragma once

#include "pimoduli/pi_algebra.hpp"

namespace pimoduli {

struct Orbit {
  std::size_t representative = 0;  // smallest element index of the orbit in H^{n+1}
  IntVector representative_coords;
  std::size_t size = 0;
  std::vector<std::size_t> stabilizer;  // indices into PiAut
};

/// Aut(A)-orbits on the k-invariant set, ordered by representative; the split class 0 comes first.
struct OrbitDecomposition {
  std::vector<Orbit> orbits;
  std::size_t set_size = 0;
  std::size_t group_order = 0;
};

/// Orbits of a finite group acting through `perms` (one permutation per group element).
/// Throws InternalError if the orbit-stabilizer identity fails.
inline OrbitDecomposition orbit_decomposition(const std::vector<Permutation>& perms, const FgAbGroup& set_group) {
  OrbitDecomposition out;
  out.group_order = perms.size();
  out.set_size = perms.empty() ? 0 : perms.front().size();
  std::vector<char> seen(out.set_size, 0);
  for (std::size_t x = 0; x < out.set_size; ++x) {
    if (seen[x]) continue;
    Orbit o;
    o.representative = x;
    o.representative_coords = set_group.element(x);
    std::vector<std::size_t> members;
    for (std::size_t a = 0; a < perms.size(); ++a) {
      const std::size_t y = perms[a][x];
      if (!seen[y]) {
        seen[y] = 1;
        members.push_back(y);
      }
      if (y == x) o.stabilizer.push_back(a);
    }
    o.size = members.size();
    if (o.size * o.stabilizer.size() != out.group_order)
      throw InternalError("orbit-stabilizer identity fails at element " + std::to_string(x));
    out.orbits.push_back(std::move(o));
  }
  return out;
}

/// Number of orbits by Burnside's lemma: average number of fixed points.
inline Integer burnside_orbit_count(const std::vector<Permutation>& perms) {
  std::size_t fixed = 0;
  for (const auto& p : perms)
    for (std::size_t x = 0; x < p.size(); ++x)
      if (p[x] == x) ++fixed;
  if (perms.empty() || fixed % perms.size() != 0) throw InternalError("Burnside count is not an integer");
  return static_cast<unsigned long>(fixed / perms.size());
}

struct HomotopyGroup {
  std::size_t degree = 0;
  FgAbGroup group;
  std::string formula;
};

/// kernel ↪ π_1 ↠ quotient; the extension class itself is not determined.
struct Pi1Extension {
  FgAbGroup kernel;
  std::string kernel_formula;
  std::optional<Integer> quotient_order;
  std::string quotient_description;
  std::optional<Integer> order;
  std::string extension_class = "unknown";
};

struct Basepoint {
  IntVector kappa;  // normal coordinates in H^{n+1}(A_1; A_n); empty in case B
  std::optional<std::size_t> orbit_size;
  std::vector<std::size_t> stabilizer;
  Pi1Extension pi1;
};

struct ModuliReport {
  char case_tag = 'A';
  std::size_t n = 0;
  Integer pi0;
  /// Nonzero-range π_i for i >= 2; π_i = 0 for i > vanishes_above.
  std::vector<HomotopyGroup> higher;
  std::size_t vanishes_above = 0;
  std::vector<Basepoint> basepoints;

  std::optional<std::size_t> aut_order;
  std::string aut_description;

  // Dimensions 1 and n
  std::optional<FgAbGroup> kinvariants;
  std::optional<OrbitDecomposition> orbits;
  std::optional<Integer> burnside_count;
  std::optional<FgAbGroup> h1_context;
  std::vector<Permutation> kinvariant_action;  // one per Aut(A) element

  // Dimensions n and n+1
  std::optional<FgAbGroup> pointed_pi1;
  std::optional<FgAbGroup> pointed_pi2;
  bool all_automorphisms_realizable = false;
  bool unique_homotopy_type = false;

  std::vector<std::string> realization_tree;
  std::vector<std::pair<std::string, std::string>> provenance;

  const FgAbGroup* pi(std::size_t i) const {
    for (const auto& h : higher)
      if (h.degree == i) return &h.group;
    return nullptr;
  }
};

namespace detail {

inline std::vector<std::string> realization_tree_case_a(std::size_t n, std::size_t branches) {
  auto label = [](std::size_t s) {
    std::string l = "stage " + std::to_string(s);
    return l + std::string(l.size() < 10 ? 10 - l.size() : 0, ' ') + "| ";
  };
  auto row = [&](std::size_t count) {
    std::string r;
    for (std::size_t i = 0; i < count; ++i) r += i ? " *" : "*";
    return r;
  };
  std::vector<std::string> lines;
  lines.push_back(std::string(10, ' ') + "| " + row(branches) + "   (continues unchanged upward)");
  for (std::size_t s = n; s >= n - 1; --s) lines.push_back(label(s) + row(branches));
  lines.push_back(label(n - 2) + "*   branches into " + std::to_string(branches) +
                  " = |H^{n+1}(A_1; A_n) / Aut(A)|");
  for (std::size_t s = n - 2; s-- > 0;) lines.push_back(label(s) + "*");
  return lines;
}

}  // namespace detail

/// Moduli of realizations of a Π-algebra concentrated in dimensions 1 and n.
inline ModuliReport moduli_case_a(const TwoStageDim1N& a, const SizeBounds& bounds = {}) {
  validate(a);
  const std::size_t n = a.n;
  const CochainComplex bar = bar_complex(a.an, n + 2, bounds);
  auto h = [&](std::size_t k) { return CohomologyGroup(k, homology_at(bar, k)); };

  const CohomologyGroup kinv = h(n + 1);
  const CohomologyGroup hn = h(n);
  const CohomologyGroup der(1, cocycles_at(bar, 1));
  const PiAut aut = pi_aut(a, bounds);

  ModuliReport r;
  r.case_tag = 'A';
  r.n = n;
  r.kinvariants = kinv.group();
  r.h1_context = h(1).group();
  r.aut_order = aut.order();
  r.aut_description = "{(phi, psi) in Aut(A_1) x Aut(A_n) : psi(g.m) = phi(g).psi(m)}";

  for (const auto& pair : aut.elements()) r.kinvariant_action.push_back(act_on_kinvariants(a, pair, kinv, bounds));
  r.orbits = orbit_decomposition(r.kinvariant_action, kinv.group());
  r.burnside_count = burnside_orbit_count(r.kinvariant_action);
  r.pi0 = static_cast<unsigned long>(r.orbits->orbits.size());
  if (*r.burnside_count != r.pi0) throw InternalError("orbit count disagrees with Burnside's lemma");

  r.higher.push_back({n, der.group(), "Der(A_1, A_n) = Z^1(A_1; A_n)"});
  for (std::size_t i = n - 1; i >= 2; --i) {
    const std::size_t k = n + 1 - i;
    r.higher.push_back({i, h(k).group(), "H^" + std::to_string(k) + "(A_1; A_n)"});
  }
  std::sort(r.higher.begin(), r.higher.end(), [](const auto& x, const auto& y) { return x.degree < y.degree; });
  r.vanishes_above = n;

  const Integer hn_order = hn.group().order();
  for (const auto& o : r.orbits->orbits) {
    Basepoint b;
    b.kappa = o.representative_coords;
    b.orbit_size = o.size;
    b.stabilizer = o.stabilizer;
    b.pi1.kernel = hn.group();
    b.pi1.kernel_formula = "H^" + std::to_string(n) + "(A_1; A_n)";
    b.pi1.quotient_order = static_cast<unsigned long>(o.stabilizer.size());
    b.pi1.quotient_description = "Stab(kappa) in Aut(A): realizable automorphisms";
    b.pi1.order = hn_order * static_cast<unsigned long>(o.stabilizer.size());
    r.basepoints.push_back(std::move(b));
  }

  r.realization_tree = detail::realization_tree_case_a(n, r.orbits->orbits.size());
  r.provenance = {
      {"pi0", "H^{n+1}(A_1; A_n) / Aut(A), pointed at the split class 0"},
      {"pi_i, 2 <= i < n", "HQ^{n-i}_Gp(A_1; A_n) = H^{n+1-i}(A_1; A_n)"},
      {"pi_n", "Der(A_1, A_n) = Z^1(A_1; A_n), cocycles not reduced by principal derivations"},
      {"pi_i, i > n", "0"},
      {"pi_1", "H^n(A_1; A_n) -> pi_1 TM -> Stab(kappa), extension class not determined"},
      {"h1_context", "H^1(A_1; A_n), for comparison with pi_n only"},
  };
  return r;
}

/// Moduli of realizations of a Π-algebra concentrated in dimensions n and n+1.
inline ModuliReport moduli_case_b(const TwoStageDimNN1& a, const SizeBounds& bounds = {}) {
  validate(a, bounds);
  const FgAbGroup hom = hom_group(a.an, a.an1).group;
  const FgAbGroup ext = ext_group(a.an, a.an1);
  const auto aut = pi_aut(a, bounds);

  ModuliReport r;
  r.case_tag = 'B';
  r.n = a.n;
  r.pi0 = 1;
  r.higher.push_back({2, hom, "Hom_Z(A_n, A_{n+1})"});
  r.vanishes_above = 2;
  r.pointed_pi1 = ext;
  r.pointed_pi2 = hom;
  r.all_automorphisms_realizable = true;
  r.unique_homotopy_type = true;

  Basepoint b;
  b.pi1.kernel = ext;
  b.pi1.kernel_formula = "Ext_Z(A_n, A_{n+1})";
  if (const auto* finite = std::get_if<PiAut>(&aut)) {
    r.aut_order = finite->order();
    r.aut_description = "{(a, b) in Aut(A_n) x Aut(A_{n+1}) : b∘q = q∘a}";
    b.pi1.quotient_order = static_cast<unsigned long>(finite->order());
    b.pi1.order = ext.order() * static_cast<unsigned long>(finite->order());
    for (std::size_t i = 0; i < finite->order(); ++i) b.stabilizer.push_back(i);
  } else {
    r.aut_description = std::get<SymbolicAut>(aut).description;
  }
  b.pi1.quotient_description = "Aut(A), all automorphisms realizable";
  r.basepoints.push_back(std::move(b));

  for (std::size_t s = a.n + 1; s-- > 0;) r.realization_tree.push_back("stage " + std::to_string(s) + " | *");
  r.provenance = {
      {"pi0", "1: TM' is connected"},
      {"pi_2", "Hom_Z(A_n, A_{n+1}) = HQ^0_Ab(A_n; A_{n+1})"},
      {"pi_1 TM'", "Ext_Z(A_n, A_{n+1}) = HQ^1_Ab(A_n; A_{n+1})"},
      {"pi_i, i >= 3", "0"},
      {"pi_1", "Ext_Z(A_n, A_{n+1}) -> pi_1 TM -> Aut(A), extension class not determined"},
      {"homotopy type", "unique: q determines the k-invariant"},
  };
  return r;
}

}  // namespace pimoduli
