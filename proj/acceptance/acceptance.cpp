// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "pimoduli/moduli.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

using namespace pimoduli;

namespace {

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

FgAbGroup cyc(long d) { return FgAbGroup::cyclic(d); }

FiniteGroup s3() { return FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}); }

// Module kinds: 0 is the zero group, 22 is Z/2 + Z/2, otherwise Z/kind.
FgAbGroup module_group(long kind) {
  if (kind == 0) return FgAbGroup::free(0);
  if (kind == 22) return FgAbGroup::from_cyclic_factors({2, 2});
  return cyc(kind);
}

std::vector<IntMatrix> module_automorphisms(long kind) {
  if (kind == 0) return {IntMatrix(0, 0)};
  if (kind == 22)
    return {IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{1, 1}, {0, 1}},
            IntMatrix{{1, 0}, {1, 1}}, IntMatrix{{0, 1}, {1, 1}}, IntMatrix{{1, 1}, {1, 0}}};
  std::vector<IntMatrix> out;
  for (long u = 1; u < kind; ++u)
    if (std::gcd(u, kind) == 1) out.push_back(IntMatrix{{u}});
  return out;
}

std::vector<GModule> all_modules(const FiniteGroup& g, long kind) {
  const auto autos = module_automorphisms(kind);
  const auto& gens = g.generators();
  std::vector<GModule> out;
  std::vector<std::size_t> choice(gens.size(), 0);
  for (;;) {
    std::vector<IntMatrix> images;
    for (auto c : choice) images.push_back(autos[c]);
    try {
      out.push_back(GModule::from_generator_action(g, module_group(kind), gens, images));
    } catch (const ValidationError&) {
    }
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == autos.size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return out;
}

GModule random_module(std::mt19937& rng, bool allow_s3 = true) {
  static const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(1), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3),
                                               FiniteGroup::cyclic(4), FiniteGroup::abelian({2, 2}), s3()};
  static const std::vector<long> kinds{0, 2, 3, 4, 5, 22};
  for (;;) {
    const FiniteGroup& g = groups[rng() % (allow_s3 ? groups.size() : groups.size() - 1)];
    const long kind = kinds[rng() % kinds.size()];
    const auto autos = module_automorphisms(kind);
    std::vector<IntMatrix> images;
    for (std::size_t i = 0; i < g.generators().size(); ++i) images.push_back(autos[rng() % autos.size()]);
    try {
      return GModule::from_generator_action(g, module_group(kind), g.generators(), images);
    } catch (const ValidationError&) {
    }
  }
}

std::string describe(const FgAbGroup& g) { return g.describe(); }

void expect_group(const FgAbGroup& got, const FgAbGroup& want, const std::string& what) {
  require(got == want, what + ": got " + describe(got) + ", expected " + describe(want));
}

// H^k by the bar complex, compared with enumeration when the enumeration bound allows it.
bool oracle_agrees(const GModule& m, std::size_t k, const FgAbGroup& fast) {
  try {
    expect_group(fast, oracle_cohomology(m, k), "H^" + std::to_string(k) + " vs enumeration");
    return true;
  } catch (const SizeBoundError&) {
    return false;
  }
}

std::string criterion1() {
  std::size_t oracle_checked = 0;
  const GModule z2 = GModule::trivial(FiniteGroup::cyclic(2), cyc(2));
  for (std::size_t k = 0; k <= 5; ++k) {
    const FgAbGroup h = cohomology(z2, k).group();
    expect_group(h, cyc(2), "H^" + std::to_string(k) + "(Z/2; Z/2)");
    oracle_checked += oracle_agrees(z2, k, h);
  }
  const GModule z3 = GModule::trivial(FiniteGroup::cyclic(3), cyc(3));
  for (std::size_t k = 0; k <= 3; ++k) {
    const FgAbGroup h = cohomology(z3, k).group();
    expect_group(h, cyc(3), "H^" + std::to_string(k) + "(Z/3; Z/3)");
    oracle_checked += oracle_agrees(z3, k, h);
  }
  require(oracle_checked >= 7, "too few degrees checked by enumeration");
  return std::to_string(oracle_checked) + " of 10 degrees also checked by enumeration";
}

std::string criterion2() {
  std::size_t cases = 0;
  for (std::size_t order = 1; order <= 3; ++order)
    for (long kind : {0L, 2L, 3L})
      for (const GModule& m : all_modules(FiniteGroup::cyclic(order), kind))
        for (std::size_t k = 0; k <= 2; ++k) {
          require(oracle_agrees(m, k, cohomology(m, k).group()), "enumeration bound hit in sweep");
          ++cases;
        }
  require(cases == 30, "expected 30 sweep cases, got " + std::to_string(cases));
  const GModule z2 = GModule::trivial(FiniteGroup::cyclic(2), cyc(2));
  for (std::size_t k = 0; k <= 4; ++k) {
    require(oracle_agrees(z2, k, cohomology(z2, k).group()), "enumeration bound hit for Z/2, k = " + std::to_string(k));
    ++cases;
  }
  return std::to_string(cases) + " (group, module, degree) cases agree with enumeration";
}

std::string criterion3() {
  TwoStageDim1N a;
  a.n = 2;
  a.an = GModule::trivial(FiniteGroup::cyclic(2), cyc(2));
  const ModuliReport r = moduli_case_a(a);
  require(r.pi0 == 2, "pi0 = " + r.pi0.get_str());
  expect_group(*r.pi(2), cyc(2), "pi_2");
  require(r.vanishes_above == 2, "higher groups do not vanish above 2");
  const Basepoint& split = r.basepoints.front();
  require(split.kappa == IntVector{0}, "first basepoint is not the split class");
  expect_group(split.pi1.kernel, cyc(2), "pi_1 kernel");
  require(split.stabilizer.size() == 1 && *split.pi1.quotient_order == 1, "stabilizer of the split class is not trivial");
  require(*split.pi1.order == 2, "|pi_1| = " + split.pi1.order->get_str());
  return "pi0 = 2, pi_2 = Z/2, |pi_1| = 2 at the split basepoint";
}

std::string criterion4() {
  TwoStageDimNN1 b;
  b.n = 3;
  b.an = cyc(4);
  b.an1 = cyc(2);
  b.q.linear = IntMatrix{{0}};
  const ModuliReport r = moduli_case_b(b);
  expect_group(*r.pi(2), cyc(2), "pi_2");
  expect_group(*r.pi(2), hom_group(cyc(4), cyc(2)).group, "pi_2 vs Hom");
  expect_group(*r.pointed_pi1, cyc(2), "pi_1 TM'");
  expect_group(*r.pointed_pi1, ext_group(cyc(4), cyc(2)), "pi_1 TM' vs Ext");
  require(r.pi0 == 1, "pi0 = " + r.pi0.get_str());
  require(r.aut_order && *r.aut_order == 2, "|Aut(A)| is not 2");
  const Basepoint& bp = r.basepoints.front();
  require(*bp.pi1.order == 4, "|pi_1 TM| = " + bp.pi1.order->get_str());
  require(r.all_automorphisms_realizable && *bp.pi1.quotient_order == 2 && bp.stabilizer.size() == 2,
          "quotient of pi_1 TM is not all of Aut(A)");
  return "pi_2 = Z/2, pi_1 TM' = Z/2, |Aut(A)| = 2, |pi_1 TM| = 4";
}

void snf_contract(std::mt19937& rng) {
  std::uniform_int_distribution<int> entry(-9, 9);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  IntMatrix m(size(rng), size(rng));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
  const auto snf = smith_normal_form(m);
  require(snf.U * m * snf.V == snf.S && snf.S.is_diagonal(), "U M V != S");
  require(snf.U * snf.U_inv == IntMatrix::identity(m.rows()), "U_inv is not the inverse of U");
  require(abs(determinant(snf.V)) == 1, "V is not unimodular");
  const IntVector d = snf.diagonal();
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    require(d[i] >= 0, "negative invariant factor");
    require(d[i] == 0 ? d[i + 1] == 0 : d[i + 1] % d[i] == 0, "divisibility chain broken");
  }
}

void d_squared_zero(std::mt19937& rng) {
  const GModule m = random_module(rng);
  bar_complex(m, m.group().order() == 6 ? 3 : 4).check_all_composites();
}

void hom_ext_gcd(std::mt19937& rng) {
  const long a = 2 + static_cast<long>(rng() % 11), b = 2 + static_cast<long>(rng() % 11);
  const Integer g = std::gcd(a, b);
  require(hom_group(cyc(a), cyc(b)).group.order() == g, "|Hom(Z/a, Z/b)| != gcd");
  require(ext_group(cyc(a), cyc(b)).order() == g, "|Ext(Z/a, Z/b)| != gcd");
}

void orbit_stabilizer(std::mt19937& rng) {
  TwoStageDim1N a;
  a.an = random_module(rng);
  a.n = a.an.group().order() == 6 ? 2 : 2 + rng() % 2;
  const ModuliReport r = moduli_case_a(a);
  std::size_t total = 0;
  for (const auto& o : r.orbits->orbits) {
    require(o.size * o.stabilizer.size() == *r.aut_order, "|orbit| * |stabilizer| != |Aut(A)|");
    total += o.size;
  }
  require(Integer(static_cast<unsigned long>(total)) == r.kinvariants->order(), "orbits do not partition H^{n+1}");
  require(*r.burnside_count == r.pi0, "Burnside count differs from orbit count");
}

void relabel_invariance(std::mt19937& rng) {
  const GModule m = random_module(rng);
  const FiniteGroup& g = m.group();
  Permutation relabel = identity_permutation(g.order());
  std::shuffle(relabel.begin() + 1, relabel.end(), rng);
  const FiniteGroup h = g.relabeled(relabel);
  std::vector<IntMatrix> action(h.order());
  for (std::size_t x = 0; x < g.order(); ++x) action[relabel[x]] = m.action(x).matrix();
  const GModule mh(h, m.base(), action);
  const std::size_t k = rng() % (g.order() == 6 ? 4 : 5);
  require(cohomology(m, k).group() == cohomology(mh, k).group(), "H^k changed under relabeling");
}

void action_laws(std::mt19937& rng) {
  TwoStageDim1N a;
  a.an = random_module(rng);
  a.n = a.an.group().order() == 6 ? 2 : 2 + rng() % 2;
  const PiAut aut = pi_aut(a);
  const CohomologyGroup h = cohomology(a.an, a.n + 1);
  std::vector<Permutation> act;
  for (const auto& pair : aut.elements()) act.push_back(act_on_kinvariants(a, pair, h));
  require(act.front() == identity_permutation(act.front().size()), "identity acts nontrivially");
  for (std::size_t i = 0; i < act.size(); ++i) {
    require(act[i][0] == 0, "split class moved");
    for (std::size_t j = 0; j < act.size(); ++j)
      require(act[aut.compose(i, j)] == compose(act[i], act[j]), "act(ij) != act(i) act(j)");
  }
}

std::string criterion5() {
  const std::vector<std::pair<std::string, std::function<void(std::mt19937&)>>> suites{
      {"snf contract", snf_contract},           {"d o d = 0", d_squared_zero},
      {"|Hom| = |Ext| = gcd", hom_ext_gcd},      {"orbit-stabilizer", orbit_stabilizer},
      {"relabeling invariance", relabel_invariance}, {"action laws", action_laws}};
  std::mt19937 rng(2718);
  for (const auto& [name, body] : suites) {
    for (int trial = 0; trial < 200; ++trial) {
      try {
        body(rng);
      } catch (const Failure& f) {
        throw Failure{name + ", case " + std::to_string(trial) + ": " + f.what};
      }
    }
  }
  // the gcd table in full as well
  for (long a = 2; a <= 12; ++a)
    for (long b = 2; b <= 12; ++b) {
      require(hom_group(cyc(a), cyc(b)).group.order() == std::gcd(a, b), "Hom table");
      require(ext_group(cyc(a), cyc(b)).order() == std::gcd(a, b), "Ext table");
    }
  return std::to_string(suites.size()) + " suites x 200 randomized cases";
}

std::string criterion6() {
  const std::vector<std::tuple<FiniteGroup, long, std::size_t>> cases{
      {FiniteGroup::cyclic(2), 3, 2}, {FiniteGroup::cyclic(2), 3, 3}, {FiniteGroup::cyclic(3), 2, 2},
      {FiniteGroup::cyclic(3), 4, 3}, {FiniteGroup::cyclic(2), 5, 4}, {FiniteGroup::abelian({2, 2}), 3, 3},
      {s3(), 5, 2},                   {FiniteGroup::cyclic(5), 2, 2}};
  for (const auto& [g, m, n] : cases) {
    TwoStageDim1N a;
    a.n = n;
    a.an = GModule::trivial(g, cyc(m));
    const ModuliReport r = moduli_case_a(a);
    const std::string tag = "|A_1| = " + std::to_string(g.order()) + ", A_n = Z/" + std::to_string(m);
    require(r.pi0 == 1, tag + ": pi0 = " + r.pi0.get_str());
    for (const auto& hg : r.higher) require(hg.group.is_trivial(), tag + ": pi_" + std::to_string(hg.degree) + " != 0");
  }
  return std::to_string(cases.size()) + " coprime cases";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<std::string()> body;
  };
  const std::vector<Criterion> criteria{
      {1, "cohomology of Z/2 and Z/3 with trivial coefficients", 30, criterion1},
      {2, "enumeration sweep over small groups and modules", 120, criterion2},
      {3, "Z/2 acting trivially on Z/2, n = 2", 5, criterion3},
      {4, "Z/4 to Z/2 with q = 0, n = 3", 1, criterion4},
      {5, "randomized property suites", 300, criterion5},
      {6, "coprime orders with trivial action", 5, criterion6},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && seconds > c.limit_seconds) {
      ok = false;
      detail += " (over the time limit)";
    }
    std::printf("%s criterion %d: %s [%.2f s / %.0f s] %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), seconds,
                c.limit_seconds, detail.c_str());
    failures += !ok;
  }
  return failures == 0 ? 0 : 1;
}
