#pragma once

// Command dispatch for the pimod tool: moduli, cohomology, check.

#include "pimoduli/spec_io.hpp"

#include <functional>

namespace pimoduli {

struct CliOptions {
  std::string command;
  std::optional<std::pair<std::size_t, std::size_t>> degrees;
  bool oracle = false;
  std::optional<std::size_t> max_group_order;
};

struct CliResult {
  int exit_code = 0;
  std::string output;
};

/// "a..b" -> (a, b); throws ParseError.
inline std::pair<std::size_t, std::size_t> parse_degree_range(const std::string& text) {
  const auto dots = text.find("..");
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6)
      throw ParseError("--degrees: expected a..b with non-negative integers, got \"" + text + "\"");
    return static_cast<std::size_t>(std::stoul(s));
  };
  if (dots == std::string::npos) {
    const std::size_t k = number(text);
    return {k, k};
  }
  const std::size_t a = number(text.substr(0, dots)), b = number(text.substr(dots + 2));
  if (a > b) throw ParseError("--degrees: empty range " + text);
  return {a, b};
}

namespace detail {

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Compare the bar-complex path with enumeration in degrees [lo, hi]; degrees beyond the
/// oracle bound are listed as skipped. Mismatch throws InternalError.
inline Json oracle_crosscheck(const GModule& m, std::size_t lo, std::size_t hi, const SizeBounds& bounds) {
  Json checked = Json::array(), skipped = Json::array();
  for (std::size_t k = lo; k <= hi; ++k) {
    FgAbGroup brute;
    try {
      brute = oracle_cohomology(m, k, bounds);
    } catch (const SizeBoundError&) {
      skipped.push_back(k);
      continue;
    }
    const FgAbGroup fast = cohomology(m, k, bounds).group();
    if (!(fast == brute))
      throw InternalError("H^" + std::to_string(k) + " disagrees with enumeration: " + fast.describe() + " vs " +
                          brute.describe());
    checked.push_back(k);
  }
  return {{"checked", checked}, {"skipped", skipped}};
}

struct CheckList {
  Json entries = Json::array();
  bool validation_failed = false;
  bool other_failed = false;

  /// Run `body`; it returns a detail string. Size-bound errors mark the check skipped.
  void run(const std::string& name, const std::function<std::string()>& body) {
    Json e{{"name", name}};
    try {
      e["detail"] = body();
      e["status"] = "pass";
    } catch (const SizeBoundError& err) {
      e["status"] = "skipped";
      e["detail"] = err.what();
    } catch (const ValidationError& err) {
      e["status"] = "fail";
      e["detail"] = err.what();
      if (!err.witness().empty()) e["witness"] = err.witness();
      validation_failed = true;
    } catch (const std::exception& err) {
      e["status"] = "fail";
      e["detail"] = err.what();
      other_failed = true;
    }
    entries.push_back(e);
  }
};

inline void check_case_a(CheckList& list, const TwoStageDim1N& a, const SizeBounds& bounds) {
  list.run("bar_complex_d_squared_zero", [&] {
    bar_complex(a.an, a.n + 2, bounds).check_all_composites();
    return "degrees 0.." + std::to_string(a.n + 2);
  });
  for (std::size_t k = 0; k <= a.n + 1; ++k)
    list.run("oracle_equivalence_H" + std::to_string(k), [&] {
      const FgAbGroup brute = oracle_cohomology(a.an, k, bounds);
      const FgAbGroup fast = cohomology(a.an, k, bounds).group();
      if (!(fast == brute)) throw InternalError(fast.describe() + " vs enumeration " + brute.describe());
      return fast.describe();
    });
  std::optional<PiAut> aut;
  list.run("aut_group_closed", [&] {
    aut = pi_aut(a, bounds);
    for (std::size_t i = 0; i < aut->order(); ++i) aut->inverse(i);
    return "order " + std::to_string(aut->order());
  });
  if (!aut) return;
  list.run("kinvariant_action_laws", [&] {
    const CohomologyGroup h = cohomology(a.an, a.n + 1, bounds);
    std::vector<Permutation> act;
    for (const auto& pair : aut->elements()) act.push_back(act_on_kinvariants(a, pair, h, bounds));
    const std::size_t size = act.front().size();
    if (act.front() != identity_permutation(size)) throw InternalError("identity pair acts nontrivially");
    for (std::size_t i = 0; i < act.size(); ++i) {
      if (act[i][0] != 0) throw InternalError("zero class moved by automorphism " + std::to_string(i));
      for (std::size_t j = 0; j < act.size(); ++j)
        if (act[aut->compose(i, j)] != compose(act[i], act[j]))
          throw InternalError("action law fails at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    return std::to_string(act.size()) + " permutations of " + std::to_string(size) + " classes";
  });
  list.run("orbit_stabilizer_and_burnside", [&] {
    const ModuliReport r = moduli_case_a(a, bounds);
    return "pi0 = " + r.pi0.get_str();
  });
}

inline void check_case_b(CheckList& list, const TwoStageDimNN1& b, const SizeBounds& bounds) {
  list.run("hom_order_by_enumeration", [&] {
    if (!b.an.is_finite() || !b.an1.is_finite()) throw SizeBoundError("groups are infinite; enumeration not possible");
    // |Hom| = product over cyclic factors Z/d of A_n of #{y in A_{n+1} : d y = 0}
    const std::size_t count = b.an1.element_count(bounds.element_limit);
    Integer total = 1;
    for (const auto& d : b.an.moduli()) {
      std::size_t killed = 0;
      for (std::size_t y = 0; y < count; ++y) {
        IntVector v = b.an1.element(y);
        for (auto& c : v) c *= d;
        if (b.an1.reduce_normal(v) == IntVector(v.size())) ++killed;
      }
      total *= static_cast<unsigned long>(killed);
    }
    const FgAbGroup hom = hom_group(b.an, b.an1).group;
    if (hom.order() != total) throw InternalError("|Hom| = " + hom.order().get_str() + " but enumeration gives " + total.get_str());
    return "|Hom| = " + total.get_str();
  });
  list.run("aut_group_closed", [&] {
    const auto aut = pi_aut(b, bounds);
    if (const auto* p = std::get_if<PiAut>(&aut)) {
      for (std::size_t i = 0; i < p->order(); ++i) p->inverse(i);
      return "order " + std::to_string(p->order());
    }
    throw SizeBoundError("Aut(A) is symbolic: " + std::get<SymbolicAut>(aut).description);
  });
  list.run("connected_and_truncated", [&] {
    const ModuliReport r = moduli_case_b(b, bounds);
    if (r.pi0 != 1 || r.vanishes_above != 2) throw InternalError("report is not connected with pi_i = 0 for i >= 3");
    return std::string("pi0 = 1, pi_i = 0 for i >= 3");
  });
}

}  // namespace detail

/// Run one command on the text of a spec. Never throws; errors become JSON plus an exit code.
inline CliResult run(const CliOptions& opts, const std::string& spec_text) {
  try {
    if (opts.command != "moduli" && opts.command != "cohomology" && opts.command != "check")
      throw ParseError("unknown command \"" + opts.command + "\" (expected moduli, cohomology or check)");
    InputSpec spec = parse_spec(spec_text);
    if (opts.max_group_order) spec.bounds.bar_group_order = *opts.max_group_order;
    const SizeBounds& bounds = spec.bounds;

    if (opts.command == "check") {
      detail::CheckList list;
      list.entries.push_back({{"name", "parse"}, {"status", "pass"}, {"detail", "spec parsed"}});
      std::optional<PiAlgebra> alg;
      list.run("validation", [&] {
        alg = build(spec);
        return std::string("invariants hold");
      });
      if (alg) {
        if (const auto* a = std::get_if<TwoStageDim1N>(&*alg)) detail::check_case_a(list, *a, bounds);
        else detail::check_case_b(list, std::get<TwoStageDimNN1>(*alg), bounds);
      }
      const bool ok = !list.validation_failed && !list.other_failed;
      Json out{{"checks", list.entries}, {"ok", ok}};
      return {ok ? 0 : static_cast<int>(list.validation_failed ? ErrorCode::validation : ErrorCode::internal),
              detail::dump(out)};
    }

    const PiAlgebra alg = build(spec);
    if (opts.command == "cohomology") {
      const auto* a = std::get_if<TwoStageDim1N>(&alg);
      if (!a) throw ValidationError("cohomology needs a case A spec (a group acting on a module)");
      const auto [lo, hi] = opts.degrees.value_or(std::pair<std::size_t, std::size_t>{0, a->n + 1});
      Json degrees = Json::array();
      for (std::size_t k = lo; k <= hi; ++k) degrees.push_back({{"k", k}, {"group", group_json(cohomology(a->an, k, bounds).group())}});
      Json out{{"group_order", a->a1().order()},
               {"module", group_json(a->an.base())},
               {"trivial_action", a->an.is_trivial_action()},
               {"cohomology", degrees}};
      if (opts.oracle) out["oracle"] = detail::oracle_crosscheck(a->an, lo, hi, bounds);
      return {0, detail::dump(out)};
    }

    Json out;
    if (const auto* a = std::get_if<TwoStageDim1N>(&alg)) {
      out = report_json(moduli_case_a(*a, bounds));
      if (opts.oracle) out["oracle"] = detail::oracle_crosscheck(a->an, 0, a->n + 1, bounds);
    } else {
      out = report_json(moduli_case_b(std::get<TwoStageDimNN1>(alg), bounds));
    }
    return {0, detail::dump(out)};
  } catch (const Error& e) {
    return {static_cast<int>(e.code()), detail::dump(error_json(e))};
  } catch (const std::exception& e) {
    return {static_cast<int>(ErrorCode::internal), detail::dump(error_json(InternalError(e.what())))};
  }
}

}  // namespace pimoduli
