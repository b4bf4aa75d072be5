#pragma once

// Reading input specs and writing reports as JSON.

#include "pimoduli/moduli.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace pimoduli {

using Json = nlohmann::json;  // std::map-backed objects: keys come out sorted

struct AbGroupSpec {
  std::size_t generators = 0;
  IntMatrix relations;          // one column per relation
  std::optional<IntVector> cyclic;  // set when given as a cyclic factor list
};

struct GroupSpec {
  enum class Kind { cyclic, permutations, table } kind = Kind::cyclic;
  std::vector<std::size_t> cyclic;
  std::vector<Permutation> permutations;
  FiniteGroup::Table table;
};

struct ActionSpec {
  enum class Kind { trivial, generators, elements } kind = Kind::trivial;
  std::vector<IntMatrix> matrices;
};

struct QSpec {
  enum class Kind { zero, matrix, table } kind = Kind::zero;
  IntMatrix matrix;
  std::vector<IntVector> table;  // indexed over the cyclic factors of A_n, last factor fastest
};

struct InputSpec {
  char case_tag = 'A';
  std::size_t n = 2;
  GroupSpec group;    // A
  AbGroupSpec module; // A
  ActionSpec action;  // A
  AbGroupSpec an;     // B
  AbGroupSpec an1;    // B
  QSpec q;            // B
  SizeBounds bounds;
};

using PiAlgebra = std::variant<TwoStageDim1N, TwoStageDimNN1>;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

inline const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path, "missing field \"" + key + "\"");
  return *it;
}

inline std::size_t read_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) parse_fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline Integer read_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) parse_fail(path, "malformed integer string");
    return v;
  }
  parse_fail(path, "expected an integer");
}

inline IntVector read_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_integer(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline std::vector<std::size_t> read_counts(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array of non-negative integers");
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_count(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

/// Rows of integers; `cols` fixes the row length when known.
inline IntMatrix read_matrix(const Json& j, const std::string& path, std::optional<std::size_t> rows = {},
                             std::optional<std::size_t> cols = {}) {
  if (!j.is_array()) parse_fail(path, "expected a matrix (array of rows)");
  if (rows && j.size() != *rows)
    parse_fail(path, "expected " + std::to_string(*rows) + " rows, got " + std::to_string(j.size()));
  std::vector<IntVector> data;
  for (std::size_t i = 0; i < j.size(); ++i) data.push_back(read_vector(j[i], path + "[" + std::to_string(i) + "]"));
  const std::size_t c = cols ? *cols : (data.empty() ? 0 : data.front().size());
  IntMatrix m(data.size(), c);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].size() != c)
      parse_fail(path + "[" + std::to_string(i) + "]", "expected " + std::to_string(c) + " entries, got " +
                                                         std::to_string(data[i].size()));
    for (std::size_t k = 0; k < c; ++k) m(i, k) = data[i][k];
  }
  return m;
}

inline AbGroupSpec read_ab_group(const Json& j, const std::string& path) {
  if (!j.is_object()) parse_fail(path, "expected an object with \"cyclic\" or \"generators\"");
  AbGroupSpec s;
  if (j.contains("cyclic")) {
    IntVector orders = read_vector(j["cyclic"], path + ".cyclic");
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] < 0) parse_fail(path + ".cyclic[" + std::to_string(i) + "]", "cyclic order must be >= 0 (0 means Z)");
    s.generators = orders.size();
    s.relations = IntMatrix::diagonal(orders);
    s.cyclic = std::move(orders);
    return s;
  }
  if (j.contains("generators")) {
    s.generators = read_count(j["generators"], path + ".generators");
    std::vector<IntVector> rels;
    if (j.contains("relations")) {
      const Json& r = j["relations"];
      if (!r.is_array()) parse_fail(path + ".relations", "expected an array of relation vectors");
      for (std::size_t i = 0; i < r.size(); ++i) {
        const std::string p = path + ".relations[" + std::to_string(i) + "]";
        rels.push_back(read_vector(r[i], p));
        if (rels.back().size() != s.generators)
          parse_fail(p, "relation must have one entry per generator (" + std::to_string(s.generators) + ")");
      }
    }
    s.relations = IntMatrix::from_columns(s.generators, rels);
    return s;
  }
  parse_fail(path, "expected \"cyclic\" or \"generators\"");
}

inline GroupSpec read_group(const Json& j, const std::string& path) {
  if (!j.is_object()) parse_fail(path, "expected an object with \"cyclic\", \"permutations\" or \"table\"");
  GroupSpec g;
  if (j.contains("cyclic")) {
    g.kind = GroupSpec::Kind::cyclic;
    g.cyclic = read_counts(j["cyclic"], path + ".cyclic");
    for (std::size_t i = 0; i < g.cyclic.size(); ++i)
      if (g.cyclic[i] == 0) parse_fail(path + ".cyclic[" + std::to_string(i) + "]", "factor must be positive");
  } else if (j.contains("permutations")) {
    g.kind = GroupSpec::Kind::permutations;
    const Json& p = j["permutations"];
    if (!p.is_array()) parse_fail(path + ".permutations", "expected an array of permutations");
    for (std::size_t i = 0; i < p.size(); ++i)
      g.permutations.push_back(read_counts(p[i], path + ".permutations[" + std::to_string(i) + "]"));
  } else if (j.contains("table")) {
    g.kind = GroupSpec::Kind::table;
    const Json& t = j["table"];
    if (!t.is_array()) parse_fail(path + ".table", "expected an array of rows");
    for (std::size_t i = 0; i < t.size(); ++i) g.table.push_back(read_counts(t[i], path + ".table[" + std::to_string(i) + "]"));
  } else {
    parse_fail(path, "expected \"cyclic\", \"permutations\" or \"table\"");
  }
  return g;
}

inline std::vector<IntMatrix> read_matrix_list(const Json& j, const std::string& path, std::size_t dim) {
  if (!j.is_array()) parse_fail(path, "expected an array of matrices");
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_matrix(j[i], path + "[" + std::to_string(i) + "]", dim, dim));
  return out;
}

inline void read_bounds(const Json& j, SizeBounds& b) {
  if (!j.is_object()) parse_fail("bounds", "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string p = "bounds." + it.key();
    const std::size_t v = read_count(it.value(), p);
    if (it.key() == "group_order") b.group_order = v;
    else if (it.key() == "bar_group_order") b.bar_group_order = v;
    else if (it.key() == "max_cochain_rank") b.max_cochain_rank = v;
    else if (it.key() == "automorphism_group_order") b.automorphism_group_order = v;
    else if (it.key() == "element_limit") b.element_limit = v;
    else if (it.key() == "oracle_enumeration") b.oracle_enumeration = v;
    else if (it.key() == "max_aut_pairs") b.max_aut_pairs = v;
    else parse_fail(p, "unknown bound");
  }
}

inline std::string with_location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

/// Parse a spec document. Structural problems throw ParseError naming the line or field.
inline InputSpec parse_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON at " + detail::with_location(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  InputSpec s;
  const Json& tag = detail::field(j, "case", "spec");
  if (tag == "A") s.case_tag = 'A';
  else if (tag == "B") s.case_tag = 'B';
  else detail::parse_fail("case", "expected \"A\" (dimensions 1 and n) or \"B\" (dimensions n and n+1)");
  s.n = detail::read_count(detail::field(j, "n", "spec"), "n");
  if (j.contains("bounds")) detail::read_bounds(j["bounds"], s.bounds);

  if (s.case_tag == 'A') {
    s.group = detail::read_group(detail::field(j, "group", "spec"), "group");
    s.module = detail::read_ab_group(detail::field(j, "module", "spec"), "module");
    if (!j.contains("action") || j["action"] == "trivial") {
      s.action.kind = ActionSpec::Kind::trivial;
    } else {
      const Json& a = j["action"];
      if (a.is_object() && a.contains("generators")) {
        s.action.kind = ActionSpec::Kind::generators;
        s.action.matrices = detail::read_matrix_list(a["generators"], "action.generators", s.module.generators);
      } else if (a.is_object() && a.contains("elements")) {
        s.action.kind = ActionSpec::Kind::elements;
        s.action.matrices = detail::read_matrix_list(a["elements"], "action.elements", s.module.generators);
      } else {
        detail::parse_fail("action", "expected \"trivial\", {\"generators\": [...]} or {\"elements\": [...]}");
      }
    }
    return s;
  }

  s.an = detail::read_ab_group(detail::field(j, "an", "spec"), "an");
  s.an1 = detail::read_ab_group(detail::field(j, "an1", "spec"), "an1");
  if (!j.contains("q") || j["q"] == "zero") {
    s.q.kind = QSpec::Kind::zero;
  } else {
    const Json& q = j["q"];
    if (q.is_object() && q.contains("matrix")) {
      s.q.kind = QSpec::Kind::matrix;
      s.q.matrix = detail::read_matrix(q["matrix"], "q.matrix", s.an1.generators, s.an.generators);
    } else if (q.is_object() && q.contains("table")) {
      s.q.kind = QSpec::Kind::table;
      const Json& t = q["table"];
      if (!t.is_array()) detail::parse_fail("q.table", "expected an array of values");
      for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string p = "q.table[" + std::to_string(i) + "]";
        s.q.table.push_back(detail::read_vector(t[i], p));
        if (s.q.table.back().size() != s.an1.generators)
          detail::parse_fail(p, "value must have one entry per generator of an1 (" + std::to_string(s.an1.generators) + ")");
      }
      if (!s.an.cyclic) detail::parse_fail("an", "a q table needs an given as a cyclic factor list");
    } else {
      detail::parse_fail("q", "expected \"zero\", {\"matrix\": [...]} or {\"table\": [...]}");
    }
  }
  return s;
}

inline FgAbGroup to_group(const AbGroupSpec& s) { return FgAbGroup(s.generators, s.relations); }

inline FiniteGroup to_group(const GroupSpec& g, const SizeBounds& bounds) {
  switch (g.kind) {
    case GroupSpec::Kind::cyclic: return FiniteGroup::abelian(g.cyclic, bounds.group_order);
    case GroupSpec::Kind::permutations: return FiniteGroup::from_permutations(g.permutations, bounds.group_order);
    case GroupSpec::Kind::table: return FiniteGroup::from_table(g.table, bounds.group_order);
  }
  throw InternalError("unknown group kind");
}

/// Build and validate the Π-algebra; invariant violations throw ValidationError.
inline PiAlgebra build(const InputSpec& s) {
  if (s.case_tag == 'A') {
    FiniteGroup g = to_group(s.group, s.bounds);
    FgAbGroup m = to_group(s.module);
    if (!m.is_finite()) throw ValidationError("module must be a finite abelian group", "module = " + m.describe());
    m.element_count(s.bounds.element_limit);
    TwoStageDim1N a;
    a.n = s.n;
    switch (s.action.kind) {
      case ActionSpec::Kind::trivial: a.an = GModule::trivial(g, m); break;
      case ActionSpec::Kind::generators: {
        const auto gens = g.generators();
        if (gens.size() != s.action.matrices.size())
          throw ValidationError("action needs one matrix per group generator",
                                std::to_string(s.action.matrices.size()) + " given, " + std::to_string(gens.size()) +
                                    " generators");
        a.an = GModule::from_generator_action(g, m, gens, s.action.matrices);
        break;
      }
      case ActionSpec::Kind::elements: a.an = GModule(g, m, s.action.matrices, s.bounds.element_limit); break;
    }
    validate(a);
    return a;
  }
  TwoStageDimNN1 b;
  b.n = s.n;
  b.an = to_group(s.an);
  b.an1 = to_group(s.an1);
  switch (s.q.kind) {
    case QSpec::Kind::zero: b.q.linear = IntMatrix(s.an1.generators, s.an.generators); break;
    case QSpec::Kind::matrix: b.q.linear = s.q.matrix; break;
    case QSpec::Kind::table: {
      if (s.n >= 3)
        throw ValidationError("for n >= 3 the map q must be a homomorphism A_n ⊗ Z/2 -> A_{n+1} given as a matrix");
      const IntVector& f = *s.an.cyclic;
      for (const auto& d : f)
        if (d == 0) throw ValidationError("for n = 2 the group A_n must be finite", "A_n = " + b.an.describe());
      const std::size_t count = b.an.element_count(s.bounds.element_limit);
      if (s.q.table.size() != count)
        throw ValidationError("q table must list one value per element of A_n",
                              std::to_string(s.q.table.size()) + " given, |A_n| = " + std::to_string(count));
      b.q.values.assign(count, IntVector(s.an1.generators));
      for (std::size_t u = 0; u < count; ++u) {
        IntVector x(f.size());
        std::size_t rest = u;
        for (std::size_t i = f.size(); i-- > 0;) {
          const std::size_t fi = f[i].get_ui();
          x[i] = static_cast<unsigned long>(rest % fi);
          rest /= fi;
        }
        b.q.values[b.an.index_of(b.an.normal_coords(x))] = s.q.table[u];
      }
      break;
    }
  }
  validate(b, s.bounds);
  return b;
}

// ---- serialization

inline Json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

inline Json vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

inline Json group_json(const FgAbGroup& g) {
  Json j;
  j["free_rank"] = g.free_rank();
  j["invariant_factors"] = vector_json(g.torsion());
  j["order"] = g.is_finite() ? integer_json(g.order()) : Json("infinite");
  j["description"] = g.describe();
  return j;
}

inline Json report_json(const ModuliReport& r) {
  Json j;
  j["case"] = std::string(1, r.case_tag);
  j["n"] = r.n;
  j["pi0"] = integer_json(r.pi0);
  Json higher = Json::array();
  for (const auto& h : r.higher) higher.push_back({{"i", h.degree}, {"group", group_json(h.group)}, {"formula", h.formula}});
  j["higher_homotopy"] = higher;
  j["vanishes_above"] = r.vanishes_above;
  j["aut"] = {{"order", r.aut_order ? Json(*r.aut_order) : Json(nullptr)},
              {"description", r.aut_description},
              {"symbolic", !r.aut_order.has_value()}};

  Json bases = Json::array();
  for (const auto& b : r.basepoints) {
    Json e;
    if (r.case_tag == 'A') {
      e["kappa"] = vector_json(b.kappa);
      e["orbit_size"] = b.orbit_size ? Json(*b.orbit_size) : Json(nullptr);
    }
    e["stabilizer"] = b.stabilizer;
    e["pi1"] = {{"kernel", group_json(b.pi1.kernel)},
                {"kernel_formula", b.pi1.kernel_formula},
                {"quotient_order", b.pi1.quotient_order ? integer_json(*b.pi1.quotient_order) : Json(nullptr)},
                {"quotient", b.pi1.quotient_description},
                {"order", b.pi1.order ? integer_json(*b.pi1.order) : Json(nullptr)},
                {"extension_class", b.pi1.extension_class}};
    bases.push_back(e);
  }
  j["basepoints"] = bases;

  if (r.case_tag == 'A') {
    j["k_invariants"] = {{"group", group_json(*r.kinvariants)}, {"basepoint", "0 (split extension)"}};
    j["h1_context"] = group_json(*r.h1_context);
    j["burnside_orbit_count"] = integer_json(*r.burnside_count);
    Json orbits = Json::array();
    for (const auto& o : r.orbits->orbits)
      orbits.push_back({{"representative", vector_json(o.representative_coords)},
                        {"size", o.size},
                        {"stabilizer_order", o.stabilizer.size()}});
    j["orbits"] = orbits;
  } else {
    j["pointed"] = {{"pi0", 1}, {"pi1", group_json(*r.pointed_pi1)}, {"pi2", group_json(*r.pointed_pi2)}};
    j["all_automorphisms_realizable"] = r.all_automorphisms_realizable;
    j["unique_homotopy_type"] = r.unique_homotopy_type;
  }
  j["realization_tree"] = r.realization_tree;
  Json prov;
  for (const auto& [k, v] : r.provenance) prov[k] = v;
  j["provenance"] = prov;
  return j;
}

inline Json error_json(const Error& e) {
  Json j;
  j["error"] = {{"code", static_cast<int>(e.code())}, {"kind", error_code_name(e.code())}, {"message", e.what()}};
  if (const auto* v = dynamic_cast<const ValidationError*>(&e); v && !v->witness().empty())
    j["error"]["witness"] = v->witness();
  return j;
}

}  // namespace pimoduli
