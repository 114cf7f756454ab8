#pragma once

// Action documents: strict JSON parsing into validated objects, and the
// serialization of fields, scalars and matrices used by documents and reports.

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "gamma_action.hpp"
#include "tameness.hpp"

namespace tameram {

using Json = nlohmann::json;

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"total-integral", "inertia", "torsor", "slice", "equivalence"};
  return names;
}

// --- serialization ------------------------------------------------------------------

inline Json field_json(const Field& f) {
  switch (f.kind()) {
    case Field::Kind::rationals:
      return Json{{"kind", "rationals"}};
    case Field::Kind::prime:
      return Json{{"kind", "prime"}, {"p", f.characteristic()}};
    case Field::Kind::extension: {
      Json m = Json::array();
      for (auto c : f.modulus()) m.push_back(std::to_string(c));
      return Json{{"kind", "extension"}, {"p", f.characteristic()}, {"modulus", m}};
    }
  }
  return {};
}

inline Json scalar_json(const Field& f, const Scalar& s) {
  if (f.kind() != Field::Kind::extension) return f.format(s);
  Json out = Json::array();
  for (auto c : f.coeffs(s)) out.push_back(std::to_string(c));
  return out;
}

/// Rows of scalars.
inline Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m.field(), m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// A column vector as a flat list.
inline Json vector_json(const Matrix& v) {
  Json out = Json::array();
  for (std::size_t i = 0; i < v.rows(); ++i) out.push_back(scalar_json(v.field(), v(i, 0)));
  return out;
}

/// Columns of a basis matrix as a list of vectors.
inline Json columns_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(vector_json(m.col(c)));
  return out;
}

inline Json group_json(const FiniteGroup& g) {
  Json table = Json::array();
  for (std::size_t a = 0; a < g.order(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    table.push_back(std::move(row));
  }
  Json labels = Json::array();
  for (std::size_t a = 0; a < g.order(); ++a) labels.push_back(g.label(a));
  return Json{{"table", table}, {"labels", labels}};
}

inline Json point_json(const Point& pt) {
  Json map = Json::array();
  for (std::size_t i = 0; i < pt.residue_map.cols(); ++i) map.push_back(scalar_json(pt.residue, pt.residue_map(0, i)));
  return Json{{"label", pt.label}, {"ideal", columns_json(pt.ideal)}, {"residue", field_json(pt.residue)},
              {"residue_map", map}};
}

inline Json hopf_structure_json(const HopfAlgebra& h) {
  return Json{{"dim", h.dim},
              {"mult", matrix_json(h.mult)},
              {"unit", vector_json(h.unit)},
              {"comult", matrix_json(h.comult)},
              {"counit", matrix_json(h.counit)},
              {"antipode", matrix_json(h.antipode)}};
}

// --- parsing ------------------------------------------------------------------------

namespace detail {

inline void expect_keys(const Json& j, const std::string& where, const std::set<std::string>& required,
                        const std::set<std::string>& optional = {}) {
  if (!j.is_object()) throw SchemaError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (!required.count(k) && !optional.count(k)) throw SchemaError("unknown key '" + k + "' in " + where);
  }
  for (const auto& k : required)
    if (!j.contains(k)) throw SchemaError("missing key '" + k + "' in " + where);
}

inline std::string get_string(const Json& j, const std::string& key, const std::string& where) {
  if (!j.at(key).is_string()) throw SchemaError(where + "." + key + " must be a string");
  return j.at(key).get<std::string>();
}

inline std::size_t get_count(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw SchemaError(where + "." + key + " must be a non-negative integer");
  return v.get<std::size_t>();
}

inline const Json& get_array(const Json& j, const std::string& key, const std::string& where) {
  if (!j.at(key).is_array()) throw SchemaError(where + "." + key + " must be an array");
  return j.at(key);
}

inline std::int64_t parse_small_integer(const Json& j, const std::string& where) {
  static const std::regex integer("-?[0-9]{1,18}");
  if (!j.is_string() || !std::regex_match(j.get<std::string>(), integer)) {
    throw SchemaError(where + " must be an integer string");
  }
  return std::stoll(j.get<std::string>());
}

}  // namespace detail

inline Field parse_field(const Json& j, const std::string& where = "field") {
  if (!j.is_object() || !j.contains("kind")) throw SchemaError(where + " must be an object with a kind");
  const std::string kind = detail::get_string(j, "kind", where);
  if (kind == "rationals") {
    detail::expect_keys(j, where, {"kind"});
    return Field::rationals();
  }
  if (kind == "prime") {
    detail::expect_keys(j, where, {"kind", "p"});
    if (!j.at("p").is_number_integer()) throw SchemaError(where + ".p must be an integer");
    return Field::prime(j.at("p").get<std::int64_t>());
  }
  if (kind == "extension") {
    detail::expect_keys(j, where, {"kind", "p", "modulus"});
    if (!j.at("p").is_number_integer()) throw SchemaError(where + ".p must be an integer");
    std::vector<std::int64_t> modulus;
    for (const auto& c : detail::get_array(j, "modulus", where)) modulus.push_back(detail::parse_small_integer(c, where + ".modulus"));
    return Field::extension(j.at("p").get<std::int64_t>(), modulus);
  }
  throw SchemaError(where + ".kind '" + kind + "' is not rationals, prime or extension");
}

inline Scalar parse_scalar(const Field& f, const Json& j, const std::string& where) {
  static const std::regex rational("-?[0-9]+(/[0-9]+)?");
  if (f.kind() == Field::Kind::extension) {
    if (!j.is_array()) throw SchemaError(where + " must be a coefficient list over " + f.describe());
    std::vector<std::int64_t> coeffs;
    for (const auto& c : j) coeffs.push_back(detail::parse_small_integer(c, where));
    return f.from_coeffs(coeffs);
  }
  if (!j.is_string() || !std::regex_match(j.get<std::string>(), rational)) {
    throw SchemaError(where + " must be a string of the form n or n/d");
  }
  const Rational q(j.get<std::string>());
  return f.from_rational(q);
}

inline Matrix parse_matrix(const Field& f, const Json& j, const std::string& where, std::optional<std::size_t> rows = {},
                           std::optional<std::size_t> cols = {}) {
  if (!j.is_array()) throw SchemaError(where + " must be an array of rows");
  const std::size_t r = j.size();
  std::size_t c = cols.value_or(r ? j[0].size() : 0);
  if (rows && r != *rows) throw DimensionError(where + " has " + std::to_string(r) + " rows, expected " + std::to_string(*rows));
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array()) throw SchemaError(where + " row " + std::to_string(i) + " must be an array");
    if (j[i].size() != c) throw DimensionError(where + " row " + std::to_string(i) + " has length " + std::to_string(j[i].size()) + ", expected " + std::to_string(c));
    for (std::size_t k = 0; k < c; ++k) m.at(i, k) = parse_scalar(f, j[i][k], where);
  }
  return m;
}

inline Matrix parse_vector(const Field& f, const Json& j, const std::string& where, std::optional<std::size_t> len = {}) {
  if (!j.is_array()) throw SchemaError(where + " must be an array");
  if (len && j.size() != *len) throw DimensionError(where + " has length " + std::to_string(j.size()) + ", expected " + std::to_string(*len));
  Matrix v(f, j.size(), 1);
  for (std::size_t i = 0; i < j.size(); ++i) v.at(i, 0) = parse_scalar(f, j[i], where);
  return v;
}

inline Matrix parse_columns(const Field& f, const Json& j, const std::string& where, std::size_t len) {
  if (!j.is_array()) throw SchemaError(where + " must be an array of vectors");
  Matrix m(f, len, j.size());
  for (std::size_t c = 0; c < j.size(); ++c) m.set_col(c, parse_vector(f, j[c], where, len));
  return m;
}

inline FiniteGroup parse_group(const Json& j, const std::string& where = "group") {
  if (!j.is_object()) throw SchemaError(where + " must be an object");
  if (j.contains("table")) {
    detail::expect_keys(j, where, {"table"}, {"labels"});
    FiniteGroup::Table t;
    for (const auto& row : detail::get_array(j, "table", where)) {
      if (!row.is_array()) throw SchemaError(where + ".table rows must be arrays");
      std::vector<std::size_t> r;
      for (const auto& x : row) {
        if (!x.is_number_integer() || x.get<std::int64_t>() < 0) throw SchemaError(where + ".table entries must be element indices");
        r.push_back(x.get<std::size_t>());
      }
      t.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    if (j.contains("labels"))
      for (const auto& l : detail::get_array(j, "labels", where)) {
        if (!l.is_string()) throw SchemaError(where + ".labels must be strings");
        labels.push_back(l.get<std::string>());
      }
    return FiniteGroup::from_table(std::move(t), std::move(labels));
  }
  const std::string name = detail::get_string(j, "name", where);
  if (name == "trivial") {
    detail::expect_keys(j, where, {"name"});
    return FiniteGroup::trivial();
  }
  detail::expect_keys(j, where, {"name", "n"});
  const std::size_t n = detail::get_count(j, "n", where);
  if (name == "cyclic") return FiniteGroup::cyclic(n);
  if (name == "symmetric") return FiniteGroup::symmetric(n);
  throw SchemaError(where + ".name '" + name + "' is not trivial, cyclic or symmetric");
}

inline HopfAlgebra parse_hopf(const Field& f, const Json& j, const std::string& where = "hopf") {
  const std::string name = j.is_object() && j.contains("name") ? detail::get_string(j, "name", where) : "";
  if (name == "function_algebra" || name == "group_algebra") {
    detail::expect_keys(j, where, {"name", "group"});
    const auto g = parse_group(j.at("group"), where + ".group");
    return name == "function_algebra" ? function_algebra(f, g) : group_algebra(f, g);
  }
  if (name == "mu_n") {
    detail::expect_keys(j, where, {"name", "n"});
    return mu_n(f, detail::get_count(j, "n", where));
  }
  if (name == "alpha_p") {
    detail::expect_keys(j, where, {"name"});
    return alpha_p(f);
  }
  if (name == "trivial") {
    detail::expect_keys(j, where, {"name"});
    return trivial_hopf(f);
  }
  if (name == "raw") {
    detail::expect_keys(j, where, {"name", "dim", "mult", "unit", "comult", "counit", "antipode"});
    const std::size_t n = detail::get_count(j, "dim", where);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
    HopfAlgebra h{f,
                  n,
                  parse_matrix(f, j.at("mult"), where + ".mult", n, n * n),
                  parse_vector(f, j.at("unit"), where + ".unit", n),
                  parse_matrix(f, j.at("comult"), where + ".comult", n * n, n),
                  parse_matrix(f, j.at("counit"), where + ".counit", 1, n),
                  parse_matrix(f, j.at("antipode"), where + ".antipode", n, n),
                  labels};
    require_valid(h);
    return h;
  }
  throw SchemaError(where + ".name must be function_algebra, group_algebra, mu_n, alpha_p, trivial or raw");
}

inline Algebra parse_algebra(const Field& f, const Json& j, const std::optional<HopfAlgebra>& h,
                             const std::string& where = "algebra") {
  const std::string name = j.is_object() && j.contains("name") ? detail::get_string(j, "name", where) : "";
  Algebra a = [&] {
    if (name == "functions") {
      detail::expect_keys(j, where, {"name", "points"});
      const std::size_t n = detail::get_count(j, "points", where);
      if (n == 0) throw ValidationError(where + " needs at least one point");
      return function_algebra(f, FiniteGroup::cyclic(n)).algebra();
    }
    if (name == "polynomial_quotient") {
      detail::expect_keys(j, where, {"name", "modulus"});
      const Matrix g = parse_vector(f, j.at("modulus"), where + ".modulus");
      std::vector<Scalar> coeffs;
      for (std::size_t i = 0; i < g.rows(); ++i) coeffs.push_back(g(i, 0));
      if (coeffs.empty()) throw ValidationError(where + ".modulus must have positive degree");
      return polynomial_quotient(f, coeffs);
    }
    if (name == "ground") {
      detail::expect_keys(j, where, {"name"});
      return ground_algebra(f);
    }
    if (name == "hopf") {
      detail::expect_keys(j, where, {"name"});
      if (!h) throw SchemaError(where + " refers to a Hopf algebra the document does not have");
      return h->algebra();
    }
    if (name == "raw") {
      detail::expect_keys(j, where, {"name", "dim", "mult", "unit"});
      const std::size_t n = detail::get_count(j, "dim", where);
      return make_algebra(parse_matrix(f, j.at("mult"), where + ".mult", n, n * n),
                          parse_vector(f, j.at("unit"), where + ".unit", n));
    }
    throw SchemaError(where + ".name must be functions, polynomial_quotient, ground, hopf or raw");
  }();
  auto failures = algebra_axiom_failures(a, true);
  if (!failures.empty()) throw ValidationError(where + ": " + failures.front());
  return a;
}

inline Point parse_point(const Field& k, std::size_t dim, const Json& j, const std::string& where) {
  detail::expect_keys(j, where, {"label", "ideal", "residue", "residue_map"});
  const Field kp = parse_field(j.at("residue"), where + ".residue");
  const Matrix map = parse_vector(kp, j.at("residue_map"), where + ".residue_map", dim).transpose();
  return Point{detail::get_string(j, "label", where), parse_columns(k, j.at("ideal"), where + ".ideal", dim), kp, map};
}

struct BatterySpec {
  std::string label;
  std::string module;  // "regular" (B) or "induced" (B (x) A)
  Matrix generators;
};

struct Instance {
  std::string name;
  std::string description;
  Json document;
  ComoduleAlgebra action;
  std::optional<GammaAction> gamma;
  std::vector<Point> points;
  std::vector<BatterySpec> battery;
  std::vector<std::string> checks;

  const Field& field() const { return action.field(); }
};

/// Builds and validates everything a document describes.
inline Instance load_document(const Json& doc) {
  detail::expect_keys(doc, "document", {"field", "algebra"},
                      {"name", "description", "hopf", "coaction", "gamma_action", "points", "battery", "checks"});
  const Field f = parse_field(doc.at("field"));
  std::string name = doc.contains("name") ? detail::get_string(doc, "name", "document") : "";
  std::string description = doc.contains("description") ? detail::get_string(doc, "description", "document") : "";
  const bool has_gamma = doc.contains("gamma_action");
  if (has_gamma == doc.contains("coaction")) throw SchemaError("document needs exactly one of coaction and gamma_action");
  if (has_gamma && doc.contains("hopf")) throw SchemaError("a gamma_action document takes its Hopf algebra from the group");
  if (!has_gamma && !doc.contains("hopf")) throw SchemaError("missing key 'hopf' in document");
  if (has_gamma && doc.contains("points")) throw SchemaError("a gamma_action document takes its points from the factors");

  std::optional<HopfAlgebra> h;
  if (!has_gamma) h = parse_hopf(f, doc.at("hopf"));
  const Algebra b = parse_algebra(f, doc.at("algebra"), h);

  std::optional<GammaAction> gamma;
  std::optional<ComoduleAlgebra> action;
  std::vector<Point> points;
  if (has_gamma) {
    const Json& g = doc.at("gamma_action");
    detail::expect_keys(g, "gamma_action", {"group", "generators"}, {"factors"});
    const FiniteGroup group = parse_group(g.at("group"), "gamma_action.group");
    std::vector<std::pair<std::size_t, Matrix>> gens;
    for (const auto& gen : detail::get_array(g, "generators", "gamma_action")) {
      detail::expect_keys(gen, "gamma_action.generators[]", {"element", "matrix"});
      gens.emplace_back(detail::get_count(gen, "element", "gamma_action.generators[]"),
                        parse_matrix(f, gen.at("matrix"), "gamma_action.generators[].matrix", b.dim, b.dim));
    }
    std::optional<std::vector<LocalFactor>> factors;
    if (g.contains("factors")) {
      factors.emplace();
      for (const auto& fac : detail::get_array(g, "factors", "gamma_action")) {
        detail::expect_keys(fac, "gamma_action.factors[]", {"idempotent", "point"});
        factors->push_back(LocalFactor{parse_vector(f, fac.at("idempotent"), "gamma_action.factors[].idempotent", b.dim),
                                       parse_point(f, b.dim, fac.at("point"), "gamma_action.factors[].point")});
      }
    }
    gamma = make_gamma_action(group, b, gens, factors);
    action = coaction_from_group_action(*gamma);
    for (const auto& fac : gamma->factors) points.push_back(fac.point);
  } else {
    const Json& c = doc.at("coaction");
    const std::string cname = detail::get_string(c, "name", "coaction");
    if (cname == "regular") {
      detail::expect_keys(c, "coaction", {"name"});
      if (b.dim != h->dim || b.mult != h->mult || b.unit != h->unit) {
        throw ValidationError("the regular coaction needs the algebra to be the Hopf algebra itself");
      }
      action = regular_action(*h);
    } else if (cname == "trivial") {
      detail::expect_keys(c, "coaction", {"name"});
      action = trivial_action(*h, b);
    } else if (cname == "raw") {
      detail::expect_keys(c, "coaction", {"name", "matrix"});
      action = make_comodule_algebra(*h, b, parse_matrix(f, c.at("matrix"), "coaction.matrix", b.dim * h->dim, b.dim));
    } else {
      throw SchemaError("coaction.name must be regular, trivial or raw");
    }
    if (doc.contains("points"))
      for (const auto& p : detail::get_array(doc, "points", "document")) points.push_back(parse_point(f, b.dim, p, "points[]"));
  }
  for (const auto& p : points) require_point(b, p);

  std::vector<BatterySpec> battery;
  if (doc.contains("battery"))
    for (const auto& s : detail::get_array(doc, "battery", "document")) {
      detail::expect_keys(s, "battery[]", {"label", "module", "generators"});
      const std::string module = detail::get_string(s, "module", "battery[]");
      std::size_t len = 0;
      if (module == "regular") {
        len = b.dim;
      } else if (module == "induced") {
        len = b.dim * action->hopf().dim;
      } else {
        throw SchemaError("battery[].module must be regular or induced");
      }
      battery.push_back(BatterySpec{detail::get_string(s, "label", "battery[]"), module,
                                    parse_columns(f, s.at("generators"), "battery[].generators", len)});
    }

  std::vector<std::string> checks;
  if (doc.contains("checks")) {
    for (const auto& c : detail::get_array(doc, "checks", "document")) {
      if (!c.is_string()) throw SchemaError("checks must be strings");
      const auto s = c.get<std::string>();
      if (std::find(known_checks().begin(), known_checks().end(), s) == known_checks().end()) {
        throw SchemaError("unknown check '" + s + "'");
      }
      checks.push_back(s);
    }
  } else {
    checks = known_checks();
  }
  return Instance{std::move(name), std::move(description), doc, std::move(*action), std::move(gamma),
                  std::move(points), std::move(battery), std::move(checks)};
}

inline Instance load_document_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  return load_document(doc);
}

/// The extra battery sequences a document asks for.
inline std::vector<ShortExactSequence> battery_sequences(const Instance& in) {
  std::vector<ShortExactSequence> out;
  const auto& b = in.action;
  for (const auto& s : in.battery) {
    const BAModule n = s.module == "regular" ? regular_module(b) : induced_module(b, regular_comodule(b.hopf()));
    Matrix span = s.generators.cols() ? column_basis(s.generators) : Matrix(b.field(), n.dim(), 0);
    std::vector<Matrix> blocks;
    for (std::size_t c = 0; c < span.cols(); ++c) blocks.push_back(cyclic_submodule(b, n, span.col(c)));
    if (blocks.empty()) throw ValidationError("battery sequence '" + s.label + "' has no generators");
    out.push_back(sequence_from_submodule(b, s.label, n, column_basis(hstack(blocks))));
  }
  return out;
}

}  // namespace tameram
