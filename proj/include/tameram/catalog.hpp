#pragma once

// Built-in example documents: Gaussian integers modulo small primes, regular,
// coset and trivial actions of small groups, mu_n and alpha_p actions.

#include <functional>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace tameram {

namespace catalog_detail {

/// A greedy generating set, in element order.
inline std::vector<std::size_t> generating_set(const FiniteGroup& g) {
  std::vector<std::size_t> gens;
  std::vector<bool> reached(g.order(), false);
  reached[g.identity()] = true;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (reached[x]) continue;
    gens.push_back(x);
    // closure under right multiplication by the generators
    std::vector<std::size_t> frontier;
    for (std::size_t y = 0; y < g.order(); ++y)
      if (reached[y]) frontier.push_back(y);
    while (!frontier.empty()) {
      const std::size_t y = frontier.back();
      frontier.pop_back();
      for (auto s : gens) {
        const std::size_t z = g.mul(y, s);
        if (!reached[z]) {
          reached[z] = true;
          frontier.push_back(z);
        }
      }
    }
  }
  return gens;
}

/// Permutation matrices of G on the disjoint union of the G/H_i, points ordered
/// orbit by orbit and cosets by smallest element.
inline std::vector<Matrix> coset_matrices(const Field& f, const FiniteGroup& g,
                                          const std::vector<std::vector<std::size_t>>& subgroups) {
  std::vector<std::size_t> orbit;
  std::vector<std::vector<std::size_t>> cosets;
  for (std::size_t o = 0; o < subgroups.size(); ++o)
    for (const auto& c : g.left_cosets(subgroups[o])) {
      orbit.push_back(o);
      cosets.push_back(c);
    }
  const std::size_t n = cosets.size();
  std::vector<Matrix> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t target = g.mul(x, cosets[i].front());
      for (std::size_t j = 0; j < n; ++j)
        if (orbit[j] == orbit[i] && std::find(cosets[j].begin(), cosets[j].end(), target) != cosets[j].end()) {
          m.at(j, i) = f.one();
        }
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline Json group_spec(const std::string& name, std::size_t n) {
  if (name == "trivial") return Json{{"name", "trivial"}};
  return Json{{"name", name}, {"n", n}};
}

inline Json permutation_document(const std::string& name, const std::string& description, const Field& f,
                                 const Json& group, const std::vector<std::vector<std::size_t>>& subgroups) {
  const FiniteGroup g = parse_group(group);
  const auto mats = coset_matrices(f, g, subgroups);
  Json gens = Json::array();
  for (auto s : generating_set(g)) gens.push_back(Json{{"element", s}, {"matrix", matrix_json(mats[s])}});
  return Json{{"name", name},
              {"description", description},
              {"field", field_json(f)},
              {"algebra", Json{{"name", "functions"}, {"points", mats.front().rows()}}},
              {"gamma_action", Json{{"group", group}, {"generators", gens}}}};
}

inline std::vector<std::size_t> all_of(const FiniteGroup& g) {
  std::vector<std::size_t> out(g.order());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

inline Json gauss_document(std::int64_t p) {
  const Field f = Field::prime(p);
  Matrix sigma = Matrix::identity(f, 2);
  sigma.at(1, 1) = f.neg(f.one());
  return Json{{"name", "gauss-p" + std::to_string(p)},
              {"description", "C2 acting on F_" + std::to_string(p) + "[x]/(x^2+1) by x -> -x"},
              {"field", field_json(f)},
              {"algebra", Json{{"name", "polynomial_quotient"}, {"modulus", Json::array({"1", "0"})}}},
              {"gamma_action", Json{{"group", group_spec("cyclic", 2)},
                                    {"generators", Json::array({Json{{"element", 1}, {"matrix", matrix_json(sigma)}}})}}}};
}

/// A Hopf algebra acting on itself by translation, or trivially on the ground
/// field, with the points taken from the automatic splitting.
inline Json hopf_document(const std::string& name, const std::string& description, const Field& f, const Json& hopf,
                          bool translation) {
  Json doc{{"name", name},
           {"description", description},
           {"field", field_json(f)},
           {"hopf", hopf},
           {"algebra", Json{{"name", translation ? "hopf" : "ground"}}},
           {"coaction", Json{{"name", translation ? "regular" : "trivial"}}}};
  const HopfAlgebra h = parse_hopf(f, hopf);
  const Algebra b = translation ? h.algebra() : ground_algebra(f);
  Json points = Json::array();
  for (const auto& s : split_factors(b)) points.push_back(point_json(s.point));
  doc["points"] = points;
  return doc;
}

}  // namespace catalog_detail

struct CatalogEntry {
  std::string name;
  std::function<Json()> document;
};

inline const std::vector<CatalogEntry>& catalog() {
  using namespace catalog_detail;
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    for (std::int64_t p : {2, 3, 5}) out.push_back({"gauss-p" + std::to_string(p), [p] { return gauss_document(p); }});
    struct Regular {
      const char* name;
      const char* group;
      std::size_t n;
      std::int64_t p;
    };
    for (const Regular r : {Regular{"regular-c2", "cyclic", 2, 5}, Regular{"regular-c3", "cyclic", 3, 3},
                            Regular{"regular-c4", "cyclic", 4, 2}, Regular{"regular-s3", "symmetric", 3, 2}}) {
      out.push_back({r.name, [r] {
                       const Json g = group_spec(r.group, r.n);
                       return permutation_document(r.name, "translation action of the group on its functions",
                                                   Field::prime(r.p), g, {{parse_group(g).identity()}});
                     }});
    }
    out.push_back({"coset-s3-c2", [] {
                     const Json g = group_spec("symmetric", 3);
                     const FiniteGroup s3 = parse_group(g);
                     std::size_t tau = 1;
                     while (s3.mul(tau, tau) != s3.identity()) ++tau;
                     return permutation_document("coset-s3-c2", "S3 acting on the three cosets of a transposition",
                                                 Field::prime(7), g, {{s3.identity(), tau}});
                   }});
    out.push_back({"c4-coset-c2", [] {
                     const Json g = group_spec("cyclic", 4);
                     return permutation_document("c4-coset-c2", "C4 acting on C4/C2 through its quotient",
                                                 Field::prime(3), g, {{0, 2}});
                   }});
    struct Trivial {
      const char* name;
      std::size_t n;
      Field f;
    };
    for (const Trivial& t : {Trivial{"trivial-c2-f2", 2, Field::prime(2)}, Trivial{"trivial-c3-f3", 3, Field::prime(3)},
                             Trivial{"trivial-c2-f5", 2, Field::prime(5)}, Trivial{"trivial-c3-q", 3, Field::rationals()}}) {
      out.push_back({t.name, [t] {
                       const Json g = group_spec("cyclic", t.n);
                       return permutation_document(t.name, "trivial action on the ground field", t.f, g,
                                                   {all_of(parse_group(g))});
                     }});
    }
    struct Mu {
      const char* name;
      std::size_t n;
      std::int64_t p;
      bool translation;
    };
    for (const Mu m : {Mu{"mu2-translation-f2", 2, 2, true}, Mu{"mu3-translation-f3", 3, 3, true},
                       Mu{"mu2-trivial-f2", 2, 2, false}, Mu{"mu3-trivial-f3", 3, 3, false}}) {
      out.push_back({m.name, [m] {
                       return hopf_document(m.name,
                                            m.translation ? "mu_n acting on itself by translation"
                                                          : "trivial action of mu_n on the ground field",
                                            Field::prime(m.p), Json{{"name", "mu_n"}, {"n", m.n}}, m.translation);
                     }});
    }
    out.push_back({"alpha2-trivial", [] {
                     return hopf_document("alpha2-trivial", "trivial action of alpha_2 on the ground field",
                                          Field::prime(2), Json{{"name", "alpha_p"}}, false);
                   }});
    out.push_back({"two-orbits-c2", [] {
                     return permutation_document("two-orbits-c2", "C2 acting on two disjoint copies of itself",
                                                 Field::prime(5), group_spec("cyclic", 2), {{0}, {0}});
                   }});
    out.push_back({"regular-plus-trivial-c2", [] {
                     return permutation_document("regular-plus-trivial-c2",
                                                 "C2 acting on itself and on a fixed point", Field::prime(5),
                                                 group_spec("cyclic", 2), {{0}, {0, 1}});
                   }});
    return out;
  }();
  return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw PreconditionError("no catalog entry named '" + name + "'");
}

}  // namespace tameram
