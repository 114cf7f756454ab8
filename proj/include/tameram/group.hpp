#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace tameram {

/// Abstract finite group given by its multiplication table; elements are
/// indices 0..order-1.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<std::size_t>>;

  static FiniteGroup from_table(Table table, std::vector<std::string> labels = {}) {
    const std::size_t n = table.size();
    if (n == 0) throw ValidationError("group table is empty");
    for (const auto& row : table) {
      if (row.size() != n) throw ValidationError("group table is not square");
      for (auto v : row)
        if (v >= n) throw ValidationError("group table entry out of range");
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]]) throw ValidationError("group table is not associative");
    std::optional<std::size_t> id;
    for (std::size_t e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
      if (ok) id = e;
    }
    if (!id) throw ValidationError("group table has no identity");
    std::vector<std::size_t> inv(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (table[a][b] == *id && table[b][a] == *id) inv[a] = b;
    for (auto v : inv)
      if (v == n) throw ValidationError("group table lacks inverses");
    if (labels.empty()) {
      for (std::size_t a = 0; a < n; ++a) labels.push_back(a == *id ? "1" : "g" + std::to_string(a));
    }
    if (labels.size() != n) throw ValidationError("group label count differs from order");
    FiniteGroup g;
    g.table_ = std::move(table);
    g.identity_ = *id;
    g.inverse_ = std::move(inv);
    g.labels_ = std::move(labels);
    return g;
  }

  /// Z/n with element k the k-th power of a generator.
  static FiniteGroup cyclic(std::size_t n) {
    if (n == 0) throw ValidationError("cyclic group of order 0");
    Table t(n, std::vector<std::size_t>(n));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
      labels.push_back(a == 0 ? "1" : a == 1 ? "g" : "g^" + std::to_string(a));
    }
    return from_table(std::move(t), std::move(labels));
  }

  /// Permutations of {0..n-1} in lexicographic order, (s t)(i) = s(t(i)).
  static FiniteGroup symmetric(std::size_t n) {
    if (n == 0 || n > 5) throw Unsupported("symmetric group degree must be 1..5");
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t k = 0; k < perms.size(); ++k) index[perms[k]] = k;
    Table t(perms.size(), std::vector<std::size_t>(perms.size()));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < perms.size(); ++a) {
      for (std::size_t b = 0; b < perms.size(); ++b) {
        std::vector<std::size_t> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
        t[a][b] = index.at(c);
      }
      std::string s = "[";
      for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(perms[a][i]);
      labels.push_back(s + "]");
    }
    return from_table(std::move(t), std::move(labels));
  }

  static FiniteGroup trivial() { return cyclic(1); }

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const Table& table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t a) const { return labels_[a]; }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool is_subgroup(const std::vector<std::size_t>& elems) const {
    if (elems.empty()) return false;
    std::vector<bool> in(order(), false);
    for (auto e : elems) {
      if (e >= order()) return false;
      in[e] = true;
    }
    for (auto a : elems) {
      if (!in[inverse(a)]) return false;
      for (auto b : elems)
        if (!in[mul(a, b)]) return false;
    }
    return true;
  }

  bool is_normal(const std::vector<std::size_t>& elems) const {
    std::vector<bool> in(order(), false);
    for (auto e : elems) in[e] = true;
    for (std::size_t g = 0; g < order(); ++g)
      for (auto h : elems)
        if (!in[mul(mul(g, h), inverse(g))]) return false;
    return true;
  }

  /// Subgroup on the given (sorted) elements; `embedding[k]` is the parent index of element k.
  struct Restriction;
  Restriction subgroup(std::vector<std::size_t> elems) const;
  /// Quotient by a normal subgroup; `projection[g]` is the coset of g.
  struct Quotient;
  Quotient quotient(const std::vector<std::size_t>& normal) const;

  /// Left cosets gH, each sorted, in order of first appearance.
  std::vector<std::vector<std::size_t>> left_cosets(const std::vector<std::size_t>& sub) const {
    std::vector<bool> seen(order(), false);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t g = 0; g < order(); ++g) {
      if (seen[g]) continue;
      std::vector<std::size_t> coset;
      for (auto h : sub) {
        coset.push_back(mul(g, h));
        seen[mul(g, h)] = true;
      }
      std::sort(coset.begin(), coset.end());
      out.push_back(std::move(coset));
    }
    return out;
  }

 private:
  FiniteGroup() = default;
  Table table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
  std::vector<std::string> labels_;
};

struct FiniteGroup::Restriction {
  FiniteGroup group;
  std::vector<std::size_t> embedding;
};

struct FiniteGroup::Quotient {
  FiniteGroup group;
  std::vector<std::size_t> projection;
};

inline FiniteGroup::Restriction FiniteGroup::subgroup(std::vector<std::size_t> elems) const {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (!is_subgroup(elems)) throw PreconditionError("element set is not a subgroup");
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t k = 0; k < elems.size(); ++k) pos[elems[k]] = k;
    Table t(elems.size(), std::vector<std::size_t>(elems.size()));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < elems.size(); ++a) {
      for (std::size_t b = 0; b < elems.size(); ++b) t[a][b] = pos.at(mul(elems[a], elems[b]));
      labels.push_back(label(elems[a]));
    }
    return {from_table(std::move(t), std::move(labels)), std::move(elems)};
  }

inline FiniteGroup::Quotient FiniteGroup::quotient(const std::vector<std::size_t>& normal) const {
    if (!is_subgroup(normal)) throw PreconditionError("element set is not a subgroup");
    if (!is_normal(normal)) throw PreconditionError("subgroup is not normal");
    std::vector<std::size_t> proj(order(), order());
    std::vector<std::size_t> reps;
    for (std::size_t g = 0; g < order(); ++g) {
      if (proj[g] != order()) continue;
      for (auto h : normal) proj[mul(g, h)] = reps.size();
      reps.push_back(g);
    }
    Table t(reps.size(), std::vector<std::size_t>(reps.size()));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < reps.size(); ++a) {
      for (std::size_t b = 0; b < reps.size(); ++b) t[a][b] = proj[mul(reps[a], reps[b])];
      labels.push_back(label(reps[a]) + "H");
    }
    return {from_table(std::move(t), std::move(labels)), std::move(proj)};
  }


}  // namespace tameram
