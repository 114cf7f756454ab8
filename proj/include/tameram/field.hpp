#pragma once

// Exact scalar fields: Q, F_p and F_p[t]/(f).
//
// A Field is a cheap handle (shared immutable state). Scalars are plain
// values in canonical form: finite-field elements are integer codes in
// [0, q) (base-p digits are the polynomial coefficients, low degree first),
// rationals are always in lowest terms. Structural equality of Scalars is
// therefore field equality.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace tameram {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Scalar = std::variant<std::int64_t, Rational>;

inline constexpr int kMaxExtensionDegree = 8;

class Field {
 public:
  enum class Kind { rationals, prime, extension };

  static Field rationals() { return Field(std::make_shared<Impl>(Impl{Kind::rationals, 0, {}, 1, 0})); }

  static Field prime(std::int64_t p) {
    if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime(p)) {
      throw ValidationError("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
    }
    return Field(std::make_shared<Impl>(Impl{Kind::prime, p, {0, 1}, 1, p}));
  }

  /// F_p[t]/(f); `modulus` lists the coefficients of f from degree 0 upward.
  static Field extension(std::int64_t p, std::vector<std::int64_t> modulus) {
    Field base = prime(p);
    for (auto& c : modulus) c = ((c % p) + p) % p;
    while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
    if (modulus.size() < 2) throw ValidationError("extension modulus must have degree >= 1");
    if (modulus.back() != 1) throw ValidationError("extension modulus must be monic");
    const int m = static_cast<int>(modulus.size()) - 1;
    if (m > kMaxExtensionDegree) {
      throw Unsupported("extension degree " + std::to_string(m) + " exceeds " + std::to_string(kMaxExtensionDegree));
    }
    std::int64_t order = 1;
    for (int i = 0; i < m; ++i) {
      if (order > (std::int64_t{1} << 62) / p) throw Unsupported("extension field too large for integer codes");
      order *= p;
    }
    if (!is_irreducible(p, modulus)) throw ValidationError("extension modulus is reducible over F_" + std::to_string(p));
    (void)base;
    return Field(std::make_shared<Impl>(Impl{Kind::extension, p, std::move(modulus), m, order}));
  }

  Kind kind() const { return impl_->kind; }
  bool is_finite() const { return impl_->kind != Kind::rationals; }
  std::int64_t characteristic() const { return impl_->p; }
  /// Degree over the prime field (1 for Q and F_p).
  int degree() const { return impl_->degree; }
  /// Number of elements; nullopt for Q.
  std::optional<std::int64_t> order() const {
    if (!is_finite()) return std::nullopt;
    return impl_->order;
  }
  const std::vector<std::int64_t>& modulus() const { return impl_->modulus; }

  bool operator==(const Field& o) const {
    return impl_ == o.impl_ ||
           (impl_->kind == o.impl_->kind && impl_->p == o.impl_->p && impl_->modulus == o.impl_->modulus);
  }
  bool operator!=(const Field& o) const { return !(*this == o); }

  std::string describe() const {
    switch (kind()) {
      case Kind::rationals:
        return "Q";
      case Kind::prime:
        return "F_" + std::to_string(characteristic());
      case Kind::extension: {
        std::string s = "F_" + std::to_string(characteristic()) + "[t]/(";
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
          auto c = modulus()[static_cast<std::size_t>(i)];
          if (c == 0) continue;
          if (!first) s += "+";
          first = false;
          if (i == 0 || c != 1) s += std::to_string(c);
          if (i >= 1) s += "t";
          if (i >= 2) s += "^" + std::to_string(i);
        }
        return s + ")";
      }
    }
    return "?";
  }

  // --- construction of elements -------------------------------------------

  Scalar zero() const {
    if (!is_finite()) return Rational(0);
    return std::int64_t{0};
  }
  Scalar one() const {
    if (!is_finite()) return Rational(1);
    return std::int64_t{1};
  }
  Scalar from_int(std::int64_t v) const {
    if (!is_finite()) return Rational(v);
    const auto p = characteristic();
    return ((v % p) + p) % p;
  }
  Scalar from_integer(const Integer& v) const {
    if (!is_finite()) return Rational(v);
    Integer r = v % characteristic();
    if (r < 0) r += characteristic();
    return static_cast<std::int64_t>(r);
  }
  Scalar from_rational(const Rational& v) const {
    if (!is_finite()) return v;
    Scalar num = from_integer(boost::multiprecision::numerator(v));
    Scalar den = from_integer(boost::multiprecision::denominator(v));
    if (is_zero(den)) throw ValidationError("denominator vanishes in characteristic " + std::to_string(characteristic()));
    return div(num, den);
  }
  /// Polynomial in the generator t with the given F_p coefficients (low first).
  Scalar from_coeffs(const std::vector<std::int64_t>& coeffs) const {
    if (!is_finite()) {
      if (coeffs.size() > 1) throw FieldMismatch("polynomial coefficients given for Q");
      return coeffs.empty() ? zero() : from_int(coeffs[0]);
    }
    if (static_cast<int>(coeffs.size()) > degree()) {
      throw ValidationError("too many coefficients for " + describe());
    }
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree()), 0);
    const auto p = characteristic();
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = ((coeffs[i] % p) + p) % p;
    return encode(c);
  }
  std::vector<std::int64_t> coeffs(const Scalar& s) const {
    if (!is_finite()) throw FieldMismatch("coefficient vector requested for Q");
    return decode(code(s));
  }
  /// The class of t (a primitive generator only by accident).
  Scalar generator() const {
    if (kind() != Kind::extension) throw PreconditionError("generator() needs an extension field");
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree()), 0);
    if (degree() == 1) {
      c[0] = (characteristic() - modulus()[0]) % characteristic();
    } else {
      c[1] = 1;
    }
    return encode(c);
  }

  // --- arithmetic -----------------------------------------------------------

  bool is_zero(const Scalar& a) const {
    if (auto* v = std::get_if<std::int64_t>(&a)) return *v == 0;
    return std::get<Rational>(a) == 0;
  }
  bool is_one(const Scalar& a) const {
    if (auto* v = std::get_if<std::int64_t>(&a)) return *v == 1;
    return std::get<Rational>(a) == 1;
  }

  Scalar add(const Scalar& a, const Scalar& b) const {
    switch (kind()) {
      case Kind::rationals:
        return Rational(std::get<Rational>(a) + std::get<Rational>(b));
      case Kind::prime: {
        auto s = code(a) + code(b);
        return s >= characteristic() ? s - characteristic() : s;
      }
      case Kind::extension:
        return digitwise(code(a), code(b), +1);
    }
    return a;
  }
  Scalar sub(const Scalar& a, const Scalar& b) const {
    switch (kind()) {
      case Kind::rationals:
        return Rational(std::get<Rational>(a) - std::get<Rational>(b));
      case Kind::prime: {
        auto s = code(a) - code(b);
        return s < 0 ? s + characteristic() : s;
      }
      case Kind::extension:
        return digitwise(code(a), code(b), -1);
    }
    return a;
  }
  Scalar neg(const Scalar& a) const { return sub(zero(), a); }

  Scalar mul(const Scalar& a, const Scalar& b) const {
    switch (kind()) {
      case Kind::rationals:
        return Rational(std::get<Rational>(a) * std::get<Rational>(b));
      case Kind::prime:
        return (code(a) * code(b)) % characteristic();
      case Kind::extension:
        return encode(poly_mulmod(decode(code(a)), decode(code(b))));
    }
    return a;
  }

  Scalar inv(const Scalar& a) const {
    if (is_zero(a)) throw PreconditionError("inverse of zero");
    switch (kind()) {
      case Kind::rationals:
        return Rational(1 / std::get<Rational>(a));
      case Kind::prime:
        return inv_mod(code(a), characteristic());
      case Kind::extension:
        return pow(a, static_cast<std::uint64_t>(impl_->order - 2));
    }
    return a;
  }
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  Scalar pow(Scalar base, std::uint64_t e) const {
    Scalar r = one();
    while (e) {
      if (e & 1U) r = mul(r, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return r;
  }

  /// Canonical text: "3", "-1/2", or for extension fields "[c0,c1,...]".
  std::string format(const Scalar& a) const {
    if (!is_finite()) {
      const auto& q = std::get<Rational>(a);
      auto num = boost::multiprecision::numerator(q);
      auto den = boost::multiprecision::denominator(q);
      return den == 1 ? num.str() : num.str() + "/" + den.str();
    }
    if (kind() == Kind::prime) return std::to_string(code(a));
    std::string s = "[";
    auto c = decode(code(a));
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
  }

  // --- relations between fields -------------------------------------------

  /// True when elements of this field map canonically into `bigger`
  /// (identity, or F_p into an extension of F_p).
  bool embeds_into(const Field& bigger) const {
    if (*this == bigger) return true;
    return kind() == Kind::prime && bigger.kind() == Kind::extension && characteristic() == bigger.characteristic();
  }
  Scalar embed_into(const Field& bigger, const Scalar& a) const {
    if (*this == bigger) return a;
    if (!embeds_into(bigger)) throw FieldMismatch("no canonical embedding " + describe() + " -> " + bigger.describe());
    return a;  // constants keep their code
  }

  /// All elements of a finite field, in code order.
  std::vector<Scalar> elements(std::int64_t limit = 1 << 20) const {
    if (!is_finite()) throw Unsupported("cannot enumerate Q");
    if (impl_->order > limit) throw Unsupported("field " + describe() + " too large to enumerate");
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(impl_->order));
    for (std::int64_t v = 0; v < impl_->order; ++v) out.emplace_back(v);
    return out;
  }

  static bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  struct Impl {
    Kind kind;
    std::int64_t p;
    std::vector<std::int64_t> modulus;
    int degree;
    std::int64_t order;
  };
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  static std::int64_t code(const Scalar& s) {
    if (auto* v = std::get_if<std::int64_t>(&s)) return *v;
    throw FieldMismatch("rational scalar used in a finite field");
  }

  static std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
      auto q = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - q * nt);
      std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    return t < 0 ? t + p : t;
  }

  std::vector<std::int64_t> decode(std::int64_t v) const {
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree()), 0);
    for (auto& d : c) {
      d = v % characteristic();
      v /= characteristic();
    }
    return c;
  }
  std::int64_t encode(const std::vector<std::int64_t>& c) const {
    std::int64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * characteristic() + c[i];
    return v;
  }
  std::int64_t digitwise(std::int64_t a, std::int64_t b, int sign) const {
    auto ca = decode(a), cb = decode(b);
    const auto p = characteristic();
    for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = ((ca[i] + sign * cb[i]) % p + p) % p;
    return encode(ca);
  }
  std::vector<std::int64_t> poly_mulmod(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
    const auto p = characteristic();
    const auto m = static_cast<std::size_t>(degree());
    std::vector<std::int64_t> prod(2 * m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    const auto& f = modulus();
    for (std::size_t k = prod.size(); k-- > m;) {
      auto c = prod[k];
      if (c == 0) continue;
      for (std::size_t i = 0; i <= m; ++i) prod[k - m + i] = ((prod[k - m + i] - c * f[i]) % p + p) % p;
    }
    prod.resize(m);
    return prod;
  }

  // f is irreducible iff no monic polynomial of degree 1..deg(f)/2 divides it.
  static bool is_irreducible(std::int64_t p, const std::vector<std::int64_t>& f) {
    const int m = static_cast<int>(f.size()) - 1;
    for (int d = 1; d <= m / 2; ++d) {
      double count = 1;
      for (int i = 0; i < d; ++i) count *= static_cast<double>(p);
      if (count > 4e6) throw Unsupported("irreducibility search space too large");
      std::vector<std::int64_t> g(static_cast<std::size_t>(d) + 1, 0);
      g[static_cast<std::size_t>(d)] = 1;
      const auto total = static_cast<std::int64_t>(count);
      for (std::int64_t idx = 0; idx < total; ++idx) {
        auto v = idx;
        for (int i = 0; i < d; ++i) {
          g[static_cast<std::size_t>(i)] = v % p;
          v /= p;
        }
        if (divides(p, g, f)) return false;
      }
    }
    return true;
  }
  static bool divides(std::int64_t p, const std::vector<std::int64_t>& g, std::vector<std::int64_t> f) {
    const std::size_t dg = g.size() - 1;
    for (std::size_t k = f.size(); k-- > dg;) {
      auto c = f[k];
      if (c == 0) continue;
      for (std::size_t i = 0; i <= dg; ++i) f[k - dg + i] = ((f[k - dg + i] - c * g[i]) % p + p) % p;
    }
    for (std::size_t i = 0; i < dg; ++i)
      if (f[i] != 0) return false;
    return true;
  }

  std::shared_ptr<const Impl> impl_;
};

}  // namespace tameram
