#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sv/linalg.hpp"

namespace sv {

/// Sparse polynomial in N variables with exact coefficients. Zero terms are
/// never stored.
template <std::size_t N>
class Poly {
 public:
  using Exponent = std::array<int, N>;
  using Terms = std::map<Exponent, Rational>;

  Poly() = default;
  explicit Poly(Terms terms) {
    for (auto& [e, c] : terms) add_term(e, c);
  }
  static Poly constant(const Rational& c) { return Poly(Terms{{Exponent{}, c}}); }
  static Poly variable(std::size_t i) {
    Exponent e{};
    e[i] = 1;
    return Poly(Terms{{e, Rational(1)}});
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  void add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  static int total(const Exponent& e) {
    int s = 0;
    for (int x : e) s += x;
    return s;
  }
  /// Lowest total degree of a term; -1 for the zero polynomial.
  int order() const {
    int best = -1;
    for (const auto& [e, c] : terms_)
      if (best < 0 || total(e) < best) best = total(e);
    return best;
  }
  int degree() const {
    int best = -1;
    for (const auto& [e, c] : terms_) best = std::max(best, total(e));
    return best;
  }
  Poly homogeneous_part(int k) const {
    Poly p;
    for (const auto& [e, c] : terms_)
      if (total(e) == k) p.terms_.emplace(e, c);
    return p;
  }
  Poly truncated_below(int k) const {
    Poly p;
    for (const auto& [e, c] : terms_)
      if (total(e) < k) p.terms_.emplace(e, c);
    return p;
  }
  Poly derivative(std::size_t i) const {
    Poly p;
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent f = e;
      --f[i];
      p.add_term(f, c * e[i]);
    }
    return p;
  }
  /// Divide by the monomial x^shift; throws if some term is not divisible.
  Poly shifted_down(const Exponent& shift) const {
    Poly p;
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < N; ++i) {
        f[i] -= shift[i];
        if (f[i] < 0) throw Error(ErrorCode::Internal, "monomial division is not exact");
      }
      p.terms_.emplace(f, c);
    }
    return p;
  }

  Poly operator+(const Poly& o) const {
    Poly p = *this;
    for (const auto& [e, c] : o.terms_) p.add_term(e, c);
    return p;
  }
  Poly operator-(const Poly& o) const { return *this + o * Rational(-1); }
  Poly operator*(const Rational& s) const {
    Poly p;
    if (s == 0) return p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, c * s);
    return p;
  }
  Poly operator*(const Poly& o) const {
    Poly p;
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        Exponent e;
        for (std::size_t i = 0; i < N; ++i) e[i] = e1[i] + e2[i];
        p.add_term(e, c1 * c2);
      }
    return p;
  }
  Poly pow(int k) const {
    Poly r = constant(1);
    Poly b = *this;
    while (k > 0) {
      if (k & 1) r = r * b;
      b = b * b;
      k >>= 1;
    }
    return r;
  }
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  /// Substitute variable i by subs[i] (polynomials in M variables).
  template <std::size_t M>
  Poly<M> substitute(const std::array<Poly<M>, N>& subs) const {
    std::array<std::vector<Poly<M>>, N> powers;
    Poly<M> out;
    for (const auto& [e, c] : terms_) {
      Poly<M> term = Poly<M>::constant(c);
      for (std::size_t i = 0; i < N; ++i) {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Poly<M>::constant(1));
        while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(cache.back() * subs[i]);
        term = term * cache[static_cast<std::size_t>(e[i])];
      }
      out = out + term;
    }
    return out;
  }

  Rational evaluate(const std::array<Rational, N>& at) const {
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < N; ++i)
        for (int k = 0; k < e[i]; ++k) t *= at[i];
      acc += t;
    }
    return acc;
  }

 private:
  Terms terms_;
};

template <std::size_t N>
Poly<N> operator*(const Rational& s, const Poly<N>& p) {
  return p * s;
}

using Germ = Poly<2>;   // local coordinates (u, v)
using Poly3 = Poly<3>;  // (x, y, z)

/// Dense univariate polynomial, coefficient of t^i at index i, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(RationalVector c);
  static UPoly linear_root(const Rational& r);  // t - r

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const RationalVector& coeffs() const { return c_; }
  Rational lead() const { return c_.back(); }
  Rational operator()(const Rational& t) const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  UPoly derivative() const;
  UPoly monic() const;
  /// Quotient and remainder.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;

 private:
  void trim();
  RationalVector c_;
};

UPoly gcd(UPoly a, UPoly b);
/// Yun's algorithm: factors f_i with f = c * prod f_i^i; returns (multiplicity, factor).
std::vector<std::pair<int, UPoly>> squarefree_decomposition(const UPoly& f);
/// Rational roots with multiplicity. Integers in the search are factored by
/// trial division; Inconclusive past a size cap.
std::vector<std::pair<Rational, int>> rational_roots(const UPoly& f);

/// Root structure of a binary form: rational roots in P^1 as (s:t) with
/// multiplicity, and the remaining irrational part grouped as
/// (squarefree degree, multiplicity) pairs.
struct BinaryRoots {
  struct Root {
    Rational s, t;  // (s:t), normalized so the first nonzero entry is 1
    int multiplicity = 0;
  };
  std::vector<Root> rational;
  std::vector<std::pair<int, int>> irrational;
};
/// `form` is a homogeneous polynomial of degree d in (s, t) = variables (0, 1).
BinaryRoots binary_roots(const Germ& form);

struct MarkedPoint {
  std::array<Rational, 3> coords;

  MarkedPoint() = default;
  MarkedPoint(Rational x, Rational y, Rational z);
  static MarkedPoint from_vector(const RationalVector& v);
  bool operator==(const MarkedPoint& o) const { return coords == o.coords; }
  std::string str() const;
};

/// Line {l . X = 0}, normalized like a point.
struct Line {
  std::array<Rational, 3> coeffs;

  Line() = default;
  Line(Rational a, Rational b, Rational c);
  static Line through(const MarkedPoint& p, const MarkedPoint& q);
  bool contains(const MarkedPoint& p) const;
  /// Two points spanning the line.
  std::pair<MarkedPoint, MarkedPoint> span() const;
  bool operator==(const Line& o) const { return coeffs == o.coeffs; }
  std::string str() const;
};

class HomogeneousForm {
 public:
  HomogeneousForm() = default;
  /// Throws InvalidArgument unless every term has degree d.
  HomogeneousForm(int degree, Poly3 poly);
  static HomogeneousForm monomial(int i, int j, int k, const Rational& c = 1);
  static HomogeneousForm zero(int degree);

  int degree() const { return degree_; }
  const Poly3& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }

  HomogeneousForm operator+(const HomogeneousForm& o) const;
  HomogeneousForm operator-(const HomogeneousForm& o) const;
  HomogeneousForm operator*(const HomogeneousForm& o) const;
  HomogeneousForm operator*(const Rational& s) const;
  HomogeneousForm pow(int k) const;
  bool operator==(const HomogeneousForm& o) const { return degree_ == o.degree_ && poly_ == o.poly_; }

  Rational evaluate(const MarkedPoint& p) const;
  HomogeneousForm derivative(std::size_t i) const;
  /// G(X) = F(A X).
  HomogeneousForm transformed(const Matrix& a) const;
  /// Germ at p in the affine chart of p's first nonzero coordinate, with the
  /// remaining two coordinates (in order) shifted so p is the origin.
  Germ local_germ(const MarkedPoint& p) const;

  std::string str() const;

 private:
  int degree_ = 0;
  Poly3 poly_;
};

/// Variables x, y, z as linear forms.
HomogeneousForm form_x();
HomogeneousForm form_y();
HomogeneousForm form_z();

/// All exponent triples of degree d in a fixed order (x-exponent descending).
std::vector<std::array<int, 3>> monomials_of_degree(int d);
std::string monomial_name(const std::array<int, 3>& e);

/// Parse "y^3 + y^2*z^2 - 1/2*z^6" style text; `names` lists the variable
/// letters in index order. Errors carry the column.
Germ parse_germ(const std::string& text, const std::array<char, 2>& names = {'y', 'z'});
Poly3 parse_poly3(const std::string& text);
/// Throws unless the parsed polynomial is homogeneous (and non-zero).
HomogeneousForm parse_form(const std::string& text);
std::string germ_str(const Germ& g);

MarkedPoint apply(const Matrix& a, const MarkedPoint& p);

}  // namespace sv
