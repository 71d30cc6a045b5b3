#include "sv/polynomial.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace sv {

UPoly::UPoly(RationalVector c) : c_(std::move(c)) { trim(); }

UPoly UPoly::linear_root(const Rational& r) { return UPoly({-r, Rational(1)}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UPoly UPoly::operator+(const UPoly& o) const {
  RationalVector c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
  return UPoly(c);
}

UPoly UPoly::operator-(const UPoly& o) const {
  RationalVector c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] -= o.c_[i];
  return UPoly(c);
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  RationalVector c(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return UPoly(c);
}

UPoly UPoly::derivative() const {
  RationalVector c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * static_cast<long>(i));
  return UPoly(c);
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  RationalVector c = c_;
  const Rational l = lead();
  for (auto& x : c) x /= l;
  return UPoly(c);
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by the zero polynomial");
  RationalVector r = c_;
  if (degree() < d.degree()) return {UPoly(), *this};
  RationalVector q(static_cast<std::size_t>(degree() - d.degree() + 1));
  for (int i = degree() - d.degree(); i >= 0; --i) {
    const Rational f = r[static_cast<std::size_t>(i + d.degree())] / d.lead();
    q[static_cast<std::size_t>(i)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= d.degree(); ++j) r[static_cast<std::size_t>(i + j)] -= f * d.c_[static_cast<std::size_t>(j)];
  }
  return {UPoly(q), UPoly(r)};
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<std::pair<int, UPoly>> squarefree_decomposition(const UPoly& f) {
  std::vector<std::pair<int, UPoly>> out;
  if (f.degree() < 1) return out;
  UPoly a = gcd(f, f.derivative());
  UPoly b = f.divmod(a).first;
  UPoly c = f.derivative().divmod(a).first;
  UPoly d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    UPoly g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(i, g);
    b = b.divmod(g).first;
    c = d.divmod(g).first;
    d = c - b.derivative();
  }
  return out;
}

namespace {

constexpr unsigned long kTrialCap = 2000000;

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<std::pair<Integer, int>> primes;
  unsigned long steps = 0;
  for (Integer p = 2; p * p <= n; ++p) {
    if (++steps > kTrialCap) throw Error(ErrorCode::Inconclusive, "integer too large for rational root search");
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) primes.emplace_back(p, e);
  }
  if (n > 1) primes.emplace_back(n, 1);
  std::vector<Integer> out{1};
  for (const auto& [p, e] : primes) {
    const std::size_t before = out.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < before; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const UPoly& f) {
  std::vector<std::pair<Rational, int>> roots;
  if (f.degree() < 1) return roots;
  std::size_t zero = 0;
  while (f.coeffs()[zero] == 0) ++zero;
  if (zero > 0) roots.emplace_back(Rational(0), static_cast<int>(zero));
  RationalVector rest(f.coeffs().begin() + static_cast<long>(zero), f.coeffs().end());
  UPoly g(rest);
  if (g.degree() < 1) return roots;
  // squarefree part has the same roots and smaller coefficients
  UPoly s = g.divmod(gcd(g, g.derivative())).first;
  Integer den = 1;
  for (const auto& c : s.coeffs()) den = lcm(den, c.get_den());
  Integer a0 = s.coeffs().front().get_num() * (den / s.coeffs().front().get_den());
  Integer an = s.lead().get_num() * (den / s.lead().get_den());
  const auto ps = divisors(a0);
  const auto qs = divisors(an);
  std::vector<Rational> found;
  for (const auto& p : ps)
    for (const auto& q : qs)
      for (int sign : {1, -1}) {
        Rational r(p * sign, q);
        r.canonicalize();
        if (std::find(found.begin(), found.end(), r) != found.end()) continue;
        if (s(r) == 0) found.push_back(r);
      }
  std::sort(found.begin(), found.end());
  for (const auto& r : found) {
    int mult = 0;
    UPoly h = g;
    const UPoly lin = UPoly::linear_root(r);
    while (true) {
      auto [q, rem] = h.divmod(lin);
      if (!rem.is_zero()) break;
      h = q;
      ++mult;
    }
    roots.emplace_back(r, mult);
  }
  return roots;
}

BinaryRoots binary_roots(const Germ& form) {
  BinaryRoots out;
  const int d = form.degree();
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "zero binary form has no root structure");
  RationalVector c(static_cast<std::size_t>(d) + 1);
  for (const auto& [e, v] : form.terms()) {
    if (e[0] + e[1] != d) throw Error(ErrorCode::InvalidArgument, "binary form is not homogeneous");
    c[static_cast<std::size_t>(e[1])] += v;
  }
  UPoly h(c);  // form(1, t)
  if (h.degree() < d) out.rational.push_back({Rational(0), Rational(1), d - h.degree()});
  UPoly rest = h;
  for (const auto& [r, m] : rational_roots(h)) {
    out.rational.push_back({Rational(1), r, m});
    for (int k = 0; k < m; ++k) rest = rest.divmod(UPoly::linear_root(r)).first;
  }
  for (const auto& [m, f] : squarefree_decomposition(rest)) out.irrational.emplace_back(f.degree(), m);
  return out;
}

// ---- points and lines ------------------------------------------------------

namespace {

std::array<Rational, 3> normalized(std::array<Rational, 3> v, const char* what) {
  std::size_t i = 0;
  while (i < 3 && v[i] == 0) ++i;
  if (i == 3) throw Error(ErrorCode::InvalidArgument, std::string("zero vector is not a ") + what);
  const Rational f = v[i];
  for (auto& x : v) x /= f;
  return v;
}

std::string coords_str(const std::array<Rational, 3>& v) {
  return "[" + to_string(v[0]) + ":" + to_string(v[1]) + ":" + to_string(v[2]) + "]";
}

}  // namespace

MarkedPoint::MarkedPoint(Rational x, Rational y, Rational z) : coords(normalized({x, y, z}, "point")) {}

MarkedPoint MarkedPoint::from_vector(const RationalVector& v) {
  if (v.size() != 3) throw Error(ErrorCode::InvalidArgument, "points need three coordinates");
  return MarkedPoint(v[0], v[1], v[2]);
}

std::string MarkedPoint::str() const { return coords_str(coords); }

Line::Line(Rational a, Rational b, Rational c) : coeffs(normalized({a, b, c}, "line")) {}

Line Line::through(const MarkedPoint& p, const MarkedPoint& q) {
  const auto& a = p.coords;
  const auto& b = q.coords;
  return Line(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

bool Line::contains(const MarkedPoint& p) const {
  return coeffs[0] * p.coords[0] + coeffs[1] * p.coords[1] + coeffs[2] * p.coords[2] == 0;
}

std::pair<MarkedPoint, MarkedPoint> Line::span() const {
  auto k = kernel(Matrix::from_rows({{coeffs[0], coeffs[1], coeffs[2]}}));
  return {MarkedPoint::from_vector(k.at(0)), MarkedPoint::from_vector(k.at(1))};
}

std::string Line::str() const { return coords_str(coeffs); }

MarkedPoint apply(const Matrix& a, const MarkedPoint& p) {
  return MarkedPoint::from_vector(a * RationalVector(p.coords.begin(), p.coords.end()));
}

// ---- forms -------------------------------------------------------------------

HomogeneousForm::HomogeneousForm(int degree, Poly3 poly) : degree_(degree), poly_(std::move(poly)) {
  if (degree_ < 0) throw Error(ErrorCode::InvalidArgument, "negative degree");
  for (const auto& [e, c] : poly_.terms())
    if (e[0] + e[1] + e[2] != degree_) throw Error(ErrorCode::InvalidArgument, "form is not homogeneous of degree " + std::to_string(degree_));
}

HomogeneousForm HomogeneousForm::monomial(int i, int j, int k, const Rational& c) {
  return HomogeneousForm(i + j + k, Poly3(Poly3::Terms{{{i, j, k}, c}}));
}

HomogeneousForm HomogeneousForm::zero(int degree) { return HomogeneousForm(degree, Poly3()); }

HomogeneousForm HomogeneousForm::operator+(const HomogeneousForm& o) const {
  if (degree_ != o.degree_) throw Error(ErrorCode::InvalidArgument, "adding forms of different degrees");
  return HomogeneousForm(degree_, poly_ + o.poly_);
}

HomogeneousForm HomogeneousForm::operator-(const HomogeneousForm& o) const { return *this + o * Rational(-1); }

HomogeneousForm HomogeneousForm::operator*(const HomogeneousForm& o) const {
  return HomogeneousForm(degree_ + o.degree_, poly_ * o.poly_);
}

HomogeneousForm HomogeneousForm::operator*(const Rational& s) const { return HomogeneousForm(degree_, poly_ * s); }

HomogeneousForm HomogeneousForm::pow(int k) const { return HomogeneousForm(degree_ * k, poly_.pow(k)); }

Rational HomogeneousForm::evaluate(const MarkedPoint& p) const { return poly_.evaluate(p.coords); }

HomogeneousForm HomogeneousForm::derivative(std::size_t i) const {
  return HomogeneousForm(std::max(degree_ - 1, 0), poly_.derivative(i));
}

HomogeneousForm HomogeneousForm::transformed(const Matrix& a) const {
  if (a.rows() != 3 || a.cols() != 3) throw Error(ErrorCode::InvalidArgument, "projectivity must be 3x3");
  std::array<Poly3, 3> subs;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) subs[r] = subs[r] + Poly3::variable(c) * a(r, c);
  return HomogeneousForm(degree_, poly_.substitute<3>(subs));
}

Germ HomogeneousForm::local_germ(const MarkedPoint& p) const {
  std::size_t i = 0;
  while (p.coords[i] == 0) ++i;
  std::array<Germ, 3> subs;
  std::size_t local = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j == i) {
      subs[j] = Germ::constant(1);
    } else {
      subs[j] = Germ::constant(p.coords[j]) + Germ::variable(local++);
    }
  }
  return poly_.substitute<2>(subs);
}

namespace {

template <std::size_t N>
std::string poly_str(const Poly<N>& p, const std::array<const char*, N>& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  // highest total degree first, then lexicographically descending
  std::vector<std::pair<typename Poly<N>::Exponent, Rational>> terms(p.terms().rbegin(), p.terms().rend());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return Poly<N>::total(a.first) > Poly<N>::total(b.first);
  });
  for (const auto& [e, c] : terms) {
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    const Rational a = abs(c);
    bool any = false;
    for (std::size_t i = 0; i < N; ++i) any = any || e[i] > 0;
    if (a != 1 || !any) out << to_string(a) << (any ? "*" : "");
    bool star = false;
    for (std::size_t i = 0; i < N; ++i) {
      if (e[i] == 0) continue;
      out << (star ? "*" : "") << vars[i];
      if (e[i] > 1) out << "^" << e[i];
      star = true;
    }
    first = false;
  }
  return out.str();
}

}  // namespace

std::string HomogeneousForm::str() const { return poly_str<3>(poly_, {"x", "y", "z"}); }

std::string germ_str(const Germ& g) { return poly_str<2>(g, {"u", "v"}); }

HomogeneousForm form_x() { return HomogeneousForm::monomial(1, 0, 0); }
HomogeneousForm form_y() { return HomogeneousForm::monomial(0, 1, 0); }
HomogeneousForm form_z() { return HomogeneousForm::monomial(0, 0, 1); }

std::vector<std::array<int, 3>> monomials_of_degree(int d) {
  std::vector<std::array<int, 3>> out;
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
  return out;
}

std::string monomial_name(const std::array<int, 3>& e) {
  return poly_str<3>(Poly3(Poly3::Terms{{e, Rational(1)}}), {"x", "y", "z"});
}

}  // namespace sv

namespace sv {

namespace {

template <std::size_t N>
class PolyParser {
 public:
  PolyParser(const std::string& text, const std::array<char, N>& names) : s_(text), names_(names) {}

  Poly<N> run() {
    auto p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Parse, "polynomial column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(s_.substr(start, pos_ - start));
  }
  Poly<N> expr() {
    Poly<N> acc;
    bool first = true;
    while (true) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      else if (!first && !eat('+')) break;
      else if (first) eat('+');
      auto t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return acc;
  }
  Poly<N> term() {
    auto p = power();
    while (eat('*')) p = p * power();
    return p;
  }
  Poly<N> power() {
    auto p = primary();
    if (eat('^')) {
      const Integer e = integer();
      if (e > 1000) fail("exponent too large");
      p = p.pow(static_cast<int>(e.get_si()));
    }
    return p;
  }
  Poly<N> primary() {
    skip();
    if (eat('(')) {
      auto p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      Rational c(integer());
      if (eat('/')) {
        const Integer d = integer();
        if (d == 0) fail("zero denominator");
        c /= Rational(d);
      }
      return Poly<N>::constant(c);
    }
    for (std::size_t i = 0; i < N; ++i)
      if (pos_ < s_.size() && s_[pos_] == names_[i]) {
        ++pos_;
        return Poly<N>::variable(i);
      }
    fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
  }

  const std::string& s_;
  std::array<char, N> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Germ parse_germ(const std::string& text, const std::array<char, 2>& names) {
  return PolyParser<2>(text, names).run();
}

Poly3 parse_poly3(const std::string& text) { return PolyParser<3>(text, {'x', 'y', 'z'}).run(); }

HomogeneousForm parse_form(const std::string& text) {
  const auto p = parse_poly3(text);
  if (p.is_zero()) throw Error(ErrorCode::Parse, "zero form");
  return HomogeneousForm(p.degree(), p);
}

}  // namespace sv
