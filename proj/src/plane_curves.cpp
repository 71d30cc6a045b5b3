#include "sv/plane_curves.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace sv {

namespace {

using Poly1 = Poly<1>;

// F(P s + Q t) as a binary form in (s, t).
Germ restrict_binary(const HomogeneousForm& f, const MarkedPoint& p, const MarkedPoint& q) {
  std::array<Germ, 3> subs;
  for (std::size_t i = 0; i < 3; ++i)
    subs[i] = Germ::variable(0) * p.coords[i] + Germ::variable(1) * q.coords[i];
  return f.poly().substitute<2>(subs);
}

// (alpha, beta) with m = alpha P + beta Q up to scale.
std::pair<Rational, Rational> line_coords(const MarkedPoint& m, const MarkedPoint& p, const MarkedPoint& q) {
  // least squares is overkill: pick two coordinates where P, Q are independent
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      Rational det = p.coords[i] * q.coords[j] - p.coords[j] * q.coords[i];
      if (det == 0) continue;
      Rational a = (m.coords[i] * q.coords[j] - m.coords[j] * q.coords[i]) / det;
      Rational b = (p.coords[i] * m.coords[j] - p.coords[j] * m.coords[i]) / det;
      return {a, b};
    }
  throw Error(ErrorCode::Internal, "degenerate line span");
}

int root_multiplicity(const Germ& binary, int d, const Rational& a, const Rational& b) {
  RationalVector c(static_cast<std::size_t>(d) + 1);
  for (const auto& [e, v] : binary.terms()) c[static_cast<std::size_t>(e[1])] += v;
  UPoly h(c);
  if (a == 0) return d - h.degree();
  const UPoly lin = UPoly::linear_root(b / a);
  int m = 0;
  while (!h.is_zero()) {
    auto [q, r] = h.divmod(lin);
    if (!r.is_zero()) break;
    h = q;
    ++m;
  }
  return m;
}

}  // namespace

RestrictionPattern restrict_to_line(const HomogeneousForm& f, const Line& line, const std::vector<MarkedPoint>& marked) {
  RestrictionPattern out;
  auto [p, q] = line.span();
  Germ b = restrict_binary(f, p, q);
  if (b.is_zero()) {
    out.contained = true;
    return out;
  }
  const int d = f.degree();
  std::vector<std::pair<Rational, Rational>> used;
  int total = 0;
  for (const auto& m : marked) {
    if (!line.contains(m)) throw Error(ErrorCode::InvalidArgument, "marked point " + m.str() + " is not on the line");
    auto ab = line_coords(m, p, q);
    used.push_back(ab);
    const int k = root_multiplicity(b, d, ab.first, ab.second);
    out.orders.push_back(k);
    total += k;
  }
  out.residual = d - total;
  auto roots = binary_roots(b);
  for (const auto& r : roots.rational) {
    bool is_marked = false;
    for (const auto& [a, bb] : used) is_marked = is_marked || a * r.t == bb * r.s;
    if (!is_marked) out.residual_groups.emplace_back(1, r.multiplicity);
  }
  for (const auto& g : roots.irrational) out.residual_groups.push_back(g);
  std::sort(out.residual_groups.begin(), out.residual_groups.end());
  return out;
}

// ---- multiplicity trees -------------------------------------------------------

namespace {

InfinitelyNearPoint build_tree(const Germ& f, int depth, std::string direction) {
  InfinitelyNearPoint node;
  node.direction = std::move(direction);
  node.multiplicity = f.is_zero() ? -1 : f.order();
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "multiplicity of the zero germ is undefined");
  const int m = node.multiplicity;
  if (m <= 1) return node;
  if (depth <= 1) {
    node.truncated = true;
    return node;
  }
  auto roots = binary_roots(f.homogeneous_part(m));
  node.irrational = roots.irrational;
  const Germ u = Germ::variable(0);
  const Germ v = Germ::variable(1);
  for (const auto& r : roots.rational) {
    Germ g;
    std::string label;
    if (r.s == 1) {
      // v = u (t + v1)
      g = f.substitute<2>({u, u * (Germ::constant(r.t) + v)}).shifted_down({m, 0});
      label = "[1:" + to_string(r.t) + "]";
    } else {
      // u = v u1
      g = f.substitute<2>({v * u, v}).shifted_down({0, m});
      label = "[0:1]";
    }
    node.children.push_back(build_tree(g, depth - 1, label));
    node.children.back().cone_multiplicity = r.multiplicity;
  }
  return node;
}

}  // namespace

InfinitelyNearPoint mult_sequence(const Germ& f, int depth) {
  if (depth <= 0) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero germ");
  if (f.order() == 0) {
    InfinitelyNearPoint p;
    p.multiplicity = 0;
    return p;
  }
  return build_tree(f, depth, "");
}

InfinitelyNearPoint mult_sequence(const HomogeneousForm& f, const MarkedPoint& p, int depth) {
  return mult_sequence(f.local_germ(p), depth);
}

std::vector<int> principal_sequence(const InfinitelyNearPoint& tree) {
  std::vector<int> seq{tree.multiplicity};
  const InfinitelyNearPoint* node = &tree;
  while (!node->children.empty()) {
    node = &*std::max_element(node->children.begin(), node->children.end(),
                              [](const auto& a, const auto& b) { return a.multiplicity < b.multiplicity; });
    if (node->multiplicity <= 1) break;
    seq.push_back(node->multiplicity);
  }
  return seq;
}

long delta_of(const InfinitelyNearPoint& tree) {
  long m = std::max(tree.multiplicity, 0);
  long d = m * (m - 1) / 2;
  for (const auto& c : tree.children) d += delta_of(c);
  return d;
}

bool delta_complete(const InfinitelyNearPoint& tree) {
  if (tree.truncated) return false;
  for (const auto& [deg, mult] : tree.irrational)
    if (mult >= 2) return false;
  for (const auto& c : tree.children)
    if (!delta_complete(c)) return false;
  return true;
}

std::string to_string(const InfinitelyNearPoint& tree) {
  std::ostringstream out;
  out << tree.multiplicity;
  if (tree.truncated) out << "+";
  std::vector<std::string> parts;
  for (const auto& c : tree.children)
    if (c.multiplicity >= 1) parts.push_back(c.direction + ":" + to_string(c));
  for (const auto& [deg, mult] : tree.irrational) parts.push_back("irr" + std::to_string(deg) + "x" + std::to_string(mult));
  if (!parts.empty()) {
    out << "(";
    for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? "," : "") << parts[i];
    out << ")";
  }
  return out.str();
}

// ---- local algebras -------------------------------------------------------------

namespace {

std::size_t graded_index(int a, int b) {
  const auto s = static_cast<std::size_t>(a + b);
  return s * (s + 1) / 2 + static_cast<std::size_t>(b);
}

long truncated_dim(const std::vector<Germ>& gens, int n) {
  SparseEchelon ech;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    const int og = g.order();
    if (og >= n) continue;
    const Germ low = g.truncated_below(n);
    for (int s = 0; s < n - og; ++s)
      for (int b = 0; b <= s; ++b) {
        const int a = s - b;
        SparseEchelon::Row row;
        for (const auto& [e, c] : low.terms()) {
          if (e[0] + e[1] + s >= n) continue;
          row[graded_index(e[0] + a, e[1] + b)] = c;
        }
        ech.insert(std::move(row));
      }
  }
  const long cols = static_cast<long>(n) * (n + 1) / 2;
  return cols - static_cast<long>(ech.rank());
}

}  // namespace

std::optional<long> local_algebra_dim(const std::vector<Germ>& gens, int start_bound, int doublings) {
  int n = std::max(start_bound, 2);
  for (int round = 0; round <= doublings; ++round, n *= 2) {
    const long here = truncated_dim(gens, n);
    if (here == 0) return 0;
    if (truncated_dim(gens, n + 1) == here) return here;
  }
  return std::nullopt;
}

std::optional<long> milnor_number(const Germ& f, int start_bound) {
  return local_algebra_dim({f.derivative(0), f.derivative(1)}, start_bound);
}

std::optional<long> tjurina_number(const Germ& f, int start_bound) {
  return local_algebra_dim({f, f.derivative(0), f.derivative(1)}, start_bound);
}

std::optional<long> intersection_multiplicity(const Germ& f, const Germ& g, int start_bound) {
  return local_algebra_dim({f, g}, start_bound);
}

std::string AnType::label() const {
  switch (kind) {
    case AnKind::NotOnCurve: return "not-on-curve";
    case AnKind::Smooth: return "smooth";
    case AnKind::A: return "A" + std::to_string(n);
    case AnKind::Other: return "other";
    case AnKind::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

AnType an_type_at(const Germ& f) {
  if (f.is_zero()) return {AnKind::Other, 0};
  const int m = f.order();
  if (m == 0) return {AnKind::NotOnCurve, 0};
  if (m == 1) return {AnKind::Smooth, 0};
  if (m >= 3) return {AnKind::Other, 0};
  // candidate from the run of double points: A_{2k-1} or A_{2k}
  auto seq = principal_sequence(mult_sequence(f, 8));
  int k = 0;
  while (k < static_cast<int>(seq.size()) && seq[static_cast<std::size_t>(k)] == 2) ++k;
  const int candidate = 2 * k;
  auto mu = milnor_number(f, 2 * candidate + 2);
  if (!mu) return {AnKind::Inconclusive, 0};
  return {AnKind::A, static_cast<int>(*mu)};
}

AnType an_type_at(const HomogeneousForm& f, const MarkedPoint& p) { return an_type_at(f.local_germ(p)); }

ThreeThreeProfile detect_33_point(const Germ& f) {
  ThreeThreeProfile out;
  if (f.is_zero() || f.order() != 3) return out;
  auto tree = mult_sequence(f, 4);
  out.sequence = principal_sequence(tree);
  const InfinitelyNearPoint* second = nullptr;
  int triples = 0;
  for (const auto& c : tree.children)
    if (c.multiplicity == 3) {
      ++triples;
      second = &c;
    }
  if (triples != 1) return out;
  out.is_33 = true;
  // the second triple point's cone: three simple directions give the simple
  // elliptic profile, one double direction resolved at once gives the cusp
  bool simple = std::all_of(second->irrational.begin(), second->irrational.end(), [](auto g) { return g.second == 1; });
  int doubles = 0;
  int double_child_mult = 0;
  for (const auto& c : second->children) {
    if (c.cone_multiplicity < 2) continue;
    ++doubles;
    double_child_mult = c.cone_multiplicity == 2 ? c.multiplicity : 99;
  }
  if (simple && doubles == 0) out.n = 6;
  else if (simple && doubles == 1 && double_child_mult == 1) out.n = 7;
  return out;
}

ThreeThreeProfile detect_33_point(const HomogeneousForm& f, const MarkedPoint& p) {
  return detect_33_point(f.local_germ(p));
}

DecompositionCheck check_decomposition(const Germ& f, const Germ& d1, const Germ& d2) {
  DecompositionCheck out;
  const Germ prod = d1 * d2;
  if (!prod.is_zero() && !f.is_zero()) {
    const auto& [e, c] = *prod.terms().begin();
    const Rational scale = f.coeff(e) / c;
    out.product_matches = scale != 0 && prod * scale == f;
  }
  out.intersection = intersection_multiplicity(d1, d2);
  out.first_type = an_type_at(d1);
  return out;
}

// ---- linear systems ---------------------------------------------------------------

ConditionSystem::ConditionSystem(int degree) : degree_(degree), monomials_(monomials_of_degree(degree)) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative degree");
}

std::size_t ConditionSystem::rank() const {
  if (rows_.empty()) return 0;
  return sv::rank(Matrix::from_rows(rows_));
}

void ConditionSystem::add_row(RationalVector row, std::string label) {
  if (row.size() != space_dim()) throw Error(ErrorCode::InvalidArgument, "functional has the wrong length");
  rows_.push_back(std::move(row));
  labels_.push_back(std::move(label));
}

void ConditionSystem::add_multiplicity(const MarkedPoint& p, int m) {
  std::vector<Germ> germs;
  for (const auto& e : monomials_) germs.push_back(HomogeneousForm::monomial(e[0], e[1], e[2]).local_germ(p));
  for (int s = 0; s < m; ++s)
    for (int b = 0; b <= s; ++b) {
      RationalVector row;
      for (const auto& g : germs) row.push_back(g.coeff({s - b, b}));
      add_row(row, "mult>=" + std::to_string(m) + "@" + p.str());
    }
}

void ConditionSystem::add_line_order(const Line& line, const MarkedPoint& p, int k) {
  if (!line.contains(p)) throw Error(ErrorCode::InvalidArgument, "point is not on the line");
  auto [a, b] = line.span();
  const MarkedPoint q = (a == p) ? b : a;
  std::array<Poly1, 3> subs;
  for (std::size_t i = 0; i < 3; ++i) subs[i] = Poly1::constant(p.coords[i]) + Poly1::variable(0) * q.coords[i];
  std::vector<Poly1> restricted;
  for (const auto& e : monomials_) restricted.push_back(HomogeneousForm::monomial(e[0], e[1], e[2]).poly().substitute<1>(subs));
  for (int j = 0; j < k; ++j) {
    RationalVector row;
    for (const auto& r : restricted) row.push_back(r.coeff({j}));
    add_row(row, "order>=" + std::to_string(k) + "@" + p.str() + "on" + line.str());
  }
}

void ConditionSystem::add_monomial_exclusion(const std::array<int, 3>& e) {
  auto it = std::find(monomials_.begin(), monomials_.end(), e);
  if (it == monomials_.end()) throw Error(ErrorCode::InvalidArgument, "monomial of the wrong degree");
  RationalVector row(space_dim());
  row[static_cast<std::size_t>(it - monomials_.begin())] = 1;
  add_row(row, "no " + monomial_name(e));
}

void ConditionSystem::add_infinitely_near(const MarkedPoint& p, const Rational& t, int m0, int m1) {
  const Germ u = Germ::variable(0);
  const Germ v = Germ::variable(1);
  std::vector<Germ> blown;
  for (const auto& e : monomials_) {
    Germ g = HomogeneousForm::monomial(e[0], e[1], e[2]).local_germ(p);
    blown.push_back(g.substitute<2>({u, u * (Germ::constant(t) + v)}));
  }
  for (int s = 0; s < m1; ++s)
    for (int b = 0; b <= s; ++b) {
      RationalVector row;
      for (const auto& g : blown) row.push_back(g.coeff({m0 + s - b, b}));
      add_row(row, "near-mult>=" + std::to_string(m1) + "@" + p.str() + "[1:" + to_string(t) + "]");
    }
}

ConditionSystem ConditionSystem::transported(const Matrix& a) const {
  ConditionSystem out(degree_);
  std::map<std::array<int, 3>, std::size_t> index;
  for (std::size_t i = 0; i < monomials_.size(); ++i) index[monomials_[i]] = i;
  std::vector<RationalVector> image;  // image[j][i]: coefficient of monomial i in m_j o A
  for (const auto& e : monomials_) {
    RationalVector c(space_dim());
    for (const auto& [f, v] : HomogeneousForm::monomial(e[0], e[1], e[2]).transformed(a).poly().terms()) c[index.at(f)] = v;
    image.push_back(c);
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    RationalVector row(space_dim());
    for (std::size_t j = 0; j < space_dim(); ++j) row[j] = dot(rows_[r], image[j]);
    out.add_row(row, labels_[r]);
  }
  return out;
}

long linear_system_dim(const ConditionSystem& system) {
  return static_cast<long>(system.space_dim()) - static_cast<long>(system.rank()) - 1;
}

Matrix stabilizer_constraints(const std::vector<MarkedPoint>& points, const std::vector<Line>& lines) {
  std::vector<RationalVector> rows;
  auto idx = [](std::size_t r, std::size_t c) { return 3 * r + c; };
  for (const auto& pt : points) {
    const auto& p = pt.coords;
    // (A p) x p = 0, component k uses entries i, j
    for (auto [i, j] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 0}, {0, 1}}) {
      RationalVector row(9);
      for (std::size_t c = 0; c < 3; ++c) {
        row[idx(i, c)] += p[c] * p[j];
        row[idx(j, c)] -= p[c] * p[i];
      }
      rows.push_back(row);
    }
  }
  for (const auto& ln : lines) {
    const auto& l = ln.coeffs;
    // (l A) x l = 0
    for (auto [i, j] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 0}, {0, 1}}) {
      RationalVector row(9);
      for (std::size_t r = 0; r < 3; ++r) {
        row[idx(r, i)] += l[r] * l[j];
        row[idx(r, j)] -= l[r] * l[i];
      }
      rows.push_back(row);
    }
  }
  if (rows.empty()) return Matrix(0, 9);
  return Matrix::from_rows(rows);
}

long stabilizer_dim(const std::vector<MarkedPoint>& points, const std::vector<Line>& lines) {
  Matrix c = stabilizer_constraints(points, lines);
  std::vector<RationalVector> rows;
  for (std::size_t r = 0; r < c.rows(); ++r) rows.push_back(c.row(r));
  RationalVector trace(9);
  trace[0] = trace[4] = trace[8] = 1;
  rows.push_back(trace);
  // with the trace row the system has 9 - dim unknowns fixed; traceless part is 8 - rank(c | traceless)
  return 9 - static_cast<long>(rank(Matrix::from_rows(rows)));
}

long hilbert_function_jacobian(const HomogeneousForm& f, int k) {
  const auto target = monomials_of_degree(k);
  std::map<std::array<int, 3>, std::size_t> index;
  for (std::size_t i = 0; i < target.size(); ++i) index[target[i]] = i;
  const int shift = k - (f.degree() - 1);
  if (shift < 0) return static_cast<long>(target.size());
  SparseEchelon ech;
  for (std::size_t var = 0; var < 3; ++var) {
    const auto d = f.derivative(var);
    for (const auto& m : monomials_of_degree(shift)) {
      SparseEchelon::Row row;
      for (const auto& [e, c] : d.poly().terms()) row[index.at({e[0] + m[0], e[1] + m[1], e[2] + m[2]})] = c;
      ech.insert(std::move(row));
    }
  }
  return static_cast<long>(target.size() - ech.rank());
}

std::optional<long> global_tjurina(const HomogeneousForm& f) {
  const int d = f.degree();
  if (d < 2) return 0;
  const long a = hilbert_function_jacobian(f, 3 * d - 5);
  const long b = hilbert_function_jacobian(f, 3 * d - 4);
  const long c = hilbert_function_jacobian(f, 3 * d - 3);
  if (a != b || b != c) return std::nullopt;
  return a;
}

// ---- sextic families ------------------------------------------------------------------

ConditionSystem SexticFamily::conditions() const {
  ConditionSystem s(5);
  for (const auto& e : excluded_monomials) s.add_monomial_exclusion(e);
  return s;
}

long SexticFamily::parameter_count() const {
  return linear_system_dim(conditions()) + 1 + (has_lambda ? 1 : 0);
}

long orbit_dim_count(const SexticFamily& family) {
  const long params = family.parameter_count();
  if (params <= 0) throw Error(ErrorCode::InvalidArgument, "empty family");
  return params - stabilizer_dim(family.points, family.lines);
}

long orbit_dim_count_transported(const SexticFamily& family, const Matrix& a) {
  auto inv = inverse(a);
  if (!inv) throw Error(ErrorCode::InvalidArgument, "projectivity is singular");
  const ConditionSystem moved = family.conditions().transported(*inv);
  std::vector<MarkedPoint> points;
  for (const auto& p : family.points) points.push_back(apply(a, p));
  std::vector<Line> lines;
  for (const auto& l : family.lines) {
    RationalVector row{l.coeffs[0], l.coeffs[1], l.coeffs[2]};
    RationalVector image = inv->transpose() * row;  // l A^{-1}
    lines.emplace_back(image[0], image[1], image[2]);
  }
  const long params = linear_system_dim(moved) + 1 + (family.has_lambda ? 1 : 0);
  return params - stabilizer_dim(points, lines);
}

namespace {

HomogeneousForm member(const SexticFamily& fam, const Rational& lambda) {
  std::mt19937 rng(6151);
  std::uniform_int_distribution<int> coef(1, 7);
  std::bernoulli_distribution sign(0.5);
  HomogeneousForm f5 = HomogeneousForm::zero(5);
  for (const auto& e : monomials_of_degree(5)) {
    long c = coef(rng) * (sign(rng) ? 1 : -1);
    if (std::find(fam.excluded_monomials.begin(), fam.excluded_monomials.end(), e) != fam.excluded_monomials.end()) continue;
    f5 = f5 + HomogeneousForm::monomial(e[0], e[1], e[2], c);
  }
  return fam.fixed(lambda) + form_z() * f5;
}

}  // namespace

FamilyCheck check_family(const SexticFamily& family) {
  FamilyCheck out;
  out.count = orbit_dim_count(family);
  std::vector<Rational> lambdas;
  if (family.has_lambda) {
    for (auto l : {make_rational(2), make_rational(3), make_rational(-1, 2), make_rational(5, 3)})
      if (std::find(family.excluded_lambda.begin(), family.excluded_lambda.end(), l) == family.excluded_lambda.end())
        lambdas.push_back(l);
  } else {
    lambdas.push_back(Rational(0));
  }
  const Line z0(0, 0, 1);
  for (const auto& l : lambdas) {
    const HomogeneousForm delta = member(family, l);
    auto marked = family.pattern_points(l);
    auto pat = restrict_to_line(delta, z0, marked);
    std::vector<int> p = pat.orders;
    p.push_back(pat.residual);
    out.patterns.push_back(p);
    if (family.singular_point) out.singular_types.push_back(an_type_at(delta, *family.singular_point));
    out.global_tau.push_back(global_tjurina(delta));
    std::vector<MarkedPoint> all = marked;
    for (const auto& q : family.points)
      if (std::find(all.begin(), all.end(), q) == all.end()) all.push_back(q);
    long sum = 0;
    for (const auto& q : all) {
      Germ g = delta.local_germ(q);
      if (g.order() >= 2) sum += tjurina_number(g).value_or(-1000);
    }
    out.local_tau_sum.push_back(sum);
  }
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    out.lambda_stable = out.lambda_stable && out.patterns[i] == out.patterns[0] && out.global_tau[i] == out.global_tau[0] &&
                        out.local_tau_sum[i] == out.local_tau_sum[0];
    if (!out.singular_types.empty()) out.lambda_stable = out.lambda_stable && out.singular_types[i] == out.singular_types[0];
  }
  return out;
}

namespace {

std::vector<SexticFamily> build_families() {
  const auto x = form_x();
  const auto y = form_y();
  const MarkedPoint p100(1, 0, 0), p010(0, 1, 0), p110(1, 1, 0);
  const Line z0(0, 0, 1);
  const std::array<int, 3> x5{5, 0, 0}, yx4{4, 1, 0};
  std::vector<SexticFamily> fams;
  auto add = [&](SexticFamily f) { fams.push_back(std::move(f)); };

  SexticFamily f;
  f.type = "Z11";
  f.variant = "case 1";
  f.fixed = [=](const Rational& l) { return y.pow(3) * (x * l - y).pow(2) * (x - y); };
  f.has_lambda = true;
  f.excluded_lambda = {0, 1};
  f.points = {p100, p110};
  f.pattern_points = [=](const Rational& l) { return std::vector<MarkedPoint>{p100, MarkedPoint(1, l, 0), p110}; };
  f.pattern = {3, 2, 1};
  f.table_count = 18;
  add(f);

  f = SexticFamily{};
  f.type = "Z11";
  f.variant = "case 2";
  f.fixed = [=](const Rational&) { return y.pow(3) * (x - y).pow(3); };
  f.points = {p100, p110};
  f.pattern_points = [=](const Rational&) { return std::vector<MarkedPoint>{p100, p110}; };
  f.pattern = {3, 3};
  f.table_count = 17;
  add(f);

  f = SexticFamily{};
  f.type = "Z11";
  f.variant = "case 3";
  f.fixed = [=](const Rational&) { return y.pow(5) * (x - y); };
  f.points = {p100, p110};
  f.pattern_points = [=](const Rational&) { return std::vector<MarkedPoint>{p100, p110}; };
  f.pattern = {5, 1};
  f.table_count = 17;
  add(f);

  f = SexticFamily{};
  f.type = "W12";
  f.variant = "case 1";
  f.fixed = [=](const Rational& l) { return y.pow(4) * (y - x * l).pow(2); };
  f.has_lambda = true;
  f.excluded_lambda = {0};
  f.points = {p100};
  f.lines = {z0};
  f.pattern_points = [=](const Rational& l) { return std::vector<MarkedPoint>{p100, MarkedPoint(1, l, 0)}; };
  f.pattern = {4, 2};
  f.table_count = 17;
  add(f);

  f = SexticFamily{};
  f.type = "W12";
  f.variant = "case 2";
  f.fixed = [=](const Rational&) { return y.pow(6); };
  f.points = {p100};
  f.lines = {z0};
  f.pattern_points = [=](const Rational&) { return std::vector<MarkedPoint>{p100}; };
  f.pattern = {6};
  f.table_count = 16;
  add(f);

  f = SexticFamily{};
  f.type = "W13";
  f.variant = "case 1";
  f.fixed = [=](const Rational&) { return y.pow(4) * x.pow(2); };
  f.excluded_monomials = {x5};
  f.points = {p100, p010};
  f.pattern_points = [=](const Rational&) { return std::vector<MarkedPoint>{p100, p010}; };
  f.pattern = {4, 2};
  f.singular_point = p100;
  f.singular_an = 1;
  f.table_count = 16;
  add(f);

  f = SexticFamily{};
  f.type = "Z12";
  f.variant = "case 1";
  f.fixed = [=](const Rational& l) { return y.pow(3) * x.pow(2) * (x - y * l); };
  f.has_lambda = true;
  f.excluded_lambda = {0};
  f.excluded_monomials = {x5};
  f.points = {p100, p010};
  f.pattern_points = [=](const Rational& l) { return std::vector<MarkedPoint>{p100, p010, MarkedPoint(l, 1, 0)}; };
  f.pattern = {3, 2, 1};
  f.singular_point = p100;
  f.singular_an = 1;
  f.table_count = 17;
  add(f);

  f = SexticFamily{};
  f.type = "Z12";
  f.variant = "case 2";
  f.fixed = [=](const Rational&) { return y.pow(3) * x.pow(3); };
  f.excluded_monomials = {x5};
  f.points = {p100, p010};
  f.pattern_points = [=](const Rational&) { return std::vector<MarkedPoint>{p100, p010}; };
  f.pattern = {3, 3};
  f.singular_point = p100;
  f.singular_an = 1;
  f.table_count = 16;
  add(f);

  f = SexticFamily{};
  f.type = "Z13";
  f.variant = "case 1";
  f.fixed = [=](const Rational& l) { return y.pow(3) * x.pow(2) * (x - y * l); };
  f.has_lambda = true;
  f.excluded_lambda = {0};
  f.excluded_monomials = {x5, yx4};
  f.points = {p100, p010};
  f.pattern_points = [=](const Rational& l) { return std::vector<MarkedPoint>{p100, p010, MarkedPoint(l, 1, 0)}; };
  f.pattern = {3, 2, 1};
  f.singular_point = p100;
  f.singular_an = 2;
  f.table_count = 16;
  add(f);

  f = SexticFamily{};
  f.type = "Z13";
  f.variant = "case 2";
  f.fixed = [=](const Rational&) { return y.pow(3) * x.pow(3); };
  f.excluded_monomials = {x5};
  f.points = {p100, p010};
  f.pattern_points = [=](const Rational&) { return std::vector<MarkedPoint>{p100, p010}; };
  f.pattern = {3, 3};
  f.singular_point = p100;
  f.singular_an = 1;
  f.table_count = 15;
  f.discrepancy = "z13-case2-count";
  add(f);

  f.variant = "case 2 without yx^4";
  f.excluded_monomials = {x5, yx4};
  f.singular_an = 2;
  f.discrepancy.clear();
  add(f);
  return fams;
}

}  // namespace

const std::vector<SexticFamily>& sextic_families() {
  static const std::vector<SexticFamily> fams = build_families();
  return fams;
}

const SexticFamily& find_family(const std::string& type, const std::string& variant) {
  for (const auto& f : sextic_families())
    if (f.type == type && f.variant == variant) return f;
  throw Error(ErrorCode::InvalidArgument, "no sextic family " + type + " " + variant);
}

}  // namespace sv
