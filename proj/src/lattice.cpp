#include "sv/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sv {

IntersectionLattice::IntersectionLattice(std::vector<std::string> names, Matrix gram)
    : names_(std::move(names)), gram_(std::move(gram)) {
  if (gram_.rows() != names_.size() || gram_.cols() != names_.size())
    throw Error(ErrorCode::InvalidArgument, "gram size does not match basis");
  if (!gram_.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "gram matrix is not symmetric");
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw Error(ErrorCode::InvalidArgument, "duplicate generator name");
}

std::optional<std::size_t> IntersectionLattice::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t IntersectionLattice::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorCode::UnknownCurve, "no generator named " + name);
  return *i;
}

bool is_isometry(const IntersectionLattice& a, const IntersectionLattice& b, const Matrix& p) {
  if (p.rows() != a.size() || p.cols() != b.size()) return false;
  return p.transpose() * a.gram() * p == b.gram();
}

DivisorClass::DivisorClass(LatticePtr lattice, RationalVector coeffs)
    : lattice_(std::move(lattice)), coeffs_(std::move(coeffs)) {
  if (!lattice_ || coeffs_.size() != lattice_->size())
    throw Error(ErrorCode::LatticeMismatch, "coefficient vector does not match the lattice basis");
}

DivisorClass DivisorClass::zero(LatticePtr lattice) {
  RationalVector z(lattice->size());
  return DivisorClass(std::move(lattice), std::move(z));
}

DivisorClass DivisorClass::generator(LatticePtr lattice, const std::string& name) {
  RationalVector z(lattice->size());
  z[lattice->index_of(name)] = 1;
  return DivisorClass(std::move(lattice), std::move(z));
}

Rational DivisorClass::coeff(const std::string& name) const { return coeffs_[lattice_->index_of(name)]; }

bool DivisorClass::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& r) { return is_integer(r); });
}

void DivisorClass::check_same(const DivisorClass& o) const {
  if (!lattice_ || !o.lattice_) throw Error(ErrorCode::LatticeMismatch, "class without a lattice");
  if (lattice_ != o.lattice_ && !(*lattice_ == *o.lattice_))
    throw Error(ErrorCode::LatticeMismatch, "classes belong to different lattices");
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
  check_same(o);
  RationalVector c = coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
  return DivisorClass(lattice_, c);
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const { return *this + o * Rational(-1); }

DivisorClass DivisorClass::operator*(const Rational& s) const {
  RationalVector c = coeffs_;
  for (auto& x : c) x *= s;
  return DivisorClass(lattice_, c);
}

bool DivisorClass::operator==(const DivisorClass& o) const {
  if (!lattice_ || !o.lattice_) return lattice_ == o.lattice_;
  return *lattice_ == *o.lattice_ && coeffs_ == o.coeffs_;
}

Json DivisorClass::to_json() const {
  Json j = Json::object();
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) j[lattice_->names()[i]] = to_string(coeffs_[i]);
  return j;
}

Rational intersect(const DivisorClass& a, const DivisorClass& b) {
  if (!a.lattice() || !b.lattice() || (a.lattice() != b.lattice() && !(*a.lattice() == *b.lattice())))
    throw Error(ErrorCode::LatticeMismatch, "classes belong to different lattices");
  return dot(a.coeffs(), a.lattice()->gram() * b.coeffs());
}

bool numerically_equal(const DivisorClass& a, const DivisorClass& b) {
  auto d = a - b;
  auto v = d.lattice()->gram() * d.coeffs();
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
}

std::string format_class(const DivisorClass& d) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < d.coeffs().size(); ++i) {
    const Rational& c = d.coeffs()[i];
    if (c == 0) continue;
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << "-";
    Rational a = abs(c);
    if (a != 1) out << to_string(a);
    out << d.lattice()->names()[i];
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

std::string to_string(NakaiVerdict v) {
  switch (v) {
    case NakaiVerdict::Ample: return "ample";
    case NakaiVerdict::NefNotAmple: return "nef-not-ample";
    case NakaiVerdict::NotNef: return "not-nef";
  }
  return "not-nef";
}

// ---- serialization helpers -------------------------------------------------

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorCode::Parse, "expected a fraction string or an integer");
}

Json configuration_to_json(const CurveConfiguration& c) {
  Json comps = Json::array();
  for (const auto& x : c.components())
    comps.push_back({{"name", x.name}, {"self_int", x.self_int}, {"pa", x.pa}, {"kind", to_string(x.kind)}});
  Json cts = Json::array();
  for (const auto& ct : c.contacts())
    cts.push_back({{"a", c.components()[ct.a].name},
                   {"b", c.components()[ct.b].name},
                   {"mult", ct.multiplicity},
                   {"points", ct.points}});
  Json conc = Json::array();
  for (const auto& t : c.concurrent())
    conc.push_back({c.components()[t[0]].name, c.components()[t[1]].name, c.components()[t[2]].name});
  return {{"components", comps}, {"contacts", cts}, {"concurrent", conc}};
}

CurveConfiguration configuration_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("components") || !j["components"].is_array())
    throw Error(ErrorCode::Parse, "configuration needs a 'components' array");
  std::vector<Component> comps;
  for (const auto& x : j["components"]) {
    Component c;
    c.name = x.at("name").get<std::string>();
    c.self_int = x.at("self_int").get<long>();
    c.pa = x.value("pa", 0L);
    c.kind = parse_curve_kind(x.value("kind", std::string("smooth")));
    comps.push_back(c);
  }
  auto idx = [&](const Json& name) -> std::size_t {
    const auto s = name.get<std::string>();
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (comps[i].name == s) return i;
    throw Error(ErrorCode::Parse, "contact names unknown component " + s);
  };
  std::vector<Contact> cts;
  for (const auto& x : j.value("contacts", Json::array())) {
    long mult = x.value("mult", 1L);
    cts.push_back({idx(x.at("a")), idx(x.at("b")), mult, x.value("points", mult)});
  }
  std::vector<Triple> conc;
  for (const auto& x : j.value("concurrent", Json::array())) {
    if (!x.is_array() || x.size() != 3) throw Error(ErrorCode::Parse, "concurrency entries need three names");
    conc.push_back({idx(x[0]), idx(x[1]), idx(x[2])});
  }
  return CurveConfiguration(comps, cts, conc);
}

namespace {

Json class_terms(const DivisorClass& d) { return d.to_json(); }

DivisorClass class_from_terms(const LatticePtr& lat, const Json& terms) {
  RationalVector c(lat->size());
  for (auto it = terms.begin(); it != terms.end(); ++it) c[lat->index_of(it.key())] += rational_from_json(it.value());
  return DivisorClass(lat, c);
}

DivisorClass reembed(const DivisorClass& d, const LatticePtr& target, const std::vector<long>& where) {
  // where[i] = index in the old lattice of target generator i, or -1 for new.
  RationalVector c(target->size());
  for (std::size_t i = 0; i < where.size(); ++i)
    if (where[i] >= 0) c[i] = d.coeffs()[static_cast<std::size_t>(where[i])];
  return DivisorClass(target, c);
}

std::optional<long> integral_genus(const Rational& pa) {
  if (!is_integer(pa) || pa < 0) return std::nullopt;
  return to_long(pa);
}

}  // namespace

// ---- SurfaceModel ------------------------------------------------------------

SurfaceModel SurfaceModel::make_p2() {
  SurfaceModel s;
  Matrix g(1, 1);
  g(0, 0) = 1;
  s.lattice_ = std::make_shared<IntersectionLattice>(std::vector<std::string>{"H"}, g);
  s.canonical_ = DivisorClass(s.lattice_, {Rational(-3)});
  s.chi_ = 1;
  s.log_.push_back({{"op", "p2"}});
  return s;
}

SurfaceModel SurfaceModel::make_hirzebruch(long n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "Hirzebruch index must be non-negative");
  SurfaceModel s;
  Matrix g(2, 2);
  g(0, 0) = -n;
  g(0, 1) = 1;
  g(1, 0) = 1;
  s.lattice_ = std::make_shared<IntersectionLattice>(std::vector<std::string>{"C_inf", "Gamma"}, g);
  s.canonical_ = DivisorClass(s.lattice_, {Rational(-2), Rational(-(n + 2))});
  s.chi_ = 1;
  s.log_.push_back({{"op", "hirzebruch"}, {"n", n}});
  return s;
}

SurfaceModel SurfaceModel::with_step(Json step) const {
  SurfaceModel s = *this;
  s.log_.push_back(std::move(step));
  return s;
}

const TrackedCurve* SurfaceModel::find_curve(const std::string& name) const {
  for (const auto& c : tracked_)
    if (c.name == name) return &c;
  return nullptr;
}

const TrackedCurve& SurfaceModel::curve(const std::string& name) const {
  if (auto c = find_curve(name)) return *c;
  throw Error(ErrorCode::UnknownCurve, "no tracked curve named " + name);
}

DivisorClass SurfaceModel::class_of(const std::string& name) const {
  if (auto c = find_curve(name)) return c->cls;
  if (name == "K") return canonical_;
  if (lattice_->find(name)) return DivisorClass::generator(lattice_, name);
  throw Error(ErrorCode::UnknownCurve, "no curve or generator named " + name);
}

DivisorClass SurfaceModel::divisor(const std::map<std::string, Rational>& terms) const {
  DivisorClass d = DivisorClass::zero(lattice_);
  for (const auto& [name, c] : terms) d = d + class_of(name) * c;
  return d;
}

Rational SurfaceModel::adjunction_pa(const DivisorClass& d) const {
  return 1 + (intersect(d, d) + intersect(canonical_, d)) / 2;
}

Rational SurfaceModel::rr_chi(const DivisorClass& d) const {
  return chi_ + (intersect(d, d) - intersect(canonical_, d)) / 2;
}

NakaiVerdict SurfaceModel::nakai_check(const DivisorClass& d) const {
  const Rational sq = intersect(d, d);
  bool some_zero = sq == 0;
  if (sq < 0) return NakaiVerdict::NotNef;
  for (const auto& c : tracked_) {
    Rational v = intersect(d, c.cls);
    if (v < 0) return NakaiVerdict::NotNef;
    if (v == 0) some_zero = true;
  }
  return some_zero ? NakaiVerdict::NefNotAmple : NakaiVerdict::Ample;
}

void SurfaceModel::check_invariants() const {
  for (const auto& c : tracked_) {
    if (!c.checked) continue;
    Rational pa = adjunction_pa(c.cls);
    if (pa != c.pa)
      throw Error(ErrorCode::InvalidArgument, "adjunction gives p_a = " + to_string(pa) + " for " + c.name +
                                                  ", declared " + std::to_string(c.pa));
  }
}

SurfaceModel SurfaceModel::track(const std::string& name, const DivisorClass& cls, long pa, CurveKind kind,
                                 bool irreducible) const {
  if (find_curve(name)) throw Error(ErrorCode::InvalidArgument, "curve already tracked: " + name);
  if (pa < 0) throw Error(ErrorCode::InvalidArgument, "negative arithmetic genus for " + name);
  DivisorClass d = DivisorClass::zero(lattice_) + cls;  // lattice check
  SurfaceModel s = with_step({{"op", "track"},
                              {"name", name},
                              {"class", class_terms(d)},
                              {"pa", pa},
                              {"kind", to_string(kind)},
                              {"irreducible", irreducible}});
  s.tracked_.push_back({name, d, pa, irreducible, kind, true});
  s.check_invariants();
  return s;
}

SurfaceModel SurfaceModel::blow_up(const std::string& exceptional, const std::map<std::string, long>& center) const {
  if (lattice_->find(exceptional) || find_curve(exceptional))
    throw Error(ErrorCode::InvalidArgument, "name already in use: " + exceptional);
  for (const auto& [name, m] : center) {
    curve(name);
    if (m < 0) throw Error(ErrorCode::InvalidArgument, "negative multiplicity at the center");
  }
  const std::size_t n = lattice_->size();
  Matrix g(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = lattice_->gram()(i, j);
  g(n, n) = -1;
  auto names = lattice_->names();
  names.push_back(exceptional);
  auto lat = std::make_shared<IntersectionLattice>(names, g);
  std::vector<long> where(n + 1, -1);
  for (std::size_t i = 0; i < n; ++i) where[i] = static_cast<long>(i);
  const DivisorClass e = DivisorClass::generator(lat, exceptional);

  Json cj = Json::object();
  for (const auto& [name, m] : center) cj[name] = m;
  SurfaceModel s = with_step({{"op", "blow_up"}, {"exceptional", exceptional}, {"center", cj}});
  s.lattice_ = lat;
  s.canonical_ = reembed(canonical_, lat, where) + e;
  s.tracked_.clear();
  for (const auto& c : tracked_) {
    TrackedCurve t = c;
    t.cls = reembed(c.cls, lat, where);
    auto it = center.find(c.name);
    if (it != center.end() && it->second > 0) {
      const long m = it->second;
      t.cls = t.cls - e * Rational(m);
      t.pa = c.pa - m * (m - 1) / 2;
      if (t.pa < 0 && c.irreducible)
        throw Error(ErrorCode::InvalidArgument, "multiplicity " + std::to_string(m) + " exceeds what p_a(" + c.name +
                                                    ") allows");
      if (t.pa != c.pa) t.kind = CurveKind::Smooth;
    }
    s.tracked_.push_back(t);
  }
  s.tracked_.push_back({exceptional, e, 0, true, CurveKind::Smooth, true});
  s.check_invariants();
  return s;
}

SurfaceModel SurfaceModel::double_cover(const DivisorClass& half_branch, const std::vector<std::string>& branch,
                                        const std::map<std::string, std::string>& renames) const {
  const DivisorClass l = DivisorClass::zero(lattice_) + half_branch;
  DivisorClass residual = l * Rational(2);
  std::set<std::string> in_branch;
  for (const auto& name : branch) {
    if (!in_branch.insert(name).second) throw Error(ErrorCode::InvalidArgument, "branch component repeated: " + name);
    residual = residual - curve(name).cls;
  }
  for (const auto& c : residual.coeffs())
    if (c < 0)
      throw Error(ErrorCode::InvalidArgument, "branch components exceed the branch class " + format_class(l * Rational(2)));
  for (const auto& [from, to] : renames) curve(from);

  Matrix g = lattice_->gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= 2;
  auto lat = std::make_shared<IntersectionLattice>(lattice_->names(), g);
  auto pull = [&](const DivisorClass& d) { return DivisorClass(lat, d.coeffs()); };

  Json rj = Json::object();
  for (const auto& [from, to] : renames) rj[from] = to;
  SurfaceModel s = with_step({{"op", "double_cover"}, {"half_branch", class_terms(l)}, {"branch", branch}, {"renames", rj}});
  s.lattice_ = lat;
  s.canonical_ = pull(canonical_ + l);
  s.chi_ = 2 * chi_ + intersect(l, l + canonical_) / 2;
  s.tracked_.clear();
  std::set<std::string> used;
  for (const auto& c : tracked_) {
    TrackedCurve t = c;
    auto it = renames.find(c.name);
    if (it != renames.end()) t.name = it->second;
    if (!used.insert(t.name).second) throw Error(ErrorCode::InvalidArgument, "duplicate preimage name " + t.name);
    if (in_branch.count(c.name)) {
      t.cls = pull(c.cls) * make_rational(1, 2);
      // smooth cover along the component only if the rest of the branch misses it
      t.checked = c.checked && intersect(c.cls, l * Rational(2) - c.cls) == 0;
    } else {
      t.cls = pull(c.cls);
      // genus of the preimage is only known when adjunction yields one
      t.checked = c.checked;
    }
    if (auto pa = integral_genus(s.adjunction_pa(t.cls))) {
      t.pa = *pa;
      if (!in_branch.count(c.name)) t.kind = CurveKind::Smooth;
    } else {
      t.checked = false;
    }
    s.tracked_.push_back(t);
  }
  return s;
}

SurfaceModel SurfaceModel::resolve_point(const CurveConfiguration& exc,
                                         const std::map<std::string, std::vector<long>>& incidences) const {
  const std::size_t n = lattice_->size();
  const std::size_t k = exc.size();
  for (const auto& c : exc.components())
    if (lattice_->find(c.name) || find_curve(c.name)) throw Error(ErrorCode::InvalidArgument, "name already in use: " + c.name);
  for (const auto& [name, v] : incidences) {
    curve(name);
    if (v.size() != k) throw Error(ErrorCode::InvalidArgument, "incidence vector length mismatch for " + name);
    for (long x : v)
      if (x < 0) throw Error(ErrorCode::InvalidArgument, "negative incidence for " + name);
  }
  const auto verdict = classify_minimally_elliptic(exc);  // throws if not contractible
  if (verdict.kind == EllipticClass::NotElliptic)
    throw Error(ErrorCode::Inconclusive, "exceptional configuration is neither rational nor minimally elliptic");

  const Matrix m = exc.gram();
  Matrix g(n + k, n + k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = lattice_->gram()(i, j);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g(n + i, n + j) = m(i, j);
  auto names = lattice_->names();
  for (const auto& c : exc.components()) names.push_back(c.name);
  auto lat = std::make_shared<IntersectionLattice>(names, g);
  std::vector<long> where(n + k, -1);
  for (std::size_t i = 0; i < n; ++i) where[i] = static_cast<long>(i);

  auto lift = [&](const RationalVector& local) {
    RationalVector c(n + k);
    for (std::size_t i = 0; i < k; ++i) c[n + i] = local[i];
    return DivisorClass(lat, c);
  };
  auto b = solve(m, exc.canonical_degrees());
  Json ij = Json::object();
  for (const auto& [name, v] : incidences) ij[name] = v;
  SurfaceModel s = with_step({{"op", "resolve_point"}, {"config", configuration_to_json(exc)}, {"incidences", ij}});
  s.lattice_ = lat;
  s.canonical_ = reembed(canonical_, lat, where) + lift(*b);
  if (verdict.kind == EllipticClass::MinimallyElliptic) s.chi_ = chi_ - 1;
  s.tracked_.clear();
  for (const auto& c : tracked_) {
    TrackedCurve t = c;
    t.cls = reembed(c.cls, lat, where);
    auto it = incidences.find(c.name);
    if (it != incidences.end()) {
      RationalVector v(it->second.begin(), it->second.end());
      t.cls = t.cls + lift(*solve(m, v));
      if (auto pa = integral_genus(s.adjunction_pa(t.cls))) {
        if (t.pa != *pa) t.kind = CurveKind::Smooth;
        t.pa = *pa;
        t.checked = true;
      } else {
        t.checked = false;
      }
    }
    s.tracked_.push_back(t);
  }
  for (const auto& c : exc.components())
    s.tracked_.push_back({c.name, DivisorClass::generator(lat, c.name), c.pa, true, c.kind, true});
  s.check_invariants();
  return s;
}

CurveConfiguration SurfaceModel::configuration_of(const std::vector<std::string>& names) const {
  std::vector<Component> comps;
  std::vector<DivisorClass> classes;
  for (const auto& name : names) {
    const auto& c = curve(name);
    Rational sq = intersect(c.cls, c.cls);
    if (!is_integer(sq)) throw Error(ErrorCode::InvalidArgument, "non-integral self-intersection on " + name);
    comps.push_back({name, to_long(sq), c.pa, c.kind});
    classes.push_back(c.cls);
  }
  std::vector<Contact> cts;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      Rational v = intersect(classes[i], classes[j]);
      if (!is_integer(v) || v < 0)
        throw Error(ErrorCode::InvalidArgument, "curves " + names[i] + " and " + names[j] + " have intersection " + to_string(v));
      if (v > 0) cts.push_back({i, j, to_long(v), to_long(v)});
    }
  return CurveConfiguration(comps, cts);
}

SurfaceModel SurfaceModel::contract(const std::vector<std::string>& names,
                                    const std::optional<CurveConfiguration>& declared) const {
  if (names.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to contract");
  CurveConfiguration config = configuration_of(names);
  if (declared) {
    if (declared->size() != config.size())
      throw Error(ErrorCode::InvalidArgument, "declared configuration has the wrong number of curves");
    std::vector<std::size_t> order;
    for (const auto& c : config.components()) order.push_back(declared->index_of(c.name));
    CurveConfiguration d = declared->permuted(order);
    if (!(d.gram() == config.gram()))
      throw Error(ErrorCode::InvalidArgument, "declared configuration disagrees with the tracked classes");
    config = d;
  }
  if (!is_negative_definite(config))
    throw Error(ErrorCode::NotNegativeDefinite, "contracted curves do not span a negative definite lattice");

  const std::size_t n = lattice_->size();
  const std::size_t k = names.size();
  Matrix v(n, k);
  RationalVector kdeg(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto& c = curve(names[j]).cls;
    for (std::size_t i = 0; i < n; ++i) v(i, j) = c.coeffs()[i];
    kdeg[j] = intersect(canonical_, c);
  }
  const Matrix gv = lattice_->gram() * v;
  const Matrix m = v.transpose() * gv;
  const Matrix minv = *inverse(m);
  const bool smooth = k == 1 && m(0, 0) == -1 && config.components()[0].pa == 0;

  // K_X = phi^* K_W - Z, with Z the discrepancy cycle.
  RationalVector y = minv * kdeg;
  RationalVector z(k);
  for (std::size_t j = 0; j < k; ++j) z[j] = -y[j];
  SingularPoint point;
  Rational chi = chi_;
  if (!smooth) {
    for (const auto& x : z)
      if (!is_integer(x)) throw Error(ErrorCode::NonGorenstein, "canonical cycle is not integral");
    const auto verdict = classify_minimally_elliptic(config);
    point.kind = verdict.kind;
    point.degree = verdict.degree;
    if (verdict.kind == EllipticClass::Rational) {
      for (const auto& x : z)
        if (x != 0) throw Error(ErrorCode::NonGorenstein, "rational point with non-zero discrepancy");
    } else if (verdict.kind == EllipticClass::MinimallyElliptic) {
      for (std::size_t j = 0; j < k; ++j)
        if (z[j] != verdict.cycle.coeffs[j])
          throw Error(ErrorCode::NonGorenstein, "canonical cycle differs from the fundamental cycle");
      chi += 1;
    } else {
      throw Error(ErrorCode::NonGorenstein, "configuration is not minimally elliptic");
    }
    auto entry = match_catalog(config);
    point.catalog_label = entry ? entry->label : "";
    point.curves = names;
    point.name = "w" + std::to_string(singular_.size() + 1);
  }

  Matrix g = lattice_->gram();
  const Matrix corr = gv * minv * gv.transpose();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) -= corr(i, j);

  // K_W pulled back, for the integrality test on surviving curves.
  DivisorClass pulled = canonical_;
  for (std::size_t j = 0; j < k; ++j) pulled = pulled + curve(names[j]).cls * z[j];

  std::vector<long> where;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < n; ++i) {
    bool zero_row = true;
    for (std::size_t j = 0; j < n && zero_row; ++j) zero_row = g(i, j) == 0;
    if (!zero_row) {
      where.push_back(static_cast<long>(i));
      kept.push_back(lattice_->names()[i]);
    }
  }
  Matrix gk(kept.size(), kept.size());
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = 0; b < kept.size(); ++b) gk(a, b) = g(static_cast<std::size_t>(where[a]), static_cast<std::size_t>(where[b]));
  auto lat = std::make_shared<IntersectionLattice>(kept, gk);

  Json step = {{"op", "contract"}, {"curves", names}, {"declared", declared ? configuration_to_json(*declared) : Json()}};
  SurfaceModel s = with_step(step);
  s.lattice_ = lat;
  s.canonical_ = reembed(canonical_, lat, where);
  s.chi_ = chi;
  s.tracked_.clear();
  std::set<std::string> gone(names.begin(), names.end());
  for (const auto& c : tracked_) {
    if (gone.count(c.name)) continue;
    bool touches = false;
    for (const auto& name : names) touches = touches || intersect(c.cls, curve(name).cls) != 0;
    if (!smooth && touches) {
      Rational kc = intersect(pulled, c.cls);
      if (!is_integer(kc)) throw Error(ErrorCode::NonGorenstein, "K_W." + c.name + " = " + to_string(kc) + " is not integral");
    }
    TrackedCurve t = c;
    t.cls = reembed(c.cls, lat, where);
    if (touches) {
      if (auto pa = integral_genus(s.adjunction_pa(t.cls))) {
        if (t.pa != *pa) t.kind = CurveKind::Smooth;
        t.pa = *pa;
        t.checked = smooth && c.checked;
      } else {
        t.checked = false;
      }
    }
    s.tracked_.push_back(t);
  }
  if (!smooth) s.singular_.push_back(point);
  s.check_invariants();
  return s;
}

SurfaceModel SurfaceModel::split_tracked(const std::string& name, const std::vector<SplitPart>& parts,
                                         const std::map<std::pair<std::string, std::string>, Rational>& mutual) const {
  const TrackedCurve& parent = curve(name);
  if (parts.size() < 2) throw Error(ErrorCode::InvalidArgument, "a split needs at least two parts");
  const std::size_t n = lattice_->size();
  const std::size_t k = parts.size() - 1;  // new generators
  for (const auto& p : parts)
    if (p.pa < 0 || (lattice_->find(p.name) || (find_curve(p.name) && p.name != name)))
      throw Error(ErrorCode::InvalidArgument, "bad split part " + p.name);
  auto mutual_of = [&](const std::string& a, const std::string& b) -> std::optional<Rational> {
    auto it = mutual.find({a, b});
    if (it == mutual.end()) it = mutual.find({b, a});
    if (it == mutual.end()) return std::nullopt;
    return it->second;
  };

  Matrix g(n + k, n + k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = lattice_->gram()(i, j);
  const Rational share = make_rational(1, static_cast<long>(parts.size()));
  for (std::size_t p = 0; p < k; ++p) {
    for (const auto& [gen, v] : parts[p].pairings) lattice_->index_of(gen);
    Rational kdot = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& gname = lattice_->names()[i];
      auto it = parts[p].pairings.find(gname);
      Rational v = it != parts[p].pairings.end() ? it->second
                                                 : intersect(parent.cls, DivisorClass::generator(lattice_, gname)) * share;
      g(n + p, i) = v;
      g(i, n + p) = v;
      kdot += canonical_.coeffs()[i] * v;
    }
    g(n + p, n + p) = 2 * parts[p].pa - 2 - kdot;
    for (std::size_t q = p + 1; q < k; ++q) {
      Rational v = mutual_of(parts[p].name, parts[q].name).value_or(0);
      g(n + p, n + q) = v;
      g(n + q, n + p) = v;
    }
  }
  auto names = lattice_->names();
  for (std::size_t p = 0; p < k; ++p) names.push_back(parts[p].name);
  auto lat = std::make_shared<IntersectionLattice>(names, g);
  std::vector<long> where(n + k, -1);
  for (std::size_t i = 0; i < n; ++i) where[i] = static_cast<long>(i);

  Json pj = Json::array();
  for (const auto& p : parts) {
    Json pr = Json::object();
    for (const auto& [gen, v] : p.pairings) pr[gen] = to_string(v);
    pj.push_back({{"name", p.name}, {"pa", p.pa}, {"kind", to_string(p.kind)}, {"pairings", pr}});
  }
  Json mj = Json::array();
  for (const auto& [ab, v] : mutual) mj.push_back({ab.first, ab.second, to_string(v)});
  SurfaceModel s = with_step({{"op", "split"}, {"name", name}, {"parts", pj}, {"mutual", mj}});
  s.lattice_ = lat;
  s.canonical_ = reembed(canonical_, lat, where);
  s.tracked_.clear();
  DivisorClass rest = reembed(parent.cls, lat, where);
  std::vector<TrackedCurve> created;
  for (std::size_t p = 0; p < k; ++p) {
    auto cls = DivisorClass::generator(lat, parts[p].name);
    rest = rest - cls;
    created.push_back({parts[p].name, cls, parts[p].pa, true, parts[p].kind, true});
  }
  created.push_back({parts.back().name, rest, parts.back().pa, true, parts.back().kind, true});
  for (std::size_t p = 0; p < k; ++p)
    if (auto v = mutual_of(parts[p].name, parts.back().name); v && intersect(created[p].cls, rest) != *v)
      throw Error(ErrorCode::InvalidArgument, "split pairing " + parts[p].name + "." + parts.back().name +
                                                  " is inconsistent with the parent class");
  for (const auto& c : tracked_) {
    if (c.name == name) {
      for (auto& t : created) s.tracked_.push_back(t);
      continue;
    }
    TrackedCurve t = c;
    t.cls = reembed(c.cls, lat, where);
    s.tracked_.push_back(t);
  }
  s.check_invariants();
  return s;
}

bool SurfaceModel::operator==(const SurfaceModel& o) const {
  if (!(*lattice_ == *o.lattice_) || !(canonical_ == o.canonical_) || chi_ != o.chi_) return false;
  if (tracked_.size() != o.tracked_.size() || singular_.size() != o.singular_.size()) return false;
  for (std::size_t i = 0; i < tracked_.size(); ++i) {
    const auto& a = tracked_[i];
    const auto& b = o.tracked_[i];
    if (a.name != b.name || !(a.cls == b.cls) || a.pa != b.pa || a.irreducible != b.irreducible || a.kind != b.kind ||
        a.checked != b.checked)
      return false;
  }
  for (std::size_t i = 0; i < singular_.size(); ++i) {
    const auto& a = singular_[i];
    const auto& b = o.singular_[i];
    if (a.name != b.name || a.curves != b.curves || a.catalog_label != b.catalog_label || a.kind != b.kind ||
        a.degree != b.degree)
      return false;
  }
  return log_ == o.log_;
}

SurfaceModel SurfaceModel::replay(const Json& log) {
  if (!log.is_array() || log.empty()) throw Error(ErrorCode::Parse, "provenance log must be a non-empty array");
  std::optional<SurfaceModel> s;
  for (const auto& step : log) {
    const std::string op = step.at("op").get<std::string>();
    if (op == "p2") {
      s = make_p2();
      continue;
    }
    if (op == "hirzebruch") {
      s = make_hirzebruch(step.at("n").get<long>());
      continue;
    }
    if (!s) throw Error(ErrorCode::Parse, "provenance log must start with a base surface");
    if (op == "track") {
      s = s->track(step.at("name"), class_from_terms(s->lattice_, step.at("class")), step.at("pa").get<long>(),
                   parse_curve_kind(step.at("kind")), step.at("irreducible").get<bool>());
    } else if (op == "blow_up") {
      std::map<std::string, long> center;
      for (auto it = step.at("center").begin(); it != step.at("center").end(); ++it) center[it.key()] = it.value().get<long>();
      s = s->blow_up(step.at("exceptional"), center);
    } else if (op == "double_cover") {
      std::map<std::string, std::string> renames;
      for (auto it = step.at("renames").begin(); it != step.at("renames").end(); ++it)
        renames[it.key()] = it.value().get<std::string>();
      s = s->double_cover(class_from_terms(s->lattice_, step.at("half_branch")),
                          step.at("branch").get<std::vector<std::string>>(), renames);
    } else if (op == "resolve_point") {
      std::map<std::string, std::vector<long>> inc;
      for (auto it = step.at("incidences").begin(); it != step.at("incidences").end(); ++it)
        inc[it.key()] = it.value().get<std::vector<long>>();
      s = s->resolve_point(configuration_from_json(step.at("config")), inc);
    } else if (op == "contract") {
      std::optional<CurveConfiguration> declared;
      if (!step.at("declared").is_null()) declared = configuration_from_json(step.at("declared"));
      s = s->contract(step.at("curves").get<std::vector<std::string>>(), declared);
    } else if (op == "split") {
      std::vector<SplitPart> parts;
      for (const auto& p : step.at("parts")) {
        SplitPart sp{p.at("name"), p.at("pa").get<long>(), parse_curve_kind(p.at("kind")), {}};
        for (auto it = p.at("pairings").begin(); it != p.at("pairings").end(); ++it)
          sp.pairings[it.key()] = rational_from_json(it.value());
        parts.push_back(sp);
      }
      std::map<std::pair<std::string, std::string>, Rational> mutual;
      for (const auto& m : step.at("mutual")) mutual[{m.at(0), m.at(1)}] = rational_from_json(m.at(2));
      s = s->split_tracked(step.at("name"), parts, mutual);
    } else {
      throw Error(ErrorCode::Parse, "unknown provenance step '" + op + "'");
    }
  }
  return *s;
}

}  // namespace sv
