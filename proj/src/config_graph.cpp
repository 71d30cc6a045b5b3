#include "sv/config_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace sv {

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Smooth: return "smooth";
    case CurveKind::Nodal: return "nodal";
    case CurveKind::Cuspidal: return "cuspidal";
  }
  return "smooth";
}

CurveKind parse_curve_kind(const std::string& text) {
  if (text == "smooth") return CurveKind::Smooth;
  if (text == "nodal") return CurveKind::Nodal;
  if (text == "cuspidal") return CurveKind::Cuspidal;
  throw Error(ErrorCode::Parse, "unknown curve kind '" + text + "'");
}

CurveConfiguration::CurveConfiguration(std::vector<Component> components, std::vector<Contact> contacts,
                                       std::vector<Triple> concurrent)
    : components_(std::move(components)), contacts_(std::move(contacts)), concurrent_(std::move(concurrent)) {
  std::set<std::string> names;
  for (const auto& c : components_) {
    if (c.pa < 0) throw Error(ErrorCode::InvalidArgument, "negative arithmetic genus on " + c.name);
    if (!names.insert(c.name).second) throw Error(ErrorCode::InvalidArgument, "duplicate component " + c.name);
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& ct : contacts_) {
    if (ct.a == ct.b || ct.a >= size() || ct.b >= size())
      throw Error(ErrorCode::InvalidArgument, "contact must join two distinct components");
    if (ct.multiplicity < 1 || ct.points < 1 || ct.points > ct.multiplicity)
      throw Error(ErrorCode::InvalidArgument, "contact multiplicity must be positive");
    if (ct.a > ct.b) std::swap(ct.a, ct.b);
    if (!seen.insert({ct.a, ct.b}).second)
      throw Error(ErrorCode::InvalidArgument, "more than one contact record for a pair");
  }
  std::sort(contacts_.begin(), contacts_.end(),
            [](const Contact& x, const Contact& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
  for (auto& t : concurrent_) {
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2] || t[2] >= size())
      throw Error(ErrorCode::InvalidArgument, "concurrency triple must name three components");
    for (auto [i, j] : {std::pair(t[0], t[1]), std::pair(t[0], t[2]), std::pair(t[1], t[2])})
      if (!contact(i, j)) throw Error(ErrorCode::InvalidArgument, "concurrent components must meet pairwise");
  }
  std::sort(concurrent_.begin(), concurrent_.end());
}

std::size_t CurveConfiguration::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (components_[i].name == name) return i;
  throw Error(ErrorCode::UnknownCurve, "no component named " + name);
}

Matrix CurveConfiguration::gram() const {
  Matrix g(size(), size());
  for (std::size_t i = 0; i < size(); ++i) g(i, i) = components_[i].self_int;
  for (const auto& ct : contacts_) {
    g(ct.a, ct.b) = ct.multiplicity;
    g(ct.b, ct.a) = ct.multiplicity;
  }
  return g;
}

RationalVector CurveConfiguration::canonical_degrees() const {
  RationalVector k;
  for (const auto& c : components_) k.emplace_back(2 * c.pa - 2 - c.self_int);
  return k;
}

const Contact* CurveConfiguration::contact(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  for (const auto& ct : contacts_)
    if (ct.a == i && ct.b == j) return &ct;
  return nullptr;
}

bool CurveConfiguration::is_concurrent(std::size_t i, std::size_t j, std::size_t k) const {
  Triple t{i, j, k};
  std::sort(t.begin(), t.end());
  return std::binary_search(concurrent_.begin(), concurrent_.end(), t);
}

bool CurveConfiguration::is_connected() const {
  if (size() == 0) return false;
  std::vector<bool> seen(size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (const auto& ct : contacts_) {
      std::size_t other = ct.a == v ? ct.b : (ct.b == v ? ct.a : size());
      if (other < size() && !seen[other]) {
        seen[other] = true;
        stack.push_back(other);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

CurveConfiguration CurveConfiguration::subconfiguration(const std::vector<std::size_t>& idx) const {
  std::map<std::size_t, std::size_t> remap;
  std::vector<Component> comps;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    remap[idx[i]] = i;
    comps.push_back(components_.at(idx[i]));
  }
  std::vector<Contact> cts;
  for (const auto& ct : contacts_)
    if (remap.count(ct.a) && remap.count(ct.b))
      cts.push_back({remap[ct.a], remap[ct.b], ct.multiplicity, ct.points});
  std::vector<Triple> conc;
  for (const auto& t : concurrent_)
    if (remap.count(t[0]) && remap.count(t[1]) && remap.count(t[2]))
      conc.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
  return CurveConfiguration(std::move(comps), std::move(cts), std::move(conc));
}

CurveConfiguration CurveConfiguration::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != size()) throw Error(ErrorCode::InvalidArgument, "permutation size mismatch");
  return subconfiguration(perm);
}

bool is_negative_definite(const CurveConfiguration& config) {
  if (config.size() == 0) return false;
  auto minors = leading_minors(config.gram());
  for (std::size_t k = 0; k < minors.size(); ++k) {
    // sign of d_k must be (-1)^k for k = 1..n
    const int want = (k % 2 == 0) ? -1 : 1;
    if (sgn(minors[k]) != want) return false;
  }
  return true;
}

Rational cycle_genus(const CurveConfiguration& config, const std::vector<long>& coeffs) {
  RationalVector z(coeffs.begin(), coeffs.end());
  Matrix g = config.gram();
  Rational z2 = dot(z, g * z);
  Rational kz = dot(config.canonical_degrees(), z);
  return 1 + (z2 + kz) / 2;
}

FundamentalCycle fundamental_cycle(const CurveConfiguration& config, std::size_t iteration_cap) {
  if (!is_negative_definite(config))
    throw Error(ErrorCode::NotNegativeDefinite, "configuration is not negative definite");
  const Matrix g = config.gram();
  const std::size_t n = config.size();
  std::vector<long> z(n, 1);
  std::size_t iterations = 0;
  while (true) {
    bool bumped = false;
    for (std::size_t i = 0; i < n; ++i) {
      Rational zi = 0;
      for (std::size_t j = 0; j < n; ++j) zi += g(i, j) * z[j];
      if (zi > 0) {
        ++z[i];
        bumped = true;
        break;
      }
    }
    if (!bumped) break;
    if (++iterations > iteration_cap)
      throw Error(ErrorCode::Internal, "Laufer loop exceeded its iteration cap");
  }
  FundamentalCycle fc;
  fc.coeffs = z;
  RationalVector zr(z.begin(), z.end());
  fc.self_intersection = dot(zr, g * zr);
  fc.canonical_degree = dot(config.canonical_degrees(), zr);
  fc.arithmetic_genus = 1 + (fc.self_intersection + fc.canonical_degree) / 2;
  fc.iterations = iterations;
  return fc;
}

EllipticVerdict classify_minimally_elliptic(const CurveConfiguration& config) {
  EllipticVerdict v;
  v.cycle = fundamental_cycle(config);
  v.degree = to_long(-v.cycle.self_intersection);
  if (v.cycle.arithmetic_genus == 0) {
    v.kind = EllipticClass::Rational;
    return v;
  }
  if (v.cycle.arithmetic_genus != 1) {
    v.kind = EllipticClass::NotElliptic;
    return v;
  }
  const std::size_t n = config.size();
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    auto sub = config.subconfiguration(idx);
    if (!sub.is_connected()) continue;
    if (fundamental_cycle(sub).arithmetic_genus != 0) {
      v.kind = EllipticClass::NotElliptic;
      return v;
    }
  }
  v.kind = EllipticClass::MinimallyElliptic;
  return v;
}

namespace {

Component rational(const std::string& name, long self) { return {name, self, 0, CurveKind::Smooth}; }

CurveConfiguration chain(int n) {
  std::vector<Component> comps;
  std::vector<Contact> cts;
  for (int i = 0; i < n; ++i) {
    comps.push_back(rational("A" + std::to_string(i + 1), -2));
    if (i > 0) cts.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i), 1, 1});
  }
  return CurveConfiguration(comps, cts);
}

CurveConfiguration concurrent3(long s1, long s2, long s3) {
  return CurveConfiguration({rational("E1", s1), rational("E2", s2), rational("E3", s3)},
                            {{0, 1, 1, 1}, {0, 2, 1, 1}, {1, 2, 1, 1}}, {{0, 1, 2}});
}

CurveConfiguration tangent2(long s1, long s2) {
  return CurveConfiguration({rational("E1", s1), rational("E2", s2)}, {{0, 1, 2, 1}});
}

CurveConfiguration single(long self, CurveKind kind) {
  return CurveConfiguration({{"E1", self, 1, kind}}, {});
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  c.push_back({"E12", single(-1, CurveKind::Cuspidal), -1, 1, "z^3+y^7+ay^5z", "II", {1}});
  c.push_back({"E13", tangent2(-3, -2), -1, 1, "z^3+y^5z+ay^8", "III", {1, 0}});
  c.push_back({"E14", concurrent3(-3, -2, -2), -1, 1, "z^3+y^8+ay^6z", "IV", {1, 0, 0}});
  c.push_back({"Z11", single(-2, CurveKind::Cuspidal), -2, 2, "yz^3+y^5+ay^4z", "II", {2}});
  c.push_back({"Z12", tangent2(-4, -2), -2, 2, "yz^3+y^4z+ay^3z^2", "III", {2, 0}});
  c.push_back({"Z13", concurrent3(-4, -2, -2), -2, 2, "yz^3+y^6+ay^5z", "IV", {2, 0, 0}});
  c.push_back({"W12", tangent2(-3, -3), -2, 2, "z^4+y^5+ay^3z^2", "III", {1, 1}});
  c.push_back({"W13", concurrent3(-3, -2, -3), -2, 2, "z^4+y^4z+ay^6", "IV", {1, 0, 1}});
  for (int n = 1; n <= 8; ++n)
    c.push_back({"A" + std::to_string(n), chain(n), -2, 0, "x^2+y^2+z^" + std::to_string(n + 1), "", {}});
  c.push_back({"T236", single(-1, CurveKind::Smooth), -1, 1, "x^2+y^3+z^6+lambda*xyz", "", {}});
  c.push_back({"T237", single(-1, CurveKind::Nodal), -1, 1, "x^2+y^3+z^7+xyz", "", {}});
  return c;
}

struct EdgeData {
  long mult = 0;
  long points = 0;
  bool operator==(const EdgeData&) const = default;
};

std::vector<std::vector<EdgeData>> edge_table(const CurveConfiguration& c) {
  std::vector<std::vector<EdgeData>> t(c.size(), std::vector<EdgeData>(c.size()));
  for (const auto& ct : c.contacts()) {
    t[ct.a][ct.b] = {ct.multiplicity, ct.points};
    t[ct.b][ct.a] = {ct.multiplicity, ct.points};
  }
  return t;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

bool isomorphic(const CurveConfiguration& a, const CurveConfiguration& b) {
  const std::size_t n = a.size();
  if (n != b.size() || a.contacts().size() != b.contacts().size() ||
      a.concurrent().size() != b.concurrent().size())
    return false;
  auto ta = edge_table(a);
  auto tb = edge_table(b);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto same_vertex = [&](std::size_t i, std::size_t j) {
    const auto& x = a.components()[i];
    const auto& y = b.components()[j];
    return x.self_int == y.self_int && x.pa == y.pa && x.kind == y.kind;
  };
  do {
    // a's component i corresponds to b's component perm[i]
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!same_vertex(i, perm[i])) ok = false;
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if (!(ta[i][j] == tb[perm[i]][perm[j]])) ok = false;
    }
    if (!ok) continue;
    for (const auto& t : a.concurrent())
      if (!b.is_concurrent(perm[t[0]], perm[t[1]], perm[t[2]])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::optional<CatalogEntry> match_catalog(const CurveConfiguration& config) {
  for (const auto& e : catalog())
    if (isomorphic(config, e.config)) return e;
  return std::nullopt;
}

std::string KodairaFiber::label() const {
  switch (type) {
    case Type::I: return "I" + std::to_string(n);
    case Type::II: return "II";
    case Type::III: return "III";
    case Type::IV: return "IV";
  }
  return "?";
}

KodairaFiber parse_kodaira_fiber(const std::string& label) {
  if (label == "II") return {KodairaFiber::Type::II, 0};
  if (label == "III") return {KodairaFiber::Type::III, 0};
  if (label == "IV") return {KodairaFiber::Type::IV, 0};
  if (label.size() >= 2 && label[0] == 'I' &&
      std::all_of(label.begin() + 1, label.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return {KodairaFiber::Type::I, std::stoi(label.substr(1))};
  throw Error(ErrorCode::Parse, "unknown Kodaira fiber label '" + label + "'");
}

long euler_number(const KodairaFiber& fiber) {
  switch (fiber.type) {
    case KodairaFiber::Type::I: return fiber.n;
    case KodairaFiber::Type::II: return 2;
    case KodairaFiber::Type::III: return 3;
    case KodairaFiber::Type::IV: return 4;
  }
  return 0;
}

std::optional<KodairaFiber> recognize_kodaira_fiber(const CurveConfiguration& config) {
  const std::size_t n = config.size();
  if (n == 0 || !config.is_connected()) return std::nullopt;
  const Matrix g = config.gram();
  // Total fiber sum E_i must span the radical.
  for (std::size_t i = 0; i < n; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j) row += g(i, j);
    if (row != 0) return std::nullopt;
  }
  if (rank(g) != n - 1) return std::nullopt;
  if (n > 1) {
    std::vector<std::size_t> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 0);
    if (!is_negative_definite(config.subconfiguration(rest))) return std::nullopt;
  }
  std::vector<long> ones(n, 1);
  if (cycle_genus(config, ones) != 1) return std::nullopt;

  using T = KodairaFiber::Type;
  if (n == 1) {
    const auto& c = config.components()[0];
    if (c.pa != 1) return std::nullopt;
    switch (c.kind) {
      case CurveKind::Smooth: return KodairaFiber{T::I, 0};
      case CurveKind::Nodal: return KodairaFiber{T::I, 1};
      case CurveKind::Cuspidal: return KodairaFiber{T::II, 0};
    }
  }
  for (const auto& c : config.components())
    if (c.pa != 0 || c.self_int != -2) return std::nullopt;
  if (n == 2) {
    const Contact* ct = config.contact(0, 1);
    if (!ct || ct->multiplicity != 2) return std::nullopt;
    return ct->points == 2 ? KodairaFiber{T::I, 2} : KodairaFiber{T::III, 0};
  }
  if (n == 3 && config.is_concurrent(0, 1, 2)) return KodairaFiber{T::IV, 0};
  if (!config.concurrent().empty()) return std::nullopt;
  // Remaining restricted types: cycles of (-2)-curves.
  for (const auto& ct : config.contacts())
    if (ct.multiplicity != 1) return std::nullopt;
  std::vector<int> degree(n, 0);
  for (const auto& ct : config.contacts()) {
    ++degree[ct.a];
    ++degree[ct.b];
  }
  if (std::any_of(degree.begin(), degree.end(), [](int d) { return d != 2; })) return std::nullopt;
  return KodairaFiber{T::I, static_cast<int>(n)};
}

EulerBudget euler_budget(const std::vector<KodairaFiber>& required, long total, const KodairaFiber& multiple_fiber) {
  if (total < 0) throw Error(ErrorCode::InvalidArgument, "negative Euler number budget");
  long used = euler_number(multiple_fiber);
  for (const auto& f : required) used += euler_number(f);
  EulerBudget b;
  b.remainder = total - used;
  b.feasible = b.remainder >= 0;
  return b;
}

CurveConfiguration blown_up_fiber(const CurveConfiguration& fiber, const std::vector<int>& blowups) {
  if (blowups.size() != fiber.size()) throw Error(ErrorCode::InvalidArgument, "blow-up vector length mismatch");
  std::vector<Component> comps = fiber.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (blowups[i] < 0) throw Error(ErrorCode::InvalidArgument, "negative blow-up count");
    comps[i].self_int -= blowups[i];
  }
  return CurveConfiguration(comps, fiber.contacts(), fiber.concurrent());
}

}  // namespace sv
