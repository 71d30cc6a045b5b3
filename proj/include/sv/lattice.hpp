#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sv/config_graph.hpp"

namespace sv {

using Json = nlohmann::json;

class IntersectionLattice {
 public:
  IntersectionLattice(std::vector<std::string> names, Matrix gram);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const Matrix& gram() const { return gram_; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;

  bool operator==(const IntersectionLattice& o) const { return names_ == o.names_ && gram_ == o.gram_; }

 private:
  std::vector<std::string> names_;
  Matrix gram_;
};

using LatticePtr = std::shared_ptr<const IntersectionLattice>;

/// Is `basis_change` (columns = images of b's generators written in a) an
/// isometry from b onto its image, i.e. P^T G_a P = G_b?
bool is_isometry(const IntersectionLattice& a, const IntersectionLattice& b, const Matrix& basis_change);

class DivisorClass {
 public:
  DivisorClass() = default;
  DivisorClass(LatticePtr lattice, RationalVector coeffs);
  static DivisorClass zero(LatticePtr lattice);
  static DivisorClass generator(LatticePtr lattice, const std::string& name);

  const LatticePtr& lattice() const { return lattice_; }
  const RationalVector& coeffs() const { return coeffs_; }
  Rational coeff(const std::string& name) const;
  bool is_integral() const;

  DivisorClass operator+(const DivisorClass& o) const;
  DivisorClass operator-(const DivisorClass& o) const;
  DivisorClass operator*(const Rational& s) const;
  bool operator==(const DivisorClass& o) const;

  Json to_json() const;

 private:
  void check_same(const DivisorClass& o) const;
  LatticePtr lattice_;
  RationalVector coeffs_;
};

inline DivisorClass operator*(const Rational& s, const DivisorClass& d) { return d * s; }

/// Throws LatticeMismatch when the classes live on different lattices.
Rational intersect(const DivisorClass& a, const DivisorClass& b);
/// Equality modulo the radical of the pairing.
bool numerically_equal(const DivisorClass& a, const DivisorClass& b);
std::string format_class(const DivisorClass& d);

struct TrackedCurve {
  std::string name;
  DivisorClass cls;
  long pa = 0;
  bool irreducible = true;
  CurveKind kind = CurveKind::Smooth;
  // false while the curve passes through a singular point of the model, where
  // adjunction need not return its genus
  bool checked = true;
};

struct SingularPoint {
  std::string name;
  std::vector<std::string> curves;
  std::string catalog_label;  // empty when no catalog entry matched
  EllipticClass kind = EllipticClass::Rational;
  long degree = 0;
};

enum class NakaiVerdict { Ample, NefNotAmple, NotNef };
std::string to_string(NakaiVerdict v);

/// Part of a split tracked curve. `pairings` gives intersections with existing
/// generators; missing generators default to an even share of the parent's.
struct SplitPart {
  std::string name;
  long pa = 0;
  CurveKind kind = CurveKind::Smooth;
  std::map<std::string, Rational> pairings;
};

class SurfaceModel {
 public:
  static SurfaceModel make_p2();
  static SurfaceModel make_hirzebruch(long n);
  static SurfaceModel replay(const Json& log);

  const LatticePtr& lattice() const { return lattice_; }
  const DivisorClass& canonical() const { return canonical_; }
  const Rational& chi() const { return chi_; }
  Rational k_squared() const { return intersect(canonical_, canonical_); }
  /// 12 chi - K^2.
  Rational c2() const { return 12 * chi_ - k_squared(); }
  const std::vector<TrackedCurve>& tracked() const { return tracked_; }
  const std::vector<SingularPoint>& singular_points() const { return singular_; }
  const Json& provenance() const { return log_; }

  const TrackedCurve* find_curve(const std::string& name) const;
  const TrackedCurve& curve(const std::string& name) const;
  /// Tracked curve name or generator name.
  DivisorClass class_of(const std::string& name) const;
  /// Linear combination of tracked curves / generators.
  DivisorClass divisor(const std::map<std::string, Rational>& terms) const;

  Rational adjunction_pa(const DivisorClass& d) const;
  Rational rr_chi(const DivisorClass& d) const;
  NakaiVerdict nakai_check(const DivisorClass& d) const;

  SurfaceModel track(const std::string& name, const DivisorClass& cls, long pa, CurveKind kind = CurveKind::Smooth,
                     bool irreducible = true) const;
  SurfaceModel blow_up(const std::string& exceptional, const std::map<std::string, long>& center) const;
  /// `renames` maps old tracked names to names for their preimages.
  SurfaceModel double_cover(const DivisorClass& half_branch, const std::vector<std::string>& branch_components,
                            const std::map<std::string, std::string>& renames = {}) const;
  /// Replace a point by an exceptional configuration. `incidences[c][j]` is the
  /// strict transform of tracked curve c dotted with component j.
  SurfaceModel resolve_point(const CurveConfiguration& exceptional,
                             const std::map<std::string, std::vector<long>>& incidences) const;
  SurfaceModel contract(const std::vector<std::string>& curves,
                        const std::optional<CurveConfiguration>& declared = std::nullopt) const;
  /// parts.size() >= 2; the last part is the remainder of the parent class.
  SurfaceModel split_tracked(const std::string& name, const std::vector<SplitPart>& parts,
                             const std::map<std::pair<std::string, std::string>, Rational>& mutual = {}) const;

  /// Configuration spanned by tracked curves; contact points default to
  /// transverse, so tangency and concurrency must come from `declared`.
  CurveConfiguration configuration_of(const std::vector<std::string>& curves) const;

  bool operator==(const SurfaceModel& o) const;

 private:
  SurfaceModel() = default;
  SurfaceModel with_step(Json step) const;
  void check_invariants() const;

  LatticePtr lattice_;
  DivisorClass canonical_;
  Rational chi_;
  std::vector<TrackedCurve> tracked_;
  std::vector<SingularPoint> singular_;
  Json log_ = Json::array();
};

Json configuration_to_json(const CurveConfiguration& c);
CurveConfiguration configuration_from_json(const Json& j);
/// Fractions are carried as strings; integers are accepted too.
Rational rational_from_json(const Json& j);

}  // namespace sv
