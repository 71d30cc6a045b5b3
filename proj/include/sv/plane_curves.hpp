#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sv/polynomial.hpp"

namespace sv {

struct RestrictionPattern {
  bool contained = false;
  std::vector<int> orders;  // vanishing order at each marked point
  int residual = 0;         // degree not accounted for by the marked points
  // squarefree structure of the residual: (factor degree, multiplicity)
  std::vector<std::pair<int, int>> residual_groups;
};

RestrictionPattern restrict_to_line(const HomogeneousForm& f, const Line& line, const std::vector<MarkedPoint>& marked);

struct InfinitelyNearPoint {
  int multiplicity = 0;
  std::string direction;  // "" at the base point, "[s:t]" in the parent's tangent coordinates
  int cone_multiplicity = 0;  // multiplicity of that direction in the parent's tangent cone
  std::vector<InfinitelyNearPoint> children;
  // irrational tangent directions: (squarefree degree, multiplicity in the cone)
  std::vector<std::pair<int, int>> irrational;
  bool truncated = false;  // depth ran out on a singular point
};

/// Multiplicity tree of the germ at the origin. depth >= 1.
InfinitelyNearPoint mult_sequence(const Germ& f, int depth);
InfinitelyNearPoint mult_sequence(const HomogeneousForm& f, const MarkedPoint& p, int depth);
/// Multiplicities along the path that always enters the child of largest multiplicity.
std::vector<int> principal_sequence(const InfinitelyNearPoint& tree);
/// Sum of m(m-1)/2 over the tree.
long delta_of(const InfinitelyNearPoint& tree);
/// False when singular points may hide in irrational directions or past the depth.
bool delta_complete(const InfinitelyNearPoint& tree);
std::string to_string(const InfinitelyNearPoint& tree);

/// dim C[[u,v]]/(gens) by truncation mod m^N. N starts at `start_bound` and
/// doubles at most `doublings` times until dim(N) = dim(N+1); nullopt when it
/// never settles (infinite or too large).
std::optional<long> local_algebra_dim(const std::vector<Germ>& gens, int start_bound, int doublings = 3);
std::optional<long> milnor_number(const Germ& f, int start_bound = 8);
std::optional<long> tjurina_number(const Germ& f, int start_bound = 8);
std::optional<long> intersection_multiplicity(const Germ& f, const Germ& g, int start_bound = 8);

enum class AnKind { NotOnCurve, Smooth, A, Other, Inconclusive };

struct AnType {
  AnKind kind = AnKind::Inconclusive;
  int n = 0;
  std::string label() const;
  bool operator==(const AnType&) const = default;
};

AnType an_type_at(const Germ& f);
AnType an_type_at(const HomogeneousForm& f, const MarkedPoint& p);

struct ThreeThreeProfile {
  bool is_33 = false;
  int n = 0;  // 6 or 7; 0 when the resolution pattern matches neither
  std::vector<int> sequence;
};

ThreeThreeProfile detect_33_point(const Germ& f);
ThreeThreeProfile detect_33_point(const HomogeneousForm& f, const MarkedPoint& p);

struct DecompositionCheck {
  bool product_matches = false;
  std::optional<long> intersection;  // (d1.d2) at the origin
  AnType first_type;                 // singularity of d1
};

/// f = d1 * d2 near the origin (up to a nonzero constant)?
DecompositionCheck check_decomposition(const Germ& f, const Germ& d1, const Germ& d2);

class ConditionSystem {
 public:
  explicit ConditionSystem(int degree);

  int degree() const { return degree_; }
  std::size_t space_dim() const { return monomials_.size(); }
  const std::vector<std::array<int, 3>>& monomials() const { return monomials_; }
  const std::vector<RationalVector>& rows() const { return rows_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t rank() const;

  void add_row(RationalVector row, std::string label);
  /// Multiplicity >= m at p: m(m+1)/2 functionals.
  void add_multiplicity(const MarkedPoint& p, int m);
  /// Order >= k at p of the restriction to a line through p.
  void add_line_order(const Line& line, const MarkedPoint& p, int k);
  void add_monomial_exclusion(const std::array<int, 3>& e);
  /// Multiplicity >= m1 at the infinitely near point of p in direction
  /// v = t u of the local chart, valid together with multiplicity >= m0 at p.
  void add_infinitely_near(const MarkedPoint& p, const Rational& t, int m0, int m1);
  /// Same conditions on G = F o A^{-1}: phi'(G) = phi(G o A).
  ConditionSystem transported(const Matrix& a) const;

 private:
  int degree_;
  std::vector<std::array<int, 3>> monomials_;
  std::vector<RationalVector> rows_;
  std::vector<std::string> labels_;
};

/// Projective dimension (space_dim - rank - 1); -1 for the empty system.
long linear_system_dim(const ConditionSystem& system);

/// Rows of the linear system on the 9 entries a_{rc} (index 3r+c) of the Lie
/// algebra element: A p parallel to p, l A parallel to l.
Matrix stabilizer_constraints(const std::vector<MarkedPoint>& points, const std::vector<Line>& lines);
/// 8 - rank of the constraints on traceless matrices.
long stabilizer_dim(const std::vector<MarkedPoint>& points, const std::vector<Line>& lines);

/// Global Tjurina number from the Hilbert function of C[x,y,z]/(Fx,Fy,Fz) in
/// degrees 3d-5..3d-3; nullopt when it is not constant there.
std::optional<long> global_tjurina(const HomogeneousForm& f);
long hilbert_function_jacobian(const HomogeneousForm& f, int k);

/// A normalized family Delta = fixed(lambda) + z * f5 of plane sextics.
struct SexticFamily {
  std::string type;      // Z11, W12, ...
  std::string variant;   // "case 1", "stated", ...
  std::function<HomogeneousForm(const Rational&)> fixed;
  bool has_lambda = false;
  std::vector<Rational> excluded_lambda;
  std::vector<std::array<int, 3>> excluded_monomials;  // in f5
  std::vector<MarkedPoint> points;                     // fixed by the normalization
  std::vector<Line> lines;
  // points on z = 0 where the restriction pattern is read
  std::function<std::vector<MarkedPoint>(const Rational&)> pattern_points;
  std::vector<int> pattern;
  std::optional<MarkedPoint> singular_point;  // where an A_n is imposed
  std::optional<int> singular_an;             // the A_n read at that point
  long table_count = 0;                       // the published count
  std::string discrepancy;                    // non-empty for the documented mismatch

  ConditionSystem conditions() const;
  long parameter_count() const;  // affine dimension incl. lambda
};

long orbit_dim_count(const SexticFamily& family);
/// Same count with markings and conditions moved by the projectivity a.
long orbit_dim_count_transported(const SexticFamily& family, const Matrix& a);

struct FamilyCheck {
  long count = 0;
  std::vector<std::vector<int>> patterns;  // one per lambda specialization
  std::vector<AnType> singular_types;
  std::vector<std::optional<long>> global_tau;
  std::vector<long> local_tau_sum;
  bool lambda_stable = true;  // identical combinatorial output for all lambdas
};

/// Evaluates a deterministic member at several admissible lambda values.
FamilyCheck check_family(const SexticFamily& family);

const std::vector<SexticFamily>& sextic_families();
const SexticFamily& find_family(const std::string& type, const std::string& variant);

}  // namespace sv
