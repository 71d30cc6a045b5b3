#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sv/linalg.hpp"

namespace sv {

/// Singularity type of a single component (only relevant for p_a = 1 curves).
enum class CurveKind { Smooth, Nodal, Cuspidal };

std::string to_string(CurveKind kind);
CurveKind parse_curve_kind(const std::string& text);

struct Component {
  std::string name;
  long self_int = 0;
  long pa = 0;
  CurveKind kind = CurveKind::Smooth;

  bool operator==(const Component&) const = default;
};

/// Intersection data of two distinct components. `points` is the number of
/// distinct intersection points; multiplicity 2 at one point is a tangency.
struct Contact {
  std::size_t a = 0;
  std::size_t b = 0;
  long multiplicity = 1;
  long points = 1;

  bool operator==(const Contact&) const = default;
};

using Triple = std::array<std::size_t, 3>;

/// Weighted dual graph of a curve configuration. Pairwise intersection data
/// cannot tell a triangle from three curves through one point, so concurrency
/// is carried as explicit triples.
class CurveConfiguration {
 public:
  CurveConfiguration() = default;
  CurveConfiguration(std::vector<Component> components, std::vector<Contact> contacts,
                     std::vector<Triple> concurrent = {});

  std::size_t size() const { return components_.size(); }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<Contact>& contacts() const { return contacts_; }
  const std::vector<Triple>& concurrent() const { return concurrent_; }
  std::size_t index_of(const std::string& name) const;

  Matrix gram() const;
  /// K.E_i = 2 p_a(E_i) - 2 - E_i^2.
  RationalVector canonical_degrees() const;
  const Contact* contact(std::size_t i, std::size_t j) const;
  bool is_concurrent(std::size_t i, std::size_t j, std::size_t k) const;
  bool is_connected() const;

  CurveConfiguration subconfiguration(const std::vector<std::size_t>& idx) const;
  /// Component i of the result is component perm[i] of this configuration.
  CurveConfiguration permuted(const std::vector<std::size_t>& perm) const;

  bool operator==(const CurveConfiguration&) const = default;

 private:
  std::vector<Component> components_;
  std::vector<Contact> contacts_;
  std::vector<Triple> concurrent_;
};

struct FundamentalCycle {
  std::vector<long> coeffs;
  Rational self_intersection;
  Rational canonical_degree;
  Rational arithmetic_genus;
  std::size_t iterations = 0;
};

/// Sylvester criterion on the Gram matrix.
bool is_negative_definite(const CurveConfiguration& config);

/// Laufer's algorithm. Throws NotNegativeDefinite for non-contractible input
/// and Internal if the loop exceeds `iteration_cap`.
FundamentalCycle fundamental_cycle(const CurveConfiguration& config, std::size_t iteration_cap = 100000);

/// p_a of an arbitrary cycle sum a_i E_i by adjunction.
Rational cycle_genus(const CurveConfiguration& config, const std::vector<long>& coeffs);

enum class EllipticClass { MinimallyElliptic, Rational, NotElliptic };

struct EllipticVerdict {
  EllipticClass kind = EllipticClass::NotElliptic;
  long degree = 0;  // -Z^2
  FundamentalCycle cycle;
};

EllipticVerdict classify_minimally_elliptic(const CurveConfiguration& config);

struct CatalogEntry {
  std::string label;
  CurveConfiguration config;
  long z_squared = 0;
  long k_dot_z = 0;
  std::string equation;
  std::string kodaira_fiber;   // empty for A_n / T entries
  std::vector<int> blowups;    // smooth-point blow-ups per fiber component
};

/// Eight exceptional unimodal entries, A_1..A_8, T_{2,3,6}, T_{2,3,7}.
const std::vector<CatalogEntry>& catalog();
std::optional<CatalogEntry> match_catalog(const CurveConfiguration& config);
bool isomorphic(const CurveConfiguration& a, const CurveConfiguration& b);

struct KodairaFiber {
  enum class Type { I, II, III, IV };
  Type type = Type::I;
  int n = 0;  // only for I_n

  std::string label() const;
  bool operator==(const KodairaFiber&) const = default;
};

KodairaFiber parse_kodaira_fiber(const std::string& label);
long euler_number(const KodairaFiber& fiber);
std::optional<KodairaFiber> recognize_kodaira_fiber(const CurveConfiguration& config);

struct EulerBudget {
  bool feasible = false;
  long remainder = 0;
};

/// Required fibers plus the multiple fiber against a total c_2; the remainder
/// is filled with I_1 fibers.
EulerBudget euler_budget(const std::vector<KodairaFiber>& required, long total,
                         const KodairaFiber& multiple_fiber);

/// The configuration obtained from a Kodaira fiber by `blowups[i]` blow-ups in
/// smooth points of component i, with the fiber's strict transform kept.
CurveConfiguration blown_up_fiber(const CurveConfiguration& fiber, const std::vector<int>& blowups);

}  // namespace sv
