#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sv/config_graph.hpp"
#include "sv/lattice.hpp"

namespace sv {

enum class AssertionStatus { Pass, Fail, Flagged };
std::string to_string(AssertionStatus s);
AssertionStatus parse_assertion_status(const std::string& text);

/// A known disagreement between a stated value and what the engine computes.
/// Only these may produce a flagged status.
struct Discrepancy {
  std::string id;
  std::string assertion;
  std::string stated;
  std::string computed;
  std::string note;
};

const std::vector<Discrepancy>& documented_discrepancies();
const Discrepancy* match_discrepancy(const std::string& assertion, const std::string& expected,
                                     const std::string& computed);
/// pass on equality, flagged on a registered discrepancy, fail otherwise.
AssertionStatus judge(const std::string& assertion, const std::string& expected, const std::string& computed);

struct Assertion {
  std::string name;
  std::string expected;
  std::string computed;
  AssertionStatus status = AssertionStatus::Fail;
  std::string anchor;

  bool operator==(const Assertion&) const = default;
};

struct PipelineSpec {
  std::string type;       // E12 E13 E14 Z11 Z12 Z13 W12 W13
  int n = 6;              // T_{2,3,n} at the [3,3]-point, E types only
  std::string fiber;      // second fibre: E13 I2|I3|III|IV, E14 I3|I4
  std::optional<CurveConfiguration> exceptional;  // defaults to the catalog entry
  std::string family;     // sextic family variant to check, Z/W types only

  bool operator==(const PipelineSpec&) const = default;
};

bool is_e_type(const std::string& type);
bool is_zw_type(const std::string& type);
/// Throws InvalidArgument on an unknown type or an illegal fibre / family.
void validate(const PipelineSpec& spec);
Json pipeline_spec_to_json(const PipelineSpec& spec);
PipelineSpec pipeline_spec_from_json(const Json& j);

struct PipelineResult {
  PipelineSpec spec;
  std::vector<std::pair<std::string, SurfaceModel>> chain;
  std::vector<Assertion> assertions;
  std::map<std::string, std::string> values;

  bool failed() const;
  const SurfaceModel* model(const std::string& stage) const;
};

/// 2(Gamma - K) on a Hirzebruch surface, 6H on the plane.
DivisorClass branch_class_for(const SurfaceModel& base);

PipelineResult run_en_pipeline(const PipelineSpec& spec);
PipelineResult run_zw_pipeline(const PipelineSpec& spec);
PipelineResult run_pipeline(const PipelineSpec& spec);

/// Class C_inf + k Gamma of the image of E1 on F_{1 - pa}, from
/// (C_inf + k Gamma).(K_P + Delta/2) = 1 with Delta.image = 2 pa + 4.
struct SectionClass {
  long pa = 0;
  long hirzebruch_n = 0;
  Rational k;
};
SectionClass section_class(long pa_e1);

/// deg of the branch curve of a double cover of the plane restricting to a
/// double cover of a line by a curve of arithmetic genus pa.
long riemann_hurwitz_degree(long pa);

struct MhatDiagnostics {
  Rational dot_f;      // M.F^
  Rational dot_fibre;  // M.(general fibre)
  Rational dot_e1;     // M.E1^
  Rational square;
  Rational dot_k;
  Rational chi;           // chi(O) + (M^2 - K.M)/2
  Rational deg_plus_rank; // deg + rank of O(2) + O(pa(E1)+1)
  Rational dot_g;
};
/// On Bl_x X for x in F off E1. Requires tracked curves F and E1.
MhatDiagnostics mhat_diagnostics(const SurfaceModel& x);

}  // namespace sv
