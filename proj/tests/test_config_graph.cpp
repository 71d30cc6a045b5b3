#include "support.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "sv/config_graph.hpp"

using namespace sv;
using namespace sv::oracle;

namespace {

Component rat(const std::string& n, long s) { return {n, s, 0, CurveKind::Smooth}; }

CurveConfiguration tangent(long a, long b) { return CurveConfiguration({rat("E1", a), rat("E2", b)}, {{0, 1, 2, 1}}); }

CurveConfiguration concurrent(long a, long b, long c) {
  return CurveConfiguration({rat("E1", a), rat("E2", b), rat("E3", c)}, {{0, 1, 1, 1}, {0, 2, 1, 1}, {1, 2, 1, 1}},
                            {{0, 1, 2}});
}

}  // namespace

TEST_CASE("gram and canonical degrees") {
  auto c = tangent(-3, -2);
  auto g = c.gram();
  CHECK(g(0, 0) == -3);
  CHECK(g(0, 1) == 2);
  CHECK(g(1, 0) == 2);
  CHECK(c.canonical_degrees() == RationalVector{1, 0});
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS(CurveConfiguration({rat("A", -2), rat("A", -2)}, {}), Error);
  CHECK_THROWS_AS(CurveConfiguration({rat("A", -2), rat("B", -2)}, {{0, 1, 0, 0}}), Error);
  CHECK_THROWS_AS(CurveConfiguration({rat("A", -2), rat("B", -2)}, {{0, 1, 1, 1}, {1, 0, 1, 1}}), Error);
  CHECK_THROWS_AS(CurveConfiguration({rat("A", -2), rat("B", -2), rat("C", -2)}, {{0, 1, 1, 1}}, {{0, 1, 2}}), Error);
}

TEST_CASE("negative definiteness") {
  CHECK(is_negative_definite(CurveConfiguration({rat("E", -1)}, {})));
  // full I2 fiber: determinant 4 - 4 = 0
  CurveConfiguration i2({rat("A", -2), rat("B", -2)}, {{0, 1, 2, 2}});
  CHECK_FALSE(is_negative_definite(i2));
  auto e14 = concurrent(-3, -2, -2);
  CHECK(is_negative_definite(e14));
  auto minors = leading_minors(e14.gram());
  CHECK(minors == RationalVector{-3, 5, -3});
  CHECK(cofactor_det(e14.gram()) == -3);
  CHECK(sylvester_oracle(e14.gram()));
}

TEST_CASE("fundamental cycles of small configurations") {
  SUBCASE("E12") {
    CurveConfiguration e12({{"E1", -1, 1, CurveKind::Cuspidal}}, {});
    auto z = fundamental_cycle(e12);
    CHECK(z.coeffs == std::vector<long>{1});
    CHECK(z.self_intersection == -1);
    CHECK(z.arithmetic_genus == 1);
  }
  SUBCASE("A_n chains are reduced") {
    for (int n = 1; n <= 8; ++n) {
      auto entry = std::find_if(catalog().begin(), catalog().end(),
                                [&](const CatalogEntry& e) { return e.label == "A" + std::to_string(n); });
      REQUIRE(entry != catalog().end());
      auto z = fundamental_cycle(entry->config);
      CHECK(std::all_of(z.coeffs.begin(), z.coeffs.end(), [](long a) { return a == 1; }));
      CHECK(z.self_intersection == -2);
      CHECK(z.arithmetic_genus == 0);
      if (n <= 4) CHECK(brute_minimal_antinef(entry->config.gram(), 3) == z.coeffs);
    }
  }
  SUBCASE("W12") {
    auto z = fundamental_cycle(tangent(-3, -3));
    CHECK(z.self_intersection == -2);
    CHECK(z.canonical_degree == 2);
    CHECK(z.arithmetic_genus == 1);
  }
  SUBCASE("non-reduced: D4 has a double central curve") {
    CurveConfiguration d4({rat("C", -2), rat("A", -2), rat("B", -2), rat("D", -2)},
                          {{0, 1, 1, 1}, {0, 2, 1, 1}, {0, 3, 1, 1}});
    auto z = fundamental_cycle(d4);
    CHECK(z.coeffs == std::vector<long>{2, 1, 1, 1});
    CHECK(z.self_intersection == -2);
  }
  CHECK_THROWS_AS(fundamental_cycle(CurveConfiguration({rat("A", 0)}, {})), Error);
}

TEST_CASE("Laufer agrees with brute-force anti-nef search") {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<int> size_d(1, 4), self_d(-5, -1), mult_d(0, 2), pa_d(0, 3);
  int compared = 0;
  int attempts = 0;
  const auto start = std::chrono::steady_clock::now();
  while (compared < 240 && attempts < 20000) {
    ++attempts;
    const int n = size_d(rng);
    std::vector<Component> comps;
    for (int i = 0; i < n; ++i) comps.push_back({"C" + std::to_string(i), self_d(rng), pa_d(rng) == 0 ? 1 : 0, CurveKind::Smooth});
    std::vector<Contact> cts;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (int m = mult_d(rng); m > 0) cts.push_back({std::size_t(i), std::size_t(j), m, m});
    CurveConfiguration c(comps, cts);
    const bool nd = is_negative_definite(c);
    CHECK(nd == sylvester_oracle(c.gram()));
    if (!nd) continue;
    auto z = fundamental_cycle(c);
    // anti-nef
    auto zg = c.gram() * RationalVector(z.coeffs.begin(), z.coeffs.end());
    for (const auto& v : zg) CHECK(v <= 0);
    auto brute = brute_minimal_antinef(c.gram(), 4);
    if (brute) {
      CHECK(*brute == z.coeffs);
    } else {
      CHECK(*std::max_element(z.coeffs.begin(), z.coeffs.end()) > 4);
    }
    ++compared;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(compared >= 200);
  CHECK(secs < 10.0);
}

TEST_CASE("catalog invariants are recomputed") {
  int exceptional = 0;
  for (const auto& e : catalog()) {
    auto z = fundamental_cycle(e.config);
    CHECK(z.self_intersection == e.z_squared);
    CHECK(z.canonical_degree == e.k_dot_z);
    if (e.label[0] == 'E' || e.label[0] == 'Z' || e.label[0] == 'W') {
      ++exceptional;
      const long want = e.label[0] == 'E' ? -1 : -2;
      CHECK(z.self_intersection == want);
      CHECK(z.canonical_degree == -want);
      CHECK(z.arithmetic_genus == 1);
      auto v = classify_minimally_elliptic(e.config);
      CHECK(v.kind == EllipticClass::MinimallyElliptic);
      CHECK(v.degree == -want);
      // the pictured fibers with their blow-ups reproduce the entry
      auto fiber = parse_kodaira_fiber(e.kodaira_fiber);
      CurveConfiguration base;
      switch (fiber.type) {
        case KodairaFiber::Type::II: base = CurveConfiguration({{"F", 0, 1, CurveKind::Cuspidal}}, {}); break;
        case KodairaFiber::Type::III: base = tangent(-2, -2); break;
        case KodairaFiber::Type::IV: base = concurrent(-2, -2, -2); break;
        default: FAIL("unexpected fiber");
      }
      CHECK(recognize_kodaira_fiber(base) == fiber);
      CHECK(isomorphic(blown_up_fiber(base, e.blowups), e.config));
    }
  }
  CHECK(exceptional == 8);
}

TEST_CASE("minimally elliptic classification") {
  auto v = classify_minimally_elliptic(tangent(-3, -2));
  CHECK(v.kind == EllipticClass::MinimallyElliptic);
  CHECK(v.degree == 1);
  v = classify_minimally_elliptic(concurrent(-4, -2, -2));
  CHECK(v.kind == EllipticClass::MinimallyElliptic);
  CHECK(v.degree == 2);
  CurveConfiguration a2({rat("A", -2), rat("B", -2)}, {{0, 1, 1, 1}});
  CHECK(classify_minimally_elliptic(a2).kind == EllipticClass::Rational);
  // genus 2 curve: fundamental cycle genus 2
  CHECK(classify_minimally_elliptic(CurveConfiguration({{"C", -1, 2, CurveKind::Smooth}}, {})).kind ==
        EllipticClass::NotElliptic);
  // elliptic curve plus an elliptic tail is not minimal
  CurveConfiguration two({{"A", -3, 1, CurveKind::Smooth}, {"B", -3, 1, CurveKind::Smooth}}, {{0, 1, 1, 1}});
  CHECK(classify_minimally_elliptic(two).kind != EllipticClass::MinimallyElliptic);
}

TEST_CASE("catalog matching") {
  CHECK(match_catalog(tangent(-3, -2))->label == "E13");
  CHECK(match_catalog(tangent(-2, -3))->label == "E13");
  CHECK(match_catalog(concurrent(-3, -2, -3))->label == "W13");
  CHECK(match_catalog(concurrent(-2, -3, -3))->label == "W13");
  CHECK_FALSE(match_catalog(concurrent(-2, -2, -2)).has_value());
  // a triangle is not concurrent
  CurveConfiguration tri({rat("E1", -3), rat("E2", -2), rat("E3", -2)}, {{0, 1, 1, 1}, {0, 2, 1, 1}, {1, 2, 1, 1}});
  CHECK_FALSE(match_catalog(tri).has_value());
  // transverse double contact is not E13
  CurveConfiguration twice({rat("E1", -3), rat("E2", -2)}, {{0, 1, 2, 2}});
  CHECK_FALSE(match_catalog(twice).has_value());
  CHECK(match_catalog(CurveConfiguration({{"E", -1, 1, CurveKind::Nodal}}, {}))->label == "T237");
  CHECK(match_catalog(CurveConfiguration({{"E", -1, 1, CurveKind::Smooth}}, {}))->label == "T236");
  CHECK(match_catalog(CurveConfiguration({{"E", -2, 1, CurveKind::Cuspidal}}, {}))->label == "Z11");
}

TEST_CASE("Kodaira recognition") {
  CurveConfiguration i2({rat("A", -2), rat("B", -2)}, {{0, 1, 2, 2}});
  CHECK(recognize_kodaira_fiber(i2)->label() == "I2");
  CHECK(recognize_kodaira_fiber(tangent(-2, -2))->label() == "III");
  CHECK(recognize_kodaira_fiber(concurrent(-2, -2, -2))->label() == "IV");
  CurveConfiguration i3({rat("A", -2), rat("B", -2), rat("C", -2)}, {{0, 1, 1, 1}, {0, 2, 1, 1}, {1, 2, 1, 1}});
  CHECK(recognize_kodaira_fiber(i3)->label() == "I3");
  CurveConfiguration i4({rat("A", -2), rat("B", -2), rat("C", -2), rat("D", -2)},
                        {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 3, 1, 1}, {0, 3, 1, 1}});
  CHECK(recognize_kodaira_fiber(i4)->label() == "I4");
  CHECK(recognize_kodaira_fiber(CurveConfiguration({{"F", 0, 1, CurveKind::Cuspidal}}, {}))->label() == "II");
  CHECK(recognize_kodaira_fiber(CurveConfiguration({{"F", 0, 1, CurveKind::Nodal}}, {}))->label() == "I1");
  CHECK(recognize_kodaira_fiber(CurveConfiguration({{"F", 0, 1, CurveKind::Smooth}}, {}))->label() == "I0");
  CHECK_FALSE(recognize_kodaira_fiber(CurveConfiguration({rat("F", 0)}, {})).has_value());
  CHECK_FALSE(recognize_kodaira_fiber(tangent(-3, -2)).has_value());

  // relabeling does not change the verdict
  std::vector<std::size_t> perm{2, 0, 3, 1};
  CHECK(recognize_kodaira_fiber(i4.permuted(perm)) == recognize_kodaira_fiber(i4));
  auto e14 = concurrent(-3, -2, -2);
  std::vector<std::size_t> p3{1, 2, 0};
  do {
    CHECK(match_catalog(e14.permuted(p3))->label == "E14");
  } while (std::next_permutation(p3.begin(), p3.end()));
}

TEST_CASE("Euler budget") {
  using T = KodairaFiber::Type;
  auto b = euler_budget({{T::I, 4}}, 24, {T::I, 1});
  CHECK(b.feasible);
  CHECK(b.remainder == 19);
  CHECK(euler_budget({}, 0, {T::I, 0}).feasible);
  CHECK_FALSE(euler_budget({{T::IV, 0}}, 3, {T::I, 0}).feasible);
  CHECK(euler_number(parse_kodaira_fiber("III")) == 3);
  CHECK_THROWS_AS(parse_kodaira_fiber("I*"), Error);
}
