#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "icp/catalog.hpp"
#include "icp/constructions.hpp"
#include "icp/entropy.hpp"
#include "icp/serialization.hpp"

using namespace icp;
using namespace icp::constructions;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();

double h2(double x) {
  if (x <= 0 || x >= 1) return 0.0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

double dot3(const RealVector& a, const RealVector& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Conditionals recomputed from raw geometry: uniform cells, B = 0 cells are
// (a, 0) and Z outcome 0 is the Z effect.
std::pair<double, double> conditionals_oracle(int n) {
  const bool even = n % 2 == 0;
  const int h = n / 2, m = n / 4;
  const int z = even ? m + 2 : m + 1;
  const int c00 = even ? 2 : 1, c01 = even ? 1 : 1, c10 = even ? h + 1 : h + 1, c11 = even ? h + 2 : h + 2;
  const auto ez = catalog::polygon_effect(n, z);
  auto pz0 = [&](int v) { return dot3(ez, catalog::polygon_vertex(n, v)); };
  return {0.5 * (pz0(c00) + pz0(c10)), 1.0 - 0.5 * (pz0(c01) + pz0(c11))};
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("sbit and hbit certificates") {
  for (const auto& cert : {sbit_violation(), hbit_violation()}) {
    CAPTURE(cert.name);
    CHECK(cert.report.extractable == Approx(2.0).epsilon(1e-12));
    CHECK(cert.report.observed_dim == 2);
    CHECK(cert.report.violated);
    CHECK(cert.crosscheck_passed());
  }
}

TEST_CASE("qubit random access code") {
  const auto cert = qubit_rac_construction();
  const double p = 0.5 + std::sqrt(2.0) / 4;
  CHECK(cert.direct.at("success") == Approx(p).epsilon(1e-12));
  CHECK(cert.report.extractable == Approx(2 * (1 - h2(p))).epsilon(1e-12));
  CHECK_FALSE(cert.report.violated);
  CHECK(cert.crosscheck_passed());
  const auto single = qubit_single_species();
  CHECK(single.report.extractable <= 1.0 + 1e-9);
}

TEST_CASE("pgnst boundary entropy against the direct formula") {
  for (double p : {2.0, 2.5, 3.0, 4.0, 8.0}) {
    for (double s : {0.0, 0.2, 0.5, 0.9, 0.999}) {
      const double sz = std::pow(1 - std::pow(s, p), 1 / p);
      const double expected = h2((1 + s) / 2) + h2((1 + sz) / 2);
      CHECK(pgnst_boundary_entropy_sum(p, s) == Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("pgnst minimum entropy sum") {
  CHECK(pgnst_min_entropy_sum(2.0).entropy_sum == Approx(1.0).epsilon(1e-6));
  CHECK(pgnst_min_entropy_sum(3.0).entropy_sum == Approx(0.9578).epsilon(1e-4));
  CHECK(pgnst_min_entropy_sum(4.0).entropy_sum == Approx(0.8012).epsilon(1e-4));
  CHECK(pgnst_min_entropy_sum(8.0).entropy_sum == Approx(0.49824).epsilon(1e-4));
  const auto corner = pgnst_min_entropy_sum(kInf);
  CHECK(corner.entropy_sum == 0.0);
  CHECK(corner.s_x == 1.0);
  CHECK(corner.s_z == 1.0);
}

TEST_CASE("pgnst minimum never beats a brute-force scan") {
  for (double p : {2.5, 3.0, 5.0}) {
    double brute = 1e300;
    for (int i = 0; i <= 20000; ++i) brute = std::min(brute, pgnst_boundary_entropy_sum(p, i / 20000.0));
    CHECK(pgnst_min_entropy_sum(p).entropy_sum <= brute + 1e-12);
  }
}

TEST_CASE("pgnst extractable information is nondecreasing in p") {
  double prev = -1.0;
  for (double p = 2.0; p <= 6.0 + 1e-12; p += 0.25) {
    const auto cert = pgnst_violation(p);
    CAPTURE(p);
    CHECK(cert.report.extractable >= prev - 1e-9);
    CHECK(cert.crosscheck_passed());
    prev = cert.report.extractable;
  }
}

TEST_CASE("pgnst bound ledgers") {
  for (auto [p, eps] : {std::pair{3.0, 0.1}, std::pair{4.0, 0.5}}) {
    const auto ledger = pgnst_bound_check(p, eps);
    CHECK(ledger.pointwise);
    CHECK(ledger.ratio_increasing);
    CHECK(ledger.lhs_at_one == 0.0);
    CHECK(ledger.rhs_at_one == 0.0);
    CHECK_FALSE(ledger.points.empty());
  }
  CHECK_THROWS_AS(pgnst_bound_check(2.0, 0.0), Error);
}

TEST_CASE("recovery probabilities") {
  for (double p : {2.0, 3.0, 4.0, 8.0}) {
    CHECK(rac_recovery_paper(p) == Approx(std::pow(0.5, 1 / p)).epsilon(1e-15));
    CHECK(rac_recovery_derived(p) == Approx((1 + std::pow(0.5, 1 / p)) / 2).epsilon(1e-12));
  }
  CHECK(rac_recovery_paper(kInf) == 1.0);
  CHECK(rac_recovery_derived(2.0) == Approx(0.85355).epsilon(1e-5));
}

TEST_CASE("polygon conditionals against the geometric oracle") {
  for (int n = 4; n <= 40; ++n) {
    CAPTURE(n);
    const auto [a, b] = polygon_conditionals(n);
    const auto [oa, ob] = conditionals_oracle(n);
    CHECK(a == Approx(oa).epsilon(1e-12));
    CHECK(b == Approx(ob).epsilon(1e-12));
  }
  CHECK(polygon_conditionals(6).first == Approx(0.75).epsilon(1e-12));
}

TEST_CASE("polygon violations") {
  CHECK(polygon_violation(4).report.extractable == Approx(2.0).epsilon(1e-12));
  CHECK(polygon_violation(6).report.extractable == Approx(1.18872).epsilon(1e-4));
  CHECK(polygon_violation(5).report.extractable == Approx(1.0704).epsilon(1e-4));
  for (int n = 4; n <= 30; ++n) {
    const auto cert = polygon_violation(n);
    CAPTURE(n);
    CHECK(cert.report.violated);
    CHECK(cert.crosscheck_passed());
  }
  // The triangle is a classical trit: the same encoding stays within its bound.
  CHECK_FALSE(polygon_violation(3).report.violated);
}

TEST_CASE("polygon extractable decreases along even and odd subsequences") {
  for (int start : {4, 5}) {
    double prev = 1e300;
    for (int n = start; n <= 40; n += 2) {
      const double v = polygon_violation(n).report.extractable;
      CAPTURE(n);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("measurement vs information dimension mismatch") {
  std::vector<int> mismatched;
  for (int n = 3; n <= 13; ++n) {
    if (polygon_mismatch(n).mismatch) mismatched.push_back(n);
  }
  CHECK(mismatched == std::vector<int>{4, 6});
  CHECK(polygon_mismatch(4).information_dimension == 4);
  CHECK(polygon_mismatch(3).information_dimension == 3);
}

TEST_CASE("composite gbits") {
  for (int n = 1; n <= 8; ++n) {
    const auto rec = composite_gbit_extractable(n);
    const double p = 0.5 + 1 / (2 * std::sqrt(2.0 * n + 1));
    CHECK(rec.p_rec == Approx(p).epsilon(1e-15));
    CHECK(rec.extractable == Approx(std::pow(3.0, n) * (1 - h2(p))).epsilon(1e-12));
    CHECK(rec.bound == Approx(2.0 * n).epsilon(1e-15));
    CHECK(rec.violated == (rec.extractable > rec.bound + 1e-9));
  }
  CHECK(composite_gbit_extractable(1).extractable == Approx(0.76798).epsilon(1e-5));
  CHECK(composite_gbit_extractable(4).extractable == Approx(6.618).epsilon(1e-3));
  CHECK(composite_gbit_extractable(5).extractable == Approx(16.186).epsilon(1e-3));
  CHECK(minimal_violating_gbits() == 5);
}

TEST_CASE("certificates survive a JSON round trip") {
  for (const auto& cert : {sbit_violation(), hbit_violation(), polygon_violation(7), pgnst_violation(3.0)}) {
    CAPTURE(cert.name);
    const auto j = io::to_json(cert);
    const auto text = j.dump();
    const auto back = io::Json::parse(text);
    const auto ensemble = io::ensemble_from_json(back);
    const auto ms = io::assignment_measurements(back, ensemble.theory->id);
    REQUIRE(ms.has_value());
    ObservableAssignment assignment;
    for (std::size_t i = 0; i < ms->size(); ++i) assignment.pairs.push_back({(*ms)[i], static_cast<int>(i)});
    const auto report = evaluate_icp(ensemble, assignment);
    CHECK(report.extractable == Approx(cert.report.extractable).epsilon(1e-12));
  }
}

}  // TEST_SUITE
