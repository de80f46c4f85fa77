#include <doctest.h>

#include <cmath>
#include <numbers>

#include "icp/catalog.hpp"
#include "icp/ensemble.hpp"
#include "icp/error.hpp"
#include "icp/optimizer.hpp"
#include "icp/proof_chain.hpp"
#include "icp/quantum.hpp"
#include "../support/random_ensembles.hpp"

using namespace icp;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// I(X:A) straight from a 2-D joint table by the definition sum p log p/(pa pb).
double mi_oracle(const std::vector<std::vector<double>>& joint) {
  std::vector<double> px(joint.size(), 0.0), pa(joint.front().size(), 0.0);
  for (std::size_t x = 0; x < joint.size(); ++x)
    for (std::size_t a = 0; a < joint[x].size(); ++a) {
      px[x] += joint[x][a];
      pa[a] += joint[x][a];
    }
  double mi = 0.0;
  for (std::size_t x = 0; x < joint.size(); ++x)
    for (std::size_t a = 0; a < joint[x].size(); ++a)
      if (joint[x][a] > 0) mi += joint[x][a] * std::log2(joint[x][a] / (px[x] * pa[a]));
  return mi;
}

testing::RandomInstance make_instance(std::uint64_t seed, const catalog::CatalogEntry& entry,
                             const std::vector<std::string>& labels, bool random_alphabets = false) {
  auto rng = random::make_engine(seed, 0);
  std::vector<Measurement> ms;
  for (const auto& l : labels) ms.push_back(entry.measurement(l));
  return testing::random_instance(rng, entry.theory, ms, random_alphabets);
}


}  // namespace

TEST_SUITE("engine") {

TEST_CASE("build_ensemble validation") {
  const auto bit = catalog::classical_bit();
  const State zero{{1.0, 0.0}, "bit"}, one{{0.0, 1.0}, "bit"};
  CHECK_NOTHROW(build_ensemble(bit.theory, {{0.5, zero, {0}}, {0.5, one, {1}}}));
  CHECK_THROWS_AS(build_ensemble(bit.theory, {{0.5, zero, {0}}, {0.6, one, {1}}}), Error);
  CHECK_THROWS_AS(build_ensemble(bit.theory, {{-0.5, zero, {0}}, {1.5, one, {1}}}), Error);
  CHECK_THROWS_AS(build_ensemble(bit.theory, {{0.5, zero, {0}}, {0.5, one, {-1}}}), Error);
  CHECK_THROWS_AS(build_ensemble(bit.theory, {{0.5, zero, {0}}, {0.5, one, {0, 1}}}), Error);
  CHECK_THROWS_AS(build_ensemble(bit.theory, {{1.0, State{{1.2, -0.2}, "bit"}, {0}}}), Error);
  const auto e = build_ensemble(bit.theory, {{0.5, zero, {0}}, {0.5, one, {2}}});
  CHECK(e.register_alphabets == std::vector<int>{3});
  CHECK(e.register_names == std::vector<std::string>{"A"});
  CHECK(default_register_name(1) == "B");
  CHECK(default_register_name(26) == "R27");
}

TEST_CASE("perfect classical encoding gives one bit") {
  const auto bit = catalog::classical_bit();
  const auto e = build_ensemble(bit.theory, {{0.5, State{{1.0, 0.0}, "bit"}, {0}}, {0.5, State{{0.0, 1.0}, "bit"}, {1}}});
  const std::string labels[] = {"X"};
  const auto r = evaluate_icp(e, assign_in_order(*bit.theory, labels));
  CHECK(r.extractable == Approx(1.0).epsilon(1e-12));
  CHECK(r.bound == Approx(1.0));
  CHECK_FALSE(r.violated);
}

TEST_CASE("sbit corner encoding gives two bits") {
  const auto sq = catalog::sbit();
  std::vector<EnsembleEntry> entries;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) entries.push_back({0.25, catalog::sbit_state(1 - 2 * a, 1 - 2 * b), {a, b}});
  const auto e = build_ensemble(sq.theory, entries);
  const std::string labels[] = {"X", "Z"};
  const auto r = evaluate_icp(e, assign_in_order(*sq.theory, labels));
  CHECK(r.extractable == Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(r.redundancy) < 1e-12);
  CHECK(r.violated);
  CHECK(r.margin == Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("gains match a hand-rolled mutual information") {
  const auto sq = catalog::sbit();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = make_instance(seed, sq, {"X", "Z"});
    const auto r = evaluate_icp(inst.ensemble, inst.assignment);
    for (std::size_t i = 0; i < 2; ++i) {
      std::vector<std::vector<double>> joint(2, std::vector<double>(2, 0.0));
      for (const auto& entry : inst.ensemble.entries) {
        const auto p = measure(*sq.theory, inst.assignment.pairs[i].measurement, entry.state);
        for (std::size_t x = 0; x < 2; ++x) joint[x][static_cast<std::size_t>(entry.registers[i])] += entry.p * p[x];
      }
      CHECK(r.raw_gains[i] == Approx(mi_oracle(joint)).epsilon(1e-12));
    }
  }
}

TEST_CASE("redundancy does not depend on the encoded states") {
  const auto sq = catalog::sbit();
  auto inst = make_instance(3, sq, {"X", "Z"});
  const auto before = evaluate_icp(inst.ensemble, inst.assignment);
  auto rng = random::make_engine(99, 0);
  for (auto& e : inst.ensemble.entries) e.state = testing::random_state(rng, *sq.theory);
  const auto after = evaluate_icp(inst.ensemble, inst.assignment);
  CHECK(after.raw_redundancy == Approx(before.raw_redundancy).epsilon(1e-15));
}

TEST_CASE("relabeling register values leaves the report unchanged") {
  const auto trit = catalog::classical_trit();
  auto inst = make_instance(4, trit, {"T", "X"}, true);
  const auto base = evaluate_icp(inst.ensemble, inst.assignment);
  auto flipped = inst.ensemble;
  for (auto& e : flipped.entries) e.registers[0] = flipped.register_alphabets[0] - 1 - e.registers[0];
  const auto r = evaluate_icp(flipped, inst.assignment);
  CHECK(r.extractable == Approx(base.extractable).epsilon(1e-12));
  CHECK(r.raw_redundancy == Approx(base.raw_redundancy).epsilon(1e-12));
}

TEST_CASE("ICP holds on random ensembles of classical and quantum theories") {
  struct Case {
    const char* id;
    std::vector<std::string> labels;
  };
  const std::vector<Case> cases{{"bit", {"X", "Z"}}, {"trit", {"T", "X"}}, {"trit", {"X", "Z", "E1"}}, {"qubit", {"X", "Z"}},
                                {"qubit", {"X", "Z", "Y"}}, {"quantum:3", {"X", "Z"}}};
  for (const auto& c : cases) {
    const auto entry = catalog::lookup(c.id);
    double worst = 1e300;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const auto inst = make_instance(seed, entry, c.labels, seed % 2 == 1);
      worst = std::min(worst, evaluate_icp(inst.ensemble, inst.assignment).margin);
    }
    CAPTURE(c.id);
    CHECK(worst >= -kViolationTol);
  }
}

TEST_CASE("assignment validation") {
  const auto sq = catalog::sbit();
  const auto inst = make_instance(1, sq, {"X", "Z"});
  ObservableAssignment dup{{{sq.measurement("X"), 0}, {sq.measurement("Z"), 0}}};
  CHECK_THROWS_AS(validate_assignment(inst.ensemble, dup), Error);
  ObservableAssignment out_of_range{{{sq.measurement("X"), 5}}};
  CHECK_THROWS_AS(validate_assignment(inst.ensemble, out_of_range), Error);
  const std::string unknown[] = {"Q"};
  CHECK_THROWS_AS(assign_in_order(*sq.theory, unknown), Error);
}

TEST_CASE("proof chain steps hold and the classical identity is exact") {
  for (const char* id : {"bit", "trit", "qubit"}) {
    const auto entry = catalog::lookup(id);
    const std::vector<std::string> labels = std::string(id) == "trit" ? std::vector<std::string>{"X", "T", "Z"}
                                                                     : std::vector<std::string>{"X", "Z"};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto inst = make_instance(seed, entry, labels);
      const auto ledger = info::proof_chain_check(inst.ensemble, inst.assignment);
      CAPTURE(id);
      CHECK(ledger.holds());
      const auto* identity = ledger.find("classical.identity");
      REQUIRE(identity != nullptr);
      CHECK(identity->margin >= -1e-12);
      const auto report = evaluate_icp(inst.ensemble, inst.assignment);
      CHECK(ledger.final_lhs == Approx(report.extractable).epsilon(1e-10));
    }
  }
}

TEST_CASE("proof chain lists the expected steps") {
  const auto trit = catalog::classical_trit();
  const auto inst = make_instance(2, trit, {"X", "T", "Z", "E1"});
  const auto ledger = info::proof_chain_check(inst.ensemble, inst.assignment);
  CHECK(ledger.observables == 4);
  for (const char* id : {"upper.conditional", "upper.dimension", "chain.rule", "chain.2", "chain.4", "superadditivity.3",
                         "classical.identity", "combined", "processing.1", "processing.4", "final"}) {
    CAPTURE(id);
    CHECK(ledger.find(id) != nullptr);
  }
}

TEST_CASE("proof chain is not applicable without a global entropy") {
  for (const char* id : {"sbit", "pgnst:3:2"}) {
    const auto entry = catalog::lookup(id);
    std::vector<EnsembleEntry> es{{1.0, entry.pure_states.front(), {0, 0}}};
    const auto e = build_ensemble(entry.theory, es, {2, 2});
    const std::string labels[] = {"X", "Z"};
    try {
      (void)info::proof_chain_check(e, assign_in_order(*entry.theory, labels));
      FAIL("expected NotApplicable");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::NotApplicable);
    }
  }
}

TEST_CASE("strategy names") {
  for (auto s : {Strategy::Grid, Strategy::CoordinateDescent, Strategy::RandomRestart}) CHECK(parse_strategy(to_string(s)) == s);
  CHECK_THROWS_AS(parse_strategy("annealing"), Error);
  OptimizerConfig bad;
  bad.resolution = 0.0;
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("optimizer: classical bit stays at one bit") {
  const auto bit = catalog::classical_bit();
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_evals = 50'000;
  cfg.equal_gain_constraint = true;
  const auto res = maximize_extractable(bit.theory, {bit.measurement("X"), bit.measurement("Z")}, cfg);
  CHECK(res.report.extractable == Approx(1.0).epsilon(1e-6));
  CHECK(res.report.extractable <= 1.0 + 1e-9);
}

TEST_CASE("optimizer: sbit reaches two bits") {
  const auto sq = catalog::sbit();
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_evals = 50'000;
  const auto res = maximize_extractable(sq.theory, {sq.measurement("X"), sq.measurement("Z")}, cfg);
  CHECK(res.report.extractable == Approx(2.0).epsilon(1e-6));
}

TEST_CASE("optimizer result re-evaluates to the reported value") {
  const auto q = catalog::qubit();
  OptimizerConfig cfg;
  cfg.restarts = 2;
  cfg.max_evals = 20'000;
  cfg.equal_gain_constraint = true;
  const auto res = maximize_extractable(q.theory, {q.measurement("X"), q.measurement("Z")}, cfg);
  const auto again = evaluate_icp(res.ensemble, res.assignment);
  CHECK(again.extractable == Approx(res.report.extractable).epsilon(1e-12));
  CHECK(res.parameters.size() == parameter_count(*q.theory, {q.measurement("X"), q.measurement("Z")}));
  CHECK(res.report.extractable <= 1.0 + 1e-9);
}

TEST_CASE("optimizer is deterministic across thread counts") {
  const auto q = catalog::qubit();
  OptimizerConfig cfg;
  cfg.restarts = 3;
  cfg.max_evals = 5'000;
  cfg.threads = 1;
  const auto a = maximize_extractable(q.theory, {q.measurement("X"), q.measurement("Z")}, cfg);
  cfg.threads = 3;
  const auto b = maximize_extractable(q.theory, {q.measurement("X"), q.measurement("Z")}, cfg);
  CHECK(a.report.extractable == b.report.extractable);
  CHECK(a.parameters == b.parameters);
}

TEST_CASE("rotation sweep endpoints") {
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_evals = 100'000;
  const double thetas[] = {0.0, kPi / 2};
  const auto rows = qubit_rotation_sweep(thetas, cfg);
  REQUIRE(rows.size() == 2);
  // Identical observables: one bit read twice, fully redundant.
  CHECK(rows[0].gain_sum == Approx(2.0).epsilon(1e-5));
  CHECK(rows[0].redundancy == Approx(1.0).epsilon(1e-5));
  CHECK(rows[0].extractable == Approx(1.0).epsilon(1e-6));
  CHECK(rows[1].extractable == Approx(0.79825).epsilon(1e-4));
  for (const auto& r : rows) CHECK(r.extractable <= 1.0 + 1e-9);
}

TEST_CASE("default sweep grid") {
  const auto g = default_sweep_grid(5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == Approx(kPi / 2));
}

}  // TEST_SUITE
