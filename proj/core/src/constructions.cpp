#include "icp/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "icp/catalog.hpp"
#include "icp/entropy.hpp"
#include "icp/error.hpp"
#include "icp/quantum.hpp"

namespace icp::constructions {

namespace {

constexpr double kPi = std::numbers::pi;

/// Binary entropy from the smaller-side probability q; exact near q = 0.
double hb(double q) {
  if (q <= 0.0 || q >= 1.0) return 0.0;
  return -(q * std::log(q) + (1.0 - q) * std::log1p(-q)) / std::numbers::ln2;
}

double gain(const ICPReport& r, std::size_t i) { return r.raw_gains.at(i); }

ViolationCertificate assemble(std::string name, CorrelatedEnsemble ensemble,
                              ObservableAssignment assignment) {
  ViolationCertificate cert;
  cert.name = std::move(name);
  cert.theory_id = ensemble.theory->id;
  cert.report = evaluate_icp(ensemble, assignment);
  cert.ensemble = std::move(ensemble);
  cert.assignment = std::move(assignment);
  return cert;
}

ObservableAssignment xz(const catalog::CatalogEntry& entry) {
  return ObservableAssignment{{{entry.measurement("X"), 0}, {entry.measurement("Z"), 1}}};
}

/// Standard crosschecks shared by the two-register constructions.
void record_report(ViolationCertificate& cert) {
  cert.direct["I(X:A)"] = gain(cert.report, 0);
  cert.direct["I(Z:B)"] = gain(cert.report, 1);
  cert.direct["redundancy"] = cert.report.raw_redundancy;
  cert.direct["extractable"] = cert.report.extractable;
}

double conditional(const info::JointTable& t, int outcome, int value) {
  const auto na = static_cast<std::size_t>(t.alphabets()[1]);
  const auto nx = static_cast<std::size_t>(t.alphabets()[0]);
  double pa = 0.0;
  for (std::size_t x = 0; x < nx; ++x) pa += t.probs()[x * na + static_cast<std::size_t>(value)];
  return t.probs()[static_cast<std::size_t>(outcome) * na + static_cast<std::size_t>(value)] / pa;
}

}  // namespace

void finalize_crosscheck(ViolationCertificate& cert) {
  cert.crosscheck_max_abs_diff = 0.0;
  for (const auto& [key, value] : cert.closed_form) {
    const auto it = cert.direct.find(key);
    if (it == cert.direct.end()) continue;
    cert.crosscheck_max_abs_diff = std::max(cert.crosscheck_max_abs_diff, std::abs(value - it->second));
  }
}

ViolationCertificate sbit_violation() {
  const auto entry = catalog::sbit();
  std::vector<EnsembleEntry> entries;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      entries.push_back({0.25, catalog::sbit_state(1.0 - 2.0 * i, 1.0 - 2.0 * j), {i, j}});
    }
  }
  auto cert = assemble("sbit", build_ensemble(entry.theory, std::move(entries)), xz(entry));
  cert.closed_form = {{"I(X:A)", 1.0}, {"I(Z:B)", 1.0}, {"redundancy", 0.0}, {"extractable", 2.0}};
  record_report(cert);
  cert.notes = "square corners: both fiducial outcomes certain, registers independent";
  finalize_crosscheck(cert);
  return cert;
}

ViolationCertificate hbit_violation() {
  const auto entry = catalog::hbit();
  std::vector<EnsembleEntry> entries;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) entries.push_back({0.25, catalog::hbit_state(i, j), {i, j}});
  }
  auto cert = assemble("hbit", build_ensemble(entry.theory, std::move(entries)), xz(entry));
  cert.closed_form = {{"I(X:A)", 1.0}, {"I(Z:B)", 1.0}, {"redundancy", 0.0}, {"extractable", 2.0}};
  record_report(cert);
  cert.notes = "hidden bits (a, b) = register values; only one bit is readable per shot";
  finalize_crosscheck(cert);
  return cert;
}

ViolationCertificate classical_bit_analysis(const OptimizerConfig& config) {
  const auto entry = catalog::classical_bit();
  auto cfg = config;
  cfg.equal_gain_constraint = true;
  const std::vector<Measurement> ms{entry.measurement("X"), entry.measurement("Z")};
  auto result = maximize_extractable(entry.theory, ms, cfg);
  ViolationCertificate cert;
  cert.name = "classical";
  cert.theory_id = entry.id;
  cert.ensemble = std::move(result.ensemble);
  cert.assignment = std::move(result.assignment);
  cert.report = std::move(result.report);
  cert.closed_form = {{"gain_sum", 2.0}, {"redundancy", 1.0}, {"extractable", 1.0}};
  cert.direct = {{"gain_sum", gain(cert.report, 0) + gain(cert.report, 1)},
                 {"redundancy", cert.report.raw_redundancy},
                 {"extractable", cert.report.extractable}};
  cert.crosscheck_tolerance = 1e-6;
  cert.notes = "equal-gain optimum found by " + std::string(to_string(cfg.strategy)) +
               " search; the information is fully redundant";
  finalize_crosscheck(cert);
  return cert;
}

ViolationCertificate qubit_rac_construction() {
  const auto entry = catalog::qubit();
  const double c = 1.0 / std::sqrt(2.0);
  std::vector<EnsembleEntry> entries;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      entries.push_back(
          {0.25, quantum::bloch_state("qubit", (1.0 - 2.0 * i) * c, 0.0, (1.0 - 2.0 * j) * c), {i, j}});
    }
  }
  auto cert = assemble("qubit-rac", build_ensemble(entry.theory, std::move(entries)), xz(entry));
  const double success = (2.0 + std::sqrt(2.0)) / 4.0;
  const double g = 1.0 - info::binary_entropy(success);
  cert.closed_form = {{"I(X:A)", g},
                      {"I(Z:B)", g},
                      {"redundancy", 0.0},
                      {"extractable", 2.0 * g},
                      {"success", success}};
  record_report(cert);
  const auto table = joint_outcome_table(cert.ensemble, cert.assignment.pairs[0].measurement, 0);
  cert.direct["success"] = conditional(table, 0, 0);
  cert.notes = "2->1 random access code on the X-Z great circle";
  finalize_crosscheck(cert);
  return cert;
}

ViolationCertificate qubit_single_species() {
  const auto entry = catalog::qubit();
  std::vector<EnsembleEntry> entries;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      entries.push_back({0.25, quantum::bloch_state("qubit", 1.0 - 2.0 * i, 0.0, 0.0), {i, j}});
    }
  }
  auto cert =
      assemble("qubit-single-species", build_ensemble(entry.theory, std::move(entries)), xz(entry));
  cert.closed_form = {{"I(X:A)", 1.0}, {"I(Z:B)", 0.0}, {"redundancy", 0.0}, {"extractable", 1.0}};
  record_report(cert);
  cert.notes = "register A encoded in X eigenstates; Z sees nothing";
  finalize_crosscheck(cert);
  return cert;
}

// ---------------------------------------------------------------------------
// Norm-constraint theories

namespace {

struct Boundary {
  double s_x, s_z, value;
};

/// Boundary point parameterized by the gap g = 1 - s_x.
Boundary boundary_by_gap(double p, double g) {
  const double s_x = 1.0 - g;
  // 1 - s_x^p and 1 - s_z computed without cancellation.
  const double t = g >= 1.0 ? 1.0 : -std::expm1(p * std::log1p(-g));
  const double s_z = t <= 0.0 ? 0.0 : std::pow(t, 1.0 / p);
  const double z_gap = t <= 0.0 ? 1.0 : -std::expm1(std::log(t) / p);
  return {s_x, s_z, hb(0.5 * g) + hb(0.5 * z_gap)};
}

void require_p(double p) {
  if (std::isnan(p) || p < 2.0) throw Error(ErrorKind::InvalidArgument, "p must be >= 2");
}

}  // namespace

double pgnst_boundary_entropy_sum(double p, double s_x) {
  require_p(p);
  if (!(s_x >= 0.0 && s_x <= 1.0)) throw Error(ErrorKind::InvalidArgument, "s_x must lie in [0,1]");
  if (std::isinf(p)) return hb(0.5 * (1.0 - s_x));
  return boundary_by_gap(p, 1.0 - s_x).value;
}

PgnstMinimum pgnst_min_entropy_sum(double p, const PgnstSearchConfig& config) {
  require_p(p);
  if (config.grid_points < 2 || !(config.min_gap > 0.0 && config.min_gap < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "invalid p-GNST grid specification");
  }
  if (std::isinf(p)) return {1.0, 1.0, 0.0};

  std::vector<double> gaps{0.0};
  const double lo = std::log(config.min_gap);
  for (int i = 0; i < config.grid_points; ++i) {
    gaps.push_back(std::exp(lo * (1.0 - static_cast<double>(i) / (config.grid_points - 1))));
  }
  gaps.back() = 1.0;

  std::size_t best = 0;
  double best_value = boundary_by_gap(p, gaps[0]).value;
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    const double v = boundary_by_gap(p, gaps[i]).value;
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double best_gap = gaps[best];
  // Golden-section refinement inside the neighbouring grid cells.
  double a = gaps[best == 0 ? 0 : best - 1];
  double b = gaps[std::min(best + 1, gaps.size() - 1)];
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = boundary_by_gap(p, c).value;
  double fd = boundary_by_gap(p, d).value;
  for (int it = 0; it < 200 && b - a > 1e-18; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = boundary_by_gap(p, c).value;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = boundary_by_gap(p, d).value;
    }
  }
  for (double g : {c, d}) {
    const double v = boundary_by_gap(p, g).value;
    if (v < best_value) {
      best_value = v;
      best_gap = g;
    }
  }
  const auto pt = boundary_by_gap(p, best_gap);
  return {pt.s_x, pt.s_z, pt.value};
}

ViolationCertificate pgnst_violation(double p, const PgnstSearchConfig& config) {
  const auto min = pgnst_min_entropy_sum(p, config);
  const auto entry = catalog::pgnst(p, 2);
  std::vector<EnsembleEntry> entries;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double s[2] = {(1.0 - 2.0 * i) * min.s_x, (1.0 - 2.0 * j) * min.s_z};
      entries.push_back({0.25, catalog::pgnst_state(entry.id, s), {i, j}});
    }
  }
  auto cert = assemble("pgnst", build_ensemble(entry.theory, std::move(entries)), xz(entry));
  const double gx = 1.0 - hb(0.5 * (1.0 - min.s_x));
  const double gz = 1.0 - hb(0.5 * (1.0 - min.s_z));
  cert.closed_form = {{"I(X:A)", gx},
                      {"I(Z:B)", gz},
                      {"redundancy", 0.0},
                      {"extractable", 2.0 - min.entropy_sum},
                      {"H_tilde", min.entropy_sum},
                      {"reduced_p(X=0)", 0.5},
                      {"reduced_p(Z=0)", 0.5}};
  record_report(cert);
  cert.direct["H_tilde"] = 2.0 - cert.report.extractable;
  RealVector mean(3, 0.0);
  for (const auto& e : cert.ensemble.entries) {
    for (std::size_t c = 0; c < 3; ++c) mean[c] += e.p * e.state.coords[c];
  }
  const State reduced{mean, entry.id};
  cert.direct["reduced_p(X=0)"] = measure(*entry.theory, entry.measurement("X"), reduced)[0];
  cert.direct["reduced_p(Z=0)"] = measure(*entry.theory, entry.measurement("Z"), reduced)[0];
  cert.notes = "psi_(+-,+-) = (+-s_x, +-s_z) at the boundary minimum of H(X)+H(Z)";
  finalize_crosscheck(cert);
  return cert;
}

PgnstBoundLedger pgnst_bound_check(double p, double epsilon, const PgnstSearchConfig& config) {
  require_p(p);
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  if (!((1.0 + epsilon) * p > 2.0)) {
    throw Error(ErrorKind::InvalidArgument, "the bound needs (1 + epsilon) p > 2");
  }
  if (!(config.window_low > 0.0 && config.window_low < config.window_high &&
        config.window_high < 1.0 && config.window_points >= 2)) {
    throw Error(ErrorKind::InvalidArgument, "invalid bound-check window");
  }
  PgnstBoundLedger ledger;
  ledger.p = p;
  ledger.epsilon = epsilon;
  const double lo = std::log(config.window_low);
  const double hi = std::log(config.window_high);
  // Ordered from the far end of the window towards s_x = 1.
  for (int i = 0; i < config.window_points; ++i) {
    const double g = std::exp(hi + (lo - hi) * i / (config.window_points - 1));
    BoundPoint pt;
    pt.gap = g;
    pt.lhs = std::pow(0.5 * g, 1.0 + epsilon);
    const double t = std::isinf(p) ? 1.0 : -std::expm1(p * std::log1p(-g));
    pt.rhs = 0.25 * (std::isinf(p) ? 1.0 : std::pow(t, 2.0 / p));
    pt.ratio = pt.rhs / pt.lhs;
    if (!(pt.lhs < pt.rhs)) ledger.pointwise = false;
    if (!ledger.points.empty() && !(pt.ratio > ledger.points.back().ratio)) {
      ledger.ratio_increasing = false;
    }
    ledger.points.push_back(pt);
  }
  ledger.lhs_at_one = std::pow(0.0, 1.0 + epsilon);
  ledger.rhs_at_one = std::isinf(p) ? 0.25 : 0.25 * std::pow(0.0, 2.0 / p);
  return ledger;
}

double rac_recovery_paper(double p) {
  require_p(p);
  return std::isinf(p) ? 1.0 : std::pow(0.5, 1.0 / p);
}

double rac_recovery_derived(double p) {
  require_p(p);
  if (std::isinf(p)) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (2.0 * std::pow(mid, p) <= 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (1.0 + lo);
}

// ---------------------------------------------------------------------------
// Polygons

std::pair<double, double> polygon_conditionals(int n) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "polygon theories need n >= 3");
  const int m = n / 4;
  if (n % 2 == 0) {
    const double p = 0.5 * (1.0 + std::sin(2.0 * kPi * m / n) * std::tan(kPi / n));
    return {p, p};
  }
  const int h = n / 2;
  const double sec2 = 1.0 / std::pow(std::cos(kPi / (2.0 * n)), 2);
  const double p00 = 0.25 *
                     (2.0 * std::cos(kPi / n) + std::cos(2.0 * kPi * m / n) +
                      std::cos(2.0 * kPi * (m - h) / n)) *
                     sec2;
  const double p11 =
      0.25 * (2.0 - std::cos(2.0 * kPi * m / n) - std::cos(2.0 * kPi * (m - h - 1) / n)) * sec2;
  return {p00, p11};
}

ViolationCertificate polygon_violation(int n) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "polygon theories need n >= 3");
  const auto entry = n == 3 ? catalog::classical_trit() : catalog::polygon(n);
  const auto& space = std::get<PolytopeSpace>(entry.theory->variant);
  auto vertex = [&](int i) { return space.vertices[static_cast<std::size_t>((i - 1) % n)]; };
  // Cells (a, b) -> vertex index.
  int cell[2][2];
  if (n % 2 == 0) {
    cell[0][0] = 2;
    cell[0][1] = 1;
    cell[1][0] = n / 2 + 1;
    cell[1][1] = n / 2 + 2;
  } else {
    cell[0][0] = 1;
    cell[0][1] = 1;
    cell[1][0] = n / 2 + 1;
    cell[1][1] = n / 2 + 2;
  }
  std::vector<EnsembleEntry> entries;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) entries.push_back({0.25, vertex(cell[a][b]), {a, b}});
  }
  auto cert = assemble("polygon", build_ensemble(entry.theory, std::move(entries)), xz(entry));

  const auto [p00, p11] = polygon_conditionals(n);
  const double h_z = info::binary_entropy(0.5 * (p00 + 1.0 - p11));
  const double i_zb = h_z - 0.5 * (info::binary_entropy(p00) + info::binary_entropy(p11));
  cert.closed_form = {{"p(Z=0|B=0)", p00}, {"p(Z=1|B=1)", p11}, {"I(X:A)", 1.0},
                      {"I(Z:B)", i_zb},    {"redundancy", 0.0},  {"extractable", 1.0 + i_zb}};
  record_report(cert);
  const auto zb = joint_outcome_table(cert.ensemble, cert.assignment.pairs[1].measurement, 1);
  cert.direct["p(Z=0|B=0)"] = conditional(zb, 0, 0);
  cert.direct["p(Z=1|B=1)"] = conditional(zb, 1, 1);
  cert.notes = n % 2 == 0 ? "even branch: vertices 2, 1, n/2+1, n/2+2"
                          : "odd branch: vertices 1, 1, floor(n/2)+1, floor(n/2)+2";
  finalize_crosscheck(cert);
  return cert;
}

namespace {

int max_clique(const std::vector<std::vector<bool>>& adj) {
  const std::size_t n = adj.size();
  int best = 0;
  std::vector<std::size_t> current;
  auto grow = [&](auto&& self, std::vector<std::size_t> candidates) -> void {
    if (current.size() + candidates.size() <= static_cast<std::size_t>(best)) return;
    if (candidates.empty()) {
      best = std::max(best, static_cast<int>(current.size()));
      return;
    }
    while (!candidates.empty()) {
      if (current.size() + candidates.size() <= static_cast<std::size_t>(best)) return;
      const std::size_t v = candidates.back();
      candidates.pop_back();
      std::vector<std::size_t> next;
      for (std::size_t u : candidates) {
        if (adj[v][u]) next.push_back(u);
      }
      current.push_back(v);
      self(self, std::move(next));
      current.pop_back();
    }
    best = std::max(best, static_cast<int>(current.size()));
  };
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  grow(grow, all);
  return best;
}

}  // namespace

MismatchRecord polygon_mismatch(int n) {
  if (n < 3 || n > 64) throw Error(ErrorKind::InvalidArgument, "mismatch scan supports 3 <= n <= 64");
  const auto entry = n == 3 ? catalog::classical_trit() : catalog::polygon(n);
  const auto& space = std::get<PolytopeSpace>(entry.theory->variant);
  std::vector<RealVector> effects;
  for (const auto& e : space.extreme_effects) {
    effects.push_back(e.coords);
    RealVector c = space.unit.coords;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= e.coords[i];
    effects.push_back(std::move(c));
  }
  const auto nv = space.vertices.size();
  std::vector<std::vector<bool>> adj(nv, std::vector<bool>(nv, false));
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = 0; j < nv; ++j) {
      if (i == j) continue;
      for (const auto& e : effects) {
        const double vi = dot(e, space.vertices[i].coords);
        const double vj = dot(e, space.vertices[j].coords);
        if (std::abs(vi - 1.0) <= kMembershipTol && std::abs(vj) <= kMembershipTol) {
          adj[i][j] = adj[j][i] = true;
          break;
        }
      }
    }
  }
  MismatchRecord rec;
  rec.n = n;
  rec.measurement_dimension = entry.observed_dimension;
  rec.information_dimension = max_clique(adj);
  rec.mismatch = rec.information_dimension > rec.measurement_dimension;
  return rec;
}

// ---------------------------------------------------------------------------
// Composite gbits

CompositeGbitRecord composite_gbit_extractable(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "gbit count must be >= 1");
  CompositeGbitRecord rec;
  rec.n = n;
  rec.p_rec = 0.5 + 1.0 / (2.0 * std::sqrt(2.0 * n + 1.0));
  rec.encoded_bits = std::pow(3.0, n);
  rec.extractable = rec.encoded_bits * (1.0 - info::binary_entropy(rec.p_rec));
  const std::vector<int> dims(static_cast<std::size_t>(n), 3);
  rec.bound = composite_information_bound_bits(dims);
  rec.violated = rec.extractable > rec.bound;
  return rec;
}

int minimal_violating_gbits(int max_n) {
  for (int n = 1; n <= max_n; ++n) {
    if (composite_gbit_extractable(n).violated) return n;
  }
  return 0;
}

}  // namespace icp::constructions
