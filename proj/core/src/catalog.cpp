#include "icp/catalog.hpp"

#include <charconv>
#include <limits>
#include <cmath>
#include <numbers>

#include "icp/error.hpp"
#include "icp/quantum.hpp"

namespace icp::catalog {

namespace {

constexpr double kPi = std::numbers::pi;

int wrap(int i, int n) { return ((i - 1) % n + n) % n + 1; }

Measurement two_outcome(const std::string& id, RealVector e, const RealVector& unit,
                        std::string label) {
  RealVector rest = unit;
  for (std::size_t c = 0; c < rest.size(); ++c) rest[c] -= e[c];
  return Measurement{{Effect{std::move(e), id}, Effect{std::move(rest), id}}, std::move(label)};
}

CatalogEntry finish(CatalogEntry entry, Theory theory, std::vector<std::string> defaults) {
  const ObservedDimension od = observed_dimension(theory);
  theory.known_observed_dimension = od.d;
  entry.observed_dimension = od.d;
  for (auto& s : entry.pure_states) s.theory_id = theory.id;
  entry.id = theory.id;
  entry.theory = std::make_shared<const Theory>(std::move(theory));
  for (const auto& name : defaults) {
    const Measurement* m = entry.theory->find_measurement(name);
    if (m == nullptr) throw Error(ErrorKind::InvalidArgument, "catalog measurement " + name);
    entry.default_measurements.emplace(name, *m);
  }
  return entry;
}

std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

CatalogEntry polygon_with_id(int n, const std::string& id) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "polygon theories need n >= 3");
  const RealVector unit{0.0, 0.0, 1.0};
  std::vector<State> vertices;
  for (int i = 1; i <= n; ++i) vertices.push_back(State{polygon_vertex(n, i), id});

  std::vector<Effect> extreme;
  for (int i = 1; i <= n; ++i) extreme.push_back(Effect{polygon_effect(n, i), id});
  if (n % 2 == 1) {
    for (int i = 1; i <= n; ++i) {
      RealVector primed = unit;
      const auto e = polygon_effect(n, i);
      for (std::size_t c = 0; c < 3; ++c) primed[c] -= e[c];
      extreme.push_back(Effect{primed, id});
    }
  }

  std::vector<Measurement> measurements;
  const int m = n / 4;
  const int x_index = n % 2 == 0 ? 2 : 1;
  const int z_index = n % 2 == 0 ? m + 2 : m + 1;
  measurements.push_back(two_outcome(id, polygon_effect(n, x_index), unit, "X"));
  measurements.push_back(two_outcome(id, polygon_effect(n, wrap(z_index, n)), unit, "Z"));
  for (int i = 1; i <= n; ++i) {
    measurements.push_back(two_outcome(id, polygon_effect(n, i), unit, "E" + std::to_string(i)));
  }
  if (n == 3) {
    Measurement t{{}, "T"};
    for (int i = 1; i <= 3; ++i) t.effects.push_back(Effect{polygon_effect(3, i), id});
    measurements.push_back(std::move(t));
  }

  CatalogEntry entry;
  entry.pure_states = vertices;
  entry.notes = n % 2 == 0
                    ? "even polygon; X = {e_2, u-e_2}, Z = {e_(n/4+2), u-e_(n/4+2)}"
                    : "odd polygon; X = {e_1, e'_1}, Z = {e_(n/4+1), e'_(n/4+1)}";
  std::vector<std::string> defaults{"X", "Z"};
  if (n == 3) defaults.push_back("T");
  return finish(std::move(entry),
                make_polytope_theory(id, std::move(vertices), std::move(extreme),
                                     Effect{unit, id}, std::move(measurements)),
                std::move(defaults));
}

}  // namespace

const Measurement& CatalogEntry::measurement(std::string_view name) const {
  const Measurement* m = theory->find_measurement(name);
  if (m == nullptr) {
    throw Error(ErrorKind::InvalidArgument,
                "theory '" + id + "' has no measurement '" + std::string(name) + "'");
  }
  return *m;
}

double polygon_radius(int n) { return 1.0 / std::sqrt(std::cos(kPi / n)); }

RealVector polygon_vertex(int n, int i) {
  const double r = polygon_radius(n);
  const double a = 2.0 * kPi * wrap(i, n) / n;
  return {r * std::cos(a), r * std::sin(a), 1.0};
}

RealVector polygon_effect(int n, int i) {
  const double r = polygon_radius(n);
  i = wrap(i, n);
  if (n % 2 == 0) {
    const double a = (2.0 * i - 1.0) * kPi / n;
    return {0.5 * r * std::cos(a), 0.5 * r * std::sin(a), 0.5};
  }
  const double a = 2.0 * kPi * i / n;
  const double f = 1.0 / (1.0 + r * r);
  return {f * r * std::cos(a), f * r * std::sin(a), f};
}

CatalogEntry classical_bit() {
  const std::string id = "bit";
  std::vector<State> vertices{State{{1.0, 0.0}, id}, State{{0.0, 1.0}, id}};
  std::vector<Effect> extreme{Effect{{1.0, 0.0}, id}, Effect{{0.0, 1.0}, id}};
  std::vector<Measurement> ms;
  for (const char* label : {"X", "Z"}) ms.push_back(Measurement{extreme, label});
  CatalogEntry entry;
  entry.pure_states = vertices;
  entry.notes = "1-simplex; X and Z read the same bit";
  return finish(std::move(entry),
                make_polytope_theory(id, std::move(vertices), std::move(extreme),
                                     Effect{{1.0, 1.0}, id}, std::move(ms)),
                {"X", "Z"});
}

CatalogEntry classical_trit() {
  auto entry = polygon_with_id(3, "polygon:3");
  entry.notes = "classical trit (2-simplex drawn as a triangle); T reads the full trit";
  return entry;
}

CatalogEntry hbit() {
  const std::string id = "hbit";
  // Internal index 2a + b.
  std::vector<Measurement> allowed{
      Measurement{{Effect{{1, 1, 0, 0}, id}, Effect{{0, 0, 1, 1}, id}}, "X"},
      Measurement{{Effect{{1, 0, 1, 0}, id}, Effect{{0, 1, 0, 1}, id}}, "Z"},
  };
  CatalogEntry entry;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) entry.pure_states.push_back(hbit_state(a, b));
  }
  entry.notes = "two hidden classical bits (a, b); X reads a, Z reads b";
  return finish(std::move(entry), make_restricted_classical_theory(id, 4, std::move(allowed)),
                {"X", "Z"});
}

CatalogEntry sbit() {
  auto entry = polygon_with_id(4, "sbit");
  entry.notes = "square state space; X reads s_x, Z reads s_z";
  return entry;
}

State sbit_state(double s_x, double s_z) {
  const double r = polygon_radius(4);
  return State{{-0.5 * r * (s_x + s_z), 0.5 * r * (s_x - s_z), 1.0}, "sbit"};
}

State hbit_state(int a, int b) {
  if ((a != 0 && a != 1) || (b != 0 && b != 1)) {
    throw Error(ErrorKind::InvalidArgument, "hbit bits must be 0 or 1");
  }
  RealVector c(4, 0.0);
  c[static_cast<std::size_t>(2 * a + b)] = 1.0;
  return State{std::move(c), "hbit"};
}

Measurement qubit_rotated_measurement(double phi) {
  return quantum::qubit_axis_measurement("qubit", std::sin(phi), 0.0, std::cos(phi),
                                         "Z(" + format_number(phi) + ")");
}

CatalogEntry qubit() {
  const std::string id = "qubit";
  std::vector<Measurement> ms{
      quantum::qubit_axis_measurement(id, 1, 0, 0, "X"),
      quantum::qubit_axis_measurement(id, 0, 0, 1, "Z"),
      quantum::qubit_axis_measurement(id, 0, 1, 0, "Y"),
  };
  CatalogEntry entry;
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      double v[3] = {0, 0, 0};
      v[axis] = sign;
      entry.pure_states.push_back(quantum::bloch_state(id, v[0], v[1], v[2]));
    }
  }
  entry.notes = "Z(phi) rotates Z towards X by phi";
  return finish(std::move(entry), make_quantum_theory(id, 2, std::move(ms)), {"X", "Z", "Y"});
}

std::string pgnst_id(double p, int k) {
  return "pgnst:" + (std::isinf(p) ? std::string("inf") : format_number(p)) + ":" +
         std::to_string(k);
}

State pgnst_state(const std::string& theory_id, std::span<const double> means) {
  RealVector c(means.begin(), means.end());
  c.push_back(1.0);
  return State{std::move(c), theory_id};
}

CatalogEntry pgnst(double p, int k) {
  const std::string id = pgnst_id(p, k);
  Theory t = make_norm_constraint_theory(id, p, k);
  CatalogEntry entry;
  for (int i = 0; i < k; ++i) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> s(static_cast<std::size_t>(k), 0.0);
      s[static_cast<std::size_t>(i)] = sign;
      entry.pure_states.push_back(pgnst_state(id, s));
    }
  }
  entry.notes = "states (s_1..s_k, 1) with sum |s_i|^p <= 1; fiducial measurements only";
  std::vector<std::string> defaults{"X", "Z"};
  if (k == 3) defaults.push_back("Y");
  return finish(std::move(entry), std::move(t), std::move(defaults));
}

CatalogEntry polygon(int n) { return polygon_with_id(n, "polygon:" + std::to_string(n)); }

CatalogEntry quantum(int d) {
  const std::string id = "quantum:" + std::to_string(d);
  if (d < 2 || d > quantum::kMaxHilbertDim) {
    throw Error(ErrorKind::InvalidArgument, "quantum catalog supports d in 2..8");
  }
  const quantum::ComplexMatrix identity = quantum::ComplexMatrix::Identity(d, d);
  quantum::ComplexMatrix fourier(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      fourier(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2.0 * kPi * j * k / d);
    }
  }
  std::vector<Measurement> ms{quantum::projective_measurement(id, identity, "Z"),
                              quantum::projective_measurement(id, fourier, "X")};
  CatalogEntry entry;
  for (int j = 0; j < d; ++j) entry.pure_states.push_back(quantum::pure_state(id, identity.col(j)));
  entry.notes = "projective measurements only";
  return finish(std::move(entry), make_quantum_theory(id, d, std::move(ms)), {"X", "Z"});
}

namespace {

double parse_double(std::string_view s, std::string_view id) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidArgument, "bad number in theory id '" + std::string(id) + "'");
  }
  return v;
}

int parse_int(std::string_view s, std::string_view id) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidArgument, "bad integer in theory id '" + std::string(id) + "'");
  }
  return v;
}

}  // namespace

CatalogEntry lookup(std::string_view id) {
  if (id == "bit") return classical_bit();
  if (id == "trit") return classical_trit();
  if (id == "hbit") return hbit();
  if (id == "sbit") return sbit();
  if (id == "qubit") return qubit();
  const auto colon = id.find(':');
  if (colon != std::string_view::npos) {
    const auto head = id.substr(0, colon);
    const auto rest = id.substr(colon + 1);
    if (head == "polygon") {
      const int n = parse_int(rest, id);
      return n == 3 ? classical_trit() : polygon(n);
    }
    if (head == "quantum") {
      const int d = parse_int(rest, id);
      return quantum(d);
    }
    if (head == "pgnst") {
      const auto second = rest.find(':');
      const double p = parse_double(rest.substr(0, second), id);
      const int k = second == std::string_view::npos ? 2 : parse_int(rest.substr(second + 1), id);
      return pgnst(p, k);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown theory id '" + std::string(id) + "'");
}

std::vector<CatalogEntry> standard_catalog() {
  std::vector<CatalogEntry> out;
  out.push_back(classical_bit());
  out.push_back(classical_trit());
  out.push_back(hbit());
  out.push_back(sbit());
  out.push_back(qubit());
  out.push_back(quantum(3));
  for (double p : {2.0, 3.0, std::numeric_limits<double>::infinity()}) out.push_back(pgnst(p, 2));
  out.push_back(pgnst(3.0, 3));
  for (int n = 5; n <= 8; ++n) out.push_back(polygon(n));
  return out;
}

}  // namespace icp::catalog
