#include "icp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>

#include "icp/catalog.hpp"
#include "icp/entropy.hpp"
#include "icp/error.hpp"
#include "icp/parallel.hpp"
#include "icp/quantum.hpp"
#include "icp/random.hpp"

namespace icp {

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::Grid: return "grid";
    case Strategy::CoordinateDescent: return "coordinate-descent";
    case Strategy::RandomRestart: return "random-restart";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "grid") return Strategy::Grid;
  if (name == "coordinate-descent") return Strategy::CoordinateDescent;
  if (name == "random-restart") return Strategy::RandomRestart;
  throw Error(ErrorKind::InvalidArgument, "unknown strategy '" + std::string(name) + "'");
}

void validate(const OptimizerConfig& c) {
  if (!(c.resolution > 0.0) || c.resolution >= 1.0) {
    throw Error(ErrorKind::InvalidArgument, "optimizer resolution must lie in (0, 1)");
  }
  if (c.max_evals < 1) throw Error(ErrorKind::InvalidArgument, "optimizer max_evals must be >= 1");
  if (c.restarts < 1) throw Error(ErrorKind::InvalidArgument, "optimizer restarts must be >= 1");
}

namespace {

constexpr double kMinStep = 1e-10;

enum class Chart { Polytope, Simplex, Ball, Bloch, Amplitudes };

/// Maps box parameters to an ensemble over register cells and evaluates the
/// penalized objective without allocating.
class Encoder {
 public:
  Encoder(const Theory& theory, const std::vector<Measurement>& measurements)
      : theory_(theory), measurements_(measurements) {
    ambient_ = theory.ambient_dimension();
    cells_ = 1;
    for (const auto& m : measurements) {
      alphabets_.push_back(static_cast<int>(m.outcome_count()));
      cells_ *= m.outcome_count();
    }
    digits_.assign(cells_ * measurements.size(), 0);
    for (std::size_t c = 0; c < cells_; ++c) {
      std::size_t rest = c;
      for (std::size_t r = measurements.size(); r-- > 0;) {
        digits_[c * measurements.size() + r] =
            static_cast<int>(rest % static_cast<std::size_t>(alphabets_[r]));
        rest /= static_cast<std::size_t>(alphabets_[r]);
      }
    }
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, PolytopeSpace>) {
            chart_ = Chart::Polytope;
            per_cell_ = s.vertices.size();
            for (const auto& v : s.vertices) vertices_.push_back(v.coords);
          } else if constexpr (std::is_same_v<T, RestrictedClassicalSpace>) {
            chart_ = Chart::Simplex;
            per_cell_ = static_cast<std::size_t>(s.internal_states);
          } else if constexpr (std::is_same_v<T, NormConstraintSpace>) {
            chart_ = Chart::Ball;
            per_cell_ = static_cast<std::size_t>(s.k);
            p_ = s.p;
          } else {
            dim_ = s.hilbert_dim;
            chart_ = s.hilbert_dim == 2 ? Chart::Bloch : Chart::Amplitudes;
            per_cell_ = s.hilbert_dim == 2 ? 3 : 2 * static_cast<std::size_t>(s.hilbert_dim);
          }
        },
        theory.variant);
    std::size_t outcomes = 0;
    for (const auto& m : measurements) outcomes += m.outcome_count();
    probs_.assign(cells_ * outcomes, 0.0);
    weights_.assign(cells_, 0.0);
    state_.assign(ambient_, 0.0);
  }

  std::size_t dimension() const { return cells_ * (1 + per_cell_); }
  std::size_t cells() const { return cells_; }
  const std::vector<int>& alphabets() const { return alphabets_; }
  int digit(std::size_t cell, std::size_t reg) const {
    return digits_[cell * measurements_.size() + reg];
  }

  void cell_weights(std::span<const double> x, std::vector<double>& out) const {
    out.assign(cells_, 0.0);
    double total = 0.0;
    for (std::size_t c = 0; c < cells_; ++c) total += x[c];
    for (std::size_t c = 0; c < cells_; ++c) {
      out[c] = total > 0.0 ? x[c] / total : 1.0 / static_cast<double>(cells_);
    }
  }

  /// Coordinates of the state of `cell`.
  void cell_state(std::span<const double> x, std::size_t cell, RealVector& out) const {
    const double* t = x.data() + cells_ + cell * per_cell_;
    out.assign(ambient_, 0.0);
    switch (chart_) {
      case Chart::Polytope: {
        double total = 0.0;
        for (std::size_t v = 0; v < per_cell_; ++v) total += t[v];
        for (std::size_t v = 0; v < per_cell_; ++v) {
          const double w = total > 0.0 ? t[v] / total : 1.0 / static_cast<double>(per_cell_);
          for (std::size_t c = 0; c < ambient_; ++c) out[c] += w * vertices_[v][c];
        }
        break;
      }
      case Chart::Simplex: {
        double total = 0.0;
        for (std::size_t v = 0; v < per_cell_; ++v) total += t[v];
        for (std::size_t v = 0; v < per_cell_; ++v) {
          out[v] = total > 0.0 ? t[v] / total : 1.0 / static_cast<double>(per_cell_);
        }
        break;
      }
      case Chart::Ball: {
        double norm = 0.0;
        for (std::size_t i = 0; i < per_cell_; ++i) {
          const double s = 2.0 * t[i] - 1.0;
          out[i] = s;
          norm = std::isinf(p_) ? std::max(norm, std::abs(s)) : norm + std::pow(std::abs(s), p_);
        }
        if (!std::isinf(p_)) norm = std::pow(norm, 1.0 / p_);
        if (norm > 1.0) {
          for (std::size_t i = 0; i < per_cell_; ++i) out[i] /= norm;
        }
        out[per_cell_] = 1.0;
        break;
      }
      case Chart::Bloch: {
        double v[3];
        double n2 = 0.0;
        for (int i = 0; i < 3; ++i) {
          v[i] = 2.0 * t[i] - 1.0;
          n2 += v[i] * v[i];
        }
        if (n2 > 1.0) {
          const double n = std::sqrt(n2);
          for (double& c : v) c /= n;
        }
        // Chart order: rho_00, rho_11, Re rho_01, Im rho_01.
        out[0] = 0.5 * (1.0 + v[2]);
        out[1] = 0.5 * (1.0 - v[2]);
        out[2] = 0.5 * v[0];
        out[3] = -0.5 * v[1];
        break;
      }
      case Chart::Amplitudes: {
        quantum::ComplexVector psi(dim_);
        for (int i = 0; i < dim_; ++i) {
          psi(i) = {2.0 * t[2 * i] - 1.0, 2.0 * t[2 * i + 1] - 1.0};
        }
        if (psi.norm() == 0.0) psi(0) = 1.0;
        psi.normalize();
        out = quantum::state_coords(psi * psi.adjoint());
        break;
      }
    }
  }

  struct Value {
    double extractable = 0.0;
    double spread_penalty = 0.0;
  };

  Value evaluate(std::span<const double> x) {
    cell_weights(x, weights_);
    const std::size_t nm = measurements_.size();
    std::size_t offset = 0;
    std::vector<std::size_t>& base = base_;
    base.assign(nm, 0);
    for (std::size_t i = 0; i < nm; ++i) {
      base[i] = offset;
      offset += cells_ * measurements_[i].outcome_count();
    }
    for (std::size_t c = 0; c < cells_; ++c) {
      cell_state(x, c, state_);
      for (std::size_t i = 0; i < nm; ++i) {
        const auto& m = measurements_[i];
        const std::size_t nx = m.outcome_count();
        double* row = probs_.data() + base[i] + c * nx;
        double total = 0.0;
        for (std::size_t k = 0; k < nx; ++k) {
          double v = 0.0;
          const auto& e = m.effects[k].coords;
          for (std::size_t d = 0; d < ambient_; ++d) v += e[d] * state_[d];
          row[k] = std::clamp(v, 0.0, 1.0);
          total += row[k];
        }
        for (std::size_t k = 0; k < nx; ++k) row[k] /= total;
      }
    }

    gains_.assign(nm, 0.0);
    double sum_h_registers = 0.0;
    for (std::size_t i = 0; i < nm; ++i) {
      const std::size_t nx = measurements_[i].outcome_count();
      const auto na = static_cast<std::size_t>(alphabets_[i]);
      joint_.assign(nx * na, 0.0);
      for (std::size_t c = 0; c < cells_; ++c) {
        const auto a = static_cast<std::size_t>(digit(c, i));
        const double* row = probs_.data() + base[i] + c * nx;
        for (std::size_t k = 0; k < nx; ++k) joint_[k * na + a] += weights_[c] * row[k];
      }
      marg_x_.assign(nx, 0.0);
      marg_a_.assign(na, 0.0);
      for (std::size_t k = 0; k < nx; ++k) {
        for (std::size_t a = 0; a < na; ++a) {
          marg_x_[k] += joint_[k * na + a];
          marg_a_[a] += joint_[k * na + a];
        }
      }
      const double ha = info::entropy_bits(marg_a_);
      sum_h_registers += ha;
      gains_[i] = std::max(info::entropy_bits(marg_x_) + ha - info::entropy_bits(joint_), 0.0);
    }
    Value out;
    double redundancy = nm >= 2 ? sum_h_registers - info::entropy_bits(weights_) : 0.0;
    redundancy = std::max(redundancy, 0.0);
    const double mean = std::accumulate(gains_.begin(), gains_.end(), 0.0) / static_cast<double>(nm);
    for (double g : gains_) {
      out.extractable += g;
      out.spread_penalty += (g - mean) * (g - mean);
    }
    out.extractable -= redundancy;
    return out;
  }

  CorrelatedEnsemble build(std::shared_ptr<const Theory> theory, std::span<const double> x) const {
    std::vector<double> w;
    cell_weights(x, w);
    std::vector<EnsembleEntry> entries;
    RealVector coords;
    for (std::size_t c = 0; c < cells_; ++c) {
      cell_state(x, c, coords);
      EnsembleEntry e;
      e.p = w[c];
      e.state = State{coords, theory->id};
      for (std::size_t r = 0; r < measurements_.size(); ++r) e.registers.push_back(digit(c, r));
      entries.push_back(std::move(e));
    }
    return build_ensemble(std::move(theory), std::move(entries), alphabets_);
  }

 private:
  const Theory& theory_;
  const std::vector<Measurement>& measurements_;
  Chart chart_ = Chart::Polytope;
  std::size_t ambient_ = 0;
  std::size_t cells_ = 1;
  std::size_t per_cell_ = 0;
  double p_ = 2.0;
  int dim_ = 2;
  std::vector<int> alphabets_;
  std::vector<int> digits_;
  std::vector<RealVector> vertices_;

  std::vector<double> probs_, weights_, joint_, marg_x_, marg_a_, gains_;
  std::vector<std::size_t> base_;
  RealVector state_;
};

struct RestartResult {
  double objective = -std::numeric_limits<double>::infinity();
  std::vector<double> x;
  std::uint64_t evals = 0;
  bool exhausted = false;
};

class Search {
 public:
  Search(Encoder& enc, const OptimizerConfig& config) : enc_(enc), config_(config) {}

  double f(std::span<const double> x) {
    ++evals_;
    const auto v = enc_.evaluate(x);
    return v.extractable - weight_ * v.spread_penalty;
  }

  bool out_of_budget() const { return evals_ >= config_.max_evals; }

  /// Compass search with per-coordinate adaptive steps.
  void compass(std::vector<double>& x, double& fx, double initial_step) {
    const std::size_t d = x.size();
    std::vector<double> step(d, initial_step);
    std::vector<double> y = x;
    while (!out_of_budget()) {
      double largest = 0.0;
      for (std::size_t j = 0; j < d && !out_of_budget(); ++j) {
        bool moved = false;
        for (double dir : {1.0, -1.0}) {
          const double candidate = std::clamp(x[j] + dir * step[j], 0.0, 1.0);
          if (candidate == x[j]) continue;
          y[j] = candidate;
          const double fy = f(y);
          if (fy > fx) {
            x[j] = candidate;
            fx = fy;
            moved = true;
            break;
          }
          y[j] = x[j];
        }
        step[j] = moved ? std::min(2.0 * step[j], 0.5) : 0.5 * step[j];
        largest = std::max(largest, step[j]);
      }
      if (largest < kMinStep) break;
    }
  }

  /// Cyclic exhaustive 1-D scans on the resolution grid.
  void grid(std::vector<double>& x, double& fx) {
    const auto points = static_cast<std::size_t>(std::llround(1.0 / config_.resolution));
    std::vector<double> y = x;
    bool improved = true;
    while (improved && !out_of_budget()) {
      improved = false;
      for (std::size_t j = 0; j < x.size() && !out_of_budget(); ++j) {
        for (std::size_t k = 0; k <= points && !out_of_budget(); ++k) {
          y[j] = std::min(1.0, static_cast<double>(k) * config_.resolution);
          const double fy = f(y);
          if (fy > fx) {
            fx = fy;
            x[j] = y[j];
            improved = true;
          }
        }
        y[j] = x[j];
      }
    }
  }

  RestartResult run(std::vector<double> x, random::Engine& rng) {
    std::vector<double> weights{0.0};
    if (config_.equal_gain_constraint) {
      weights.clear();
      const double top = 10.0 / config_.resolution;
      for (double w = 1.0; w < top; w *= 10.0) weights.push_back(w);
      weights.push_back(top);
    }
    RestartResult out;
    if (config_.strategy == Strategy::RandomRestart) {
      weight_ = weights.front();
      double best = f(x);
      const std::size_t samples = std::max<std::size_t>(200, 20 * x.size());
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<double> y(x.size());
      for (std::size_t s = 0; s < samples && !out_of_budget(); ++s) {
        for (double& v : y) v = u(rng);
        const double fy = f(y);
        if (fy > best) {
          best = fy;
          x = y;
        }
      }
    }
    double fx = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      weight_ = weights[k];
      fx = f(x);
      if (config_.strategy == Strategy::Grid) {
        grid(x, fx);
      } else {
        compass(x, fx, k == 0 ? 0.25 : 0.02);
      }
      if (out_of_budget()) break;
    }
    out.objective = fx;
    out.x = std::move(x);
    out.evals = evals_;
    out.exhausted = out_of_budget();
    return out;
  }

 private:
  Encoder& enc_;
  const OptimizerConfig& config_;
  double weight_ = 0.0;
  std::uint64_t evals_ = 0;
};

}  // namespace

std::size_t parameter_count(const Theory& theory, const std::vector<Measurement>& measurements) {
  return Encoder(theory, measurements).dimension();
}

OptimizeResult maximize_extractable(std::shared_ptr<const Theory> theory,
                                    const std::vector<Measurement>& measurements,
                                    const OptimizerConfig& config,
                                    std::span<const double> warm_start) {
  validate(config);
  if (!theory) throw Error(ErrorKind::InvalidArgument, "optimizer needs a theory");
  if (measurements.empty()) throw Error(ErrorKind::InvalidArgument, "optimizer needs measurements");
  for (const auto& m : measurements) {
    if (auto c = validate_measurement(*theory, m); !c) {
      throw Error(ErrorKind::InvalidMeasurement, "measurement '" + m.label + "': " + c.diagnostic);
    }
  }
  const std::size_t dim = Encoder(*theory, measurements).dimension();
  if (!warm_start.empty() && warm_start.size() != dim) {
    throw Error(ErrorKind::DimensionMismatch, "warm start has the wrong number of parameters");
  }

  std::vector<RestartResult> results(static_cast<std::size_t>(config.restarts));
  parallel_for(results.size(), config.threads, [&](std::size_t r) {
    Encoder enc(*theory, measurements);
    auto rng = random::make_engine(config.seed, r);
    std::vector<double> x(dim);
    if (r == 0 && !warm_start.empty()) {
      x.assign(warm_start.begin(), warm_start.end());
    } else {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (double& v : x) v = u(rng);
    }
    Search search(enc, config);
    results[r] = search.run(std::move(x), rng);
  });

  std::size_t best = 0;
  OptimizeResult out;
  for (std::size_t r = 0; r < results.size(); ++r) {
    out.evaluations += results[r].evals;
    out.budget_exhausted = out.budget_exhausted || results[r].exhausted;
    if (results[r].objective > results[best].objective) best = r;
  }
  Encoder enc(*theory, measurements);
  out.best_restart = static_cast<int>(best);
  out.objective = results[best].objective;
  out.parameters = results[best].x;
  out.ensemble = enc.build(theory, out.parameters);
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    out.assignment.pairs.push_back(ObservablePair{measurements[i], static_cast<int>(i)});
  }
  out.report = evaluate_icp(out.ensemble, out.assignment);
  const auto [lo, hi] = std::minmax_element(out.report.gains.begin(), out.report.gains.end());
  out.gain_spread = *hi - *lo;
  out.constraint_satisfied = !config.equal_gain_constraint || out.gain_spread <= config.resolution;
  return out;
}

std::vector<double> default_sweep_grid(int count) {
  if (count < 2) throw Error(ErrorKind::InvalidArgument, "sweep grid needs at least two points");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(std::numbers::pi / 2.0 * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return out;
}

std::vector<SweepRow> qubit_rotation_sweep(std::span<const double> thetas,
                                           const OptimizerConfig& config) {
  for (double t : thetas) {
    if (!(t >= 0.0 && t <= std::numbers::pi / 2.0 + 1e-15)) {
      throw Error(ErrorKind::InvalidArgument, "sweep angles must lie in [0, pi/2]");
    }
  }
  const auto entry = catalog::qubit();
  std::vector<std::size_t> order(thetas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return thetas[a] > thetas[b]; });

  std::vector<SweepRow> rows(thetas.size());
  std::vector<double> warm;
  for (std::size_t idx : order) {
    const double theta = thetas[idx];
    std::vector<Measurement> ms{entry.measurement("X"),
                                catalog::qubit_rotated_measurement(std::numbers::pi / 2.0 - theta)};
    auto cfg = config;
    cfg.equal_gain_constraint = true;
    const auto result = maximize_extractable(entry.theory, ms, cfg, warm);
    warm = result.parameters;
    SweepRow row;
    row.theta = theta;
    row.gains = result.report.gains;
    row.gain_sum = std::accumulate(row.gains.begin(), row.gains.end(), 0.0);
    row.redundancy = result.report.redundancy;
    row.extractable = result.report.extractable;
    row.bound = result.report.bound;
    row.margin = result.report.margin;
    rows[idx] = std::move(row);
  }
  return rows;
}

}  // namespace icp
