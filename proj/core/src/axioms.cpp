#include "icp/axioms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "icp/entropy.hpp"
#include "icp/error.hpp"
#include "icp/parallel.hpp"
#include "icp/random.hpp"

namespace icp::info {

std::string_view to_string(Axiom axiom) noexcept {
  switch (axiom) {
    case Axiom::I: return "i";
    case Axiom::II: return "ii";
    case Axiom::III: return "iii";
    case Axiom::IV: return "iv";
    case Axiom::V: return "v";
  }
  return "?";
}

std::string_view to_string(EntropyKind kind) noexcept {
  return kind == EntropyKind::Shannon ? "shannon" : "von_neumann";
}

double axiom_ii_violation(std::span<const double> probs, int d) {
  return entropy_bits(probs) - std::log2(static_cast<double>(d));
}

namespace {

constexpr std::size_t kAxiomCount = 5;

struct TrialResult {
  std::array<double, kAxiomCount> violation{};
  double reversed_iv = 0.0;
};

int pick(random::Engine& rng, std::initializer_list<int> options) {
  std::uniform_int_distribution<std::size_t> u(0, options.size() - 1);
  return *(options.begin() + static_cast<std::ptrdiff_t>(u(rng)));
}

TrialResult shannon_trial(random::Engine& rng) {
  const int ns = pick(rng, {2, 3, 4});
  const int na = pick(rng, {2, 3});
  const int nb = pick(rng, {2, 3});
  const int nx = pick(rng, {2, 3});
  const auto sab = random::flat_simplex(rng, static_cast<std::size_t>(ns * na * nb));
  // Measurement of S: a random classical channel s -> x.
  std::vector<std::vector<double>> channel;
  for (int s = 0; s < ns; ++s) channel.push_back(random::flat_simplex(rng, static_cast<std::size_t>(nx)));

  std::vector<double> probs;
  probs.reserve(sab.size() * static_cast<std::size_t>(nx));
  for (int s = 0; s < ns; ++s) {
    for (int a = 0; a < na; ++a) {
      for (int b = 0; b < nb; ++b) {
        const double p = sab[static_cast<std::size_t>((s * na + a) * nb + b)];
        for (int x = 0; x < nx; ++x) probs.push_back(p * channel[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)]);
      }
    }
  }
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  const JointTable t({"S", "A", "B", "X"}, {ns, na, nb, nx}, std::move(probs));

  constexpr int S[] = {0}, A[] = {1}, X[] = {3};
  constexpr int SA[] = {0, 1}, SB[] = {0, 2}, SAB[] = {0, 1, 2};
  const double hs = t.entropy(S), ha = t.entropy(A);
  const double hsa = t.entropy(SA), hsb = t.entropy(SB), hsab = t.entropy(SAB);

  // H(S|A) evaluated directly from the conditional distributions.
  const auto sa = t.marginal(SA);
  double h_s_given_a = 0.0;
  for (int a = 0; a < na; ++a) {
    std::vector<double> cond(static_cast<std::size_t>(ns));
    double pa = 0.0;
    for (int s = 0; s < ns; ++s) {
      cond[static_cast<std::size_t>(s)] = sa.probs()[static_cast<std::size_t>(s * na + a)];
      pa += cond[static_cast<std::size_t>(s)];
    }
    if (pa <= 0.0) continue;
    for (double& c : cond) c /= pa;
    h_s_given_a += pa * entropy_bits(cond);
  }

  const double i_sa = hs + ha - hsa;
  TrialResult r;
  r.violation[0] = std::abs(i_sa - (hs - h_s_given_a));
  r.violation[1] = hs - std::log2(static_cast<double>(ns));
  r.violation[2] = -(hsa - ha);
  r.violation[3] = (hsab + hs) - (hsa + hsb);
  r.reversed_iv = (hsa + hsb) - (hsab + hs);
  r.violation[4] = mutual_information(t, X, A) - i_sa;
  return r;
}

using info::ComplexMatrix;

TrialResult von_neumann_trial(random::Engine& rng) {
  std::bernoulli_distribution coin(0.5);
  const bool with_b = coin(rng);
  const int ds = with_b ? 2 : pick(rng, {3, 4});
  const int na = 2;
  const int nb = with_b ? 2 : 1;
  const auto pab = random::flat_simplex(rng, static_cast<std::size_t>(na * nb));

  std::vector<ComplexMatrix> blocks;
  for (int k = 0; k < na * nb; ++k) blocks.push_back(random::random_density(rng, ds));

  // rho^{SAB} = sum_ab p_ab rho_ab (x) |a><a| (x) |b><b|, factor order S, A, B.
  const int dim = ds * na * nb;
  ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
  for (int a = 0; a < na; ++a) {
    for (int b = 0; b < nb; ++b) {
      const auto k = static_cast<std::size_t>(a * nb + b);
      for (int i = 0; i < ds; ++i) {
        for (int j = 0; j < ds; ++j) {
          const int r = (i * na + a) * nb + b;
          const int c = (j * na + a) * nb + b;
          full(r, c) = pab[k] * blocks[k](i, j);
        }
      }
    }
  }
  const int dims[] = {ds, na, nb};
  auto h = [&](std::initializer_list<int> keep) {
    const std::vector<int> k(keep);
    return spectral_entropy_bits(partial_trace(full, dims, k));
  };
  const double hs = h({0}), ha = h({1});
  const double hsa = h({0, 1}), hsb = h({0, 2}), hsab = h({0, 1, 2});

  // sum_a p_a S(rho_a) with rho_a the conditional system state.
  double h_s_given_a = 0.0;
  std::vector<double> pa(static_cast<std::size_t>(na), 0.0);
  for (int a = 0; a < na; ++a) {
    ComplexMatrix cond = ComplexMatrix::Zero(ds, ds);
    for (int b = 0; b < nb; ++b) {
      const auto k = static_cast<std::size_t>(a * nb + b);
      cond += pab[k] * blocks[k];
      pa[static_cast<std::size_t>(a)] += pab[k];
    }
    if (pa[static_cast<std::size_t>(a)] <= 0.0) continue;
    cond /= pa[static_cast<std::size_t>(a)];
    h_s_given_a += pa[static_cast<std::size_t>(a)] * spectral_entropy_bits(cond);
  }

  // Random projective measurement of S.
  const auto basis = random::haar_unitary(rng, ds);
  std::vector<double> xa(static_cast<std::size_t>(ds * na), 0.0);
  for (int a = 0; a < na; ++a) {
    for (int b = 0; b < nb; ++b) {
      const auto k = static_cast<std::size_t>(a * nb + b);
      for (int x = 0; x < ds; ++x) {
        const Eigen::VectorXcd v = basis.col(x);
        const double p = (v.adjoint() * blocks[k] * v)(0, 0).real();
        xa[static_cast<std::size_t>(x * na + a)] += pab[k] * std::max(p, 0.0);
      }
    }
  }
  double total = 0.0;
  for (double p : xa) total += p;
  for (double& p : xa) p /= total;
  const JointTable xt({"X", "A"}, {ds, na}, std::move(xa));
  const double i_xa = mutual_information(xt, "X", "A");

  const double i_sa = hs + ha - hsa;
  TrialResult r;
  r.violation[0] = std::abs(i_sa - (hs - h_s_given_a));
  r.violation[1] = hs - std::log2(static_cast<double>(ds));
  r.violation[2] = -(hsa - ha);
  r.violation[3] = (hsab + hs) - (hsa + hsb);
  r.reversed_iv = (hsa + hsb) - (hsab + hs);
  r.violation[4] = i_xa - i_sa;
  return r;
}

}  // namespace

std::vector<AxiomReport> axiom_suite(EntropyKind kind, int trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "axiom suite needs at least one trial");
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  parallel_for(results.size(), threads, [&](std::size_t t) {
    auto rng = random::make_engine(seed, t);
    results[t] = kind == EntropyKind::Shannon ? shannon_trial(rng) : von_neumann_trial(rng);
  });

  std::vector<AxiomReport> reports;
  constexpr Axiom kAll[] = {Axiom::I, Axiom::II, Axiom::III, Axiom::IV, Axiom::V};
  for (std::size_t k = 0; k < kAxiomCount; ++k) {
    AxiomReport rep;
    rep.axiom = kAll[k];
    rep.trials = trials;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (const auto& r : results) rep.max_violation = std::max(rep.max_violation, r.violation[k]);
    rep.passed = rep.max_violation <= kAxiomTol;
    if (kAll[k] == Axiom::IV) {
      double worst = -std::numeric_limits<double>::infinity();
      for (const auto& r : results) worst = std::max(worst, r.reversed_iv);
      rep.reversed_direction_max_violation = worst;
    }
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace icp::info
