#pragma once

// Constructors for the concrete theories: classical bit and trit, hbit, sbit,
// qubit, p-norm constrained theories, regular polygons and small quantum
// systems. Every entry carries its observed dimension.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "icp/gpt.hpp"

namespace icp::catalog {

struct CatalogEntry {
  std::string id;
  std::shared_ptr<const Theory> theory;
  std::map<std::string, Measurement> default_measurements;
  std::vector<State> pure_states;
  std::string notes;
  int observed_dimension = 1;

  const Measurement& measurement(std::string_view name) const;
};

CatalogEntry classical_bit();
CatalogEntry classical_trit();
CatalogEntry hbit();
CatalogEntry sbit();
CatalogEntry qubit();
/// p >= 2 or +infinity, k in {2, 3}. Id "pgnst:<p>:<k>", infinity spelled "inf".
CatalogEntry pgnst(double p, int k = 2);
/// Regular n-gon, n >= 3. Id "polygon:<n>".
CatalogEntry polygon(int n);
/// Quantum system of Hilbert dimension 2..8 with computational and Fourier
/// basis measurements "Z" and "X". Id "quantum:<d>".
CatalogEntry quantum(int d);

/// Parses any catalog id ("bit", "trit", "hbit", "sbit", "qubit",
/// "pgnst:P:K", "polygon:N", "quantum:D"). Throws InvalidArgument.
CatalogEntry lookup(std::string_view id);

/// The fixed listing used by `icp_lab catalog`.
std::vector<CatalogEntry> standard_catalog();

std::string pgnst_id(double p, int k);

// Polygon geometry, 1-based indices with wraparound (index n+k is index k).
double polygon_radius(int n);
RealVector polygon_vertex(int n, int i);
/// e_i: for even n the half-plane effect through vertices i-1 and i; for odd
/// n the effect equal to 1 on vertex i and 0 on the opposite edge.
RealVector polygon_effect(int n, int i);

/// Point of the sbit square with fiducial means (s_x, s_z) in [-1, 1]^2.
State sbit_state(double s_x, double s_z);
/// State (s_1, .., s_k, 1) of a norm-constraint theory.
State pgnst_state(const std::string& theory_id, std::span<const double> means);
/// Deterministic hbit state with hidden bits (a, b).
State hbit_state(int a, int b);
/// Qubit two-outcome observable along (sin phi, 0, cos phi); phi = 0 is Z.
Measurement qubit_rotated_measurement(double phi);

}  // namespace icp::catalog
