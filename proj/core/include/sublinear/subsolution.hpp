#pragma once

#include <array>

#include "sublinear/field.hpp"
#include "sublinear/system_spec.hpp"

namespace sublinear {

/// phi(x) = exp(-1 / (R^2 - |x - q|^2)) inside B_R(q), 0 outside.
double bump_value(Point x, Point q, double R);

/// Laplacian of the bump as a function of r = |x - q|:
///   Lap phi = phi * (g'^2 - g'' - (dim - 1) g'/r),  g(r) = 1/(R^2 - r^2),
/// with g'/r = 2/(R^2 - r^2)^2 (finite at r = 0). Zero for r >= R.
double bump_laplacian_radial(double r, double R, int dim);
double bump_laplacian(Point x, Point q, double R, int dim);

/// 1.1 * max over `samples` radii in [0, R) of max(0, -Lap phi) / phi^s,
/// evaluated in log space so the ratio stays finite as phi underflows.
double estimate_C(double R, int dim, double s, std::size_t samples = 10000);

struct EtaConstraints {
  double C = 0.0;
  double Lambda_lower = 0.0;
  double A_min = 0.0;
  double s = 0.5;
  double delta = 1.0;
  double epsilon0 = 1.0;
  double phi_max = 0.0;
};

/// eta = min(0.9 (Lambda A / C)^{1/(1-s)}, 0.5 min(delta, 1, eps0) / phi_max, 0.9).
double choose_eta(const EtaConstraints& c);

/// Maximum excess of each link of the pointwise chain
///   -Lap_h h <= C eta phi^s = C eta^{1-s} h^s <= Lambda A h^s
///            <= Lambda sum_j A_{l,j} h^{alpha_{l,j}} <= lambda_l f_l(h, ..., h)
/// over interior nodes with h > 0 and all equations. Link 0 is the first
/// inequality; nonpositive entries mean the link holds.
using ChainLinks = std::array<double, 4>;

struct SubsolutionCertificate {
  Point q{};
  double R = 0.0;
  double s = 0.0;
  double C = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  double phi_max = 0.0;
  double h_sup = 0.0;
  ScalarField h;
  /// max over interior nodes and l of (-Lap_h h - lambda_l f_l(h,...,h)).
  double max_discrete_violation = 0.0;
  ChainLinks chain_links{};
  int halvings = 0;
};

/// max over interior nodes and equations of -Lap_h h - lambda_l f_l(h,...,h).
double subsolution_violation(const SystemSpec& spec, const ScalarField& h);

/// Evaluates the chain links for h = eta * phi on the spec's grid.
ChainLinks chain_link_excess(const SystemSpec& spec, const SubsolutionCertificate& cert);

/// Builds h = eta * phi centred at the positivity ball and certifies the
/// discrete subsolution inequality at every interior node, halving eta (up
/// to 40 times) if discretization error breaks it. Throws SolveError when no
/// certificate can be produced.
SubsolutionCertificate build_subsolution(const SystemSpec& spec, double delta);

}  // namespace sublinear
