#include "sublinear/subsolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sublinear/errors.hpp"
#include "sublinear/poisson.hpp"

namespace sublinear {

namespace {

constexpr double kCertificateTolerance = 1e-10;
constexpr int kMaxHalvings = 40;

// Bracket of Lap phi / phi: g'^2 - g'' - (dim-1) g'/r.
double laplacian_bracket(double r, double R, int dim) {
  const double D = R * R - r * r;
  const double g1 = 2.0 * r / (D * D);
  const double g2 = 2.0 * (R * R + 3.0 * r * r) / (D * D * D);
  const double g1_over_r = 2.0 / (D * D);
  return g1 * g1 - g2 - static_cast<double>(dim - 1) * g1_over_r;
}

}  // namespace

double bump_value(Point x, Point q, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("bump radius must be positive");
  const double dx = x.x - q.x;
  const double dy = x.y - q.y;
  const double D = R * R - (dx * dx + dy * dy);
  return D > 0.0 ? std::exp(-1.0 / D) : 0.0;
}

double bump_laplacian_radial(double r, double R, int dim) {
  if (r >= R) return 0.0;
  const double D = R * R - r * r;
  return std::exp(-1.0 / D) * laplacian_bracket(r, R, dim);
}

double bump_laplacian(Point x, Point q, double R, int dim) {
  return bump_laplacian_radial(distance(x, q), R, dim);
}

double estimate_C(double R, int dim, double s, std::size_t samples) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("estimate_C: s must lie in (0, 1)");
  if (!(R > 0.0) || samples == 0) throw std::invalid_argument("estimate_C: bad radius or sample count");
  double best = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double r = R * static_cast<double>(i) / static_cast<double>(samples);
    const double bracket = laplacian_bracket(r, R, dim);
    if (bracket >= 0.0) continue;  // -Lap phi <= 0 here
    // -Lap phi / phi^s = phi^{1-s} * (-bracket), with log phi = -1/(R^2 - r^2).
    const double log_ratio = -(1.0 - s) / (R * R - r * r) + std::log(-bracket);
    const double ratio = std::exp(log_ratio);
    if (!std::isfinite(ratio)) throw SolveError("estimate_C: non-finite sample");
    best = std::max(best, ratio);
  }
  return 1.1 * best;
}

double choose_eta(const EtaConstraints& c) {
  if (!(c.C > 0.0 && c.Lambda_lower > 0.0 && c.A_min > 0.0 && c.delta > 0.0 && c.epsilon0 > 0.0 &&
        c.phi_max > 0.0)) {
    throw std::invalid_argument("choose_eta: all inputs must be positive");
  }
  if (!(c.s > 0.0 && c.s < 1.0)) throw std::invalid_argument("choose_eta: s must lie in (0, 1)");
  const double forced = 0.9 * std::pow(c.Lambda_lower * c.A_min / c.C, 1.0 / (1.0 - c.s));
  const double cap = 0.5 * std::min({c.delta, 1.0, c.epsilon0}) / c.phi_max;
  return std::min({forced, cap, 0.9});
}

double subsolution_violation(const SystemSpec& spec, const ScalarField& h) {
  const Grid& g = spec.grid();
  const ScalarField lap = negative_laplacian(h);
  const std::size_t n = spec.n_plus_1();
  std::vector<double> z(n);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t node : g.interior_nodes()) {
    std::fill(z.begin(), z.end(), h[node]);
    for (std::size_t l = 0; l < n; ++l) {
      const double rhs = spec.lambda(l)[node] * spec.evaluate_f(l, z);
      worst = std::max(worst, lap[node] - rhs);
    }
  }
  return worst;
}

ChainLinks chain_link_excess(const SystemSpec& spec, const SubsolutionCertificate& cert) {
  const Grid& g = spec.grid();
  const ScalarField lap = negative_laplacian(cert.h);
  const auto& lower = spec.system().lower;
  const double Lambda = spec.ball().Lambda_lower;
  const double A = lower.A_min();
  const std::size_t n = spec.n_plus_1();
  ChainLinks worst;
  worst.fill(-std::numeric_limits<double>::infinity());
  std::vector<double> z(n);
  for (std::size_t node : g.interior_nodes()) {
    const double h = cert.h[node];
    if (h <= 0.0) continue;
    const double phi = h / cert.eta;
    const double link0_rhs = cert.C * cert.eta * std::pow(phi, cert.s);
    const double link1_rhs = Lambda * A * std::pow(h, cert.s);
    worst[0] = std::max(worst[0], lap[node] - link0_rhs);
    worst[1] = std::max(worst[1], cert.C * std::pow(cert.eta, 1.0 - cert.s) * std::pow(h, cert.s) -
                                      link1_rhs);
    std::fill(z.begin(), z.end(), h);
    for (std::size_t l = 0; l < n; ++l) {
      double envelope = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (lower.A[l][j] > 0.0) envelope += lower.A[l][j] * std::pow(h, lower.alpha[l][j]);
      }
      worst[2] = std::max(worst[2], link1_rhs - Lambda * envelope);
      worst[3] = std::max(worst[3], Lambda * envelope - spec.lambda(l)[node] * spec.evaluate_f(l, z));
    }
  }
  return worst;
}

SubsolutionCertificate build_subsolution(const SystemSpec& spec, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("build_subsolution: delta must be positive");
  const Grid& g = spec.grid();
  const auto& ball = spec.ball();
  const auto& lower = spec.system().lower;

  SubsolutionCertificate cert{.h = ScalarField(spec.grid_ptr())};
  cert.q = ball.q;
  cert.delta = delta;
  cert.R = std::min(ball.rho, 0.9 * g.distance_to_exterior(ball.q));
  cert.s = lower.max_alpha();
  cert.C = estimate_C(cert.R, g.dimension(), cert.s);

  const ScalarField phi =
      ScalarField::sample(spec.grid_ptr(), [&](Point x) { return bump_value(x, cert.q, cert.R); }, true);
  cert.phi_max = phi.max();
  if (!(cert.phi_max > 0.0)) throw SolveError("bump support contains no interior node");

  cert.eta = choose_eta({.C = cert.C,
                         .Lambda_lower = ball.Lambda_lower,
                         .A_min = lower.A_min(),
                         .s = cert.s,
                         .delta = delta,
                         .epsilon0 = lower.epsilon0,
                         .phi_max = cert.phi_max});

  for (;;) {
    cert.h = phi;
    cert.h *= cert.eta;
    cert.max_discrete_violation = subsolution_violation(spec, cert.h);
    if (cert.max_discrete_violation <= kCertificateTolerance) break;
    if (cert.halvings == kMaxHalvings) {
      std::ostringstream msg;
      msg << "discrete subsolution inequality still violated by " << cert.max_discrete_violation
          << " after " << kMaxHalvings << " halvings of eta (check the condition (b) constants)";
      throw SolveError(msg.str());
    }
    cert.eta *= 0.5;
    ++cert.halvings;
  }
  cert.h_sup = cert.h.sup_norm();
  cert.chain_links = chain_link_excess(spec, cert);
  return cert;
}

}  // namespace sublinear
