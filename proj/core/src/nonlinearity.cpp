#include "sublinear/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sublinear {

namespace {

double positive_pow(double z, double p) { return z > 0.0 ? std::pow(z, p) : 0.0; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_index(std::size_t index, std::size_t arity, const char* kind) {
  if (index >= arity) {
    throw std::invalid_argument(std::string(kind) + ": argument index " + std::to_string(index) +
                                " out of range for " + std::to_string(arity) + " unknowns");
  }
}

void check_positive_exponent(double p, const char* kind) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument(std::string(kind) + ": exponents must be positive and finite");
  }
}

double sum_terms(const std::vector<PowerTerm>& terms, std::span<const double> z) {
  double acc = 0.0;
  for (const auto& t : terms) acc += t.coefficient * positive_pow(z[t.index], t.exponent);
  return acc;
}

}  // namespace

std::string_view to_string(NonlinearityKind kind) {
  switch (kind) {
    case NonlinearityKind::power_product: return "power_product";
    case NonlinearityKind::power_sum: return "power_sum";
    case NonlinearityKind::power_exp: return "power_exp";
    case NonlinearityKind::left_continuous_step: return "left_continuous_step";
    case NonlinearityKind::custom_table: return "custom_table";
  }
  return "unknown";
}

NonlinearityKind nonlinearity_kind_from_string(std::string_view name) {
  for (auto k : {NonlinearityKind::power_product, NonlinearityKind::power_sum,
                 NonlinearityKind::power_exp, NonlinearityKind::left_continuous_step,
                 NonlinearityKind::custom_table}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown nonlinearity kind '" + std::string(name) + "'");
}

Nonlinearity::Nonlinearity(NonlinearityParams params) : params_(std::move(params)) {}

NonlinearityKind Nonlinearity::kind() const {
  return std::visit(overloaded{
                        [](const PowerProduct&) { return NonlinearityKind::power_product; },
                        [](const PowerSum&) { return NonlinearityKind::power_sum; },
                        [](const PowerExp&) { return NonlinearityKind::power_exp; },
                        [](const StepSum&) { return NonlinearityKind::left_continuous_step; },
                        [](const TabulatedMonotone&) { return NonlinearityKind::custom_table; },
                    },
                    params_);
}

double Nonlinearity::operator()(std::span<const double> z) const {
  for (double v : z) {
    if (!std::isfinite(v)) throw std::invalid_argument("nonlinearity evaluated at non-finite input");
  }
  return std::visit(
      overloaded{
          [&](const PowerProduct& p) {
            double acc = p.coefficient;
            for (const auto& f : p.factors) acc *= positive_pow(z[f.index], f.exponent);
            return acc;
          },
          [&](const PowerSum& p) { return p.constant + sum_terms(p.terms, z); },
          [&](const PowerExp& p) {
            const double v = z[p.index];
            if (v <= 0.0) return 0.0;
            return p.coefficient * std::pow(v, p.s) * std::exp(std::pow(v, p.m));
          },
          [&](const StepSum& p) {
            double acc = p.base + sum_terms(p.terms, z);
            for (const auto& s : p.steps) {
              const double v = z[s.index];
              const bool on = s.jump_at_threshold ? v >= s.threshold : v > s.threshold;
              if (on) acc += s.jump;
            }
            return acc;
          },
          [&](const TabulatedMonotone& p) {
            const double v = z[p.index];
            if (v <= p.knots.front()) return p.values.front();
            if (v >= p.knots.back()) return p.values.back();
            const auto it = std::upper_bound(p.knots.begin(), p.knots.end(), v);
            const auto hi = static_cast<std::size_t>(it - p.knots.begin());
            const std::size_t lo = hi - 1;
            const double t = (v - p.knots[lo]) / (p.knots[hi] - p.knots[lo]);
            return p.values[lo] + t * (p.values[hi] - p.values[lo]);
          },
      },
      params_);
}

void Nonlinearity::validate(std::size_t arity) const {
  std::visit(overloaded{
                 [&](const PowerProduct& p) {
                   if (p.factors.empty()) throw std::invalid_argument("power_product: no factors");
                   for (const auto& f : p.factors) {
                     check_index(f.index, arity, "power_product");
                     check_positive_exponent(f.exponent, "power_product");
                   }
                 },
                 [&](const PowerSum& p) {
                   for (const auto& t : p.terms) {
                     check_index(t.index, arity, "power_sum");
                     check_positive_exponent(t.exponent, "power_sum");
                   }
                 },
                 [&](const PowerExp& p) {
                   check_index(p.index, arity, "power_exp");
                   if (!(p.s > 0.0 && p.s < 1.0)) {
                     throw std::invalid_argument("power_exp: s must lie in (0, 1)");
                   }
                   check_positive_exponent(p.m, "power_exp");
                   if (!(p.coefficient > 0.0)) {
                     throw std::invalid_argument("power_exp: coefficient must be positive");
                   }
                 },
                 [&](const StepSum& p) {
                   for (const auto& t : p.terms) {
                     check_index(t.index, arity, "left_continuous_step");
                     check_positive_exponent(t.exponent, "left_continuous_step");
                   }
                   for (const auto& s : p.steps) {
                     check_index(s.index, arity, "left_continuous_step");
                     if (!(s.threshold > 0.0)) {
                       throw std::invalid_argument("left_continuous_step: threshold must be > 0");
                     }
                     if (!(s.jump >= 0.0)) {
                       throw std::invalid_argument("left_continuous_step: jump must be >= 0");
                     }
                   }
                 },
                 [&](const TabulatedMonotone& p) {
                   check_index(p.index, arity, "custom_table");
                   if (p.knots.size() < 2 || p.knots.size() != p.values.size()) {
                     throw std::invalid_argument(
                         "custom_table: need at least two knots with matching values");
                   }
                   for (std::size_t i = 1; i < p.knots.size(); ++i) {
                     if (!(p.knots[i] > p.knots[i - 1])) {
                       throw std::invalid_argument("custom_table: knots must be increasing");
                     }
                     if (p.values[i] < p.values[i - 1]) {
                       throw std::invalid_argument("custom_table: values must be nondecreasing");
                     }
                   }
                 },
             },
             params_);
}

std::vector<std::pair<std::size_t, double>> Nonlinearity::breakpoints() const {
  std::vector<std::pair<std::size_t, double>> out;
  if (const auto* p = std::get_if<StepSum>(&params_)) {
    for (const auto& s : p->steps) out.emplace_back(s.index, s.threshold);
  } else if (const auto* t = std::get_if<TabulatedMonotone>(&params_)) {
    for (double k : t->knots) out.emplace_back(t->index, k);
  }
  return out;
}

bool Nonlinearity::is_holder_continuous() const {
  if (const auto* p = std::get_if<StepSum>(&params_)) {
    return std::all_of(p->steps.begin(), p->steps.end(),
                       [](const Step& s) { return s.jump == 0.0; });
  }
  return true;
}

}  // namespace sublinear
