#include "runner/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "sublinear/errors.hpp"

namespace sublinear::runner {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::check_conditions: return "check-conditions";
    case Command::exhaust: return "exhaust";
    case Command::poisson_test: return "poisson-test";
  }
  return "unknown";
}

Command command_from_string(std::string_view name) {
  for (auto c : {Command::solve, Command::check_conditions, Command::exhaust, Command::poisson_test}) {
    if (to_string(c) == name) return c;
  }
  // Underscore spellings are accepted in config files.
  if (name == "check_conditions") return Command::check_conditions;
  if (name == "poisson_test") return Command::poisson_test;
  throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

ConfigError::ConfigError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") + ": " + what),
      line_(line) {}

GridPtr DomainConfig::build() const {
  switch (type) {
    case Type::rectangle: return build_rectangle(x, y, spacing);
    case Type::masked: {
      const Expression expr = *indicator;
      return build_masked([expr](Point p) { return expr(p) > 0.0; }, {x, y}, spacing);
    }
    case Type::strip: return truncate_strip(halfwidth, length, spacing);
    case Type::interval: return build_interval(x, spacing);
  }
  throw std::logic_error("unknown domain type");
}

SystemDefinition RunConfig::definition() const {
  SystemDefinition def;
  def.system = system;
  def.ball = ball;
  for (const auto& expr : lambdas) def.lambdas.push_back([expr](Point p) { return expr(p); });
  return def;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& what) const {
    const int line = at.IsDefined() && at.Mark().line >= 0 ? at.Mark().line + 1 : 0;
    throw ConfigError(source_, line, what);
  }

  void expect_map(const YAML::Node& node, const std::string& path) const {
    if (!node.IsMap()) fail(node, "'" + path + "' must be a mapping");
  }

  void allow_only(const YAML::Node& node, const std::string& path,
                  std::initializer_list<std::string_view> keys) const {
    expect_map(node, path);
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        fail(kv.first, "unknown key '" + key + "' in '" + path + "'");
      }
    }
  }

  YAML::Node require(const YAML::Node& map, const std::string& key, const std::string& path) const {
    const YAML::Node child = map[key];
    if (!child.IsDefined() || child.IsNull()) fail(map, "missing key '" + key + "' in '" + path + "'");
    return child;
  }

  double number(const YAML::Node& node, const std::string& what) const {
    try {
      if (!node.IsScalar()) fail(node, "'" + what + "' must be a number");
      return node.as<double>();
    } catch (const YAML::Exception&) {
      fail(node, "'" + what + "' must be a number");
    }
  }

  double number_or(const YAML::Node& map, const std::string& key, double fallback,
                   const std::string& path) const {
    const YAML::Node child = map[key];
    return child.IsDefined() ? number(child, path + "." + key) : fallback;
  }

  std::size_t index(const YAML::Node& node, const std::string& what) const {
    const double v = number(node, what);
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      fail(node, "'" + what + "' must be a nonnegative integer");
    }
    return static_cast<std::size_t>(v);
  }

  std::string text(const YAML::Node& node, const std::string& what) const {
    if (!node.IsScalar()) fail(node, "'" + what + "' must be a string");
    return node.as<std::string>();
  }

  bool boolean(const YAML::Node& node, const std::string& what) const {
    try {
      return node.as<bool>();
    } catch (const YAML::Exception&) {
      fail(node, "'" + what + "' must be a boolean");
    }
  }

  std::vector<double> numbers(const YAML::Node& node, const std::string& what) const {
    if (!node.IsSequence()) fail(node, "'" + what + "' must be a list of numbers");
    std::vector<double> out;
    for (const auto& item : node) out.push_back(number(item, what));
    return out;
  }

  Interval interval(const YAML::Node& node, const std::string& what) const {
    const auto v = numbers(node, what);
    if (v.size() != 2) fail(node, "'" + what + "' must be [lo, hi]");
    return {v[0], v[1]};
  }

  Expression expression(const YAML::Node& node, const std::string& what) const {
    std::string t;
    if (node.IsScalar()) t = node.Scalar();
    else fail(node, "'" + what + "' must be an expression string or number");
    try {
      return Expression::parse(t);
    } catch (const std::invalid_argument& e) {
      fail(node, what + ": " + e.what());
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

std::vector<PowerTerm> power_terms(const Reader& r, const YAML::Node& node, const std::string& path) {
  std::vector<PowerTerm> terms;
  if (!node.IsDefined()) return terms;
  if (!node.IsSequence()) r.fail(node, "'" + path + "' must be a list");
  for (const auto& t : node) {
    r.allow_only(t, path, {"index", "coefficient", "exponent"});
    terms.push_back({r.index(r.require(t, "index", path), path + ".index"),
                     r.number_or(t, "coefficient", 1.0, path),
                     r.number(r.require(t, "exponent", path), path + ".exponent")});
  }
  return terms;
}

Nonlinearity parse_nonlinearity(const Reader& r, const YAML::Node& node, const std::string& path) {
  r.expect_map(node, path);
  const std::string kind_name = r.text(r.require(node, "kind", path), path + ".kind");
  NonlinearityKind kind;
  try {
    kind = nonlinearity_kind_from_string(kind_name);
  } catch (const std::invalid_argument& e) {
    r.fail(node["kind"], e.what());
  }
  switch (kind) {
    case NonlinearityKind::power_product: {
      r.allow_only(node, path, {"kind", "coefficient", "factors"});
      PowerProduct p;
      p.coefficient = r.number_or(node, "coefficient", 1.0, path);
      const YAML::Node factors = r.require(node, "factors", path);
      if (!factors.IsSequence()) r.fail(factors, "'" + path + ".factors' must be a list");
      for (const auto& f : factors) {
        r.allow_only(f, path + ".factors", {"index", "exponent"});
        p.factors.push_back({r.index(r.require(f, "index", path), path + ".factors.index"),
                             r.number(r.require(f, "exponent", path), path + ".factors.exponent")});
      }
      return Nonlinearity(p);
    }
    case NonlinearityKind::power_sum: {
      r.allow_only(node, path, {"kind", "constant", "terms"});
      return Nonlinearity(PowerSum{r.number_or(node, "constant", 0.0, path),
                                   power_terms(r, node["terms"], path + ".terms")});
    }
    case NonlinearityKind::power_exp: {
      r.allow_only(node, path, {"kind", "index", "s", "m", "coefficient"});
      return Nonlinearity(PowerExp{r.index(r.require(node, "index", path), path + ".index"),
                                   r.number(r.require(node, "s", path), path + ".s"),
                                   r.number(r.require(node, "m", path), path + ".m"),
                                   r.number_or(node, "coefficient", 1.0, path)});
    }
    case NonlinearityKind::left_continuous_step: {
      r.allow_only(node, path, {"kind", "base", "terms", "steps"});
      StepSum p;
      p.base = r.number_or(node, "base", 0.0, path);
      p.terms = power_terms(r, node["terms"], path + ".terms");
      const YAML::Node steps = r.require(node, "steps", path);
      if (!steps.IsSequence()) r.fail(steps, "'" + path + ".steps' must be a list");
      for (const auto& s : steps) {
        r.allow_only(s, path + ".steps", {"index", "threshold", "jump", "jump_at_threshold"});
        Step step;
        step.index = r.index(r.require(s, "index", path), path + ".steps.index");
        step.threshold = r.number(r.require(s, "threshold", path), path + ".steps.threshold");
        step.jump = r.number(r.require(s, "jump", path), path + ".steps.jump");
        if (s["jump_at_threshold"].IsDefined()) {
          step.jump_at_threshold = r.boolean(s["jump_at_threshold"], path + ".steps.jump_at_threshold");
        }
        p.steps.push_back(step);
      }
      return Nonlinearity(p);
    }
    case NonlinearityKind::custom_table: {
      r.allow_only(node, path, {"kind", "index", "knots", "values"});
      return Nonlinearity(TabulatedMonotone{
          r.index(r.require(node, "index", path), path + ".index"),
          r.numbers(r.require(node, "knots", path), path + ".knots"),
          r.numbers(r.require(node, "values", path), path + ".values")});
    }
  }
  r.fail(node, "unsupported nonlinearity kind");
}

void parse_domain(const Reader& r, const YAML::Node& node, DomainConfig& d) {
  const std::string path = "domain";
  r.expect_map(node, path);
  const std::string type = r.text(r.require(node, "type", path), "domain.type");
  d.spacing = r.number(r.require(node, "spacing", path), "domain.spacing");
  if (type == "rectangle" || type == "interval") {
    r.allow_only(node, path, {"type", "spacing", "x", "y"});
    d.type = type == "rectangle" ? DomainConfig::Type::rectangle : DomainConfig::Type::interval;
    d.x = r.interval(r.require(node, "x", path), "domain.x");
    if (d.type == DomainConfig::Type::rectangle) d.y = r.interval(r.require(node, "y", path), "domain.y");
  } else if (type == "masked") {
    r.allow_only(node, path, {"type", "spacing", "x", "y", "indicator"});
    d.type = DomainConfig::Type::masked;
    d.x = r.interval(r.require(node, "x", path), "domain.x");
    d.y = r.interval(r.require(node, "y", path), "domain.y");
    d.indicator = r.expression(r.require(node, "indicator", path), "domain.indicator");
  } else if (type == "strip") {
    r.allow_only(node, path, {"type", "spacing", "halfwidth", "length"});
    d.type = DomainConfig::Type::strip;
    d.halfwidth = r.number(r.require(node, "halfwidth", path), "domain.halfwidth");
    d.length = r.number_or(node, "length", 4.0 * d.halfwidth, path);
  } else {
    r.fail(node["type"], "unknown domain type '" + type + "' (rectangle, masked, strip, interval)");
  }
}

void parse_system(const Reader& r, const YAML::Node& node, RunConfig& cfg) {
  const std::string path = "system";
  r.allow_only(node, path, {"equations", "growth_A", "epsilon0", "ball"});
  const YAML::Node eqs = r.require(node, "equations", path);
  if (!eqs.IsSequence() || eqs.size() == 0) r.fail(eqs, "'system.equations' must be a non-empty list");
  const std::size_t n = eqs.size();

  auto& sys = cfg.system;
  sys.lower.A.assign(n, std::vector<double>(n, 0.0));
  sys.lower.alpha.assign(n, std::vector<double>(n, 0.0));
  sys.lower.epsilon0 = r.number_or(node, "epsilon0", 1.0, path);
  GrowthEnvelope growth;
  growth.C.assign(n, std::vector<double>(n, GrowthEnvelope::kUndeclared));
  growth.p.assign(n, std::vector<double>(n, 0.0));
  growth.A = r.number_or(node, "growth_A", 0.0, path);
  std::size_t rows_with_growth = 0;

  for (std::size_t l = 0; l < n; ++l) {
    const YAML::Node eq = eqs[l];
    const std::string epath = "system.equations[" + std::to_string(l) + "]";
    r.allow_only(eq, epath, {"nonlinearity", "lambda", "growth", "lower"});
    sys.f.push_back(parse_nonlinearity(r, r.require(eq, "nonlinearity", epath), epath + ".nonlinearity"));
    cfg.lambdas.push_back(eq["lambda"].IsDefined() ? r.expression(eq["lambda"], epath + ".lambda")
                                                   : Expression::parse("1"));
    if (const YAML::Node g = eq["growth"]; g.IsDefined()) {
      if (!g.IsSequence()) r.fail(g, "'" + epath + ".growth' must be a list");
      ++rows_with_growth;
      for (const auto& e : g) {
        r.allow_only(e, epath + ".growth", {"index", "C", "p"});
        const std::size_t j = r.index(r.require(e, "index", epath), epath + ".growth.index");
        if (j >= n) r.fail(e, "growth index out of range");
        growth.C[l][j] = r.number(r.require(e, "C", epath), epath + ".growth.C");
        growth.p[l][j] = r.number(r.require(e, "p", epath), epath + ".growth.p");
      }
    }
    const YAML::Node lo = r.require(eq, "lower", epath);
    if (!lo.IsSequence()) r.fail(lo, "'" + epath + ".lower' must be a list");
    for (const auto& e : lo) {
      r.allow_only(e, epath + ".lower", {"index", "A", "alpha"});
      const std::size_t j = r.index(r.require(e, "index", epath), epath + ".lower.index");
      if (j >= n) r.fail(e, "lower envelope index out of range");
      sys.lower.A[l][j] = r.number(r.require(e, "A", epath), epath + ".lower.A");
      sys.lower.alpha[l][j] = r.number(r.require(e, "alpha", epath), epath + ".lower.alpha");
    }
  }
  if (rows_with_growth == n) {
    sys.growth = std::move(growth);
  } else if (rows_with_growth != 0) {
    r.fail(eqs, "condition (a): growth envelopes must be declared for every equation or none");
  }

  const YAML::Node ball = r.require(node, "ball", path);
  r.allow_only(ball, "system.ball", {"q", "rho", "Lambda"});
  const auto q = r.numbers(r.require(ball, "q", "system.ball"), "system.ball.q");
  if (q.size() != 2) r.fail(ball["q"], "'system.ball.q' must be [x, y]");
  cfg.ball.q = {q[0], q[1]};
  cfg.ball.rho = r.number(r.require(ball, "rho", "system.ball"), "system.ball.rho");
  cfg.ball.Lambda_lower = r.number(r.require(ball, "Lambda", "system.ball"), "system.ball.Lambda");

  try {
    sys.validate();
  } catch (const SpecError& e) {
    r.fail(node, e.what());
  }
  cfg.has_system = true;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source_name) {
  Reader r(source_name);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source_name, e.mark.line + 1, e.msg);
  }
  if (!root.IsMap()) throw ConfigError(source_name, 0, "config must be a mapping");
  r.allow_only(root, "<root>",
               {"command", "domain", "system", "subsolution", "iteration", "conditions",
                "exhaustion", "poisson", "output"});

  RunConfig cfg;
  cfg.source_name = source_name;
  cfg.source_text = text;

  if (const auto c = root["command"]; c.IsDefined()) {
    try {
      cfg.command = command_from_string(r.text(c, "command"));
    } catch (const std::invalid_argument& e) {
      r.fail(c, e.what());
    }
  }
  parse_domain(r, r.require(root, "domain", "<root>"), cfg.domain);
  if (const auto s = root["system"]; s.IsDefined()) parse_system(r, s, cfg);

  if (const auto s = root["subsolution"]; s.IsDefined()) {
    r.allow_only(s, "subsolution", {"delta"});
    cfg.delta = r.number_or(s, "delta", 1.0, "subsolution");
    if (!(cfg.delta > 0.0)) r.fail(s, "subsolution.delta must be positive");
  }

  if (const auto it = root["iteration"]; it.IsDefined()) {
    r.allow_only(it, "iteration",
                 {"tol_step", "tol_residual", "max_iters", "linear_method", "tau_lin",
                  "linear_max_iterations"});
    cfg.criteria.tol_step = r.number_or(it, "tol_step", cfg.criteria.tol_step, "iteration");
    cfg.criteria.tol_residual = r.number_or(it, "tol_residual", cfg.criteria.tol_residual, "iteration");
    cfg.criteria.max_iters =
        static_cast<int>(r.number_or(it, "max_iters", cfg.criteria.max_iters, "iteration"));
    if (it["linear_method"].IsDefined() || it["tau_lin"].IsDefined() ||
        it["linear_max_iterations"].IsDefined()) {
      LinearSolveSettings ls;
      if (const auto m = it["linear_method"]; m.IsDefined()) {
        const std::string name = r.text(m, "iteration.linear_method");
        if (name == "direct_sparse") ls.method = LinearMethod::direct_sparse;
        else if (name == "conjugate_gradient") ls.method = LinearMethod::conjugate_gradient;
        else r.fail(m, "linear_method must be direct_sparse or conjugate_gradient");
      }
      ls.tolerance = r.number_or(it, "tau_lin", ls.tolerance, "iteration");
      ls.max_iterations = static_cast<int>(
          r.number_or(it, "linear_max_iterations", ls.max_iterations, "iteration"));
      try {
        ls.validate();
      } catch (const std::invalid_argument& e) {
        r.fail(it, e.what());
      }
      cfg.linear = ls;
    }
    try {
      cfg.criteria.validate(cfg.linear ? cfg.linear->tolerance : LinearSolveSettings{}.tolerance);
    } catch (const std::invalid_argument& e) {
      r.fail(it, e.what());
    }
  }

  if (const auto c = root["conditions"]; c.IsDefined()) {
    r.allow_only(c, "conditions", {"samples", "box_radius"});
    cfg.sampling.samples = static_cast<std::size_t>(
        r.number_or(c, "samples", static_cast<double>(cfg.sampling.samples), "conditions"));
    cfg.sampling.box_radius = r.number_or(c, "box_radius", cfg.sampling.box_radius, "conditions");
    if (cfg.sampling.samples < 1000) r.fail(c, "conditions.samples must be at least 1000");
  }

  if (const auto e = root["exhaustion"]; e.IsDefined()) {
    r.allow_only(e, "exhaustion", {"lengths"});
    cfg.exhaustion_lengths = r.numbers(r.require(e, "lengths", "exhaustion"), "exhaustion.lengths");
  }

  if (const auto p = root["poisson"]; p.IsDefined()) {
    r.allow_only(p, "poisson", {"rhs"});
    cfg.poisson_rhs = r.expression(r.require(p, "rhs", "poisson"), "poisson.rhs");
  }

  if (const auto o = root["output"]; o.IsDefined()) {
    r.allow_only(o, "output", {"directory", "formats", "report"});
    if (o["directory"].IsDefined()) cfg.output.directory = r.text(o["directory"], "output.directory");
    if (o["report"].IsDefined()) cfg.output.report = r.text(o["report"], "output.report");
    if (const auto f = o["formats"]; f.IsDefined()) {
      if (!f.IsSequence()) r.fail(f, "'output.formats' must be a list");
      cfg.output.csv = cfg.output.binary = false;
      for (const auto& item : f) {
        const std::string fmt = r.text(item, "output.formats");
        if (fmt == "csv") cfg.output.csv = true;
        else if (fmt == "binary") cfg.output.binary = true;
        else r.fail(item, "unknown output format '" + fmt + "' (csv, binary)");
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot read config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace sublinear::runner
