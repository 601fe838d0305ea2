#include "torus_pusher/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "torus_pusher/errors.hpp"

namespace torus {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

bool plain_number(std::string_view s, double& out) {
  if (s.empty()) {
    return false;
  }
  const char* first = s.data();
  if (*first == '+') {
    ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

double parse_number(std::string_view s, int line) {
  double value = 0.0;
  if (plain_number(s, value)) {
    return value;
  }
  // [a*]pi[/b]
  const auto pi_at = s.find("pi");
  if (pi_at != std::string_view::npos) {
    double scale = 1.0;
    double divisor = 1.0;
    std::string_view head = trim(s.substr(0, pi_at));
    std::string_view tail = trim(s.substr(pi_at + 2));
    bool ok = true;
    if (!head.empty()) {
      if (head == "-") {
        scale = -1.0;
      } else {
        ok = head.back() == '*' && plain_number(trim(head.substr(0, head.size() - 1)), scale);
      }
    }
    if (ok && !tail.empty()) {
      ok = tail.front() == '/' && plain_number(trim(tail.substr(1)), divisor) && divisor != 0.0;
    }
    if (ok) {
      return scale * std::numbers::pi / divisor;
    }
  }
  throw ParseError(line, "not a number: '" + std::string(s) + "'");
}

std::vector<double> parse_numbers(std::string_view s, int line) {
  std::vector<double> out;
  for (std::string_view item : split_list(s)) {
    out.push_back(parse_number(item, line));
  }
  return out;
}

bool parse_bool(std::string_view s, int line) {
  if (s == "true" || s == "1" || s == "yes") {
    return true;
  }
  if (s == "false" || s == "0" || s == "no") {
    return false;
  }
  throw ParseError(line, "expected true or false, got '" + std::string(s) + "'");
}

std::size_t parse_count(std::string_view s, int line) {
  const double v = parse_number(s, line);
  if (!(v >= 1.0) || v != std::floor(v) || v > 9.0e15) {
    throw ParseError(line, "expected a positive integer, got '" + std::string(s) + "'");
  }
  return static_cast<std::size_t>(v);
}

Scheme scheme_at(std::string_view s, int line) {
  try {
    return parse_scheme(s);
  } catch (const ValidationError& e) {
    throw ParseError(line, e.what());
  }
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, int)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"field",
       [](ExperimentConfig& c, std::string_view v, int line) {
         if (v != "screw" && v != "solovev") {
           throw ParseError(line, "field must be screw or solovev");
         }
         c.field = std::string(v);
       }},
      {"R0", [](ExperimentConfig& c, std::string_view v, int line) { c.torus.major_radius = parse_number(v, line); }},
      {"B0", [](ExperimentConfig& c, std::string_view v, int line) { c.b0 = parse_number(v, line); }},
      {"B1", [](ExperimentConfig& c, std::string_view v, int line) { c.b1 = parse_number(v, line); }},
      {"psi_scale", [](ExperimentConfig& c, std::string_view v, int line) { c.psi_scale = parse_number(v, line); }},
      {"potential_scale",
       [](ExperimentConfig& c, std::string_view v, int line) { c.potential_scale = parse_number(v, line); }},
      {"r0", [](ExperimentConfig& c, std::string_view v, int line) { c.r0 = parse_number(v, line); }},
      {"theta0", [](ExperimentConfig& c, std::string_view v, int line) { c.theta0 = parse_number(v, line); }},
      {"phi0", [](ExperimentConfig& c, std::string_view v, int line) { c.phi0 = parse_number(v, line); }},
      {"V0",
       [](ExperimentConfig& c, std::string_view v, int line) {
         const std::vector<double> xs = parse_numbers(v, line);
         if (xs.size() != 3) {
           throw ParseError(line, "V0 needs three components");
         }
         c.v0 = {xs[0], xs[1], xs[2]};
       }},
      {"initial_velocity_frame",
       [](ExperimentConfig& c, std::string_view v, int line) {
         if (v == "cartesian") {
           c.initial_velocity_frame = VelocityFrame::cartesian;
         } else if (v == "rtp") {
           c.initial_velocity_frame = VelocityFrame::rtp;
         } else {
           throw ParseError(line, "initial_velocity_frame must be cartesian or rtp");
         }
       }},
      {"eps", [](ExperimentConfig& c, std::string_view v, int line) { c.eps = parse_numbers(v, line); }},
      {"dt", [](ExperimentConfig& c, std::string_view v, int line) { c.dt = parse_numbers(v, line); }},
      {"schemes",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.schemes.clear();
         for (std::string_view s : split_list(v)) {
           c.schemes.push_back(scheme_at(s, line));
         }
       }},
      {"tfinal", [](ExperimentConfig& c, std::string_view v, int line) { c.tfinal = parse_number(v, line); }},
      {"stride", [](ExperimentConfig& c, std::string_view v, int line) { c.stride = parse_count(v, line); }},
      {"reference",
       [](ExperimentConfig& c, std::string_view v, int line) {
         if (v == "rk4") {
           c.reference_enabled = true;
         } else if (v == "none") {
           c.reference_enabled = false;
         } else {
           throw ParseError(line, "reference must be rk4 or none");
         }
       }},
      {"reference_dt",
       [](ExperimentConfig& c, std::string_view v, int line) { c.reference_dt = parse_number(v, line); }},
      {"asymptotic_scheme",
       [](ExperimentConfig& c, std::string_view v, int line) { c.asymptotic_scheme = scheme_at(v, line); }},
      {"asymptotic_dt",
       [](ExperimentConfig& c, std::string_view v, int line) { c.asymptotic_dt = parse_number(v, line); }},
      {"boris_staggered",
       [](ExperimentConfig& c, std::string_view v, int line) { c.boris_staggered = parse_bool(v, line); }},
      {"max_steps",
       [](ExperimentConfig& c, std::string_view v, int line) {
         c.max_steps = static_cast<std::int64_t>(parse_count(v, line));
       }},
      {"r_min", [](ExperimentConfig& c, std::string_view v, int line) { c.guard.r_min = parse_number(v, line); }},
      {"r_margin",
       [](ExperimentConfig& c, std::string_view v, int line) { c.guard.r_margin = parse_number(v, line); }},
      {"output_dir", [](ExperimentConfig& c, std::string_view v, int) { c.output_dir = std::string(v); }},
  };
  return table;
}

bool is_multiple(double dt, double base) {
  const double ratio = dt / base;
  const double k = std::round(ratio);
  return k >= 1.0 && std::abs(ratio - k) <= 1e-9 * k;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw ValidationError(what);
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  torus.validate();
  require(b0 > 0.0, "B0 must be positive");
  require(r0 > 0.0 && r0 < torus.major_radius, "r0 must lie in (0, R0)");
  require(!eps.empty(), "eps list is empty");
  require(!dt.empty(), "dt list is empty");
  require(!schemes.empty(), "scheme list is empty");
  for (double e : eps) {
    require(e > 0.0, "eps values must be positive");
  }
  require(tfinal > 0.0, "tfinal must be positive");
  require(max_steps > 0, "max_steps must be positive");
  require(is_limit_scheme(asymptotic_scheme), "asymptotic_scheme must be a limit scheme");
  require(asymptotic_dt > 0.0, "asymptotic_dt must be positive");
  require(reference_dt > 0.0, "reference_dt must be positive");

  const auto within_budget = [this](double step, const char* what) {
    require(step_count(0.0, tfinal, step) <= max_steps,
            std::string(what) + " = " + num(step) + " exceeds the step budget of " + std::to_string(max_steps));
  };
  for (double d : dt) {
    require(d > 0.0, "dt values must be positive");
    within_budget(d, "dt");
    if (reference_enabled) {
      require(is_multiple(d, reference_dt),
              "dt = " + num(d) + " is not an integer multiple of reference_dt = " + num(reference_dt));
      require(is_multiple(d, asymptotic_dt),
              "dt = " + num(d) + " is not an integer multiple of asymptotic_dt = " + num(asymptotic_dt));
    }
  }
  if (reference_enabled) {
    within_budget(reference_dt, "reference_dt");
    within_budget(asymptotic_dt, "asymptotic_dt");
  }
}

IntegrateOptions ExperimentConfig::integrate_options() const {
  return {stride, boris_staggered ? BorisVariant::staggered : BorisVariant::unstaggered};
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (value.empty()) {
      throw ParseError(line_no, "missing value for '" + std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
    }
    it->second(cfg, value, line_no);
  }
  // the tokamak time series runs longer unless told otherwise
  if (cfg.field == "solovev" && !seen.contains("tfinal")) {
    cfg.tfinal = 20.0;
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open config file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::unique_ptr<FieldModel> make_field_model(const ExperimentConfig& cfg) {
  if (cfg.field == "solovev") {
    return std::make_unique<SolovevField>(SolovevFieldParams{cfg.b0, cfg.psi_scale, cfg.potential_scale}, cfg.torus,
                                          cfg.guard);
  }
  return std::make_unique<ScrewField>(ScrewFieldParams{cfg.b0, cfg.b1}, cfg.torus, cfg.guard);
}

AugmentedState initial_state(const ExperimentConfig& cfg, const FieldModel& fm) {
  const ToroidalPoint p{cfg.r0, cfg.theta0, cfg.phi0};
  if (cfg.initial_velocity_frame == VelocityFrame::rtp) {
    return augmented_from_toroidal({p.r, p.theta, p.phi, cfg.v0.x, cfg.v0.y, cfg.v0.z}, fm);
  }
  AugmentedState a = augmented_from_physical({toroidal_to_cartesian(p, cfg.torus), cfg.v0}, fm);
  // keep the configured angles rather than their wrapped images
  a.slow.theta = cfg.theta0;
  a.slow.phi = cfg.phi0;
  return a;
}

}  // namespace torus
