#include "starklft/cli/config.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "starklft/errors.hpp"

namespace starklft::cli {

using num::format17;

std::string to_string(MethodSelector m) {
  switch (m) {
    case MethodSelector::uom:
      return "uom";
    case MethodSelector::glft:
      return "glft";
    case MethodSelector::both:
      return "both";
  }
  return "?";
}

std::string to_string(Precision p) { return p == Precision::standard ? "standard" : "extended"; }

MethodSelector parse_method(const std::string& s) {
  if (s == "uom") return MethodSelector::uom;
  if (s == "glft") return MethodSelector::glft;
  if (s == "both") return MethodSelector::both;
  throw DomainError("unknown method: " + s);
}

Precision parse_precision(const std::string& s) {
  if (s == "standard") return Precision::standard;
  if (s == "extended") return Precision::extended;
  throw DomainError("unknown precision: " + s);
}

namespace {

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw DomainError("bad number for " + key + ": " + v);
  }
  if (pos != v.size()) throw DomainError("bad number for " + key + ": " + v);
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  int x = 0;
  try {
    x = std::stoi(v, &pos);
  } catch (const std::exception&) {
    throw DomainError("bad integer for " + key + ": " + v);
  }
  if (pos != v.size()) throw DomainError("bad integer for " + key + ": " + v);
  return x;
}

}  // namespace

std::string Axis::render() const { return format17(lo) + ":" + format17(hi) + ":" + std::to_string(count); }

Axis Axis::parse(const std::string& s) {
  const auto a = s.find(':');
  const auto b = a == std::string::npos ? a : s.find(':', a + 1);
  if (b == std::string::npos) throw DomainError("axis must be lo:hi:count, got " + s);
  Axis ax{to_double("axis", s.substr(0, a)), to_double("axis", s.substr(a + 1, b - a - 1)),
          to_int("axis", s.substr(b + 1))};
  if (ax.count < 1 || !(ax.hi >= ax.lo) || (ax.count == 1 && ax.hi != ax.lo)) {
    throw DomainError("axis needs hi >= lo and count >= 1: " + s);
  }
  return ax;
}

void RunConfig::validate() const {
  if (F.has_value() == delta.has_value()) throw DomainError("give exactly one of F and delta");
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("n must be positive");
  if (m < 0) throw DomainError("m must be >= 0");
  if (l < m) throw DomainError("l must be >= m");
  if (l_prime_top != 0 && l_prime_top < m) throw DomainError("lmax must be >= m");
  if (k_max < 0) throw DomainError("kmax must be >= 0");
  if (cutoff.scale < 0.0 || !(cutoff.power > 0.0)) throw DomainError("cutoff scale >= 0 and power > 0 required");
  if (grid_costheta.lo < -1.0 || grid_costheta.hi > 1.0) throw DomainError("cos theta outside [-1, 1]");
  if (!(grid_r.lo > 0.0)) throw DomainError("grid radii must be positive");
  (void)context();
}

coulomb::QuantumContext RunConfig::context() const {
  if (F) return coulomb::QuantumContext::from_field(n, m, *F);
  if (delta) return coulomb::QuantumContext::from_delta(n, m, *delta);
  throw DomainError("give exactly one of F and delta");
}

RunConfig RunConfig::resolved() const {
  RunConfig c = *this;
  if (c.l_prime_top == 0) c.l_prime_top = m + 12;
  if (c.cutoff.scale == 0.0) c.cutoff.scale = matching::default_cutoff(context()).scale;
  return c;
}

coulomb::FieldGrid RunConfig::grid() const {
  return coulomb::FieldGrid(coulomb::FieldGrid::linspace(grid_r.lo, grid_r.hi, grid_r.count),
                            coulomb::FieldGrid::linspace(grid_costheta.lo, grid_costheta.hi, grid_costheta.count));
}

std::string RunConfig::render() const {
  std::ostringstream os;
  os << "n=" << format17(n) << "\n";
  os << "m=" << m << "\n";
  if (F) os << "F=" << format17(*F) << "\n";
  if (delta) os << "delta=" << format17(*delta) << "\n";
  os << "l=" << l << "\n";
  os << "lmax=" << l_prime_top << "\n";
  os << "kmax=" << k_max << "\n";
  os << "cutoff_shape=" << matching::to_string(cutoff.shape) << "\n";
  os << "cutoff_scale=" << format17(cutoff.scale) << "\n";
  os << "cutoff_power=" << format17(cutoff.power) << "\n";
  os << "grid_r=" << grid_r.render() << "\n";
  os << "grid_costheta=" << grid_costheta.render() << "\n";
  os << "out=" << out << "\n";
  os << "method=" << to_string(method) << "\n";
  os << "precision=" << to_string(precision) << "\n";
  return os.str();
}

RunConfig RunConfig::parse(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("expected key=value: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  RunConfig c;
  c.F.reset();
  c.delta.reset();
  for (const auto& [k, v] : kv) {
    if (k == "n") c.n = to_double(k, v);
    else if (k == "m") c.m = to_int(k, v);
    else if (k == "F") c.F = to_double(k, v);
    else if (k == "delta") c.delta = to_double(k, v);
    else if (k == "l") c.l = to_int(k, v);
    else if (k == "lmax") c.l_prime_top = to_int(k, v);
    else if (k == "kmax") c.k_max = to_int(k, v);
    else if (k == "cutoff_shape") c.cutoff.shape = matching::parse_cutoff_shape(v);
    else if (k == "cutoff_scale") c.cutoff.scale = to_double(k, v);
    else if (k == "cutoff_power") c.cutoff.power = to_double(k, v);
    else if (k == "grid_r") c.grid_r = Axis::parse(v);
    else if (k == "grid_costheta") c.grid_costheta = Axis::parse(v);
    else if (k == "out") c.out = v;
    else if (k == "method") c.method = parse_method(v);
    else if (k == "precision") c.precision = parse_precision(v);
    else throw DomainError("unknown key: " + k);
  }
  return c;
}

std::string RunConfig::header() const {
  std::ostringstream os;
  std::istringstream is(render());
  std::string line;
  while (std::getline(is, line)) os << "# " << line << "\n";
  const auto ctx = context();
  os << "# derived_F=" << format17(ctx.F) << "\n";
  os << "# derived_delta=" << format17(ctx.delta) << "\n";
  return os.str();
}

bool RunConfig::operator==(const RunConfig& o) const {
  return n == o.n && m == o.m && F == o.F && delta == o.delta && l == o.l && l_prime_top == o.l_prime_top &&
         k_max == o.k_max && cutoff.shape == o.cutoff.shape && cutoff.scale == o.cutoff.scale &&
         cutoff.power == o.cutoff.power && grid_r == o.grid_r && grid_costheta == o.grid_costheta && out == o.out &&
         method == o.method && precision == o.precision;
}

RunConfig figure_preset(int which) {
  RunConfig c;
  if (which == 1) return c;
  if (which != 2) throw DomainError("figure must be 1 or 2");
  c.n = 28.5;
  c.grid_r = Axis{10.0, 80.0, 101};
  return c;
}

}  // namespace starklft::cli
