#pragma once

#include <optional>
#include <string>

#include "starklft/coulomb/coulomb.hpp"
#include "starklft/matching/matching.hpp"

namespace starklft::cli {

enum class MethodSelector { uom, glft, both };
enum class Precision { standard, extended };

std::string to_string(MethodSelector m);
std::string to_string(Precision p);
MethodSelector parse_method(const std::string& s);
Precision parse_precision(const std::string& s);

// Uniform axis written as "lo:hi:count".
struct Axis {
  double lo = 0;
  double hi = 0;
  int count = 0;

  std::string render() const;
  static Axis parse(const std::string& s);
  bool operator==(const Axis&) const = default;
};

struct RunConfig {
  double n = 10.5;
  int m = 1;
  std::optional<double> F;
  std::optional<double> delta = 1.3;
  int l = 3;
  int l_prime_top = 0;  // 0: m + 12
  int k_max = 0;        // 0: from the cutoff tail
  matching::CutoffSpec cutoff{matching::CutoffShape::exponential_power, 0.0, 8.0};  // scale 0: 4n
  Axis grid_r{10.0, 26.5, 101};
  Axis grid_costheta{-0.95, 0.95, 81};
  std::string out = ".";
  MethodSelector method = MethodSelector::both;
  Precision precision = Precision::extended;

  // Throws DomainError unless exactly one of F, delta is set and values are sane.
  void validate() const;
  coulomb::QuantumContext context() const;
  // Copy with the automatic values filled in.
  RunConfig resolved() const;
  coulomb::FieldGrid grid() const;

  // key=value lines; parse(render()) reproduces the config exactly.
  std::string render() const;
  static RunConfig parse(const std::string& text);
  // render() with every line prefixed by "# ", plus the derived F and delta.
  std::string header() const;

  bool operator==(const RunConfig&) const;
};

// Figure presets: 1 is n = 10.5, 2 is n = 28.5; both m = 1, l = 3, delta = 1.3.
RunConfig figure_preset(int which);

}  // namespace starklft::cli
