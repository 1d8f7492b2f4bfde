#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "starklft/cli/config.hpp"
#include "starklft/matching/matching.hpp"

namespace starklft::cli {

enum ExitCode { exit_ok = 0, exit_config = 1, exit_solver = 2, exit_plateau = 3, exit_oracle = 4 };

int exit_code_for(const std::exception& e);

// Frobenius norm of (a - b) over l, l' in [m, top], divided by that of b.
double frobenius_deviation(const matching::GammaMatrix& a, const matching::GammaMatrix& b, int top);

struct GammaRun {
  std::vector<matching::GammaMethod> methods;
  std::vector<matching::PlateauScan> scans;  // one per method
  int channels_solved = 0;
  double equivalence = -1;  // frobenius deviation over [m, m+6] when both methods ran
  bool plateau_ok() const;
  const matching::GammaMatrix& result(matching::GammaMethod m) const;
};

// Channels plus the plateau scan for the selected methods over l, l' <= l_top.
// An empty ladder means the default one around the cutoff scale.
GammaRun compute_gamma(const RunConfig& cfg, int l_top, const std::vector<double>& scales = {});

struct FigureMethod {
  matching::GammaMethod method;
  std::vector<double> matched;
  matching::DifferenceStats stats;
};

struct FigureRun {
  RunConfig config;  // resolved
  GammaRun gamma;
  int field_channels = 0;
  int lmax_used = 0;
  double lmax_check = 0;  // relative change of the difference sup when l'_top is doubled
  std::vector<double> exact;
  std::vector<FigureMethod> methods;
};

FigureRun compute_figure(const RunConfig& cfg);

struct OracleResult {
  std::string name;
  double measured = 0;
  double threshold = 0;
  bool pass = false;
  double seconds = 0;
};

std::vector<OracleResult> run_oracles(const RunConfig& cfg);

// Subcommands. Each writes into cfg.out and returns an exit code; errors are
// reported on `log`.
int cmd_channels(const RunConfig& cfg, std::ostream& log);
int cmd_gamma(const RunConfig& cfg, std::ostream& log);
int cmd_figure(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);

}  // namespace starklft::cli
