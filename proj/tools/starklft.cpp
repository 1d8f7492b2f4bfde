// starklft: channels | gamma | figure | verify
#include <CLI11.hpp>

#include <iostream>

#include "starklft/cli/commands.hpp"
#include "starklft/errors.hpp"

using namespace starklft;
using namespace starklft::cli;

namespace {

struct Flags {
  std::optional<double> n, F, delta, cutoff_scale, cutoff_power;
  std::optional<int> m, l, lmax, kmax;
  std::optional<std::string> cutoff_shape, grid_r, grid_costheta, method, precision, out;
};

void add_flags(CLI::App* app, Flags& f) {
  app->add_option("--n", f.n, "effective principal number (non-integer for gamma/figure)");
  app->add_option("--m", f.m, "magnetic quantum number");
  auto* F = app->add_option("--F", f.F, "field strength (a.u.)");
  auto* d = app->add_option("--delta", f.delta, "barrier parameter 16 F n^4");
  F->excludes(d);
  d->excludes(F);
  app->add_option("--l", f.l, "angular momentum of the irregular solution");
  app->add_option("--lmax", f.lmax, "l' truncation of the regular correction (default m+12)");
  app->add_option("--kmax", f.kmax, "number of channels");
  app->add_option("--cutoff-shape", f.cutoff_shape, "gaussian | exponential-power | sharp");
  app->add_option("--cutoff-scale", f.cutoff_scale, "cutoff scale z_c (default 4n)");
  app->add_option("--cutoff-power", f.cutoff_power, "exponential-power exponent");
  app->add_option("--grid-r", f.grid_r, "lo:hi:count");
  app->add_option("--grid-costheta", f.grid_costheta, "lo:hi:count");
  app->add_option("--method", f.method, "uom | glft | both");
  app->add_option("--precision", f.precision, "standard | extended");
  app->add_option("--out", f.out, "output directory");
}

RunConfig apply(RunConfig c, const Flags& f) {
  if (f.n) c.n = *f.n;
  if (f.m) c.m = *f.m;
  if (f.F) {
    c.F = *f.F;
    c.delta.reset();
  }
  if (f.delta) {
    c.delta = *f.delta;
    c.F.reset();
  }
  if (f.l) c.l = *f.l;
  if (f.lmax) c.l_prime_top = *f.lmax;
  if (f.kmax) c.k_max = *f.kmax;
  if (f.cutoff_shape) c.cutoff.shape = matching::parse_cutoff_shape(*f.cutoff_shape);
  if (f.cutoff_scale) c.cutoff.scale = *f.cutoff_scale;
  if (f.cutoff_power) c.cutoff.power = *f.cutoff_power;
  if (f.grid_r) c.grid_r = Axis::parse(*f.grid_r);
  if (f.grid_costheta) c.grid_costheta = Axis::parse(*f.grid_costheta);
  if (f.method) c.method = parse_method(*f.method);
  if (f.precision) c.precision = parse_precision(*f.precision);
  if (f.out) c.out = *f.out;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matching of irregular Stark and spherical Coulomb solutions"};
  app.require_subcommand(1);
  Flags f;
  int figure = 1;
  auto* channels = app.add_subcommand("channels", "solve and write the channel table");
  auto* gamma = app.add_subcommand("gamma", "gamma matrices with the plateau scan");
  auto* fig = app.add_subcommand("figure", "matched versus exact irregular field");
  auto* verify = app.add_subcommand("verify", "oracle suite");
  for (auto* s : {channels, gamma, fig, verify}) add_flags(s, f);
  fig->add_option("--which", figure, "preset: 1 (n = 10.5) or 2 (n = 28.5)")->check(CLI::IsMember({1, 2}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config;
  }

  try {
    if (fig->parsed()) {
      const RunConfig c = apply(figure_preset(figure), f);
      c.validate();
      return cmd_figure(c, std::cout);
    }
    const RunConfig c = apply(RunConfig{}, f);
    c.validate();
    if (channels->parsed()) return cmd_channels(c, std::cout);
    if (gamma->parsed()) return cmd_gamma(c, std::cout);
    return cmd_verify(c, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
