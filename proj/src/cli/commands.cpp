#include "starklft/cli/commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>

#include "starklft/errors.hpp"
#include "starklft/lft/lft.hpp"
#include "starklft/specfun/gamma.hpp"
#include "starklft/specfun/kummer.hpp"
#include "starklft/stark/stark.hpp"

namespace starklft::cli {

using matching::GammaMatrix;
using matching::GammaMethod;
using matching::PlateauScan;
using specfun::SignedLogValue;
using json = nlohmann::ordered_json;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const PlateauError*>(&e)) return exit_plateau;
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const PoleError*>(&e)) return exit_config;
  return exit_solver;
}

double frobenius_deviation(const GammaMatrix& a, const GammaMatrix& b, int top) {
  const int m = b.ctx.m;
  double num = 0.0, den = 0.0;
  for (int l = m; l <= top; ++l) {
    for (int lp = m; lp <= top; ++lp) {
      const double d = a(l, lp) - b(l, lp);
      num += d * d;
      den += b(l, lp) * b(l, lp);
    }
  }
  return std::sqrt(num / den);
}

bool GammaRun::plateau_ok() const {
  return std::all_of(scans.begin(), scans.end(), [](const PlateauScan& s) { return s.ok; });
}

const GammaMatrix& GammaRun::result(GammaMethod m) const {
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (methods[i] == m) return scans[i].result();
  }
  throw DomainError("method not computed: " + matching::to_string(m));
}

namespace {

std::vector<GammaMethod> selected(MethodSelector s) {
  if (s == MethodSelector::uom) return {GammaMethod::uom};
  if (s == MethodSelector::glft) return {GammaMethod::glft};
  return {GammaMethod::uom, GammaMethod::glft};
}

template <class Solve>
GammaRun gamma_with(const RunConfig& c, int l_top, const std::vector<double>& scales, Solve solve) {
  const auto ctx = c.context();
  matching::PlateauOptions opt;
  opt.scales = scales.empty() ? matching::default_scale_ladder(c.cutoff.scale) : scales;
  matching::CutoffSpec widest = c.cutoff;
  widest.scale = opt.scales.back();
  const int K = c.k_max > 0 ? c.k_max : stark::count_channels_below(ctx, widest.support(1e-80)) + 3;
  const auto channels = solve(ctx, K);
  GammaRun run;
  run.channels_solved = K;
  run.methods = selected(c.method);
  for (GammaMethod m : run.methods) run.scans.push_back(matching::plateau_gamma(ctx, channels, l_top, m, c.cutoff, opt));
  if (run.methods.size() == 2) {
    run.equivalence = frobenius_deviation(run.scans[1].result(), run.scans[0].result(), std::min(l_top, ctx.m + 6));
  }
  return run;
}

}  // namespace

GammaRun compute_gamma(const RunConfig& cfg, int l_top, const std::vector<double>& scales) {
  cfg.validate();
  const RunConfig c = cfg.resolved();
  if (c.precision == Precision::extended) return gamma_with(c, l_top, scales, [](const coulomb::QuantumContext& ctx, int K) {
      return stark::solve_channels_extended(ctx, K);
    });
  return gamma_with(c, l_top, scales, [](const coulomb::QuantumContext& ctx, int K) { return stark::solve_channels(ctx, K); });
}

FigureRun compute_figure(const RunConfig& cfg) {
  cfg.validate();
  FigureRun fr;
  fr.config = cfg.resolved();
  const RunConfig& c = fr.config;
  const auto ctx = c.context();
  const coulomb::FieldGrid grid = c.grid();
  const int lp = c.l_prime_top;
  const int lp_wide = ctx.m + 2 * (lp - ctx.m);
  if (c.l > lp) throw DomainError("l must not exceed lmax");
  fr.gamma = compute_gamma(c, lp_wide);

  const int K = stark::count_channels_below(ctx, matching::field_channels_estimate(ctx, grid)) + 5;
  const auto channels = stark::solve_channels(ctx, K);
  matching::FieldSumInfo info;
  const std::vector<double> part = matching::channel_field(ctx, channels, c.l, grid, &info);
  fr.field_channels = info.channels;
  fr.exact = matching::exact_irregular_field(ctx, c.l, grid);
  const double r_ref = matching::reference_radius(ctx);

  // The l' truncation is accepted when doubling it moves the sup by less than 5%.
  fr.lmax_used = lp;
  for (std::size_t i = 0; i < fr.gamma.methods.size(); ++i) {
    const GammaMethod m = fr.gamma.methods[i];
    const GammaMatrix& g = fr.gamma.scans[i].composite;
    int top = ctx.m - 1;
    while (top < lp_wide && std::isfinite(g(c.l, top + 1))) ++top;
    if (top < lp) throw PlateauError("no converged gamma entries up to lmax in row l");
    const int wide_top = top;
    FigureMethod fm{m, matching::matched_irregular_field(ctx, part, g, c.l, lp, grid), {}};
    fm.stats = matching::compare_with_exact(ctx, fm.matched, fr.exact, c.l, grid, r_ref);
    const auto wide = matching::matched_irregular_field(ctx, part, g, c.l, wide_top, grid);
    const auto wide_stats = matching::compare_with_exact(ctx, wide, fr.exact, c.l, grid, r_ref);
    const double change = std::fabs(wide_stats.sup - fm.stats.sup) / wide_stats.sup;
    fr.lmax_check = std::max(fr.lmax_check, change);
    if (change >= 0.05) {
      fm.matched = wide;
      fm.stats = wide_stats;
      fr.lmax_used = std::max(fr.lmax_used, wide_top);
    }
    fr.methods.push_back(std::move(fm));
  }
  return fr;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double wronskian_sample() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> da(-12.0, 2.0);
  std::uniform_int_distribution<int> db(1, 6);
  std::uniform_real_distribution<double> dx(0.1, 40.0);
  double worst = 0.0;
  for (int checked = 0; checked < 200;) {
    const double a = da(rng);
    if (std::fabs(a - std::round(a)) < 1e-3) continue;
    const int b = db(rng);
    const double x = dx(rng);
    const double m = specfun::kummer_m(a, b, x);
    const double m1 = specfun::kummer_m(a + 1, b + 1, x);
    const auto u = specfun::tricomi_u_log(a, b, x);
    const auto u1 = specfun::tricomi_u_log(a + 1, b + 1, x);
    const auto w = specfun::log_gamma_signed(double(b)) / specfun::log_gamma_signed(a) *
                   SignedLogValue::from_log(-b * std::log(x) + x, 1);
    const double t1 = (SignedLogValue::from_value(a / b * m1) * u / w).value();
    const double t2 = (SignedLogValue::from_value(a * m) * u1 / w).value();
    worst = std::max(worst, std::fabs(t1 + t2 - 1.0));
    ++checked;
  }
  return worst;
}

double reflection_sample() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-150.0, 150.0);
  double worst = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double x = dist(rng);
    if (std::fabs(x - std::round(x)) < 1e-3) continue;
    const double pi = std::numbers::pi;
    const auto prod = specfun::log_gamma_signed(x) * specfun::log_gamma_signed(1.0 - x);
    const auto want = SignedLogValue::from_value(pi / std::sin(pi * x));
    const double g = prod.sign == want.sign ? std::fabs(prod.log_abs - want.log_abs) / std::max(1.0, std::fabs(want.log_abs))
                                            : 1.0;
    const double dref = pi / std::tan(pi * x);
    const double p1 = specfun::digamma(1.0 - x), p0 = specfun::digamma(x);
    const double d = std::fabs(p1 - p0 - dref) / std::max({1.0, std::fabs(p1), std::fabs(p0), std::fabs(dref)});
    worst = std::max({worst, g, d});
  }
  return worst;
}

}  // namespace

std::vector<OracleResult> run_oracles(const RunConfig& cfg) {
  cfg.validate();
  std::vector<OracleResult> out;
  const double n = cfg.n;
  const int m = cfg.m;
  auto run = [&](const std::string& name, double threshold, auto&& body) {
    OracleResult r{name, 0.0, threshold, false, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.measured = body();
      r.pass = r.measured <= threshold;
    } catch (const Error&) {
      r.measured = HUGE_VAL;
    }
    r.seconds = seconds_since(t0);
    out.push_back(r);
  };

  run("regular_lft_identity", 1e-8, [&] {
    const coulomb::FieldGrid grid(coulomb::FieldGrid::linspace(1.0, 20.0, 39),
                                  coulomb::FieldGrid::linspace(-0.95, 0.95, 39));
    double worst = 0.0;
    std::vector<int> ms{0};
    if (m != 0) ms.push_back(m);
    for (int mm : ms) {
      const auto ctx = coulomb::QuantumContext::from_field(n, mm, 0.0);
      for (double nu : {0.0, 2.0, 2.37}) {
        worst = std::max(worst, lft::regular_lft_identity_residual(ctx, nu, grid, 40).sup_relative);
      }
    }
    return worst;
  });
  run("irregular_expansion", 1e-6, [&] {
    const coulomb::FieldGrid grid(coulomb::FieldGrid::linspace(5.0, 40.0, 36),
                                  coulomb::FieldGrid::linspace(-0.9, 0.9, 37));
    const auto ctx = coulomb::QuantumContext::from_field(n, m, 0.0);
    double worst = 0.0;
    for (int l : {m, m + 2, m + 4}) {
      worst = std::max(worst, lft::exact_irregular_identity_residual(ctx, l, grid).sup_relative);
    }
    return worst;
  });
  const auto weak = coulomb::QuantumContext::from_field(n, m, 1e-12);
  std::vector<stark::StarkChannel> weak_channels;
  run("zero_field_nu", 1e-6, [&] {
    weak_channels = stark::solve_channels(weak, 10);
    double worst = 0.0;
    for (const auto& ch : weak_channels) worst = std::max(worst, std::fabs(ch.nu - (ch.k - 1)));
    return worst;
  });
  run("zero_field_c", 1e-4, [&] {
    if (weak_channels.empty()) throw ConvergenceError("no channels");
    double worst = 0.0;
    for (const auto& ch : weak_channels) {
      const double N = coulomb::norm_Nn1(weak, ch.k - 1);
      worst = std::max(worst, std::fabs(ch.c * ch.c - N * N));
    }
    return worst;
  });
  run("kummer_wronskian", 1e-8, wronskian_sample);
  run("gamma_digamma_reflection", 1e-12, reflection_sample);
  return out;
}

namespace {

std::filesystem::path prepare_out(const RunConfig& c) {
  std::filesystem::path dir(c.out);
  std::filesystem::create_directories(dir);
  return dir;
}

json stats_json(const matching::DifferenceStats& st) {
  json j;
  j["sup"] = st.sup;
  j["q50"] = st.q50;
  j["q90"] = st.q90;
  j["q99"] = st.q99;
  j["nodes"] = st.counted;
  j["r_ref"] = st.r_ref;
  j["reference"] = st.reference;
  json sl = json::array();
  for (const auto& s : st.slices) sl.push_back({{"costheta", s.costheta}, {"sup", s.sup}});
  j["slices"] = sl;
  return j;
}

json scan_json(const PlateauScan& s) {
  json j;
  j["scales"] = s.scales;
  std::vector<double> change(s.max_change);
  if (!change.empty()) change[0] = 0.0;
  j["max_change"] = change;
  j["reliable"] = std::vector<bool>(s.reliable.begin(), s.reliable.end());
  j["chosen_scale"] = s.scales.at(s.chosen);
  j["ok"] = s.ok;
  return j;
}

void write_json(const std::filesystem::path& p, const json& j) {
  std::ofstream os(p);
  os << j.dump(2) << "\n";
}

template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace

int cmd_channels(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const RunConfig c = cfg.resolved();
    const int K = c.k_max > 0 ? c.k_max : 40;
    const auto channels = stark::solve_channels(c.context(), K);
    const auto path = prepare_out(c) / "channels.csv";
    std::ofstream os(path);
    os << c.header();
    stark::write_channel_table(os, channels);
    log << "wrote " << path.string() << " (" << channels.size() << " channels)\n";
    return int(exit_ok);
  });
}

int cmd_gamma(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const RunConfig c = cfg.resolved();
    const GammaRun run = compute_gamma(c, c.l_prime_top);
    const auto dir = prepare_out(c);
    json summary;
    for (std::size_t i = 0; i < run.methods.size(); ++i) {
      const auto name = matching::to_string(run.methods[i]);
      const auto path = dir / ("gamma_" + name + ".csv");
      std::ofstream os(path);
      matching::write_gamma(os, run.scans[i].result(), c.header());
      summary[name] = scan_json(run.scans[i]);
      log << "wrote " << path.string() << " (scale " << run.scans[i].scales[run.scans[i].chosen]
          << (run.scans[i].ok ? ", plateau ok" : ", NO plateau") << ")\n";
    }
    summary["channels"] = run.channels_solved;
    if (run.equivalence >= 0) {
      summary["equivalence_frobenius"] = run.equivalence;
      log << "equivalence uom/glft frobenius deviation over [m, m+6]: " << run.equivalence << "\n";
    }
    write_json(dir / "gamma_summary.json", summary);
    if (!run.plateau_ok()) throw PlateauError("no stable plateau on the cutoff ladder");
    return int(exit_ok);
  });
}

int cmd_figure(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const FigureRun fr = compute_figure(cfg);
    const RunConfig& c = fr.config;
    const auto dir = prepare_out(c);
    const auto grid = c.grid();

    std::vector<std::string> names{"exact"};
    std::vector<std::vector<double>> cols{fr.exact};
    std::vector<std::vector<double>> diffs;
    for (const auto& fm : fr.methods) {
      names.push_back("matched_" + matching::to_string(fm.method));
      cols.push_back(fm.matched);
    }
    for (const auto& fm : fr.methods) {
      names.push_back("difference_" + matching::to_string(fm.method));
      cols.push_back(fm.stats.normalized);
    }
    std::vector<const std::vector<double>*> ptrs;
    for (const auto& col : cols) ptrs.push_back(&col);
    {
      std::ofstream os(dir / "figure_field.csv");
      std::string header = c.header();
      header += "# r_ref=" + num::format12(matching::reference_radius(c.context())) + "\n";
      header += "# lmax_used=" + std::to_string(fr.lmax_used) + "\n";
      matching::write_field(os, grid, names, ptrs, header);
    }
    json summary;
    summary["config"] = c.render();
    summary["field_channels"] = fr.field_channels;
    summary["gamma_channels"] = fr.gamma.channels_solved;
    summary["lmax_used"] = fr.lmax_used;
    summary["lmax_doubling_change"] = fr.lmax_check;
    for (std::size_t i = 0; i < fr.methods.size(); ++i) {
      const auto name = matching::to_string(fr.methods[i].method);
      summary[name] = stats_json(fr.methods[i].stats);
      summary[name]["plateau"] = scan_json(fr.gamma.scans[i]);
      log << name << ": sup " << fr.methods[i].stats.sup << " q50 " << fr.methods[i].stats.q50 << " q90 "
          << fr.methods[i].stats.q90 << "\n";
    }
    if (fr.gamma.equivalence >= 0) summary["equivalence_frobenius"] = fr.gamma.equivalence;
    write_json(dir / "figure_summary.json", summary);
    log << "wrote " << (dir / "figure_field.csv").string() << " and figure_summary.json\n";
    if (!fr.gamma.plateau_ok()) throw PlateauError("no stable plateau on the cutoff ladder");
    return int(exit_ok);
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const auto results = run_oracles(cfg);
    json j = json::array();
    bool all = true;
    for (const auto& r : results) {
      j.push_back({{"oracle", r.name},
                   {"measured", r.measured},
                   {"threshold", r.threshold},
                   {"pass", r.pass}});
      log << (r.pass ? "PASS " : "FAIL ") << r.name << " measured=" << r.measured << " threshold=" << r.threshold
          << "\n";
      all = all && r.pass;
    }
    write_json(prepare_out(cfg) / "verify.json", j);
    return all ? int(exit_ok) : int(exit_oracle);
  });
}

}  // namespace starklft::cli
