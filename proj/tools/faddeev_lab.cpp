// faddeev_lab: simulate / check / oracle / sweep front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "faddeev/checks.hpp"
#include "faddeev/config.hpp"
#include "faddeev/error.hpp"
#include "faddeev/io.hpp"

namespace fs = std::filesystem;
using namespace faddeev;

namespace {

enum Exit : int {
  kOk = 0,
  kConfigError = 1,
  kChartExit = 2,
  kDegenerate = 3,
  kNonFinite = 4,
  kCheckFailed = 5,
  kOracleFailed = 6,
  kSweepFailed = 7,
};

struct Options {
  std::string config;
  std::string out = "out";
  int nx_override = 0;
  bool quiet = false;
  double corrupt = 0.0;
  std::string suite;
  std::vector<double> epsilons;
};

AppConfig load(const Options& o) {
  AppConfig cfg = o.config.empty() ? default_config() : load_config(o.config);
  if (o.nx_override > 0) {
    cfg.run.nx = o.nx_override;
    cfg.run.validate();
  }
  return cfg;
}

int exit_for(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return kOk;
    case RunStatus::ChartExit: return kChartExit;
    case RunStatus::PrincipalDegenerate: return kDegenerate;
    case RunStatus::NonFinite: return kNonFinite;
  }
  return kNonFinite;
}

std::string fit_line(const SeriesTable& series, const char* column, FitWindow w) {
  try {
    const DecayFit f = fit_decay(series, column, w);
    std::ostringstream ss;
    ss << column << ": gamma " << format_double(f.gamma) << ", amplitude " << format_double(f.amplitude)
       << ", rms " << format_double(f.rms) << " (" << f.samples << " samples)";
    return ss.str();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EmptyWindow) throw;
    return std::string(column) + ": not fitted (" + e.what() + ")";
  }
}

int cmd_simulate(const Options& o) {
  const AppConfig cfg = load(o);
  const Trajectory traj = run(cfg.run);

  const fs::path out(o.out);
  fs::create_directories(out / "snapshots");
  write_csv(out / "diagnostics.csv", traj.series);
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%04zu.fdvs", i);
    write_snapshot(out / "snapshots" / name, traj.snapshots[i]);
  }

  std::ostringstream sum;
  const Grid2D grid = cfg.run.grid();
  sum << "status: " << to_string(traj.status) << "\n";
  if (!traj.message.empty()) sum << "message: " << traj.message << "\n";
  sum << "grid: nx " << grid.nx() << ", L " << format_double(grid.half_width()) << ", h "
      << format_double(grid.spacing()) << "\n";
  sum << "time: dt " << format_double(traj.dt) << ", steps " << traj.steps << "\n";
  sum << "data: epsilon " << format_double(cfg.run.data.epsilon) << ", sigma "
      << format_double(cfg.run.data.sigma) << ", kappa " << format_double(cfg.run.model.kappa) << "\n";
  if (!traj.series.records().empty()) {
    const SeriesRecord& last = traj.series.records().back();
    sum << "final row (t = " << format_double(last.t) << "):\n";
    for (std::size_t c = 0; c < traj.series.columns().size(); ++c)
      sum << "  " << traj.series.columns()[c] << " = " << format_double(last.values[c]) << "\n";
    sum << "decay fits over [" << format_double(cfg.fit.t0) << ", " << format_double(cfg.fit.t1)
        << "]:\n";
    for (const char* col : {"Linf_s0", "L2_G1", "L2_G1_dn"})
      sum << "  " << fit_line(traj.series, col, cfg.fit) << "\n";
  }
  std::ofstream(out / "summary.txt") << sum.str();
  if (!o.quiet) std::cout << sum.str();
  if (traj.status != RunStatus::Completed) std::cerr << "run ended: " << traj.message << "\n";
  return exit_for(traj.status);
}

bool print_report(const SuiteReport& rep, bool quiet) {
  if (!quiet)
    for (const std::string& l : rep.lines) std::cout << "  " << l << "\n";
  std::cout << rep.name << ": " << (rep.passed ? "PASS" : "FAIL") << "\n";
  return rep.passed;
}

int cmd_check(const Options& o) {
  std::optional<testing::ScopedStencilCorruption> corrupt;
  if (o.corrupt != 0.0) corrupt.emplace(o.corrupt);
  std::vector<std::string> suites{o.suite};
  if (o.suite == "all") suites = check_suite_names();
  bool ok = true;
  for (const std::string& s : suites) ok = print_report(run_check(s, o.nx_override), o.quiet) && ok;
  return ok ? kOk : kCheckFailed;
}

int cmd_oracle(const Options& o) {
  std::vector<std::string> subs{o.suite};
  if (o.suite == "all") subs = oracle_names();
  bool ok = true;
  for (const std::string& s : subs) ok = print_report(run_oracle(s, o.nx_override), o.quiet) && ok;
  return ok ? kOk : kOracleFailed;
}

int cmd_sweep(const Options& o) {
  const AppConfig cfg = load(o);
  const SweepReport rep = epsilon_sweep(cfg.run, o.epsilons, cfg.fit);

  std::ostringstream csv, txt;
  csv << "epsilon,status,gamma_linf,amplitude_linf,gamma_l2_n,gamma_l2_dn\n";
  bool ok = rep.all_completed && rep.slopes_available;
  for (const SweepEntry& e : rep.entries) {
    auto num = [&](double v) { return e.fitted ? format_double(v) : std::string("nan"); };
    csv << format_double(e.epsilon) << "," << e.status << "," << num(e.linf.gamma) << ","
        << num(e.linf.amplitude) << "," << num(e.l2_n.gamma) << "," << num(e.l2_dn.gamma) << "\n";
    txt << "eps " << format_double(e.epsilon) << ": " << e.status;
    if (e.fitted)
      txt << ", Linf gamma " << format_double(e.linf.gamma) << ", L2 gamma " << format_double(e.l2_n.gamma)
          << ", energy-norm gamma " << format_double(e.l2_dn.gamma);
    if (!e.message.empty()) txt << " (" << e.message << ")";
    txt << "\n";
    if (e.fitted) {
      if (!(e.linf.gamma >= -0.6 && e.linf.gamma <= -0.4)) ok = false;
      if (!(e.l2_dn.gamma <= 0.1)) ok = false;
    } else if (e.epsilon > 0.0) {
      ok = false;
    }
  }
  if (rep.slopes_available) {
    txt << "amplitude slope " << format_double(rep.amplitude_slope) << " (band 1 +- 0.05)\n";
    txt << "pointwise slope range [" << format_double(rep.time_slope_min) << ", "
        << format_double(rep.time_slope_max) << "]\n";
    if (!(std::abs(rep.amplitude_slope - 1.0) <= 0.05)) ok = false;
  } else {
    txt << "amplitude slope: not available\n";
  }
  txt << "sweep: " << (ok ? "PASS" : "FAIL") << "\n";

  const fs::path out(o.out);
  fs::create_directories(out);
  std::ofstream(out / "sweep.csv") << csv.str();
  std::ofstream(out / "sweep_summary.txt") << txt.str();
  std::cout << (o.quiet ? (ok ? "sweep: PASS\n" : "sweep: FAIL\n") : txt.str());
  return ok ? kOk : kSweepFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small-data Faddeev model lab: solver, diagnostics and estimate checks"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--config", o.config, "JSON run config (defaults built in)");
    if (with_out) sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    sub->add_option("--nx-override", o.nx_override, "Replace the grid size")->check(CLI::PositiveNumber);
    sub->add_flag("--quiet,-q", o.quiet, "Only print the verdict");
  };

  CLI::App* sim = app.add_subcommand("simulate", "Run the solver and write CSV, snapshots, summary");
  common(sim, true);

  std::vector<std::string> suites = check_suite_names();
  suites.push_back("all");
  CLI::App* chk = app.add_subcommand("check", "Convergence suites on built-in fields (exit 5 on failure)");
  chk->add_option("suite", o.suite)->required()->check(CLI::IsMember(suites));
  common(chk, false);
  chk->add_option("--corrupt-stencil", o.corrupt)->group("");

  std::vector<std::string> subs = oracle_names();
  subs.push_back("all");
  CLI::App* orc = app.add_subcommand("oracle", "Linear-wave estimate checks (exit 6 on failure)");
  orc->add_option("sub", o.suite)->required()->check(CLI::IsMember(subs));
  common(orc, false);

  CLI::App* swp = app.add_subcommand("sweep", "Amplitude sweep (exit 7 on failure)");
  swp->add_option("--eps", o.epsilons, "Comma separated amplitudes")->delimiter(',')->required();
  common(swp, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (*sim) return cmd_simulate(o);
    if (*chk) return cmd_check(o);
    if (*orc) return cmd_oracle(o);
    if (*swp) return cmd_sweep(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::InvalidConfig:
      case ErrorKind::InvalidArgument:
      case ErrorKind::AmplitudeTooLarge:
      case ErrorKind::Io: return kConfigError;
      case ErrorKind::ChartExit: return kChartExit;
      case ErrorKind::PrincipalDegenerate: return kDegenerate;
      case ErrorKind::NonFinite: return kNonFinite;
      default: break;
    }
    if (*chk) return kCheckFailed;
    if (*orc) return kOracleFailed;
    return kSweepFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}
