#include "csb/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "csb/errors.hpp"
#include "csb/output.hpp"
#include "csb/version.hpp"

namespace csb::cli {
namespace {

struct PhysicsFlags {
  double omega_b = 1.0;
  double omega_c = 1.0;
  std::optional<double> omega;
  double lambda = 1.0;
  double delta = 0.0;
};

struct SearchFlags {
  std::optional<double> t_max;
  int samples = 4096;
  std::string tau_rule = "first-peak";
};

struct OutputFlags {
  std::string format = "csv";
  std::string path;
};

void add_physics(CLI::App *cmd, PhysicsFlags &f) {
  cmd->add_option("--omega-b", f.omega_b, "Battery spin splitting")->capture_default_str();
  cmd->add_option("--omega-c", f.omega_c, "Charger spin splitting")->capture_default_str();
  cmd->add_option("--omega", f.omega, "Set both splittings");
  cmd->add_option("--lambda", f.lambda, "Flip-flop coupling")->capture_default_str();
  cmd->add_option("--delta", f.delta, "Ising (ZZ) coupling")->capture_default_str();
}

void add_search(CLI::App *cmd, SearchFlags &f) {
  cmd->add_option("--tmax", f.t_max, "Search horizon (default: 8 pi / smallest level gap)");
  cmd->add_option("--samples", f.samples, "Coarse grid samples")->capture_default_str();
  cmd->add_option("--tau-rule", f.tau_rule, "first-peak or window")->capture_default_str();
}

void add_output(CLI::App *cmd, OutputFlags &f) {
  cmd->add_option("--format", f.format, "csv or json")->capture_default_str();
  cmd->add_option("--output", f.path, "Output file (default: standard output)");
}

BatteryConfig make_config(int nb, int nc, const PhysicsFlags &p) {
  BatteryConfig c;
  c.n_b = nb;
  c.n_c = nc;
  c.omega_b = p.omega ? *p.omega : p.omega_b;
  c.omega_c = p.omega ? *p.omega : p.omega_c;
  c.lambda = p.lambda;
  c.delta = p.delta;
  validate(c);
  return c;
}

SearchPolicy make_policy(const SearchFlags &s) {
  SearchPolicy policy;
  policy.rule = parse_tau_rule(s.tau_rule);
  policy.t_max = s.t_max;
  policy.coarse_samples = s.samples;
  validate(policy);
  return policy;
}

// Writes through `fn` to the requested file or to `out`.
template <typename Fn> void emit(const OutputFlags &o, std::ostream &out, Fn &&fn) {
  const OutputFormat format = parse_format(o.format);
  if (o.path.empty()) {
    fn(format, out);
    return;
  }
  std::ofstream file(o.path);
  if (!file)
    throw DomainError("cannot open output file " + o.path);
  fn(format, file);
}

std::vector<int> split_ints(const std::string &text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    values.push_back(std::stoi(item));
  return values;
}

} // namespace

std::vector<int> parse_int_range(const std::string &text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw DomainError("range must look like A:B, got '" + text + "'");
  int a = 0, b = 0;
  try {
    a = std::stoi(text.substr(0, colon));
    b = std::stoi(text.substr(colon + 1));
  } catch (const std::exception &) {
    throw DomainError("range must look like A:B, got '" + text + "'");
  }
  if (b < a)
    throw DomainError("range end below start in '" + text + "'");
  std::vector<int> out;
  for (int v = a; v <= b; ++v)
    out.push_back(v);
  return out;
}

std::vector<double> parse_ratio_range(const std::string &text) {
  double a = 0.0, b = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0) || b < a)
    throw DomainError("ratio range must look like A:B:STEP, got '" + text + "'");
  std::vector<double> out;
  const auto count = static_cast<int>(std::floor((b - a) / step + 1e-9));
  for (int i = 0; i <= count; ++i)
    out.push_back(a + i * step);
  return out;
}

SweepSpec preset(const std::string &name, int max_n) {
  SweepSpec spec;
  if (name == "fig2") {
    spec.n_b_values = {2};
    spec.n_c_values = parse_int_range("2:50");
  } else if (name == "fig3") {
    spec.n_b_values = parse_int_range("2:50");
    spec.n_c_values = {2};
  } else if (name == "fig4a") {
    spec.n_b_values = {100, 150, 200};
    spec.n_c_values = parse_int_range("1:600");
  } else if (name == "fig4b") {
    spec.mode = SweepMode::RatioScan;
    spec.n_b_values = {100, 150, 200};
    spec.ratios = parse_ratio_range("0.5:3:0.02");
  } else if (name == "fig4c") {
    spec.mode = SweepMode::RatioScan;
    spec.n_b_values = {500, 1000};
    spec.ratios = parse_ratio_range("0.5:3:0.02");
  } else if (name == "fig5") {
    if (max_n < 2)
      throw DomainError("--max-n must be at least 2");
    spec.mode = SweepMode::Diagonal;
    spec.n_b_values = parse_int_range("2:" + std::to_string(max_n));
  } else {
    throw DomainError("unknown preset '" + name + "'");
  }
  return spec;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Central-spin quantum battery charging simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // point
  int point_nb = 0, point_nc = 0;
  PhysicsFlags point_phys;
  SearchFlags point_search;
  OutputFlags point_out;
  CLI::App *point = app.add_subcommand("point", "Optimal charging for one (n_b, n_c)");
  point->add_option("--nb", point_nb, "Battery spins")->required();
  point->add_option("--nc", point_nc, "Charger spins")->required();
  add_physics(point, point_phys);
  add_search(point, point_search);
  add_output(point, point_out);

  // series
  int series_nb = 0, series_nc = 0;
  PhysicsFlags series_phys;
  double series_tmax = 10.0;
  int series_samples = 200;
  OutputFlags series_out;
  CLI::App *series = app.add_subcommand("series", "Delta E(t) and S_b(t) on a uniform time grid");
  series->add_option("--nb", series_nb, "Battery spins")->required();
  series->add_option("--nc", series_nc, "Charger spins")->required();
  add_physics(series, series_phys);
  series->add_option("--tmax", series_tmax, "Final time")->capture_default_str();
  series->add_option("--samples", series_samples, "Number of samples (>= 2)")->capture_default_str();
  add_output(series, series_out);

  // sweep
  std::string sweep_preset, sweep_nb_range, sweep_nc_range, sweep_ratio_range, sweep_nb_list,
      sweep_nc_list;
  bool sweep_diagonal = false, sweep_strict = false;
  int sweep_max_n = 200;
  int sweep_workers = std::max(1u, std::thread::hardware_concurrency());
  double sweep_threshold = 0.01;
  PhysicsFlags sweep_phys;
  SearchFlags sweep_search;
  OutputFlags sweep_out;
  CLI::App *sweep = app.add_subcommand("sweep", "Parameter sweep over (n_b, n_c)");
  sweep->add_option("--preset", sweep_preset, "fig2|fig3|fig4a|fig4b|fig4c|fig5");
  sweep->add_option("--nb", sweep_nb_list, "Battery sizes, comma separated");
  sweep->add_option("--nc", sweep_nc_list, "Charger sizes, comma separated");
  sweep->add_option("--nb-range", sweep_nb_range, "Battery sizes A:B");
  sweep->add_option("--nc-range", sweep_nc_range, "Charger sizes A:B");
  sweep->add_option("--ratio-range", sweep_ratio_range, "Charger/battery ratios A:B:STEP");
  sweep->add_flag("--diagonal", sweep_diagonal, "Use n_c = n_b");
  sweep->add_option("--max-n", sweep_max_n, "Largest n for the fig5 preset")->capture_default_str();
  sweep->add_option("--workers", sweep_workers, "Worker threads")->capture_default_str();
  sweep->add_flag("--strict", sweep_strict, "Exit 3 if any point fails");
  sweep->add_option("--uniformity-threshold", sweep_threshold, "Flag level for ratio sweeps")
      ->capture_default_str();
  add_physics(sweep, sweep_phys);
  add_search(sweep, sweep_search);
  add_output(sweep, sweep_out);

  // selfcheck
  SelfcheckOptions check;
  std::optional<double> check_delta;
  CLI::App *selfcheck = app.add_subcommand("selfcheck", "Oracle and closed-form consistency checks");
  selfcheck->add_option("--delta", check_delta, "Also check this Ising coupling");
  selfcheck->add_option("--max-spins", check.max_spins, "Largest n_b + n_c for the oracle")
      ->capture_default_str();
  selfcheck->add_flag("--inject-fault", check.inject_fault)->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion &) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (point->parsed()) {
      const BatteryConfig config = make_config(point_nb, point_nc, point_phys);
      const SearchPolicy policy = make_policy(point_search);
      SweepRow row;
      row.point = {config.n_b, config.n_c, std::nullopt};
      row.result = find_optimal_tau(config, policy);
      emit(point_out, out, [&](OutputFormat format, std::ostream &os) {
        SweepResult single;
        single.spec.n_b_values = {config.n_b};
        single.spec.n_c_values = {config.n_c};
        single.spec.omega_b = config.omega_b;
        single.spec.omega_c = config.omega_c;
        single.spec.lambda = config.lambda;
        single.spec.delta = config.delta;
        single.spec.search = policy;
        single.version = kVersion;
        single.rows = {row};
        write_sweep(single, format, os);
      });
      return kExitOk;
    }

    if (series->parsed()) {
      const BatteryConfig config = make_config(series_nb, series_nc, series_phys);
      if (series_samples < 2)
        throw DomainError("--samples must be at least 2");
      const ObservableSeries s = observable_series(config, series_tmax, series_samples);
      emit(series_out, out, [&](OutputFormat format, std::ostream &os) { write_series(s, format, os); });
      return kExitOk;
    }

    if (sweep->parsed()) {
      SweepSpec spec;
      if (!sweep_preset.empty()) {
        spec = preset(sweep_preset, sweep_max_n);
      } else {
        if (!sweep_nb_list.empty())
          spec.n_b_values = split_ints(sweep_nb_list);
        if (!sweep_nb_range.empty())
          spec.n_b_values = parse_int_range(sweep_nb_range);
        if (!sweep_nc_list.empty())
          spec.n_c_values = split_ints(sweep_nc_list);
        if (!sweep_nc_range.empty())
          spec.n_c_values = parse_int_range(sweep_nc_range);
        if (sweep_diagonal) {
          spec.mode = SweepMode::Diagonal;
        } else if (!sweep_ratio_range.empty()) {
          spec.mode = SweepMode::RatioScan;
          spec.ratios = parse_ratio_range(sweep_ratio_range);
        }
        if (spec.n_b_values.empty())
          throw DomainError("sweep needs --preset, --nb or --nb-range");
      }
      spec.omega_b = sweep_phys.omega ? *sweep_phys.omega : sweep_phys.omega_b;
      spec.omega_c = sweep_phys.omega ? *sweep_phys.omega : sweep_phys.omega_c;
      spec.lambda = sweep_phys.lambda;
      spec.delta = sweep_phys.delta;
      spec.search = make_policy(sweep_search);
      validate(spec);
      if (sweep_workers < 1)
        throw DomainError("--workers must be ≥ 1");

      const SweepResult result = run_sweep(spec, sweep_workers);
      emit(sweep_out, out, [&](OutputFormat format, std::ostream &os) { write_sweep(result, format, os); });

      std::size_t failures = 0;
      for (const SweepRow &row : result.rows)
        if (!row.ok()) {
          ++failures;
          err << "point (" << row.point.n_b << ", " << row.point.n_c << ") failed: " << row.status << '\n';
        }
      if (spec.mode == SweepMode::RatioScan && failures == 0) {
        const UniformityReport report = uniformity_report(result, sweep_threshold);
        err << "uniformity: max deviation " << format_number(report.max_deviation) << " over "
            << report.points.size() << " ratios, " << report.flagged_count() << " above "
            << format_number(report.threshold) << '\n';
      }
      return (failures > 0 && sweep_strict) ? kExitNumeric : kExitOk;
    }

    if (selfcheck->parsed()) {
      if (check_delta && *check_delta != 0.0)
        check.deltas.push_back(*check_delta);
      if (check.max_spins < 2 || check.max_spins > 12)
        throw DomainError("--max-spins must lie in 2..12");
      const SelfcheckReport report = run_selfcheck(check);
      out << "configs checked: " << report.configs << '\n'
          << "max population deviation: " << format_number(report.max_population_gap) << '\n'
          << "max subspace leakage: " << format_number(report.max_leakage) << '\n'
          << "max reduced-state coherence: " << format_number(report.max_off_diagonal) << '\n'
          << "max closed-form deviation: " << format_number(report.max_analytic_gap) << '\n'
          << (report.passed ? "PASS" : "FAIL") << '\n';
      return report.passed ? kExitOk : kExitNumeric;
    }
  } catch (const DomainError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

} // namespace csb::cli
