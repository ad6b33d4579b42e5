// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#include <omp.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "specboltz/report_io.hpp"
#include "specboltz/svg.hpp"

namespace fs = std::filesystem;
using namespace specboltz;

namespace {

ScenarioConfig resolve_scenario(const std::string& spec) {
  if (fs::exists(spec)) return load_scenario_file(spec);
  return scenario_preset(spec);
}

// "a..b" (inclusive range), "n", or "a,b,c"
std::vector<int> parse_modes(const std::string& spec) {
  std::vector<int> out;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const int a = std::stoi(spec.substr(0, dots));
    const int b = std::stoi(spec.substr(dots + 2));
    if (b < a) throw ConfigError("--modes range is empty: " + spec);
    for (int n = a; n <= b; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw ConfigError("--modes parsed to nothing: " + spec);
  return out;
}

std::vector<double> parse_doubles(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

void plot_sweep(const fs::path& out_dir, const std::vector<RunResult>& results) {
  // group by (scenario, method)
  std::map<std::pair<std::string, std::string>, std::vector<const RunResult*>> groups;
  for (const auto& r : results)
    if (!r.report.failed)
      groups[{r.cfg.name, method_name(r.method)}].push_back(&r);

  for (const auto& [key, runs] : groups) {
    const auto& [scenario, method] = key;
    const std::string hash = "config-hash: " + config_hash(runs.front()->cfg);

    PlotSeries n_err{"max rel n err", {}, {}}, rho_err{"max rel rho err", {}, {}};
    PlotSeries l1_max{"max L1 err", {}, {}}, l1_fin{"final L1 err", {}, {}};
    for (const auto* r : runs) {
      n_err.x.push_back(r->n_modes);
      n_err.y.push_back(r->report.max_rel_n_err);
      rho_err.x.push_back(r->n_modes);
      rho_err.y.push_back(r->report.max_rel_rho_err);
      l1_max.x.push_back(r->n_modes);
      l1_max.y.push_back(r->report.max_l1_err);
      l1_fin.x.push_back(r->n_modes);
      l1_fin.y.push_back(r->report.final_l1_err);
    }
    PlotSpec spec;
    spec.title = scenario + " (" + method + "): error vs modes";
    spec.x_label = "modes N";
    spec.y_label = "relative error";
    spec.metadata = hash;
    std::vector<PlotSeries> s1{n_err, rho_err, l1_max, l1_fin};
    write_file(out_dir / ("plot_err_vs_N_" + scenario + "_" + method + ".svg"),
               render_svg_plot(spec, s1));

    std::vector<PlotSeries> s2;
    for (const auto* r : runs) {
      PlotSeries ps;
      ps.label = "N=" + std::to_string(r->n_modes);
      ps.x = r->series.t;
      ps.y = r->series.l1;
      s2.push_back(std::move(ps));
    }
    PlotSpec spec2;
    spec2.title = scenario + " (" + method + "): L1 error vs time";
    spec2.x_label = "t";
    spec2.y_label = "relative L1 error";
    spec2.metadata = hash;
    write_file(out_dir / ("plot_l1_vs_time_" + scenario + "_" + method + ".svg"),
               render_svg_plot(spec2, s2));
  }
}

void plot_basis_study(const fs::path& out_dir,
                      const std::vector<BasisStudyEntry>& entries) {
  for (const auto& e : entries) {
    std::ostringstream tag;
    tag << "u" << e.upsilon << "_R" << e.R;
    PlotSeries ce{"chem-eq basis", {}, {}}, lg{"Laguerre basis", {}, {}};
    for (std::size_t i = 0; i < e.err_chemeq.size(); ++i) {
      ce.x.push_back(double(i + 1));
      ce.y.push_back(e.err_chemeq[i]);
      lg.x.push_back(double(i + 1));
      lg.y.push_back(e.err_laguerre[i]);
    }
    PlotSpec spec;
    spec.title = "expansion error, Ups=" + fmt_double(e.upsilon) +
                 ", R=" + fmt_double(e.R) + (e.divergent ? " (non-convergent)" : "");
    spec.x_label = "modes N";
    spec.y_label = "relative L1 error";
    spec.metadata = "basis-study";
    std::vector<PlotSeries> ss{ce, lg};
    write_file(out_dir / ("plot_basis_err_" + tag.str() + ".svg"),
               render_svg_plot(spec, ss));

    if (!e.coeff_chemeq.empty()) {
      PlotSeries cc{"chem-eq basis", {}, {}}, lc{"Laguerre basis", {}, {}};
      for (std::size_t k = 0; k < e.coeff_chemeq.size(); ++k) {
        cc.x.push_back(double(k));
        cc.y.push_back(e.coeff_chemeq[k]);
        lc.x.push_back(double(k));
        lc.y.push_back(e.coeff_laguerre[k]);
      }
      PlotSpec spec2;
      spec2.title = "normalized mode coefficients, Ups=" + fmt_double(e.upsilon) +
                    ", R=" + fmt_double(e.R);
      spec2.x_label = "mode k";
      spec2.y_label = "|c_k| / ||f||";
      spec2.metadata = "basis-study";
      std::vector<PlotSeries> ss2{cc, lc};
      write_file(out_dir / ("plot_basis_coeff_" + tag.str() + ".svg"),
                 render_svg_plot(spec2, ss2));
    }
  }
}

// minimal CSV reader for our own files (no quoting in the numeric columns)
std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_plot(const fs::path& in_dir, const fs::path& out_dir) {
  const auto runs = read_csv(in_dir / "runs.csv");
  if (runs.size() < 2) throw ConfigError("runs.csv has no data rows");
  const auto& header = runs.front();
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw ConfigError("runs.csv lacks column " + name);
  };
  const std::size_t c_id = col("id"), c_method = col("method"),
                    c_scenario = col("scenario"), c_n = col("n_modes"),
                    c_hash = col("config_hash"), c_maxl1 = col("max_l1_err"),
                    c_finl1 = col("final_l1_err"), c_nerr = col("max_rel_n_err"),
                    c_rerr = col("max_rel_rho_err"), c_failed = col("failed");

  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> groups;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i][c_failed] == "0")
      groups[{runs[i][c_scenario], runs[i][c_method]}].push_back(i);

  fs::create_directories(out_dir);
  for (const auto& [key, idx] : groups) {
    const auto& [scenario, method] = key;
    PlotSeries n_err{"max rel n err", {}, {}}, rho_err{"max rel rho err", {}, {}};
    PlotSeries l1_max{"max L1 err", {}, {}}, l1_fin{"final L1 err", {}, {}};
    std::vector<PlotSeries> times;
    for (std::size_t i : idx) {
      const double n = std::stod(runs[i][c_n]);
      n_err.x.push_back(n);
      n_err.y.push_back(std::stod(runs[i][c_nerr]));
      rho_err.x.push_back(n);
      rho_err.y.push_back(std::stod(runs[i][c_rerr]));
      l1_max.x.push_back(n);
      l1_max.y.push_back(std::stod(runs[i][c_maxl1]));
      l1_fin.x.push_back(n);
      l1_fin.y.push_back(std::stod(runs[i][c_finl1]));

      const auto series = read_csv(in_dir / ("series_" + runs[i][c_id] + ".csv"));
      PlotSeries ps;
      ps.label = "N=" + runs[i][c_n];
      for (std::size_t j = 1; j < series.size(); ++j) {
        ps.x.push_back(std::stod(series[j][0]));
        ps.y.push_back(std::stod(series[j][1]));
      }
      times.push_back(std::move(ps));
    }
    const std::string hash = "config-hash: " + runs[idx.front()][c_hash];
    PlotSpec spec;
    spec.title = scenario + " (" + method + "): error vs modes";
    spec.x_label = "modes N";
    spec.y_label = "relative error";
    spec.metadata = hash;
    std::vector<PlotSeries> s1{n_err, rho_err, l1_max, l1_fin};
    write_file(out_dir / ("plot_err_vs_N_" + scenario + "_" + method + ".svg"),
               render_svg_plot(spec, s1));
    PlotSpec spec2;
    spec2.title = scenario + " (" + method + "): L1 error vs time";
    spec2.x_label = "t";
    spec2.y_label = "relative L1 error";
    spec2.metadata = hash;
    write_file(out_dir / ("plot_l1_vs_time_" + scenario + "_" + method + ".svg"),
               render_svg_plot(spec2, times));
  }
  std::cout << "re-rendered plots for " << groups.size() << " run group(s) into "
            << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral solvers for the homogeneous relativistic Boltzmann equation"};
  app.require_subcommand(1);

  std::string scenario = "reheating-r1.1";
  std::string method_str = "noneq";
  std::string modes_str = "2";
  std::string out_dir = "out";
  std::string plots = "on";
  double rel_tol = -1.0, abs_tol = -1.0;
  int threads = 0;
  bool serial = false;

  auto add_common = [&](CLI::App* cmd, bool with_method) {
    cmd->add_option("--scenario", scenario,
                    "preset name or path to a JSON scenario file");
    if (with_method)
      cmd->add_option("--method", method_str, "chemeq or noneq")
          ->check(CLI::IsMember({"chemeq", "noneq"}));
    cmd->add_option("--modes", modes_str, "mode count: N, a..b, or a,b,c");
    cmd->add_option("--rel-tol", rel_tol, "ODE relative tolerance override");
    cmd->add_option("--abs-tol", abs_tol, "ODE absolute tolerance override");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--plots", plots, "on or off")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--threads", threads, "OpenMP thread cap (0 = default)");
    cmd->add_flag("--serial", serial, "run the serial reference kernels");
  };

  auto* solve = app.add_subcommand("solve", "single run with error report");
  add_common(solve, true);
  auto* sweep_cmd = app.add_subcommand("sweep", "grid over mode counts");
  add_common(sweep_cmd, true);

  auto* study = app.add_subcommand("basis-study", "static basis comparison");
  std::string ups_str = "0.5,0.9,1.0,1.5";
  std::string rr_str = "1.0,1.1,1.5,1.85,2.0";
  int n_max = 20;
  study->add_option("--upsilons", ups_str, "comma-separated fugacities");
  study->add_option("--reheats", rr_str, "comma-separated reheating ratios");
  study->add_option("--n-max", n_max, "highest mode count");
  study->add_option("--out", out_dir, "output directory");
  study->add_option("--plots", plots, "on or off")
      ->check(CLI::IsMember({"on", "off"}));
  study->add_option("--threads", threads, "OpenMP thread cap (0 = default)");
  study->add_flag("--serial", serial, "run the serial reference kernels");

  auto* plot = app.add_subcommand("plot", "re-render SVG plots from CSV results");
  std::string in_dir = "out";
  plot->add_option("--in", in_dir, "directory holding runs.csv and series files");
  plot->add_option("--out", out_dir, "output directory (default: same as --in)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (threads > 0) omp_set_num_threads(threads);
    const Execution exec = serial ? Execution::Serial : Execution::Parallel;

    if (app.got_subcommand(plot))
      return cmd_plot(in_dir, plot->count("--out") ? fs::path(out_dir) : fs::path(in_dir));

    if (app.got_subcommand(study)) {
      const auto ups = parse_doubles(ups_str);
      const auto rr = parse_doubles(rr_str);
      const auto entries = basis_study(ups, rr, n_max, exec);
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / "basis_study.csv", basis_study_csv(entries));
      write_file(fs::path(out_dir) / "basis_coeffs.csv", basis_coeffs_csv(entries));
      if (plots == "on") plot_basis_study(out_dir, entries);
      std::cout << "basis study: " << entries.size() << " (Ups, R) points into "
                << out_dir << "\n";
      return 0;
    }

    ScenarioConfig cfg = resolve_scenario(scenario);
    if (rel_tol > 0.0) cfg.ode_rel_tol = rel_tol;
    if (abs_tol > 0.0) cfg.ode_abs_tol = abs_tol;
    const Method method = method_str == "chemeq" ? Method::ChemEq : Method::NonEq;
    const auto modes = parse_modes(modes_str);

    std::vector<RunResult> results;
    if (app.got_subcommand(solve)) {
      if (modes.size() != 1)
        throw ConfigError("solve expects a single --modes value");
      results.push_back(run_scenario(cfg, method, modes[0], exec));
    } else {
      results = sweep(cfg, method, modes, exec);
    }

    write_results(out_dir, results);
    write_file(fs::path(out_dir) / ("scenario_" + cfg.name + ".json"),
               scenario_to_json(cfg));
    if (plots == "on") plot_sweep(out_dir, results);

    for (const auto& r : results) {
      if (r.report.failed) {
        std::cout << r.id << ": FAILED -- " << r.report.diagnostic << "\n";
        continue;
      }
      std::cout << r.id << ": max_rel_n_err=" << fmt_double(r.report.max_rel_n_err)
                << " max_rel_rho_err=" << fmt_double(r.report.max_rel_rho_err)
                << " max_l1_err=" << fmt_double(r.report.max_l1_err)
                << " final_l1_err=" << fmt_double(r.report.final_l1_err) << "\n";
    }
    std::cout << "results written to " << out_dir << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
