// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#include "specboltz/report_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace specboltz {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string canonical_config(const ScenarioConfig& c) {
  std::ostringstream os;
  os << c.name << '|' << fmt_double(c.b) << '|' << fmt_double(c.R) << '|'
     << fmt_double(c.upsilon_target) << '|' << fmt_double(c.M) << '|'
     << fmt_double(c.t_final) << '|' << c.n_modes << '|' << fmt_double(c.g_p)
     << '|' << fmt_double(c.ode_rel_tol) << '|' << fmt_double(c.ode_abs_tol)
     << '|' << fmt_double(c.quad_rel_tol) << '|' << fmt_double(c.quad_abs_tol)
     << '|' << fmt_double(c.switch_threshold_factor) << '|'
     << fmt_double(c.refresh_delta_upsilon) << '|' << c.sample_count;
  return os.str();
}

}  // namespace

std::string config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canonical_config(cfg)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("scenario file " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario file must hold a JSON object");

  ScenarioConfig cfg;
  cfg.name = path.stem().string();
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "name") cfg.name = value.get<std::string>();
      else if (key == "b") cfg.b = value.get<double>();
      else if (key == "R") cfg.R = value.get<double>();
      else if (key == "upsilon_target") cfg.upsilon_target = value.get<double>();
      else if (key == "M") cfg.M = value.get<double>();
      else if (key == "t_final") cfg.t_final = value.get<double>();
      else if (key == "n_modes") cfg.n_modes = value.get<int>();
      else if (key == "g_p") cfg.g_p = value.get<double>();
      else if (key == "ode_rel_tol") cfg.ode_rel_tol = value.get<double>();
      else if (key == "ode_abs_tol") cfg.ode_abs_tol = value.get<double>();
      else if (key == "quad_rel_tol") cfg.quad_rel_tol = value.get<double>();
      else if (key == "quad_abs_tol") cfg.quad_abs_tol = value.get<double>();
      else if (key == "switch_threshold_factor")
        cfg.switch_threshold_factor = value.get<double>();
      else if (key == "refresh_delta_upsilon")
        cfg.refresh_delta_upsilon = value.get<double>();
      else if (key == "sample_count") cfg.sample_count = value.get<int>();
      else
        throw ConfigError("scenario file " + path.string() +
                          ": unknown key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("scenario key '" + key + "': " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

std::string scenario_to_json(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["b"] = c.b;
  j["R"] = c.R;
  j["upsilon_target"] = c.upsilon_target;
  j["M"] = c.M;
  j["t_final"] = c.t_final;
  j["n_modes"] = c.n_modes;
  j["g_p"] = c.g_p;
  j["ode_rel_tol"] = c.ode_rel_tol;
  j["ode_abs_tol"] = c.ode_abs_tol;
  j["quad_rel_tol"] = c.quad_rel_tol;
  j["quad_abs_tol"] = c.quad_abs_tol;
  j["switch_threshold_factor"] = c.switch_threshold_factor;
  j["refresh_delta_upsilon"] = c.refresh_delta_upsilon;
  j["sample_count"] = c.sample_count;
  return j.dump(2) + "\n";
}

std::string runs_csv_header() {
  return "id,method,scenario,n_modes,R,upsilon_target,M,b,t_final,"
         "max_rel_n_err,max_rel_rho_err,max_l1_err,final_l1_err,"
         "mode_coeff_err,failed,diagnostic,config_hash\n";
}

std::string runs_csv_row(const RunResult& r) {
  std::ostringstream os;
  os << r.id << ',' << method_name(r.method) << ',' << r.cfg.name << ','
     << r.n_modes << ',' << fmt_double(r.cfg.R) << ','
     << fmt_double(r.cfg.upsilon_target) << ',' << fmt_double(r.cfg.M) << ','
     << fmt_double(r.cfg.b) << ',' << fmt_double(r.cfg.t_final) << ','
     << fmt_double(r.report.max_rel_n_err) << ','
     << fmt_double(r.report.max_rel_rho_err) << ','
     << fmt_double(r.report.max_l1_err) << ','
     << fmt_double(r.report.final_l1_err) << ',';
  for (std::size_t k = 0; k < r.report.mode_coeff_err.size(); ++k)
    os << (k ? ";" : "") << fmt_double(r.report.mode_coeff_err[k]);
  os << ',' << (r.report.failed ? 1 : 0) << ',' << r.report.diagnostic << ','
     << config_hash(r.cfg) << '\n';
  return os.str();
}

std::string trajectory_csv(const RunResult& r) {
  std::ostringstream os;
  if (r.noneq) {
    os << "t,T,upsilon,eps";
    for (int k = 2; k < r.n_modes; ++k) os << ",b" << k;
    os << ",n,rho,K\n";
    for (const auto& s : r.noneq->samples) {
      os << fmt_double(s.t) << ',' << fmt_double(s.T) << ','
         << fmt_double(s.upsilon) << ',' << fmt_double(s.eps);
      for (double b : s.b) os << ',' << fmt_double(b);
      os << ',' << fmt_double(s.n) << ',' << fmt_double(s.rho) << ','
         << fmt_double(s.K) << '\n';
    }
  } else if (r.chemeq) {
    os << "t";
    for (int k = 0; k < r.n_modes; ++k) os << ",d" << k;
    os << ",n,rho\n";
    for (const auto& s : r.chemeq->samples) {
      os << fmt_double(s.t);
      for (double d : s.d) os << ',' << fmt_double(d);
      os << ',' << fmt_double(s.n) << ',' << fmt_double(s.rho) << '\n';
    }
  }
  return os.str();
}

std::string series_csv(const RunResult& r) {
  std::ostringstream os;
  os << "t,l1_err,rel_n_err,rel_rho_err";
  for (std::size_t k = 0; k < r.series.mode_abs_err.size(); ++k)
    os << ",mode_err_" << k;
  os << '\n';
  for (std::size_t i = 0; i < r.series.t.size(); ++i) {
    os << fmt_double(r.series.t[i]) << ',' << fmt_double(r.series.l1[i]) << ','
       << fmt_double(r.series.rel_n[i]) << ',' << fmt_double(r.series.rel_rho[i]);
    for (const auto& mode : r.series.mode_abs_err)
      os << ',' << fmt_double(mode[i]);
    os << '\n';
  }
  return os.str();
}

std::string basis_study_csv(const std::vector<BasisStudyEntry>& entries) {
  std::ostringstream os;
  os << "upsilon,R,basis,N,error_N,divergent\n";
  for (const auto& e : entries)
    for (int which = 0; which < 2; ++which) {
      const auto& errs = which == 0 ? e.err_chemeq : e.err_laguerre;
      const char* name = which == 0 ? "chemeq" : "laguerre";
      for (std::size_t i = 0; i < errs.size(); ++i)
        os << fmt_double(e.upsilon) << ',' << fmt_double(e.R) << ',' << name
           << ',' << (i + 1) << ',' << fmt_double(errs[i]) << ','
           << (e.divergent ? 1 : 0) << '\n';
    }
  return os.str();
}

std::string basis_coeffs_csv(const std::vector<BasisStudyEntry>& entries) {
  std::ostringstream os;
  os << "upsilon,R,basis,k,abs_coeff_normalized\n";
  for (const auto& e : entries)
    for (int which = 0; which < 2; ++which) {
      const auto& cs = which == 0 ? e.coeff_chemeq : e.coeff_laguerre;
      const char* name = which == 0 ? "chemeq" : "laguerre";
      for (std::size_t k = 0; k < cs.size(); ++k)
        os << fmt_double(e.upsilon) << ',' << fmt_double(e.R) << ',' << name
           << ',' << k << ',' << fmt_double(cs[k]) << '\n';
    }
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

void write_results(const std::filesystem::path& out_dir,
                   const std::vector<RunResult>& results) {
  std::filesystem::create_directories(out_dir);
  std::string runs = runs_csv_header();
  for (const auto& r : results) {
    runs += runs_csv_row(r);
    if (r.report.failed) continue;
    write_file(out_dir / ("trajectory_" + r.id + ".csv"), trajectory_csv(r));
    write_file(out_dir / ("series_" + r.id + ".csv"), series_csv(r));
  }
  write_file(out_dir / "runs.csv", runs);
}

}  // namespace specboltz
