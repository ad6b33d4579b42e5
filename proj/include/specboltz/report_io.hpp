// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "specboltz/harness.hpp"

namespace specboltz {

// Deterministic shortest round-trip formatting; all result files use it so
// repeated runs produce identical bytes.
std::string fmt_double(double v);

// FNV-1a hash of the canonical scenario serialization; embedded in plots and
// runs.csv so outputs can be traced back to their configuration.
std::string config_hash(const ScenarioConfig& cfg);

// Strict JSON scenario files: every key must belong to the documented schema,
// unknown keys are rejected.
ScenarioConfig load_scenario_file(const std::filesystem::path& path);
std::string scenario_to_json(const ScenarioConfig& cfg);

std::string runs_csv_header();
std::string runs_csv_row(const RunResult& r);
std::string trajectory_csv(const RunResult& r);
std::string series_csv(const RunResult& r);

std::string basis_study_csv(const std::vector<BasisStudyEntry>& entries);
std::string basis_coeffs_csv(const std::vector<BasisStudyEntry>& entries);

void write_file(const std::filesystem::path& path, const std::string& content);

// Writes runs.csv, trajectory_<id>.csv and series_<id>.csv under out_dir.
void write_results(const std::filesystem::path& out_dir,
                   const std::vector<RunResult>& results);

}  // namespace specboltz
