// SPDX-License-Identifier: Apache-2.0
//
// risscope - far-field scattering and RCS simulator for quantized reconfigurable surfaces
// Copyright (C) 2026 The risscope authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "risscope/link_budget.hpp"
#include "risscope/microdoppler.hpp"
#include "risscope/rcs.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace risscope::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_runtime_error = 1,
    exit_config_error = 2,
    exit_mismatch = 3
};

// All angles in degrees. Negative thetas follow the signed-cut convention (phi + 180).
struct GeometryBlock
{
    std::size_t m_count = 10; // along x
    std::size_t n_count = 16; // along y
    double pitch_x = 0.016;
    double pitch_y = 0.016;
    double frequency = 5.5e9;

    RisGeometry build() const;
    bool operator==(const GeometryBlock &) const = default;
};

struct SteeringBlock
{
    double theta_i_deg = 0.0;
    double phi_i_deg = 90.0;
    double theta_d_deg = 45.0;
    double phi_d_deg = 90.0;
    int bits = 1; // 0 = continuous

    SteeringConfig build() const;
    bool operator==(const SteeringBlock &) const = default;
};

struct SweepBlock
{
    double phi_plane_deg = 90.0;
    double theta_min_deg = -90.0;
    double theta_max_deg = 90.0;
    double step_deg = 0.05;

    CutSpec build() const;
    bool operator==(const SweepBlock &) const = default;
};

struct OutputBlock
{
    std::string directory = ".";
    bool csv = true;
    bool json = true;
    bool operator==(const OutputBlock &) const = default;
};

// Missing RCS values are taken from the configured surface (forward and backward peaks);
// a missing wavelength from the geometry.
struct LinkBudgetBlock
{
    double p_tx_dbm = 0.0;
    double g_a_dbi = 12.0;
    std::optional<double> sigma_f_dbsm;
    std::optional<double> sigma_b_dbsm;
    double sigma_t_dbsm = 1.0;
    std::optional<double> wavelength;
    double r1 = 3.0;
    double r2 = 3.0;
    double n0_dbm = -105.0;
    bool operator==(const LinkBudgetBlock &) const = default;
};

struct SceneBlock
{
    Scene scene = Scene::default_scene();
    double threshold_db = 1.0;
    bool operator==(const SceneBlock &) const = default;
};

struct TrajectoryBlock
{
    std::string kind = "pendulum"; // or "linear"
    double sample_rate_hz = 1000.0;
    double duration_s = 4.0;
    double rcs_dbsm = 0.0;
    // pendulum
    ScenePoint rest{0.8, 0.5};
    double arm_m = 0.6;
    double amplitude_deg = 20.0;
    double omega_rad_s = 5.0;
    // linear
    ScenePoint start{0.8, 0.5};
    ScenePoint velocity{0.0, -0.25};
    // analysis
    double window_s = 0.1;
    double hop_s = 0.025;
    bool dc_filter = true;
    double clutter_db = 30.0;

    TargetTrajectory build(const ScenePoint &ris_center) const;
    bool operator==(const TrajectoryBlock &) const = default;
};

struct RunConfig
{
    std::string model = "paper";
    GeometryBlock geometry;
    SteeringBlock steering;
    SweepBlock sweep;
    OutputBlock output;
    std::optional<LinkBudgetBlock> link_budget;
    std::optional<SceneBlock> scene;
    std::optional<TrajectoryBlock> trajectory;

    // Throws ConfigError with the dotted path of the first invalid entry.
    void validate() const;
    bool operator==(const RunConfig &) const = default;
};

// JSON text <-> config. Parsing validates and throws ConfigError on bad or unknown entries.
RunConfig parse_config(const std::string &text);
RunConfig load_config(const std::string &path);
std::string serialize_config(const RunConfig &config);

// Command-line overrides.
struct RunOptions
{
    std::optional<std::string> out_dir;
    std::optional<std::string> model;
    std::optional<double> step_deg;
};

// Applies overrides and validates. Throws ConfigError.
RunConfig resolve(RunConfig config, const RunOptions &options);

const std::vector<std::string> &subcommands();  // pattern, metrics, snr, detect, spectrogram
const std::vector<std::string> &table_ids();    // II, III, IV, V, VI, VII, fig3

// Runs one subcommand and writes its artifacts. Returns an ExitCode; never throws.
int run(const std::string &subcommand, const RunConfig &config, const RunOptions &options, std::ostream &out,
        std::ostream &err);

// Recomputes one reference table and compares it cell by cell.
int reproduce(const std::string &table_id, const RunConfig &config, const RunOptions &options, std::ostream &out,
              std::ostream &err);

} // namespace risscope::cli
