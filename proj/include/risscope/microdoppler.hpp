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

#include "risscope/core.hpp"
#include "risscope/link_budget.hpp"
#include "risscope/phase_profile.hpp"
#include "risscope/scattering.hpp"

#include <complex>
#include <vector>

namespace risscope
{

// Sampled target path in the yz scene plane.
struct TargetTrajectory
{
    double sample_rate_hz = 1000.0;
    std::vector<ScenePoint> positions; // one per sample, t_k = k / sample_rate_hz
    double rcs_dbsm = 0.0;

    double duration_s() const { return static_cast<double>(positions.size()) / sample_rate_hz; }
    // Throws ConfigError for a non-positive rate, an empty path or non-finite positions.
    void validate() const;
};

// Straight-line motion from `start` with constant velocity (m/s).
TargetTrajectory linear_trajectory(const ScenePoint &start, const ScenePoint &velocity, double duration_s,
                                   double sample_rate_hz, double rcs_dbsm = 0.0);

// Reflector swung on an arm of length `arm_m` with angle amplitude `amplitude_rad` at angular
// rate `omega_rad_s`. The arc is taken along the line from `ris_center` through `rest`, so the
// range to the RIS is |rest - ris| + L a0 sin(w t) and the peak radial speed is L a0 w.
TargetTrajectory pendulum_trajectory(const ScenePoint &ris_center, const ScenePoint &rest, double arm_m,
                                     double amplitude_rad, double omega_rad_s, double duration_s,
                                     double sample_rate_hz, double rcs_dbsm = 0.0);

struct EchoConfig
{
    ScenePoint radar{0.3, 1.0};
    ScenePoint ris_center{0.3, 0.0};
    double p_tx_dbm = 44.0;
    double g_a_dbi = 17.0;
    double n0_dbm = 0.0;
    double clutter_db = 30.0; // static return power relative to the noise floor
    CurrentModel model = CurrentModel::paper;
};

// s(t) = a(t) exp(-j 2 pi 2 (r1 + r2(t)) / lambda) + DC clutter, normalized so |a|^2 is the
// instantaneous SNR from the link budget with the RIS pattern towards the target.
// Throws ConfigError for targets behind the RIS or a rate below twice the peak Doppler.
std::vector<std::complex<double>> synthesize_echo(const TargetTrajectory &traj, const RisGeometry &geom,
                                                  const ReflectionProfile &profile, const EchoConfig &echo);

// -(2 / lambda) d r2 / dt at every sample (central differences), positive when approaching.
std::vector<double> instantaneous_doppler(const TargetTrajectory &traj, const ScenePoint &ris_center,
                                          double wavelength);

struct Spectrogram
{
    double sample_rate_hz = 0.0;
    double window_s = 0.1;
    double hop_s = 0.025;
    std::size_t window_samples = 0;
    std::size_t hop_samples = 0;
    bool dc_filtered = false;
    std::vector<double> times;       // frame centres, s
    std::vector<double> frequencies; // two-sided, ascending, Hz
    Grid<double> power;              // frames x bins, |X|^2 with unitary scaling
    Grid<double> magnitudes_db;      // 10 log10(power), floored

    // Frequency of the strongest bin of one frame.
    double peak_frequency(std::size_t frame) const;
};

// Hann-windowed STFT with 1/sqrt(N) scaling, so each frame's bin powers sum to the windowed
// frame energy. dc_filter removes the signal mean and nulls the 0 Hz bin.
Spectrogram stft_spectrogram(const std::vector<std::complex<double>> &s, double sample_rate_hz,
                             double window_s = 0.1, double hop_s = 0.025, bool dc_filter = false);

// Symmetric Hann taper of length n.
std::vector<double> hann_window(std::size_t n);

} // namespace risscope
