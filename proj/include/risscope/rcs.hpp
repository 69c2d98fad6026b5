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
#include "risscope/phase_profile.hpp"
#include "risscope/scattering.hpp"

#include <vector>

namespace risscope
{

struct Peak
{
    double theta_deg = 0.0;
    double value_dbsm = kDbFloor;
};

// Bistatic RCS sweep over one signed-theta cut.
struct PatternCut
{
    double phi_plane_deg = 90.0;
    std::vector<double> thetas_deg; // strictly increasing
    std::vector<double> rcs_dbsm;
    Peak peak;                      // global maximum after quadratic refinement
    double design_theta_deg = 0.0;  // signed angle the lobe was designed for
};

// 10 log10(4 pi |r E_s|^2 / E0^2), floored at kDbFloor.
double rcs_from_field(const FieldSample &sample, const PlaneWave &incident);

// Single bistatic RCS value: illuminate from `incident`, observe towards `obs`.
double bistatic_rcs(const RisGeometry &geom, const ReflectionProfile &profile, const Direction &incident,
                    const Direction &obs, CurrentModel model = CurrentModel::paper);

// Illuminated from steer.incident; design angle is the desired direction.
PatternCut forward_pattern(const RisGeometry &geom, const SteeringConfig &steer, const ReflectionProfile &profile,
                           const CutSpec &cut, CurrentModel model = CurrentModel::paper);

// Same profile illuminated from steer.desired; design angle is the incident direction.
PatternCut backward_pattern(const RisGeometry &geom, const SteeringConfig &steer, const ReflectionProfile &profile,
                            const CutSpec &cut, CurrentModel model = CurrentModel::paper);

// Discrete maximum of values[lo..hi] (inclusive) refined by a 3-point parabola whose
// neighbours are taken from inside the same index range.
Peak refine_peak(const std::vector<double> &thetas, const std::vector<double> &values, std::size_t lo,
                 std::size_t hi);

// Refined maximum restricted to the half-plane with the sign of `theta_deg` (the whole cut
// when it is zero). Throws std::runtime_error when nothing in that range exceeds the floor.
Peak main_lobe(const PatternCut &cut, double theta_deg);

// |theta_hat - theta_d| for the main lobe in the half-plane of theta_d.
double beam_squint(const PatternCut &cut, double theta_d_deg);

// Linear interpolation of the cut at theta_deg. Throws std::out_of_range outside the cut.
double rcs_at(const PatternCut &cut, double theta_deg);

// Peak-to-specular ratio: main lobe near `peak_theta_deg` minus the RCS at `reference_theta_deg`.
double pslr(const PatternCut &cut, double peak_theta_deg, double reference_theta_deg);

// Forward RCS back towards broadside for normal illumination.
double monostatic_rcs(const RisGeometry &geom, const ReflectionProfile &profile,
                      CurrentModel model = CurrentModel::paper);

struct RcsMetrics
{
    double sigma_f_peak = kDbFloor;   // forward main lobe, dBsm
    double sigma_b_peak = kDbFloor;   // backward main lobe, dBsm
    double beam_squint = 0.0;         // degrees
    double pslr = 0.0;                // forward peak minus RCS at theta_s = theta_i, dB
    double pslr_backward = 0.0;       // backward peak minus RCS at the mirror of theta_d, dB
    double monostatic = kDbFloor;     // forward RCS at theta_s = 0 with the configured incidence
    double realized_theta_deg = 0.0;  // forward main-lobe location
};

// Both steering directions must lie in the cut plane.
RcsMetrics compute_metrics(const RisGeometry &geom, const SteeringConfig &steer, const ReflectionProfile &profile,
                           const CutSpec &cut, CurrentModel model = CurrentModel::paper);

} // namespace risscope
