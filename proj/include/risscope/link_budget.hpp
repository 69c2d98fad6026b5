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
#include "risscope/scattering.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace risscope
{

// Radar -> RIS -> target -> RIS -> radar budget. Logarithmic fields are in dB units.
struct LinkBudget
{
    double p_tx_dbm = 0.0;
    double g_a_dbi = 0.0;       // radar antenna gain towards the RIS
    double sigma_f_dbsm = 0.0;  // RIS, radar -> target
    double sigma_b_dbsm = 0.0;  // RIS, target -> radar
    double sigma_t_dbsm = 0.0;  // target
    double wavelength = 0.0;    // m
    double r1 = 1.0;            // radar - RIS, m
    double r2 = 1.0;            // RIS - target, m
    double n0_dbm = 0.0;        // mean noise floor

    // Throws ConfigError("link_budget.<field>") for non-positive distances or wavelength.
    void validate() const;
    bool operator==(const LinkBudget &) const = default;
};

// P + 2 G + sf + st + sb + 20 log lambda - 10 log (4 pi)^5 - 40 log r1 - 40 log r2 - N0
double snr_db(const LinkBudget &b);

// Gaussian main lobe G = peak - 12 (angle / beamwidth)^2, so the half-beamwidth is 3 dB down,
// clamped from below at peak + sidelobe_floor_db.
double horn_gain(double angle_off_boresight_deg, double beamwidth_deg, double sidelobe_floor_db, double peak_dbi);

struct HornAntenna
{
    double peak_dbi = 17.0;
    double beamwidth_deg = 28.9;
    double sidelobe_floor_db = -25.6;

    double gain(double angle_off_boresight_deg) const
    {
        return horn_gain(angle_off_boresight_deg, beamwidth_deg, sidelobe_floor_db, peak_dbi);
    }
    bool operator==(const HornAntenna &) const = default;
};

// Point in the yz plane; the RIS lies in z = const and faces +z.
struct ScenePoint
{
    double y = 0.0;
    double z = 0.0;
    bool operator==(const ScenePoint &) const = default;
};

struct SceneTarget
{
    std::string label; // set name, e.g. "A"
    ScenePoint position;
    bool operator==(const SceneTarget &) const = default;
};

// Desk-scale detection scene. The radar looks along -z.
struct Scene
{
    ScenePoint radar{0.3, 1.0};
    ScenePoint ris_center{0.3, 0.0};
    HornAntenna horn;
    std::vector<SceneTarget> targets;
    std::map<std::string, double> schedule_deg; // set -> desired signed theta in the phi = 90 deg cut
    double p_tx_dbm = 44.0;
    double n0_dbm = 0.0;
    double sigma_t_dbsm = 0.0;

    // 50 targets on y = 0.7 m, z = 0.25 + 0.03 k m; sets A/B/C = 15/17/18 from the RIS plane
    // outwards, scheduled at 45/30/15 degrees.
    static Scene default_scene();

    // Throws ConfigError for targets behind the RIS, unscheduled sets or bad horn parameters.
    void validate() const;
    bool operator==(const Scene &) const = default;
};

struct TargetResult
{
    std::size_t index = 0;
    std::string label;
    ScenePoint position;
    double angle_deg = 0.0; // signed, seen from the RIS centre
    double r1 = 0.0;
    double r2 = 0.0;
    double gain_dbi = 0.0;
    double sigma_f_dbsm = kDbFloor;
    double sigma_b_dbsm = kDbFloor;
    double snr_db = kDbFloor;
    bool detected = false;
};

struct DetectionReport
{
    bool ris_enabled = true;
    double threshold_db = 1.0;
    std::vector<TargetResult> targets;      // scene order
    std::map<std::string, std::size_t> counts; // per set, every scheduled set present
    std::size_t total = 0;
};

// (set label, incidence from the radar, observation towards the target) -> (sigma_f, sigma_b)
using RcsLookup = std::function<std::pair<double, double>(const std::string &label, const Direction &radar_dir,
                                                          const Direction &target_dir)>;

// Evaluates every target with RCS values supplied by `lookup`.
DetectionReport detection_scan(const Scene &scene, const RcsLookup &lookup, double wavelength, double threshold_db);

// RIS of `geom` with one quantized profile per scheduled set (bits = 0 keeps it continuous).
DetectionReport detection_scan(const Scene &scene, const RisGeometry &geom, int bits, double threshold_db,
                               CurrentModel model = CurrentModel::paper);

// Radar alone: P + 2 G(alpha) + st + 20 log lambda - 30 log 4 pi - 40 log R - N0.
DetectionReport detection_scan_without_ris(const Scene &scene, double wavelength, double threshold_db);

} // namespace risscope
