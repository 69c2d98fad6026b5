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

#include "risscope/link_budget.hpp"
#include "risscope/phase_profile.hpp"
#include "risscope/rcs.hpp"

#include <algorithm>

namespace risscope
{

void LinkBudget::validate() const
{
    if (!(wavelength > 0.0) || !std::isfinite(wavelength))
        throw ConfigError("link_budget.wavelength", "must be positive");
    if (!(r1 > 0.0) || !std::isfinite(r1))
        throw ConfigError("link_budget.r1", "must be positive");
    if (!(r2 > 0.0) || !std::isfinite(r2))
        throw ConfigError("link_budget.r2", "must be positive");
}

double snr_db(const LinkBudget &b)
{
    b.validate();
    return b.p_tx_dbm + 2.0 * b.g_a_dbi + b.sigma_f_dbsm + b.sigma_t_dbsm + b.sigma_b_dbsm +
           20.0 * std::log10(b.wavelength) - 50.0 * std::log10(4.0 * kPi) - 40.0 * std::log10(b.r1) -
           40.0 * std::log10(b.r2) - b.n0_dbm;
}

double horn_gain(double angle_off_boresight_deg, double beamwidth_deg, double sidelobe_floor_db, double peak_dbi)
{
    if (!(beamwidth_deg > 0.0))
        throw ConfigError("scene.horn.beamwidth_deg", "must be positive");
    const double x = angle_off_boresight_deg / beamwidth_deg;
    return std::max(peak_dbi - 12.0 * x * x, peak_dbi + sidelobe_floor_db);
}

Scene Scene::default_scene()
{
    Scene s;
    for (int k = 0; k < 50; ++k)
    {
        const char *label = k < 15 ? "A" : (k < 32 ? "B" : "C");
        s.targets.push_back({label, {0.7, 0.25 + 0.03 * k}});
    }
    s.schedule_deg = {{"A", 45.0}, {"B", 30.0}, {"C", 15.0}};
    return s;
}

void Scene::validate() const
{
    if (!(horn.beamwidth_deg > 0.0))
        throw ConfigError("scene.horn.beamwidth_deg", "must be positive");
    if (horn.sidelobe_floor_db > 0.0)
        throw ConfigError("scene.horn.sidelobe_floor_db", "must be <= 0");
    if (!(radar.z > ris_center.z))
        throw ConfigError("scene.radar.z", "radar must be in front of the RIS");
    for (std::size_t i = 0; i < targets.size(); ++i)
    {
        const auto &t = targets[i];
        const std::string path = "scene.targets[" + std::to_string(i) + "]";
        if (!(t.position.z > ris_center.z))
            throw ConfigError(path + ".z", "target is behind the RIS plane");
        if (!schedule_deg.contains(t.label))
            throw ConfigError("scene.schedule." + t.label, "no steering angle for set '" + t.label + "'");
    }
    for (const auto &[label, theta] : schedule_deg)
        if (!(std::fabs(theta) < 90.0))
            throw ConfigError("scene.schedule." + label, "steering angle must be inside (-90, 90) degrees");
}

namespace
{

constexpr double kCutPhi = kPi / 2.0; // the scene plane is the phi = 90 deg cut

double signed_angle_from_ris(const Scene &scene, const ScenePoint &p)
{
    return std::atan2(p.y - scene.ris_center.y, p.z - scene.ris_center.z);
}

double distance(const ScenePoint &a, const ScenePoint &b) { return std::hypot(a.y - b.y, a.z - b.z); }

// Angle between the radar boresight (-z) and the ray from the radar to p.
double off_boresight_deg(const ScenePoint &radar, const ScenePoint &p)
{
    return rad2deg(std::atan2(std::fabs(p.y - radar.y), radar.z - p.z));
}

DetectionReport empty_report(const Scene &scene, bool ris, double threshold_db)
{
    DetectionReport r;
    r.ris_enabled = ris;
    r.threshold_db = threshold_db;
    for (const auto &[label, theta] : scene.schedule_deg)
        r.counts[label] = 0;
    r.targets.resize(scene.targets.size());
    return r;
}

void tally(DetectionReport &r)
{
    for (const auto &t : r.targets)
    {
        if (t.detected)
        {
            ++r.counts[t.label];
            ++r.total;
        }
    }
}

} // namespace

DetectionReport detection_scan(const Scene &scene, const RcsLookup &lookup, double wavelength, double threshold_db)
{
    scene.validate();
    DetectionReport report = empty_report(scene, true, threshold_db);
    const double r1 = distance(scene.radar, scene.ris_center);
    const Direction radar_dir = cut_direction(signed_angle_from_ris(scene, scene.radar), kCutPhi);
    const double gain = scene.horn.gain(off_boresight_deg(scene.radar, scene.ris_center));

    parallel_for(scene.targets.size(), [&](std::size_t i) {
        const SceneTarget &t = scene.targets[i];
        const double angle = signed_angle_from_ris(scene, t.position);
        const auto [sf, sb] = lookup(t.label, radar_dir, cut_direction(angle, kCutPhi));

        TargetResult &r = report.targets[i];
        r.index = i;
        r.label = t.label;
        r.position = t.position;
        r.angle_deg = rad2deg(angle);
        r.r1 = r1;
        r.r2 = distance(t.position, scene.ris_center);
        r.gain_dbi = gain;
        r.sigma_f_dbsm = sf;
        r.sigma_b_dbsm = sb;
        r.snr_db = snr_db({scene.p_tx_dbm, gain, sf, sb, scene.sigma_t_dbsm, wavelength, r1, r.r2, scene.n0_dbm});
        r.detected = r.snr_db > threshold_db;
    });
    tally(report);
    return report;
}

DetectionReport detection_scan(const Scene &scene, const RisGeometry &geom, int bits, double threshold_db,
                               CurrentModel model)
{
    scene.validate();
    if (bits < 0)
        throw ConfigError("steering.bits", "must be >= 0");

    const Direction radar_dir = cut_direction(signed_angle_from_ris(scene, scene.radar), kCutPhi);
    std::map<std::string, ReflectionProfile> profiles;
    for (const auto &[label, theta] : scene.schedule_deg)
    {
        const SteeringConfig steer{radar_dir, cut_direction(deg2rad(theta), kCutPhi)};
        ReflectionProfile p = continuous_profile(geom, steer);
        profiles.emplace(label, bits > 0 ? quantize_profile(p, bits) : std::move(p));
    }

    const RcsLookup lookup = [&](const std::string &label, const Direction &from, const Direction &to) {
        const ReflectionProfile &p = profiles.at(label);
        return std::pair{bistatic_rcs(geom, p, from, to, model), bistatic_rcs(geom, p, to, from, model)};
    };
    return detection_scan(scene, lookup, geom.wavelength(), threshold_db);
}

DetectionReport detection_scan_without_ris(const Scene &scene, double wavelength, double threshold_db)
{
    scene.validate();
    if (!(wavelength > 0.0))
        throw ConfigError("geometry.frequency", "wavelength must be positive");

    DetectionReport report = empty_report(scene, false, threshold_db);
    for (std::size_t i = 0; i < scene.targets.size(); ++i)
    {
        const SceneTarget &t = scene.targets[i];
        TargetResult &r = report.targets[i];
        r.index = i;
        r.label = t.label;
        r.position = t.position;
        r.angle_deg = rad2deg(signed_angle_from_ris(scene, t.position));
        r.r2 = distance(scene.radar, t.position);
        r.gain_dbi = scene.horn.gain(off_boresight_deg(scene.radar, t.position));
        r.snr_db = scene.p_tx_dbm + 2.0 * r.gain_dbi + scene.sigma_t_dbsm + 20.0 * std::log10(wavelength) -
                   30.0 * std::log10(4.0 * kPi) - 40.0 * std::log10(r.r2) - scene.n0_dbm;
        r.detected = r.snr_db > threshold_db;
    }
    tally(report);
    return report;
}

} // namespace risscope
