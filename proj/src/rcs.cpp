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

#include "risscope/rcs.hpp"

#include <algorithm>
#include <stdexcept>

namespace risscope
{

double rcs_from_field(const FieldSample &sample, const PlaneWave &incident)
{
    if (!(incident.amplitude > 0.0))
        throw std::invalid_argument("rcs_from_field: incident amplitude must be positive");
    const double e = sample.magnitude();
    return power_to_db(4.0 * kPi * e * e / (incident.amplitude * incident.amplitude));
}

double bistatic_rcs(const RisGeometry &geom, const ReflectionProfile &profile, const Direction &incident,
                    const Direction &obs, CurrentModel model)
{
    const PlaneWave wave{1.0, incident};
    return rcs_from_field(far_field(geom, wave, model_excitations(geom, wave, profile, model), obs), wave);
}

namespace
{

PatternCut make_cut(const RisGeometry &geom, const PlaneWave &wave, const ReflectionProfile &profile,
                    const CutSpec &spec, CurrentModel model, double design_theta_deg)
{
    const FieldCut field = pattern_cut(geom, wave, profile, model, spec);
    PatternCut out;
    out.phi_plane_deg = spec.phi_plane_deg;
    out.thetas_deg = field.thetas_deg;
    out.rcs_dbsm.reserve(field.samples.size());
    for (const auto &s : field.samples)
        out.rcs_dbsm.push_back(rcs_from_field(s, wave));
    out.design_theta_deg = design_theta_deg;
    out.peak = refine_peak(out.thetas_deg, out.rcs_dbsm, 0, out.thetas_deg.size() - 1);
    return out;
}

double signed_deg(const Direction &d, double phi_plane_deg)
{
    return rad2deg(signed_theta_in_cut(d, deg2rad(phi_plane_deg)));
}

} // namespace

PatternCut forward_pattern(const RisGeometry &geom, const SteeringConfig &steer, const ReflectionProfile &profile,
                           const CutSpec &cut, CurrentModel model)
{
    return make_cut(geom, PlaneWave{1.0, steer.incident}, profile, cut, model, signed_deg(steer.desired, cut.phi_plane_deg));
}

PatternCut backward_pattern(const RisGeometry &geom, const SteeringConfig &steer, const ReflectionProfile &profile,
                            const CutSpec &cut, CurrentModel model)
{
    return make_cut(geom, PlaneWave{1.0, steer.desired}, profile, cut, model, signed_deg(steer.incident, cut.phi_plane_deg));
}

Peak refine_peak(const std::vector<double> &thetas, const std::vector<double> &values, std::size_t lo, std::size_t hi)
{
    if (thetas.size() != values.size() || lo > hi || hi >= values.size())
        throw std::invalid_argument("refine_peak: invalid index range");

    std::size_t i = lo;
    for (std::size_t k = lo + 1; k <= hi; ++k)
        if (values[k] > values[i])
            i = k;

    Peak p{thetas[i], values[i]};
    if (i == lo || i == hi)
        return p;
    const double a = values[i - 1];
    const double b = values[i];
    const double c = values[i + 1];
    const double denom = a - 2.0 * b + c;
    if (!(denom < 0.0))
        return p;
    const double d = 0.5 * (a - c) / denom; // in [-0.5, 0.5] for a discrete maximum
    p.theta_deg = thetas[i] + d * (thetas[i + 1] - thetas[i - 1]) * 0.5;
    p.value_dbsm = b - 0.25 * (a - c) * d;
    return p;
}

Peak main_lobe(const PatternCut &cut, double theta_deg)
{
    const auto &t = cut.thetas_deg;
    if (t.empty())
        throw std::runtime_error("main_lobe: empty cut");
    std::size_t lo = 0;
    std::size_t hi = t.size() - 1;
    if (theta_deg > 0.0)
    {
        while (lo < t.size() && t[lo] < 0.0)
            ++lo;
    }
    else if (theta_deg < 0.0)
    {
        while (hi > 0 && t[hi] > 0.0)
            --hi;
        if (t[hi] > 0.0)
            lo = hi + 1; // nothing on the negative side
    }
    if (lo >= t.size() || lo > hi)
        throw std::runtime_error("main_lobe: the cut does not cover the half-plane of the design angle");

    const Peak p = refine_peak(t, cut.rcs_dbsm, lo, hi);
    if (!(p.value_dbsm > kDbFloor))
        throw std::runtime_error("main_lobe: no lobe above the floor");
    return p;
}

double beam_squint(const PatternCut &cut, double theta_d_deg)
{
    return std::fabs(main_lobe(cut, theta_d_deg).theta_deg - theta_d_deg);
}

double rcs_at(const PatternCut &cut, double theta_deg)
{
    const auto &t = cut.thetas_deg;
    const double eps = 1e-9;
    if (t.empty() || theta_deg < t.front() - eps || theta_deg > t.back() + eps)
        throw std::out_of_range("rcs_at: angle outside the cut");
    const auto it = std::lower_bound(t.begin(), t.end(), theta_deg - eps);
    const std::size_t k = static_cast<std::size_t>(it - t.begin());
    if (std::fabs(t[k] - theta_deg) <= eps || k == 0)
        return cut.rcs_dbsm[k];
    const double w = (theta_deg - t[k - 1]) / (t[k] - t[k - 1]);
    return cut.rcs_dbsm[k - 1] + w * (cut.rcs_dbsm[k] - cut.rcs_dbsm[k - 1]);
}

double pslr(const PatternCut &cut, double peak_theta_deg, double reference_theta_deg)
{
    const double reference = rcs_at(cut, reference_theta_deg);
    return main_lobe(cut, peak_theta_deg).value_dbsm - reference;
}

double monostatic_rcs(const RisGeometry &geom, const ReflectionProfile &profile, CurrentModel model)
{
    return bistatic_rcs(geom, profile, Direction{}, Direction{}, model);
}

RcsMetrics compute_metrics(const RisGeometry &geom, const SteeringConfig &steer, const ReflectionProfile &profile,
                           const CutSpec &cut, CurrentModel model)
{
    const double ti = signed_deg(steer.incident, cut.phi_plane_deg);
    const double td = signed_deg(steer.desired, cut.phi_plane_deg);

    const PatternCut fwd = forward_pattern(geom, steer, profile, cut, model);
    const PatternCut bwd = backward_pattern(geom, steer, profile, cut, model);
    const Peak f = main_lobe(fwd, td);
    const Peak b = main_lobe(bwd, ti);

    RcsMetrics m;
    m.sigma_f_peak = f.value_dbsm;
    m.sigma_b_peak = b.value_dbsm;
    m.realized_theta_deg = f.theta_deg;
    m.beam_squint = std::fabs(f.theta_deg - td);
    m.pslr = f.value_dbsm - rcs_at(fwd, ti);
    m.pslr_backward = b.value_dbsm - rcs_at(bwd, -td);
    m.monostatic = bistatic_rcs(geom, profile, steer.incident, Direction{}, model);
    return m;
}

} // namespace risscope
