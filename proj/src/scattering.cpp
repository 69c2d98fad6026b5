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

#include "risscope/scattering.hpp"

namespace risscope
{

std::string to_string(CurrentModel model)
{
    return model == CurrentModel::paper ? "paper" : "physical-optics";
}

CurrentModel current_model_from_string(const std::string &name)
{
    if (name == "paper")
        return CurrentModel::paper;
    if (name == "physical-optics" || name == "physical_optics")
        return CurrentModel::physical_optics;
    throw ConfigError("model", "expected 'paper' or 'physical-optics', got '" + name + "'");
}

namespace
{

void check_dimensions(const RisGeometry &geom, const ReflectionProfile &profile)
{
    if (profile.m_count() != geom.m_count() || profile.n_count() != geom.n_count() ||
        profile.amplitudes.rows() != geom.m_count() || profile.amplitudes.cols() != geom.n_count())
        throw ConfigError("profile", "grid is " + std::to_string(profile.m_count()) + "x" +
                                         std::to_string(profile.n_count()) + " but the geometry is " +
                                         std::to_string(geom.m_count()) + "x" + std::to_string(geom.n_count()));
}

} // namespace

ExcitationGrid element_excitations(const RisGeometry &geom, const PlaneWave &wave, const ReflectionProfile &profile,
                                   bool include_specular_term)
{
    check_dimensions(geom, profile);
    const Vec3 ki = incident_wavevector(wave.direction, geom.wavenumber());

    ExcitationGrid out;
    out.includes_specular_term = include_specular_term;
    out.values = Grid<std::complex<double>>(geom.m_count(), geom.n_count());
    const std::complex<double> specular = include_specular_term ? 1.0 : 0.0;
    for (std::size_t m = 0; m < geom.m_count(); ++m)
    {
        for (std::size_t n = 0; n < geom.n_count(); ++n)
        {
            // k_r.r == k_i.r on z = 0: both terms share the incident tangential phase.
            const auto phase = std::polar(1.0, -ki.dot(geom.element_position(m, n)));
            out.values(m, n) = phase * (specular - profile.gamma(m, n));
        }
    }
    return out;
}

ExcitationGrid model_excitations(const RisGeometry &geom, const PlaneWave &wave, const ReflectionProfile &profile,
                                 CurrentModel model)
{
    if (model == CurrentModel::physical_optics)
        return element_excitations(geom, wave, profile, true);
    ExcitationGrid grid = element_excitations(geom, wave, profile, false);
    for (auto &v : grid.values.data())
        v *= 2.0;
    return grid;
}

FieldSample far_field(const RisGeometry &geom, const PlaneWave &wave, const ExcitationGrid &grid, const Direction &obs)
{
    if (grid.values.rows() != geom.m_count() || grid.values.cols() != geom.n_count())
        throw ConfigError("excitation", "grid dimensions do not match the geometry");

    const double k0 = geom.wavenumber();
    const Vec3 ks = scattered_wavevector(obs, k0);

    // exp(j k_s.r_mn) factors into an x phasor times a y phasor.
    std::vector<std::complex<double>> ey(geom.n_count());
    for (std::size_t n = 0; n < geom.n_count(); ++n)
        ey[n] = std::polar(1.0, ks.y * geom.pitch_y() * static_cast<double>(n));

    std::complex<double> sum = 0.0;
    for (std::size_t m = 0; m < geom.m_count(); ++m)
    {
        std::complex<double> row = 0.0;
        for (std::size_t n = 0; n < geom.n_count(); ++n)
            row += grid.values(m, n) * ey[n];
        sum += row * std::polar(1.0, ks.x * geom.pitch_x() * static_cast<double>(m));
    }
    sum *= geom.pitch_x() * geom.pitch_y();

    const std::complex<double> c(0.0, k0 * wave.amplitude * std::cos(wave.direction.theta) / (4.0 * kPi));
    FieldSample s;
    s.direction = obs;
    s.e_theta = c * std::cos(obs.theta) * std::cos(obs.phi) * sum;
    s.e_phi = -c * std::sin(obs.phi) * sum;
    return s;
}

std::vector<double> CutSpec::thetas() const
{
    if (!(step_deg > 0.0) || !std::isfinite(step_deg))
        throw ConfigError("sweep.step_deg", "must be positive");
    if (!(theta_max_deg >= theta_min_deg))
        throw ConfigError("sweep.theta_max_deg", "theta range is empty");
    if (theta_min_deg < -90.0 - 1e-9)
        throw ConfigError("sweep.theta_min_deg", "must be >= -90 degrees");
    if (theta_max_deg > 90.0 + 1e-9)
        throw ConfigError("sweep.theta_max_deg", "must be <= 90 degrees");

    const auto count = static_cast<std::size_t>(std::floor((theta_max_deg - theta_min_deg) / step_deg + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k)
        out[k] = theta_min_deg + static_cast<double>(k) * step_deg;
    return out;
}

FieldCut pattern_cut(const RisGeometry &geom, const PlaneWave &wave, const ExcitationGrid &grid, const CutSpec &cut)
{
    FieldCut out;
    out.phi_plane_deg = cut.phi_plane_deg;
    out.thetas_deg = cut.thetas();
    out.samples.resize(out.thetas_deg.size());
    const double phi_plane = deg2rad(cut.phi_plane_deg);
    parallel_for(out.thetas_deg.size(), [&](std::size_t k) {
        out.samples[k] = far_field(geom, wave, grid, cut_direction(deg2rad(out.thetas_deg[k]), phi_plane));
    });
    return out;
}

FieldCut pattern_cut(const RisGeometry &geom, const PlaneWave &wave, const ReflectionProfile &profile,
                     CurrentModel model, const CutSpec &cut)
{
    return pattern_cut(geom, wave, model_excitations(geom, wave, profile, model), cut);
}

} // namespace risscope
