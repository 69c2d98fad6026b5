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

#include <complex>
#include <string>
#include <vector>

namespace risscope
{

// How the surface current of a cell is formed from its reflection coefficient.
//  paper:           -2 Gamma, the programmable term alone at full amplitude (default)
//  physical_optics: 1 - Gamma, incident plus reflected tangential magnetic field
enum class CurrentModel
{
    paper,
    physical_optics
};

std::string to_string(CurrentModel model);
CurrentModel current_model_from_string(const std::string &name); // throws ConfigError

// x-polarized plane wave arriving from `direction`.
struct PlaneWave
{
    double amplitude = 1.0; // E0, V/m
    Direction direction;
};

// Per-cell excitation J_mn up to the common factor E0 cos(theta_i) / eta0.
struct ExcitationGrid
{
    Grid<std::complex<double>> values;
    bool includes_specular_term = false;
};

// Far-field sample. Components are range-normalized (r * E, in volts) with the
// exp(-j k0 r) propagation factor removed, so nothing depends on distance.
struct FieldSample
{
    std::complex<double> e_theta;
    std::complex<double> e_phi;
    Direction direction;

    double magnitude() const { return std::sqrt(std::norm(e_theta) + std::norm(e_phi)); }
};

// exp(-j k_i.r) (1 - Gamma) with the specular term, exp(-j k_i.r) (-Gamma) without.
// Throws ConfigError when the profile and geometry disagree in size.
ExcitationGrid element_excitations(const RisGeometry &geom, const PlaneWave &wave, const ReflectionProfile &profile,
                                   bool include_specular_term);

// Excitation for a current model. The paper model doubles the Gamma-only term.
ExcitationGrid model_excitations(const RisGeometry &geom, const PlaneWave &wave, const ReflectionProfile &profile,
                                 CurrentModel model);

// E_theta = C cos(ts) cos(ps) S, E_phi = -C sin(ps) S with
// S = sum_mn J_mn p_x p_y exp(j k_s.r_mn) and C = j k0 E0 cos(theta_i) / (4 pi).
FieldSample far_field(const RisGeometry &geom, const PlaneWave &wave, const ExcitationGrid &grid, const Direction &obs);

// Signed-theta sweep inside one phi plane, in degrees. Endpoints are inclusive.
struct CutSpec
{
    double phi_plane_deg = 90.0;
    double theta_min_deg = -90.0;
    double theta_max_deg = 90.0;
    double step_deg = 0.05;

    // Throws ConfigError for a non-positive step or an empty/out-of-range interval.
    std::vector<double> thetas() const;
    bool operator==(const CutSpec &) const = default;
};

struct FieldCut
{
    double phi_plane_deg = 90.0;
    std::vector<double> thetas_deg;
    std::vector<FieldSample> samples;
};

// Samples are evaluated in parallel but returned ordered by theta.
FieldCut pattern_cut(const RisGeometry &geom, const PlaneWave &wave, const ExcitationGrid &grid, const CutSpec &cut);

FieldCut pattern_cut(const RisGeometry &geom, const PlaneWave &wave, const ReflectionProfile &profile,
                     CurrentModel model, const CutSpec &cut);

} // namespace risscope
