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

#include <complex>
#include <vector>

namespace risscope
{

// Number of control bits per cell; 0 means continuous phase.
struct Quantization
{
    int bits = 0;

    bool continuous() const { return bits == 0; }
    int levels() const { return 1 << bits; }
    bool operator==(const Quantization &) const = default;
};

// Per-cell reflection coefficient Gamma = A exp(j Phi).
struct ReflectionProfile
{
    Grid<double> amplitudes; // (0, 1]
    Grid<double> phases;     // [0, 2pi)
    Quantization quantization;

    std::size_t m_count() const { return phases.rows(); }
    std::size_t n_count() const { return phases.cols(); }
    std::complex<double> gamma(std::size_t m, std::size_t n) const;

    // Uniform profile with the given coefficient in every cell (e.g. -1 for a metal plate).
    static ReflectionProfile uniform(const RisGeometry &geom, double amplitude, double phase);

    bool operator==(const ReflectionProfile &) const = default;
};

// Where the surface is illuminated from and where its main lobe should point.
struct SteeringConfig
{
    Direction incident;
    Direction desired;
    bool operator==(const SteeringConfig &) const = default;
};

// Linear-gradient profile Phi = (k_i - k_d) . r, wrapped to [0, 2pi), unit amplitudes.
// The excitation Gamma exp(-j k_i.r) then carries phase exp(-j k_d.r), so every cell adds
// in phase towards the desired direction.
ReflectionProfile continuous_profile(const RisGeometry &geom, const SteeringConfig &steer);

// Nearest of the 2^bits levels 2 pi q / 2^bits measured on the circle. An exact midpoint
// goes to the higher level index (wrapping 2^bits to 0).
double quantize_phase(double phase, int bits);

// Shortest distance between two angles on the circle, in [0, pi].
double circular_distance(double a, double b);

// Quantizes a continuous profile to `bits` (>= 1). Amplitudes are forced to 1.
ReflectionProfile quantize_profile(const ReflectionProfile &profile, int bits);

// Spatial periodicity of a (usually quantized) profile along both axes.
struct EffectivePeriods
{
    // Smallest cell shift T with phases(i + T) == phases(i) over the whole aperture;
    // the aperture extent when no shorter shift works.
    std::size_t fundamental_cells_x = 1;
    std::size_t fundamental_cells_y = 1;
    // Integer period among 2..extent whose Fourier coefficient is largest (1 for uniform axes).
    std::size_t dominant_cells_x = 1;
    std::size_t dominant_cells_y = 1;
    // Same search over a continuous set of candidate periods; used for lobe prediction.
    double refined_cells_x = 1.0;
    double refined_cells_y = 1.0;
    // refined_cells * pitch
    double px = 0.0;
    double py = 0.0;
};

EffectivePeriods effective_periods(const ReflectionProfile &profile, const RisGeometry &geom);

struct GratingLobe
{
    int u = 0;
    int v = 0;
    Direction direction;
};

struct GratingLobePrediction
{
    std::vector<GratingLobe> lobes; // visible orders, (0, 0) included
    double px = 0.0;
    double py = 0.0;

    // Lobes other than the (0, 0) specular order.
    std::vector<GratingLobe> nonzero_orders() const;
};

// Enumerates the Floquet orders of a structure with periods (px, py), anchored on the
// specular direction of the incident wave: transverse direction cosines
// (-sin ti cos pi + u lambda/px, -sin ti sin pi + v lambda/py). Only visible orders are kept.
GratingLobePrediction predict_grating_lobes(const SteeringConfig &steer, double px, double py, double wavelength);

} // namespace risscope
