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

#include "risscope/phase_profile.hpp"

#include <algorithm>

namespace risscope
{

std::complex<double> ReflectionProfile::gamma(std::size_t m, std::size_t n) const
{
    return std::polar(amplitudes(m, n), phases(m, n));
}

ReflectionProfile ReflectionProfile::uniform(const RisGeometry &geom, double amplitude, double phase)
{
    ReflectionProfile p;
    p.amplitudes = Grid<double>(geom.m_count(), geom.n_count(), amplitude);
    p.phases = Grid<double>(geom.m_count(), geom.n_count(), wrap_two_pi(phase));
    return p;
}

ReflectionProfile continuous_profile(const RisGeometry &geom, const SteeringConfig &steer)
{
    const double k0 = geom.wavenumber();
    const Vec3 gradient = incident_wavevector(steer.incident, k0) - scattered_wavevector(steer.desired, k0);

    ReflectionProfile p;
    p.amplitudes = Grid<double>(geom.m_count(), geom.n_count(), 1.0);
    p.phases = Grid<double>(geom.m_count(), geom.n_count());
    for (std::size_t m = 0; m < geom.m_count(); ++m)
        for (std::size_t n = 0; n < geom.n_count(); ++n)
            p.phases(m, n) = wrap_two_pi(gradient.dot(geom.element_position(m, n)));
    return p;
}

double quantize_phase(double phase, int bits)
{
    if (bits < 1)
        throw std::invalid_argument("quantize_phase: bits must be >= 1");
    const long levels = 1L << bits;
    const double step = kTwoPi / static_cast<double>(levels);
    long q = static_cast<long>(std::floor(wrap_two_pi(phase) / step + 0.5)) % levels;
    return static_cast<double>(q) * step;
}

double circular_distance(double a, double b)
{
    const double d = std::fabs(wrap_two_pi(a) - wrap_two_pi(b));
    return std::min(d, kTwoPi - d);
}

ReflectionProfile quantize_profile(const ReflectionProfile &profile, int bits)
{
    if (bits < 1)
        throw std::invalid_argument("quantize_profile: bits must be >= 1");
    ReflectionProfile out;
    out.amplitudes = Grid<double>(profile.m_count(), profile.n_count(), 1.0);
    out.phases = Grid<double>(profile.m_count(), profile.n_count());
    out.quantization.bits = bits;
    for (std::size_t i = 0; i < profile.phases.size(); ++i)
        out.phases.data()[i] = quantize_phase(profile.phases.data()[i], bits);
    return out;
}

namespace
{

// Lines of the profile along one axis: axis 0 walks m (one line per n), axis 1 walks n.
std::vector<std::vector<std::complex<double>>> lines_along(const ReflectionProfile &p, int axis)
{
    const std::size_t outer = axis == 0 ? p.n_count() : p.m_count();
    const std::size_t inner = axis == 0 ? p.m_count() : p.n_count();
    std::vector<std::vector<std::complex<double>>> lines(outer, std::vector<std::complex<double>>(inner));
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < inner; ++i)
            lines[o][i] = axis == 0 ? p.gamma(i, o) : p.gamma(o, i);
    return lines;
}

std::size_t fundamental_period(const std::vector<std::vector<std::complex<double>>> &lines)
{
    const std::size_t extent = lines.front().size();
    for (std::size_t t = 1; t < extent; ++t)
    {
        bool periodic = true;
        for (const auto &line : lines)
        {
            for (std::size_t i = 0; i + t < extent && periodic; ++i)
                periodic = std::abs(line[i + t] - line[i]) < 1e-9;
            if (!periodic)
                break;
        }
        if (periodic)
            return t;
    }
    return extent;
}

// Power of the line spectra at `cycles` per cell, summed over all lines.
double line_power(const std::vector<std::vector<std::complex<double>>> &lines, double cycles)
{
    double total = 0.0;
    for (const auto &line : lines)
    {
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < line.size(); ++i)
            acc += line[i] * std::polar(1.0, -kTwoPi * cycles * static_cast<double>(i));
        total += std::norm(acc);
    }
    return total;
}

double both_signs(const std::vector<std::vector<std::complex<double>>> &lines, double cycles)
{
    return std::max(line_power(lines, cycles), line_power(lines, -cycles));
}

struct AxisPeriod
{
    std::size_t fundamental = 1;
    std::size_t dominant = 1;
    double refined = 1.0;
};

AxisPeriod axis_period(const ReflectionProfile &p, int axis)
{
    const auto lines = lines_along(p, axis);
    AxisPeriod out;
    out.fundamental = fundamental_period(lines);
    if (out.fundamental == 1)
        return out;

    const std::size_t extent = lines.front().size();
    double best = -1.0;
    for (std::size_t t = 2; t <= extent; ++t)
    {
        const double power = both_signs(lines, 1.0 / static_cast<double>(t));
        if (power > best)
        {
            best = power;
            out.dominant = t;
        }
    }

    // Continuous candidates: grid search in frequency, then golden-section refinement.
    const double lo = 1.0 / static_cast<double>(extent);
    const double hi = 0.5;
    const double grid_step = 1e-3;
    double best_nu = lo;
    best = -1.0;
    for (double nu = lo; nu <= hi + 1e-15; nu += grid_step)
    {
        const double power = both_signs(lines, nu);
        if (power > best)
        {
            best = power;
            best_nu = nu;
        }
    }
    double a = std::max(lo, best_nu - grid_step);
    double b = std::min(hi, best_nu + grid_step);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = both_signs(lines, c);
    double fd = both_signs(lines, d);
    while (b - a > 1e-12)
    {
        if (fc > fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = both_signs(lines, c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = both_signs(lines, d);
        }
    }
    out.refined = 2.0 / (a + b);
    return out;
}

} // namespace

EffectivePeriods effective_periods(const ReflectionProfile &profile, const RisGeometry &geom)
{
    if (profile.m_count() != geom.m_count() || profile.n_count() != geom.n_count())
        throw ConfigError("profile", "grid dimensions do not match the geometry");

    const AxisPeriod x = axis_period(profile, 0);
    const AxisPeriod y = axis_period(profile, 1);
    EffectivePeriods out;
    out.fundamental_cells_x = x.fundamental;
    out.fundamental_cells_y = y.fundamental;
    out.dominant_cells_x = x.dominant;
    out.dominant_cells_y = y.dominant;
    out.refined_cells_x = x.refined;
    out.refined_cells_y = y.refined;
    out.px = x.refined * geom.pitch_x();
    out.py = y.refined * geom.pitch_y();
    return out;
}

std::vector<GratingLobe> GratingLobePrediction::nonzero_orders() const
{
    std::vector<GratingLobe> out;
    std::copy_if(lobes.begin(), lobes.end(), std::back_inserter(out),
                 [](const GratingLobe &l) { return l.u != 0 || l.v != 0; });
    return out;
}

GratingLobePrediction predict_grating_lobes(const SteeringConfig &steer, double px, double py, double wavelength)
{
    if (!(px > 0.0) || !(py > 0.0))
        throw std::invalid_argument("predict_grating_lobes: periods must be positive");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("predict_grating_lobes: wavelength must be positive");

    const double st = std::sin(steer.incident.theta);
    const double sx0 = -st * std::cos(steer.incident.phi);
    const double sy0 = -st * std::sin(steer.incident.phi);
    const int u_max = static_cast<int>(std::ceil(2.0 * px / wavelength)) + 1;
    const int v_max = static_cast<int>(std::ceil(2.0 * py / wavelength)) + 1;

    GratingLobePrediction out;
    out.px = px;
    out.py = py;
    for (int u = -u_max; u <= u_max; ++u)
    {
        for (int v = -v_max; v <= v_max; ++v)
        {
            const double sx = sx0 + u * wavelength / px;
            const double sy = sy0 + v * wavelength / py;
            const double s = std::hypot(sx, sy);
            if (s > 1.0 + 1e-12)
                continue;
            const double phi = s < 1e-15 ? steer.desired.phi : std::atan2(sy, sx);
            out.lobes.push_back({u, v, Direction::make(std::asin(std::min(1.0, s)), phi)});
        }
    }
    return out;
}

} // namespace risscope
