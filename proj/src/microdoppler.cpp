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

#include "risscope/microdoppler.hpp"
#include "risscope/rcs.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>

namespace risscope
{

void TargetTrajectory::validate() const
{
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz))
        throw ConfigError("trajectory.sample_rate_hz", "must be positive");
    if (positions.empty())
        throw ConfigError("trajectory.duration_s", "trajectory has no samples");
    for (const auto &p : positions)
        if (!std::isfinite(p.y) || !std::isfinite(p.z))
            throw ConfigError("trajectory", "non-finite position");
}

namespace
{

std::size_t sample_count(double duration_s, double rate)
{
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw ConfigError("trajectory.sample_rate_hz", "must be positive");
    if (!(duration_s > 0.0) || !std::isfinite(duration_s))
        throw ConfigError("trajectory.duration_s", "must be positive");
    return static_cast<std::size_t>(std::llround(duration_s * rate));
}

double range(const ScenePoint &a, const ScenePoint &b) { return std::hypot(a.y - b.y, a.z - b.z); }

} // namespace

TargetTrajectory linear_trajectory(const ScenePoint &start, const ScenePoint &velocity, double duration_s,
                                   double sample_rate_hz, double rcs_dbsm)
{
    TargetTrajectory t;
    t.sample_rate_hz = sample_rate_hz;
    t.rcs_dbsm = rcs_dbsm;
    const std::size_t n = sample_count(duration_s, sample_rate_hz);
    t.positions.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        const double time = static_cast<double>(k) / sample_rate_hz;
        t.positions.push_back({start.y + velocity.y * time, start.z + velocity.z * time});
    }
    return t;
}

TargetTrajectory pendulum_trajectory(const ScenePoint &ris_center, const ScenePoint &rest, double arm_m,
                                     double amplitude_rad, double omega_rad_s, double duration_s,
                                     double sample_rate_hz, double rcs_dbsm)
{
    if (!(arm_m > 0.0))
        throw ConfigError("trajectory.arm_m", "must be positive");
    const double d = range(rest, ris_center);
    if (!(d > 0.0))
        throw ConfigError("trajectory.rest", "must differ from the RIS centre");
    const double uy = (rest.y - ris_center.y) / d;
    const double uz = (rest.z - ris_center.z) / d;

    TargetTrajectory t;
    t.sample_rate_hz = sample_rate_hz;
    t.rcs_dbsm = rcs_dbsm;
    const std::size_t n = sample_count(duration_s, sample_rate_hz);
    t.positions.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        const double time = static_cast<double>(k) / sample_rate_hz;
        const double s = arm_m * amplitude_rad * std::sin(omega_rad_s * time);
        t.positions.push_back({rest.y + uy * s, rest.z + uz * s});
    }
    return t;
}

std::vector<double> instantaneous_doppler(const TargetTrajectory &traj, const ScenePoint &ris_center,
                                          double wavelength)
{
    traj.validate();
    const std::size_t n = traj.positions.size();
    std::vector<double> out(n, 0.0);
    if (n < 2)
        return out;
    const double dt = 1.0 / traj.sample_rate_hz;
    auto r = [&](std::size_t k) { return range(traj.positions[k], ris_center); };
    for (std::size_t k = 0; k < n; ++k)
    {
        const std::size_t a = k == 0 ? 0 : k - 1;
        const std::size_t b = k + 1 == n ? k : k + 1;
        const double rate = (r(b) - r(a)) / (static_cast<double>(b - a) * dt);
        out[k] = -2.0 * rate / wavelength;
    }
    return out;
}

std::vector<std::complex<double>> synthesize_echo(const TargetTrajectory &traj, const RisGeometry &geom,
                                                  const ReflectionProfile &profile, const EchoConfig &echo)
{
    traj.validate();
    if (!(echo.radar.z > echo.ris_center.z))
        throw ConfigError("scene.radar.z", "radar must be in front of the RIS");
    for (std::size_t k = 0; k < traj.positions.size(); ++k)
        if (!(traj.positions[k].z > echo.ris_center.z))
            throw ConfigError("trajectory.positions[" + std::to_string(k) + "]", "target is behind the RIS plane");

    const double lambda = geom.wavelength();
    const auto doppler = instantaneous_doppler(traj, echo.ris_center, lambda);
    const double peak = doppler.empty() ? 0.0 : std::fabs(*std::max_element(
                                                    doppler.begin(), doppler.end(),
                                                    [](double a, double b) { return std::fabs(a) < std::fabs(b); }));
    if (traj.sample_rate_hz <= 2.0 * peak)
        throw ConfigError("trajectory.sample_rate_hz", "must exceed twice the peak Doppler shift");

    constexpr double kCutPhi = kPi / 2.0;
    auto angle = [&](const ScenePoint &p) {
        return std::atan2(p.y - echo.ris_center.y, p.z - echo.ris_center.z);
    };
    const double r1 = range(echo.radar, echo.ris_center);
    const Direction radar_dir = cut_direction(angle(echo.radar), kCutPhi);
    const std::complex<double> clutter = std::sqrt(db_to_power(echo.clutter_db));

    std::vector<std::complex<double>> s(traj.positions.size());
    parallel_for(s.size(), [&](std::size_t k) {
        const ScenePoint &p = traj.positions[k];
        const Direction target_dir = cut_direction(angle(p), kCutPhi);
        const double r2 = range(p, echo.ris_center);
        LinkBudget b;
        b.p_tx_dbm = echo.p_tx_dbm;
        b.g_a_dbi = echo.g_a_dbi;
        b.sigma_f_dbsm = bistatic_rcs(geom, profile, radar_dir, target_dir, echo.model);
        b.sigma_b_dbsm = bistatic_rcs(geom, profile, target_dir, radar_dir, echo.model);
        b.sigma_t_dbsm = traj.rcs_dbsm;
        b.wavelength = lambda;
        b.r1 = r1;
        b.r2 = r2;
        b.n0_dbm = echo.n0_dbm;
        const double a = std::sqrt(db_to_power(snr_db(b)));
        s[k] = std::polar(a, -kTwoPi * 2.0 * (r1 + r2) / lambda) + clutter;
    });
    return s;
}

std::vector<double> hann_window(std::size_t n)
{
    std::vector<double> w(n, 1.0);
    if (n < 2)
        return w;
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1));
    return w;
}

double Spectrogram::peak_frequency(std::size_t frame) const
{
    if (frame >= power.rows())
        throw std::out_of_range("peak_frequency: frame index");
    std::size_t best = 0;
    for (std::size_t k = 1; k < power.cols(); ++k)
        if (power(frame, k) > power(frame, best))
            best = k;
    return frequencies[best];
}

namespace
{

struct FftwDeleter
{
    void operator()(fftw_complex *p) const { fftw_free(p); }
    void operator()(fftw_plan_s *p) const { fftw_destroy_plan(p); }
};

} // namespace

Spectrogram stft_spectrogram(const std::vector<std::complex<double>> &s, double sample_rate_hz, double window_s,
                             double hop_s, bool dc_filter)
{
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz))
        throw ConfigError("spectrogram.sample_rate_hz", "must be positive");
    if (!(hop_s > 0.0) || !std::isfinite(hop_s))
        throw ConfigError("spectrogram.hop_s", "must be positive");
    if (!(window_s > 0.0) || !std::isfinite(window_s))
        throw ConfigError("spectrogram.window_s", "must be positive");

    const auto n = static_cast<std::size_t>(std::llround(window_s * sample_rate_hz));
    if (n < 8)
        throw ConfigError("spectrogram.window_s", "window must span at least 8 samples");
    if (n > s.size())
        throw ConfigError("spectrogram.window_s", "window is longer than the signal");
    const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(hop_s * sample_rate_hz)));

    std::complex<double> mean = 0.0;
    if (dc_filter)
    {
        for (const auto &v : s)
            mean += v;
        mean /= static_cast<double>(s.size());
    }

    Spectrogram out;
    out.sample_rate_hz = sample_rate_hz;
    out.window_s = window_s;
    out.hop_s = hop_s;
    out.window_samples = n;
    out.hop_samples = hop;
    out.dc_filtered = dc_filter;

    const std::size_t frames = (s.size() - n) / hop + 1;
    const std::size_t half = n / 2;
    out.frequencies.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.frequencies[i] = (static_cast<double>(i) - static_cast<double>(half)) * sample_rate_hz / static_cast<double>(n);
    out.times.resize(frames);
    out.power = Grid<double>(frames, n);
    out.magnitudes_db = Grid<double>(frames, n);

    std::unique_ptr<fftw_complex, FftwDeleter> buf(fftw_alloc_complex(n));
    std::unique_ptr<fftw_plan_s, FftwDeleter> plan(
        fftw_plan_dft_1d(static_cast<int>(n), buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE));
    if (!plan)
        throw std::runtime_error("stft_spectrogram: FFTW planning failed");

    const auto window = hann_window(n);
    const double scale = 1.0 / static_cast<double>(n); // |1/sqrt(N)|^2
    for (std::size_t f = 0; f < frames; ++f)
    {
        const std::size_t start = f * hop;
        for (std::size_t i = 0; i < n; ++i)
        {
            const std::complex<double> v = (s[start + i] - mean) * window[i];
            buf.get()[i][0] = v.real();
            buf.get()[i][1] = v.imag();
        }
        fftw_execute(plan.get());
        for (std::size_t k = 0; k < n; ++k)
        {
            const std::size_t col = (k + half) % n; // fftshift
            const double re = buf.get()[k][0];
            const double im = buf.get()[k][1];
            out.power(f, col) = (re * re + im * im) * scale;
        }
        if (dc_filter)
            out.power(f, half) = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            out.magnitudes_db(f, k) = power_to_db(out.power(f, k));
        out.times[f] = (static_cast<double>(start) + 0.5 * static_cast<double>(n)) / sample_rate_hz;
    }
    return out;
}

} // namespace risscope
