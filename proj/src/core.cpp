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

#include "risscope/core.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

namespace risscope
{

double wrap_two_pi(double angle)
{
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    if (r >= kTwoPi) // fmod of a tiny negative value
        r = 0.0;
    return r;
}

double power_to_db(double power)
{
    if (!(power > 0.0))
        return kDbFloor;
    return std::max(10.0 * std::log10(power), kDbFloor);
}

double db_to_power(double db) { return std::pow(10.0, db / 10.0); }

Direction Direction::make(double theta, double phi) { return Direction{theta, wrap_two_pi(phi)}; }

Direction Direction::from_degrees(double theta_deg, double phi_deg)
{
    return make(deg2rad(theta_deg), deg2rad(phi_deg));
}

Vec3 Direction::unit() const
{
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

Direction cut_direction(double signed_theta, double phi_plane)
{
    if (signed_theta >= 0.0)
        return Direction::make(signed_theta, phi_plane);
    return Direction::make(-signed_theta, phi_plane + kPi);
}

double signed_theta_in_cut(const Direction &dir, double phi_plane)
{
    if (dir.theta == 0.0)
        return 0.0;
    auto circ = [](double a, double b) {
        double d = std::fabs(wrap_two_pi(a) - wrap_two_pi(b));
        return std::min(d, kTwoPi - d);
    };
    if (circ(dir.phi, phi_plane) < 1e-9)
        return dir.theta;
    if (circ(dir.phi, phi_plane + kPi) < 1e-9)
        return -dir.theta;
    throw std::invalid_argument("signed_theta_in_cut: direction is not in the requested phi plane");
}

RisGeometry::RisGeometry(std::size_t m_count, std::size_t n_count, double pitch_x, double pitch_y, double frequency)
    : m_count_(m_count), n_count_(n_count), pitch_x_(pitch_x), pitch_y_(pitch_y), frequency_(frequency)
{
    if (m_count < 1)
        throw ConfigError("geometry.m_count", "must be at least 1");
    if (n_count < 1)
        throw ConfigError("geometry.n_count", "must be at least 1");
    if (!(pitch_x > 0.0) || !std::isfinite(pitch_x))
        throw ConfigError("geometry.pitch_x", "must be positive");
    if (!(pitch_y > 0.0) || !std::isfinite(pitch_y))
        throw ConfigError("geometry.pitch_y", "must be positive");
    if (!(frequency > 0.0) || !std::isfinite(frequency))
        throw ConfigError("geometry.frequency", "must be positive");
}

double RisGeometry::aperture_area() const
{
    return static_cast<double>(m_count_) * static_cast<double>(n_count_) * pitch_x_ * pitch_y_;
}

Vec3 RisGeometry::element_position(std::size_t m, std::size_t n) const
{
    return {static_cast<double>(m) * pitch_x_, static_cast<double>(n) * pitch_y_, 0.0};
}

Vec3 incident_wavevector(const Direction &dir, double k0) { return dir.unit() * (-k0); }

Vec3 scattered_wavevector(const Direction &dir, double k0) { return dir.unit() * k0; }

Vec3 specular_reflect(const Vec3 &ki) { return {ki.x, ki.y, -ki.z}; }

unsigned worker_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("RIS_SCOPE_THREADS"))
    {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            return static_cast<unsigned>(std::min<long>(v, 1024));
    }
    return hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body)
{
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        try
        {
            for (std::size_t i = next.fetch_add(1); i < count && !failed; i = next.fetch_add(1))
                body(i);
        }
        catch (...)
        {
            if (!failed.exchange(true))
                failure = std::current_exception();
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    pool.clear(); // joins
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace risscope
