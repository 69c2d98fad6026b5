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

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace risscope
{

inline constexpr double kSpeedOfLight = 299792458.0;          // m/s
inline constexpr double kFreeSpaceImpedance = 376.730313668;  // Ohm
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Lower clamp for every logarithmic quantity (dBsm, dB power).
inline constexpr double kDbFloor = -300.0;

// Raised for invalid user-facing configuration. `field()` carries a dotted path
// such as "geometry.pitch_x" so front ends can point at the offending entry.
class ConfigError : public std::invalid_argument
{
  public:
    ConfigError(std::string field, const std::string &what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field))
    {
    }
    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Reduces an angle to [0, 2pi).
double wrap_two_pi(double angle);

// 10 log10(x), clamped at kDbFloor (also for x <= 0).
double power_to_db(double power);
double db_to_power(double db);

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    bool operator==(const Vec3 &) const = default;
};

// Spherical direction: theta from +z, phi of the xy projection from +x. Angles in radians.
struct Direction
{
    double theta = 0.0;
    double phi = 0.0;

    // Normalizes phi into [0, 2pi).
    static Direction make(double theta, double phi);
    static Direction from_degrees(double theta_deg, double phi_deg);

    Vec3 unit() const;
    bool operator==(const Direction &) const = default;
};

// A signed angle inside a fixed-phi cut: theta >= 0 maps to (theta, phi_plane),
// theta < 0 maps to (|theta|, phi_plane + pi).
Direction cut_direction(double signed_theta, double phi_plane);

// Inverse of cut_direction. Throws std::invalid_argument when `dir` does not lie in the
// cut (phi differs from phi_plane and phi_plane + pi by more than 1e-9 rad, unless theta == 0).
double signed_theta_in_cut(const Direction &dir, double phi_plane);

// Planar M x N aperture in the xy plane. Cell (m, n), zero-based, sits at (m p_x, n p_y, 0).
class RisGeometry
{
  public:
    RisGeometry(std::size_t m_count, std::size_t n_count, double pitch_x, double pitch_y, double frequency);

    std::size_t m_count() const { return m_count_; }
    std::size_t n_count() const { return n_count_; }
    double pitch_x() const { return pitch_x_; }
    double pitch_y() const { return pitch_y_; }
    double frequency() const { return frequency_; }
    double wavelength() const { return kSpeedOfLight / frequency_; }
    double wavenumber() const { return kTwoPi / wavelength(); }
    double aperture_area() const;
    Vec3 element_position(std::size_t m, std::size_t n) const;

    bool operator==(const RisGeometry &) const = default;

  private:
    std::size_t m_count_;
    std::size_t n_count_;
    double pitch_x_;
    double pitch_y_;
    double frequency_;
};

// Row-major M x N grid indexed (m, n).
template <typename T>
class Grid
{
  public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    T &operator()(std::size_t m, std::size_t n) { return data_[m * cols_ + n]; }
    const T &operator()(std::size_t m, std::size_t n) const { return data_[m * cols_ + n]; }

    std::vector<T> &data() { return data_; }
    const std::vector<T> &data() const { return data_; }

    bool operator==(const Grid &) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

// k_i = k0 (-sin t cos p, -sin t sin p, -cos t): a wave arriving from `dir`.
Vec3 incident_wavevector(const Direction &dir, double k0);

// k_s = k0 (sin t cos p, sin t sin p, cos t): a wave leaving towards `dir`.
Vec3 scattered_wavevector(const Direction &dir, double k0);

// Mirror reflection in the z = 0 plane; preserves |ki| and the tangential components.
Vec3 specular_reflect(const Vec3 &ki);

// Worker count for sweep-level parallelism: RIS_SCOPE_THREADS if set and positive,
// otherwise std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

// Runs body(i) for i in [0, count) over worker_count() threads. Each index is visited once.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

} // namespace risscope
