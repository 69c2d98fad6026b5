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

#include <catch_amalgamated.hpp>

#include "risscope/core.hpp"

#include <atomic>
#include <random>

using namespace risscope;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
constexpr double k0 = 115.27;
}

TEST_CASE("Incident wavevector points into the surface", "[core]")
{
    const Vec3 a = incident_wavevector(Direction{0.0, 0.0}, k0);
    CHECK(a.x == 0.0);
    CHECK(a.y == 0.0);
    CHECK(a.z == -k0);

    const Vec3 b = incident_wavevector(Direction::from_degrees(30.0, 90.0), k0);
    CHECK_THAT(b.x, WithinAbs(0.0, 1e-12));
    CHECK_THAT(b.y, WithinRel(-0.5 * k0, 1e-12));
    CHECK_THAT(b.z, WithinRel(-0.8660254037844386 * k0, 1e-12));

    const Vec3 c = incident_wavevector(Direction::from_degrees(90.0, 0.0), k0);
    CHECK_THAT(c.x, WithinRel(-k0, 1e-12));
    CHECK_THAT(c.z, WithinAbs(0.0, 1e-12));
}

TEST_CASE("Scattered wavevector is the negated incident vector", "[core]")
{
    const Vec3 a = scattered_wavevector(Direction{}, k0);
    CHECK(a.z == k0);

    const Vec3 b = scattered_wavevector(Direction::from_degrees(45.0, 90.0), k0);
    CHECK_THAT(b.y, WithinRel(std::sqrt(0.5) * k0, 1e-12));
    CHECK_THAT(b.z, WithinRel(std::sqrt(0.5) * k0, 1e-12));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> th(0.0, kPi / 2), ph(0.0, kTwoPi);
    for (int i = 0; i < 200; ++i)
    {
        const Direction d{th(rng), ph(rng)};
        const Vec3 s = scattered_wavevector(d, k0) + incident_wavevector(d, k0);
        CHECK(s.x == 0.0);
        CHECK(s.y == 0.0);
        CHECK(s.z == 0.0);
        CHECK_THAT(incident_wavevector(d, k0).norm(), WithinRel(k0, 1e-12));
        CHECK_THAT(scattered_wavevector(d, k0).norm(), WithinRel(k0, 1e-12));
    }
}

TEST_CASE("Specular reflection flips z and keeps the tangential part", "[core]")
{
    const Vec3 r = specular_reflect({0.0, 0.0, -k0});
    CHECK(r.z == k0);

    const Vec3 ki = incident_wavevector(Direction::from_degrees(30.0, 90.0), k0);
    const Vec3 kr = specular_reflect(ki);
    CHECK(kr.x == ki.x);
    CHECK(kr.y == ki.y);
    CHECK(kr.z == -ki.z);
    CHECK(specular_reflect(kr) == ki);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> th(0.0, kPi / 2), ph(0.0, kTwoPi);
    const RisGeometry geom(4, 5, 0.016, 0.012, 5.5e9);
    for (int i = 0; i < 100; ++i)
    {
        const Vec3 k = incident_wavevector(Direction{th(rng), ph(rng)}, k0);
        const Vec3 diff = specular_reflect(k) - k;
        CHECK(diff.x == 0.0);
        CHECK(diff.y == 0.0);
        for (std::size_t m = 0; m < geom.m_count(); ++m)
            for (std::size_t n = 0; n < geom.n_count(); ++n)
                CHECK(specular_reflect(k).dot(geom.element_position(m, n)) == k.dot(geom.element_position(m, n)));
    }
}

TEST_CASE("Signed cut angles map bijectively onto (theta, phi)", "[core]")
{
    const double plane = deg2rad(90.0);
    for (double t = -90.0; t <= 90.0; t += 7.5)
    {
        const Direction d = cut_direction(deg2rad(t), plane);
        CHECK(d.theta >= 0.0);
        CHECK(d.phi >= 0.0);
        CHECK(d.phi < kTwoPi);
        CHECK_THAT(rad2deg(signed_theta_in_cut(d, plane)), WithinAbs(t, 1e-12));
    }
    CHECK_THAT(rad2deg(cut_direction(deg2rad(-30.0), plane).phi), WithinAbs(270.0, 1e-12));
    CHECK_THROWS_AS(signed_theta_in_cut(Direction::from_degrees(10.0, 0.0), plane), std::invalid_argument);
}

TEST_CASE("Geometry validation names the offending field", "[core]")
{
    const RisGeometry g(10, 16, 0.016, 0.016, 5.5e9);
    CHECK_THAT(g.wavelength(), WithinRel(0.054507719636363636, 1e-12));
    CHECK_THAT(g.aperture_area(), WithinRel(0.04096, 1e-12));
    CHECK(g.element_position(0, 0) == Vec3{0.0, 0.0, 0.0});
    CHECK_THAT(g.element_position(3, 2).x, WithinRel(0.048, 1e-12));
    CHECK_THAT(g.element_position(3, 2).y, WithinRel(0.032, 1e-12));

    auto field_of = [](auto &&make) {
        try
        {
            make();
        }
        catch (const ConfigError &e)
        {
            return e.field();
        }
        return std::string{};
    };
    CHECK(field_of([] { RisGeometry(0, 1, 1, 1, 1); }) == "geometry.m_count");
    CHECK(field_of([] { RisGeometry(1, 0, 1, 1, 1); }) == "geometry.n_count");
    CHECK(field_of([] { RisGeometry(1, 1, -0.016, 1, 1); }) == "geometry.pitch_x");
    CHECK(field_of([] { RisGeometry(1, 1, 1, 0.0, 1); }) == "geometry.pitch_y");
    CHECK(field_of([] { RisGeometry(1, 1, 1, 1, -5.5e9); }) == "geometry.frequency");
}

TEST_CASE("Decibel helpers clamp at the floor", "[core]")
{
    CHECK(power_to_db(0.0) == kDbFloor);
    CHECK(power_to_db(-1.0) == kDbFloor);
    CHECK(power_to_db(1e-40) == kDbFloor);
    CHECK_THAT(power_to_db(100.0), WithinAbs(20.0, 1e-12));
    CHECK_THAT(db_to_power(power_to_db(3.7)), WithinRel(3.7, 1e-14));
    CHECK(wrap_two_pi(-1e-18) < kTwoPi);
    CHECK_THAT(wrap_two_pi(-kPi / 2), WithinAbs(1.5 * kPi, 1e-12));
}

TEST_CASE("parallel_for visits every index once and propagates failures", "[core]")
{
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto &h : hits)
        CHECK(h.load() == 1);

    CHECK_THROWS_AS(parallel_for(100,
                                 [](std::size_t i) {
                                     if (i == 42)
                                         throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}
