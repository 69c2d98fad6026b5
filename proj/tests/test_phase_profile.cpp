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

#include "risscope/phase_profile.hpp"
#include "risscope/rcs.hpp"

#include <random>

using namespace risscope;
using Catch::Matchers::WithinAbs;

namespace
{

const RisGeometry kBoard(10, 16, 0.016, 0.016, 5.5e9);

SteeringConfig steer(double ti, double td)
{
    return {cut_direction(deg2rad(ti), kPi / 2), cut_direction(deg2rad(td), kPi / 2)};
}

// Phase step between neighbouring cells along n, wrapped to (-pi, pi].
double step_along_n(const ReflectionProfile &p)
{
    double d = p.phases(0, 1) - p.phases(0, 0);
    while (d > kPi)
        d -= kTwoPi;
    while (d <= -kPi)
        d += kTwoPi;
    return d;
}

// Reference quantizer: exhaustive search over the levels, ties to the larger index.
double nearest_level(double phase, int bits)
{
    const int levels = 1 << bits;
    int best = 0;
    double best_d = 1e9;
    for (int q = 0; q < levels; ++q)
    {
        const double level = kTwoPi * q / levels;
        double d = std::fmod(std::fabs(phase - level), kTwoPi);
        d = std::min(d, kTwoPi - d);
        if (d < best_d - 1e-12 || std::fabs(d - best_d) <= 1e-12)
        {
            best_d = d;
            best = q;
        }
    }
    return kTwoPi * best / levels;
}

} // namespace

TEST_CASE("Broadside steering gives a flat profile", "[phase_profile]")
{
    const ReflectionProfile p = continuous_profile(kBoard, steer(0, 0));
    for (double v : p.phases.data())
        CHECK(v == 0.0);
    for (double a : p.amplitudes.data())
        CHECK(a == 1.0);
    CHECK(p.quantization.continuous());
}

TEST_CASE("Continuous gradient matches a hand evaluation", "[phase_profile]")
{
    const double k = kBoard.wavenumber();
    const ReflectionProfile p45 = continuous_profile(kBoard, steer(0, 45));
    CHECK_THAT(step_along_n(p45), WithinAbs(-k * 0.016 * std::sin(deg2rad(45.0)), 1e-9));
    CHECK_THAT(step_along_n(p45), WithinAbs(-1.304, 1e-3));
    CHECK_THAT(p45.phases(1, 0), WithinAbs(0.0, 1e-12)); // nothing along x in the phi = 90 deg cut

    // Arriving from (30, 270) the wave already carries +k0 sin30 along y, so only the
    // difference to sin45 is left for the gradient.
    const ReflectionProfile obl = continuous_profile(kBoard, steer(-30, 45));
    CHECK_THAT(step_along_n(obl), WithinAbs(k * 0.016 * (0.5 - std::sin(deg2rad(45.0))), 1e-9));
    // Arriving from the same side as the target the two add up.
    const ReflectionProfile same = continuous_profile(kBoard, steer(30, 45));
    CHECK_THAT(std::fabs(step_along_n(same)), WithinAbs(2.226, 1e-3));
}

TEST_CASE("Quantizer picks the nearest level and rounds ties up", "[phase_profile]")
{
    CHECK(quantize_phase(0.2, 1) == 0.0);
    CHECK(quantize_phase(2.0, 1) == kPi);
    CHECK_THAT(quantize_phase(0.5, 3), WithinAbs(kPi / 4, 1e-15));
    CHECK_THAT(quantize_phase(kPi / 4, 2), WithinAbs(kPi / 2, 1e-15));
    CHECK(quantize_phase(kTwoPi - 0.01, 2) == 0.0);
    CHECK_THROWS(quantize_phase(1.0, 0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int bits = 1; bits <= 6; ++bits)
        for (int i = 0; i < 500; ++i)
        {
            const double x = u(rng);
            CHECK_THAT(quantize_phase(x, bits), WithinAbs(nearest_level(x, bits), 1e-12));
        }
}

TEST_CASE("Quantization error bound, idempotence and convergence", "[phase_profile][property]")
{
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> th(-80.0, 80.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const ReflectionProfile c = continuous_profile(kBoard, steer(th(rng), th(rng)));
        for (int bits = 1; bits <= 8; ++bits)
        {
            const ReflectionProfile q = quantize_profile(c, bits);
            double worst = 0.0;
            for (std::size_t i = 0; i < c.phases.size(); ++i)
            {
                const double e = circular_distance(c.phases.data()[i], q.phases.data()[i]);
                CHECK(e <= kPi / (1 << bits) + 1e-12);
                worst = std::max(worst, e);
                const double level = q.phases.data()[i] / (kTwoPi / (1 << bits));
                CHECK_THAT(level, WithinAbs(std::round(level), 1e-9));
            }
            if (bits == 8)
                CHECK(worst <= kPi / 256 + 1e-12);

            const ReflectionProfile again = quantize_profile(q, bits);
            CHECK(again.phases == q.phases);
            CHECK(q.quantization.bits == bits);
        }
    }
}

TEST_CASE("One-bit coefficients are real", "[phase_profile]")
{
    const ReflectionProfile q = quantize_profile(continuous_profile(kBoard, steer(0, 30)), 1);
    for (std::size_t m = 0; m < q.m_count(); ++m)
        for (std::size_t n = 0; n < q.n_count(); ++n)
        {
            const auto g = q.gamma(m, n);
            CHECK_THAT(std::fabs(g.real()), WithinAbs(1.0, 1e-15));
            CHECK_THAT(g.imag(), WithinAbs(0.0, 1e-15));
        }
}

TEST_CASE("Effective periods of simple sequences", "[phase_profile]")
{
    const ReflectionProfile flat = ReflectionProfile::uniform(kBoard, 1.0, 0.0);
    const EffectivePeriods e0 = effective_periods(flat, kBoard);
    CHECK(e0.fundamental_cells_x == 1);
    CHECK(e0.fundamental_cells_y == 1);
    CHECK_THAT(e0.px, WithinAbs(kBoard.pitch_x(), 1e-15));
    CHECK_THAT(e0.py, WithinAbs(kBoard.pitch_y(), 1e-15));

    ReflectionProfile alt = flat;
    for (std::size_t m = 0; m < alt.m_count(); ++m)
        for (std::size_t n = 0; n < alt.n_count(); ++n)
            alt.phases(m, n) = n % 2 ? kPi : 0.0;
    const EffectivePeriods e1 = effective_periods(alt, kBoard);
    CHECK(e1.fundamental_cells_y == 2);
    CHECK(e1.dominant_cells_y == 2);
    CHECK_THAT(e1.py, WithinAbs(2 * kBoard.pitch_y(), 1e-9));
    CHECK(e1.fundamental_cells_x == 1);
}

TEST_CASE("One-bit 45 degree profile has a five-cell dominant period", "[phase_profile]")
{
    const ReflectionProfile q = quantize_profile(continuous_profile(kBoard, steer(0, 45)), 1);

    // Brute force: DFT power of the +-1 sequence for every integer period.
    std::size_t best_t = 0;
    double best_p = -1.0;
    for (std::size_t t = 2; t <= q.n_count(); ++t)
    {
        std::complex<double> acc = 0.0;
        for (std::size_t n = 0; n < q.n_count(); ++n)
            acc += q.gamma(0, n) * std::polar(1.0, -kTwoPi * static_cast<double>(n) / static_cast<double>(t));
        if (std::norm(acc) > best_p)
        {
            best_p = std::norm(acc);
            best_t = t;
        }
    }
    const EffectivePeriods e = effective_periods(q, kBoard);
    CHECK(best_t == 5);
    CHECK(e.dominant_cells_y == best_t);
    CHECK_THAT(e.dominant_cells_y * kBoard.pitch_y(), WithinAbs(0.080, 1e-12));
    // Continuous counterpart 2 pi / (k0 sin 45) in cells.
    CHECK_THAT(e.refined_cells_y, WithinAbs(kBoard.wavelength() / std::sin(deg2rad(45.0)) / 0.016, 0.1));
}

TEST_CASE("Grating-lobe prediction", "[phase_profile]")
{
    const double lambda = kBoard.wavelength();

    SECTION("zeroth order is the specular direction")
    {
        const auto g = predict_grating_lobes(steer(-30, 15), 0.016, 0.016, lambda);
        bool found = false;
        for (const auto &l : g.lobes)
            if (l.u == 0 && l.v == 0)
            {
                found = true;
                CHECK_THAT(rad2deg(signed_theta_in_cut(l.direction, kPi / 2)), WithinAbs(30.0, 1e-9));
            }
        CHECK(found);
    }

    SECTION("sub half-wavelength pitch shows no other orders at normal incidence")
    {
        const auto g = predict_grating_lobes(steer(0, 45), 0.016, 0.016, lambda);
        CHECK(g.nonzero_orders().empty());
        CHECK(g.lobes.size() == 1);
    }

    SECTION("one-bit 45 degree profile predicts the mirror lobe")
    {
        const ReflectionProfile q = quantize_profile(continuous_profile(kBoard, steer(0, 45)), 1);
        const EffectivePeriods e = effective_periods(q, kBoard);
        const auto g = predict_grating_lobes(steer(0, 45), e.px, e.py, lambda);
        std::vector<double> angles;
        for (const auto &l : g.nonzero_orders())
        {
            const double x = l.direction.unit().x;
            CHECK(std::fabs(x) <= 1.0);
            angles.push_back(rad2deg(signed_theta_in_cut(l.direction, kPi / 2)));
        }
        std::sort(angles.begin(), angles.end());
        REQUIRE(angles.size() == 2);
        CHECK_THAT(angles[0], WithinAbs(-45.0, 0.5));
        CHECK_THAT(angles[1], WithinAbs(45.0, 0.5));
    }
}

TEST_CASE("Predicted first-order lobes sit on scanned maxima", "[phase_profile][property]")
{
    const double step = 0.05;
    for (double td : {15.0, 30.0, 45.0})
    {
        const SteeringConfig s = steer(0, td);
        const ReflectionProfile q = quantize_profile(continuous_profile(kBoard, s), 1);
        const PatternCut cut = forward_pattern(kBoard, s, q, CutSpec{90.0, -90.0, 90.0, step});
        const double main = cut.peak.value_dbsm;

        const EffectivePeriods e = effective_periods(q, kBoard);
        for (const auto &l : predict_grating_lobes(s, e.px, e.py, kBoard.wavelength()).nonzero_orders())
        {
            if (std::abs(l.v) != 1 || l.u != 0)
                continue;
            const double t = rad2deg(signed_theta_in_cut(l.direction, kPi / 2));
            // Nearest local maximum of the scan.
            const auto &th = cut.thetas_deg;
            const auto &v = cut.rcs_dbsm;
            std::size_t i = static_cast<std::size_t>(std::lround((t - th.front()) / step));
            while (i > 0 && i + 1 < v.size() && (v[i - 1] > v[i] || v[i + 1] > v[i]))
                i = v[i - 1] > v[i + 1] ? i - 1 : i + 1;
            const Peak p = refine_peak(th, v, i - 1, i + 1);
            INFO("theta_d " << td << " predicted " << t << " scanned " << p.theta_deg);
            CHECK(std::fabs(p.theta_deg - t) <= step);
            CHECK(main - p.value_dbsm <= 0.5);
        }
    }
}
