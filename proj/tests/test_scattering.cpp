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

#include "risscope/scattering.hpp"

#include <random>

using namespace risscope;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using cplx = std::complex<double>;

namespace
{

const RisGeometry kBoard(10, 16, 0.016, 0.016, 5.5e9);

SteeringConfig steer(double ti, double td)
{
    return {cut_direction(deg2rad(ti), kPi / 2), cut_direction(deg2rad(td), kPi / 2)};
}

// Kahan-compensated accumulator for complex terms.
struct KahanSum
{
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    void add(cplx v)
    {
        const double yr = v.real() - cre;
        const double tr = re + yr;
        cre = (tr - re) - yr;
        re = tr;
        const double yi = v.imag() - cim;
        const double ti = im + yi;
        cim = (ti - im) - yi;
        im = ti;
    }
    cplx value() const { return {re, im}; }
};

// Independent evaluation of the far field: direction cosines written out by hand,
// n-major reversed loop order, full 2D phase per term.
FieldSample oracle_field(const RisGeometry &g, const ReflectionProfile &p, const Direction &inc, const Direction &obs,
                         bool physical_optics)
{
    const double k = kTwoPi * g.frequency() / 299792458.0;
    const double kix = -k * std::sin(inc.theta) * std::cos(inc.phi);
    const double kiy = -k * std::sin(inc.theta) * std::sin(inc.phi);
    const double ksx = k * std::sin(obs.theta) * std::cos(obs.phi);
    const double ksy = k * std::sin(obs.theta) * std::sin(obs.phi);
    KahanSum s;
    for (std::size_t n = g.n_count(); n-- > 0;)
        for (std::size_t m = g.m_count(); m-- > 0;)
        {
            const double x = static_cast<double>(m) * g.pitch_x();
            const double y = static_cast<double>(n) * g.pitch_y();
            const cplx gamma = std::polar(p.amplitudes(m, n), p.phases(m, n));
            const cplx j = (physical_optics ? 1.0 - gamma : -2.0 * gamma) * std::polar(1.0, -(kix * x + kiy * y));
            s.add(j * g.pitch_x() * g.pitch_y() * std::polar(1.0, ksx * x + ksy * y));
        }
    const cplx c = cplx(0.0, 1.0) * k * std::cos(inc.theta) / (4.0 * kPi);
    return {c * std::cos(obs.theta) * std::cos(obs.phi) * s.value(), -c * std::sin(obs.phi) * s.value(), obs};
}

bool close(cplx a, cplx b, double rel, double scale)
{
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), scale});
}

} // namespace

TEST_CASE("Excitation examples", "[scattering]")
{
    const PlaneWave normal{1.0, Direction{}};

    SECTION("metal plate gives 2 in both models")
    {
        const ReflectionProfile pec = ReflectionProfile::uniform(kBoard, 1.0, kPi);
        for (auto model : {CurrentModel::paper, CurrentModel::physical_optics})
            for (const cplx &v : model_excitations(kBoard, normal, pec, model).values.data())
                CHECK(std::abs(v - 2.0) <= 1e-15);
    }

    SECTION("magnetic wall cancels the current")
    {
        const ReflectionProfile pmc = ReflectionProfile::uniform(kBoard, 1.0, 0.0);
        const ExcitationGrid g = element_excitations(kBoard, normal, pmc, true);
        CHECK(g.includes_specular_term);
        for (const cplx &v : g.values.data())
            CHECK(v == 0.0);
        for (double t = -90.0; t <= 90.0; t += 0.9)
            CHECK(far_field(kBoard, normal, g, cut_direction(deg2rad(t), kPi / 2)).magnitude() == 0.0);
    }

    SECTION("one-bit profile gives 0 or 2")
    {
        const ReflectionProfile q = quantize_profile(continuous_profile(kBoard, steer(0, 45)), 1);
        const ExcitationGrid g = element_excitations(kBoard, normal, q, true);
        int zeros = 0, twos = 0;
        for (const cplx &v : g.values.data())
        {
            if (std::abs(v) < 1e-12)
                ++zeros;
            else if (std::abs(v - 2.0) < 1e-12)
                ++twos;
        }
        CHECK(zeros > 0);
        CHECK(twos > 0);
        CHECK(zeros + twos == static_cast<int>(g.values.size()));
    }

    SECTION("size mismatch is a configuration error")
    {
        const RisGeometry other(4, 4, 0.016, 0.016, 5.5e9);
        const ReflectionProfile p = ReflectionProfile::uniform(other, 1.0, 0.0);
        CHECK_THROWS_AS(element_excitations(kBoard, normal, p, false), ConfigError);
    }

    CHECK(current_model_from_string("paper") == CurrentModel::paper);
    CHECK(current_model_from_string("physical-optics") == CurrentModel::physical_optics);
    CHECK(to_string(CurrentModel::physical_optics) == "physical-optics");
    CHECK_THROWS_AS(current_model_from_string("mom"), ConfigError);
}

TEST_CASE("Far-field factor examples", "[scattering]")
{
    const PlaneWave normal{1.0, Direction{}};
    const ReflectionProfile q = quantize_profile(continuous_profile(kBoard, steer(0, 30)), 1);
    const ExcitationGrid g = model_excitations(kBoard, normal, q, CurrentModel::paper);

    for (double t = 0.0; t < 90.0; t += 3.3)
    {
        const FieldSample s = far_field(kBoard, normal, g, Direction::from_degrees(t, 90.0));
        CHECK(std::abs(s.e_theta) <= 1e-12 * std::abs(s.e_phi));
        CHECK(s.magnitude() == std::sqrt(std::norm(s.e_theta) + std::norm(s.e_phi)));
    }

    SECTION("broadside plate sum")
    {
        const ReflectionProfile pec = ReflectionProfile::uniform(kBoard, 1.0, kPi);
        const ExcitationGrid e = model_excitations(kBoard, normal, pec, CurrentModel::paper);
        const FieldSample s = far_field(kBoard, normal, e, Direction::from_degrees(0.0, 90.0));
        // |E| = k0/(4 pi) * 2 M N px py
        const double expected = kBoard.wavenumber() / (4 * kPi) * 2 * 160 * 0.016 * 0.016;
        CHECK_THAT(s.magnitude(), WithinRel(expected, 1e-12));
    }

    SECTION("single element")
    {
        const RisGeometry one(1, 1, 0.02, 0.01, 5.5e9);
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> th(0.0, 1.5), ph(0.0, kTwoPi);
        for (int i = 0; i < 50; ++i)
        {
            const PlaneWave w{2.0, Direction{th(rng), ph(rng)}};
            const ReflectionProfile p = ReflectionProfile::uniform(one, 0.7, ph(rng));
            const ExcitationGrid e = model_excitations(one, w, p, CurrentModel::paper);
            const Direction obs{th(rng), ph(rng)};
            const FieldSample s = far_field(one, w, e, obs);
            const double c = one.wavenumber() * w.amplitude * std::cos(w.direction.theta) / (4 * kPi);
            const double sum = std::abs(e.values(0, 0)) * 0.02 * 0.01;
            CHECK_THAT(std::abs(s.e_phi), WithinRel(c * std::fabs(std::sin(obs.phi)) * sum, 1e-12));
            CHECK_THAT(std::abs(s.e_theta),
                       WithinAbs(c * std::fabs(std::cos(obs.theta) * std::cos(obs.phi)) * sum, 1e-15));
        }
    }
}

TEST_CASE("Far field matches a compensated brute-force re-summation", "[scattering][property]")
{
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> size(1, 4);
    std::uniform_real_distribution<double> th(0.0, 1.45), ph(0.0, kTwoPi), amp(0.1, 1.0), pitch(0.005, 0.05);
    for (int trial = 0; trial < 300; ++trial)
    {
        const RisGeometry g(size(rng), size(rng), pitch(rng), pitch(rng), 5.5e9);
        ReflectionProfile p = ReflectionProfile::uniform(g, 1.0, 0.0);
        for (std::size_t i = 0; i < p.phases.size(); ++i)
        {
            p.phases.data()[i] = ph(rng);
            p.amplitudes.data()[i] = amp(rng);
        }
        const PlaneWave w{1.0, Direction{th(rng), ph(rng)}};
        const Direction obs{th(rng), ph(rng)};
        for (bool po : {false, true})
        {
            const auto model = po ? CurrentModel::physical_optics : CurrentModel::paper;
            const FieldSample got = far_field(g, w, model_excitations(g, w, p, model), obs);
            const FieldSample ref = oracle_field(g, p, w.direction, obs, po);
            const double scale = std::hypot(std::abs(ref.e_theta), std::abs(ref.e_phi));
            INFO("trial " << trial << " model " << to_string(model));
            CHECK(close(got.e_theta, ref.e_theta, 1e-12, scale));
            CHECK(close(got.e_phi, ref.e_phi, 1e-12, scale));
        }
    }
}

TEST_CASE("Real excitation grids give a theta-symmetric cut", "[scattering][property]")
{
    const PlaneWave normal{1.0, Direction{}};
    for (double td : {15.0, 30.0, 45.0, 60.0})
    {
        const ReflectionProfile q = quantize_profile(continuous_profile(kBoard, steer(0, td)), 1);
        for (auto model : {CurrentModel::paper, CurrentModel::physical_optics})
        {
            ExcitationGrid g = model_excitations(kBoard, normal, q, model);
            for (cplx &v : g.values.data())
            {
                REQUIRE(std::fabs(v.imag()) < 1e-15);
                v = v.real();
            }
            const FieldCut cut = pattern_cut(kBoard, normal, g, CutSpec{90.0, -90.0, 90.0, 0.25});
            double peak = 0.0;
            for (const auto &s : cut.samples)
                peak = std::max(peak, s.magnitude());
            const std::size_t n = cut.samples.size();
            for (std::size_t i = 0; i < n / 2; ++i)
            {
                const double a = cut.samples[i].magnitude();
                const double b = cut.samples[n - 1 - i].magnitude();
                CHECK(std::fabs(a - b) <= 1e-10 * std::max({a, b, 1e-4 * peak}));
            }
        }
    }
}

TEST_CASE("Superposition of the specular and programmable terms", "[scattering][property]")
{
    const PlaneWave w{1.0, Direction::from_degrees(20.0, 90.0)};
    const ReflectionProfile base = continuous_profile(kBoard, steer(-20, 35));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> th(-89.0, 89.0);

    for (double c : {0.25, 0.5, 1.0})
    {
        ReflectionProfile scaled = base;
        for (double &a : scaled.amplitudes.data())
            a *= c;
        const ExcitationGrid only1 = element_excitations(kBoard, w, base, false);
        const ExcitationGrid onlyc = element_excitations(kBoard, w, scaled, false);
        const ExcitationGrid both1 = element_excitations(kBoard, w, base, true);
        const ExcitationGrid bothc = element_excitations(kBoard, w, scaled, true);
        for (int i = 0; i < 40; ++i)
        {
            const Direction obs = cut_direction(deg2rad(th(rng)), kPi / 2);
            const FieldSample a1 = far_field(kBoard, w, only1, obs);
            const FieldSample ac = far_field(kBoard, w, onlyc, obs);
            CHECK_THAT(ac.magnitude(), WithinRel(c * a1.magnitude(), 1e-12));

            // The specular part is whatever remains after removing the Gamma term.
            const cplx spec1 = far_field(kBoard, w, both1, obs).e_phi - a1.e_phi;
            const cplx specc = far_field(kBoard, w, bothc, obs).e_phi - ac.e_phi;
            CHECK(close(spec1, specc, 1e-11, std::abs(a1.e_phi)));
        }
    }
}

TEST_CASE("Pattern cut sampling", "[scattering]")
{
    CHECK(CutSpec{90.0, -90.0, 90.0, 1.8}.thetas().size() == 101);
    CHECK(CutSpec{90.0, -90.0, 90.0, 0.05}.thetas().size() == 3601);
    const auto t = CutSpec{90.0, -90.0, 90.0, 1.8}.thetas();
    CHECK(t.front() == -90.0);
    CHECK_THAT(t.back(), WithinAbs(90.0, 1e-9));

    auto field_of = [](const CutSpec &c) {
        try
        {
            c.thetas();
        }
        catch (const ConfigError &e)
        {
            return e.field();
        }
        return std::string{};
    };
    CHECK(field_of({90.0, 10.0, -10.0, 1.0}) == "sweep.theta_max_deg");
    CHECK(field_of({90.0, -90.0, 90.0, 0.0}) == "sweep.step_deg");
    CHECK(field_of({90.0, -95.0, 90.0, 1.0}) == "sweep.theta_min_deg");
    CHECK_THROWS_AS(CutSpec({90.0, 0.0, 91.0, 1.0}).thetas(), ConfigError);

    SECTION("continuous 45 degree main lobe lies within one step")
    {
        const PlaneWave normal{1.0, Direction{}};
        const ReflectionProfile p = continuous_profile(kBoard, steer(0, 45));
        const FieldCut cut = pattern_cut(kBoard, normal, p, CurrentModel::paper, CutSpec{90.0, -90.0, 90.0, 0.05});
        std::size_t best = 0;
        for (std::size_t i = 1; i < cut.samples.size(); ++i)
            if (cut.samples[i].magnitude() > cut.samples[best].magnitude())
                best = i;
        CHECK(std::fabs(cut.thetas_deg[best] - 45.0) <= 0.05);
        for (std::size_t i = 1; i < cut.thetas_deg.size(); ++i)
            CHECK(cut.thetas_deg[i] > cut.thetas_deg[i - 1]);
    }

    SECTION("one-bit 45 degree cut has mirror lobes of equal height")
    {
        const PlaneWave normal{1.0, Direction{}};
        const ReflectionProfile q = quantize_profile(continuous_profile(kBoard, steer(0, 45)), 1);
        const FieldCut cut = pattern_cut(kBoard, normal, q, CurrentModel::paper, CutSpec{90.0, -90.0, 90.0, 0.05});
        double neg = 0.0, pos = 0.0;
        for (std::size_t i = 0; i < cut.samples.size(); ++i)
        {
            double &side = cut.thetas_deg[i] < 0 ? neg : pos;
            side = std::max(side, cut.samples[i].magnitude());
        }
        CHECK_THAT(neg, WithinRel(pos, 1e-9));
    }
}
