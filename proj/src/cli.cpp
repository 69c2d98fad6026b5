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

#include "risscope/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace risscope::cli
{

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// ------------------------------------------------------------------------
// Config blocks

RisGeometry GeometryBlock::build() const { return RisGeometry(m_count, n_count, pitch_x, pitch_y, frequency); }

SteeringConfig SteeringBlock::build() const
{
    return {cut_direction(deg2rad(theta_i_deg), deg2rad(phi_i_deg)),
            cut_direction(deg2rad(theta_d_deg), deg2rad(phi_d_deg))};
}

CutSpec SweepBlock::build() const { return {phi_plane_deg, theta_min_deg, theta_max_deg, step_deg}; }

TargetTrajectory TrajectoryBlock::build(const ScenePoint &ris_center) const
{
    if (kind == "pendulum")
        return pendulum_trajectory(ris_center, rest, arm_m, deg2rad(amplitude_deg), omega_rad_s, duration_s,
                                   sample_rate_hz, rcs_dbsm);
    if (kind == "linear")
        return linear_trajectory(start, velocity, duration_s, sample_rate_hz, rcs_dbsm);
    throw ConfigError("trajectory.kind", "expected 'pendulum' or 'linear', got '" + kind + "'");
}

namespace
{

void check_positive(double v, const std::string &path)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError(path, "must be positive");
}

void check_finite(double v, const std::string &path)
{
    if (!std::isfinite(v))
        throw ConfigError(path, "must be finite");
}

void check_theta(double v, const std::string &path)
{
    if (!(std::fabs(v) <= 90.0))
        throw ConfigError(path, "must lie in [-90, 90] degrees");
}

// True when the direction (theta, phi) lies in the signed cut of phi_plane.
bool in_plane(double theta_deg, double phi_deg, double phi_plane_deg)
{
    if (theta_deg == 0.0)
        return true;
    const double d = circular_distance(deg2rad(phi_deg), deg2rad(phi_plane_deg));
    return d < 1e-9 || std::fabs(d - kPi) < 1e-9;
}

} // namespace

void RunConfig::validate() const
{
    (void)current_model_from_string(model);
    (void)geometry.build();

    check_theta(steering.theta_i_deg, "steering.theta_i_deg");
    check_theta(steering.theta_d_deg, "steering.theta_d_deg");
    check_finite(steering.phi_i_deg, "steering.phi_i_deg");
    check_finite(steering.phi_d_deg, "steering.phi_d_deg");
    if (steering.bits < 0 || steering.bits > 16)
        throw ConfigError("steering.bits", "must be in [0, 16] (0 = continuous)");

    check_finite(sweep.phi_plane_deg, "sweep.phi_plane_deg");
    (void)sweep.build().thetas();
    if (!in_plane(steering.theta_i_deg, steering.phi_i_deg, sweep.phi_plane_deg))
        throw ConfigError("steering.phi_i_deg", "incident direction must lie in the sweep plane");
    if (!in_plane(steering.theta_d_deg, steering.phi_d_deg, sweep.phi_plane_deg))
        throw ConfigError("steering.phi_d_deg", "desired direction must lie in the sweep plane");

    if (output.directory.empty())
        throw ConfigError("output.directory", "must not be empty");

    if (link_budget)
    {
        const auto &b = *link_budget;
        if (b.wavelength)
            check_positive(*b.wavelength, "link_budget.wavelength");
        check_positive(b.r1, "link_budget.r1");
        check_positive(b.r2, "link_budget.r2");
        for (auto [v, path] : {std::pair{b.p_tx_dbm, "link_budget.p_tx_dbm"}, {b.g_a_dbi, "link_budget.g_a_dbi"},
                               {b.sigma_t_dbsm, "link_budget.sigma_t_dbsm"}, {b.n0_dbm, "link_budget.n0_dbm"}})
            check_finite(v, path);
    }
    if (scene)
    {
        scene->scene.validate();
        check_finite(scene->threshold_db, "scene.threshold_db");
    }
    if (trajectory)
    {
        const auto &t = *trajectory;
        if (t.kind != "pendulum" && t.kind != "linear")
            throw ConfigError("trajectory.kind", "expected 'pendulum' or 'linear', got '" + t.kind + "'");
        check_positive(t.sample_rate_hz, "trajectory.sample_rate_hz");
        check_positive(t.duration_s, "trajectory.duration_s");
        check_positive(t.arm_m, "trajectory.arm_m");
        check_positive(t.window_s, "trajectory.window_s");
        check_positive(t.hop_s, "trajectory.hop_s");
        check_finite(t.amplitude_deg, "trajectory.amplitude_deg");
        check_finite(t.omega_rad_s, "trajectory.omega_rad_s");
        check_finite(t.clutter_db, "trajectory.clutter_db");
    }
}

// ------------------------------------------------------------------------
// JSON

namespace
{

// Reads one JSON object, tracking which keys were consumed so leftovers can be rejected.
class Reader
{
  public:
    Reader(const json &j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(path_.empty() ? "config" : path_, "expected an object");
    }

    std::string at(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    const json *find(const std::string &key)
    {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void number(const std::string &key, double &out)
    {
        if (const json *v = find(key))
        {
            if (!v->is_number())
                throw ConfigError(at(key), "expected a number");
            out = v->get<double>();
        }
    }

    void number(const std::string &key, std::optional<double> &out)
    {
        if (const json *v = find(key))
        {
            if (!v->is_number())
                throw ConfigError(at(key), "expected a number");
            out = v->get<double>();
        }
    }

    void count(const std::string &key, std::size_t &out)
    {
        if (const json *v = find(key))
        {
            if (!v->is_number_integer() || v->get<long long>() < 1)
                throw ConfigError(at(key), "must be a positive integer");
            out = v->get<std::size_t>();
        }
    }

    void integer(const std::string &key, int &out)
    {
        if (const json *v = find(key))
        {
            if (!v->is_number_integer())
                throw ConfigError(at(key), "expected an integer");
            out = v->get<int>();
        }
    }

    void boolean(const std::string &key, bool &out)
    {
        if (const json *v = find(key))
        {
            if (!v->is_boolean())
                throw ConfigError(at(key), "expected true or false");
            out = v->get<bool>();
        }
    }

    void string(const std::string &key, std::string &out)
    {
        if (const json *v = find(key))
        {
            if (!v->is_string())
                throw ConfigError(at(key), "expected a string");
            out = v->get<std::string>();
        }
    }

    void point(const std::string &key, ScenePoint &out)
    {
        if (const json *v = find(key))
        {
            Reader r(*v, at(key));
            r.number("y", out.y);
            r.number("z", out.z);
            r.finish();
        }
    }

    void finish() const
    {
        for (const auto &[key, value] : j_.items())
            if (!seen_.contains(key))
                throw ConfigError(at(key), "unknown key");
    }

  private:
    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

ordered_json point_json(const ScenePoint &p) { return {{"y", p.y}, {"z", p.z}}; }

void read_scene(Reader &parent, SceneBlock &out)
{
    const json *v = parent.find("scene");
    if (!v)
        return;
    Reader r(*v, "scene");
    Scene &s = out.scene;
    r.point("radar", s.radar);
    r.point("ris_center", s.ris_center);
    if (const json *h = r.find("horn"))
    {
        Reader hr(*h, "scene.horn");
        hr.number("peak_dbi", s.horn.peak_dbi);
        hr.number("beamwidth_deg", s.horn.beamwidth_deg);
        hr.number("sidelobe_floor_db", s.horn.sidelobe_floor_db);
        hr.finish();
    }
    r.number("p_tx_dbm", s.p_tx_dbm);
    r.number("n0_dbm", s.n0_dbm);
    r.number("sigma_t_dbsm", s.sigma_t_dbsm);
    r.number("threshold_db", out.threshold_db);
    if (const json *t = r.find("targets"))
    {
        if (!t->is_array())
            throw ConfigError("scene.targets", "expected an array");
        s.targets.clear();
        for (std::size_t i = 0; i < t->size(); ++i)
        {
            Reader tr((*t)[i], "scene.targets[" + std::to_string(i) + "]");
            SceneTarget target;
            tr.string("label", target.label);
            tr.number("y", target.position.y);
            tr.number("z", target.position.z);
            tr.finish();
            s.targets.push_back(std::move(target));
        }
    }
    if (const json *sc = r.find("schedule_deg"))
    {
        if (!sc->is_object())
            throw ConfigError("scene.schedule_deg", "expected an object");
        s.schedule_deg.clear();
        for (const auto &[label, theta] : sc->items())
        {
            if (!theta.is_number())
                throw ConfigError("scene.schedule_deg." + label, "expected a number");
            s.schedule_deg[label] = theta.get<double>();
        }
    }
    r.finish();
}

} // namespace

RunConfig parse_config(const std::string &text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }

    RunConfig c;
    Reader root(j, "");
    root.string("model", c.model);
    if (const json *v = root.find("geometry"))
    {
        Reader r(*v, "geometry");
        r.count("m_count", c.geometry.m_count);
        r.count("n_count", c.geometry.n_count);
        r.number("pitch_x", c.geometry.pitch_x);
        r.number("pitch_y", c.geometry.pitch_y);
        r.number("frequency", c.geometry.frequency);
        r.finish();
    }
    if (const json *v = root.find("steering"))
    {
        Reader r(*v, "steering");
        r.number("theta_i_deg", c.steering.theta_i_deg);
        r.number("phi_i_deg", c.steering.phi_i_deg);
        r.number("theta_d_deg", c.steering.theta_d_deg);
        r.number("phi_d_deg", c.steering.phi_d_deg);
        r.integer("bits", c.steering.bits);
        r.finish();
    }
    if (const json *v = root.find("sweep"))
    {
        Reader r(*v, "sweep");
        r.number("phi_plane_deg", c.sweep.phi_plane_deg);
        r.number("theta_min_deg", c.sweep.theta_min_deg);
        r.number("theta_max_deg", c.sweep.theta_max_deg);
        r.number("step_deg", c.sweep.step_deg);
        r.finish();
    }
    if (const json *v = root.find("output"))
    {
        Reader r(*v, "output");
        r.string("directory", c.output.directory);
        r.boolean("csv", c.output.csv);
        r.boolean("json", c.output.json);
        r.finish();
    }
    if (const json *v = root.find("link_budget"))
    {
        Reader r(*v, "link_budget");
        LinkBudgetBlock b;
        r.number("p_tx_dbm", b.p_tx_dbm);
        r.number("g_a_dbi", b.g_a_dbi);
        r.number("sigma_f_dbsm", b.sigma_f_dbsm);
        r.number("sigma_b_dbsm", b.sigma_b_dbsm);
        r.number("sigma_t_dbsm", b.sigma_t_dbsm);
        r.number("wavelength", b.wavelength);
        r.number("r1", b.r1);
        r.number("r2", b.r2);
        r.number("n0_dbm", b.n0_dbm);
        r.finish();
        c.link_budget = b;
    }
    if (j.contains("scene"))
    {
        SceneBlock s;
        read_scene(root, s);
        c.scene = std::move(s);
    }
    if (const json *v = root.find("trajectory"))
    {
        Reader r(*v, "trajectory");
        TrajectoryBlock t;
        r.string("kind", t.kind);
        r.number("sample_rate_hz", t.sample_rate_hz);
        r.number("duration_s", t.duration_s);
        r.number("rcs_dbsm", t.rcs_dbsm);
        r.point("rest", t.rest);
        r.number("arm_m", t.arm_m);
        r.number("amplitude_deg", t.amplitude_deg);
        r.number("omega_rad_s", t.omega_rad_s);
        r.point("start", t.start);
        r.point("velocity", t.velocity);
        r.number("window_s", t.window_s);
        r.number("hop_s", t.hop_s);
        r.boolean("dc_filter", t.dc_filter);
        r.number("clutter_db", t.clutter_db);
        r.finish();
        c.trajectory = t;
    }
    root.finish();
    c.validate();
    return c;
}

RunConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot read '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const RunConfig &c)
{
    ordered_json j;
    j["model"] = c.model;
    j["geometry"] = {{"m_count", c.geometry.m_count},   {"n_count", c.geometry.n_count},
                     {"pitch_x", c.geometry.pitch_x},   {"pitch_y", c.geometry.pitch_y},
                     {"frequency", c.geometry.frequency}};
    j["steering"] = {{"theta_i_deg", c.steering.theta_i_deg}, {"phi_i_deg", c.steering.phi_i_deg},
                     {"theta_d_deg", c.steering.theta_d_deg}, {"phi_d_deg", c.steering.phi_d_deg},
                     {"bits", c.steering.bits}};
    j["sweep"] = {{"phi_plane_deg", c.sweep.phi_plane_deg},
                  {"theta_min_deg", c.sweep.theta_min_deg},
                  {"theta_max_deg", c.sweep.theta_max_deg},
                  {"step_deg", c.sweep.step_deg}};
    j["output"] = {{"directory", c.output.directory}, {"csv", c.output.csv}, {"json", c.output.json}};
    if (c.link_budget)
    {
        const auto &b = *c.link_budget;
        ordered_json lb;
        lb["p_tx_dbm"] = b.p_tx_dbm;
        lb["g_a_dbi"] = b.g_a_dbi;
        if (b.sigma_f_dbsm)
            lb["sigma_f_dbsm"] = *b.sigma_f_dbsm;
        if (b.sigma_b_dbsm)
            lb["sigma_b_dbsm"] = *b.sigma_b_dbsm;
        lb["sigma_t_dbsm"] = b.sigma_t_dbsm;
        if (b.wavelength)
            lb["wavelength"] = *b.wavelength;
        lb["r1"] = b.r1;
        lb["r2"] = b.r2;
        lb["n0_dbm"] = b.n0_dbm;
        j["link_budget"] = lb;
    }
    if (c.scene)
    {
        const Scene &s = c.scene->scene;
        ordered_json sj;
        sj["radar"] = point_json(s.radar);
        sj["ris_center"] = point_json(s.ris_center);
        sj["horn"] = {{"peak_dbi", s.horn.peak_dbi},
                      {"beamwidth_deg", s.horn.beamwidth_deg},
                      {"sidelobe_floor_db", s.horn.sidelobe_floor_db}};
        sj["p_tx_dbm"] = s.p_tx_dbm;
        sj["n0_dbm"] = s.n0_dbm;
        sj["sigma_t_dbsm"] = s.sigma_t_dbsm;
        sj["threshold_db"] = c.scene->threshold_db;
        ordered_json targets = ordered_json::array();
        for (const auto &t : s.targets)
            targets.push_back({{"label", t.label}, {"y", t.position.y}, {"z", t.position.z}});
        sj["targets"] = targets;
        ordered_json schedule = ordered_json::object();
        for (const auto &[label, theta] : s.schedule_deg)
            schedule[label] = theta;
        sj["schedule_deg"] = schedule;
        j["scene"] = sj;
    }
    if (c.trajectory)
    {
        const auto &t = *c.trajectory;
        j["trajectory"] = {{"kind", t.kind},
                           {"sample_rate_hz", t.sample_rate_hz},
                           {"duration_s", t.duration_s},
                           {"rcs_dbsm", t.rcs_dbsm},
                           {"rest", point_json(t.rest)},
                           {"arm_m", t.arm_m},
                           {"amplitude_deg", t.amplitude_deg},
                           {"omega_rad_s", t.omega_rad_s},
                           {"start", point_json(t.start)},
                           {"velocity", point_json(t.velocity)},
                           {"window_s", t.window_s},
                           {"hop_s", t.hop_s},
                           {"dc_filter", t.dc_filter},
                           {"clutter_db", t.clutter_db}};
    }
    return j.dump(2) + "\n";
}

RunConfig resolve(RunConfig config, const RunOptions &options)
{
    if (options.out_dir)
        config.output.directory = *options.out_dir;
    if (options.model)
        config.model = *options.model;
    if (options.step_deg)
        config.sweep.step_deg = *options.step_deg;
    config.validate();
    return config;
}

const std::vector<std::string> &subcommands()
{
    static const std::vector<std::string> names{"pattern", "metrics", "snr", "detect", "spectrogram"};
    return names;
}

const std::vector<std::string> &table_ids()
{
    static const std::vector<std::string> ids{"II", "III", "IV", "V", "VI", "VII", "fig3"};
    return ids;
}

// ------------------------------------------------------------------------
// Artifacts

namespace
{

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fixed(double v, int digits = 2)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

class Artifacts
{
  public:
    explicit Artifacts(const OutputBlock &out) : out_(out) {}

    void csv(const std::string &name, const std::string &content) const
    {
        if (out_.csv)
            write(name, content);
    }

    void json(const std::string &name, const ordered_json &content) const
    {
        if (out_.json)
            write(name, content.dump(2) + "\n");
    }

  private:
    void write(const std::string &name, const std::string &content) const
    {
        const std::filesystem::path dir(out_.directory);
        std::filesystem::create_directories(dir);
        const auto path = dir / name;
        std::ofstream f(path, std::ios::binary);
        f << content;
        if (!f)
            throw std::runtime_error("cannot write '" + path.string() + "'");
    }

    OutputBlock out_;
};

ReflectionProfile build_profile(const RisGeometry &geom, const SteeringConfig &steer, int bits)
{
    ReflectionProfile p = continuous_profile(geom, steer);
    return bits > 0 ? quantize_profile(p, bits) : p;
}

ordered_json metrics_key(const RunConfig &c)
{
    return {{"theta_i_deg", c.steering.theta_i_deg}, {"theta_d_deg", c.steering.theta_d_deg},
            {"bits", c.steering.bits},               {"m_count", c.geometry.m_count},
            {"n_count", c.geometry.n_count}};
}

int cmd_pattern(const RunConfig &c, std::ostream &out)
{
    const RisGeometry geom = c.geometry.build();
    const SteeringConfig steer = c.steering.build();
    const CutSpec spec = c.sweep.build();
    const CurrentModel model = current_model_from_string(c.model);
    const ReflectionProfile profile = build_profile(geom, steer, c.steering.bits);
    const PlaneWave wave{1.0, steer.incident};

    const FieldCut field = pattern_cut(geom, wave, profile, model, spec);
    PatternCut cut;
    cut.phi_plane_deg = spec.phi_plane_deg;
    cut.thetas_deg = field.thetas_deg;
    for (const auto &s : field.samples)
        cut.rcs_dbsm.push_back(rcs_from_field(s, wave));
    cut.design_theta_deg = c.steering.theta_d_deg;
    cut.peak = refine_peak(cut.thetas_deg, cut.rcs_dbsm, 0, cut.thetas_deg.size() - 1);
    const Peak lobe = main_lobe(cut, c.steering.theta_d_deg);

    std::string fcsv = "theta_deg,e_theta_re,e_theta_im,e_phi_re,e_phi_im,magnitude\n";
    std::string rcsv = "theta_deg,rcs_dbsm\n";
    for (std::size_t k = 0; k < field.samples.size(); ++k)
    {
        const auto &s = field.samples[k];
        fcsv += num(field.thetas_deg[k]) + "," + num(s.e_theta.real()) + "," + num(s.e_theta.imag()) + "," +
                num(s.e_phi.real()) + "," + num(s.e_phi.imag()) + "," + num(s.magnitude()) + "\n";
        rcsv += num(cut.thetas_deg[k]) + "," + num(cut.rcs_dbsm[k]) + "\n";
    }

    const Artifacts art(c.output);
    art.csv("pattern_field.csv", fcsv);
    art.csv("pattern_rcs.csv", rcsv);
    art.json("pattern.json", {{"key", metrics_key(c)},
                              {"model", c.model},
                              {"phi_plane_deg", spec.phi_plane_deg},
                              {"samples", cut.thetas_deg.size()},
                              {"main_lobe", {{"theta_deg", lobe.theta_deg}, {"rcs_dbsm", lobe.value_dbsm}}},
                              {"global_peak", {{"theta_deg", cut.peak.theta_deg}, {"rcs_dbsm", cut.peak.value_dbsm}}}});

    out << "pattern: main lobe " << fixed(lobe.value_dbsm) << " dBsm at " << fixed(lobe.theta_deg) << " deg ("
        << cut.thetas_deg.size() << " samples, phi " << num(spec.phi_plane_deg) << " deg)\n";
    return exit_ok;
}

int cmd_metrics(const RunConfig &c, std::ostream &out)
{
    const RisGeometry geom = c.geometry.build();
    const SteeringConfig steer = c.steering.build();
    const RcsMetrics m = compute_metrics(geom, steer, build_profile(geom, steer, c.steering.bits), c.sweep.build(),
                                         current_model_from_string(c.model));
    Artifacts(c.output).json("metrics.json", {{"key", metrics_key(c)},
                                              {"model", c.model},
                                              {"sigma_f", m.sigma_f_peak},
                                              {"sigma_b", m.sigma_b_peak},
                                              {"squint_deg", m.beam_squint},
                                              {"pslr_db", m.pslr},
                                              {"pslr_backward_db", m.pslr_backward},
                                              {"monostatic_dbsm", m.monostatic},
                                              {"realized_theta_deg", m.realized_theta_deg}});
    out << "metrics: sigma_f " << fixed(m.sigma_f_peak) << " dBsm, sigma_b " << fixed(m.sigma_b_peak)
        << " dBsm, squint " << fixed(m.beam_squint) << " deg, pslr " << fixed(m.pslr) << " dB\n";
    return exit_ok;
}

int cmd_snr(const RunConfig &c, std::ostream &out)
{
    const LinkBudgetBlock blk = c.link_budget.value_or(LinkBudgetBlock{});
    const RisGeometry geom = c.geometry.build();
    LinkBudget b;
    b.p_tx_dbm = blk.p_tx_dbm;
    b.g_a_dbi = blk.g_a_dbi;
    b.sigma_t_dbsm = blk.sigma_t_dbsm;
    b.wavelength = blk.wavelength.value_or(geom.wavelength());
    b.r1 = blk.r1;
    b.r2 = blk.r2;
    b.n0_dbm = blk.n0_dbm;
    if (blk.sigma_f_dbsm && blk.sigma_b_dbsm)
    {
        b.sigma_f_dbsm = *blk.sigma_f_dbsm;
        b.sigma_b_dbsm = *blk.sigma_b_dbsm;
    }
    else
    {
        const SteeringConfig steer = c.steering.build();
        const RcsMetrics m = compute_metrics(geom, steer, build_profile(geom, steer, c.steering.bits),
                                             c.sweep.build(), current_model_from_string(c.model));
        b.sigma_f_dbsm = blk.sigma_f_dbsm.value_or(m.sigma_f_peak);
        b.sigma_b_dbsm = blk.sigma_b_dbsm.value_or(m.sigma_b_peak);
    }
    const double snr = snr_db(b);
    Artifacts(c.output).json("snr.json", {{"p_tx_dbm", b.p_tx_dbm},
                                          {"g_a_dbi", b.g_a_dbi},
                                          {"sigma_f_dbsm", b.sigma_f_dbsm},
                                          {"sigma_b_dbsm", b.sigma_b_dbsm},
                                          {"sigma_t_dbsm", b.sigma_t_dbsm},
                                          {"wavelength", b.wavelength},
                                          {"r1", b.r1},
                                          {"r2", b.r2},
                                          {"n0_dbm", b.n0_dbm},
                                          {"snr_db", snr}});
    out << "snr: " << fixed(snr) << " dB\n";
    return exit_ok;
}

ordered_json report_json(const DetectionReport &r)
{
    ordered_json counts = ordered_json::object();
    for (const auto &[label, n] : r.counts)
        counts[label] = n;
    ordered_json targets = ordered_json::array();
    for (const auto &t : r.targets)
        targets.push_back({{"index", t.index},
                           {"label", t.label},
                           {"y", t.position.y},
                           {"z", t.position.z},
                           {"angle_deg", t.angle_deg},
                           {"r1", t.r1},
                           {"r2", t.r2},
                           {"gain_dbi", t.gain_dbi},
                           {"sigma_f_dbsm", t.sigma_f_dbsm},
                           {"sigma_b_dbsm", t.sigma_b_dbsm},
                           {"snr_db", t.snr_db},
                           {"detected", t.detected}});
    return {{"ris_enabled", r.ris_enabled}, {"threshold_db", r.threshold_db}, {"total", r.total},
            {"counts", counts},             {"targets", targets}};
}

std::string counts_text(const DetectionReport &r)
{
    std::string s;
    for (const auto &[label, n] : r.counts)
        s += (s.empty() ? "" : ", ") + label + " " + std::to_string(n);
    return s;
}

int cmd_detect(const RunConfig &c, std::ostream &out)
{
    const SceneBlock sb = c.scene.value_or(SceneBlock{});
    const RisGeometry geom = c.geometry.build();
    const CurrentModel model = current_model_from_string(c.model);
    const DetectionReport with = detection_scan(sb.scene, geom, c.steering.bits, sb.threshold_db, model);
    const DetectionReport without = detection_scan_without_ris(sb.scene, geom.wavelength(), sb.threshold_db);

    std::string csv = "index,label,y,z,angle_deg,r2,sigma_f_dbsm,sigma_b_dbsm,snr_ris_db,detected_ris,snr_direct_db,"
                      "detected_direct\n";
    for (std::size_t i = 0; i < with.targets.size(); ++i)
    {
        const auto &a = with.targets[i];
        const auto &b = without.targets[i];
        csv += std::to_string(a.index) + "," + a.label + "," + num(a.position.y) + "," + num(a.position.z) + "," +
               num(a.angle_deg) + "," + num(a.r2) + "," + num(a.sigma_f_dbsm) + "," + num(a.sigma_b_dbsm) + "," +
               num(a.snr_db) + "," + (a.detected ? "1" : "0") + "," + num(b.snr_db) + "," +
               (b.detected ? "1" : "0") + "\n";
    }
    const Artifacts art(c.output);
    art.csv("detection.csv", csv);
    art.json("detection.json", {{"model", c.model},
                                {"m_count", c.geometry.m_count},
                                {"n_count", c.geometry.n_count},
                                {"bits", c.steering.bits},
                                {"with_ris", report_json(with)},
                                {"without_ris", report_json(without)}});
    out << "detect: " << with.total << "/" << with.targets.size() << " detected with RIS (" << counts_text(with)
        << "), " << without.total << "/" << without.targets.size() << " without RIS\n";
    return exit_ok;
}

int cmd_spectrogram(const RunConfig &c, std::ostream &out)
{
    const TrajectoryBlock tb = c.trajectory.value_or(TrajectoryBlock{});
    const SceneBlock sb = c.scene.value_or(SceneBlock{});
    const RisGeometry geom = c.geometry.build();
    const SteeringConfig steer = c.steering.build();
    const ReflectionProfile profile = build_profile(geom, steer, c.steering.bits);

    EchoConfig echo;
    echo.radar = sb.scene.radar;
    echo.ris_center = sb.scene.ris_center;
    echo.p_tx_dbm = sb.scene.p_tx_dbm;
    echo.g_a_dbi = sb.scene.horn.gain(rad2deg(std::atan2(std::fabs(sb.scene.ris_center.y - sb.scene.radar.y),
                                                         sb.scene.radar.z - sb.scene.ris_center.z)));
    echo.n0_dbm = sb.scene.n0_dbm;
    echo.clutter_db = tb.clutter_db;
    echo.model = current_model_from_string(c.model);

    const TargetTrajectory traj = tb.build(sb.scene.ris_center);
    const auto signal = synthesize_echo(traj, geom, profile, echo);
    const Spectrogram sg = stft_spectrogram(signal, traj.sample_rate_hz, tb.window_s, tb.hop_s, tb.dc_filter);

    double peak = 0.0;
    for (std::size_t f = 0; f < sg.times.size(); ++f)
        peak = std::max(peak, std::fabs(sg.peak_frequency(f)));

    std::string csv = "t,f,dB\n";
    for (std::size_t f = 0; f < sg.times.size(); ++f)
        for (std::size_t k = 0; k < sg.frequencies.size(); ++k)
            csv += num(sg.times[f]) + "," + num(sg.frequencies[k]) + "," + num(sg.magnitudes_db(f, k)) + "\n";
    const Artifacts art(c.output);
    art.csv("spectrogram.csv", csv);
    art.json("spectrogram.json", {{"trajectory", tb.kind},
                                  {"sample_rate_hz", sg.sample_rate_hz},
                                  {"window_s", sg.window_s},
                                  {"hop_s", sg.hop_s},
                                  {"window_samples", sg.window_samples},
                                  {"hop_samples", sg.hop_samples},
                                  {"window", "hann"},
                                  {"dc_filter", sg.dc_filtered},
                                  {"frames", sg.times.size()},
                                  {"bins", sg.frequencies.size()},
                                  {"peak_doppler_hz", peak}});
    out << "spectrogram: " << sg.times.size() << " frames x " << sg.frequencies.size() << " bins, max |Doppler| "
        << fixed(peak, 1) << " Hz\n";
    return exit_ok;
}

// ------------------------------------------------------------------------
// Reference tables

struct Cell
{
    std::string row;
    std::string column;
    double computed = 0.0;
    std::optional<double> reference;
    std::optional<double> tolerance; // pinned when set

    bool pinned() const { return reference && tolerance; }
    bool pass() const { return !pinned() || std::fabs(computed - *reference) <= *tolerance + 1e-9; }
};

struct Table
{
    std::string id;
    std::string title;
    std::vector<Cell> cells;
};

std::string angle_label(double ti, double td)
{
    return "(" + num(ti) + ";" + num(td) + ")";
}

std::string quant_label(int bits) { return bits == 0 ? "cont" : std::to_string(bits) + "-bit"; }

struct Canon
{
    CurrentModel model;
    CutSpec cut;

    RcsMetrics metrics(std::size_t n_count, double ti, double td, int bits) const
    {
        const RisGeometry geom(10, n_count, 0.016, 0.016, 5.5e9);
        const SteeringConfig steer{cut_direction(deg2rad(ti), kPi / 2), cut_direction(deg2rad(td), kPi / 2)};
        return compute_metrics(geom, steer, build_profile(geom, steer, bits), cut, model);
    }
};

constexpr int kQuant[] = {0, 3, 2, 1};

Table table_ii(const Canon &k)
{
    struct Row
    {
        double ti, td;
        double ref[8]; // (sigma_f, sigma_b) for cont, 3, 2, 1 bit
    };
    const Row rows[] = {{0, 0, {8.5, 8.5, 8.5, 8.5, 8.5, 8.5, 8.5, 8.5}},
                        {0, 15, {8.5, 2.9, 8.2, 2.7, 7.5, 2.3, 4.9, 4.7}},
                        {0, 30, {8.5, 1.4, 8.2, 1.4, 7.6, 0.9, 4.0, 3.3}},
                        {0, 45, {8.5, -0.1, 8.3, -0.5, 7.5, -1.4, 3.5, 1.8}},
                        {-30, 0, {1.4, 8.5, 1.4, 8.2, 1.2, 6.0, 4.0, 4.6}},
                        {-30, 15, {1.4, 2.9, 1.1, 2.6, 0.9, 1.1, -1.0, -1.1}},
                        {-30, 30, {1.4, 1.4, 1.4, 1.4, 0.9, 1.2, -0.8, -0.8}},
                        {-30, 45, {1.4, -0.1, 0.9, -0.1, -0.2, 0.1, -7.6, -6.9}}};
    Table t{"II", "Bistatic RCS {sigma_f, sigma_b} (dBsm), [16x10]", {}};
    for (const Row &r : rows)
    {
        for (int q = 0; q < 4; ++q)
        {
            const int bits = kQuant[q];
            const RcsMetrics m = k.metrics(16, r.ti, r.td, bits);
            std::optional<double> tol_f;
            std::optional<double> tol_b;
            if (r.ti == 0.0)
                tol_f = bits == 0 || r.td == 0.0 ? 0.1 : 0.5;
            if (r.ti == 0.0 && r.td == 0.0)
                tol_b = 0.1;
            t.cells.push_back({angle_label(r.ti, r.td), quant_label(bits) + " sigma_f", m.sigma_f_peak, r.ref[2 * q], tol_f});
            t.cells.push_back({angle_label(r.ti, r.td), quant_label(bits) + " sigma_b", m.sigma_b_peak, r.ref[2 * q + 1], tol_b});
        }
    }
    return t;
}

Table table_iii(const Canon &k)
{
    const double ref[3][8] = {{15.6, 11.2, 15.1, 10.9, 20.2, 7.1, 8.6, 13.5},
                              {18.1, 14.1, 18.5, 10.8, 13.2, 4.7, 14.2, 16.1},
                              {21.2, 16.1, 20.2, 15.8, 20.1, 12.3, 14.5, 18.9}};
    Table t{"III", "Peak-to-specular ratio (dB), forward (F) and backward (B), [16x10]", {}};
    const double tds[] = {15, 30, 45};
    for (int i = 0; i < 3; ++i)
    {
        for (int q = 0; q < 4; ++q)
        {
            const RcsMetrics m = k.metrics(16, 0, tds[i], kQuant[q]);
            const std::string row = angle_label(0, tds[i]);
            t.cells.push_back({row, quant_label(kQuant[q]) + " F", m.pslr, ref[i][2 * q], 0.5});
            t.cells.push_back({row, quant_label(kQuant[q]) + " B", m.pslr_backward, ref[i][2 * q + 1], std::nullopt});
        }
    }
    return t;
}

Table table_iv(const Canon &k)
{
    struct Row
    {
        double ti, td;
        double ref[6]; // (sigma_f, sigma_b) for 8, 16, 32 cells
    };
    const Row rows[] = {{0, 0, {2.4, 2.4, 8.5, 8.5, 14.5, 14.5}},       {0, 15, {-0.5, -0.9, 4.9, 4.7, 10.5, 10.1}},
                        {0, 30, {-0.7, -2.0, 4.0, 3.3, 10.7, 9.5}},     {0, 45, {-0.8, -4.1, 3.5, 1.8, 10.7, 7.6}},
                        {-30, 0, {-2.0, -0.7, 4.0, 4.6, 9.5, 10.7}},    {-30, 15, {-5.0, -4.0, -1.0, -1.1, 3.8, 4.7}},
                        {-30, 30, {-5.4, -5.4, -0.8, -0.8, 4.2, 4.2}},  {-30, 45, {-8.6, -10.4, -7.6, -6.9, 0.8, -0.8}}};
    const std::size_t sizes[] = {8, 16, 32};
    Table t{"IV", "Bistatic 1-bit RCS {sigma_f, sigma_b} (dBsm) for [8x10], [16x10], [32x10]", {}};
    for (const Row &r : rows)
    {
        for (int s = 0; s < 3; ++s)
        {
            const RcsMetrics m = k.metrics(sizes[s], r.ti, r.td, 1);
            const std::optional<double> tol = r.ti == 0.0 && r.td == 0.0 ? std::optional<double>(0.1) : std::nullopt;
            const std::string size = "[" + std::to_string(sizes[s]) + "x10]";
            t.cells.push_back({angle_label(r.ti, r.td), size + " sigma_f", m.sigma_f_peak, r.ref[2 * s], tol});
            t.cells.push_back({angle_label(r.ti, r.td), size + " sigma_b", m.sigma_b_peak, r.ref[2 * s + 1], tol});
        }
    }
    return t;
}

Table table_v(const Canon &k)
{
    const double ref[3][2] = {{15.3, 0.3}, {29.6, 0.4}, {44.7, 0.3}};
    const double tds[] = {15, 30, 45};
    Table t{"V", "Beam squint, 1-bit [16x10], theta_i = 0", {}};
    for (int i = 0; i < 3; ++i)
    {
        const RcsMetrics m = k.metrics(16, 0, tds[i], 1);
        const std::string row = angle_label(0, tds[i]);
        t.cells.push_back({row, "theta_d' (deg)", m.realized_theta_deg, ref[i][0], 0.2});
        t.cells.push_back({row, "error (deg)", m.beam_squint, ref[i][1], 0.2});
    }
    return t;
}

Table table_vi(const Canon &k)
{
    const double ref[] = {8.6, 14.2, 14.5};
    const double tds[] = {15, 30, 45};
    Table t{"VI", "Peak-to-specular ratio (dB), 1-bit [16x10], theta_i = 0", {}};
    for (int i = 0; i < 3; ++i)
        t.cells.push_back({angle_label(0, tds[i]), "pslr (dB)", k.metrics(16, 0, tds[i], 1).pslr, ref[i], 0.5});
    return t;
}

Table table_vii(const Canon &k)
{
    const double ref[] = {8.5, -3.5, -9.5, -9.6};
    const double tds[] = {0, 15, 30, 45};
    Table t{"VII", "Monostatic RCS (dBsm), 1-bit [16x10], theta_i = 0", {}};
    for (int i = 0; i < 4; ++i)
    {
        const RisGeometry geom(10, 16, 0.016, 0.016, 5.5e9);
        const SteeringConfig steer{Direction{}, cut_direction(deg2rad(tds[i]), kPi / 2)};
        const double mono = monostatic_rcs(geom, build_profile(geom, steer, 1), k.model);
        t.cells.push_back({angle_label(0, tds[i]), "monostatic (dBsm)", mono, ref[i], 0.5});
    }
    return t;
}

Table table_fig3(const Canon &k)
{
    Table t{"fig3", "SNR (dB): P_tx 0 dBm, G_a 12 dBi, sigma_t 1 dBsm, r1 = r2 = 3 m, N0 -105 dBm", {}};
    const std::size_t sizes[] = {8, 16, 32};
    const double tds[] = {15, 30, 45};
    for (const int bits : kQuant)
    {
        for (const double td : tds)
        {
            for (const std::size_t n : sizes)
            {
                const RcsMetrics m = k.metrics(n, 0, td, bits);
                LinkBudget b{0.0, 12.0, m.sigma_f_peak, m.sigma_b_peak, 1.0, kSpeedOfLight / 5.5e9, 3.0, 3.0, -105.0};
                t.cells.push_back({quant_label(bits) + " " + angle_label(0, td), "[" + std::to_string(n) + "x10]",
                                   snr_db(b), std::nullopt, std::nullopt});
            }
        }
    }
    return t;
}

void print_table(const Table &t, std::ostream &out)
{
    out << "Table " << t.id << ": " << t.title << "\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-14s %-18s %10s %10s %8s %6s  %s\n", "row", "column", "computed", "reference",
                  "delta", "tol", "status");
    out << line;
    for (const Cell &c : t.cells)
    {
        const std::string ref = c.reference ? fixed(*c.reference) : "-";
        const std::string delta = c.reference ? fixed(c.computed - *c.reference) : "-";
        const std::string tol = c.tolerance ? fixed(*c.tolerance) : "-";
        const char *status = !c.pinned() ? "info" : (c.pass() ? "ok" : "MISMATCH");
        std::snprintf(line, sizeof line, "%-14s %-18s %10s %10s %8s %6s  %s\n", c.row.c_str(), c.column.c_str(),
                      fixed(c.computed).c_str(), ref.c_str(), delta.c_str(), tol.c_str(), status);
        out << line;
    }
}

ordered_json table_json(const Table &t, const std::string &model)
{
    ordered_json cells = ordered_json::array();
    for (const Cell &c : t.cells)
    {
        ordered_json j = {{"row", c.row}, {"column", c.column}, {"computed", c.computed}};
        j["reference"] = c.reference ? ordered_json(*c.reference) : ordered_json(nullptr);
        j["delta"] = c.reference ? ordered_json(c.computed - *c.reference) : ordered_json(nullptr);
        j["tolerance"] = c.tolerance ? ordered_json(*c.tolerance) : ordered_json(nullptr);
        j["pinned"] = c.pinned();
        j["pass"] = c.pass();
        cells.push_back(j);
    }
    return {{"table", t.id}, {"title", t.title}, {"model", model}, {"cells", cells}};
}

template <typename F>
int guarded(std::ostream &err, F &&body)
{
    try
    {
        return body();
    }
    catch (const ConfigError &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_runtime_error;
    }
}

} // namespace

int run(const std::string &subcommand, const RunConfig &config, const RunOptions &options, std::ostream &out,
        std::ostream &err)
{
    return guarded(err, [&] {
        const RunConfig c = resolve(config, options);
        if (subcommand == "pattern")
            return cmd_pattern(c, out);
        if (subcommand == "metrics")
            return cmd_metrics(c, out);
        if (subcommand == "snr")
            return cmd_snr(c, out);
        if (subcommand == "detect")
            return cmd_detect(c, out);
        if (subcommand == "spectrogram")
            return cmd_spectrogram(c, out);
        throw ConfigError("subcommand", "unknown subcommand '" + subcommand + "'");
    });
}

int reproduce(const std::string &table_id, const RunConfig &config, const RunOptions &options, std::ostream &out,
              std::ostream &err)
{
    return guarded(err, [&] {
        const auto &ids = table_ids();
        if (std::find(ids.begin(), ids.end(), table_id) == ids.end())
            throw ConfigError("table", "unknown table id '" + table_id + "' (expected II, III, IV, V, VI, VII or fig3)");

        const RunConfig c = resolve(config, options);
        const Canon canon{current_model_from_string(c.model), CutSpec{90.0, -90.0, 90.0, c.sweep.step_deg}};
        Table t;
        if (table_id == "II")
            t = table_ii(canon);
        else if (table_id == "III")
            t = table_iii(canon);
        else if (table_id == "IV")
            t = table_iv(canon);
        else if (table_id == "V")
            t = table_v(canon);
        else if (table_id == "VI")
            t = table_vi(canon);
        else if (table_id == "VII")
            t = table_vii(canon);
        else
            t = table_fig3(canon);

        print_table(t, out);
        Artifacts(c.output).json("reproduce_" + table_id + ".json", table_json(t, c.model));

        const auto pinned = std::count_if(t.cells.begin(), t.cells.end(), [](const Cell &x) { return x.pinned(); });
        const auto passed =
            std::count_if(t.cells.begin(), t.cells.end(), [](const Cell &x) { return x.pinned() && x.pass(); });
        out << "reproduce " << table_id << ": " << passed << "/" << pinned << " pinned cells within tolerance\n";
        return passed == pinned ? exit_ok : exit_mismatch;
    });
}

} // namespace risscope::cli
