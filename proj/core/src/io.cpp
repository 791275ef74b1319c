// SPDX-License-Identifier: Apache-2.0
//
// sixdma - simulation library for base stations with six-dimensional movable antennas
// Copyright (C) 2026 The sixdma authors
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

#include "sixdma/io.hpp"

#include "sixdma/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sixdma
{
    using json = nlohmann::json;

    std::string format_number(double value)
    {
        if (std::isnan(value))
            return "nan";
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), value);
        return std::string(buf, res.ptr);
    }

    std::vector<std::string> metrics_columns()
    {
        return {"detection_error_rate",
                "miss_rate",
                "false_alarm_rate",
                "detection_error_rate_full",
                "nmse_p",
                "nmse_c",
                "nmse_c_plain",
                "sum_rate",
                "sum_rate_rms",
                "sum_rate_ergodic",
                "pso_repaired",
                "empty_support_users"};
    }

    std::vector<double> metric_values(const MetricsReport &r)
    {
        return {r.detection_error_rate,
                r.miss_rate,
                r.false_alarm_rate,
                r.detection_error_rate_full,
                r.nmse_p,
                r.nmse_c,
                r.nmse_c_plain,
                r.sum_rate,
                r.sum_rate_rms,
                r.sum_rate_ergodic,
                static_cast<double>(r.pso_repaired),
                static_cast<double>(r.empty_support_users)};
    }

    std::string metrics_csv(const std::vector<std::pair<std::uint64_t, MetricsReport>> &rows)
    {
        std::ostringstream os;
        os << "version,seed";
        for (const auto &c : metrics_columns())
            os << ',' << c;
        os << '\n';
        for (const auto &[seed, report] : rows)
        {
            os << csv_schema_version << ',' << seed;
            for (double v : metric_values(report))
                os << ',' << format_number(v);
            os << '\n';
        }
        return os.str();
    }

    namespace
    {
        template <typename Matrix>
        std::string matrix_csv_impl(const Matrix &values, const std::vector<std::size_t> &poses)
        {
            if (!poses.empty() && poses.size() != static_cast<std::size_t>(values.rows()))
                throw ShapeMismatch("matrix_csv: " + std::to_string(poses.size()) + " labels for " +
                                    std::to_string(values.rows()) + " rows");
            std::ostringstream os;
            os << "pose";
            for (Eigen::Index k = 0; k < values.cols(); ++k)
                os << ",user_" << k;
            os << '\n';
            for (Eigen::Index m = 0; m < values.rows(); ++m)
            {
                os << (poses.empty() ? static_cast<std::size_t>(m) : poses[static_cast<std::size_t>(m)]);
                for (Eigen::Index k = 0; k < values.cols(); ++k)
                    os << ',' << format_number(static_cast<double>(values(m, k)));
                os << '\n';
            }
            return os.str();
        }

        std::vector<std::string> split(const std::string &line, char sep)
        {
            std::vector<std::string> out;
            std::string item;
            std::istringstream is(line);
            while (std::getline(is, item, sep))
                out.push_back(item);
            if (!line.empty() && line.back() == sep)
                out.emplace_back();
            return out;
        }

        double parse_double(const std::string &s)
        {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size())
                throw std::invalid_argument("not a number: '" + s + "'");
            return v;
        }
    }

    std::string matrix_csv(const RMatrix &values, const std::vector<std::size_t> &poses)
    {
        return matrix_csv_impl(values, poses);
    }

    std::string matrix_csv(const IndicatorMatrix &values, const std::vector<std::size_t> &poses)
    {
        return matrix_csv_impl(values, poses);
    }

    RMatrix read_matrix_csv(const std::string &text, std::vector<std::size_t> *poses)
    {
        std::istringstream is(text);
        std::string line;
        if (!std::getline(is, line))
            throw std::invalid_argument("read_matrix_csv: empty input");
        const auto header = split(line, ',');
        if (header.empty() || header[0] != "pose")
            throw std::invalid_argument("read_matrix_csv: first column must be 'pose'");
        const auto K = static_cast<Eigen::Index>(header.size() - 1);

        std::vector<std::vector<double>> rows;
        std::vector<std::size_t> labels;
        while (std::getline(is, line))
        {
            if (line.empty())
                continue;
            const auto cells = split(line, ',');
            if (static_cast<Eigen::Index>(cells.size()) != K + 1)
                throw ShapeMismatch("read_matrix_csv: row " + std::to_string(rows.size() + 1) + " has " +
                                    std::to_string(cells.size()) + " cells, expected " + std::to_string(K + 1));
            labels.push_back(static_cast<std::size_t>(std::stoull(cells[0])));
            std::vector<double> row;
            for (std::size_t i = 1; i < cells.size(); ++i)
                row.push_back(parse_double(cells[i]));
            rows.push_back(std::move(row));
        }
        RMatrix out(static_cast<Eigen::Index>(rows.size()), K);
        for (std::size_t m = 0; m < rows.size(); ++m)
            for (Eigen::Index k = 0; k < K; ++k)
                out(static_cast<Eigen::Index>(m), k) = rows[m][static_cast<std::size_t>(k)];
        if (poses)
            *poses = std::move(labels);
        return out;
    }

    std::string trace_csv(const std::vector<double> &trace)
    {
        std::ostringstream os;
        os << "iteration,gbest_fitness\n";
        for (std::size_t t = 0; t < trace.size(); ++t)
            os << t << ',' << format_number(trace[t]) << '\n';
        return os.str();
    }

    std::string channel_csv(const CMatrix &H, const std::vector<std::size_t> &poses, std::size_t N)
    {
        if (H.rows() != static_cast<Eigen::Index>(poses.size() * N))
            throw ShapeMismatch("channel_csv: channel rows do not match poses x antennas");
        std::ostringstream os;
        os << "pose,user,antenna,real,imag\n";
        for (std::size_t b = 0; b < poses.size(); ++b)
            for (Eigen::Index k = 0; k < H.cols(); ++k)
                for (std::size_t n = 0; n < N; ++n)
                {
                    const cplx v = H(static_cast<Eigen::Index>(b * N + n), k);
                    os << poses[b] << ',' << k << ',' << n << ',' << format_number(v.real()) << ','
                       << format_number(v.imag()) << '\n';
                }
        return os.str();
    }

    std::string sweep_csv(const SweepResult &result)
    {
        std::ostringstream os;
        os << "version,axis,value,seed";
        for (const auto &c : metrics_columns())
            os << ',' << c;
        os << '\n';
        for (const auto &row : result.rows)
        {
            os << csv_schema_version << ',' << to_string(result.axis) << ',' << format_number(row.value) << ','
               << row.seed;
            for (double v : metric_values(row.metrics))
                os << ',' << format_number(v);
            os << '\n';
        }
        return os.str();
    }

    std::string sweep_summary_csv(SweepAxis axis, const std::vector<SummaryRow> &rows)
    {
        std::ostringstream os;
        os << "version,axis,value,quantity,algorithm,column,mean,std,std_error,seeds\n";
        for (const auto &r : rows)
            os << csv_schema_version << ',' << to_string(axis) << ',' << format_number(r.value) << ',' << r.quantity
               << ',' << r.algorithm << ',' << r.column << ',' << format_number(r.mean) << ','
               << format_number(r.std) << ',' << format_number(r.std_error) << ',' << r.count << '\n';
        return os.str();
    }

    std::string report_text(const ProtocolOutcome &o, const ExperimentConfig &config)
    {
        std::ostringstream os;
        os << "sixdma run report\n";
        os << "seed: " << o.seed << '\n';
        os << "stages: " << o.stages << '\n';
        os << "candidates: " << config.grid.candidates << ", sampled: " << config.grid.sampled
           << ", surfaces: " << config.grid.surfaces << ", antennas: " << config.grid.antennas
           << ", users: " << o.P.cols() << '\n';
        os << "noise_power: " << format_number(o.noise_power) << '\n';

        os << "\n[timings_seconds]\n";
        os << "statistical: " << format_number(o.timings.statistical) << '\n';
        os << "placement: " << format_number(o.timings.placement) << '\n';
        os << "instantaneous: " << format_number(o.timings.instantaneous) << '\n';

        os << "\n[metrics]\n";
        const auto names = metrics_columns();
        const auto values = metric_values(o.metrics);
        for (std::size_t i = 0; i < names.size(); ++i)
            os << names[i] << ": " << format_number(values[i]) << '\n';

        os << "\n[stage_1]\n";
        os << "pose,group,final_nll,updates\n";
        const std::size_t per_group = config.grid.sampled / config.grid.surfaces;
        for (std::size_t i = 0; i < o.estimates.size(); ++i)
            os << o.estimates[i].pose << ',' << i / per_group << ',' << format_number(o.estimates[i].nll) << ','
               << o.estimates[i].updates << '\n';
        os << "empty_support_users:";
        for (auto k : o.reconstruction.empty_support_users)
            os << ' ' << k;
        os << '\n';

        if (o.stages >= 2)
        {
            os << "\n[stage_2]\n";
            os << "selected_poses:";
            for (auto m : selected_indices(o.pso.selection))
                os << ' ' << m;
            os << '\n';
            os << "rms_poses:";
            for (auto m : selected_indices(o.rms_selection))
                os << ' ' << m;
            os << '\n';
            os << "penalty_weight: " << format_number(o.pso.penalty_weight) << '\n';
            os << "repaired: " << (o.pso.repaired ? "yes" : "no") << '\n';
            os << "final_gbest_fitness: " << format_number(o.pso.trace.empty() ? std::nan("") : o.pso.trace.back())
               << '\n';
        }
        return os.str();
    }

    // ------------------------------------------------------------------------ JSON

    namespace
    {
        void reject_unknown(const json &j, const std::set<std::string> &allowed, const std::string &where)
        {
            if (!j.is_object())
                throw std::invalid_argument("config: '" + where + "' must be an object");
            for (const auto &item : j.items())
                if (!allowed.count(item.key()))
                    throw std::invalid_argument("config: unknown key '" + where + "." + item.key() + "'");
        }

        template <typename T>
        void get_if(const json &j, const char *key, T &value)
        {
            if (j.contains(key))
                value = j.at(key).get<T>();
        }

        std::string fading_name(FadingModel m)
        {
            return m == FadingModel::cluster ? "cluster" : "geometric";
        }

        FadingModel parse_fading(const std::string &s)
        {
            if (s == "cluster")
                return FadingModel::cluster;
            if (s == "geometric")
                return FadingModel::geometric;
            throw std::invalid_argument("config: unknown fading model '" + s + "'");
        }

        json scenario_json(const ScenarioConfig &c)
        {
            json hs = json::array();
            for (const auto &h : c.hotspots)
                hs.push_back({{"distance", h.distance},
                              {"radius", h.radius},
                              {"elevation", h.elevation},
                              {"azimuth", h.azimuth}});
            return {{"users", c.users},
                    {"regular_ratio", c.regular_ratio},
                    {"hotspots", hs},
                    {"inner_radius", c.inner_radius},
                    {"outer_radius", c.outer_radius},
                    {"paths", c.paths},
                    {"scatter_radius", c.scatter_radius},
                    {"transmit_power", c.transmit_power},
                    {"snr_db", c.snr_db},
                    {"noise_power", c.noise_power},
                    {"wavelength", c.radio.wavelength},
                    {"pattern",
                     {{"max_gain_dbi", c.radio.pattern.max_gain_dbi},
                      {"beamwidth_deg", c.radio.pattern.beamwidth_deg},
                      {"side_lobe_limit_db", c.radio.pattern.side_lobe_limit_db},
                      {"max_attenuation_db", c.radio.pattern.max_attenuation_db}}}};
        }

        ScenarioConfig scenario_from(const json &j)
        {
            reject_unknown(j,
                           {"users", "regular_ratio", "hotspots", "inner_radius", "outer_radius", "paths",
                            "scatter_radius", "transmit_power", "snr_db", "noise_power", "wavelength", "pattern"},
                           "scenario");
            ScenarioConfig c;
            get_if(j, "users", c.users);
            get_if(j, "regular_ratio", c.regular_ratio);
            get_if(j, "inner_radius", c.inner_radius);
            get_if(j, "outer_radius", c.outer_radius);
            get_if(j, "paths", c.paths);
            get_if(j, "scatter_radius", c.scatter_radius);
            get_if(j, "transmit_power", c.transmit_power);
            get_if(j, "snr_db", c.snr_db);
            get_if(j, "noise_power", c.noise_power);
            get_if(j, "wavelength", c.radio.wavelength);
            if (j.contains("hotspots"))
            {
                c.hotspots.clear();
                for (const auto &h : j.at("hotspots"))
                {
                    reject_unknown(h, {"distance", "radius", "elevation", "azimuth"}, "scenario.hotspots");
                    Hotspot hs;
                    get_if(h, "distance", hs.distance);
                    get_if(h, "radius", hs.radius);
                    get_if(h, "elevation", hs.elevation);
                    get_if(h, "azimuth", hs.azimuth);
                    c.hotspots.push_back(hs);
                }
            }
            if (j.contains("pattern"))
            {
                const auto &p = j.at("pattern");
                reject_unknown(p, {"max_gain_dbi", "beamwidth_deg", "side_lobe_limit_db", "max_attenuation_db"},
                               "scenario.pattern");
                get_if(p, "max_gain_dbi", c.radio.pattern.max_gain_dbi);
                get_if(p, "beamwidth_deg", c.radio.pattern.beamwidth_deg);
                get_if(p, "side_lobe_limit_db", c.radio.pattern.side_lobe_limit_db);
                get_if(p, "max_attenuation_db", c.radio.pattern.max_attenuation_db);
            }
            return c;
        }

        json vec_json(const Vec3 &v)
        {
            return json::array({v.x(), v.y(), v.z()});
        }

        Vec3 vec_from(const json &j)
        {
            if (!j.is_array() || j.size() != 3)
                throw std::invalid_argument("scenario: expected a 3-vector");
            return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
        }

        json parse_json(const std::string &text)
        {
            try
            {
                return json::parse(text);
            }
            catch (const json::parse_error &e)
            {
                throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
            }
        }
    }

    std::string config_to_json(const ExperimentConfig &c)
    {
        json j;
        j["format"] = "sixdma-config";
        j["version"] = json_format_version;
        j["scenario"] = scenario_json(c.scenario);
        j["grid"] = {{"candidates", c.grid.candidates},   {"sampled", c.grid.sampled},
                     {"surfaces", c.grid.surfaces},       {"antennas", c.grid.antennas},
                     {"site_side", c.grid.site_side},     {"radius", c.grid.radius},
                     {"spacing", c.grid.spacing},         {"min_distance", c.grid.min_distance}};
        j["estimation"] = {{"pilot_length", c.estimation.pilot_length},
                           {"inst_pilot_length", c.estimation.inst_pilot_length},
                           {"iterations", c.estimation.iterations},
                           {"dictionary_size", c.estimation.dictionary_size},
                           {"threshold_ratio", c.estimation.threshold_ratio},
                           {"fading", fading_name(c.estimation.fading)}};
        j["pso"] = {{"particles", c.pso.particles},         {"iterations", c.pso.iterations},
                    {"inertia", c.pso.inertia},             {"c1", c.pso.c1},
                    {"c2", c.pso.c2},                       {"penalty_weight", c.pso.penalty_weight},
                    {"velocity_limit", c.pso.velocity_limit}};
        j["rms_samples"] = c.rms_samples;
        j["ergodic_trials"] = c.ergodic_trials;
        j["seeds"] = c.seeds;
        j["output_dir"] = c.output_dir;
        return j.dump(2) + "\n";
    }

    ExperimentConfig config_from_json(const std::string &text)
    {
        const json j = parse_json(text);
        try
        {
            reject_unknown(j,
                           {"format", "version", "scenario", "grid", "estimation", "pso", "rms_samples",
                            "ergodic_trials", "seeds", "output_dir"},
                           "config");
            if (j.contains("format") && j.at("format") != "sixdma-config")
                throw std::invalid_argument("config: format must be 'sixdma-config'");
            if (j.contains("version") && j.at("version").get<int>() > json_format_version)
                throw std::invalid_argument("config: unsupported version " + j.at("version").dump());

            ExperimentConfig c;
            if (j.contains("scenario"))
                c.scenario = scenario_from(j.at("scenario"));
            if (j.contains("grid"))
            {
                const auto &g = j.at("grid");
                reject_unknown(g,
                               {"candidates", "sampled", "surfaces", "antennas", "site_side", "radius", "spacing",
                                "min_distance"},
                               "grid");
                get_if(g, "candidates", c.grid.candidates);
                get_if(g, "sampled", c.grid.sampled);
                get_if(g, "surfaces", c.grid.surfaces);
                get_if(g, "antennas", c.grid.antennas);
                get_if(g, "site_side", c.grid.site_side);
                get_if(g, "radius", c.grid.radius);
                get_if(g, "spacing", c.grid.spacing);
                get_if(g, "min_distance", c.grid.min_distance);
            }
            if (j.contains("estimation"))
            {
                const auto &e = j.at("estimation");
                reject_unknown(e,
                               {"pilot_length", "inst_pilot_length", "iterations", "dictionary_size",
                                "threshold_ratio", "fading"},
                               "estimation");
                get_if(e, "pilot_length", c.estimation.pilot_length);
                get_if(e, "inst_pilot_length", c.estimation.inst_pilot_length);
                get_if(e, "iterations", c.estimation.iterations);
                get_if(e, "dictionary_size", c.estimation.dictionary_size);
                get_if(e, "threshold_ratio", c.estimation.threshold_ratio);
                if (e.contains("fading"))
                    c.estimation.fading = parse_fading(e.at("fading").get<std::string>());
            }
            if (j.contains("pso"))
            {
                const auto &p = j.at("pso");
                reject_unknown(p,
                               {"particles", "iterations", "inertia", "c1", "c2", "penalty_weight",
                                "velocity_limit"},
                               "pso");
                get_if(p, "particles", c.pso.particles);
                get_if(p, "iterations", c.pso.iterations);
                get_if(p, "inertia", c.pso.inertia);
                get_if(p, "c1", c.pso.c1);
                get_if(p, "c2", c.pso.c2);
                get_if(p, "penalty_weight", c.pso.penalty_weight);
                get_if(p, "velocity_limit", c.pso.velocity_limit);
            }
            get_if(j, "rms_samples", c.rms_samples);
            get_if(j, "ergodic_trials", c.ergodic_trials);
            get_if(j, "seeds", c.seeds);
            get_if(j, "output_dir", c.output_dir);
            validate(c);
            return c;
        }
        catch (const json::exception &e)
        {
            throw std::invalid_argument(std::string("config: ") + e.what());
        }
    }

    std::string scenario_to_json(const ScenarioFile &s)
    {
        json users = json::array();
        for (const auto &u : s.users)
        {
            json paths = json::array();
            for (const auto &p : u.paths)
                paths.push_back(json::array({p.gain, p.phase, p.theta, p.azimuth}));
            users.push_back({{"location", vec_json(u.location)},
                             {"cluster_doa", vec_json(u.cluster_doa)},
                             {"multipath_power", u.multipath_power},
                             {"hotspot", u.hotspot},
                             {"paths", paths}});
        }
        json j = {{"format", "sixdma-scenario"},
                  {"version", json_format_version},
                  {"seed", s.seed},
                  {"config", scenario_json(s.config)},
                  {"path_fields", json::array({"gain", "phase", "theta", "azimuth"})},
                  {"users", users}};
        return j.dump(1) + "\n";
    }

    ScenarioFile scenario_from_json(const std::string &text)
    {
        const json j = parse_json(text);
        try
        {
            if (j.value("format", "") != "sixdma-scenario")
                throw std::invalid_argument("scenario: format must be 'sixdma-scenario'");
            if (j.value("version", 0) != json_format_version)
                throw std::invalid_argument("scenario: unsupported version");
            ScenarioFile s;
            s.seed = j.value("seed", std::uint64_t{0});
            s.config = scenario_from(j.at("config"));
            for (const auto &ju : j.at("users"))
            {
                UserSpec u;
                u.location = vec_from(ju.at("location"));
                u.cluster_doa = vec_from(ju.at("cluster_doa"));
                u.multipath_power = ju.at("multipath_power").get<double>();
                u.hotspot = ju.value("hotspot", -1);
                for (const auto &jp : ju.at("paths"))
                {
                    if (!jp.is_array() || jp.size() != 4)
                        throw std::invalid_argument("scenario: each path needs 4 fields");
                    u.paths.push_back({jp[0].get<double>(), jp[1].get<double>(), jp[2].get<double>(),
                                       jp[3].get<double>()});
                }
                s.users.push_back(std::move(u));
            }
            return s;
        }
        catch (const json::exception &e)
        {
            throw std::invalid_argument(std::string("scenario: ") + e.what());
        }
    }

    std::string selection_json(const ProtocolOutcome &o)
    {
        json j = {{"format", "sixdma-selection"},
                  {"version", json_format_version},
                  {"seed", o.seed},
                  {"selected_poses", selected_indices(o.pso.selection)},
                  {"rms_poses", selected_indices(o.rms_selection)},
                  {"sum_rate", o.metrics.sum_rate},
                  {"sum_rate_rms", o.metrics.sum_rate_rms},
                  {"penalty_weight", o.pso.penalty_weight},
                  {"repaired", o.pso.repaired}};
        return j.dump(2) + "\n";
    }

    std::string read_text_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot open " + path.string());
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    void write_text_file(const std::filesystem::path &path, const std::string &content)
    {
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        out << content;
        if (!out)
            throw std::runtime_error("write failed for " + path.string());
    }
}
