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

// ris_scope: command-line front end of the risscope library.
//
//   ris_scope pattern     [--config PATH] [--out DIR] [--model paper|physical-optics] [--step DEG]
//   ris_scope metrics     ...
//   ris_scope snr         ...
//   ris_scope detect      ...
//   ris_scope spectrogram ...
//   ris_scope reproduce TABLE  (TABLE = II, III, IV, V, VI, VII, fig3)
//
// Exit status: 0 ok, 1 runtime error, 2 invalid configuration, 3 reproduced value out of tolerance.

#include "risscope/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace
{

struct CommonFlags
{
    std::string config_path;
    risscope::cli::RunOptions options;
};

void add_common(CLI::App *cmd, CommonFlags &flags)
{
    cmd->add_option("--config", flags.config_path, "JSON run configuration");
    cmd->add_option_function<std::string>(
        "--out", [&flags](const std::string &v) { flags.options.out_dir = v; }, "Output directory");
    cmd->add_option_function<std::string>(
        "--model", [&flags](const std::string &v) { flags.options.model = v; },
        "Surface current model: paper (default) or physical-optics");
    cmd->add_option_function<double>(
        "--step", [&flags](double v) { flags.options.step_deg = v; }, "Scan step in degrees");
}

} // namespace

int main(int argc, char **argv)
{
    namespace cli = risscope::cli;

    CLI::App app{"Far-field scattering, RCS, link budget and micro-Doppler simulator for quantized RIS"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string table;
    std::vector<CLI::App *> commands;
    for (const auto &name : cli::subcommands())
    {
        CLI::App *cmd = app.add_subcommand(name);
        add_common(cmd, flags);
        commands.push_back(cmd);
    }
    CLI::App *rep = app.add_subcommand("reproduce", "Recompute a reference table and compare");
    rep->add_option("table", table, "Table id: II, III, IV, V, VI, VII or fig3")->required();
    add_common(rep, flags);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return cli::exit_config_error;
    }

    risscope::cli::RunConfig config;
    if (!flags.config_path.empty())
    {
        try
        {
            config = cli::load_config(flags.config_path);
        }
        catch (const risscope::ConfigError &e)
        {
            std::cerr << "error: " << e.what() << "\n";
            return cli::exit_config_error;
        }
    }

    if (rep->parsed())
        return cli::reproduce(table, config, flags.options, std::cout, std::cerr);
    for (CLI::App *cmd : commands)
        if (cmd->parsed())
            return cli::run(cmd->get_name(), config, flags.options, std::cout, std::cerr);
    return cli::exit_config_error;
}
