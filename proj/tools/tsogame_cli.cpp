/*
 * Copyright 2026 The tsogame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end; everything goes through the C interface.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include "tsogame/tsogame.h"

namespace {

struct ProgramHandle
{
    tsog_program* p = nullptr;
    ~ProgramHandle() { tsog_program_free(p); }
};

struct Failure
{
    int code;
};

[[noreturn]] void fail(int code, const std::string& msg)
{
    std::cerr << "error: " << msg << "\n";
    throw Failure{code};
}

void check(tsog_status s)
{
    if (s != TSOG_OK)
        fail(static_cast<int>(s), tsog_last_error());
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(TSOG_ERR_PARSE, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// `-` is stdin; an existing path is read; anything else is taken literally.
std::string read_source(const std::string& arg)
{
    if (arg == "-")
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream probe(arg, std::ios::binary);
    if (probe)
        return {std::istreambuf_iterator<char>(probe), std::istreambuf_iterator<char>()};
    return arg;
}

void load(ProgramHandle& h, const std::string& path)
{
    check(tsog_program_load(path.c_str(), &h.p));
}

void emit(char* s, const std::string& out_path = {})
{
    std::unique_ptr<char, void (*)(char*)> owned(s, tsog_string_free);
    if (out_path.empty()) {
        std::cout << s;
        std::cout.flush();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        fail(TSOG_ERR_USAGE, "cannot write '" + out_path + "'");
    out << s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reachability and safety games on programs under TSO store buffers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tsog_version());

    std::string file, objective, targets, process, format = "dot", out_path, mode = "reach",
                fairness, run, script, semantics = "sb";
    std::size_t horizon = 0, buffer_bound = 0, max_states = 100000, propagation_bound = 4;
    std::size_t lb_horizon = 6;
    bool check_fair = false;

    auto* solve = app.add_subcommand("solve", "Decide the winner of a program game");
    solve->add_option("FILE", file, "Program file")->required();
    solve->add_option("--objective", objective, "reach or safe")
        ->check(CLI::IsMember({"reach", "safe"}));
    solve->add_option("--targets", targets, "Comma-separated P.q targets");

    auto* arena = app.add_subcommand("view-arena", "Export the view arena of one process");
    arena->add_option("FILE", file, "Program file")->required();
    arena->add_option("--process", process, "Process name")->required();
    arena->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));

    auto* from_qbf = app.add_subcommand("from-qbf", "Compile a QBF formula into a program");
    from_qbf->add_option("FILE", file, "Formula file, '-' for stdin, or the formula itself")
        ->required();
    from_qbf->add_option("-o", out_path, "Output file");
    from_qbf->add_option("--mode", mode, "reach or safe")->check(CLI::IsMember({"reach", "safe"}));

    auto* eval = app.add_subcommand("eval-qbf", "Evaluate a QBF formula by brute force");
    eval->add_option("FILE", file, "Formula file, '-' for stdin, or the formula itself")
        ->required();

    auto* from_pcs = app.add_subcommand("from-pcs", "Compile a channel system into a fairness game");
    from_pcs->add_option("FILE", file, "Channel system file")->required();
    from_pcs->add_option("--fairness", fairness, "update or process")
        ->required()
        ->check(CLI::IsMember({"update", "process"}));
    from_pcs->add_option("-o", out_path, "Output file");

    auto* pcs_script = app.add_subcommand("pcs-script", "Honest play script for a channel-system run");
    pcs_script->add_option("FILE", file, "Channel system file")->required();
    pcs_script->add_option("--run", run, "Comma-separated transition ids (e0,e1,...)")->required();
    pcs_script->add_option("--fairness", fairness, "update or process")
        ->required()
        ->check(CLI::IsMember({"update", "process"}));

    auto* simulate = app.add_subcommand("simulate", "Replay a play script");
    simulate->add_option("FILE", file, "Program file")->required();
    simulate->add_option("--script", script, "Play script JSON file")->required();
    simulate->add_flag("--check-update-fair", check_fair, "Audit the play for update fairness");
    simulate->add_option("--horizon", horizon, "Maximum number of plies");

    auto* explore = app.add_subcommand("explore", "Enumerate configurations up to a buffer bound");
    explore->add_option("FILE", file, "Program file")->required();
    explore->add_option("--buffer-bound", buffer_bound, "Maximum buffer length")->required();
    explore->add_option("--semantics", semantics, "sb or lb")->check(CLI::IsMember({"sb", "lb"}));
    explore->add_option("--max-states", max_states, "Abort beyond this many configurations");

    auto* lb_demo = app.add_subcommand("lb-demo", "Store-buffer vs load-buffer divergence checks");
    lb_demo->add_option("--horizon", lb_horizon, "Plies allowed for the store-buffer forcing");
    lb_demo->add_option("--propagation-bound", propagation_bound, "Load buffer length cap");

    auto* bound = app.add_subcommand("state-bound", "View count bound for one process");
    bound->add_option("FILE", file, "Program file")->required();
    bound->add_option("--process", process, "Process name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : TSOG_ERR_USAGE;
    }

    try {
        char* out = nullptr;
        if (*solve) {
            ProgramHandle h;
            load(h, file);
            check(tsog_solve(h.p, objective.empty() ? nullptr : objective.c_str(),
                             targets.empty() ? nullptr : targets.c_str(), &out));
            emit(out);
        } else if (*arena) {
            ProgramHandle h;
            load(h, file);
            check(tsog_view_arena(h.p, process.c_str(), format.c_str(), &out));
            emit(out);
        } else if (*from_qbf) {
            check(tsog_qbf_to_program(read_source(file).c_str(), mode.c_str(), &out));
            emit(out, out_path);
        } else if (*eval) {
            int value = 0;
            check(tsog_qbf_eval(read_source(file).c_str(), &value));
            std::cout << "{\"value\":" << (value ? "true" : "false") << "}\n";
        } else if (*from_pcs) {
            check(tsog_pcs_to_program(read_file(file).c_str(), fairness.c_str(), &out));
            emit(out, out_path);
        } else if (*pcs_script) {
            check(tsog_pcs_script(read_file(file).c_str(), run.c_str(), fairness.c_str(), &out));
            emit(out);
        } else if (*simulate) {
            ProgramHandle h;
            load(h, file);
            const auto text = read_file(script);
            check(tsog_simulate(h.p, text.c_str(), check_fair ? 1 : 0, horizon, &out));
            emit(out);
        } else if (*explore) {
            ProgramHandle h;
            load(h, file);
            check(tsog_explore(h.p, buffer_bound, semantics.c_str(), max_states, &out));
            emit(out);
        } else if (*lb_demo) {
            check(tsog_lb_demo(lb_horizon, propagation_bound, &out));
            emit(out);
        } else if (*bound) {
            ProgramHandle h;
            load(h, file);
            check(tsog_state_bound(h.p, process.c_str(), &out));
            emit(out);
        }
    } catch (const Failure& f) {
        return f.code;
    }
    return 0;
}
