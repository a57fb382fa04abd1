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

#include "tsogame/tsogame.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "tsogame/json_io.hpp"
#include "tsogame/load_buffer.hpp"
#include "tsogame/pcs.hpp"
#include "tsogame/qbf.hpp"
#include "tsogame/solver.hpp"
#include "tsogame/view_game.hpp"

struct tsog_program
{
    tsogame::ParsedProgram parsed;
};

namespace {

using namespace tsogame;

thread_local std::string last_error;

class UsageError : public Error
{
public:
    explicit UsageError(const std::string& what) : Error(ErrorCode::Usage, what) {}
};

char* dup(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
tsog_status guarded(F&& body)
{
    try {
        body();
        last_error.clear();
        return TSOG_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return static_cast<tsog_status>(e.code());
    } catch (const nlohmann::json::parse_error& e) {
        last_error = std::string("malformed JSON: ") + e.what();
        return TSOG_ERR_PARSE;
    } catch (const nlohmann::json::exception& e) {
        last_error = std::string("unexpected JSON shape: ") + e.what();
        return TSOG_ERR_VALIDATION;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return TSOG_ERR_RESOURCE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return TSOG_ERR_INTERNAL;
    }
}

void require(const void* ptr, const char* what)
{
    if (!ptr)
        throw UsageError(std::string(what) + " must not be NULL");
}

Mode parse_mode(const std::string& s)
{
    if (s == "reach")
        return Mode::Reach;
    if (s == "safe")
        return Mode::Safe;
    throw UsageError("mode must be 'reach' or 'safe', got '" + s + "'");
}

Fairness parse_fairness(const std::string& s)
{
    if (s == "update")
        return Fairness::Update;
    if (s == "process")
        return Fairness::Process;
    throw UsageError("fairness must be 'update' or 'process', got '" + s + "'");
}

ProcId process_named(const Program& p, const char* name)
{
    require(name, "process");
    const auto i = p.find_process(name);
    if (!i)
        throw ValidationError(std::string("unknown process '") + name + "'");
    return *i;
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

} // namespace

extern "C" {

const char* tsog_version(void)
{
    return "1.0.0";
}

const char* tsog_last_error(void)
{
    return last_error.c_str();
}

void tsog_string_free(char* s)
{
    std::free(s);
}

tsog_status tsog_program_parse(const char* text, tsog_program** out)
{
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new tsog_program{parse_program(text)};
    });
}

tsog_status tsog_program_load(const char* path, tsog_program** out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new tsog_program{load_program(path)};
    });
}

void tsog_program_free(tsog_program* p)
{
    delete p;
}

size_t tsog_program_process_count(const tsog_program* p)
{
    return p ? p->parsed.program.process_count() : 0;
}

tsog_status tsog_program_serialize(const tsog_program* p, char** out_text)
{
    return guarded([&] {
        require(p, "program");
        require(out_text, "out");
        const auto& obj = p->parsed.objective;
        *out_text = dup(serialize_program(p->parsed.program, obj ? &*obj : nullptr));
    });
}

tsog_status tsog_solve(const tsog_program* p, const char* mode, const char* targets, char** out_json)
{
    return guarded([&] {
        require(p, "program");
        require(out_json, "out");
        const Program& prog = p->parsed.program;
        std::optional<Objective> obj = p->parsed.objective;
        if (mode || targets) {
            Objective o = obj.value_or(Objective{});
            if (mode)
                o.mode = parse_mode(mode);
            else if (!obj)
                throw UsageError("--targets needs --objective when the file has no objective");
            if (targets)
                o.targets = parse_targets(prog, targets);
            obj = o;
        }
        if (!obj)
            throw UsageError("no objective: add an 'objective' line or pass --objective/--targets");
        const auto d = decide(prog, *obj);
        *out_json = dup(dump(decision_to_json(prog, d)));
    });
}

tsog_status tsog_view_arena(const tsog_program* p, const char* process, const char* format,
                            char** out)
{
    return guarded([&] {
        require(p, "program");
        require(out, "out");
        const std::string fmt = format ? format : "json";
        if (fmt != "dot" && fmt != "json")
            throw UsageError("format must be 'dot' or 'json'");
        const Program& prog = p->parsed.program;
        const ProcId i = process_named(prog, process);
        const Program single = project(prog, i);
        const Configuration c0 = restrict_to(initial_configuration(prog), i);
        const auto va = build_view_arena(single, view_of(single, c0));
        std::vector<bool> special(va.vertices.size(), false);
        if (p->parsed.objective)
            special = special_vertices(va, project(*p->parsed.objective, i));
        *out = dup(fmt == "dot" ? arena_to_dot(va.arena, special)
                                : dump(arena_to_json(va.arena, special)));
    });
}

tsog_status tsog_state_bound(const tsog_program* p, const char* process, char** out_json)
{
    return guarded([&] {
        require(p, "program");
        require(out_json, "out");
        const Program& prog = p->parsed.program;
        const ProcId i = process_named(prog, process);
        const auto bound = state_space_bound(prog, i);
        const Program single = project(prog, i);
        const auto va = build_view_arena(
            single, view_of(single, restrict_to(initial_configuration(prog), i)));
        Json j;
        j["process"] = prog.process(i).name();
        j["states"] = prog.process(i).states().size();
        j["vars"] = prog.vars().size();
        j["values"] = prog.values().size();
        j["bound"] = bound;
        j["arena_vertices"] = va.vertices.size();
        *out_json = dup(dump(j));
    });
}

tsog_status tsog_simulate(const tsog_program* p, const char* script_json, int check_update_fair,
                          size_t horizon, char** out_json)
{
    return guarded([&] {
        require(p, "program");
        require(script_json, "script");
        require(out_json, "out");
        const Program& prog = p->parsed.program;
        const auto script = script_from_json(prog, Json::parse(script_json));
        const auto& obj = p->parsed.objective;
        const auto r = simulate_script(prog, obj ? &*obj : nullptr, initial_configuration(prog),
                                       script, horizon == 0 ? script.size() : horizon);
        Json j = play_result_to_json(prog, r);
        if (check_update_fair)
            j["update_fair"] = verdict_to_json(check_update_fair_prefix(prog, r.play));
        *out_json = dup(dump(j));
    });
}

tsog_status tsog_explore(const tsog_program* p, size_t buffer_bound, const char* semantics,
                         size_t max_states, char** out_json)
{
    return guarded([&] {
        require(p, "program");
        require(out_json, "out");
        const std::string sem = semantics ? semantics : "sb";
        const Program& prog = p->parsed.program;
        if (sem == "sb")
            *out_json = dup(dump(exploration_to_json(
                prog, bounded_explore(prog, initial_configuration(prog), buffer_bound, max_states))));
        else if (sem == "lb")
            *out_json = dup(dump(lb_exploration_to_json(
                prog, lb_bounded_explore(prog, lb_initial(prog), buffer_bound, max_states))));
        else
            throw UsageError("semantics must be 'sb' or 'lb'");
    });
}

tsog_status tsog_qbf_eval(const char* formula, int* value)
{
    return guarded([&] {
        require(formula, "formula");
        require(value, "value");
        *value = eval_qbf(parse_qbf(formula)) ? 1 : 0;
    });
}

tsog_status tsog_qbf_to_program(const char* formula, const char* mode, char** out_text)
{
    return guarded([&] {
        require(formula, "formula");
        require(out_text, "out");
        const auto g = qbf_to_program(parse_qbf(formula), parse_mode(mode ? mode : "reach"));
        *out_text = dup(serialize_program(g.program, &*g.objective));
    });
}

tsog_status tsog_pcs_to_program(const char* pcs_text, const char* fairness, char** out_text)
{
    return guarded([&] {
        require(pcs_text, "pcs");
        require(fairness, "fairness");
        require(out_text, "out");
        const auto g = pcs_to_game(parse_pcs(pcs_text), parse_fairness(fairness));
        *out_text = dup(serialize_program(g.program, &*g.objective));
    });
}

tsog_status tsog_pcs_script(const char* pcs_text, const char* run, const char* fairness,
                            char** out_json)
{
    return guarded([&] {
        require(pcs_text, "pcs");
        require(run, "run");
        require(fairness, "fairness");
        require(out_json, "out");
        const auto l = parse_pcs(pcs_text);
        std::vector<std::size_t> ids;
        std::string token;
        for (const char* c = run;; ++c) {
            if (*c == ',' || *c == '\0') {
                if (!token.empty())
                    ids.push_back(parse_pcs_transition_id(l, token));
                token.clear();
                if (*c == '\0')
                    break;
            } else if (*c != ' ') {
                token.push_back(*c);
            }
        }
        const auto f = parse_fairness(fairness);
        const auto game = pcs_to_game(l, f);
        *out_json = dup(dump(script_to_json(game.program, script_from_pcs_run(l, ids, f))));
    });
}

tsog_status tsog_lb_demo(size_t horizon, size_t propagation_bound, char** out_json)
{
    return guarded([&] {
        require(out_json, "out");
        const auto demo = divergence_program();
        const auto q2 = sb_forcing_check(horizon, "q2", FlushOrder::Proc1First);
        const auto q3 = sb_forcing_check(horizon, "q3", FlushOrder::Proc2First);
        const auto wrong = sb_forcing_check(horizon, "q2", FlushOrder::Proc2First);
        const auto lb = lb_escape_check({propagation_bound, false});
        Json j;
        j["program"] = serialize_program(demo.program, &*demo.objective);
        j["sb_forcing"] = {{"q2_proc1_first", verdict_to_json(q2)},
                           {"q3_proc2_first", verdict_to_json(q3)},
                           {"q2_proc2_first", verdict_to_json(wrong)}};
        j["lb_escape"] = verdict_to_json(lb);
        j["divergence"] = q2.ok && q3.ok && !wrong.ok && lb.ok;
        *out_json = dup(dump(j));
    });
}

} // extern "C"
