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

#include "tsogame/json_io.hpp"

namespace tsogame {

namespace {

const Json& member(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string text(const Json& j, const char* what)
{
    if (!j.is_string())
        throw ValidationError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

ValueId value_of(const Program& p, const std::string& name)
{
    auto d = p.find_value(name);
    if (!d)
        throw ValidationError("undeclared value '" + name + "'");
    return *d;
}

} // namespace

Json config_to_json(const Program& p, const Configuration& c)
{
    Json j;
    j["state"] = Json::object();
    j["buffers"] = Json::object();
    j["memory"] = Json::object();
    for (ProcId i = 0; i < p.process_count(); ++i) {
        const auto& proc = p.process(i);
        j["state"][proc.name()] = proc.state_name(c.states[i]);
        Json buf = Json::array();
        for (const auto& m : c.buffers[i])
            buf.push_back({p.var_name(m.var), p.value_name(m.value)});
        j["buffers"][proc.name()] = std::move(buf);
    }
    for (VarId x = 0; x < p.vars().size(); ++x)
        j["memory"][p.var_name(x)] = p.value_name(c.memory[x]);
    return j;
}

Configuration config_from_json(const Program& p, const Json& j)
{
    Configuration c = initial_configuration(p);
    const auto& states = member(j, "state");
    for (auto it = states.begin(); it != states.end(); ++it) {
        const auto i = p.find_process(it.key());
        if (!i)
            throw ValidationError("unknown process '" + it.key() + "'");
        const auto q = p.process(*i).find_state(text(it.value(), "state"));
        if (!q)
            throw ValidationError("unknown state for process '" + it.key() + "'");
        c.states[*i] = *q;
    }
    if (j.contains("buffers")) {
        for (auto it = j["buffers"].begin(); it != j["buffers"].end(); ++it) {
            const auto i = p.find_process(it.key());
            if (!i)
                throw ValidationError("unknown process '" + it.key() + "'");
            for (const auto& m : it.value()) {
                if (!m.is_array() || m.size() != 2)
                    throw ValidationError("buffer entries must be [var, value] pairs");
                const auto x = p.find_var(text(m[0], "variable"));
                if (!x)
                    throw ValidationError("undeclared variable in buffer");
                c.buffers[*i].push_back({*x, value_of(p, text(m[1], "value"))});
            }
        }
    }
    if (j.contains("memory")) {
        for (auto it = j["memory"].begin(); it != j["memory"].end(); ++it) {
            const auto x = p.find_var(it.key());
            if (!x)
                throw ValidationError("undeclared variable '" + it.key() + "'");
            c.memory[*x] = value_of(p, text(it.value(), "value"));
        }
    }
    return c;
}

Json lb_config_to_json(const Program& p, const LbConfiguration& c)
{
    Json j;
    j["state"] = Json::object();
    j["buffers"] = Json::object();
    j["memory"] = Json::object();
    for (ProcId i = 0; i < p.process_count(); ++i) {
        const auto& proc = p.process(i);
        j["state"][proc.name()] = proc.state_name(c.states[i]);
        Json buf = Json::array();
        for (const auto& m : c.buffers[i]) {
            Json e = {p.var_name(m.var), p.value_name(m.value)};
            if (m.own)
                e.push_back("own");
            buf.push_back(std::move(e));
        }
        j["buffers"][proc.name()] = std::move(buf);
    }
    for (VarId x = 0; x < p.vars().size(); ++x)
        j["memory"][p.var_name(x)] = p.value_name(c.memory[x]);
    return j;
}

Json arena_to_json(const Arena& a, const std::vector<bool>& special)
{
    Json j;
    j["initial"] = a.name(a.initial());
    j["vertices"] = Json::array();
    for (VertexId v = 0; v < a.size(); ++v)
        j["vertices"].push_back({{"id", a.name(v)},
                                 {"owner", player_name(a.owner(v))},
                                 {"special", v < special.size() && special[v]}});
    j["edges"] = Json::array();
    for (const auto& e : a.edges())
        j["edges"].push_back({{"from", a.name(e.from)}, {"to", a.name(e.to)}, {"label", e.label}});
    return j;
}

Json script_to_json(const Program& p, const PlayScript& s)
{
    Json j = Json::array();
    for (const auto& m : s) {
        if (m.turn == Turn::Process) {
            const auto& proc = p.process(m.move.proc);
            const auto& t = proc.transition(m.move.transition);
            j.push_back({{"turn", "process"},
                         {"proc", proc.name()},
                         {"from", proc.state_name(t.from)},
                         {"instr", p.instr_text(t.instr)},
                         {"to", proc.state_name(t.to)}});
        } else {
            Json flushes = Json::array();
            for (auto i : m.flushes)
                flushes.push_back(p.process(i).name());
            j.push_back({{"turn", "update"}, {"flushes", std::move(flushes)}});
        }
    }
    return j;
}

PlayScript script_from_json(const Program& p, const Json& j)
{
    if (!j.is_array())
        throw ValidationError("a play script must be a JSON array");
    PlayScript s;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto& m = j[k];
        const std::size_t ply = k + 1;
        try {
            const auto turn = text(member(m, "turn"), "turn");
            if (turn == "process") {
                const auto name = text(member(m, "proc"), "proc");
                const auto proc = p.find_process(name);
                if (!proc)
                    throw IllegalMoveError(ply, "unknown process '" + name + "'");
                const auto from = text(member(m, "from"), "from");
                const auto instr = text(member(m, "instr"), "instr");
                const auto to = text(member(m, "to"), "to");
                const auto t = find_transition(p, *proc, from, instr, to);
                if (!t)
                    throw IllegalMoveError(ply, "no transition " + name + " " + from + " " + instr +
                                                    " " + to);
                s.push_back({Turn::Process, Move{*proc, *t}, {}});
            } else if (turn == "update") {
                ScriptMove u{Turn::Update, {}, {}};
                const auto& fl = member(m, "flushes");
                if (!fl.is_array())
                    throw ValidationError("flushes must be an array");
                for (const auto& f : fl) {
                    const auto proc = p.find_process(text(f, "flush"));
                    if (!proc)
                        throw IllegalMoveError(ply, "unknown process '" + f.get<std::string>() + "'");
                    u.flushes.push_back(*proc);
                }
                s.push_back(std::move(u));
            } else {
                throw ValidationError("turn must be \"process\" or \"update\"");
            }
        } catch (const IllegalMoveError&) {
            throw;
        } catch (const ValidationError& e) {
            throw IllegalMoveError(ply, e.what());
        }
    }
    return s;
}

PlayScript script_of_play(const Play& play)
{
    PlayScript s;
    for (const auto& st : play.steps)
        s.push_back({st.turn, st.move, st.flushes});
    return s;
}

Json play_result_to_json(const Program& p, const PlayResult& r)
{
    Json j;
    j["outcome"] = outcome_name(r.outcome);
    j["target_position"] = r.target_position ? Json(*r.target_position) : Json(nullptr);
    j["plies"] = r.play.steps.size();
    if (r.outcome == Outcome::ProcessDeadlock)
        j["deadlock_buffers_empty"] = r.deadlock_buffers_empty;
    j["moves"] = script_to_json(p, script_of_play(r.play));
    j["configurations"] = Json::array();
    for (std::size_t k = 0; k < r.play.length(); ++k) {
        Json c = config_to_json(p, r.play.config(k));
        c["turn"] = Play::turn_at(k) == Turn::Process ? "process" : "update";
        j["configurations"].push_back(std::move(c));
    }
    return j;
}

Json decision_to_json(const Program& p, const Decision& d)
{
    Json j;
    j["winner"] = d.winner == Player::A ? "process" : "update";
    j["witness"] = d.witness ? Json(p.process(*d.witness).name()) : Json(nullptr);
    j["strategy"] = Json::object();
    if (d.witness) {
        const auto& s = d.projections[*d.witness];
        const auto& a = s.varena.arena;
        for (VertexId v = 0; v < a.size(); ++v) {
            const auto& e = s.solution.strategy_a[v];
            if (e && s.solution.winner[v] == Player::A)
                j["strategy"][a.name(v)] = {{"instr", a.edge(*e).label}, {"to", a.name(a.edge(*e).to)}};
        }
    }
    j["projections"] = Json::object();
    for (ProcId i = 0; i < p.process_count(); ++i)
        j["projections"][p.process(i).name()] =
            d.projections[i].winner == Player::A ? "process" : "update";
    j["warnings"] = d.warnings;
    return j;
}

Json exploration_to_json(const Program& p, const Exploration& ex)
{
    Json j;
    j["configurations"] = Json::array();
    for (std::size_t k = 0; k < ex.configs.size(); ++k) {
        Json c = config_to_json(p, ex.configs[k]);
        c["id"] = k;
        c["frontier"] = static_cast<bool>(ex.frontier[k]);
        j["configurations"].push_back(std::move(c));
    }
    j["transitions"] = Json::array();
    for (const auto& s : ex.steps)
        j["transitions"].push_back({{"from", s.from}, {"to", s.to}, {"label", step_label(p, s)}});
    return j;
}

Json lb_exploration_to_json(const Program& p, const LbExploration& ex)
{
    Json j;
    j["configurations"] = Json::array();
    for (std::size_t k = 0; k < ex.configs.size(); ++k) {
        Json c = lb_config_to_json(p, ex.configs[k]);
        c["id"] = k;
        c["frontier"] = static_cast<bool>(ex.frontier[k]);
        j["configurations"].push_back(std::move(c));
    }
    j["transitions"] = Json::array();
    for (const auto& s : ex.steps)
        j["transitions"].push_back(
            {{"from", s.from}, {"to", s.to}, {"label", lb_move_label(p, s.move)}});
    return j;
}

Json verdict_to_json(const Verdict& v)
{
    return {{"pass", v.ok}, {"detail", v.detail}, {"witness", v.witness}};
}

} // namespace tsogame
