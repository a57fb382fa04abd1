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

#include "tsogame/solver.hpp"

#include <algorithm>

namespace tsogame {

Decision decide(const Program& p, const Objective& o, const Configuration& c0)
{
    check_configuration(p, c0);
    for (ProcId i = 0; i < p.process_count(); ++i) {
        if (!c0.buffers[i].empty())
            throw ValidationError("initial buffer of " + p.process(i).name() + " is not empty");
        if (o.is_target(i, c0.states[i]))
            throw ValidationError("initial configuration in C_W: " +
                                  target_text(p, {i, c0.states[i]}));
    }
    Decision d;
    for (const auto& v : validate_for_game(p, o)) {
        if (v.severity == Severity::Warning)
            d.warnings.push_back(v.message);
        else if (v.message.rfind("initial configuration", 0) != 0)
            throw ValidationError(v.message);
    }
    for (ProcId i = 0; i < p.process_count(); ++i) {
        d.programs.push_back(project(p, i));
        d.objectives.push_back(project(o, i));
        d.projections.push_back(
            solve_single_process(d.programs.back(), d.objectives.back(), restrict_to(c0, i)));
        if (!d.witness && d.projections.back().winner == Player::A)
            d.witness = i;
    }
    d.winner = d.witness ? Player::A : Player::B;
    return d;
}

Decision decide(const Program& p, const Objective& o)
{
    return decide(p, o, initial_configuration(p));
}

LiftedStrategy::LiftedStrategy(const Decision& d, ProcId proc)
    : LiftedStrategy(d.programs.at(proc), d.projections.at(proc), proc)
{
}

LiftedStrategy::LiftedStrategy(Program projected, SingleSolve solve, ProcId proc)
    : projected_(std::move(projected)), solve_(std::move(solve)), proc_(proc)
{
}

std::optional<Move> LiftedStrategy::choose(const Program& p, const Configuration& c, std::size_t)
{
    const View v = view_of(projected_, restrict_to(c, proc_));
    const auto id = solve_.varena.find({v, Player::A});
    if (!id)
        throw StrategyDomainError("view " + view_vertex_id(projected_, {v, Player::A}) +
                                  " is outside the solved arena");
    const auto& e = solve_.solution.strategy_a[*id];
    if (!e)
        throw StrategyDomainError("no winning move at " + solve_.varena.arena.name(*id));
    const Move m{proc_, solve_.varena.arena.edge(*e).tag};
    if (!is_enabled(p, c, m.proc, m.transition))
        throw StrategyDomainError("lifted move is not enabled at " + solve_.varena.arena.name(*id));
    return m;
}

std::optional<Move> RandomProcessStrategy::choose(const Program& p, const Configuration& c,
                                                  std::size_t)
{
    const auto moves = enabled_moves(p, c);
    if (moves.empty())
        return std::nullopt;
    return moves[rng_() % moves.size()];
}

std::optional<Move> ScriptedProcessStrategy::choose(const Program&, const Configuration&,
                                                    std::size_t)
{
    if (next_ >= moves_.size())
        return std::nullopt;
    return moves_[next_++];
}

const char* outcome_name(Outcome o)
{
    switch (o) {
    case Outcome::TargetVisited:
        return "target-visited";
    case Outcome::HorizonReached:
        return "horizon-reached";
    case Outcome::ProcessDeadlock:
        return "process-deadlock";
    case Outcome::ScriptExhausted:
        return "script-exhausted";
    }
    return "?";
}

namespace {

bool visits_target(const Objective* o, const Configuration& c)
{
    if (!o)
        return false;
    for (ProcId i = 0; i < c.states.size(); ++i)
        if (o->is_target(i, c.states[i]))
            return true;
    return false;
}

std::size_t total_buffered(const Configuration& c)
{
    std::size_t n = 0;
    for (const auto& b : c.buffers)
        n += b.size();
    return n;
}

} // namespace

PlayResult simulate_play(const Program& p, const Objective* o, const Configuration& c0,
                         ProcessStrategy& procs, const UpdateStrategySpec& upd,
                         std::size_t horizon)
{
    check_configuration(p, c0);
    PlayResult r;
    r.play.start = c0;
    std::mt19937_64 rng(upd.seed);
    std::size_t update_turns = 0;
    Configuration cur = c0;

    if (visits_target(o, cur)) {
        r.outcome = Outcome::TargetVisited;
        r.target_position = 1;
        return r;
    }
    for (std::size_t ply = 1; ply <= horizon; ++ply) {
        PlayStep step;
        if (Play::turn_at(ply - 1) == Turn::Process) {
            if (enabled_moves(p, cur).empty()) {
                r.outcome = Outcome::ProcessDeadlock;
                r.deadlock_buffers_empty = total_buffered(cur) == 0;
                return r;
            }
            const auto m = procs.choose(p, cur, ply);
            if (!m) {
                r.outcome = Outcome::ScriptExhausted;
                return r;
            }
            if (m->proc >= p.process_count() ||
                m->transition >= p.process(m->proc).transitions().size() ||
                !is_enabled(p, cur, m->proc, m->transition))
                throw IllegalMoveError(ply, "process move is not enabled");
            step.turn = Turn::Process;
            step.move = *m;
            cur = apply_instruction(p, cur, *m);
        } else {
            step.turn = Turn::Update;
            switch (upd.kind) {
            case UpdateStrategySpec::Kind::Never:
                break;
            case UpdateStrategySpec::Kind::FlushAll:
                for (ProcId i = 0; i < cur.buffers.size(); ++i)
                    step.flushes.insert(step.flushes.end(), cur.buffers[i].size(), i);
                break;
            case UpdateStrategySpec::Kind::Random: {
                const std::size_t k = rng() % (total_buffered(cur) + 1);
                Configuration probe = cur;
                for (std::size_t j = 0; j < k; ++j) {
                    std::vector<ProcId> nonempty;
                    for (ProcId i = 0; i < probe.buffers.size(); ++i)
                        if (!probe.buffers[i].empty())
                            nonempty.push_back(i);
                    const ProcId pick = nonempty[rng() % nonempty.size()];
                    probe = apply_update(p, probe, pick);
                    step.flushes.push_back(pick);
                }
                break;
            }
            case UpdateStrategySpec::Kind::Scripted:
                if (update_turns >= upd.script.size()) {
                    r.outcome = Outcome::ScriptExhausted;
                    return r;
                }
                step.flushes = upd.script[update_turns];
                break;
            }
            ++update_turns;
            for (auto i : step.flushes) {
                if (i >= p.process_count() || cur.buffers[i].empty())
                    throw IllegalMoveError(ply, "flush of an empty buffer");
                cur = apply_update(p, cur, i);
            }
        }
        step.after = cur;
        r.play.steps.push_back(std::move(step));
        if (visits_target(o, cur)) {
            r.outcome = Outcome::TargetVisited;
            r.target_position = r.play.length();
            return r;
        }
    }
    r.outcome = Outcome::HorizonReached;
    return r;
}

PlayResult simulate_script(const Program& p, const Objective* o, const Configuration& c0,
                           const PlayScript& script, std::size_t horizon)
{
    std::vector<Move> moves;
    std::vector<std::vector<ProcId>> flushes;
    for (std::size_t k = 0; k < script.size(); ++k) {
        if (script[k].turn != Play::turn_at(k))
            throw IllegalMoveError(k + 1, "turns must alternate, starting with the process player");
        if (script[k].turn == Turn::Process)
            moves.push_back(script[k].move);
        else
            flushes.push_back(script[k].flushes);
    }
    ScriptedProcessStrategy procs(std::move(moves));
    return simulate_play(p, o, c0, procs, UpdateStrategySpec::scripted(std::move(flushes)),
                         horizon >= script.size() ? script.size() + 1 : horizon);
}

Verdict check_update_fair_prefix(const Program& p, const Play& play)
{
    for (std::size_t k = 0; k < play.length(); k += 2) {
        const auto& c = play.config(k);
        if (enabled_moves(p, c).empty() && total_buffered(c) != 0)
            return Verdict::fail("process deadlock with pending buffer messages at position " +
                                     std::to_string(k + 1),
                                 {std::to_string(k + 1)});
    }
    return Verdict::pass();
}

std::vector<FairnessStats> process_fairness_report(const Program& p, const Play& play,
                                                   std::size_t window)
{
    if (window == 0)
        throw ValidationError("fairness window must be positive");
    std::vector<FairnessStats> stats(p.process_count());
    for (ProcId i = 0; i < p.process_count(); ++i)
        stats[i].process = p.process(i).name();

    // One row per process turn that was followed by a move.
    std::vector<std::vector<bool>> enabled;
    std::vector<ProcId> mover;
    for (std::size_t k = 0; k + 1 < play.length(); k += 2) {
        std::vector<bool> row(p.process_count(), false);
        for (const auto& m : enabled_moves(p, play.config(k)))
            row[m.proc] = true;
        enabled.push_back(std::move(row));
        mover.push_back(play.steps[k].move.proc);
    }
    const std::size_t turns = mover.size();
    std::size_t full = turns / window;
    const std::size_t windows = full == 0 ? (turns == 0 ? 0 : 1) : full;
    const std::size_t span = full == 0 ? turns : window;

    for (ProcId i = 0; i < p.process_count(); ++i) {
        auto& s = stats[i];
        for (std::size_t t = 0; t < turns; ++t) {
            s.enabled_plies += enabled[t][i];
            s.moved_plies += mover[t] == i;
        }
        bool every = windows > 0;
        for (std::size_t w = 0; w < windows; ++w) {
            std::size_t en = 0, mv = 0;
            for (std::size_t t = w * span; t < (w + 1) * span; ++t) {
                en += enabled[t][i];
                mv += mover[t] == i;
            }
            s.windows.emplace_back(en, mv);
            every = every && en > 0;
        }
        s.starved = every && s.moved_plies == 0;
    }
    return stats;
}

} // namespace tsogame
