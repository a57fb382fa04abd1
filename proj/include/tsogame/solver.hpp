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

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tsogame/program.hpp"
#include "tsogame/tso.hpp"
#include "tsogame/view_game.hpp"

namespace tsogame {

struct Decision
{
    Player winner = Player::B;
    std::optional<ProcId> witness; // first winning projection in declaration order
    std::vector<Program> programs;    // per-process projections
    std::vector<Objective> objectives;
    std::vector<SingleSolve> projections;
    std::vector<std::string> warnings;
};

/// The process player wins the concurrent game iff she wins some single-process
/// projection. Requires empty initial buffers and an initial state outside the targets.
Decision decide(const Program& p, const Objective& o, const Configuration& c0);
Decision decide(const Program& p, const Objective& o);

class ProcessStrategy
{
public:
    virtual ~ProcessStrategy() = default;
    /// `ply` is the 1-based index of the move about to be made. nullopt ends the play.
    virtual std::optional<Move> choose(const Program& p, const Configuration& c, std::size_t ply) = 0;
};

/// Plays the view-level strategy of one projection inside the full program.
class LiftedStrategy : public ProcessStrategy
{
public:
    LiftedStrategy(const Decision& d, ProcId proc);
    LiftedStrategy(Program projected, SingleSolve solve, ProcId proc);

    std::optional<Move> choose(const Program& p, const Configuration& c, std::size_t ply) override;
    ProcId process() const noexcept { return proc_; }

private:
    Program projected_;
    SingleSolve solve_;
    ProcId proc_;
};

/// Uniform choice among enabled moves.
class RandomProcessStrategy : public ProcessStrategy
{
public:
    explicit RandomProcessStrategy(std::uint64_t seed) : rng_(seed) {}
    std::optional<Move> choose(const Program& p, const Configuration& c, std::size_t ply) override;

private:
    std::mt19937_64 rng_;
};

class ScriptedProcessStrategy : public ProcessStrategy
{
public:
    explicit ScriptedProcessStrategy(std::vector<Move> moves) : moves_(std::move(moves)) {}
    std::optional<Move> choose(const Program& p, const Configuration& c, std::size_t ply) override;

private:
    std::vector<Move> moves_;
    std::size_t next_ = 0;
};

struct UpdateStrategySpec
{
    enum class Kind { Never, FlushAll, Random, Scripted };
    Kind kind = Kind::Never;
    std::uint64_t seed = 0;
    std::vector<std::vector<ProcId>> script; // one flush list per update turn

    static UpdateStrategySpec never() { return {}; }
    static UpdateStrategySpec flush_all() { return {Kind::FlushAll, 0, {}}; }
    static UpdateStrategySpec random(std::uint64_t seed) { return {Kind::Random, seed, {}}; }
    static UpdateStrategySpec scripted(std::vector<std::vector<ProcId>> s)
    {
        return {Kind::Scripted, 0, std::move(s)};
    }
};

struct PlayStep
{
    Turn turn = Turn::Process;
    Move move;                   // process turns
    std::vector<ProcId> flushes; // update turns, one entry per flushed message
    Configuration after;
};

/// c0 at a process turn followed by alternating steps.
struct Play
{
    Configuration start;
    std::vector<PlayStep> steps;

    std::size_t length() const noexcept { return steps.size() + 1; }
    const Configuration& config(std::size_t k) const { return k == 0 ? start : steps.at(k - 1).after; }
    static Turn turn_at(std::size_t k) { return k % 2 == 0 ? Turn::Process : Turn::Update; }
};

enum class Outcome { TargetVisited, HorizonReached, ProcessDeadlock, ScriptExhausted };

const char* outcome_name(Outcome o);

struct PlayResult
{
    Play play;
    Outcome outcome = Outcome::HorizonReached;
    /// 1-based position in the play of the first configuration with a target state.
    std::optional<std::size_t> target_position;
    bool deadlock_buffers_empty = true;
};

/// Runs at most `horizon` plies. Stops at the first target visit or process deadlock.
/// Illegal strategy or script moves raise IllegalMoveError with the 1-based ply.
PlayResult simulate_play(const Program& p, const Objective* o, const Configuration& c0,
                         ProcessStrategy& procs, const UpdateStrategySpec& upd,
                         std::size_t horizon);

struct ScriptMove
{
    Turn turn = Turn::Process;
    Move move;
    std::vector<ProcId> flushes;
};

using PlayScript = std::vector<ScriptMove>;

/// Script-driven play; turns must alternate starting with the process player.
PlayResult simulate_script(const Program& p, const Objective* o, const Configuration& c0,
                           const PlayScript& script, std::size_t horizon);

/// Fails if some process-turn configuration is deadlocked while a buffer is nonempty.
Verdict check_update_fair_prefix(const Program& p, const Play& play);

struct FairnessStats
{
    std::string process;
    std::size_t enabled_plies = 0;
    std::size_t moved_plies = 0;
    std::vector<std::pair<std::size_t, std::size_t>> windows; // (enabled, moved) per window
    bool starved = false; // enabled in every window, never moved
};

/// Windows count process turns; only complete windows are used unless none exists.
std::vector<FairnessStats> process_fairness_report(const Program& p, const Play& play,
                                                   std::size_t window);

} // namespace tsogame
