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

#include <cstddef>
#include <string>
#include <vector>

#include "tsogame/program.hpp"
#include "tsogame/tso.hpp"

namespace tsogame {

struct LbMessage
{
    VarId var = 0;
    ValueId value = 0;
    bool own = false;
    friend auto operator<=>(const LbMessage&, const LbMessage&) = default;
};

/// Load buffer, head (oldest) first: propagation appends, deletion and reads act at the head.
using LoadBuffer = std::vector<LbMessage>;

struct LbConfiguration
{
    std::vector<StateId> states;
    std::vector<LoadBuffer> buffers;
    std::vector<ValueId> memory;
    friend auto operator<=>(const LbConfiguration&, const LbConfiguration&) = default;
};

struct LbMove
{
    enum class Kind { Instruction, Propagate, Delete };
    Kind kind = Kind::Instruction;
    ProcId proc = 0;
    std::size_t transition = 0; // Instruction
    VarId var = 0;              // Propagate
    friend auto operator<=>(const LbMove&, const LbMove&) = default;
};

LbConfiguration lb_initial(const Program& p);
bool lb_is_enabled(const Program& p, const LbConfiguration& c, ProcId proc, std::size_t transition);
/// Instruction moves, then per process one Propagate per variable and a Delete if nonempty.
std::vector<LbMove> lb_enabled_moves(const Program& p, const LbConfiguration& c);
LbConfiguration lb_apply(const Program& p, const LbConfiguration& c, const LbMove& m);
std::string lb_move_label(const Program& p, const LbMove& m);

struct LbExploration
{
    std::vector<LbConfiguration> configs;
    std::vector<bool> frontier;
    struct Step
    {
        std::size_t from;
        std::size_t to;
        LbMove move;
    };
    std::vector<Step> steps;
};

/// All configurations reachable with every load buffer within `buffer_bound`.
LbExploration lb_bounded_explore(const Program& p, const LbConfiguration& c0,
                                 std::size_t buffer_bound, std::size_t max_states);

/// Three processes over x in {0,1,2}; Proc3 must not reach qF (safety).
ParsedProgram divergence_program();

enum class FlushOrder { Proc1First, Proc2First };

/// Store-buffer side: from both writes pending and Proc3 at `pivot` ("q2" or "q3"),
/// the reactive update strategy flushing in `order` forces qF or a process deadlock
/// on every process-fair continuation within `horizon` plies.
Verdict sb_forcing_check(std::size_t horizon, const std::string& pivot, FlushOrder order);

struct LbEscapeOptions
{
    std::size_t propagation_bound = 4;
    bool stale_propagation = false; // fault injection: allow propagating x=1 at any time
};

/// Load-buffer side: after Proc1/Proc2 write and Proc3 commits to q3, Proc3 can
/// never read x=1 at q5, and the play never deadlocks there.
Verdict lb_escape_check(const LbEscapeOptions& opts);

} // namespace tsogame
