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

namespace tsogame {

struct Message
{
    VarId var = 0;
    ValueId value = 0;
    friend auto operator<=>(const Message&, const Message&) = default;
};

/// Store buffer, newest message first: writes insert at the front, updates pop the back.
using Buffer = std::vector<Message>;

struct Configuration
{
    std::vector<StateId> states;
    std::vector<Buffer> buffers;
    std::vector<ValueId> memory;

    friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

enum class Turn { Process, Update };

struct Move
{
    ProcId proc = 0;
    std::size_t transition = 0; // index into the process's transitions()
    friend auto operator<=>(const Move&, const Move&) = default;
};

Configuration initial_configuration(const Program& p);

/// Throws ValidationError if c does not fit p's shape.
void check_configuration(const Program& p, const Configuration& c);

/// Value process `proc` would read from x: newest own buffered write, else memory.
ValueId readable_value(const Configuration& c, ProcId proc, VarId x);

bool is_enabled(const Program& p, const Configuration& c, ProcId proc, std::size_t transition);
std::vector<Move> enabled_moves(const Program& p, const Configuration& c);

Configuration apply_instruction(const Program& p, const Configuration& c, ProcId proc,
                                std::size_t transition);
inline Configuration apply_instruction(const Program& p, const Configuration& c, const Move& m)
{
    return apply_instruction(p, c, m.proc, m.transition);
}

/// Flushes the oldest message of `proc` into memory.
Configuration apply_update(const Program& p, const Configuration& c, ProcId proc);

inline constexpr std::size_t kDefaultClosureCap = 100000;

/// All configurations reachable from c by flushes only (c included), sorted.
std::vector<Configuration> update_closure(const Program& p, const Configuration& c,
                                          std::size_t cap = kDefaultClosureCap);

/// Restriction of a configuration to one process (memory kept whole).
Configuration restrict_to(const Configuration& c, ProcId proc);

struct ExploreStep
{
    std::size_t from = 0;
    std::size_t to = 0;
    bool update = false;
    Move move; // for updates only `proc` is meaningful
};

struct Exploration
{
    std::vector<Configuration> configs; // BFS discovery order, configs[0] is the start
    std::vector<bool> frontier;         // some write was cut off by the buffer bound
    std::vector<ExploreStep> steps;
};

/// Reachable configurations by instructions and single flushes, keeping every
/// buffer within `buffer_bound`. Throws ResourceError past `max_states`.
Exploration bounded_explore(const Program& p, const Configuration& c0, std::size_t buffer_bound,
                            std::size_t max_states);

std::string step_label(const Program& p, const ExploreStep& s);

} // namespace tsogame
