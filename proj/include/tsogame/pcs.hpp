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
#include <string_view>
#include <vector>

#include "tsogame/program.hpp"
#include "tsogame/solver.hpp"

namespace tsogame {

enum class PcsOp { Send, Recv, Skip };

struct PcsTransition
{
    std::size_t from = 0;
    std::size_t to = 0;
    PcsOp op = PcsOp::Skip;
    std::size_t message = 0; // Send/Recv only
};

/// Perfect channel system: finite control plus one reliable FIFO channel.
struct Pcs
{
    std::vector<std::string> states;
    std::vector<std::string> messages;
    std::size_t initial = 0;
    std::vector<std::size_t> finals;
    std::vector<PcsTransition> transitions; // identified as e0, e1, ... in this order
};

struct PcsConfig
{
    std::size_t state = 0;
    std::vector<std::size_t> channel; // head (oldest) first
    friend auto operator<=>(const PcsConfig&, const PcsConfig&) = default;
};

/// `states ..` / `messages ..` / `init s` / `final s ..` / `trans FROM TO send|recv m` / `trans FROM TO skip`
Pcs parse_pcs(std::string_view text);
std::string serialize_pcs(const Pcs& l);

std::string pcs_transition_id(std::size_t e);
/// Accepts `e3` or a bare index.
std::size_t parse_pcs_transition_id(const Pcs& l, std::string_view token);

PcsConfig pcs_initial(const Pcs& l);
bool pcs_enabled(const Pcs& l, const PcsConfig& c, std::size_t e);
/// ValidationError unless transition e is enabled at c.
PcsConfig pcs_step(const Pcs& l, const PcsConfig& c, std::size_t e);

enum class Fairness { Update, Process };

/// Reach game for update fairness, or Safe game for process fairness.
ParsedProgram pcs_to_update_fairness_game(const Pcs& l);
ParsedProgram pcs_to_process_fairness_game(const Pcs& l);
ParsedProgram pcs_to_game(const Pcs& l, Fairness fairness);

/// Honest alternating schedule that replays `run` inside the generated program.
PlayScript script_from_pcs_run(const Pcs& l, const std::vector<std::size_t>& run,
                               Fairness fairness);

/// Program state names used by the generators.
std::string pcs_gadget_state(std::string_view kind, std::size_t e);
inline constexpr const char* kWinState = "q_win2";
inline constexpr const char* kSafeSink = "q_F";

} // namespace tsogame
