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

#include <json.hpp>

#include "tsogame/game.hpp"
#include "tsogame/load_buffer.hpp"
#include "tsogame/program.hpp"
#include "tsogame/solver.hpp"
#include "tsogame/tso.hpp"
#include "tsogame/view_game.hpp"

namespace tsogame {

using Json = nlohmann::ordered_json;

/// `{"state":{"P":"q"},"buffers":{"P":[["x","1"]]},"memory":{"x":"0"}}`, buffers newest first.
Json config_to_json(const Program& p, const Configuration& c);
Configuration config_from_json(const Program& p, const Json& j);

/// Load buffers head first; own messages carry a third `"own"` entry.
Json lb_config_to_json(const Program& p, const LbConfiguration& c);

Json arena_to_json(const Arena& a, const std::vector<bool>& special);

Json script_to_json(const Program& p, const PlayScript& s);
/// Unknown processes or transitions raise IllegalMoveError with the 1-based ply.
PlayScript script_from_json(const Program& p, const Json& j);
/// The moves actually made in a simulated play, as a script.
PlayScript script_of_play(const Play& play);

Json play_result_to_json(const Program& p, const PlayResult& r);
Json decision_to_json(const Program& p, const Decision& d);
Json exploration_to_json(const Program& p, const Exploration& ex);
Json lb_exploration_to_json(const Program& p, const LbExploration& ex);
Json verdict_to_json(const Verdict& v);

} // namespace tsogame
