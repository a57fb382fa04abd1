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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsogame/game.hpp"
#include "tsogame/program.hpp"
#include "tsogame/tso.hpp"

namespace tsogame {

/// What a single process can observe: its local state, the value it would read
/// from each variable, and whether its buffer is empty (F).
struct View
{
    StateId state = 0;
    std::vector<ValueId> readable;
    bool fence_enabled = true;

    friend auto operator<=>(const View&, const View&) = default;
};

struct ViewVertex
{
    View view;
    Player owner = Player::A;

    friend auto operator<=>(const ViewVertex&, const ViewVertex&) = default;
};

/// Throws ValidationError unless p has exactly one process.
View view_of(const Program& p, const Configuration& c);

/// `q|x=1|y=0|F=0|A`
std::string view_vertex_id(const Program& p, const ViewVertex& v);

struct ViewArena
{
    Arena arena;
    std::vector<ViewVertex> vertices; // indexed by VertexId, canonically sorted
    std::map<ViewVertex, VertexId> index;

    std::optional<VertexId> find(const ViewVertex& v) const;
};

struct ViewArenaOptions
{
    /// Without flush edges the update player can only stay.
    bool flush_edges = true;
};

/// Views reachable from (init, A). A-edges carry the transition index as tag.
ViewArena build_view_arena(const Program& p, const View& init, ViewArenaOptions opts = {});

/// Vertices whose local state is a target, in both copies.
std::vector<bool> special_vertices(const ViewArena& va, const Objective& o);

struct SingleSolve
{
    ViewArena varena;
    std::vector<bool> special;
    Solution solution;
    VertexId initial = 0;
    Player winner = Player::B;
};

/// Decides the single-process game from c0 (empty buffer required).
SingleSolve solve_single_process(const Program& p, const Objective& o, const Configuration& c0,
                                 ViewArenaOptions opts = {});

/// |Q| * |Dom|^|Vars| * 2 for one process; ResourceError on overflow.
std::uint64_t state_space_bound(const Program& p, ProcId proc = 0);

/// Equal-view configurations must agree on enabled labels, successor views and
/// update-closure views. ValidationError if the views differ to begin with.
Verdict check_equal_view(const Program& p, const Configuration& c1, const Configuration& c2);

/// Zig/zag check of c ~ v(c) over the configurations reachable within the buffer bound.
Verdict check_bisimulation(const Program& p, const Configuration& c0, std::size_t buffer_bound,
                           std::size_t max_states);
Verdict check_bisimulation(const Program& p, const ViewArena& va, const Configuration& c0,
                           std::size_t buffer_bound, std::size_t max_states);

/// Winner at the initial vertex must not depend on the flush edges, in both modes.
Verdict dummy_update_equivalence(const Program& p, const Objective& o, const Configuration& c0);

} // namespace tsogame
