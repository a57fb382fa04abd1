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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsogame/error.hpp"
#include "tsogame/program.hpp"

namespace tsogame {

/// A is the process player, B the update player.
enum class Player { A, B };

inline Player opponent(Player p) { return p == Player::A ? Player::B : Player::A; }
inline const char* player_name(Player p) { return p == Player::A ? "A" : "B"; }

using VertexId = std::size_t;
using EdgeId = std::size_t;

inline constexpr std::size_t kNoTag = std::numeric_limits<std::size_t>::max();

struct Edge
{
    VertexId from = 0;
    VertexId to = 0;
    std::string label;
    std::size_t tag = kNoTag; // caller payload, e.g. a transition index
};

/// Explicit bipartite game graph. Vertex ids are dense and their order is the
/// deterministic order used for every tie-break.
class Arena
{
public:
    VertexId add_vertex(Player owner, std::string name = {});
    /// Throws ValidationError unless the owners of `from` and `to` differ.
    EdgeId add_edge(VertexId from, VertexId to, std::string label = {}, std::size_t tag = kNoTag);

    std::size_t size() const noexcept { return owner_.size(); }
    Player owner(VertexId v) const { return owner_.at(v); }
    const std::string& name(VertexId v) const { return name_.at(v); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    std::span<const EdgeId> out(VertexId v) const { return out_.at(v); }
    std::span<const EdgeId> in(VertexId v) const { return in_.at(v); }

    VertexId initial() const noexcept { return initial_; }
    void set_initial(VertexId v);

    /// Same graph with every vertex handed to the other player.
    Arena with_swapped_owners() const;

private:
    std::vector<Player> owner_;
    std::vector<std::string> name_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
    VertexId initial_ = 0;
};

inline constexpr std::size_t kNoRank = std::numeric_limits<std::size_t>::max();

struct Solution
{
    std::vector<Player> winner;
    std::vector<std::optional<EdgeId>> strategy_a;
    std::vector<std::optional<EdgeId>> strategy_b;
    /// Attractor layer of the attracting player (A for Reach, B for Safe); kNoRank outside.
    std::vector<std::size_t> rank;

    const std::vector<std::optional<EdgeId>>& strategy(Player p) const
    {
        return p == Player::A ? strategy_a : strategy_b;
    }
};

/// Reach: A wins iff she can force a visit to `special` (absorbing) or a B
/// deadlock. Safe: A wins iff she can avoid `special` and her own deadlocks forever.
Solution solve_game(const Arena& a, Mode mode, const std::vector<bool>& special);

/// Vertex is terminal for the solver: special, or without outgoing edges.
bool is_terminal(const Arena& a, const std::vector<bool>& special, VertexId v);

/// Adversarial audit of both strategies from every vertex their owner wins.
Verdict check_strategy(const Arena& a, Mode mode, const std::vector<bool>& special,
                       const Solution& s, std::size_t horizon);

std::string arena_to_dot(const Arena& a, const std::vector<bool>& special);

} // namespace tsogame
