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

#include "tsogame/game.hpp"

#include <deque>
#include <sstream>
#include <tuple>

namespace tsogame {

VertexId Arena::add_vertex(Player owner, std::string name)
{
    const VertexId v = owner_.size();
    owner_.push_back(owner);
    name_.push_back(name.empty() ? "v" + std::to_string(v) : std::move(name));
    out_.emplace_back();
    in_.emplace_back();
    return v;
}

EdgeId Arena::add_edge(VertexId from, VertexId to, std::string label, std::size_t tag)
{
    if (from >= size() || to >= size())
        throw ValidationError("edge endpoint out of range");
    if (owner_[from] == owner_[to])
        throw ValidationError("edge " + name_[from] + " -> " + name_[to] +
                              " does not alternate between players");
    const EdgeId e = edges_.size();
    edges_.push_back({from, to, std::move(label), tag});
    out_[from].push_back(e);
    in_[to].push_back(e);
    return e;
}

void Arena::set_initial(VertexId v)
{
    if (v >= size())
        throw ValidationError("initial vertex out of range");
    initial_ = v;
}

Arena Arena::with_swapped_owners() const
{
    Arena out;
    for (VertexId v = 0; v < size(); ++v)
        out.add_vertex(opponent(owner_[v]), name_[v]);
    for (const auto& e : edges_)
        out.add_edge(e.from, e.to, e.label, e.tag);
    out.initial_ = initial_;
    return out;
}

bool is_terminal(const Arena& a, const std::vector<bool>& special, VertexId v)
{
    return special[v] || a.out(v).empty();
}

Solution solve_game(const Arena& a, Mode mode, const std::vector<bool>& special)
{
    if (special.size() != a.size())
        throw ValidationError("special set does not match the arena size");
    // The attracting player forces a visit to special vertices or to opponent deadlocks.
    const Player attractor = mode == Mode::Reach ? Player::A : Player::B;
    const std::size_t n = a.size();

    Solution s;
    s.rank.assign(n, kNoRank);
    s.strategy_a.assign(n, std::nullopt);
    s.strategy_b.assign(n, std::nullopt);

    std::vector<std::size_t> remaining(n);
    std::deque<VertexId> queue;
    for (VertexId v = 0; v < n; ++v) {
        remaining[v] = a.out(v).size();
        if (special[v] || (a.owner(v) != attractor && a.out(v).empty())) {
            s.rank[v] = 0;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop_front();
        for (auto e : a.in(v)) {
            const VertexId u = a.edge(e).from;
            if (s.rank[u] != kNoRank)
                continue;
            if (a.owner(u) == attractor || --remaining[u] == 0) {
                s.rank[u] = s.rank[v] + 1;
                queue.push_back(u);
            }
        }
    }

    s.winner.resize(n);
    auto& attract_strategy = attractor == Player::A ? s.strategy_a : s.strategy_b;
    auto& avoid_strategy = attractor == Player::A ? s.strategy_b : s.strategy_a;
    for (VertexId v = 0; v < n; ++v) {
        const bool attracted = s.rank[v] != kNoRank;
        s.winner[v] = attracted ? attractor : opponent(attractor);
        if (is_terminal(a, special, v))
            continue;
        if (attracted && a.owner(v) == attractor) {
            std::optional<EdgeId> best;
            for (auto e : a.out(v)) {
                const VertexId w = a.edge(e).to;
                if (s.rank[w] == kNoRank)
                    continue;
                if (!best || std::tie(s.rank[w], w) < std::tie(s.rank[a.edge(*best).to],
                                                               a.edge(*best).to))
                    best = e;
            }
            attract_strategy[v] = best;
        } else if (!attracted && a.owner(v) != attractor) {
            for (auto e : a.out(v)) {
                if (s.rank[a.edge(e).to] == kNoRank) {
                    avoid_strategy[v] = e;
                    break;
                }
            }
        }
    }
    return s;
}

namespace {

std::vector<std::string> path_names(const Arena& a, const std::vector<VertexId>& path)
{
    std::vector<std::string> out;
    out.reserve(path.size());
    for (auto v : path)
        out.push_back(a.name(v));
    return out;
}

// Q must reach `goal` from every start; Q moves by strategy, the opponent freely.
Verdict audit_reacher(const Arena& a, Player q, const std::vector<bool>& goal,
                      const std::vector<std::optional<EdgeId>>& strat,
                      const std::vector<VertexId>& starts, std::size_t horizon)
{
    enum : unsigned char { Fresh, Open, Done };
    const std::size_t n = a.size();
    std::vector<unsigned char> mark(n, Fresh);
    std::vector<std::size_t> dist(n, 0);

    auto successors = [&](VertexId u, std::vector<VertexId>& out) -> std::optional<std::string> {
        out.clear();
        if (goal[u])
            return std::nullopt;
        if (a.owner(u) == q) {
            if (!strat[u])
                return "no strategy move at " + a.name(u);
            const auto& e = a.edge(*strat[u]);
            if (e.from != u)
                return "strategy edge does not leave " + a.name(u);
            out.push_back(e.to);
        } else {
            for (auto e : a.out(u))
                out.push_back(a.edge(e).to);
        }
        if (out.empty())
            return "deadlock of the reaching player at " + a.name(u);
        return std::nullopt;
    };

    struct Frame
    {
        VertexId v;
        std::vector<VertexId> succ;
        std::size_t next = 0;
    };
    for (auto start : starts) {
        if (mark[start] == Done)
            continue;
        std::vector<Frame> stack;
        auto open = [&](VertexId v) -> std::optional<Verdict> {
            Frame f{v, {}, 0};
            if (auto err = successors(v, f.succ)) {
                std::vector<VertexId> path;
                for (const auto& fr : stack)
                    path.push_back(fr.v);
                path.push_back(v);
                return Verdict::fail(*err, path_names(a, path));
            }
            mark[v] = Open;
            stack.push_back(std::move(f));
            return std::nullopt;
        };
        if (auto bad = open(start))
            return *bad;
        while (!stack.empty()) {
            auto& top = stack.back();
            if (top.next < top.succ.size()) {
                const VertexId w = top.succ[top.next++];
                if (mark[w] == Open) {
                    std::vector<VertexId> path;
                    for (const auto& fr : stack)
                        path.push_back(fr.v);
                    path.push_back(w);
                    return Verdict::fail("opponent can force a cycle avoiding the goal",
                                         path_names(a, path));
                }
                if (mark[w] == Fresh)
                    if (auto bad = open(w))
                        return *bad;
                continue;
            }
            std::size_t d = 0;
            for (auto w : top.succ)
                d = std::max(d, dist[w] + 1);
            dist[top.v] = d;
            mark[top.v] = Done;
            stack.pop_back();
        }
        if (dist[start] > horizon)
            return Verdict::fail("goal not reached within " + std::to_string(horizon) +
                                     " plies from " + a.name(start),
                                 {a.name(start)});
    }
    return Verdict::pass();
}

// Q must avoid `bad` forever from every start.
Verdict audit_safety(const Arena& a, Player q, const std::vector<bool>& bad,
                     const std::vector<std::optional<EdgeId>>& strat,
                     const std::vector<VertexId>& starts, std::size_t horizon)
{
    const std::size_t n = a.size();
    constexpr VertexId kNone = static_cast<VertexId>(-1);
    std::vector<VertexId> parent(n, kNone);
    std::vector<std::size_t> depth(n, kNoRank);
    std::deque<VertexId> queue;
    for (auto s : starts) {
        depth[s] = 0;
        queue.push_back(s);
    }
    auto trail = [&](VertexId v) {
        std::vector<VertexId> path;
        for (VertexId u = v; u != kNone; u = parent[u])
            path.insert(path.begin(), u);
        return path_names(a, path);
    };
    while (!queue.empty()) {
        const VertexId u = queue.front();
        queue.pop_front();
        if (bad[u])
            return Verdict::fail("unsafe vertex " + a.name(u) + " reachable", trail(u));
        if (depth[u] >= horizon)
            continue;
        std::vector<VertexId> next;
        if (a.owner(u) == q) {
            if (!strat[u])
                return Verdict::fail("no strategy move at " + a.name(u), trail(u));
            const auto& e = a.edge(*strat[u]);
            if (e.from != u)
                return Verdict::fail("strategy edge does not leave " + a.name(u), trail(u));
            next.push_back(e.to);
        } else {
            for (auto e : a.out(u))
                next.push_back(a.edge(e).to);
        }
        for (auto w : next) {
            if (depth[w] != kNoRank)
                continue;
            depth[w] = depth[u] + 1;
            parent[w] = u;
            queue.push_back(w);
        }
    }
    return Verdict::pass();
}

} // namespace

Verdict check_strategy(const Arena& a, Mode mode, const std::vector<bool>& special,
                       const Solution& s, std::size_t horizon)
{
    const std::size_t n = a.size();
    if (special.size() != n || s.winner.size() != n || s.strategy_a.size() != n ||
        s.strategy_b.size() != n)
        throw ValidationError("solution does not match the arena size");

    for (VertexId v = 0; v < n; ++v) {
        for (Player q : {Player::A, Player::B}) {
            const bool expected =
                a.owner(v) == q && s.winner[v] == q && !is_terminal(a, special, v);
            if (s.strategy(q)[v].has_value() != expected)
                return Verdict::fail(std::string("strategy of ") + player_name(q) +
                                         (expected ? " missing at " : " unexpectedly defined at ") +
                                         a.name(v),
                                     {a.name(v)});
            if (expected && a.edge(*s.strategy(q)[v]).from != v)
                return Verdict::fail("strategy edge does not leave " + a.name(v), {a.name(v)});
        }
    }

    for (Player q : {Player::A, Player::B}) {
        std::vector<VertexId> starts;
        for (VertexId v = 0; v < n; ++v)
            if (s.winner[v] == q)
                starts.push_back(v);
        if (starts.empty())
            continue;
        const bool reacher = (q == Player::A) == (mode == Mode::Reach);
        std::vector<bool> marked(n, false);
        for (VertexId v = 0; v < n; ++v) {
            const bool deadlocked = a.out(v).empty();
            // Reacher aims at special or opponent deadlocks; the safety side avoids special
            // and its own deadlocks.
            marked[v] = special[v] || (deadlocked && (a.owner(v) == q) != reacher);
        }
        const auto& strat = s.strategy(q);
        Verdict v = reacher ? audit_reacher(a, q, marked, strat, starts, horizon)
                            : audit_safety(a, q, marked, strat, starts, horizon);
        if (!v) {
            v.detail = std::string("player ") + player_name(q) + ": " + v.detail;
            return v;
        }
    }
    return Verdict::pass("both strategies verified");
}

namespace {

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string arena_to_dot(const Arena& a, const std::vector<bool>& special)
{
    std::ostringstream out;
    out << "digraph arena {\n";
    for (VertexId v = 0; v < a.size(); ++v) {
        out << "  v" << v << " [label=\"" << dot_escape(a.name(v)) << "\", shape="
            << (a.owner(v) == Player::A ? "box" : "ellipse");
        if (v < special.size() && special[v])
            out << ", peripheries=2";
        if (v == a.initial())
            out << ", style=bold";
        out << "];\n";
    }
    for (const auto& e : a.edges()) {
        out << "  v" << e.from << " -> v" << e.to;
        if (!e.label.empty())
            out << " [label=\"" << dot_escape(e.label) << "\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace tsogame
