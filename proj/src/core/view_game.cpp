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

#include "tsogame/view_game.hpp"

#include <deque>
#include <set>
#include <utility>

namespace tsogame {

namespace {

void require_single(const Program& p)
{
    if (p.process_count() != 1)
        throw ValidationError("expected a single-process program, got " +
                              std::to_string(p.process_count()) + " processes");
}

} // namespace

View view_of(const Program& p, const Configuration& c)
{
    require_single(p);
    check_configuration(p, c);
    View v;
    v.state = c.states[0];
    v.readable.resize(p.vars().size());
    for (VarId x = 0; x < p.vars().size(); ++x)
        v.readable[x] = readable_value(c, 0, x);
    v.fence_enabled = c.buffers[0].empty();
    return v;
}

std::string view_vertex_id(const Program& p, const ViewVertex& v)
{
    std::string out = p.process(0).state_name(v.view.state);
    for (VarId x = 0; x < v.view.readable.size(); ++x)
        out += "|" + p.var_name(x) + "=" + p.value_name(v.view.readable[x]);
    out += v.view.fence_enabled ? "|F=1|" : "|F=0|";
    out += player_name(v.owner);
    return out;
}

std::optional<VertexId> ViewArena::find(const ViewVertex& v) const
{
    auto it = index.find(v);
    return it == index.end() ? std::nullopt : std::optional<VertexId>(it->second);
}

namespace {

struct PendingEdge
{
    ViewVertex to;
    std::string label;
    std::size_t tag;
};

std::vector<PendingEdge> view_moves(const Program& p, const ViewVertex& v, bool flush_edges)
{
    std::vector<PendingEdge> out;
    if (v.owner == Player::B) {
        out.push_back({{v.view, Player::A}, "stay", kNoTag});
        if (flush_edges && !v.view.fence_enabled)
            out.push_back({{View{v.view.state, v.view.readable, true}, Player::A}, "flush", kNoTag});
        return out;
    }
    const auto& proc = p.process(0);
    for (auto t : proc.outgoing(v.view.state)) {
        const auto& tr = proc.transition(t);
        View next = v.view;
        next.state = tr.to;
        switch (tr.instr.kind) {
        case InstrKind::Skip:
            break;
        case InstrKind::Write:
            next.readable[tr.instr.var] = tr.instr.value;
            next.fence_enabled = false;
            break;
        case InstrKind::Read:
            if (v.view.readable[tr.instr.var] != tr.instr.value)
                continue;
            break;
        case InstrKind::Fence:
            if (!v.view.fence_enabled)
                continue;
            break;
        }
        out.push_back({{next, Player::B}, p.instr_text(tr.instr), t});
    }
    return out;
}

} // namespace

ViewArena build_view_arena(const Program& p, const View& init, ViewArenaOptions opts)
{
    require_single(p);
    if (init.readable.size() != p.vars().size() || init.state >= p.process(0).states().size())
        throw ValidationError("initial view does not fit the program");

    const ViewVertex root{init, Player::A};
    std::set<ViewVertex> seen{root};
    std::deque<ViewVertex> work{root};
    while (!work.empty()) {
        const ViewVertex v = work.front();
        work.pop_front();
        for (auto& e : view_moves(p, v, opts.flush_edges))
            if (seen.insert(e.to).second)
                work.push_back(e.to);
    }

    ViewArena va;
    va.vertices.assign(seen.begin(), seen.end());
    for (const auto& v : va.vertices) {
        const auto id = va.arena.add_vertex(v.owner, view_vertex_id(p, v));
        va.index.emplace(v, id);
    }
    for (VertexId id = 0; id < va.vertices.size(); ++id)
        for (auto& e : view_moves(p, va.vertices[id], opts.flush_edges))
            va.arena.add_edge(id, va.index.at(e.to), std::move(e.label), e.tag);
    va.arena.set_initial(va.index.at(root));
    return va;
}

std::vector<bool> special_vertices(const ViewArena& va, const Objective& o)
{
    std::vector<bool> special(va.vertices.size(), false);
    for (VertexId v = 0; v < va.vertices.size(); ++v)
        special[v] = o.is_target(0, va.vertices[v].view.state);
    return special;
}

SingleSolve solve_single_process(const Program& p, const Objective& o, const Configuration& c0,
                                 ViewArenaOptions opts)
{
    require_single(p);
    check_configuration(p, c0);
    if (!c0.buffers[0].empty())
        throw ValidationError("initial configuration must have an empty buffer");
    SingleSolve out;
    out.varena = build_view_arena(p, view_of(p, c0), opts);
    out.special = special_vertices(out.varena, o);
    out.solution = solve_game(out.varena.arena, o.mode, out.special);
    out.initial = out.varena.arena.initial();
    out.winner = out.solution.winner[out.initial];
    return out;
}

std::uint64_t state_space_bound(const Program& p, ProcId proc)
{
    const auto& process = p.process(proc);
    std::uint64_t n = process.states().size();
    auto mul = [&](std::uint64_t k) {
        if (__builtin_mul_overflow(n, k, &n))
            throw ResourceError("view count overflows 64 bits");
    };
    for (std::size_t i = 0; i < p.vars().size(); ++i)
        mul(p.values().size());
    mul(2);
    return n;
}

namespace {

std::set<View> closure_views(const Program& p, const Configuration& c)
{
    std::set<View> out;
    for (const auto& d : update_closure(p, c))
        out.insert(view_of(p, d));
    return out;
}

std::string describe_view(const Program& p, const View& v)
{
    return view_vertex_id(p, {v, Player::A});
}

} // namespace

Verdict check_equal_view(const Program& p, const Configuration& c1, const Configuration& c2)
{
    const View v1 = view_of(p, c1);
    const View v2 = view_of(p, c2);
    if (v1 != v2)
        throw ValidationError("configurations have different views: " + describe_view(p, v1) +
                              " vs " + describe_view(p, v2));
    const auto& proc = p.process(0);
    for (auto t : proc.outgoing(v1.state)) {
        const std::string label = p.instr_text(proc.transition(t).instr) + " -> " +
                                  proc.state_name(proc.transition(t).to);
        const bool e1 = is_enabled(p, c1, 0, t);
        const bool e2 = is_enabled(p, c2, 0, t);
        if (e1 != e2)
            return Verdict::fail("enabledness differs", {label});
        if (!e1)
            continue;
        if (view_of(p, apply_instruction(p, c1, 0, t)) != view_of(p, apply_instruction(p, c2, 0, t)))
            return Verdict::fail("successor views differ", {label});
    }
    if (closure_views(p, c1) != closure_views(p, c2))
        return Verdict::fail("update closures reach different views", {"up*"});
    return Verdict::pass();
}

Verdict check_bisimulation(const Program& p, const Configuration& c0, std::size_t buffer_bound,
                           std::size_t max_states)
{
    require_single(p);
    const auto va = build_view_arena(p, view_of(p, c0));
    return check_bisimulation(p, va, c0, buffer_bound, max_states);
}

Verdict check_bisimulation(const Program& p, const ViewArena& va, const Configuration& c0,
                           std::size_t buffer_bound, std::size_t max_states)
{
    require_single(p);
    const auto ex = bounded_explore(p, c0, buffer_bound, max_states);
    const auto& arena = va.arena;
    const auto& proc = p.process(0);

    auto related = [&](const Configuration& c, Player owner) -> std::optional<VertexId> {
        return va.find({view_of(p, c), owner});
    };
    auto name = [&](const Configuration& c, Player owner) {
        return view_vertex_id(p, {view_of(p, c), owner});
    };

    // B-copies are checked for every A-successor; memoized by configuration.
    std::set<Configuration> b_checked;
    auto check_b = [&](const Configuration& c) -> std::optional<Verdict> {
        if (!b_checked.insert(c).second)
            return std::nullopt;
        const auto vb = related(c, Player::B);
        if (!vb)
            return Verdict::fail("configuration has no related B-vertex", {name(c, Player::B)});
        std::set<View> concrete;
        for (const auto& d : update_closure(p, c))
            concrete.insert(view_of(p, d));
        std::set<View> abstract;
        for (auto e : arena.out(*vb)) {
            const auto& w = va.vertices.at(arena.edge(e).to);
            if (w.owner != Player::A)
                return Verdict::fail("B-edge to a B-vertex", {arena.name(*vb)});
            abstract.insert(w.view);
        }
        for (const auto& v : concrete)
            if (!abstract.count(v))
                return Verdict::fail("zig: update has no matching view edge",
                                     {arena.name(*vb), "up*", describe_view(p, v)});
        for (const auto& v : abstract)
            if (!concrete.count(v))
                return Verdict::fail("zag: view edge has no matching update",
                                     {arena.name(*vb), "up*", describe_view(p, v)});
        return std::nullopt;
    };

    for (const auto& c : ex.configs) {
        const auto va_id = related(c, Player::A);
        if (!va_id)
            return Verdict::fail("configuration has no related A-vertex", {name(c, Player::A)});
        std::set<std::pair<std::string, VertexId>> concrete;
        for (auto t : proc.outgoing(c.states[0])) {
            if (!is_enabled(p, c, 0, t))
                continue;
            const auto next = apply_instruction(p, c, 0, t);
            const auto vb = related(next, Player::B);
            if (!vb)
                return Verdict::fail("zig: move has no matching view edge",
                                     {arena.name(*va_id), p.instr_text(proc.transition(t).instr)});
            concrete.emplace(p.instr_text(proc.transition(t).instr), *vb);
            if (auto bad = check_b(next))
                return *bad;
        }
        std::set<std::pair<std::string, VertexId>> abstract;
        for (auto e : arena.out(*va_id))
            abstract.emplace(arena.edge(e).label, arena.edge(e).to);
        for (const auto& m : concrete)
            if (!abstract.count(m))
                return Verdict::fail("zig: move has no matching view edge",
                                     {arena.name(*va_id), m.first, arena.name(m.second)});
        for (const auto& m : abstract)
            if (!concrete.count(m))
                return Verdict::fail("zag: view edge has no matching move",
                                     {arena.name(*va_id), m.first, arena.name(m.second)});
    }
    return Verdict::pass(std::to_string(ex.configs.size()) + " configurations related");
}

Verdict dummy_update_equivalence(const Program& p, const Objective& o, const Configuration& c0)
{
    for (Mode mode : {Mode::Reach, Mode::Safe}) {
        const Objective obj{mode, o.targets};
        const auto with = solve_single_process(p, obj, c0, {true});
        const auto without = solve_single_process(p, obj, c0, {false});
        if (with.winner != without.winner)
            return Verdict::fail(std::string(mode == Mode::Reach ? "reach" : "safe") +
                                     ": winner with flush edges " + player_name(with.winner) +
                                     ", without " + player_name(without.winner),
                                 {});
    }
    return Verdict::pass();
}

} // namespace tsogame
