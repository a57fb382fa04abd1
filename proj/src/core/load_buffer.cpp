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

#include "tsogame/load_buffer.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "tsogame/game.hpp"

namespace tsogame {

LbConfiguration lb_initial(const Program& p)
{
    LbConfiguration c;
    for (const auto& proc : p.processes())
        c.states.push_back(proc.initial());
    c.buffers.resize(p.process_count());
    c.memory = p.init_memory();
    return c;
}

bool lb_is_enabled(const Program& p, const LbConfiguration& c, ProcId proc, std::size_t transition)
{
    const auto& t = p.process(proc).transition(transition);
    if (t.from != c.states[proc])
        return false;
    const auto& buf = c.buffers[proc];
    switch (t.instr.kind) {
    case InstrKind::Skip:
    case InstrKind::Write:
        return true;
    case InstrKind::Fence:
        return buf.empty();
    case InstrKind::Read: {
        for (auto it = buf.rbegin(); it != buf.rend(); ++it)
            if (it->own && it->var == t.instr.var)
                return it->value == t.instr.value;
        return !buf.empty() && !buf.front().own && buf.front().var == t.instr.var &&
               buf.front().value == t.instr.value;
    }
    }
    return false;
}

std::vector<LbMove> lb_enabled_moves(const Program& p, const LbConfiguration& c)
{
    std::vector<LbMove> out;
    for (ProcId i = 0; i < p.process_count(); ++i)
        for (auto t : p.process(i).outgoing(c.states[i]))
            if (lb_is_enabled(p, c, i, t))
                out.push_back({LbMove::Kind::Instruction, i, t, 0});
    for (ProcId i = 0; i < p.process_count(); ++i) {
        for (VarId x = 0; x < p.vars().size(); ++x)
            out.push_back({LbMove::Kind::Propagate, i, 0, x});
        if (!c.buffers[i].empty())
            out.push_back({LbMove::Kind::Delete, i, 0, 0});
    }
    return out;
}

LbConfiguration lb_apply(const Program& p, const LbConfiguration& c, const LbMove& m)
{
    LbConfiguration next = c;
    switch (m.kind) {
    case LbMove::Kind::Instruction: {
        if (!lb_is_enabled(p, c, m.proc, m.transition))
            throw ValidationError("move " + lb_move_label(p, m) + " is not enabled");
        const auto& t = p.process(m.proc).transition(m.transition);
        next.states[m.proc] = t.to;
        if (t.instr.kind == InstrKind::Write) {
            next.memory[t.instr.var] = t.instr.value;
            next.buffers[m.proc].push_back({t.instr.var, t.instr.value, true});
        }
        break;
    }
    case LbMove::Kind::Propagate:
        if (m.var >= p.vars().size())
            throw ValidationError("propagation of an unknown variable");
        next.buffers[m.proc].push_back({m.var, c.memory[m.var], false});
        break;
    case LbMove::Kind::Delete:
        if (next.buffers[m.proc].empty())
            throw ValidationError("delete on an empty load buffer");
        next.buffers[m.proc].erase(next.buffers[m.proc].begin());
        break;
    }
    return next;
}

std::string lb_move_label(const Program& p, const LbMove& m)
{
    const auto& proc = p.process(m.proc);
    switch (m.kind) {
    case LbMove::Kind::Instruction:
        return proc.name() + ":" + p.instr_text(proc.transition(m.transition).instr);
    case LbMove::Kind::Propagate:
        return "prop(" + proc.name() + "," + p.var_name(m.var) + ")";
    case LbMove::Kind::Delete:
        return "del(" + proc.name() + ")";
    }
    return {};
}

LbExploration lb_bounded_explore(const Program& p, const LbConfiguration& c0,
                                 std::size_t buffer_bound, std::size_t max_states)
{
    LbExploration ex;
    std::map<LbConfiguration, std::size_t> index;
    auto intern = [&](const LbConfiguration& c) {
        auto [it, inserted] = index.emplace(c, ex.configs.size());
        if (inserted) {
            if (ex.configs.size() >= max_states)
                throw ResourceError("exploration exceeds " + std::to_string(max_states) +
                                    " configurations");
            ex.configs.push_back(c);
            ex.frontier.push_back(false);
        }
        return it->second;
    };
    intern(c0);
    for (std::size_t k = 0; k < ex.configs.size(); ++k) {
        const LbConfiguration cur = ex.configs[k];
        for (const auto& m : lb_enabled_moves(p, cur)) {
            const bool grows =
                m.kind == LbMove::Kind::Propagate ||
                (m.kind == LbMove::Kind::Instruction &&
                 p.process(m.proc).transition(m.transition).instr.kind == InstrKind::Write);
            if (grows && cur.buffers[m.proc].size() >= buffer_bound) {
                ex.frontier[k] = true;
                continue;
            }
            ex.steps.push_back({k, intern(lb_apply(p, cur, m)), m});
        }
    }
    return ex;
}

ParsedProgram divergence_program()
{
    ProgramBuilder b;
    for (const char* v : {"0", "1", "2"})
        b.value(v);
    b.var("x", "0");
    const auto p1 = b.process("Proc1", "q1");
    b.transition(p1, "q1", "wr(x,1)", "q2");
    b.transition(p1, "q2", "skip", "q2");
    const auto p2 = b.process("Proc2", "q1");
    b.transition(p2, "q1", "wr(x,2)", "q2");
    b.transition(p2, "q2", "skip", "q2");
    const auto p3 = b.process("Proc3", "q1");
    b.transition(p3, "q1", "skip", "q2");
    b.transition(p3, "q1", "skip", "q3");
    b.transition(p3, "q2", "rd(x,1)", "q4");
    b.transition(p3, "q4", "rd(x,2)", "qF");
    b.transition(p3, "q3", "rd(x,2)", "q5");
    b.transition(p3, "q5", "rd(x,1)", "qF");
    ParsedProgram out;
    out.program = b.build();
    out.objective = Objective{Mode::Safe, {{2, *out.program.process(2).find_state("qF")}}};
    return out;
}

namespace {

std::string describe(const Program& p, const Configuration& c)
{
    std::string out;
    for (ProcId i = 0; i < p.process_count(); ++i) {
        out += p.process(i).name() + "=" + p.process(i).state_name(c.states[i]) + "[";
        for (std::size_t k = 0; k < c.buffers[i].size(); ++k)
            out += (k ? "," : "") + p.value_name(c.buffers[i][k].value);
        out += "] ";
    }
    return out + "x=" + p.value_name(c.memory[0]);
}

struct ForcingGraph
{
    std::vector<Configuration> nodes;
    std::vector<bool> goal;
    struct Arc
    {
        std::size_t to;
        ProcId proc;
        std::size_t plies;
        std::string label;
    };
    std::vector<std::vector<Arc>> arcs;
    std::vector<std::vector<bool>> enabled; // per node, per process
    std::vector<std::size_t> parent;
    std::vector<std::string> parent_label;
};

// Processes enabled somewhere in `scc` but never moving inside it.
std::optional<std::vector<std::size_t>> fair_cycle(const ForcingGraph& g,
                                                   const std::vector<std::size_t>& region,
                                                   std::size_t nprocs)
{
    std::vector<bool> in(g.nodes.size(), false);
    for (auto v : region)
        in[v] = true;

    // Tarjan restricted to `region`.
    std::vector<std::size_t> idx(g.nodes.size(), kNoRank), low(g.nodes.size(), 0);
    std::vector<bool> on(g.nodes.size(), false);
    std::vector<std::size_t> st;
    std::vector<std::vector<std::size_t>> sccs;
    std::size_t counter = 0;
    std::function<void(std::size_t)> strong = [&](std::size_t v) {
        idx[v] = low[v] = counter++;
        st.push_back(v);
        on[v] = true;
        for (const auto& a : g.arcs[v]) {
            if (!in[a.to])
                continue;
            if (idx[a.to] == kNoRank) {
                strong(a.to);
                low[v] = std::min(low[v], low[a.to]);
            } else if (on[a.to]) {
                low[v] = std::min(low[v], idx[a.to]);
            }
        }
        if (low[v] == idx[v]) {
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = st.back();
                st.pop_back();
                on[w] = false;
                comp.push_back(w);
            } while (w != v);
            sccs.push_back(std::move(comp));
        }
    };
    for (auto v : region)
        if (idx[v] == kNoRank)
            strong(v);

    for (const auto& comp : sccs) {
        std::vector<bool> member(g.nodes.size(), false);
        for (auto v : comp)
            member[v] = true;
        std::vector<bool> enabled(nprocs, false), executed(nprocs, false);
        bool has_cycle = false;
        for (auto v : comp) {
            for (ProcId i = 0; i < nprocs; ++i)
                enabled[i] = enabled[i] || g.enabled[v][i];
            for (const auto& a : g.arcs[v]) {
                if (member[a.to]) {
                    executed[a.proc] = true;
                    has_cycle = true;
                }
            }
        }
        if (!has_cycle)
            continue;
        std::vector<ProcId> starved;
        for (ProcId i = 0; i < nprocs; ++i)
            if (enabled[i] && !executed[i])
                starved.push_back(i);
        if (starved.empty())
            return comp;
        std::vector<std::size_t> rest;
        for (auto v : comp) {
            bool keep = true;
            for (auto i : starved)
                keep = keep && !g.enabled[v][i];
            if (keep)
                rest.push_back(v);
        }
        if (auto found = fair_cycle(g, rest, nprocs))
            return found;
    }
    return std::nullopt;
}

} // namespace

Verdict sb_forcing_check(std::size_t horizon, const std::string& pivot, FlushOrder order)
{
    const auto demo = divergence_program();
    const Program& p = demo.program;
    const Objective& o = *demo.objective;
    const ProcId proc3 = 2;
    const auto pivot_state = p.process(proc3).find_state(pivot);
    if (!pivot_state)
        throw ValidationError("unknown pivot state '" + pivot + "'");
    const ProcId first = order == FlushOrder::Proc1First ? 0 : 1;
    const ProcId second = 1 - first;

    Configuration start = initial_configuration(p);
    start.states = {*p.process(0).find_state("q2"), *p.process(1).find_state("q2"), *pivot_state};
    start.buffers[0] = {Message{0, *p.find_value("1")}};
    start.buffers[1] = {Message{0, *p.find_value("2")}};

    // Positional update strategy: release `first` while Proc3 waits at the pivot,
    // `second` once `first` is out and Proc3 has moved on.
    auto respond = [&](const Configuration& c) -> std::optional<ProcId> {
        if (!c.buffers[first].empty())
            return first;
        if (c.states[proc3] != *pivot_state && !c.buffers[second].empty())
            return second;
        return std::nullopt;
    };
    auto is_goal = [&](const Configuration& c) {
        return o.is_target(proc3, c.states[proc3]) || enabled_moves(p, c).empty();
    };

    ForcingGraph g;
    std::map<Configuration, std::size_t> index;
    auto intern = [&](const Configuration& c, std::size_t parent, std::string label) {
        auto [it, inserted] = index.emplace(c, g.nodes.size());
        if (inserted) {
            g.nodes.push_back(c);
            g.goal.push_back(is_goal(c));
            g.arcs.emplace_back();
            std::vector<bool> en(p.process_count(), false);
            for (const auto& m : enabled_moves(p, c))
                en[m.proc] = true;
            g.enabled.push_back(std::move(en));
            g.parent.push_back(parent);
            g.parent_label.push_back(std::move(label));
        }
        return it->second;
    };
    intern(start, kNoRank, {});
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
        if (g.goal[v])
            continue;
        const Configuration cur = g.nodes[v];
        for (const auto& m : enabled_moves(p, cur)) {
            Configuration next = apply_instruction(p, cur, m);
            std::string label = p.process(m.proc).name() + ":" +
                                p.instr_text(p.process(m.proc).transition(m.transition).instr);
            std::size_t plies = 1;
            if (!o.is_target(proc3, next.states[proc3])) {
                plies = 2;
                if (auto u = respond(next)) {
                    next = apply_update(p, next, *u);
                    label += " / up(" + p.process(*u).name() + ")";
                } else {
                    label += " / -";
                }
            }
            const auto to = intern(next, v, label);
            g.arcs[v].push_back({to, m.proc, plies, label});
        }
    }

    auto trail = [&](std::size_t v) {
        std::vector<std::string> out;
        for (std::size_t u = v; u != kNoRank && g.parent[u] != kNoRank; u = g.parent[u])
            out.insert(out.begin(), g.parent_label[u]);
        return out;
    };

    std::vector<std::size_t> open;
    for (std::size_t v = 0; v < g.nodes.size(); ++v)
        if (!g.goal[v])
            open.push_back(v);
    if (auto cycle = fair_cycle(g, open, p.process_count())) {
        auto w = trail(cycle->front());
        w.push_back("fair cycle at " + describe(p, g.nodes[cycle->front()]));
        return Verdict::fail("a process-fair play avoids qF forever", w);
    }

    // Longest play to the goal, ignoring stutter steps (moves that change nothing).
    std::vector<std::size_t> longest(g.nodes.size(), 0);
    std::vector<unsigned char> mark(g.nodes.size(), 0);
    std::optional<std::size_t> loop_at;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        mark[v] = 1;
        std::size_t best = 0;
        for (const auto& a : g.arcs[v]) {
            if (a.to == v)
                continue;
            if (mark[a.to] == 1) {
                loop_at = v;
                continue;
            }
            if (mark[a.to] == 0)
                visit(a.to);
            best = std::max(best, longest[a.to] + a.plies);
        }
        longest[v] = best;
        mark[v] = 2;
    };
    visit(0);
    if (loop_at)
        return Verdict::fail("progress cycle without reaching qF", trail(*loop_at));
    if (longest[0] > horizon)
        return Verdict::fail("forcing takes " + std::to_string(longest[0]) + " plies, more than " +
                                 std::to_string(horizon),
                             {});
    return Verdict::pass("forced within " + std::to_string(longest[0]) + " plies over " +
                         std::to_string(g.nodes.size()) + " configurations");
}

Verdict lb_escape_check(const LbEscapeOptions& opts)
{
    if (opts.propagation_bound == 0)
        throw ValidationError("propagation bound must be at least 1");
    const auto demo = divergence_program();
    const Program& p = demo.program;
    const ProcId proc3 = 2;
    const StateId q3 = *p.process(proc3).find_state("q3");
    const StateId q5 = *p.process(proc3).find_state("q5");
    const ValueId one = *p.find_value("1");

    const std::vector<LbMove> prefix = {
        {LbMove::Kind::Instruction, 0, *find_transition(p, 0, "q1", "wr(x,1)", "q2"), 0},
        {LbMove::Kind::Instruction, 1, *find_transition(p, 1, "q1", "wr(x,2)", "q2"), 0},
        {LbMove::Kind::Instruction, 2, *find_transition(p, 2, "q1", "skip", "q3"), 0},
    };

    using Node = std::pair<LbConfiguration, std::size_t>; // configuration, prefix progress
    std::map<Node, std::pair<std::optional<Node>, std::string>> parent;
    std::deque<Node> work;
    const Node root{lb_initial(p), 0};
    parent.emplace(root, std::make_pair(std::nullopt, std::string()));
    work.push_back(root);

    auto trail = [&](const Node& n) {
        std::vector<std::string> out;
        std::optional<Node> cur = n;
        while (cur) {
            const auto& entry = parent.at(*cur);
            if (!entry.first)
                break;
            out.insert(out.begin(), entry.second);
            cur = entry.first;
        }
        return out;
    };

    while (!work.empty()) {
        const Node node = work.front();
        work.pop_front();
        const auto& [c, k] = node;

        if (c.states[proc3] == q5) {
            const auto read1 = find_transition(p, proc3, "q5", "rd(x,1)", "qF");
            if (lb_is_enabled(p, c, proc3, *read1))
                return Verdict::fail("Proc3 can read x=1 at q5", trail(node));
            bool alive = false;
            for (const auto& m : lb_enabled_moves(p, c))
                alive = alive || m.kind == LbMove::Kind::Instruction;
            if (!alive)
                return Verdict::fail("process player deadlocks at q5", trail(node));
        }

        std::vector<LbMove> moves;
        if (k < prefix.size()) {
            moves.push_back(prefix[k]);
        } else {
            for (const auto& m : lb_enabled_moves(p, c))
                if (m.kind == LbMove::Kind::Instruction)
                    moves.push_back(m);
        }
        // Only Proc3's load buffer can influence the reads that matter here.
        const auto& buf = c.buffers[proc3];
        if (buf.size() < opts.propagation_bound)
            moves.push_back({LbMove::Kind::Propagate, proc3, 0, 0});
        if (!buf.empty())
            moves.push_back({LbMove::Kind::Delete, proc3, 0, 0});

        std::vector<std::pair<LbConfiguration, std::string>> succ;
        for (const auto& m : moves) {
            if (m.kind == LbMove::Kind::Instruction) {
                const auto& t = p.process(m.proc).transition(m.transition);
                if (m.proc == proc3 && t.from == q3 && t.to == q5) {
                    for (const auto& msg : buf)
                        if (!msg.own && msg.var == 0 && msg.value == one)
                            return Verdict::fail("q3 -> q5 fires with x=1 still buffered",
                                                 trail(node));
                }
            }
            succ.emplace_back(lb_apply(p, c, m), lb_move_label(p, m));
        }
        if (opts.stale_propagation && buf.size() < opts.propagation_bound &&
            c.memory[0] != one) {
            LbConfiguration stale = c;
            stale.buffers[proc3].push_back({0, one, false});
            succ.emplace_back(std::move(stale), "prop(Proc3,x) stale=1");
        }
        for (auto& [next, label] : succ) {
            const bool advanced = k < prefix.size() && label == lb_move_label(p, prefix[k]);
            Node n{std::move(next), k + (advanced ? 1 : 0)};
            if (parent.emplace(n, std::make_pair(std::optional<Node>(node), label)).second)
                work.push_back(std::move(n));
        }
    }
    return Verdict::pass(std::to_string(parent.size()) + " configurations explored");
}

} // namespace tsogame
