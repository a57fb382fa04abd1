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

#include "test_support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#ifndef TSOG_CORPUS_DIR
#error "TSOG_CORPUS_DIR must point at tests/corpus"
#endif

namespace tsotest {

std::string corpus_dir()
{
    return TSOG_CORPUS_DIR;
}

std::vector<std::string> corpus_programs()
{
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir()))
        if (entry.path().extension() == ".tso")
            out.push_back(entry.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

ParsedProgram load_corpus(const std::string& file)
{
    return load_program(corpus_dir() + "/" + file);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

ParsedProgram random_program(Rng& rng, const RandomProgramOptions& opts)
{
    ProgramBuilder b;
    const std::size_t nvals = uniform(rng, 1, opts.max_values);
    std::vector<std::string> values;
    for (std::size_t d = 0; d < nvals; ++d) {
        values.push_back(std::to_string(d));
        b.value(values.back());
    }
    const std::size_t nvars = uniform(rng, opts.min_vars, opts.max_vars);
    std::vector<std::string> vars;
    for (std::size_t x = 0; x < nvars; ++x) {
        vars.push_back("x" + std::to_string(x));
        b.var(vars.back(), values[uniform(rng, 0, nvals - 1)]);
    }
    // States are declared on first use, as the text parser does, so every program
    // produced here survives a print/parse round trip.
    for (std::size_t i = 0; i < opts.processes; ++i) {
        const std::string name = "P" + std::to_string(i + 1);
        const std::size_t nstates = uniform(rng, 1, opts.max_states);
        const ProcId pid = b.process(name, "s0");
        std::set<std::string> seen;
        const std::size_t ntrans = uniform(rng, 1, opts.max_transitions);
        for (std::size_t k = 0; k < ntrans; ++k) {
            const auto from = "s" + std::to_string(uniform(rng, 0, nstates - 1));
            const auto to = "s" + std::to_string(uniform(rng, 0, nstates - 1));
            std::string instr;
            const std::size_t kind = nvars == 0 ? uniform(rng, 0, 1) : uniform(rng, 0, 5);
            if (kind == 0)
                instr = "skip";
            else if (kind == 1)
                instr = "mf";
            else {
                const auto& x = vars[uniform(rng, 0, nvars - 1)];
                const auto& d = values[uniform(rng, 0, nvals - 1)];
                instr = (kind % 2 == 0 ? "rd(" : "wr(") + x + "," + d + ")";
            }
            if (seen.insert(from + " " + instr + " " + to).second)
                b.transition(pid, from, instr, to);
        }
    }
    ParsedProgram out;
    out.program = b.build();
    Objective o;
    o.mode = uniform(rng, 0, 1) == 0 ? Mode::Reach : Mode::Safe;
    for (std::size_t i = 0; i < opts.processes; ++i) {
        const auto& proc = out.program.process(i);
        for (StateId q = 0; q < proc.states().size(); ++q)
            if (q != proc.initial() && uniform(rng, 0, 2) == 0)
                o.targets.push_back({i, q});
    }
    out.objective = o;
    return out;
}

RandomArena random_arena(Rng& rng, std::size_t vertices, double edge_probability,
                         double special_probability)
{
    std::bernoulli_distribution edge(edge_probability);
    std::bernoulli_distribution spec(special_probability);
    RandomArena r;
    for (std::size_t v = 0; v < vertices; ++v)
        r.arena.add_vertex(uniform(rng, 0, 1) == 0 ? Player::A : Player::B, "v" + std::to_string(v));
    for (std::size_t v = 0; v < vertices; ++v)
        for (std::size_t u = 0; u < vertices; ++u)
            if (r.arena.owner(v) != r.arena.owner(u) && edge(rng))
                r.arena.add_edge(v, u);
    for (std::size_t v = 0; v < vertices; ++v)
        r.special.push_back(spec(rng));
    return r;
}

std::vector<Player> naive_solve(const Arena& a, Mode mode, const std::vector<bool>& special)
{
    // `good` is the attractor of the player who wants to reach: A in Reach mode, B in Safe mode.
    const Player reacher = mode == Mode::Reach ? Player::A : Player::B;
    std::vector<bool> good(a.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (VertexId v = 0; v < a.size(); ++v) {
            if (good[v])
                continue;
            bool now = special[v];
            if (!now) {
                const auto out = a.out(v);
                if (out.empty()) {
                    now = a.owner(v) != reacher;
                } else if (a.owner(v) == reacher) {
                    now = std::any_of(out.begin(), out.end(),
                                      [&](EdgeId e) { return good[a.edge(e).to]; });
                } else {
                    now = std::all_of(out.begin(), out.end(),
                                      [&](EdgeId e) { return good[a.edge(e).to]; });
                }
            }
            if (now) {
                good[v] = true;
                changed = true;
            }
        }
    }
    std::vector<Player> w(a.size());
    for (VertexId v = 0; v < a.size(); ++v)
        w[v] = good[v] ? reacher : opponent(reacher);
    return w;
}

std::vector<Player> game_tree_solve(const Arena& a, Mode mode, const std::vector<bool>& special)
{
    const Player reacher = mode == Mode::Reach ? Player::A : Player::B;
    std::map<std::pair<VertexId, std::size_t>, bool> memo;
    // Can the reacher force `special` (or a deadlock of the other side) within d plies?
    std::function<bool(VertexId, std::size_t)> forced = [&](VertexId v, std::size_t d) -> bool {
        if (special[v])
            return true;
        const auto out = a.out(v);
        if (out.empty())
            return a.owner(v) != reacher;
        if (d == 0)
            return false;
        const auto key = std::make_pair(v, d);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        bool any = false;
        bool all = true;
        for (EdgeId e : out) {
            const bool r = forced(a.edge(e).to, d - 1);
            any = any || r;
            all = all && r;
        }
        const bool res = a.owner(v) == reacher ? any : all;
        memo[key] = res;
        return res;
    };
    std::vector<Player> w(a.size());
    for (VertexId v = 0; v < a.size(); ++v)
        w[v] = forced(v, a.size() + 1) ? reacher : opponent(reacher);
    return w;
}

std::set<Configuration> closure_oracle(const Program& p, const Configuration& c)
{
    std::set<Configuration> seen;
    std::function<void(const Configuration&)> go = [&](const Configuration& cur) {
        if (!seen.insert(cur).second)
            return;
        for (ProcId i = 0; i < cur.buffers.size(); ++i)
            if (!cur.buffers[i].empty())
                go(apply_update(p, cur, i));
    };
    go(c);
    return seen;
}

ExploreOracle explore_oracle(const Program& p, const Configuration& c0, std::size_t bound)
{
    ExploreOracle r;
    std::vector<Configuration> stack{c0};
    r.configs.insert(c0);
    while (!stack.empty()) {
        const Configuration c = stack.back();
        stack.pop_back();
        std::vector<Configuration> next;
        for (ProcId i = 0; i < p.process_count(); ++i) {
            const auto& proc = p.process(i);
            for (std::size_t t = 0; t < proc.transitions().size(); ++t) {
                const auto& tr = proc.transition(t);
                if (tr.from != c.states[i] || !is_enabled(p, c, i, t))
                    continue;
                if (tr.instr.kind == InstrKind::Write && c.buffers[i].size() >= bound) {
                    r.frontier.insert(c);
                    continue;
                }
                next.push_back(apply_instruction(p, c, i, t));
            }
            if (!c.buffers[i].empty())
                next.push_back(apply_update(p, c, i));
        }
        for (auto& n : next)
            if (r.configs.insert(n).second)
                stack.push_back(std::move(n));
    }
    return r;
}

View random_view(Rng& rng, const Program& p)
{
    View v;
    const auto& proc = p.process(0);
    v.state = uniform(rng, 0, proc.states().size() - 1);
    for (std::size_t x = 0; x < p.vars().size(); ++x)
        v.readable.push_back(uniform(rng, 0, p.values().size() - 1));
    v.fence_enabled = p.vars().empty() || uniform(rng, 0, 2) == 0;
    return v;
}

Configuration config_with_view(Rng& rng, const Program& p, const View& v, std::size_t max_buffer)
{
    const std::size_t nvals = p.values().size();
    const std::size_t nvars = p.vars().size();
    Configuration c;
    c.states = {v.state};
    c.buffers = {Buffer{}};
    c.memory = v.readable;
    if (v.fence_enabled)
        return c;
    // Pick the variables that carry buffered messages; at least one.
    std::vector<VarId> buffered;
    while (buffered.empty())
        for (VarId x = 0; x < nvars; ++x)
            if (uniform(rng, 0, 1) == 0)
                buffered.push_back(x);
    if (buffered.size() > max_buffer)
        buffered.resize(max_buffer);
    const std::size_t len = uniform(rng, buffered.size(), max_buffer);
    // Per-variable message lists, newest first; the newest carries the readable value.
    std::vector<std::vector<ValueId>> per_var(nvars);
    for (VarId x : buffered) {
        per_var[x].push_back(v.readable[x]);
        c.memory[x] = uniform(rng, 0, nvals - 1);
    }
    for (std::size_t k = buffered.size(); k < len; ++k)
        per_var[buffered[uniform(rng, 0, buffered.size() - 1)]].push_back(uniform(rng, 0, nvals - 1));
    // Random interleaving that keeps each variable's own order.
    std::vector<std::size_t> taken(nvars, 0);
    for (std::size_t k = 0; k < len; ++k) {
        std::vector<VarId> open;
        for (VarId x : buffered)
            if (taken[x] < per_var[x].size())
                open.push_back(x);
        const VarId x = open[uniform(rng, 0, open.size() - 1)];
        c.buffers[0].push_back({x, per_var[x][taken[x]++]});
    }
    return c;
}

std::pair<Configuration, Configuration> equal_view_pair(Rng& rng, const Program& p,
                                                        std::size_t max_buffer)
{
    const View v = random_view(rng, p);
    return {config_with_view(rng, p, v, max_buffer), config_with_view(rng, p, v, max_buffer)};
}

namespace {

std::vector<std::string> bodies(const std::vector<std::string>& lits, std::size_t leaves)
{
    if (leaves == 1)
        return lits;
    std::vector<std::string> out;
    for (std::size_t left = 1; left < leaves; ++left)
        for (const auto& l : bodies(lits, left))
            for (const auto& r : bodies(lits, leaves - left))
                for (const char* op : {" & ", " | "})
                    out.push_back("(" + l + op + r + ")");
    return out;
}

} // namespace

std::vector<std::string> exhaustive_qbf_suite()
{
    std::vector<std::string> out;
    const std::vector<std::string> one{"x", "!x"};
    const std::vector<std::string> two{"x", "!x", "y", "!y"};
    for (const char* q : {"E", "A"})
        for (std::size_t n = 1; n <= 3; ++n)
            for (const auto& b : bodies(one, n))
                out.push_back(std::string(q) + " x : " + b);
    for (const char* q1 : {"E", "A"})
        for (const char* q2 : {"E", "A"})
            for (std::size_t n = 1; n <= 3; ++n)
                for (const auto& b : bodies(two, n))
                    out.push_back(std::string(q1) + " x " + q2 + " y : " + b);
    return out;
}

std::string random_qbf(Rng& rng, std::size_t vars)
{
    std::string text;
    for (std::size_t i = 0; i < vars; ++i)
        text += std::string(uniform(rng, 0, 1) ? "E" : "A") + " v" + std::to_string(i) + " ";
    std::function<std::string(std::size_t)> body = [&](std::size_t leaves) -> std::string {
        if (leaves == 1)
            return std::string(uniform(rng, 0, 1) ? "" : "!") + "v" + std::to_string(uniform(rng, 0, vars - 1));
        const std::size_t left = uniform(rng, 1, leaves - 1);
        return "(" + body(left) + (uniform(rng, 0, 1) ? " & " : " | ") + body(leaves - left) + ")";
    };
    return text + ": " + body(uniform(rng, 1, 2 * vars));
}

std::size_t qbf_body_nodes(const QbfFormula& f)
{
    std::function<std::size_t(std::size_t)> count = [&](std::size_t n) -> std::size_t {
        const auto& node = f.nodes.at(n);
        if (node.kind == QbfNode::Kind::Literal)
            return 1;
        return 1 + count(node.left) + count(node.right);
    };
    return count(f.root);
}

PcsRun random_pcs_run(Rng& rng, std::size_t max_len)
{
    for (;;) {
        Pcs l;
        const std::size_t nstates = uniform(rng, 3, 5);
        for (std::size_t s = 0; s < nstates; ++s)
            l.states.push_back("s" + std::to_string(s));
        l.messages = uniform(rng, 0, 1) ? std::vector<std::string>{"a", "b"}
                                        : std::vector<std::string>{"a"};
        l.initial = 0;
        const std::size_t ntrans = uniform(rng, 4, 8);
        for (std::size_t k = 0; k < ntrans; ++k) {
            PcsTransition t;
            t.from = uniform(rng, 0, nstates - 1);
            t.to = uniform(rng, 0, nstates - 1);
            const std::size_t op = uniform(rng, 0, 4);
            t.op = op < 2 ? PcsOp::Send : op < 4 ? PcsOp::Recv : PcsOp::Skip;
            if (t.op != PcsOp::Skip)
                t.message = uniform(rng, 0, l.messages.size() - 1);
            const bool dup = std::any_of(l.transitions.begin(), l.transitions.end(), [&](const auto& u) {
                return u.from == t.from && u.to == t.to && u.op == t.op &&
                       (t.op == PcsOp::Skip || u.message == t.message);
            });
            if (!dup)
                l.transitions.push_back(t);
        }
        // Random walk; prefer the walk with the most receives out of a few tries.
        std::vector<std::size_t> best;
        std::size_t best_recv = 0;
        for (int attempt = 0; attempt < 20; ++attempt) {
            PcsConfig c = pcs_initial(l);
            std::vector<std::size_t> walk;
            const std::size_t len = uniform(rng, 1, max_len);
            while (walk.size() < len) {
                std::vector<std::size_t> en;
                for (std::size_t e = 0; e < l.transitions.size(); ++e)
                    if (pcs_enabled(l, c, e))
                        en.push_back(e);
                if (en.empty())
                    break;
                const std::size_t e = en[uniform(rng, 0, en.size() - 1)];
                c = pcs_step(l, c, e);
                walk.push_back(e);
            }
            // Cut the walk at the first visit of its final state.
            std::size_t final_state = c.state;
            if (final_state == l.initial)
                continue;
            std::size_t cut = 0;
            while (l.transitions[walk[cut]].to != final_state)
                ++cut;
            walk.resize(cut + 1);
            std::size_t recv = 0;
            for (auto e : walk)
                recv += l.transitions[e].op == PcsOp::Recv;
            if (best.empty() || recv > best_recv) {
                best = walk;
                best_recv = recv;
            }
        }
        if (best.empty())
            continue;
        l.finals = {l.transitions[best.back()].to};
        return {l, best};
    }
}

std::vector<std::string> embedded_visits(const Pcs& l, const Program& p, const Play& play)
{
    std::vector<std::string> out;
    for (std::size_t k = 0; k < play.length(); ++k) {
        const auto& name = p.process(0).state_name(play.config(k).states[0]);
        if (std::find(l.states.begin(), l.states.end(), name) == l.states.end())
            continue;
        if (out.empty() || out.back() != name)
            out.push_back(name);
    }
    return out;
}

std::vector<std::string> run_visits(const Pcs& l, const std::vector<std::size_t>& run)
{
    std::vector<std::string> out{l.states[l.initial]};
    for (auto e : run)
        if (out.back() != l.states[l.transitions[e].to])
            out.push_back(l.states[l.transitions[e].to]);
    return out;
}

std::vector<std::string> rotations(const Program& p, const Play& play)
{
    std::vector<std::string> out;
    const ProcId p2 = *p.find_process("Proc2");
    const auto& proc = p.process(p2);
    for (const auto& s : play.steps) {
        if (s.turn != Turn::Process || s.move.proc != p2)
            continue;
        const auto& t = proc.transition(s.move.transition);
        if (proc.state_name(t.from) == "p0" && t.instr.kind == InstrKind::Read)
            out.push_back(p.value_name(t.instr.value));
    }
    return out;
}

bool can_enter(const Program& p, const Configuration& c, const std::string& proc,
               const std::string& state)
{
    const ProcId pid = *p.find_process(proc);
    for (const auto& m : enabled_moves(p, c))
        if (m.proc == pid && p.process(pid).state_name(p.process(pid).transition(m.transition).to) == state)
            return true;
    return false;
}

Pcs cheat_pcs()
{
    return parse_pcs("states s0 s1 s2 s3\nmessages a b\ninit s0\nfinal s3\n"
                     "trans s0 s1 send a\ntrans s1 s2 send b\ntrans s2 s3 recv a\n");
}

namespace {

void push(PlayScript& s, const Program& p, const std::string& proc, const std::string& from,
          const std::string& instr, const std::string& to, std::vector<std::string> flushes)
{
    s.push_back({Turn::Process, move_by_name(p, proc, from, instr, to), {}});
    ScriptMove u{Turn::Update, {}, {}};
    for (const auto& f : flushes)
        u.flushes.push_back(*p.find_process(f));
    s.push_back(std::move(u));
}

// Honest prefix for the two sends, then Proc1 enters the receive gadget.
PlayScript cheat_prefix(const Program& p)
{
    PlayScript s = script_from_pcs_run(cheat_pcs(), {0, 1}, Fairness::Update);
    push(s, p, "Proc1", "s2", "skip", "h1_e2", {"Proc1"});
    return s;
}

} // namespace

PlayScript cheat_double_flush(const Program& p)
{
    PlayScript s = cheat_prefix(p);
    s.back().flushes.assign(3, *p.find_process("Proc1"));
    push(s, p, "Proc2", "p0", "rd(x_wr,b)", "p1_b", {});
    push(s, p, "Proc2", "p1_b", "wr(x_rd,b)", "p2_b", {"Proc2"});
    push(s, p, "Proc2", "p2_b", "mf", "p3_b", {});
    push(s, p, "Proc2", "p3_b", "wr(x_wr,bot)", "p4_b", {});
    return s;
}

PlayScript cheat_extra_y_flush(const Program& p)
{
    PlayScript s = cheat_prefix(p);
    push(s, p, "Proc2", "p0", "rd(x_wr,a)", "p1_a", {});
    push(s, p, "Proc2", "p1_a", "wr(x_rd,a)", "p2_a", {"Proc2"});
    push(s, p, "Proc2", "p2_a", "mf", "p3_a", {});
    push(s, p, "Proc2", "p3_a", "wr(x_wr,bot)", "p4_a", {});
    push(s, p, "Proc2", "p4_a", "rd(y,0)", "p5_a", {});
    push(s, p, "Proc1", "h1_e2", "rd(x_rd,a)", "h2_e2", {"Proc2"});
    push(s, p, "Proc2", "p5_a", "mf", "p6_a", {"Proc1", "Proc1"});
    push(s, p, "Proc2", "p6_a", "rd(y,1)", "p7_a", {});
    push(s, p, "Proc2", "p7_a", "wr(y,0)", "p8_a", {});
    push(s, p, "Proc2", "p8_a", "wr(x_rd,bot)", "p9_a", {"Proc2", "Proc2"});
    push(s, p, "Proc2", "p9_a", "mf", "p10_a", {});
    return s;
}

PlayScript cheat_rotation_without_receive(const Pcs& l, const Program& p,
                                          const std::vector<std::size_t>& run,
                                          std::string* escape_from, std::string* message)
{
    // The play ends on a final state, so the rotation must follow a send that leaves
    // Proc1 elsewhere.
    auto usable = [&](std::size_t e) {
        const auto& t = l.transitions[e];
        return t.op == PcsOp::Send &&
               std::find(l.finals.begin(), l.finals.end(), t.to) == l.finals.end();
    };
    std::size_t k = 0;
    while (k < run.size() && !usable(run[k]))
        ++k;
    if (k == run.size())
        throw std::runtime_error("run has no send to a non-final state");
    const std::vector<std::size_t> prefix(run.begin(), run.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    PlayScript s = script_from_pcs_run(l, prefix, Fairness::Process);
    s.back().flushes = {*p.find_process("Proc1")};
    const auto& m = l.messages[l.transitions[run[k]].message];
    push(s, p, "Proc2", "p0", "rd(x_wr," + m + ")", "p1_" + m, {});
    push(s, p, "Proc2", "p1_" + m, "wr(x_rd," + m + ")", "p2_" + m, {"Proc2"});
    if (escape_from)
        *escape_from = l.states[l.transitions[run[k]].to];
    if (message)
        *message = m;
    return s;
}

Move move_by_name(const Program& p, const std::string& proc, const std::string& from,
                  const std::string& instr, const std::string& to)
{
    const auto pid = p.find_process(proc);
    if (!pid)
        throw std::runtime_error("no process " + proc);
    const auto t = find_transition(p, *pid, from, instr, to);
    if (!t)
        throw std::runtime_error("no transition " + proc + " " + from + " " + instr + " " + to);
    return Move{*pid, *t};
}

} // namespace tsotest
