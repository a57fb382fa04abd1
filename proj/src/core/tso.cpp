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

#include "tsogame/tso.hpp"

#include <deque>
#include <map>
#include <set>

namespace tsogame {

Configuration initial_configuration(const Program& p)
{
    Configuration c;
    for (const auto& proc : p.processes())
        c.states.push_back(proc.initial());
    c.buffers.resize(p.process_count());
    c.memory = p.init_memory();
    return c;
}

void check_configuration(const Program& p, const Configuration& c)
{
    if (c.states.size() != p.process_count() || c.buffers.size() != p.process_count())
        throw ValidationError("configuration does not match the process count");
    if (c.memory.size() != p.vars().size())
        throw ValidationError("configuration memory does not cover every variable");
    for (ProcId i = 0; i < p.process_count(); ++i) {
        if (c.states[i] >= p.process(i).states().size())
            throw ValidationError("unknown local state for process " + p.process(i).name());
        for (const auto& m : c.buffers[i])
            if (m.var >= p.vars().size() || m.value >= p.values().size())
                throw ValidationError("buffer message out of range in process " +
                                      p.process(i).name());
    }
    for (auto d : c.memory)
        if (d >= p.values().size())
            throw ValidationError("memory value out of range");
}

ValueId readable_value(const Configuration& c, ProcId proc, VarId x)
{
    for (const auto& m : c.buffers[proc])
        if (m.var == x)
            return m.value;
    return c.memory[x];
}

bool is_enabled(const Program& p, const Configuration& c, ProcId proc, std::size_t transition)
{
    const auto& t = p.process(proc).transition(transition);
    if (t.from != c.states[proc])
        return false;
    switch (t.instr.kind) {
    case InstrKind::Skip:
    case InstrKind::Write:
        return true;
    case InstrKind::Read:
        return readable_value(c, proc, t.instr.var) == t.instr.value;
    case InstrKind::Fence:
        return c.buffers[proc].empty();
    }
    return false;
}

std::vector<Move> enabled_moves(const Program& p, const Configuration& c)
{
    std::vector<Move> out;
    for (ProcId i = 0; i < p.process_count(); ++i)
        for (auto t : p.process(i).outgoing(c.states[i]))
            if (is_enabled(p, c, i, t))
                out.push_back({i, t});
    return out;
}

Configuration apply_instruction(const Program& p, const Configuration& c, ProcId proc,
                                std::size_t transition)
{
    if (!is_enabled(p, c, proc, transition))
        throw ValidationError("transition " + p.instr_text(p.process(proc).transition(transition).instr) +
                              " of process " + p.process(proc).name() + " is not enabled");
    const auto& t = p.process(proc).transition(transition);
    Configuration next = c;
    next.states[proc] = t.to;
    if (t.instr.kind == InstrKind::Write) {
        auto& b = next.buffers[proc];
        b.insert(b.begin(), Message{t.instr.var, t.instr.value});
    }
    return next;
}

Configuration apply_update(const Program& p, const Configuration& c, ProcId proc)
{
    if (proc >= c.buffers.size() || c.buffers[proc].empty())
        throw ValidationError("cannot update: buffer of process " +
                              (proc < p.process_count() ? p.process(proc).name() : "?") +
                              " is empty");
    Configuration next = c;
    const Message m = next.buffers[proc].back();
    next.buffers[proc].pop_back();
    next.memory[m.var] = m.value;
    return next;
}

std::vector<Configuration> update_closure(const Program& p, const Configuration& c,
                                          std::size_t cap)
{
    std::set<Configuration> seen{c};
    std::deque<const Configuration*> work{&*seen.begin()};
    while (!work.empty()) {
        const Configuration& cur = *work.front();
        work.pop_front();
        for (ProcId i = 0; i < cur.buffers.size(); ++i) {
            if (cur.buffers[i].empty())
                continue;
            auto [it, inserted] = seen.insert(apply_update(p, cur, i));
            if (!inserted)
                continue;
            if (seen.size() > cap)
                throw ResourceError("update closure exceeds " + std::to_string(cap) +
                                    " configurations");
            work.push_back(&*it);
        }
    }
    return {seen.begin(), seen.end()};
}

Configuration restrict_to(const Configuration& c, ProcId proc)
{
    return Configuration{{c.states.at(proc)}, {c.buffers.at(proc)}, c.memory};
}

Exploration bounded_explore(const Program& p, const Configuration& c0, std::size_t buffer_bound,
                            std::size_t max_states)
{
    check_configuration(p, c0);
    Exploration ex;
    std::map<Configuration, std::size_t> index;
    auto intern = [&](const Configuration& c) {
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
        const Configuration cur = ex.configs[k];
        for (const auto& m : enabled_moves(p, cur)) {
            const auto& t = p.process(m.proc).transition(m.transition);
            if (t.instr.kind == InstrKind::Write && cur.buffers[m.proc].size() >= buffer_bound) {
                ex.frontier[k] = true;
                continue;
            }
            const auto to = intern(apply_instruction(p, cur, m));
            ex.steps.push_back({k, to, false, m});
        }
        for (ProcId i = 0; i < cur.buffers.size(); ++i) {
            if (cur.buffers[i].empty())
                continue;
            const auto to = intern(apply_update(p, cur, i));
            ex.steps.push_back({k, to, true, Move{i, 0}});
        }
    }
    return ex;
}

std::string step_label(const Program& p, const ExploreStep& s)
{
    const auto& proc = p.process(s.move.proc);
    if (s.update)
        return "up(" + proc.name() + ")";
    return proc.name() + ":" + p.instr_text(proc.transition(s.move.transition).instr);
}

} // namespace tsogame
