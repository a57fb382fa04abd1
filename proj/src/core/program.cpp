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

#include "tsogame/program.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace tsogame {

namespace {

template <class Names>
std::optional<std::size_t> index_of(const Names& names, std::string_view name)
{
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

using Lookup = std::function<std::optional<std::size_t>(std::string_view)>;

// Accepts `skip`, `mf`, `rd(x,v)`, `wr(x,v)`; no interior whitespace.
std::optional<Instruction> decode_instruction(std::string_view text, const Lookup& var,
                                              const Lookup& value)
{
    if (text == "skip")
        return Instruction::skip();
    if (text == "mf")
        return Instruction::fence();
    if (text.size() < 7 || text.back() != ')' || text[2] != '(')
        return std::nullopt;
    if (text.find_first_of(" \t\r\n") != std::string_view::npos)
        return std::nullopt;
    const auto head = text.substr(0, 2);
    if (head != "rd" && head != "wr")
        return std::nullopt;
    const auto inner = text.substr(3, text.size() - 4);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos || inner.find(',', comma + 1) != std::string_view::npos)
        return std::nullopt;
    const auto x = inner.substr(0, comma);
    const auto d = inner.substr(comma + 1);
    if (x.empty() || d.empty())
        return std::nullopt;
    const auto xi = var(x);
    if (!xi)
        throw ValidationError("undeclared variable '" + std::string(x) + "'");
    const auto di = value(d);
    if (!di)
        throw ValidationError("undeclared value '" + std::string(d) + "'");
    return head == "rd" ? Instruction::read(*xi, *di) : Instruction::write(*xi, *di);
}

} // namespace

Process::Process(std::string name, std::vector<std::string> states, StateId initial,
                 std::vector<Transition> transitions)
    : name_(std::move(name)), states_(std::move(states)), initial_(initial),
      transitions_(std::move(transitions)), outgoing_(states_.size())
{
    for (std::size_t t = 0; t < transitions_.size(); ++t)
        outgoing_.at(transitions_[t].from).push_back(t);
}

std::optional<StateId> Process::find_state(std::string_view name) const
{
    return index_of(states_, name);
}

Program::Program(std::vector<std::string> values, std::vector<std::string> vars,
                 std::vector<ValueId> init_memory, std::vector<Process> processes)
    : values_(std::move(values)), vars_(std::move(vars)), init_memory_(std::move(init_memory)),
      processes_(std::move(processes))
{
}

std::optional<ProcId> Program::find_process(std::string_view name) const
{
    for (std::size_t i = 0; i < processes_.size(); ++i)
        if (processes_[i].name() == name)
            return i;
    return std::nullopt;
}

std::optional<VarId> Program::find_var(std::string_view name) const { return index_of(vars_, name); }

std::optional<ValueId> Program::find_value(std::string_view name) const
{
    return index_of(values_, name);
}

std::string Program::instr_text(const Instruction& instr) const
{
    switch (instr.kind) {
    case InstrKind::Skip:
        return "skip";
    case InstrKind::Fence:
        return "mf";
    case InstrKind::Read:
        return "rd(" + var_name(instr.var) + "," + value_name(instr.value) + ")";
    case InstrKind::Write:
        return "wr(" + var_name(instr.var) + "," + value_name(instr.value) + ")";
    }
    return {};
}

bool Objective::is_target(ProcId proc, StateId q) const
{
    return std::find(targets.begin(), targets.end(), Target{proc, q}) != targets.end();
}

ValueId ProgramBuilder::value(const std::string& name)
{
    auto [it, inserted] = value_ids_.emplace(name, values_.size());
    if (inserted)
        values_.push_back(name);
    return it->second;
}

VarId ProgramBuilder::var(const std::string& name, const std::string& init_value)
{
    const ValueId d = value(init_value);
    auto [it, inserted] = var_ids_.emplace(name, vars_.size());
    if (!inserted)
        throw ValidationError("duplicate variable '" + name + "'");
    vars_.push_back(name);
    init_.push_back(d);
    return it->second;
}

ProcId ProgramBuilder::process(const std::string& name, const std::string& initial_state)
{
    auto [it, inserted] = proc_ids_.emplace(name, procs_.size());
    if (!inserted)
        throw ValidationError("duplicate process '" + name + "'");
    procs_.push_back(ProcDraft{name, {}, {}, 0, {}});
    procs_.back().initial = state(it->second, initial_state);
    return it->second;
}

StateId ProgramBuilder::state(ProcId proc, const std::string& name)
{
    auto& draft = procs_.at(proc);
    auto [it, inserted] = draft.state_ids.emplace(name, draft.states.size());
    if (inserted)
        draft.states.push_back(name);
    return it->second;
}

void ProgramBuilder::transition(ProcId proc, const std::string& from, Instruction instr,
                                const std::string& to)
{
    const Transition t{state(proc, from), instr, state(proc, to)};
    auto& ts = procs_.at(proc).transitions;
    if (std::find(ts.begin(), ts.end(), t) != ts.end())
        throw ValidationError("duplicate transition " + from + " " + to + " in process '" +
                              procs_[proc].name + "'");
    ts.push_back(t);
}

void ProgramBuilder::transition(ProcId proc, const std::string& from, const std::string& instr,
                                const std::string& to)
{
    auto decoded = decode_instruction(
        instr, [this](std::string_view n) { return find_var(std::string(n)); },
        [this](std::string_view n) { return find_value(std::string(n)); });
    if (!decoded)
        throw ValidationError("malformed instruction '" + instr + "'");
    transition(proc, from, *decoded, to);
}

std::optional<VarId> ProgramBuilder::find_var(const std::string& name) const
{
    auto it = var_ids_.find(name);
    return it == var_ids_.end() ? std::nullopt : std::optional<VarId>(it->second);
}

std::optional<ValueId> ProgramBuilder::find_value(const std::string& name) const
{
    auto it = value_ids_.find(name);
    return it == value_ids_.end() ? std::nullopt : std::optional<ValueId>(it->second);
}

Program ProgramBuilder::build() const
{
    if (values_.empty())
        throw ValidationError("empty value domain");
    std::vector<Process> procs;
    procs.reserve(procs_.size());
    for (const auto& d : procs_)
        procs.emplace_back(d.name, d.states, d.initial, d.transitions);
    return Program(values_, vars_, init_, std::move(procs));
}

std::optional<Instruction> parse_instruction(const Program& p, std::string_view text)
{
    return decode_instruction(
        text, [&p](std::string_view n) { return p.find_var(n); },
        [&p](std::string_view n) { return p.find_value(n); });
}

std::optional<std::size_t> find_transition(const Program& p, ProcId proc, std::string_view from,
                                           std::string_view instr, std::string_view to)
{
    const auto& process = p.process(proc);
    const auto q = process.find_state(from);
    const auto q2 = process.find_state(to);
    if (!q || !q2)
        return std::nullopt;
    std::optional<Instruction> decoded;
    try {
        decoded = parse_instruction(p, instr);
    } catch (const ValidationError&) {
        return std::nullopt;
    }
    if (!decoded)
        return std::nullopt;
    for (auto t : process.outgoing(*q)) {
        const auto& tr = process.transition(t);
        if (tr.to == *q2 && tr.instr == *decoded)
            return t;
    }
    return std::nullopt;
}

std::string target_text(const Program& p, const Target& t)
{
    const auto& proc = p.process(t.proc);
    return proc.name() + "." + proc.state_name(t.state);
}

std::vector<Target> parse_targets(const Program& p, std::string_view text)
{
    std::vector<Target> out;
    std::string token;
    auto flush = [&]() {
        if (token.empty())
            return;
        const auto dot = token.find('.');
        if (dot == std::string::npos)
            throw ValidationError("target '" + token + "' is not of the form P.q");
        const auto proc = p.find_process(std::string_view(token).substr(0, dot));
        if (!proc)
            throw ValidationError("unknown process in target '" + token + "'");
        const auto q = p.process(*proc).find_state(std::string_view(token).substr(dot + 1));
        if (!q)
            throw ValidationError("unknown state in target '" + token + "'");
        const Target t{*proc, *q};
        if (std::find(out.begin(), out.end(), t) == out.end())
            out.push_back(t);
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch)))
            flush();
        else
            token.push_back(ch);
    }
    flush();
    return out;
}

Program project(const Program& p, ProcId proc)
{
    if (proc >= p.process_count())
        throw ValidationError("unknown process id " + std::to_string(proc));
    return Program(p.values(), p.vars(), p.init_memory(), {p.process(proc)});
}

Objective project(const Objective& o, ProcId proc)
{
    Objective out{o.mode, {}};
    for (const auto& t : o.targets)
        if (t.proc == proc)
            out.targets.push_back(Target{0, t.state});
    return out;
}

std::vector<Violation> validate_for_game(const Program& p, const Objective& o)
{
    std::vector<Violation> out;
    for (const auto& t : o.targets) {
        if (t.proc >= p.process_count() || t.state >= p.process(t.proc).states().size()) {
            out.push_back({Severity::Error, "target names an unknown process or state"});
            return out;
        }
    }
    for (ProcId i = 0; i < p.process_count(); ++i) {
        if (o.is_target(i, p.process(i).initial())) {
            out.push_back({Severity::Error, "initial configuration in C_W: " +
                                                target_text(p, {i, p.process(i).initial()})});
        }
    }
    if (o.mode == Mode::Reach) {
        // Skip and write are enabled in every configuration; anything else can block.
        for (const auto& t : o.targets) {
            const auto& proc = p.process(t.proc);
            bool safe = false;
            for (auto idx : proc.outgoing(t.state)) {
                const auto kind = proc.transition(idx).instr.kind;
                safe = safe || kind == InstrKind::Skip || kind == InstrKind::Write;
            }
            if (!safe)
                out.push_back({Severity::Warning, "target may deadlock: " + target_text(p, t)});
        }
    }
    return out;
}

} // namespace tsogame
