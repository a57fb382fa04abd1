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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsogame/error.hpp"

namespace tsogame {

using ProcId = std::size_t;
using StateId = std::size_t;
using VarId = std::size_t;
using ValueId = std::size_t;

enum class InstrKind { Read, Write, Skip, Fence };

struct Instruction
{
    InstrKind kind = InstrKind::Skip;
    VarId var = 0;      // Read/Write only
    ValueId value = 0;  // Read/Write only

    static Instruction read(VarId x, ValueId d) { return {InstrKind::Read, x, d}; }
    static Instruction write(VarId x, ValueId d) { return {InstrKind::Write, x, d}; }
    static Instruction skip() { return {InstrKind::Skip, 0, 0}; }
    static Instruction fence() { return {InstrKind::Fence, 0, 0}; }

    bool has_operands() const noexcept { return kind == InstrKind::Read || kind == InstrKind::Write; }
    friend bool operator==(const Instruction& a, const Instruction& b) noexcept
    {
        return a.kind == b.kind && (!a.has_operands() || (a.var == b.var && a.value == b.value));
    }
};

struct Transition
{
    StateId from = 0;
    Instruction instr;
    StateId to = 0;

    friend bool operator==(const Transition&, const Transition&) = default;
};

class Process
{
public:
    Process() = default;
    Process(std::string name, std::vector<std::string> states, StateId initial,
            std::vector<Transition> transitions);

    const std::string& name() const noexcept { return name_; }
    const std::vector<std::string>& states() const noexcept { return states_; }
    const std::string& state_name(StateId q) const { return states_.at(q); }
    StateId initial() const noexcept { return initial_; }
    const std::vector<Transition>& transitions() const noexcept { return transitions_; }
    const Transition& transition(std::size_t t) const { return transitions_.at(t); }

    /// Indices into transitions() leaving q, in declaration order.
    std::span<const std::size_t> outgoing(StateId q) const { return outgoing_.at(q); }
    std::optional<StateId> find_state(std::string_view name) const;

    friend bool operator==(const Process& a, const Process& b)
    {
        return a.name_ == b.name_ && a.states_ == b.states_ && a.initial_ == b.initial_ &&
               a.transitions_ == b.transitions_;
    }

private:
    std::string name_;
    std::vector<std::string> states_;
    StateId initial_ = 0;
    std::vector<Transition> transitions_;
    std::vector<std::vector<std::size_t>> outgoing_;
};

/// A finite set of processes over shared variables and a finite value domain.
class Program
{
public:
    Program() = default;
    Program(std::vector<std::string> values, std::vector<std::string> vars,
            std::vector<ValueId> init_memory, std::vector<Process> processes);

    const std::vector<std::string>& values() const noexcept { return values_; }
    const std::vector<std::string>& vars() const noexcept { return vars_; }
    const std::vector<ValueId>& init_memory() const noexcept { return init_memory_; }
    const std::vector<Process>& processes() const noexcept { return processes_; }
    const Process& process(ProcId i) const { return processes_.at(i); }
    std::size_t process_count() const noexcept { return processes_.size(); }

    const std::string& value_name(ValueId d) const { return values_.at(d); }
    const std::string& var_name(VarId x) const { return vars_.at(x); }

    std::optional<ProcId> find_process(std::string_view name) const;
    std::optional<VarId> find_var(std::string_view name) const;
    std::optional<ValueId> find_value(std::string_view name) const;

    /// `rd(x,1)`-style rendering used by the text format, labels, and scripts.
    std::string instr_text(const Instruction& instr) const;

    friend bool operator==(const Program&, const Program&) = default;

private:
    std::vector<std::string> values_;
    std::vector<std::string> vars_;
    std::vector<ValueId> init_memory_;
    std::vector<Process> processes_;
};

enum class Mode { Reach, Safe };

struct Target
{
    ProcId proc = 0;
    StateId state = 0;
    friend auto operator<=>(const Target&, const Target&) = default;
};

struct Objective
{
    Mode mode = Mode::Reach;
    std::vector<Target> targets;

    bool is_target(ProcId proc, StateId q) const;
    friend bool operator==(const Objective&, const Objective&) = default;
};

struct ParsedProgram
{
    Program program;
    std::optional<Objective> objective;
};

/// Incremental construction with name interning. States of a process are
/// recorded in first-use order; build() checks all cross references.
class ProgramBuilder
{
public:
    ValueId value(const std::string& name);
    VarId var(const std::string& name, const std::string& init_value);
    ProcId process(const std::string& name, const std::string& initial_state);
    StateId state(ProcId proc, const std::string& name);
    void transition(ProcId proc, const std::string& from, Instruction instr, const std::string& to);
    /// Convenience: parses `rd(x,1)` etc. against the declared names.
    void transition(ProcId proc, const std::string& from, const std::string& instr, const std::string& to);

    bool has_value(const std::string& name) const { return value_ids_.count(name) != 0; }
    std::optional<VarId> find_var(const std::string& name) const;
    std::optional<ValueId> find_value(const std::string& name) const;

    Program build() const;

private:
    struct ProcDraft
    {
        std::string name;
        std::vector<std::string> states;
        std::map<std::string, StateId> state_ids;
        StateId initial = 0;
        std::vector<Transition> transitions;
    };

    std::vector<std::string> values_;
    std::map<std::string, ValueId> value_ids_;
    std::vector<std::string> vars_;
    std::map<std::string, VarId> var_ids_;
    std::vector<ValueId> init_;
    std::vector<ProcDraft> procs_;
    std::map<std::string, ProcId> proc_ids_;
};

/// Instruction token parser shared by the text format and PlayScript decoding.
/// Returns nullopt on malformed text; throws ValidationError on undeclared names.
std::optional<Instruction> parse_instruction(const Program& p, std::string_view text);

ParsedProgram parse_program(std::string_view text);
ParsedProgram load_program(const std::string& path);
std::string serialize_program(const Program& p, const Objective* objective = nullptr);

/// Transition of `proc` matching `from INSTR to` by name, if any.
std::optional<std::size_t> find_transition(const Program& p, ProcId proc, std::string_view from,
                                           std::string_view instr, std::string_view to);

/// `P.q` rendering of a target.
std::string target_text(const Program& p, const Target& t);
/// Parses a comma- or space-separated list of `P.q` names.
std::vector<Target> parse_targets(const Program& p, std::string_view text);

/// Single-process restriction that keeps variables, domain and initial memory.
Program project(const Program& p, ProcId proc);
/// Targets restricted to `proc`, renumbered for the projected program.
Objective project(const Objective& o, ProcId proc);

enum class Severity { Warning, Error };

struct Violation
{
    Severity severity = Severity::Warning;
    std::string message;
};

std::vector<Violation> validate_for_game(const Program& p, const Objective& o);

} // namespace tsogame
