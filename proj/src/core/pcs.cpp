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

#include "tsogame/pcs.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace tsogame {

namespace {

struct Tok
{
    std::string text;
    std::size_t column;
};

std::vector<Tok> split_line(std::string_view line)
{
    std::vector<Tok> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#')
            ++j;
        out.push_back({std::string(line.substr(i, j - i)), i + 1});
        i = j;
    }
    return out;
}

bool is_ident(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

bool is_transition_token(std::string_view s)
{
    return s.size() > 1 && s[0] == 'e' &&
           std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_reserved_state(std::string_view s)
{
    if (s == kSafeSink)
        return true;
    for (std::string_view prefix : {"u_", "h1_", "h2_", "pre_"})
        if (s.substr(0, prefix.size()) == prefix && is_transition_token(s.substr(prefix.size())))
            return true;
    return false;
}

void check_reserved(const Pcs& l)
{
    for (const auto& m : l.messages)
        if (m == "0" || m == "1" || m == "bot" || is_transition_token(m))
            throw ValidationError("message name '" + m + "' clashes with a reserved domain value");
    for (const auto& s : l.states)
        if (is_reserved_state(s))
            throw ValidationError("state name '" + s + "' clashes with a generated state");
}

} // namespace

Pcs parse_pcs(std::string_view text)
{
    Pcs l;
    std::map<std::string, std::size_t, std::less<>> state_ids, msg_ids;
    bool seen_states = false, seen_messages = false, seen_init = false, seen_final = false;
    std::set<std::tuple<std::size_t, std::size_t, int, std::size_t>> seen_trans;

    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++line_no;
        const auto toks = split_line(text.substr(start, end - start));
        start = end + 1;
        if (toks.empty())
            continue;
        const auto& head = toks[0].text;
        auto state_of = [&](const Tok& t) {
            auto it = state_ids.find(t.text);
            if (it == state_ids.end())
                throw ParseError(line_no, t.column, "undeclared state '" + t.text + "'");
            return it->second;
        };
        if (head == "states" || head == "messages") {
            const bool states = head == "states";
            bool& seen = states ? seen_states : seen_messages;
            if (seen)
                throw ParseError(line_no, toks[0].column, "duplicate '" + head + "' line");
            seen = true;
            auto& names = states ? l.states : l.messages;
            auto& ids = states ? state_ids : msg_ids;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (!is_ident(toks[i].text) && !(!states && std::all_of(toks[i].text.begin(), toks[i].text.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; })))
                    throw ParseError(line_no, toks[i].column, "malformed name '" + toks[i].text + "'");
                if (!ids.emplace(toks[i].text, names.size()).second)
                    throw ParseError(line_no, toks[i].column, "duplicate name '" + toks[i].text + "'");
                names.push_back(toks[i].text);
            }
            if (states && names.empty())
                throw ParseError(line_no, toks[0].column, "'states' needs at least one state");
        } else if (head == "init") {
            if (seen_init)
                throw ParseError(line_no, toks[0].column, "duplicate 'init' line");
            if (toks.size() != 2)
                throw ParseError(line_no, toks[0].column, "expected 'init STATE'");
            seen_init = true;
            l.initial = state_of(toks[1]);
        } else if (head == "final") {
            if (seen_final)
                throw ParseError(line_no, toks[0].column, "duplicate 'final' line");
            seen_final = true;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                const auto s = state_of(toks[i]);
                if (std::find(l.finals.begin(), l.finals.end(), s) == l.finals.end())
                    l.finals.push_back(s);
            }
        } else if (head == "trans") {
            PcsTransition t;
            if (toks.size() < 4)
                throw ParseError(line_no, toks[0].column, "expected 'trans FROM TO OP [MSG]'");
            t.from = state_of(toks[1]);
            t.to = state_of(toks[2]);
            const auto& op = toks[3].text;
            if (op == "skip") {
                if (toks.size() != 4)
                    throw ParseError(line_no, toks[4].column, "skip takes no message");
                t.op = PcsOp::Skip;
            } else if (op == "send" || op == "recv") {
                if (toks.size() != 5)
                    throw ParseError(line_no, toks[3].column, op + " needs exactly one message");
                t.op = op == "send" ? PcsOp::Send : PcsOp::Recv;
                auto it = msg_ids.find(toks[4].text);
                if (it == msg_ids.end())
                    throw ParseError(line_no, toks[4].column, "undeclared message '" + toks[4].text + "'");
                t.message = it->second;
            } else {
                throw ParseError(line_no, toks[3].column, "unknown operation '" + op + "'");
            }
            if (!seen_trans.emplace(t.from, t.to, static_cast<int>(t.op), t.message).second)
                throw ParseError(line_no, toks[0].column, "duplicate transition");
            l.transitions.push_back(t);
        } else {
            throw ParseError(line_no, toks[0].column, "unexpected '" + head + "'");
        }
    }
    if (!seen_states)
        throw ParseError(line_no, 1, "missing 'states' line");
    if (!seen_init)
        throw ParseError(line_no, 1, "missing 'init' line");
    return l;
}

std::string serialize_pcs(const Pcs& l)
{
    std::ostringstream out;
    out << "states";
    for (const auto& s : l.states)
        out << ' ' << s;
    out << "\nmessages";
    for (const auto& m : l.messages)
        out << ' ' << m;
    out << "\ninit " << l.states[l.initial] << "\nfinal";
    for (auto f : l.finals)
        out << ' ' << l.states[f];
    out << '\n';
    for (const auto& t : l.transitions) {
        out << "trans " << l.states[t.from] << ' ' << l.states[t.to] << ' ';
        switch (t.op) {
        case PcsOp::Skip:
            out << "skip";
            break;
        case PcsOp::Send:
            out << "send " << l.messages[t.message];
            break;
        case PcsOp::Recv:
            out << "recv " << l.messages[t.message];
            break;
        }
        out << '\n';
    }
    return out.str();
}

std::string pcs_transition_id(std::size_t e)
{
    return "e" + std::to_string(e);
}

std::size_t parse_pcs_transition_id(const Pcs& l, std::string_view token)
{
    auto digits = token;
    if (!digits.empty() && digits[0] == 'e')
        digits.remove_prefix(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ValidationError("malformed transition id '" + std::string(token) + "'");
    const auto e = std::stoull(std::string(digits));
    if (e >= l.transitions.size())
        throw ValidationError("unknown transition id '" + std::string(token) + "'");
    return e;
}

PcsConfig pcs_initial(const Pcs& l)
{
    return {l.initial, {}};
}

bool pcs_enabled(const Pcs& l, const PcsConfig& c, std::size_t e)
{
    const auto& t = l.transitions.at(e);
    if (t.from != c.state)
        return false;
    if (t.op == PcsOp::Recv)
        return !c.channel.empty() && c.channel.front() == t.message;
    return true;
}

PcsConfig pcs_step(const Pcs& l, const PcsConfig& c, std::size_t e)
{
    if (e >= l.transitions.size())
        throw ValidationError("unknown transition " + pcs_transition_id(e));
    if (!pcs_enabled(l, c, e))
        throw ValidationError("transition " + pcs_transition_id(e) + " is not enabled");
    const auto& t = l.transitions[e];
    PcsConfig next = c;
    next.state = t.to;
    if (t.op == PcsOp::Send)
        next.channel.push_back(t.message);
    else if (t.op == PcsOp::Recv)
        next.channel.erase(next.channel.begin());
    return next;
}

std::string pcs_gadget_state(std::string_view kind, std::size_t e)
{
    return std::string(kind) + "_" + pcs_transition_id(e);
}

namespace {

ParsedProgram build_game(const Pcs& l, Fairness fairness)
{
    check_reserved(l);
    const bool proc_fair = fairness == Fairness::Process;
    ProgramBuilder b;
    for (const char* v : {"0", "1", "bot"})
        b.value(v);
    for (const auto& m : l.messages)
        b.value(m);
    if (proc_fair)
        for (std::size_t e = 0; e < l.transitions.size(); ++e)
            b.value(pcs_transition_id(e));
    const VarId x_wr = b.var("x_wr", "bot");
    const VarId x_rd = b.var("x_rd", "bot");
    const VarId y = b.var("y", "0");
    const VarId z = proc_fair ? b.var("z", "bot") : 0;
    auto val = [&](const std::string& name) { return *b.find_value(name); };
    const ValueId bot = val("bot");

    const ProcId p1 = b.process("Proc1", l.states[l.initial]);
    std::vector<std::string> p1_states;
    auto p1_state = [&](const std::string& s) {
        if (std::find(p1_states.begin(), p1_states.end(), s) == p1_states.end()) {
            b.state(p1, s);
            p1_states.push_back(s);
        }
        return s;
    };
    for (const auto& s : l.states)
        p1_state(s);
    // h1/h2 states of receive gadgets, keyed by the received message.
    std::map<std::string, std::size_t> receive_stage;

    for (std::size_t e = 0; e < l.transitions.size(); ++e) {
        const auto& t = l.transitions[e];
        std::string from = l.states[t.from];
        const std::string to = l.states[t.to];
        if (proc_fair) {
            const auto pre = p1_state(pcs_gadget_state("pre", e));
            b.transition(p1, from, Instruction::read(z, val(pcs_transition_id(e))), pre);
            from = pre;
        }
        switch (t.op) {
        case PcsOp::Skip:
            b.transition(p1, from, Instruction::skip(), to);
            break;
        case PcsOp::Send: {
            const auto u = p1_state(pcs_gadget_state("u", e));
            b.transition(p1, from, Instruction::write(x_wr, val(l.messages[t.message])), u);
            b.transition(p1, u, Instruction::write(y, val("1")), to);
            break;
        }
        case PcsOp::Recv: {
            const auto h1 = p1_state(pcs_gadget_state("h1", e));
            const auto h2 = p1_state(pcs_gadget_state("h2", e));
            receive_stage[h1] = t.message;
            receive_stage[h2] = t.message;
            b.transition(p1, from, Instruction::skip(), h1);
            b.transition(p1, h1, Instruction::read(x_rd, val(l.messages[t.message])), h2);
            b.transition(p1, h2, Instruction::read(x_rd, bot), to);
            break;
        }
        }
    }
    if (proc_fair) {
        // A rotated message the process did not ask for lets her escape to a safe sink.
        const auto states = p1_states;
        for (const auto& q : states) {
            for (std::size_t m = 0; m < l.messages.size(); ++m) {
                auto it = receive_stage.find(q);
                if (it != receive_stage.end() && it->second == m)
                    continue;
                b.transition(p1, q, Instruction::read(x_rd, val(l.messages[m])), kSafeSink);
            }
        }
        b.transition(p1, kSafeSink, Instruction::skip(), kSafeSink);
    }

    const ProcId p2 = b.process("Proc2", "p0");
    for (const auto& m : l.messages) {
        const ValueId mv = val(m);
        auto st = [&](int k) { return "p" + std::to_string(k) + "_" + m; };
        b.transition(p2, "p0", Instruction::read(x_wr, mv), st(1));
        b.transition(p2, st(1), Instruction::write(x_rd, mv), st(2));
        b.transition(p2, st(2), Instruction::fence(), st(3));
        b.transition(p2, st(3), Instruction::write(x_wr, bot), st(4));
        b.transition(p2, st(4), Instruction::read(y, val("0")), st(5));
        b.transition(p2, st(4), Instruction::read(y, val("1")), kWinState);
        b.transition(p2, st(5), Instruction::fence(), st(6));
        b.transition(p2, st(6), Instruction::read(y, val("1")), st(7));
        b.transition(p2, st(7), Instruction::write(y, val("0")), st(8));
        b.transition(p2, st(8), Instruction::write(x_rd, bot), st(9));
        b.transition(p2, st(9), Instruction::fence(), st(10));
        b.transition(p2, st(10), Instruction::read(x_wr, bot), "p0");
        for (const auto& m2 : l.messages)
            b.transition(p2, st(10), Instruction::read(x_wr, val(m2)), kWinState);
    }
    b.state(p2, kWinState);
    b.transition(p2, kWinState, Instruction::skip(), kWinState);

    if (proc_fair) {
        for (std::size_t e = 0; e < l.transitions.size(); ++e) {
            const auto q = "q_" + pcs_transition_id(e);
            const auto pe = b.process("Proc_" + pcs_transition_id(e), q);
            b.transition(pe, q, Instruction::write(z, val(pcs_transition_id(e))), q);
        }
    }

    ParsedProgram out;
    out.program = b.build();
    Objective o{proc_fair ? Mode::Safe : Mode::Reach, {}};
    for (auto f : l.finals)
        o.targets.push_back({0, *out.program.process(0).find_state(l.states[f])});
    if (!proc_fair)
        o.targets.push_back({1, *out.program.process(1).find_state(kWinState)});
    out.objective = o;
    return out;
}

} // namespace

ParsedProgram pcs_to_update_fairness_game(const Pcs& l)
{
    return build_game(l, Fairness::Update);
}

ParsedProgram pcs_to_process_fairness_game(const Pcs& l)
{
    return build_game(l, Fairness::Process);
}

ParsedProgram pcs_to_game(const Pcs& l, Fairness fairness)
{
    return build_game(l, fairness);
}

PlayScript script_from_pcs_run(const Pcs& l, const std::vector<std::size_t>& run,
                               Fairness fairness)
{
    const auto game = build_game(l, fairness);
    const Program& p = game.program;
    PlayScript script;

    auto proc_id = [&](const std::string& name) { return *p.find_process(name); };
    auto step = [&](const std::string& proc, const std::string& from, const std::string& instr,
                    const std::string& to, std::vector<std::string> flushes) {
        const ProcId pid = proc_id(proc);
        const auto t = find_transition(p, pid, from, instr, to);
        if (!t)
            throw ValidationError("internal: no transition " + proc + " " + from + " " + instr +
                                  " " + to);
        script.push_back({Turn::Process, Move{pid, *t}, {}});
        ScriptMove u{Turn::Update, {}, {}};
        for (const auto& f : flushes)
            u.flushes.push_back(proc_id(f));
        script.push_back(std::move(u));
    };

    PcsConfig c = pcs_initial(l);
    for (auto e : run) {
        c = pcs_step(l, c, e);
        const auto& t = l.transitions[e];
        std::string from = l.states[t.from];
        const std::string to = l.states[t.to];
        const std::string id = pcs_transition_id(e);
        if (fairness == Fairness::Process) {
            step("Proc_" + id, "q_" + id, "wr(z," + id + ")", "q_" + id, {"Proc_" + id});
            step("Proc1", from, "rd(z," + id + ")", pcs_gadget_state("pre", e), {});
            from = pcs_gadget_state("pre", e);
        }
        switch (t.op) {
        case PcsOp::Skip:
            step("Proc1", from, "skip", to, {});
            break;
        case PcsOp::Send: {
            const auto& m = l.messages[t.message];
            step("Proc1", from, "wr(x_wr," + m + ")", pcs_gadget_state("u", e), {});
            step("Proc1", pcs_gadget_state("u", e), "wr(y,1)", to, {});
            break;
        }
        case PcsOp::Recv: {
            const auto& m = l.messages[t.message];
            const auto h1 = pcs_gadget_state("h1", e);
            const auto h2 = pcs_gadget_state("h2", e);
            auto p2 = [&](int k) { return "p" + std::to_string(k) + "_" + m; };
            step("Proc1", from, "skip", h1, {"Proc1"});
            step("Proc2", "p0", "rd(x_wr," + m + ")", p2(1), {});
            step("Proc2", p2(1), "wr(x_rd," + m + ")", p2(2), {"Proc2"});
            step("Proc2", p2(2), "mf", p2(3), {});
            step("Proc2", p2(3), "wr(x_wr,bot)", p2(4), {});
            step("Proc2", p2(4), "rd(y,0)", p2(5), {});
            step("Proc1", h1, "rd(x_rd," + m + ")", h2, {"Proc2"});
            step("Proc2", p2(5), "mf", p2(6), {"Proc1"});
            step("Proc2", p2(6), "rd(y,1)", p2(7), {});
            step("Proc2", p2(7), "wr(y,0)", p2(8), {});
            step("Proc2", p2(8), "wr(x_rd,bot)", p2(9), {"Proc2", "Proc2"});
            step("Proc2", p2(9), "mf", p2(10), {});
            step("Proc2", p2(10), "rd(x_wr,bot)", "p0", {});
            step("Proc1", h2, "rd(x_rd,bot)", to, {});
            break;
        }
        }
    }
    return script;
}

} // namespace tsogame
