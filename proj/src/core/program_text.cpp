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

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "tsogame/program.hpp"

namespace tsogame {

namespace {

struct Token
{
    std::string text;
    std::size_t column; // 1-based
};

constexpr std::array<std::string_view, 5> kKeywords = {"values", "vars", "init", "process",
                                                       "objective"};

bool is_keyword(std::string_view s)
{
    return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end();
}

bool is_identifier(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

// Domain values may also be numerals (`values 0 1`).
bool is_value_token(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
               line[j] != '#')
            ++j;
        out.push_back({std::string(line.substr(i, j - i)), i + 1});
        i = j;
    }
    return out;
}

class TextParser
{
public:
    ParsedProgram run(std::string_view text)
    {
        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            ++line_no;
            auto line = text.substr(start, end - start);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            handle_line(line_no, tokenize(line));
            start = end + 1;
        }
        return finish(line_no);
    }

private:
    [[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg)
    {
        throw ParseError(line, col, msg);
    }

    void handle_line(std::size_t ln, const std::vector<Token>& toks)
    {
        if (toks.empty())
            return;
        const auto& head = toks[0].text;
        if (head == "values")
            return on_values(ln, toks);
        if (head == "vars")
            return on_vars(ln, toks);
        if (head == "init")
            return on_init(ln, toks);
        if (head == "process")
            return on_process(ln, toks);
        if (head == "objective")
            return on_objective(ln, toks);
        if (current_proc_ && toks.size() == 3)
            return on_transition(ln, toks);
        if (!current_proc_)
            fail(ln, toks[0].column, "unexpected '" + head + "' outside a process block");
        fail(ln, toks[0].column, "expected 'FROM TO INSTR'");
    }

    void on_values(std::size_t ln, const std::vector<Token>& toks)
    {
        if (seen_values_)
            fail(ln, toks[0].column, "duplicate 'values' declaration");
        seen_values_ = true;
        if (toks.size() < 2)
            fail(ln, toks[0].column + 6, "'values' needs at least one value");
        for (std::size_t i = 1; i < toks.size(); ++i) {
            if (!is_value_token(toks[i].text))
                fail(ln, toks[i].column, "malformed value '" + toks[i].text + "'");
            if (builder_.has_value(toks[i].text))
                fail(ln, toks[i].column, "duplicate value '" + toks[i].text + "'");
            builder_.value(toks[i].text);
        }
    }

    void on_vars(std::size_t ln, const std::vector<Token>& toks)
    {
        if (!seen_values_)
            fail(ln, toks[0].column, "'vars' before 'values'");
        if (seen_vars_)
            fail(ln, toks[0].column, "duplicate 'vars' declaration");
        seen_vars_ = true;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const auto& name = toks[i].text;
            if (!is_identifier(name) || is_keyword(name))
                fail(ln, toks[i].column, "malformed variable name '" + name + "'");
            if (std::any_of(var_decls_.begin(), var_decls_.end(),
                            [&](const auto& v) { return v.name == name; }))
                fail(ln, toks[i].column, "duplicate variable '" + name + "'");
            var_decls_.push_back({name, ln, toks[i].column, {}});
        }
    }

    void on_init(std::size_t ln, const std::vector<Token>& toks)
    {
        if (!seen_vars_)
            fail(ln, toks[0].column, "'init' before 'vars'");
        if (!procs_.empty())
            fail(ln, toks[0].column, "'init' after a process block");
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const auto& tok = toks[i].text;
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size())
                fail(ln, toks[i].column, "expected 'var=value', got '" + tok + "'");
            const auto name = tok.substr(0, eq);
            const auto value = tok.substr(eq + 1);
            auto it = std::find_if(var_decls_.begin(), var_decls_.end(),
                                   [&](const auto& v) { return v.name == name; });
            if (it == var_decls_.end())
                fail(ln, toks[i].column, "undeclared variable '" + name + "'");
            if (!builder_.has_value(value))
                fail(ln, toks[i].column + eq + 1, "undeclared value '" + value + "'");
            if (it->init)
                fail(ln, toks[i].column, "duplicate init for variable '" + name + "'");
            it->init = value;
        }
    }

    void declare_vars_once(std::size_t ln)
    {
        if (vars_declared_)
            return;
        if (!seen_values_)
            fail(ln, 1, "missing 'values' declaration");
        for (const auto& v : var_decls_) {
            if (!v.init)
                fail(v.line, v.column, "missing init for variable '" + v.name + "'");
            builder_.var(v.name, *v.init);
        }
        vars_declared_ = true;
    }

    void on_process(std::size_t ln, const std::vector<Token>& toks)
    {
        declare_vars_once(ln);
        if (objective_line_)
            fail(ln, toks[0].column, "process block after 'objective'");
        if (toks.size() != 4 || toks[2].text != "init") {
            const auto col = toks.size() > 2 ? toks[2].column : toks.back().column;
            fail(ln, col, "expected 'process NAME init STATE' (missing process initial state)");
        }
        const auto& name = toks[1].text;
        if (!is_identifier(name) || is_keyword(name))
            fail(ln, toks[1].column, "malformed process name '" + name + "'");
        check_state_name(ln, toks[3]);
        if (std::find(procs_.begin(), procs_.end(), name) != procs_.end())
            fail(ln, toks[1].column, "duplicate process id '" + name + "'");
        procs_.push_back(name);
        current_proc_ = builder_.process(name, toks[3].text);
    }

    void check_state_name(std::size_t ln, const Token& tok)
    {
        if (!is_identifier(tok.text) || is_keyword(tok.text))
            fail(ln, tok.column, "malformed state name '" + tok.text + "'");
    }

    void on_transition(std::size_t ln, const std::vector<Token>& toks)
    {
        check_state_name(ln, toks[0]);
        check_state_name(ln, toks[1]);
        const auto& instr = toks[2].text;
        try {
            std::optional<Instruction> decoded;
            if (instr == "skip")
                decoded = Instruction::skip();
            else if (instr == "mf")
                decoded = Instruction::fence();
            else
                decoded = decode(instr);
            if (!decoded)
                fail(ln, toks[2].column, "malformed instruction '" + instr + "'");
            builder_.transition(*current_proc_, toks[0].text, *decoded, toks[1].text);
        } catch (const ParseError&) {
            throw;
        } catch (const ValidationError& e) {
            fail(ln, toks[2].column, e.what());
        }
    }

    std::optional<Instruction> decode(const std::string& text)
    {
        if (text.size() < 7 || text[2] != '(' || text.back() != ')')
            return std::nullopt;
        const auto head = text.substr(0, 2);
        if (head != "rd" && head != "wr")
            return std::nullopt;
        const auto inner = text.substr(3, text.size() - 4);
        const auto comma = inner.find(',');
        if (comma == std::string::npos || inner.find(',', comma + 1) != std::string::npos)
            return std::nullopt;
        const auto x = builder_.find_var(inner.substr(0, comma));
        if (!x)
            throw ValidationError("undeclared variable '" + inner.substr(0, comma) + "'");
        const auto d = builder_.find_value(inner.substr(comma + 1));
        if (!d)
            throw ValidationError("undeclared value '" + inner.substr(comma + 1) + "'");
        return head == "rd" ? Instruction::read(*x, *d) : Instruction::write(*x, *d);
    }

    void on_objective(std::size_t ln, const std::vector<Token>& toks)
    {
        if (objective_line_)
            fail(ln, toks[0].column, "duplicate 'objective' line");
        if (toks.size() < 2 || (toks[1].text != "reach" && toks[1].text != "safe"))
            fail(ln, toks.size() > 1 ? toks[1].column : toks[0].column + 9,
                 "expected 'reach' or 'safe'");
        objective_line_ = ln;
        objective_tokens_ = toks;
        current_proc_.reset();
    }

    ParsedProgram finish(std::size_t last_line)
    {
        declare_vars_once(last_line);
        ParsedProgram out;
        try {
            out.program = builder_.build();
        } catch (const ValidationError& e) {
            fail(last_line, 1, e.what());
        }
        if (objective_line_) {
            Objective o;
            o.mode = objective_tokens_[1].text == "reach" ? Mode::Reach : Mode::Safe;
            for (std::size_t i = 2; i < objective_tokens_.size(); ++i) {
                const auto& tok = objective_tokens_[i];
                try {
                    for (const auto& t : parse_targets(out.program, tok.text))
                        if (!o.is_target(t.proc, t.state))
                            o.targets.push_back(t);
                } catch (const ValidationError& e) {
                    fail(*objective_line_, tok.column, e.what());
                }
            }
            out.objective = std::move(o);
        }
        return out;
    }

    struct VarDecl
    {
        std::string name;
        std::size_t line;
        std::size_t column;
        std::optional<std::string> init;
    };

    ProgramBuilder builder_;
    bool seen_values_ = false;
    bool seen_vars_ = false;
    bool vars_declared_ = false;
    std::vector<VarDecl> var_decls_;
    std::vector<std::string> procs_;
    std::optional<ProcId> current_proc_;
    std::optional<std::size_t> objective_line_;
    std::vector<Token> objective_tokens_;
};

} // namespace

ParsedProgram parse_program(std::string_view text)
{
    return TextParser().run(text);
}

ParsedProgram load_program(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(0, 0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str());
}

std::string serialize_program(const Program& p, const Objective* objective)
{
    std::ostringstream out;
    out << "values";
    for (const auto& v : p.values())
        out << ' ' << v;
    out << "\nvars";
    for (const auto& x : p.vars())
        out << ' ' << x;
    out << "\ninit";
    for (VarId x = 0; x < p.vars().size(); ++x)
        out << ' ' << p.var_name(x) << '=' << p.value_name(p.init_memory()[x]);
    out << '\n';
    for (const auto& proc : p.processes()) {
        out << "process " << proc.name() << " init " << proc.state_name(proc.initial()) << '\n';
        for (const auto& t : proc.transitions())
            out << "  " << proc.state_name(t.from) << ' ' << proc.state_name(t.to) << ' '
                << p.instr_text(t.instr) << '\n';
    }
    if (objective) {
        out << "objective " << (objective->mode == Mode::Reach ? "reach" : "safe");
        for (const auto& t : objective->targets)
            out << ' ' << target_text(p, t);
        out << '\n';
    }
    return out.str();
}

} // namespace tsogame
