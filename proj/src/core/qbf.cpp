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

#include "tsogame/qbf.hpp"

#include <cctype>
#include <cstdint>
#include <functional>

namespace tsogame {

namespace {

class QbfParser
{
public:
    explicit QbfParser(std::string_view text) : text_(text) {}

    QbfFormula run()
    {
        skip_space();
        while (!at_end() && peek() != ':') {
            const auto col = pos_ + 1;
            const auto q = ident();
            if (q != "E" && q != "A")
                throw ParseError(1, col, "expected quantifier E or A, got '" + q + "'");
            skip_space();
            const auto vcol = pos_ + 1;
            const auto v = ident();
            if (v.empty())
                throw ParseError(1, vcol, "expected a variable after the quantifier");
            for (const auto& seen : f_.vars)
                if (seen == v)
                    throw ParseError(1, vcol, "variable '" + v + "' bound twice");
            f_.quantifiers.push_back(q == "E" ? Quantifier::Exists : Quantifier::Forall);
            f_.vars.push_back(v);
            skip_space();
        }
        if (at_end())
            throw ParseError(1, pos_ + 1, "missing ':' after the quantifier prefix");
        ++pos_;
        f_.root = disjunction();
        skip_space();
        if (!at_end())
            throw ParseError(1, pos_ + 1, std::string("unexpected '") + peek() + "'");
        return std::move(f_);
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    std::string ident()
    {
        const auto start = pos_;
        if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::size_t add(QbfNode n)
    {
        f_.nodes.push_back(n);
        return f_.nodes.size() - 1;
    }

    std::size_t disjunction()
    {
        auto lhs = conjunction();
        skip_space();
        while (!at_end() && peek() == '|') {
            ++pos_;
            const auto rhs = conjunction();
            lhs = add({QbfNode::Kind::Or, 0, true, lhs, rhs});
            skip_space();
        }
        return lhs;
    }

    std::size_t conjunction()
    {
        auto lhs = atom();
        skip_space();
        while (!at_end() && peek() == '&') {
            ++pos_;
            const auto rhs = atom();
            lhs = add({QbfNode::Kind::And, 0, true, lhs, rhs});
            skip_space();
        }
        return lhs;
    }

    std::size_t atom()
    {
        skip_space();
        if (at_end())
            throw ParseError(1, pos_ + 1, "unexpected end of formula");
        if (peek() == '(') {
            ++pos_;
            const auto inner = disjunction();
            skip_space();
            if (at_end() || peek() != ')')
                throw ParseError(1, pos_ + 1, "expected ')'");
            ++pos_;
            return inner;
        }
        bool positive = true;
        if (peek() == '!') {
            ++pos_;
            skip_space();
            positive = false;
            if (!at_end() && (peek() == '(' || peek() == '!'))
                throw ParseError(1, pos_ + 1, "negation applies to variables only");
        }
        const auto col = pos_ + 1;
        const auto v = ident();
        if (v.empty())
            throw ParseError(1, col, "expected a variable");
        for (std::size_t i = 0; i < f_.vars.size(); ++i)
            if (f_.vars[i] == v)
                return add({QbfNode::Kind::Literal, i, positive, 0, 0});
        throw ParseError(1, col, "unbound variable '" + v + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    QbfFormula f_;
};

bool eval_body(const QbfFormula& f, std::size_t node, std::uint32_t assignment)
{
    const auto& n = f.nodes[node];
    switch (n.kind) {
    case QbfNode::Kind::Literal:
        return (((assignment >> n.var) & 1u) != 0) == n.positive;
    case QbfNode::Kind::And:
        return eval_body(f, n.left, assignment) && eval_body(f, n.right, assignment);
    case QbfNode::Kind::Or:
        return eval_body(f, n.left, assignment) || eval_body(f, n.right, assignment);
    }
    return false;
}

bool eval_prefix(const QbfFormula& f, std::size_t k, std::uint32_t assignment)
{
    if (k == f.vars.size())
        return eval_body(f, f.root, assignment);
    const bool v0 = eval_prefix(f, k + 1, assignment);
    if (f.quantifiers[k] == Quantifier::Exists && v0)
        return true;
    if (f.quantifiers[k] == Quantifier::Forall && !v0)
        return false;
    return eval_prefix(f, k + 1, assignment | (1u << k));
}

} // namespace

QbfFormula parse_qbf(std::string_view text)
{
    return QbfParser(text).run();
}

std::string qbf_to_string(const QbfFormula& f)
{
    std::string out;
    for (std::size_t k = 0; k < f.vars.size(); ++k)
        out += (f.quantifiers[k] == Quantifier::Exists ? "E " : "A ") + f.vars[k] + " ";
    out += ":";
    std::function<std::string(std::size_t)> body = [&](std::size_t i) -> std::string {
        const auto& n = f.nodes[i];
        if (n.kind == QbfNode::Kind::Literal)
            return (n.positive ? "" : "!") + f.vars[n.var];
        return "(" + body(n.left) + (n.kind == QbfNode::Kind::And ? " & " : " | ") +
               body(n.right) + ")";
    };
    return out + " " + body(f.root);
}

bool eval_qbf(const QbfFormula& f)
{
    if (f.vars.size() > kMaxQbfVars)
        throw ResourceError("brute-force evaluation is limited to " +
                            std::to_string(kMaxQbfVars) + " variables");
    return eval_prefix(f, 0, 0);
}

ParsedProgram qbf_to_program(const QbfFormula& f, Mode mode)
{
    ProgramBuilder b;
    b.value("0");
    b.value("1");
    for (const auto& v : f.vars)
        b.var(v, "0");
    const auto n = f.vars.size();
    const ProcId P = b.process("P", n > 0 ? "qi1" : "b" + std::to_string(f.root) + "_in");

    auto wr = [&](std::size_t k, int d) { return Instruction::write(k, static_cast<ValueId>(d)); };
    auto rd = [&](std::size_t k, int d) { return Instruction::read(k, static_cast<ValueId>(d)); };
    auto in_of = [](std::size_t node) { return "b" + std::to_string(node) + "_in"; };
    auto out_of = [](std::size_t node) { return "b" + std::to_string(node) + "_out"; };

    // Quantifier k (1-based) wraps the next gadget: quantifier k+1, or the body.
    for (std::size_t k = 1; k <= n; ++k) {
        const auto in = "qi" + std::to_string(k);
        const auto out = "qo" + std::to_string(k);
        const auto next_in = k < n ? "qi" + std::to_string(k + 1) : in_of(f.root);
        const auto next_out = k < n ? "qo" + std::to_string(k + 1) : out_of(f.root);
        const auto x = k - 1;
        if (f.quantifiers[x] == Quantifier::Exists) {
            b.transition(P, in, wr(x, 0), next_in);
            b.transition(P, in, wr(x, 1), next_in);
            b.transition(P, next_out, Instruction::skip(), out);
        } else {
            const auto again = "qu" + std::to_string(k);
            b.transition(P, in, wr(x, 0), next_in);
            b.transition(P, next_out, rd(x, 0), again);
            b.transition(P, again, wr(x, 1), next_in);
            b.transition(P, next_out, rd(x, 1), out);
        }
    }
    std::function<void(std::size_t)> body = [&](std::size_t i) {
        const auto& node = f.nodes[i];
        switch (node.kind) {
        case QbfNode::Kind::Literal:
            b.transition(P, in_of(i), rd(node.var, node.positive ? 1 : 0), out_of(i));
            break;
        case QbfNode::Kind::Or:
            b.transition(P, in_of(i), Instruction::skip(), in_of(node.left));
            b.transition(P, in_of(i), Instruction::skip(), in_of(node.right));
            body(node.left);
            body(node.right);
            b.transition(P, out_of(node.left), Instruction::skip(), out_of(i));
            b.transition(P, out_of(node.right), Instruction::skip(), out_of(i));
            break;
        case QbfNode::Kind::And:
            b.transition(P, in_of(i), Instruction::skip(), in_of(node.left));
            body(node.left);
            b.transition(P, out_of(node.left), Instruction::skip(), in_of(node.right));
            body(node.right);
            b.transition(P, out_of(node.right), Instruction::skip(), out_of(i));
            break;
        }
    };
    body(f.root);
    const auto top = n > 0 ? std::string("qo1") : out_of(f.root);
    b.transition(P, top, Instruction::skip(), top);

    ParsedProgram out;
    out.program = b.build();
    Objective o{mode, {}};
    if (mode == Mode::Reach)
        o.targets.push_back({0, *out.program.process(0).find_state(top)});
    out.objective = o;
    return out;
}

} // namespace tsogame
