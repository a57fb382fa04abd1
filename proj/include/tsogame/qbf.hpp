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
#include <string>
#include <string_view>
#include <vector>

#include "tsogame/program.hpp"

namespace tsogame {

enum class Quantifier { Exists, Forall };

struct QbfNode
{
    enum class Kind { And, Or, Literal };
    Kind kind = Kind::Literal;
    std::size_t var = 0;    // Literal: index into the prefix
    bool positive = true;   // Literal
    std::size_t left = 0;   // And/Or: node indices
    std::size_t right = 0;
};

/// Prenex formula; negation only on variables.
struct QbfFormula
{
    std::vector<Quantifier> quantifiers;
    std::vector<std::string> vars; // parallel to quantifiers
    std::vector<QbfNode> nodes;
    std::size_t root = 0;
};

/// `E x A y : (x | !y) & y`. `&` binds tighter than `|`.
QbfFormula parse_qbf(std::string_view text);
std::string qbf_to_string(const QbfFormula& f);

inline constexpr std::size_t kMaxQbfVars = 20;

/// Brute force over all assignments; ResourceError beyond kMaxQbfVars variables.
bool eval_qbf(const QbfFormula& f);

/// One process `P` over {0,1} whose reach objective is the output of the outermost
/// quantifier gadget; the safe variant has no targets.
ParsedProgram qbf_to_program(const QbfFormula& f, Mode mode);

} // namespace tsogame
