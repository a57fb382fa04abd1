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
#include <stdexcept>
#include <string>
#include <vector>

namespace tsogame {

/// Numeric error classes; values double as CLI exit codes.
enum class ErrorCode : int {
    Usage = 1,
    Parse = 2,
    Validation = 3,
    ResourceCap = 4,
};

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Line 0 marks errors without a source position (e.g. unreadable files).
class ParseError : public Error
{
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : Error(ErrorCode::Parse,
                line == 0 ? msg : std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column), message_(msg) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

class ValidationError : public Error
{
public:
    explicit ValidationError(const std::string& what) : Error(ErrorCode::Validation, what) {}
};

/// A scripted or strategy-chosen move that is not legal at the given ply.
class IllegalMoveError : public ValidationError
{
public:
    IllegalMoveError(std::size_t ply, const std::string& msg)
        : ValidationError("ply " + std::to_string(ply) + ": " + msg), ply_(ply) {}
    std::size_t ply() const noexcept { return ply_; }

private:
    std::size_t ply_;
};

/// A lifted strategy was asked for a move outside the region it was computed on.
class StrategyDomainError : public ValidationError
{
public:
    using ValidationError::ValidationError;
};

class ResourceError : public Error
{
public:
    explicit ResourceError(const std::string& what) : Error(ErrorCode::ResourceCap, what) {}
};

/// Outcome of a self-check: pass/fail with a human-readable reason and witness trail.
struct Verdict
{
    bool ok = true;
    std::string detail;
    std::vector<std::string> witness;

    static Verdict pass(std::string detail = {}) { return {true, std::move(detail), {}}; }
    static Verdict fail(std::string detail, std::vector<std::string> witness = {})
    {
        return {false, std::move(detail), std::move(witness)};
    }
    explicit operator bool() const noexcept { return ok; }
};

} // namespace tsogame
