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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <memory>
#include <string>

#include "tsogame/tsogame.h"

namespace {

using Json = nlohmann::json;

struct Owned
{
    char* s = nullptr;
    ~Owned() { tsog_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

struct ProgramPtr
{
    tsog_program* p = nullptr;
    ~ProgramPtr() { tsog_program_free(p); }
};

const char* kEx1 = "values 0 1\nvars x\ninit x=0\nprocess P init q0\n"
                   "  q0 q1 wr(x,1)\n  q1 q2 rd(x,1)\n  q2 q2 skip\nobjective reach P.q2\n";

std::string corpus(const char* name)
{
    return std::string(TSOG_CORPUS_DIR) + "/" + name;
}

} // namespace

TEST_CASE("version and error slot")
{
    CHECK(std::string(tsog_version()).size() > 0);
    ProgramPtr p;
    CHECK(tsog_program_parse("values\n", &p.p) == TSOG_ERR_PARSE);
    CHECK(p.p == nullptr);
    CHECK(std::string(tsog_last_error()).find("1:") == 0);
    CHECK(tsog_program_parse(kEx1, &p.p) == TSOG_OK);
    CHECK(std::string(tsog_last_error()).empty());
}

TEST_CASE("parse, serialize, solve")
{
    ProgramPtr p;
    REQUIRE(tsog_program_parse(kEx1, &p.p) == TSOG_OK);
    CHECK(tsog_program_process_count(p.p) == 1);
    Owned text;
    REQUIRE(tsog_program_serialize(p.p, &text.s) == TSOG_OK);
    CHECK(text.str() == kEx1);

    Owned out;
    REQUIRE(tsog_solve(p.p, nullptr, nullptr, &out.s) == TSOG_OK);
    const auto j = Json::parse(out.str());
    CHECK(j["winner"] == "process");
    CHECK(j["witness"] == "P");

    Owned safe;
    REQUIRE(tsog_solve(p.p, "safe", "P.q2", &safe.s) == TSOG_OK);
    CHECK(Json::parse(safe.str())["winner"] == "update");

    Owned bad;
    CHECK(tsog_solve(p.p, "sideways", nullptr, &bad.s) == TSOG_ERR_USAGE);
    CHECK(tsog_solve(p.p, "reach", "P.nowhere", &bad.s) == TSOG_ERR_VALIDATION);
    CHECK(tsog_solve(nullptr, nullptr, nullptr, &bad.s) == TSOG_ERR_USAGE);
}

TEST_CASE("solve needs an objective from somewhere")
{
    ProgramPtr p;
    REQUIRE(tsog_program_parse("values 0\nprocess P init a\n a a skip\n", &p.p) == TSOG_OK);
    Owned out;
    CHECK(tsog_solve(p.p, nullptr, nullptr, &out.s) == TSOG_ERR_USAGE);
    CHECK(tsog_solve(p.p, "safe", nullptr, &out.s) == TSOG_OK);
}

TEST_CASE("load failures")
{
    ProgramPtr p;
    CHECK(tsog_program_load(corpus("missing.tso").c_str(), &p.p) == TSOG_ERR_PARSE);
    CHECK(tsog_program_load(corpus("ex2.tso").c_str(), &p.p) == TSOG_OK);
}

TEST_CASE("view arena and state bound")
{
    ProgramPtr p;
    REQUIRE(tsog_program_parse(kEx1, &p.p) == TSOG_OK);
    Owned json, dot, bound;
    REQUIRE(tsog_view_arena(p.p, "P", "json", &json.s) == TSOG_OK);
    const auto j = Json::parse(json.str());
    CHECK(j["vertices"].size() == 8);
    CHECK(j["initial"] == "q0|x=0|F=1|A");
    REQUIRE(tsog_view_arena(p.p, "P", "dot", &dot.s) == TSOG_OK);
    CHECK(dot.str().rfind("digraph", 0) == 0);
    CHECK(tsog_view_arena(p.p, "Q", "dot", &dot.s) == TSOG_ERR_VALIDATION);
    REQUIRE(tsog_state_bound(p.p, "P", &bound.s) == TSOG_OK);
    const auto b = Json::parse(bound.str());
    CHECK(b["bound"] == 12);
    CHECK(b["arena_vertices"] == 8);
}

TEST_CASE("simulate")
{
    ProgramPtr p;
    REQUIRE(tsog_program_parse(kEx1, &p.p) == TSOG_OK);
    const char* script = R"js([{"turn":"process","proc":"P","from":"q0","instr":"wr(x,1)","to":"q1"},
                             {"turn":"update","flushes":[]},
                             {"turn":"process","proc":"P","from":"q1","instr":"rd(x,1)","to":"q2"}])js";
    Owned out;
    REQUIRE(tsog_simulate(p.p, script, 1, 0, &out.s) == TSOG_OK);
    const auto j = Json::parse(out.str());
    CHECK(j["outcome"] == "target-visited");
    CHECK(j["target_position"] == 4);
    CHECK(j["update_fair"]["pass"] == true);

    Owned bad;
    CHECK(tsog_simulate(p.p, "[{\"turn\":\"update\",\"flushes\":[\"P\"]}]", 0, 0, &bad.s) ==
          TSOG_ERR_VALIDATION);
    CHECK(std::string(tsog_last_error()).find("ply 1") != std::string::npos);
    CHECK(tsog_simulate(p.p, "[{", 0, 0, &bad.s) == TSOG_ERR_PARSE);
}

TEST_CASE("explore")
{
    ProgramPtr p;
    REQUIRE(tsog_program_parse(kEx1, &p.p) == TSOG_OK);
    Owned sb, lb, capped;
    REQUIRE(tsog_explore(p.p, 1, "sb", 1000, &sb.s) == TSOG_OK);
    CHECK(Json::parse(sb.str())["configurations"].size() == 5);
    REQUIRE(tsog_explore(p.p, 1, "lb", 1000, &lb.s) == TSOG_OK);
    CHECK(tsog_explore(p.p, 1, "sb", 2, &capped.s) == TSOG_ERR_RESOURCE);
    CHECK(tsog_explore(p.p, 1, "xx", 2, &capped.s) == TSOG_ERR_USAGE);
}

TEST_CASE("qbf")
{
    int v = -1;
    REQUIRE(tsog_qbf_eval("E x : x", &v) == TSOG_OK);
    CHECK(v == 1);
    REQUIRE(tsog_qbf_eval("A x : x", &v) == TSOG_OK);
    CHECK(v == 0);
    CHECK(tsog_qbf_eval("E x : !(x & x)", &v) == TSOG_ERR_PARSE);
    Owned text;
    REQUIRE(tsog_qbf_to_program("E x : x", "safe", &text.s) == TSOG_OK);
    ProgramPtr p;
    REQUIRE(tsog_program_parse(text.s, &p.p) == TSOG_OK);
    Owned out;
    REQUIRE(tsog_solve(p.p, nullptr, nullptr, &out.s) == TSOG_OK);
    CHECK(Json::parse(out.str())["winner"] == "process");
}

TEST_CASE("channel systems")
{
    const char* pcs = "states s0 s1 s2\nmessages a\ninit s0\nfinal s2\n"
                      "trans s0 s1 send a\ntrans s1 s2 recv a\n";
    Owned upd, proc, script;
    REQUIRE(tsog_pcs_to_program(pcs, "update", &upd.s) == TSOG_OK);
    REQUIRE(tsog_pcs_to_program(pcs, "process", &proc.s) == TSOG_OK);
    ProgramPtr p;
    REQUIRE(tsog_program_parse(proc.s, &p.p) == TSOG_OK);
    CHECK(tsog_program_process_count(p.p) == 4);
    REQUIRE(tsog_pcs_script(pcs, "e0,e1", "update", &script.s) == TSOG_OK);
    ProgramPtr q;
    REQUIRE(tsog_program_parse(upd.s, &q.p) == TSOG_OK);
    Owned sim;
    REQUIRE(tsog_simulate(q.p, script.s, 1, 0, &sim.s) == TSOG_OK);
    CHECK(Json::parse(sim.str())["outcome"] == "target-visited");
    Owned bad;
    CHECK(tsog_pcs_script(pcs, "e1", "update", &bad.s) == TSOG_ERR_VALIDATION);
    CHECK(tsog_pcs_script(pcs, "e0", "sometimes", &bad.s) == TSOG_ERR_USAGE);
}

TEST_CASE("load-buffer demo")
{
    Owned out;
    REQUIRE(tsog_lb_demo(6, 4, &out.s) == TSOG_OK);
    const auto j = Json::parse(out.str());
    CHECK(j["divergence"] == true);
}
