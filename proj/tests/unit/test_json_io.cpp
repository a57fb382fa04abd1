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

#include <doctest.h>

#include "test_support.hpp"
#include "tsogame/json_io.hpp"

using namespace tsotest;

TEST_CASE("configuration JSON")
{
    const auto p = load_corpus("sb_litmus.tso").program;
    auto c = initial_configuration(p);
    c.buffers[0] = {{0, 1}, {1, 0}};
    const auto j = config_to_json(p, c);
    CHECK(j.dump() == R"({"state":{"P1":"a0","P2":"b0"},"buffers":{"P1":[["x","1"],["y","0"]],"P2":[]},"memory":{"x":"0","y":"0"}})");
    CHECK(config_from_json(p, j) == c);
    auto bad = j;
    bad["memory"]["x"] = "7";
    CHECK_THROWS_AS(config_from_json(p, bad), ValidationError);
}

TEST_CASE("load-buffer configuration JSON marks own messages")
{
    const auto p = divergence_program().program;
    auto c = lb_initial(p);
    c.buffers[2] = {{0, 1, false}, {0, 2, true}};
    const auto j = lb_config_to_json(p, c);
    CHECK(j["buffers"]["Proc3"].dump() == R"([["x","1"],["x","2","own"]])");
}

TEST_CASE("arena JSON")
{
    Arena a;
    const auto x = a.add_vertex(Player::A, "a");
    const auto y = a.add_vertex(Player::B, "b");
    a.add_edge(x, y, "go");
    const auto j = arena_to_json(a, {false, true});
    CHECK(j["vertices"].size() == 2);
    CHECK(j["vertices"][1]["id"] == "b");
    CHECK(j["vertices"][1]["owner"] == "B");
    CHECK(j["vertices"][1]["special"] == true);
    CHECK(j["edges"][0]["from"] == "a");
    CHECK(j["edges"][0]["to"] == "b");
    CHECK(j["edges"][0]["label"] == "go");
}

TEST_CASE("play scripts round trip")
{
    const auto pp = load_corpus("ex1.tso");
    const auto& p = pp.program;
    const auto j = Json::parse(read_file(corpus_dir() + "/ex1_play.json"));
    const auto s = script_from_json(p, j);
    REQUIRE(s.size() == 4);
    CHECK(s[0].turn == Turn::Process);
    CHECK(s[3].flushes == std::vector<ProcId>{0});
    CHECK(script_to_json(p, s) == j);
    const auto r = simulate_script(p, nullptr, initial_configuration(p), s, 100);
    CHECK(script_of_play(r.play).size() == s.size());
    CHECK(script_to_json(p, script_of_play(r.play)) == j);
}

TEST_CASE("malformed scripts name the ply")
{
    const auto p = load_corpus("ex1.tso").program;
    auto expect_ply = [&](const char* text, std::size_t ply) {
        try {
            script_from_json(p, Json::parse(text));
            FAIL("expected an error for " << text);
        } catch (const IllegalMoveError& e) {
            CHECK(e.ply() == ply);
        }
    };
    expect_ply(R"js([{"turn":"process","proc":"Q","from":"q0","instr":"wr(x,1)","to":"q1"}])js", 1);
    expect_ply(R"js([{"turn":"process","proc":"P","from":"q0","instr":"wr(x,1)","to":"q1"},
                   {"turn":"update","flushes":["Z"]}])js", 2);
    expect_ply(R"js([{"turn":"process","proc":"P","from":"q0","instr":"rd(x,1)","to":"q1"}])js", 1);
    expect_ply(R"js([{"turn":"sideways"}])js", 1);
}

TEST_CASE("decision JSON")
{
    const auto pp = load_corpus("ex1.tso");
    const auto j = decision_to_json(pp.program, decide(pp.program, *pp.objective));
    CHECK(j["winner"] == "process");
    CHECK(j["witness"] == "P");
    CHECK(j["strategy"]["q0|x=0|F=1|A"]["instr"] == "wr(x,1)");
    CHECK(j["strategy"]["q0|x=0|F=1|A"]["to"] == "q1|x=1|F=0|B");
    CHECK(j["projections"]["P"] == "process");
    CHECK(j["warnings"].empty());

    const auto q = load_corpus("ex2_dup.tso");
    const auto k = decision_to_json(q.program, decide(q.program, *q.objective));
    CHECK(k["winner"] == "update");
    CHECK(k["witness"].is_null());
}

TEST_CASE("play result JSON")
{
    const auto pp = load_corpus("ex2.tso");
    const auto& p = pp.program;
    const auto r = simulate_script(p, &*pp.objective, initial_configuration(p),
                                   {{Turn::Process, Move{0, 0}, {}}, {Turn::Update, {}, {}}}, 10);
    const auto j = play_result_to_json(p, r);
    CHECK(j["outcome"] == "process-deadlock");
    CHECK(j["deadlock_buffers_empty"] == false);
    CHECK(j["target_position"].is_null());
    CHECK(j["moves"].size() == 2);
    CHECK(j["configurations"].size() == 3);
    CHECK(verdict_to_json(Verdict::fail("bad", {"a", "b"})).dump() ==
          R"({"pass":false,"detail":"bad","witness":["a","b"]})");
}

TEST_CASE("exploration JSON lists every configuration once")
{
    const auto p = load_corpus("ex1.tso").program;
    const auto ex = bounded_explore(p, initial_configuration(p), 1, 100);
    const auto j = exploration_to_json(p, ex);
    CHECK(j["configurations"].size() == 5);
    CHECK(j["transitions"].size() == ex.steps.size());
    CHECK(j["configurations"][0]["frontier"] == false);
    const auto l = lb_exploration_to_json(divergence_program().program,
                                          lb_bounded_explore(divergence_program().program,
                                                             lb_initial(divergence_program().program), 1, 10000));
    CHECK(l["configurations"].size() > 1);
    CHECK(l["transitions"].size() > 1);
}
