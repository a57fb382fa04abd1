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

#include <algorithm>

#include "test_support.hpp"

using namespace tsotest;

namespace {

const Program& ex1()
{
    static const Program p = load_corpus("ex1.tso").program;
    return p;
}

View view(StateId q, std::vector<ValueId> readable, bool f)
{
    return View{q, std::move(readable), f};
}

std::size_t a_edge_count(const ViewArena& va, VertexId v, const std::string& label)
{
    std::size_t n = 0;
    for (EdgeId e : va.arena.out(v))
        n += va.arena.edge(e).label == label;
    return n;
}

} // namespace

TEST_CASE("view_of")
{
    const auto p = parse_program("values 0 1 2\nvars x\ninit x=0\nprocess P init q\n q q skip\n").program;
    Configuration c{{0}, {{}}, {1}};
    CHECK(view_of(p, c) == view(0, {1}, true));
    c = {{0}, {{{0, 1}}}, {0}};
    CHECK(view_of(p, c) == view(0, {1}, false));
    c = {{0}, {{{0, 2}, {0, 1}}}, {0}};
    CHECK(view_of(p, c) == view(0, {2}, false));

    const auto two = load_corpus("sb_litmus.tso").program;
    CHECK_THROWS_AS(view_of(two, initial_configuration(two)), ValidationError);
}

TEST_CASE("vertex ids")
{
    const auto& p = ex1();
    CHECK(view_vertex_id(p, {view(0, {0}, true), Player::A}) == "q0|x=0|F=1|A");
    CHECK(view_vertex_id(p, {view(1, {1}, false), Player::B}) == "q1|x=1|F=0|B");
}

TEST_CASE("EX1 view arena")
{
    const auto& p = ex1();
    const auto va = build_view_arena(p, view(0, {0}, true));
    CHECK(va.arena.size() == 8);
    CHECK(std::is_sorted(va.vertices.begin(), va.vertices.end()));
    const auto init = va.find({view(0, {0}, true), Player::A});
    REQUIRE(init);
    CHECK(va.arena.initial() == *init);
    const auto out = va.arena.out(*init);
    REQUIRE(out.size() == 1);
    const auto& e = va.arena.edge(out[0]);
    CHECK(e.label == "wr(x,1)");
    CHECK(e.tag == 0);
    CHECK(va.vertices[e.to] == ViewVertex{view(1, {1}, false), Player::B});
    // rd(x,1) leaves both q1 copies, buffered or not.
    for (bool f : {false, true}) {
        const auto v = va.find({view(1, {1}, f), Player::A});
        REQUIRE(v);
        CHECK(a_edge_count(va, *v, "rd(x,1)") == 1);
    }
}

TEST_CASE("fence edges need F")
{
    const auto p = parse_program("values 0\nvars x\ninit x=0\nprocess P init q0\n q0 q1 mf\n").program;
    const auto yes = build_view_arena(p, view(0, {0}, true));
    CHECK(a_edge_count(yes, *yes.find({view(0, {0}, true), Player::A}), "mf") == 1);
    const auto no = build_view_arena(p, view(0, {0}, false));
    CHECK(no.arena.out(*no.find({view(0, {0}, false), Player::A})).empty());
    CHECK(no.arena.size() == 1);
}

TEST_CASE("B vertices have one stay edge, plus a flush edge when F is false")
{
    for (const auto& path : corpus_programs()) {
        const auto p = load_program(path).program;
        for (ProcId i = 0; i < p.process_count(); ++i) {
            const auto pi = project(p, i);
            const auto va = build_view_arena(pi, view_of(pi, initial_configuration(pi)));
            for (VertexId v = 0; v < va.arena.size(); ++v) {
                const auto& vv = va.vertices[v];
                if (vv.owner != Player::B)
                    continue;
                CHECK(va.arena.out(v).size() == (vv.view.fence_enabled ? 1u : 2u));
            }
            const auto nf = build_view_arena(pi, view_of(pi, initial_configuration(pi)), {false});
            for (VertexId v = 0; v < nf.arena.size(); ++v)
                if (nf.vertices[v].owner == Player::B)
                    CHECK(nf.arena.out(v).size() == 1);
        }
    }
}

TEST_CASE("view arena edges cover every concrete step")
{
    // Every instruction step between reachable configurations appears between their views.
    Rng rng(31);
    std::vector<Program> progs{ex1(), load_corpus("ex3.tso").program};
    for (int i = 0; i < 20; ++i)
        progs.push_back(random_program(rng, {}).program);
    for (const auto& p : progs) {
        const auto c0 = initial_configuration(p);
        const auto va = build_view_arena(p, view_of(p, c0));
        const auto ex = bounded_explore(p, c0, 2, 100000);
        for (const auto& s : ex.steps) {
            if (s.update)
                continue;
            const auto from = va.find({view_of(p, ex.configs[s.from]), Player::A});
            const auto to = va.find({view_of(p, ex.configs[s.to]), Player::B});
            REQUIRE(from);
            REQUIRE(to);
            bool found = false;
            for (EdgeId e : va.arena.out(*from))
                found = found || (va.arena.edge(e).to == *to && va.arena.edge(e).tag == s.move.transition);
            CHECK(found);
        }
    }
}

TEST_CASE("single-process winners")
{
    const auto a = load_corpus("ex1.tso");
    CHECK(solve_single_process(a.program, *a.objective, initial_configuration(a.program)).winner ==
          Player::A);

    const auto b = load_corpus("ex2.tso");
    const auto sb = solve_single_process(b.program, *b.objective, initial_configuration(b.program));
    CHECK(sb.winner == Player::B);
    CHECK(sb.varena.arena.size() == 6);

    const auto c = parse_program("values 0 1\nvars x\ninit x=0\nprocess P init q0\n q0 q1 rd(x,0)\n"
                                 "objective reach P.q1\n");
    const auto sc = solve_single_process(c.program, *c.objective, initial_configuration(c.program));
    CHECK(sc.winner == Player::A);
    REQUIRE(sc.solution.strategy_a[sc.initial]);
    CHECK(sc.varena.arena.edge(*sc.solution.strategy_a[sc.initial]).label == "rd(x,0)");

    auto dirty = initial_configuration(a.program);
    dirty.buffers[0].push_back({0, 1});
    CHECK_THROWS_AS(solve_single_process(a.program, *a.objective, dirty), ValidationError);
}

TEST_CASE("state space bound")
{
    auto make = [](std::size_t q, std::size_t vars, std::size_t dom) {
        std::string text = "values";
        for (std::size_t d = 0; d < dom; ++d)
            text += " v" + std::to_string(d);
        text += "\nvars";
        for (std::size_t x = 0; x < vars; ++x)
            text += " x" + std::to_string(x);
        text += "\ninit";
        for (std::size_t x = 0; x < vars; ++x)
            text += " x" + std::to_string(x) + "=v0";
        text += "\nprocess P init s0\n";
        for (std::size_t s = 0; s < q; ++s)
            text += " s" + std::to_string(s) + " s" + std::to_string((s + 1) % q) + " skip\n";
        return parse_program(text).program;
    };
    CHECK(state_space_bound(make(5, 2, 3)) == 90);
    CHECK(state_space_bound(make(1, 0, 1)) == 2);
    CHECK(state_space_bound(ex1()) == 12);
    CHECK(build_view_arena(ex1(), view(0, {0}, true)).arena.size() <= 24);
    CHECK_THROWS_AS(state_space_bound(make(2, 40, 4)), ResourceError);
}

TEST_CASE("Lemma 5 examples")
{
    const auto p = parse_program("values 0 1\nvars x\ninit x=0\nprocess P init q\n"
                                 " q q skip\n q r rd(x,1)\n q r rd(x,0)\n q q mf\n q s wr(x,0)\n").program;
    const Configuration c1{{0}, {{{0, 1}}}, {0}};
    const Configuration c2{{0}, {{{0, 1}, {0, 1}}}, {0}};
    CHECK(check_equal_view(p, c1, c2).ok);
    const Configuration d1{{0}, {{}}, {1}};
    const Configuration d2{{0}, {{{0, 1}}}, {0}};
    CHECK_THROWS_AS(check_equal_view(p, d1, d2), ValidationError);
}

TEST_CASE("Lemma 5 on random equal-view pairs")
{
    Rng rng(41);
    for (int i = 0; i < 30; ++i) {
        const auto p = random_program(rng, {}).program;
        for (int k = 0; k < 50; ++k) {
            const auto [c1, c2] = equal_view_pair(rng, p, 4);
            REQUIRE(view_of(p, c1) == view_of(p, c2));
            const auto v = check_equal_view(p, c1, c2);
            CHECK_MESSAGE(v.ok, v.detail);
        }
    }
}

TEST_CASE("bisimulation")
{
    CHECK(check_bisimulation(ex1(), initial_configuration(ex1()), 2, 1000).ok);
    // Without flush edges the view side cannot follow a concrete flush.
    const auto broken = build_view_arena(ex1(), view(0, {0}, true), {false});
    const auto v = check_bisimulation(ex1(), broken, initial_configuration(ex1()), 2, 1000);
    CHECK_FALSE(v.ok);
    CHECK_FALSE(v.witness.empty());
}

TEST_CASE("dummy update player")
{
    for (const auto& path : corpus_programs()) {
        const auto pp = load_program(path);
        for (ProcId i = 0; i < pp.program.process_count(); ++i) {
            const auto pi = project(pp.program, i);
            const auto oi = project(*pp.objective, i);
            const auto v = dummy_update_equivalence(pi, oi, initial_configuration(pi));
            CHECK_MESSAGE(v.ok, path << ": " << v.detail);
        }
    }
}
