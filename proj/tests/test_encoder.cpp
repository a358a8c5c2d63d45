#include <catch_amalgamated.hpp>

#include "alcq/alcq.hpp"

using namespace alcq;

namespace {

TilingSystem one_tile_compatible() {
    TilingSystem ts;
    ts.tiles = {"D1"};
    ts.horizontal = {{"D1", "D1"}};
    ts.vertical = {{"D1", "D1"}};
    return ts;
}

TilingSystem one_tile_no_horizontal() {
    TilingSystem ts;
    ts.tiles = {"D1"};
    ts.vertical = {{"D1", "D1"}};
    return ts;
}

std::size_t top_level_conjuncts(const Concept& c) {
    if (c.kind() != ConceptKind::And) return 1;
    return top_level_conjuncts(c.child(0)) + top_level_conjuncts(c.child(1));
}

}  // namespace

TEST_CASE("the reduction concept has exactly seven top-level conjuncts") {
    DominoEncoding enc = encode(one_tile_compatible());
    CHECK(top_level_conjuncts(enc.e_d) == 7);
    CHECK(top_level_conjuncts(enc.d_start) == 5);
    CHECK(top_level_conjuncts(enc.d_start_prime) == 7);
}

TEST_CASE("index arithmetic wraps modulo three") {
    CHECK(detail::wrap3(2 + 2) == 1);
    CHECK(detail::wrap3(2 + 1) == 0);
    CHECK(detail::wrap3(0 + 2) == 2);
}

TEST_CASE("empty matching relations produce Bottom disjuncts") {
    DominoEncoding enc = encode(one_tile_no_horizontal());
    std::set<Concept> subs = subconcepts(enc.c_d);
    CHECK(subs.count(Concept::bottom()) == 1);
    DominoEncoding full = encode(one_tile_compatible());
    CHECK(subconcepts(full.c_d).count(Concept::bottom()) == 0);
}

TEST_CASE("encoding is closed over the grid signature") {
    DominoEncoding enc = encode(one_tile_compatible());
    Signature sig = collect_signature(enc.e_d);
    CHECK(sig.roles == std::set<std::string>{"R", "U"});
    std::set<std::string> expected;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            expected.insert("C_" + std::to_string(i) + std::to_string(j));
            expected.insert("A_" + std::to_string(i) + std::to_string(j));
        }
    expected.insert("Tile_D1");
    CHECK(sig.concepts == expected);
}

TEST_CASE("the torus realization has the advertised shape") {
    TilingSystem ts = one_tile_compatible();
    Interpretation torus = make_torus_model(ts, TorusTiling::uniform("D1"));
    CHECK(torus.size() == 19);

    // each center has exactly four R-successors, each point four R-predecessors
    std::map<std::size_t, std::size_t> out_deg, in_deg;
    for (const auto& [x, y] : torus.role_ext.at("R")) {
        ++out_deg[x];
        ++in_deg[y];
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::size_t c = *torus.element("c" + std::to_string(i) + std::to_string(j));
            std::size_t a = *torus.element("a" + std::to_string(i) + std::to_string(j));
            CHECK(out_deg[c] == 4);
            CHECK(in_deg[a] == 4);
        }

    // every center reaches all nine centers via R o inv(R)
    Pairs back_and_forth = eval_role(torus, parse_role("R o inv(R)"));
    std::set<std::size_t> centers;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            centers.insert(*torus.element("c" + std::to_string(i) + std::to_string(j)));
    for (std::size_t c : centers) {
        std::set<std::size_t> reached;
        for (const auto& [x, y] : back_and_forth)
            if (x == c) reached.insert(y);
        CHECK(reached == centers);
    }

    // the start individual has no incoming R edge
    std::size_t s = *torus.element("s");
    CHECK(eval_concept(torus, parse_concept("(some inv(R) . Top)")).count(s) == 0);
}

TEST_CASE("torus membership tracks tiling compatibility") {
    TilingSystem good = one_tile_compatible();
    Interpretation torus = make_torus_model(good, TorusTiling::uniform("D1"));
    DominoEncoding enc = encode(good);
    std::size_t s = *torus.element("s");
    CHECK(eval_concept(torus, enc.e_d).count(s) == 1);

    TilingSystem bad = one_tile_no_horizontal();
    Interpretation torus_bad = make_torus_model(bad, TorusTiling::uniform("D1"));
    DominoEncoding enc_bad = encode(bad);
    std::size_t s_bad = *torus_bad.element("s");
    CHECK(eval_concept(torus_bad, enc_bad.e_d).count(s_bad) == 0);
}

TEST_CASE("two-tile systems follow the matching pairs on the torus") {
    TilingSystem ts;
    ts.tiles = {"W", "B"};
    // three-periodic stripes: the same tile repeats along y, alternates along
    // x only where allowed; with W->W and B->B forbidden horizontally a
    // 3-periodic tiling cannot exist, with all pairs allowed it can
    ts.horizontal = {{"W", "B"}, {"B", "W"}, {"W", "W"}, {"B", "B"}};
    ts.vertical = {{"W", "W"}, {"B", "B"}};
    DominoEncoding enc = encode(ts);

    TorusTiling stripes = TorusTiling::uniform("W");
    stripes.assignment[1][0] = stripes.assignment[1][1] = stripes.assignment[1][2] = "B";
    Interpretation torus = make_torus_model(ts, stripes);
    CHECK(eval_concept(torus, enc.e_d).count(*torus.element("s")) == 1);

    // breaking one vertical constraint removes membership
    TorusTiling broken = stripes;
    broken.assignment[0][1] = "B";
    Interpretation torus2 = make_torus_model(ts, broken);
    CHECK(eval_concept(torus2, enc.e_d).count(*torus2.element("s")) == 0);
}

TEST_CASE("translation preserves the torus semantics") {
    for (const TilingSystem& ts : {one_tile_compatible(), one_tile_no_horizontal()}) {
        DominoEncoding enc = encode(ts);
        Concept translated = translate_to_alcni(enc.e_d);
        Interpretation torus = make_torus_model(ts, TorusTiling::uniform("D1"));
        CHECK(eval_concept(torus, enc.e_d) == eval_concept(torus, translated));
    }
}

TEST_CASE("translation examples") {
    CHECK(translate_to_alcni(parse_concept("(some (U o R) . Top)")) ==
          parse_concept("(some U . (some R . Top))"));
    CHECK(translate_to_alcni(parse_concept("(all (inv(R) o R) . C)")) ==
          parse_concept("(all inv(R) . (all R . C))"));
    CHECK(translate_to_alcni(parse_concept("(<= 1 ((U o R) o inv(U o R)) . Top)")) ==
          parse_concept("(<= 1 (U o R o inv(R) o inv(U)) . Top)"));
}

TEST_CASE("the tableau rejects the reduction concept") {
    DominoEncoding enc = encode(one_tile_compatible());
    CHECK_THROWS_AS(is_satisfiable(enc.e_d), FragmentError);
}

TEST_CASE("tiling files") {
    TilingInput in = read_tiling(std::string(
        "# demo\ntiles: D1 D2\nh: D1 D2\nh: D2 D1\nv: D1 D1\nv: D2 D2\ncell: 1 1 D2\n"));
    CHECK(in.system.tiles == std::vector<std::string>{"D1", "D2"});
    CHECK(in.system.horizontal.size() == 2);
    REQUIRE(in.torus);
    CHECK(in.torus->assignment[1][1] == "D2");
    CHECK(in.torus->assignment[0][0] == "D1");

    CHECK_THROWS_AS(read_tiling(std::string("h: A B\n")), ValidationError);
    CHECK_THROWS_AS(read_tiling(std::string("tiles: D1\nh: D1 D9\n")), ValidationError);
    CHECK_THROWS_AS(read_tiling(std::string("tiles: D1 D1\n")), ValidationError);
    CHECK_THROWS_AS(read_tiling(std::string("tiles: D1\ncell: 5 0 D1\n")), ValidationError);
    CHECK_THROWS_AS(make_torus_model(one_tile_compatible(), TorusTiling::uniform("nope")),
                    ValidationError);
}
