#include <catch_amalgamated.hpp>

#include "alcq/interp.hpp"
#include "generators.hpp"

using namespace alcq;

namespace {

Concept P(const std::string& s) { return parse_concept(s); }
RoleExpr R(const std::string& s) { return parse_role(s); }

Interpretation three_elems() {
    Interpretation i;
    i.add_element("a");
    i.add_element("b");
    i.add_element("c");
    return i;
}

}  // namespace

TEST_CASE("role evaluation") {
    Interpretation i = three_elems();
    i.role_ext["R"] = {{0, 1}};
    i.role_ext["S"] = {{1, 2}};
    CHECK(eval_role(i, R("R o S")) == Pairs{{0, 2}});
    CHECK(eval_role(i, R("inv(R)")) == Pairs{{1, 0}});

    Interpretation j = three_elems();
    j.role_ext["R"] = {{0, 1}};
    j.role_ext["S"] = {{0, 1}, {0, 2}};
    CHECK(eval_role(j, R("R & S")) == Pairs{{0, 1}});
    CHECK(eval_role(j, RoleExpr::dnf({{{"R"}, {"S"}}})) == Pairs{{0, 1}});
    CHECK(eval_role(j, R("missing")).empty());
}

TEST_CASE("concept evaluation") {
    Interpretation i;
    i.add_element("a");
    i.add_element("b");
    i.role_ext["R"] = {{0, 1}};
    i.concept_ext["A"] = {1};
    CHECK(eval_concept(i, P("(some R . A)")) == Elems{0});

    Interpretation j;
    j.add_element("a");
    CHECK(eval_concept(j, P("(<= 0 R . Top)")) == Elems{0});

    Interpretation k = three_elems();
    k.role_ext["R"] = {{0, 1}, {0, 2}};
    k.concept_ext["A"] = {1, 2};
    CHECK(eval_concept(k, P("(>= 2 R . A)")) == Elems{0});
    CHECK(eval_concept(k, P("(all R . A)")) == Elems{0, 1, 2});
    CHECK(eval_concept(k, P("not A")) == Elems{0});
    CHECK(eval_concept(k, P("(missing or A)")) == Elems{1, 2});
}

TEST_CASE("abox model checking") {
    ABox a{Individual("x")};
    a.add_role("R", "x", "y");
    a.add_concept("y", P("C"));

    Interpretation i;
    i.add_element("da");
    i.add_element("db");
    i.role_ext["R"] = {{0, 1}};
    i.concept_ext["C"] = {1};
    i.assignment = {{"x", 0}, {"y", 1}};
    CHECK(check_abox_model(i, a));

    i.concept_ext["C"] = {};
    CHECK_FALSE(check_abox_model(i, a));

    ABox b{Individual("x")};
    b.add_role("R", "x", "y");
    b.add_inequality("x", "y");
    Interpretation j;
    j.add_element("d");
    j.role_ext["R"] = {{0, 0}};
    j.assignment = {{"x", 0}, {"y", 0}};
    CHECK_FALSE(check_abox_model(j, b));  // x and y asserted distinct

    ABox empty{Individual("x")};
    Interpretation k;
    k.add_element("d");
    k.assignment = {{"x", 0}};
    CHECK(check_abox_model(k, empty));

    Interpretation missing;
    missing.add_element("d");
    CHECK_THROWS_AS(check_abox_model(missing, empty), ValidationError);
}

TEST_CASE("model enumeration examples") {
    CHECK_FALSE(enumerate_model(P("(A and not A)"), 3));
    CHECK_FALSE(enumerate_model(P("(>= 2 R . Top)"), 1));

    auto witness = enumerate_model(P("(>= 2 R . Top)"), 3);
    REQUIRE(witness);
    CHECK(witness->size() == 2);
    CHECK(eval_concept(*witness, P("(>= 2 R . Top)")).count(0) == 1);

    auto atom = enumerate_model(P("A"), 1);
    REQUIRE(atom);
    CHECK(atom->size() == 1);
    CHECK(atom->concept_ext["A"] == Elems{0});
}

TEST_CASE("oracle is monotone in the bound and witnesses re-check") {
    std::mt19937 rng(77);
    testgen::GenOptions g;
    g.atoms = {"A"};
    g.roles = {"R"};
    g.max_depth = 2;
    for (int i = 0; i < 60; ++i) {
        Concept c = testgen::random_concept(rng, g);
        OracleOptions opts;
        opts.step_budget = 200'000;
        std::optional<Interpretation> w3, w4;
        try {
            w3 = enumerate_model(c, 3, opts);
            w4 = enumerate_model(c, 4, opts);
        } catch (const ResourceLimitError&) {
            continue;
        }
        CAPTURE(print_concept(c));
        if (w3) {
            REQUIRE(w4);
            CHECK(w3->size() == w4->size());  // same witness found again
            CHECK(!eval_concept(*w3, c).empty());
        }
    }
}

TEST_CASE("oracle respects its step budget") {
    OracleOptions tiny;
    tiny.step_budget = 5;
    CHECK_THROWS_AS(enumerate_model(P("((>= 2 (R o S) . A) and (<= 1 R . B))"), 4, tiny),
                    ResourceLimitError);
    CHECK_THROWS_AS(enumerate_model(P("A"), 0), ValidationError);
}

TEST_CASE("three-valued evaluation brackets the exact one") {
    std::mt19937 rng(555);
    testgen::GenOptions g;
    g.allow_role_bool = true;
    for (int iter = 0; iter < 150; ++iter) {
        Concept c = testgen::random_concept(rng, g);
        Signature sig = collect_signature(c);
        std::size_t d = 1 + testgen::pick(rng, 3);

        detail::PartialInterp p;
        p.d = d;
        p.full = (1ull << d) - 1;
        p.cnames.assign(sig.concepts.begin(), sig.concepts.end());
        p.cmask.assign(p.cnames.size(), 0);
        p.cknown.assign(p.cnames.size(), 0);
        p.rnames.assign(sig.roles.begin(), sig.roles.end());
        p.rrows.assign(p.rnames.size(), std::vector<std::uint32_t>(d, 0));
        p.rknown.assign(p.rnames.size(), std::vector<char>(d, 0));

        // commit a random subset of the slots
        Interpretation full = testgen::random_interp(rng, sig, d);
        for (std::size_t i = 0; i < p.cnames.size(); ++i) {
            std::uint64_t mask = 0;
            for (std::size_t e : full.concept_ext[p.cnames[i]]) mask |= 1ull << e;
            if (testgen::coin(rng, 0.6)) {
                p.cmask[i] = mask;
                p.cknown[i] = 1;
            }
        }
        for (std::size_t i = 0; i < p.rnames.size(); ++i)
            for (std::size_t row = 0; row < d; ++row)
                if (testgen::coin(rng, 0.6)) {
                    std::uint32_t bits = 0;
                    for (const auto& [x, y] : full.role_ext[p.rnames[i]])
                        if (x == row) bits |= 1u << y;
                    p.rrows[i][row] = bits;
                    p.rknown[i][row] = 1;
                }

        detail::Bounds b = detail::eval3_concept(p, c);
        std::uint64_t exact = 0;
        for (std::size_t e : eval_concept(full, c)) exact |= 1ull << e;
        CAPTURE(print_concept(c), d);
        CHECK((b.lo & ~exact) == 0);   // lower bound is definite
        CHECK((exact & ~b.hi) == 0);   // upper bound covers the exact set
    }
}

TEST_CASE("interpretation files round-trip") {
    Interpretation i;
    i.add_element("s");
    i.add_element("t");
    i.concept_ext["A"] = {0};
    i.role_ext["R"] = {{0, 1}, {1, 1}};
    i.assignment = {{"x0", 0}, {"v1", 1}};
    std::string text = write_interpretation(i);
    Interpretation back = read_interpretation(text);
    CHECK(back.domain == i.domain);
    CHECK(back.concept_ext == i.concept_ext);
    CHECK(back.role_ext == i.role_ext);
    CHECK(back.assignment == i.assignment);
}

TEST_CASE("interpretation reader rejects malformed input") {
    CHECK_THROWS_AS(read_interpretation(std::string("concept A: x\n")), ValidationError);
    CHECK_THROWS_AS(read_interpretation(std::string("individual a\nrole R: a\n")), ValidationError);
    CHECK_THROWS_AS(read_interpretation(std::string("bogus line\n")), ValidationError);
    CHECK_THROWS_AS(read_interpretation(std::string("")), ValidationError);
    Interpretation ok = read_interpretation(std::string(
        "# comment\nindividual a\nindividual b\nconcept A: a b\nrole R: a b ; b a\nassign x = a\n"));
    CHECK(ok.size() == 2);
    CHECK(ok.role_ext["R"].size() == 2);
    CHECK(ok.assignment.at("x") == 0);
}
