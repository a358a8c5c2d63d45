#include <catch_amalgamated.hpp>

#include "alcq/interp.hpp"
#include "alcq/normalize.hpp"
#include "generators.hpp"

using namespace alcq;

namespace {
Concept P(const std::string& s) { return parse_concept(s); }
RoleExpr R(const std::string& s) { return parse_role(s); }
}  // namespace

TEST_CASE("nnf rewrites negated restrictions") {
    CHECK(nnf(P("not (<= 2 R . C)")) == P("(>= 3 R . C)"));
    CHECK(nnf(P("not (>= 0 R . C)")) == Concept::bottom());
    CHECK(nnf(P("(all R . A)")) == P("(<= 0 R . not A)"));
    CHECK(nnf(P("(some R . A)")) == P("(>= 1 R . A)"));
    CHECK(nnf(P("not (some R . A)")) == P("(<= 0 R . A)"));
    CHECK(nnf(P("not (all R . A)")) == P("(>= 1 R . not A)"));
    CHECK(nnf(P("not not A")) == P("A"));
    CHECK(nnf(P("not (A and B)")) == P("(not A or not B)"));
    CHECK(nnf(P("not (A or B)")) == P("(not A and not B)"));
    CHECK(nnf(P("not Top")) == Concept::bottom());
    CHECK(nnf(P("not Bottom")) == Concept::top());
    // chains are opaque to the rewriting
    CHECK(nnf(P("(all (R o S) . A)")) == P("(<= 0 (R o S) . not A)"));
}

TEST_CASE("nnf output shape and idempotence") {
    std::mt19937 rng(7);
    testgen::GenOptions g;
    for (int i = 0; i < 200; ++i) {
        Concept c = testgen::random_concept(rng, g);
        Concept n = nnf(c);
        CAPTURE(print_concept(c), print_concept(n));
        CHECK(is_nnf(n));
        CHECK(nnf(n) == n);
        CHECK(measures(n).depth == measures(c).depth);
    }
}

TEST_CASE("nnf preserves finite-model semantics") {
    std::mt19937 rng(99);
    testgen::GenOptions g;
    for (int i = 0; i < 150; ++i) {
        Concept c = testgen::random_concept(rng, g);
        Signature sig = collect_signature(c);
        Concept n = nnf(c);
        for (int k = 0; k < 20; ++k) {
            std::size_t d = 1 + testgen::pick(rng, 4);
            Interpretation interp = testgen::random_interp(rng, sig, d);
            CAPTURE(print_concept(c), d);
            CHECK(eval_concept(interp, c) == eval_concept(interp, n));
        }
    }
}

TEST_CASE("complement of normalized concepts") {
    CHECK(complement_nnf(P("(>= 2 R . A)")) == P("(<= 1 R . A)"));
    CHECK(complement_nnf(P("A")) == P("not A"));
    CHECK(complement_nnf(P("(A and B)")) == P("(not A or not B)"));
    CHECK(complement_nnf(P("(>= 0 R . A)")) == Concept::bottom());
}

TEST_CASE("complement is an involution away from vacuous at-leasts") {
    std::mt19937 rng(13);
    testgen::GenOptions g;
    auto has_zero_at_least = [](auto&& self, const Concept& c) -> bool {
        if (c.kind() == ConceptKind::AtLeast && c.n() == 0) return true;
        for (const auto& k : c.children())
            if (self(self, k)) return true;
        return false;
    };
    int checked = 0;
    for (int i = 0; i < 300 && checked < 150; ++i) {
        Concept n = nnf(testgen::random_concept(rng, g));
        if (has_zero_at_least(has_zero_at_least, n)) continue;
        ++checked;
        CAPTURE(print_concept(n));
        CHECK(complement_nnf(complement_nnf(n)) == n);
    }
    CHECK(checked >= 100);
}

TEST_CASE("push_inverses flattens to signed atoms") {
    CHECK(push_inverses(R("inv(R o S)")) == R("inv(S) o inv(R)"));
    CHECK(push_inverses(R("inv(inv(R))")) == R("R"));
    CHECK(push_inverses(R("inv(R o inv(S) o T)")) == R("inv(T) o S o inv(R)"));
    CHECK(push_inverses(R("R")) == R("R"));
}

TEST_CASE("push_inverses keeps the number of atomic occurrences") {
    std::mt19937 rng(5);
    testgen::GenOptions g;
    g.allow_inverse = true;
    g.max_chain = 3;
    auto count_atoms = [](auto&& self, const RoleExpr& r) -> std::size_t {
        switch (r.kind()) {
            case RoleKind::Atomic: return 1;
            case RoleKind::Inverse: return self(self, r.sub());
            case RoleKind::Chain: {
                std::size_t s = 0;
                for (const auto& p : r.parts()) s += self(self, p);
                return s;
            }
            default: return 0;
        }
    };
    for (int i = 0; i < 200; ++i) {
        RoleExpr r = testgen::random_chain(rng, g, 1 + testgen::pick(rng, 3));
        if (testgen::coin(rng, 0.5)) r = RoleExpr::inverse(r);
        RoleExpr p = push_inverses(r);
        CAPTURE(print_role(r), print_role(p));
        CHECK(count_atoms(count_atoms, p) == count_atoms(count_atoms, r));
        if (p.kind() == RoleKind::Chain) {
            for (const auto& e : p.parts()) {
                bool signed_atom = e.kind() == RoleKind::Atomic ||
                                   (e.kind() == RoleKind::Inverse &&
                                    e.sub().kind() == RoleKind::Atomic);
                CHECK(signed_atom);
            }
        }
        // semantics preserved on random interpretations
        Signature sig;
        for (const auto& name : g.roles) sig.roles.insert(name);
        for (int k = 0; k < 10; ++k) {
            Interpretation interp = testgen::random_interp(rng, sig, 1 + testgen::pick(rng, 3));
            CHECK(eval_role(interp, r) == eval_role(interp, p));
        }
    }
}

TEST_CASE("unfold_value_restrictions removes compositions under quantifiers") {
    CHECK(unfold_value_restrictions(P("(some (R o S) . C)")) == P("(some R . (some S . C))"));
    CHECK(unfold_value_restrictions(P("(all (R o S) . C)")) == P("(all R . (all S . C))"));
    CHECK(unfold_value_restrictions(P("(some R . C)")) == P("(some R . C)"));
    CHECK(unfold_value_restrictions(P("(all (inv(R) o S) . (some (T o T) . A))")) ==
          P("(all inv(R) . (all S . (some T . (some T . A))))"));
    // number restrictions keep their chains
    CHECK(unfold_value_restrictions(P("(>= 2 (R o S) . C)")) == P("(>= 2 (R o S) . C)"));
}

TEST_CASE("unfolding preserves semantics") {
    std::mt19937 rng(21);
    testgen::GenOptions g;
    g.allow_inverse = true;
    g.max_chain = 3;
    for (int i = 0; i < 100; ++i) {
        Concept c = testgen::random_concept(rng, g);
        Concept u = unfold_value_restrictions(c);
        Signature sig = collect_signature(c);
        for (int k = 0; k < 10; ++k) {
            Interpretation interp = testgen::random_interp(rng, sig, 1 + testgen::pick(rng, 3));
            CAPTURE(print_concept(c));
            CHECK(eval_concept(interp, c) == eval_concept(interp, u));
        }
    }
}

TEST_CASE("role_dnf distributes boolean combinations") {
    CHECK(role_dnf(R("(R1 | R2) & S")) == RoleExpr::dnf({{{"R1"}, {"S"}}, {{"R2"}, {"S"}}}));
    CHECK(role_dnf(R("R")) == RoleExpr::dnf({{{"R"}}}));
    CHECK_THROWS_AS(role_dnf(R("(R o S) | T")), MixedLengthError);
    CHECK_THROWS_AS(role_dnf(R("inv(R) & S")), InverseInDnfError);
    CHECK(role_dnf(R("R o S & T o T | U o U")) ==
          RoleExpr::dnf({{{"R", "S"}, {"T", "T"}}, {{"U", "U"}}}));
}

TEST_CASE("role_dnf preserves semantics") {
    std::mt19937 rng(31);
    testgen::GenOptions g;
    g.allow_role_bool = true;
    for (int i = 0; i < 150; ++i) {
        RoleExpr r = testgen::random_role(rng, g);
        RoleExpr d = role_dnf(r);
        Signature sig;
        for (const auto& name : g.roles) sig.roles.insert(name);
        for (int k = 0; k < 10; ++k) {
            Interpretation interp = testgen::random_interp(rng, sig, 1 + testgen::pick(rng, 3));
            CAPTURE(print_role(r), print_role(d));
            CHECK(eval_role(interp, r) == eval_role(interp, d));
        }
    }
}
