#pragma once

// Rewriting passes over concept and role expressions:
//   nnf                        negation normal form where existential/value
//                              restrictions are replaced by number
//                              restrictions (>=1 / <=0)
//   complement_nnf             complement of an already-normalized concept
//   push_inverses              inverse operators pushed onto atomic roles
//   unfold_value_restrictions  compositions under some/all unfolded into
//                              nested quantifiers
//   role_dnf                   boolean role combinations distributed into
//                              disjunctive normal form
//
// All passes are pure and preserve finite-model semantics; top/bottom
// simplification happens only where a rewrite rule forces it.

#include <vector>

#include "alcq/syntax.hpp"

namespace alcq {

namespace detail {

inline Concept nnf_pos(const Concept& c);
inline Concept nnf_neg(const Concept& c);

inline Concept nnf_pos(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Atom:
        case ConceptKind::Top:
        case ConceptKind::Bottom:
            return c;
        case ConceptKind::Not:
            return nnf_neg(c.child());
        case ConceptKind::And:
            return Concept::conj(nnf_pos(c.child(0)), nnf_pos(c.child(1)));
        case ConceptKind::Or:
            return Concept::disj(nnf_pos(c.child(0)), nnf_pos(c.child(1)));
        case ConceptKind::Some:
            return Concept::at_least(1, c.role(), nnf_pos(c.child()));
        case ConceptKind::All:
            return Concept::at_most(0, c.role(), nnf_neg(c.child()));
        case ConceptKind::AtLeast:
            return Concept::at_least(c.n(), c.role(), nnf_pos(c.child()));
        case ConceptKind::AtMost:
            return Concept::at_most(c.n(), c.role(), nnf_pos(c.child()));
    }
    return c;
}

inline Concept nnf_neg(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Atom:
            return Concept::negation(c);
        case ConceptKind::Top:
            return Concept::bottom();
        case ConceptKind::Bottom:
            return Concept::top();
        case ConceptKind::Not:
            return nnf_pos(c.child());
        case ConceptKind::And:
            return Concept::disj(nnf_neg(c.child(0)), nnf_neg(c.child(1)));
        case ConceptKind::Or:
            return Concept::conj(nnf_neg(c.child(0)), nnf_neg(c.child(1)));
        case ConceptKind::Some:
            // not (some R . C) == (all R . not C) == (<= 0 R . C)
            return Concept::at_most(0, c.role(), nnf_pos(c.child()));
        case ConceptKind::All:
            // not (all R . C) == (some R . not C) == (>= 1 R . not C)
            return Concept::at_least(1, c.role(), nnf_neg(c.child()));
        case ConceptKind::AtLeast:
            if (c.n() == 0) return Concept::bottom();
            return Concept::at_most(c.n() - 1, c.role(), nnf_pos(c.child()));
        case ConceptKind::AtMost:
            return Concept::at_least(c.n() + 1, c.role(), nnf_pos(c.child()));
    }
    return c;
}

}  // namespace detail

inline Concept nnf(const Concept& c) { return detail::nnf_pos(c); }

// Complement of a concept already in normal form; involutive up to the
// forced bottom simplification of (>= 0 ...).
inline Concept complement_nnf(const Concept& c) { return detail::nnf_neg(c); }

// True iff negation occurs on atoms only and no some/all constructor remains.
inline bool is_nnf(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Atom:
        case ConceptKind::Top:
        case ConceptKind::Bottom:
            return true;
        case ConceptKind::Not:
            return c.child().kind() == ConceptKind::Atom;
        case ConceptKind::Some:
        case ConceptKind::All:
            return false;
        default:
            for (const auto& k : c.children())
                if (!is_nnf(k)) return false;
            return true;
    }
}

// ---------------------------------------------------------------------------
// Role normalization
// ---------------------------------------------------------------------------

namespace detail {

inline void push_inverses_rec(const RoleExpr& r, bool inverted, std::vector<RoleExpr>& out) {
    switch (r.kind()) {
        case RoleKind::Atomic:
            out.push_back(inverted ? RoleExpr::inverse(r) : r);
            return;
        case RoleKind::Inverse:
            push_inverses_rec(r.sub(), !inverted, out);
            return;
        case RoleKind::Chain:
            if (inverted) {
                for (auto it = r.parts().rbegin(); it != r.parts().rend(); ++it)
                    push_inverses_rec(*it, true, out);
            } else {
                for (const auto& p : r.parts()) push_inverses_rec(p, false, out);
            }
            return;
        default:
            throw FragmentError("push_inverses expects a role built from atoms, inverses and chains");
    }
}

}  // namespace detail

// Rewrites (R o S)^- to inv(S) o inv(R) and inv(inv(R)) to R until every
// chain element is an atomic role or the inverse of one.
inline RoleExpr push_inverses(const RoleExpr& r) {
    std::vector<RoleExpr> elems;
    detail::push_inverses_rec(r, false, elems);
    return RoleExpr::chain(std::move(elems));
}

// (some (R1 o ... o Rk) . C) becomes (some R1 . ... (some Rk . C)); likewise
// for value restrictions. Number restrictions are left untouched.
inline Concept unfold_value_restrictions(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Atom:
        case ConceptKind::Top:
        case ConceptKind::Bottom:
            return c;
        case ConceptKind::Not:
            return Concept::negation(unfold_value_restrictions(c.child()));
        case ConceptKind::And:
            return Concept::conj(unfold_value_restrictions(c.child(0)),
                                 unfold_value_restrictions(c.child(1)));
        case ConceptKind::Or:
            return Concept::disj(unfold_value_restrictions(c.child(0)),
                                 unfold_value_restrictions(c.child(1)));
        case ConceptKind::Some:
        case ConceptKind::All: {
            Concept body = unfold_value_restrictions(c.child());
            bool is_some = c.kind() == ConceptKind::Some;
            if (c.role().kind() != RoleKind::Chain)
                return is_some ? Concept::some(c.role(), std::move(body))
                               : Concept::all(c.role(), std::move(body));
            const auto& parts = c.role().parts();
            for (auto it = parts.rbegin(); it != parts.rend(); ++it)
                body = is_some ? Concept::some(*it, std::move(body))
                               : Concept::all(*it, std::move(body));
            return body;
        }
        case ConceptKind::AtLeast:
            return Concept::at_least(c.n(), c.role(), unfold_value_restrictions(c.child()));
        case ConceptKind::AtMost:
            return Concept::at_most(c.n(), c.role(), unfold_value_restrictions(c.child()));
    }
    return c;
}

namespace detail {

inline ChainNames chain_names_of(const RoleExpr& r) {
    ChainNames names;
    auto push_atom = [&names](const RoleExpr& e) {
        if (e.kind() == RoleKind::Inverse)
            throw InverseInDnfError("inverse role inside a boolean role combination");
        if (e.kind() != RoleKind::Atomic)
            throw FragmentError("composition over a boolean role combination is not supported");
        names.push_back(e.name());
    };
    if (r.kind() == RoleKind::Chain) {
        for (const auto& p : r.parts()) push_atom(p);
    } else {
        push_atom(r);
    }
    return names;
}

inline DnfForm role_dnf_rec(const RoleExpr& r) {
    switch (r.kind()) {
        case RoleKind::Atomic:
        case RoleKind::Chain:
            return {{chain_names_of(r)}};
        case RoleKind::Inverse:
            throw InverseInDnfError("inverse role inside a boolean role combination");
        case RoleKind::RoleOr: {
            DnfForm l = role_dnf_rec(r.sub(0));
            DnfForm rr = role_dnf_rec(r.sub(1));
            l.insert(l.end(), rr.begin(), rr.end());
            return l;
        }
        case RoleKind::RoleAnd: {
            DnfForm l = role_dnf_rec(r.sub(0));
            DnfForm rr = role_dnf_rec(r.sub(1));
            DnfForm out;
            for (const auto& a : l)
                for (const auto& b : rr) {
                    DnfDisjunct dis = a;
                    dis.insert(dis.end(), b.begin(), b.end());
                    out.push_back(std::move(dis));
                }
            return out;
        }
        case RoleKind::Dnf:
            return r.dnf_form();
    }
    return {};
}

}  // namespace detail

// Distributes & over | to obtain a canonical DNF role. All embedded chains
// must consist of atomic roles and share one length.
inline RoleExpr role_dnf(const RoleExpr& r) {
    return RoleExpr::dnf(detail::role_dnf_rec(r));
}

}  // namespace alcq
