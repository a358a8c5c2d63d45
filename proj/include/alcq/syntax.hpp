#pragma once

// Concept and role abstract syntax, the text grammar (parser + printer),
// and the structural measures used by the satisfiability engine.
//
// Grammar (UTF-8 text):
//   concept := "Top" | "Bottom" | IDENT | "not" concept
//            | "(" concept ("and"|"or") concept ")"
//            | "(" ("some"|"all") role "." concept ")"
//            | "(" (">="|"<=") NAT role "." concept ")"
//   role    := IDENT | "inv(" role ")" | role "o" role | "(" role ")"
//            | role "&" role | role "|" role
// Precedence: "o" > "&" > "|". IDENT matches [A-Za-z_][A-Za-z0-9_]*.
//
// All types are immutable values (cheap to copy, safe to share across
// threads). Cardinalities are arbitrary-precision non-negative integers.

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "alcq/errors.hpp"

namespace alcq {

using Nat = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Role expressions
// ---------------------------------------------------------------------------

enum class RoleKind { Atomic, Inverse, Chain, RoleAnd, RoleOr, Dnf };

// One composition chain of atomic role names (length >= 1).
using ChainNames = std::vector<std::string>;
// A DNF disjunct: a set of conjunct chains, kept sorted and deduplicated.
using DnfDisjunct = std::vector<ChainNames>;
// Full DNF: disjuncts sorted and deduplicated; every embedded chain has one
// common length.
using DnfForm = std::vector<DnfDisjunct>;

class RoleExpr {
public:
    static RoleExpr atomic(std::string name) {
        auto n = std::make_shared<Node>();
        n->kind = RoleKind::Atomic;
        n->name = std::move(name);
        return RoleExpr(std::move(n));
    }

    static RoleExpr inverse(RoleExpr r) {
        auto n = std::make_shared<Node>();
        n->kind = RoleKind::Inverse;
        n->parts.push_back(std::move(r));
        return RoleExpr(std::move(n));
    }

    // Composition is associative: nested chains are flattened into one n-ary
    // chain and a singleton collapses to its only element.
    static RoleExpr chain(std::vector<RoleExpr> parts) {
        if (parts.empty()) throw ValidationError("role chain must have length >= 1");
        std::vector<RoleExpr> flat;
        for (auto& p : parts) {
            if (p.kind() == RoleKind::Chain) {
                for (const auto& q : p.parts()) flat.push_back(q);
            } else {
                flat.push_back(std::move(p));
            }
        }
        if (flat.size() == 1) return flat.front();
        auto n = std::make_shared<Node>();
        n->kind = RoleKind::Chain;
        n->parts = std::move(flat);
        return RoleExpr(std::move(n));
    }

    static RoleExpr role_and(RoleExpr l, RoleExpr r) {
        auto n = std::make_shared<Node>();
        n->kind = RoleKind::RoleAnd;
        n->parts.push_back(std::move(l));
        n->parts.push_back(std::move(r));
        return RoleExpr(std::move(n));
    }

    static RoleExpr role_or(RoleExpr l, RoleExpr r) {
        auto n = std::make_shared<Node>();
        n->kind = RoleKind::RoleOr;
        n->parts.push_back(std::move(l));
        n->parts.push_back(std::move(r));
        return RoleExpr(std::move(n));
    }

    // Canonicalizes: conjuncts sorted and deduplicated inside each disjunct,
    // disjuncts sorted and deduplicated. Requires all chains to share one
    // length and rejects empty disjuncts/forms.
    static RoleExpr dnf(DnfForm form) {
        if (form.empty()) throw ValidationError("DNF role needs at least one disjunct");
        std::size_t m = 0;
        for (auto& dis : form) {
            if (dis.empty()) throw ValidationError("DNF disjunct needs at least one conjunct");
            for (auto& ch : dis) {
                if (ch.empty()) throw ValidationError("empty chain in DNF role");
                if (m == 0) m = ch.size();
                if (ch.size() != m)
                    throw MixedLengthError("role chains of different lengths in DNF role");
            }
            std::sort(dis.begin(), dis.end());
            dis.erase(std::unique(dis.begin(), dis.end()), dis.end());
        }
        std::sort(form.begin(), form.end());
        form.erase(std::unique(form.begin(), form.end()), form.end());
        auto n = std::make_shared<Node>();
        n->kind = RoleKind::Dnf;
        n->dnf = std::move(form);
        return RoleExpr(std::move(n));
    }

    RoleKind kind() const { return node_->kind; }
    const std::string& name() const { return node_->name; }
    const std::vector<RoleExpr>& parts() const { return node_->parts; }
    const RoleExpr& sub(std::size_t i = 0) const { return node_->parts.at(i); }
    const DnfForm& dnf_form() const { return node_->dnf; }

    // Number of role edges a single traversal of this expression crosses.
    std::size_t length() const {
        switch (kind()) {
            case RoleKind::Atomic: return 1;
            case RoleKind::Inverse: return sub().length();
            case RoleKind::Chain: {
                std::size_t s = 0;
                for (const auto& p : parts()) s += p.length();
                return s;
            }
            case RoleKind::RoleAnd:
            case RoleKind::RoleOr:
                return std::max(sub(0).length(), sub(1).length());
            case RoleKind::Dnf: return node_->dnf.front().front().size();
        }
        return 0;
    }

    friend int cmp(const RoleExpr& a, const RoleExpr& b) {
        if (a.node_ == b.node_) return 0;
        if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
        switch (a.kind()) {
            case RoleKind::Atomic:
                return a.name().compare(b.name());
            case RoleKind::Dnf:
                if (a.dnf_form() != b.dnf_form()) return a.dnf_form() < b.dnf_form() ? -1 : 1;
                return 0;
            default: {
                if (a.parts().size() != b.parts().size())
                    return a.parts().size() < b.parts().size() ? -1 : 1;
                for (std::size_t i = 0; i < a.parts().size(); ++i) {
                    int c = cmp(a.parts()[i], b.parts()[i]);
                    if (c != 0) return c;
                }
                return 0;
            }
        }
    }

    friend bool operator==(const RoleExpr& a, const RoleExpr& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const RoleExpr& a, const RoleExpr& b) { return cmp(a, b) != 0; }
    friend bool operator<(const RoleExpr& a, const RoleExpr& b) { return cmp(a, b) < 0; }

private:
    struct Node {
        RoleKind kind;
        std::string name;              // Atomic
        std::vector<RoleExpr> parts;   // Inverse: 1, Chain: >= 2, RoleAnd/RoleOr: 2
        DnfForm dnf;                   // Dnf
    };

    explicit RoleExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Concepts
// ---------------------------------------------------------------------------

enum class ConceptKind { Atom, Top, Bottom, Not, And, Or, Some, All, AtLeast, AtMost };

class Concept {
public:
    static Concept atom(std::string name) {
        auto n = std::make_shared<Node>();
        n->kind = ConceptKind::Atom;
        n->name = std::move(name);
        return Concept(std::move(n));
    }
    static Concept top() {
        static const Concept t{make_leaf(ConceptKind::Top)};
        return t;
    }
    static Concept bottom() {
        static const Concept b{make_leaf(ConceptKind::Bottom)};
        return b;
    }
    static Concept negation(Concept c) {
        auto n = std::make_shared<Node>();
        n->kind = ConceptKind::Not;
        n->kids.push_back(std::move(c));
        return Concept(std::move(n));
    }
    static Concept conj(Concept a, Concept b) { return binary(ConceptKind::And, std::move(a), std::move(b)); }
    static Concept disj(Concept a, Concept b) { return binary(ConceptKind::Or, std::move(a), std::move(b)); }
    static Concept some(RoleExpr r, Concept c) { return restriction(ConceptKind::Some, Nat(0), std::move(r), std::move(c)); }
    static Concept all(RoleExpr r, Concept c) { return restriction(ConceptKind::All, Nat(0), std::move(r), std::move(c)); }
    static Concept at_least(Nat n, RoleExpr r, Concept c) {
        if (n < 0) throw ValidationError("negative cardinality in at-least restriction");
        return restriction(ConceptKind::AtLeast, std::move(n), std::move(r), std::move(c));
    }
    static Concept at_most(Nat n, RoleExpr r, Concept c) {
        if (n < 0) throw ValidationError("negative cardinality in at-most restriction");
        return restriction(ConceptKind::AtMost, std::move(n), std::move(r), std::move(c));
    }

    ConceptKind kind() const { return node_->kind; }
    const std::string& name() const { return node_->name; }
    const Nat& n() const { return node_->n; }
    const RoleExpr& role() const {
        if (!node_->role) throw ValidationError("concept constructor has no role");
        return *node_->role;
    }
    bool has_role() const { return node_->role.has_value(); }
    const Concept& child(std::size_t i = 0) const { return node_->kids.at(i); }
    const std::vector<Concept>& children() const { return node_->kids; }

    bool is_restriction() const {
        return kind() == ConceptKind::AtLeast || kind() == ConceptKind::AtMost;
    }
    bool is_quantifier() const {
        return kind() == ConceptKind::Some || kind() == ConceptKind::All;
    }

    friend int cmp(const Concept& a, const Concept& b) {
        if (a.node_ == b.node_) return 0;
        if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
        switch (a.kind()) {
            case ConceptKind::Top:
            case ConceptKind::Bottom:
                return 0;
            case ConceptKind::Atom:
                return a.name().compare(b.name());
            default: break;
        }
        if (a.is_restriction()) {
            int c = a.n().compare(b.n());
            if (c != 0) return c;
        }
        if (a.has_role()) {
            int c = cmp(a.role(), b.role());
            if (c != 0) return c;
        }
        if (a.children().size() != b.children().size())
            return a.children().size() < b.children().size() ? -1 : 1;
        for (std::size_t i = 0; i < a.children().size(); ++i) {
            int c = cmp(a.children()[i], b.children()[i]);
            if (c != 0) return c;
        }
        return 0;
    }

    friend bool operator==(const Concept& a, const Concept& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Concept& a, const Concept& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Concept& a, const Concept& b) { return cmp(a, b) < 0; }

private:
    struct Node {
        ConceptKind kind;
        std::string name;               // Atom
        Nat n;                          // AtLeast/AtMost
        std::optional<RoleExpr> role;   // Some/All/AtLeast/AtMost
        std::vector<Concept> kids;      // Not: 1, And/Or: 2, quantifiers/restrictions: 1
    };

    static std::shared_ptr<const Node> make_leaf(ConceptKind k) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        return n;
    }
    static Concept binary(ConceptKind k, Concept a, Concept b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->kids.push_back(std::move(a));
        n->kids.push_back(std::move(b));
        return Concept(std::move(n));
    }
    static Concept restriction(ConceptKind k, Nat num, RoleExpr r, Concept c) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->n = std::move(num);
        n->role = std::move(r);
        n->kids.push_back(std::move(c));
        return Concept(std::move(n));
    }

    explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace detail {

// DNF roles have no dedicated literal syntax; they print as the equivalent
// left-folded &/| combination and reparse to that surface tree.
inline RoleExpr dnf_to_surface(const DnfForm& form) {
    auto chain_of = [](const ChainNames& names) {
        std::vector<RoleExpr> parts;
        for (const auto& n : names) parts.push_back(RoleExpr::atomic(n));
        return RoleExpr::chain(std::move(parts));
    };
    std::optional<RoleExpr> out;
    for (const auto& dis : form) {
        std::optional<RoleExpr> conj;
        for (const auto& ch : dis) {
            RoleExpr c = chain_of(ch);
            conj = conj ? RoleExpr::role_and(*conj, c) : c;
        }
        out = out ? RoleExpr::role_or(*out, *conj) : *conj;
    }
    return *out;
}

inline void print_role_rec(std::ostream& os, const RoleExpr& r, bool wrap_chain) {
    switch (r.kind()) {
        case RoleKind::Atomic:
            os << r.name();
            return;
        case RoleKind::Inverse:
            os << "inv(";
            print_role_rec(os, r.sub(), false);
            os << ")";
            return;
        case RoleKind::Chain: {
            if (wrap_chain) os << "(";
            bool first = true;
            for (const auto& p : r.parts()) {
                if (!first) os << " o ";
                first = false;
                // chain elements other than atoms / inverses need their own parens
                print_role_rec(os, p, p.kind() != RoleKind::Atomic && p.kind() != RoleKind::Inverse);
            }
            if (wrap_chain) os << ")";
            return;
        }
        case RoleKind::RoleAnd:
        case RoleKind::RoleOr:
            os << "(";
            print_role_rec(os, r.sub(0), false);
            os << (r.kind() == RoleKind::RoleAnd ? " & " : " | ");
            print_role_rec(os, r.sub(1), false);
            os << ")";
            return;
        case RoleKind::Dnf:
            print_role_rec(os, dnf_to_surface(r.dnf_form()), wrap_chain);
            return;
    }
}

}  // namespace detail

inline std::string print_role(const RoleExpr& r) {
    std::ostringstream os;
    detail::print_role_rec(os, r, false);
    return os.str();
}

inline void print_concept(std::ostream& os, const Concept& c) {
    auto role_slot = [&os](const RoleExpr& r) {
        // a multi-step chain in restriction position gets explicit parens
        detail::print_role_rec(os, r, r.kind() == RoleKind::Chain || (r.kind() == RoleKind::Dnf && r.dnf_form().front().front().size() > 1 && r.dnf_form().size() == 1 && r.dnf_form().front().size() == 1));
    };
    switch (c.kind()) {
        case ConceptKind::Atom: os << c.name(); return;
        case ConceptKind::Top: os << "Top"; return;
        case ConceptKind::Bottom: os << "Bottom"; return;
        case ConceptKind::Not:
            os << "not ";
            print_concept(os, c.child());
            return;
        case ConceptKind::And:
        case ConceptKind::Or:
            os << "(";
            print_concept(os, c.child(0));
            os << (c.kind() == ConceptKind::And ? " and " : " or ");
            print_concept(os, c.child(1));
            os << ")";
            return;
        case ConceptKind::Some:
        case ConceptKind::All:
            os << "(" << (c.kind() == ConceptKind::Some ? "some " : "all ");
            role_slot(c.role());
            os << " . ";
            print_concept(os, c.child());
            os << ")";
            return;
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost:
            os << "(" << (c.kind() == ConceptKind::AtLeast ? ">= " : "<= ") << c.n() << " ";
            role_slot(c.role());
            os << " . ";
            print_concept(os, c.child());
            os << ")";
            return;
    }
}

inline std::string print_concept(const Concept& c) {
    std::ostringstream os;
    print_concept(os, c);
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Concept& c) {
    print_concept(os, c);
    return os;
}

inline std::ostream& operator<<(std::ostream& os, const RoleExpr& r) {
    detail::print_role_rec(os, r, false);
    return os;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

enum class Tok { LParen, RParen, Dot, Amp, Pipe, Geq, Leq, Nat, Ident, KwTop, KwBottom, KwNot, KwAnd, KwOr, KwSome, KwAll, KwInv, KwComp, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return cur_; }

    Token next() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::size_t at = pos_;
        if (pos_ >= text_.size()) {
            cur_ = {Tok::End, "", at};
            return;
        }
        char ch = text_[pos_];
        switch (ch) {
            case '(': ++pos_; cur_ = {Tok::LParen, "(", at}; return;
            case ')': ++pos_; cur_ = {Tok::RParen, ")", at}; return;
            case '.': ++pos_; cur_ = {Tok::Dot, ".", at}; return;
            case '&': ++pos_; cur_ = {Tok::Amp, "&", at}; return;
            case '|': ++pos_; cur_ = {Tok::Pipe, "|", at}; return;
            case '-': throw ParseError("negative cardinality", at);
            default: break;
        }
        if (ch == '>' || ch == '<') {
            if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '=')
                throw ParseError(std::string("expected '") + ch + "='", at);
            pos_ += 2;
            cur_ = {ch == '>' ? Tok::Geq : Tok::Leq, std::string(1, ch) + "=", at};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t end = pos_;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
            cur_ = {Tok::Nat, std::string(text_.substr(pos_, end - pos_)), at};
            pos_ = end;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            std::string word(text_.substr(pos_, end - pos_));
            pos_ = end;
            Tok k = Tok::Ident;
            if (word == "Top") k = Tok::KwTop;
            else if (word == "Bottom") k = Tok::KwBottom;
            else if (word == "not") k = Tok::KwNot;
            else if (word == "and") k = Tok::KwAnd;
            else if (word == "or") k = Tok::KwOr;
            else if (word == "some") k = Tok::KwSome;
            else if (word == "all") k = Tok::KwAll;
            else if (word == "inv") k = Tok::KwInv;
            else if (word == "o") k = Tok::KwComp;
            cur_ = {k, std::move(word), at};
            return;
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", at);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token cur_;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    Concept parse_concept_all() {
        Concept c = concept_expr();
        expect(Tok::End, "end of input");
        return c;
    }

    RoleExpr parse_role_all() {
        RoleExpr r = role();
        expect(Tok::End, "end of input");
        return r;
    }

private:
    Concept concept_expr() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::KwTop: lex_.next(); return Concept::top();
            case Tok::KwBottom: lex_.next(); return Concept::bottom();
            case Tok::Ident: return Concept::atom(lex_.next().text);
            case Tok::KwNot: lex_.next(); return Concept::negation(concept_expr());
            case Tok::LParen: return parenthesized();
            default:
                throw ParseError("expected a concept, got '" + t.text + "'", t.offset);
        }
    }

    Concept parenthesized() {
        lex_.next();  // '('
        const Token& t = lex_.peek();
        if (t.kind == Tok::KwSome || t.kind == Tok::KwAll) {
            bool is_some = t.kind == Tok::KwSome;
            lex_.next();
            RoleExpr r = role();
            expect(Tok::Dot, "'.'");
            Concept c = concept_expr();
            expect(Tok::RParen, "')'");
            return is_some ? Concept::some(std::move(r), std::move(c))
                           : Concept::all(std::move(r), std::move(c));
        }
        if (t.kind == Tok::Geq || t.kind == Tok::Leq) {
            bool is_geq = t.kind == Tok::Geq;
            lex_.next();
            Token num = expect(Tok::Nat, "a non-negative integer");
            Nat n(num.text);
            RoleExpr r = role();
            expect(Tok::Dot, "'.'");
            Concept c = concept_expr();
            expect(Tok::RParen, "')'");
            return is_geq ? Concept::at_least(std::move(n), std::move(r), std::move(c))
                          : Concept::at_most(std::move(n), std::move(r), std::move(c));
        }
        Concept lhs = concept_expr();
        const Token& op = lex_.peek();
        if (op.kind != Tok::KwAnd && op.kind != Tok::KwOr)
            throw ParseError("expected 'and' or 'or', got '" + op.text + "'", op.offset);
        bool is_and = op.kind == Tok::KwAnd;
        lex_.next();
        Concept rhs = concept_expr();
        expect(Tok::RParen, "')'");
        return is_and ? Concept::conj(std::move(lhs), std::move(rhs))
                      : Concept::disj(std::move(lhs), std::move(rhs));
    }

    RoleExpr role() {  // precedence: o > & > |
        RoleExpr l = role_and();
        while (lex_.peek().kind == Tok::Pipe) {
            lex_.next();
            l = RoleExpr::role_or(std::move(l), role_and());
        }
        return l;
    }

    RoleExpr role_and() {
        RoleExpr l = role_chain();
        while (lex_.peek().kind == Tok::Amp) {
            lex_.next();
            l = RoleExpr::role_and(std::move(l), role_chain());
        }
        return l;
    }

    RoleExpr role_chain() {
        std::vector<RoleExpr> parts;
        parts.push_back(role_prim());
        while (lex_.peek().kind == Tok::KwComp) {
            lex_.next();
            parts.push_back(role_prim());
        }
        return RoleExpr::chain(std::move(parts));
    }

    RoleExpr role_prim() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Ident) return RoleExpr::atomic(lex_.next().text);
        if (t.kind == Tok::KwInv) {
            lex_.next();
            expect(Tok::LParen, "'('");
            RoleExpr r = role();
            expect(Tok::RParen, "')'");
            return RoleExpr::inverse(std::move(r));
        }
        if (t.kind == Tok::LParen) {
            lex_.next();
            RoleExpr r = role();
            expect(Tok::RParen, "')'");
            return r;
        }
        throw ParseError("expected a role, got '" + t.text + "'", t.offset);
    }

    Token expect(Tok k, const std::string& what) {
        const Token& t = lex_.peek();
        if (t.kind != k) throw ParseError("expected " + what + ", got '" + t.text + "'", t.offset);
        return lex_.next();
    }

    Lexer lex_;
};

}  // namespace detail

inline Concept parse_concept(std::string_view text) {
    return detail::Parser(text).parse_concept_all();
}

inline RoleExpr parse_role(std::string_view text) {
    return detail::Parser(text).parse_role_all();
}

// ---------------------------------------------------------------------------
// Structural measures
// ---------------------------------------------------------------------------

struct Measures {
    std::size_t depth = 0;        // maximal role depth
    std::size_t and_or_size = 0;  // number of concept and/or constructors
    std::size_t size_c0 = 0;      // total symbol count
    Nat max_n = 0;                // largest at-least bound in any subconcept
};

namespace detail {

inline std::size_t role_symbols(const RoleExpr& r) {
    switch (r.kind()) {
        case RoleKind::Atomic: return 1;
        case RoleKind::Inverse: return 1 + role_symbols(r.sub());
        case RoleKind::Chain: {
            std::size_t s = r.parts().size() - 1;
            for (const auto& p : r.parts()) s += role_symbols(p);
            return s;
        }
        case RoleKind::RoleAnd:
        case RoleKind::RoleOr:
            return 1 + role_symbols(r.sub(0)) + role_symbols(r.sub(1));
        case RoleKind::Dnf: {
            std::size_t s = r.dnf_form().size() - 1;
            for (const auto& dis : r.dnf_form()) {
                s += dis.size() - 1;
                for (const auto& ch : dis) s += 2 * ch.size() - 1;
            }
            return s;
        }
    }
    return 0;
}

inline void measures_rec(const Concept& c, Measures& m, std::size_t& depth_out) {
    switch (c.kind()) {
        case ConceptKind::Atom:
        case ConceptKind::Top:
        case ConceptKind::Bottom:
            m.size_c0 += 1;
            depth_out = 0;
            return;
        case ConceptKind::Not: {
            m.size_c0 += 1;
            measures_rec(c.child(), m, depth_out);
            return;
        }
        case ConceptKind::And:
        case ConceptKind::Or: {
            m.size_c0 += 1;
            m.and_or_size += 1;
            std::size_t dl = 0, dr = 0;
            measures_rec(c.child(0), m, dl);
            measures_rec(c.child(1), m, dr);
            depth_out = std::max(dl, dr);
            return;
        }
        case ConceptKind::Some:
        case ConceptKind::All:
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost: {
            m.size_c0 += 1 + role_symbols(c.role());
            if (c.kind() == ConceptKind::AtLeast && c.n() > m.max_n) m.max_n = c.n();
            std::size_t d = 0;
            measures_rec(c.child(), m, d);
            depth_out = c.role().length() + d;
            return;
        }
    }
}

}  // namespace detail

inline Measures measures(const Concept& c) {
    Measures m;
    std::size_t d = 0;
    detail::measures_rec(c, m, d);
    m.depth = d;
    return m;
}

inline std::size_t depth(const Concept& c) { return measures(c).depth; }

inline std::set<Concept> subconcepts(const Concept& c) {
    std::set<Concept> out;
    auto rec = [&out](auto&& self, const Concept& x) -> void {
        out.insert(x);
        for (const auto& k : x.children()) self(self, k);
    };
    rec(rec, c);
    return out;
}

// ---------------------------------------------------------------------------
// Fragment classification
// ---------------------------------------------------------------------------

// AlcqComp: number/value restrictions over composition chains of atomic roles
// (same-length DNF combinations allowed) -- accepted by the tableau after
// preprocessing. AlcnnCompInv: inverse roles occur (possibly under chains);
// handled by the normalizer and the model checker only.
enum class Fragment { AlcqComp, AlcnnCompInv, Unsupported };

inline const char* to_string(Fragment f) {
    switch (f) {
        case Fragment::AlcqComp: return "ALCQ_COMP";
        case Fragment::AlcnnCompInv: return "ALCNN_COMP_INV";
        case Fragment::Unsupported: return "UNSUPPORTED";
    }
    return "?";
}

namespace detail {

struct RoleScan {
    bool has_inverse = false;
    bool has_bool = false;
    bool bool_inside_chain = false;
    bool mixed_lengths = false;  // chains of different lengths in one combination
};

// Scans one role expression. The same-length requirement applies to the
// chains of a single boolean combination; `lengths` collects them.
inline void scan_role(const RoleExpr& r, RoleScan& s, bool under_bool,
                      std::set<std::size_t>& lengths) {
    switch (r.kind()) {
        case RoleKind::Atomic:
            if (under_bool) lengths.insert(1);
            return;
        case RoleKind::Inverse:
            s.has_inverse = true;
            scan_role(r.sub(), s, under_bool, lengths);
            return;
        case RoleKind::Chain: {
            for (const auto& p : r.parts()) {
                if (p.kind() == RoleKind::RoleAnd || p.kind() == RoleKind::RoleOr ||
                    p.kind() == RoleKind::Dnf)
                    s.bool_inside_chain = true;
                if (p.kind() == RoleKind::Inverse) s.has_inverse = true;
            }
            if (under_bool) lengths.insert(r.length());
            return;
        }
        case RoleKind::RoleAnd:
        case RoleKind::RoleOr:
            s.has_bool = true;
            scan_role(r.sub(0), s, true, lengths);
            scan_role(r.sub(1), s, true, lengths);
            return;
        case RoleKind::Dnf:
            s.has_bool = true;
            lengths.insert(r.length());
            return;
    }
}

inline void scan_concept(const Concept& c, RoleScan& s) {
    if (c.has_role()) {
        std::set<std::size_t> lengths;
        scan_role(c.role(), s, false, lengths);
        if (lengths.size() > 1) s.mixed_lengths = true;
    }
    for (const auto& k : c.children()) scan_concept(k, s);
}

}  // namespace detail

inline Fragment classify_fragment(const Concept& c) {
    detail::RoleScan s;
    detail::scan_concept(c, s);
    if (s.bool_inside_chain) return Fragment::Unsupported;
    if (s.has_bool && s.has_inverse) return Fragment::Unsupported;
    if (s.mixed_lengths) return Fragment::Unsupported;
    if (s.has_inverse) return Fragment::AlcnnCompInv;
    return Fragment::AlcqComp;
}

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

struct Signature {
    std::set<std::string> concepts;
    std::set<std::string> roles;
};

namespace detail {

inline void collect_role_names(const RoleExpr& r, std::set<std::string>& out) {
    switch (r.kind()) {
        case RoleKind::Atomic: out.insert(r.name()); return;
        case RoleKind::Dnf:
            for (const auto& dis : r.dnf_form())
                for (const auto& ch : dis) out.insert(ch.begin(), ch.end());
            return;
        default:
            for (const auto& p : r.parts()) collect_role_names(p, out);
            return;
    }
}

}  // namespace detail

inline Signature collect_signature(const Concept& c) {
    Signature sig;
    auto rec = [&sig](auto&& self, const Concept& x) -> void {
        if (x.kind() == ConceptKind::Atom) sig.concepts.insert(x.name());
        if (x.has_role()) detail::collect_role_names(x.role(), sig.roles);
        for (const auto& k : x.children()) self(self, k);
    };
    rec(rec, c);
    return sig;
}

}  // namespace alcq
