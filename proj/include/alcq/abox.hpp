#pragma once

// ABoxes: finite sets of concept assertions C(x), role assertions R(x,y) and
// symmetric inequality assertions x != y over named individuals, rooted at a
// distinguished individual of level 0. Every role edge goes from level l to
// level l+1, so each individual has a unique distance from the root.
//
// ABoxes are values; operations that change them return new values.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "alcq/syntax.hpp"

namespace alcq {

using Individual = std::string;

namespace detail {

// Age key for fresh-variable names: "v12" is newer than "v3"; ties fall back
// to plain string order. Digit suffixes compare numerically via (len, text).
inline std::tuple<std::string, std::size_t, std::string> individual_age_key(const Individual& s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    std::string stem = s.substr(0, i);
    std::string digits = s.substr(i);
    return {stem, digits.size(), digits};
}

}  // namespace detail

inline bool individual_newer(const Individual& a, const Individual& b) {
    return detail::individual_age_key(a) > detail::individual_age_key(b);
}

class ABox {
public:
    explicit ABox(Individual root) : root_(std::move(root)) { levels_[root_] = 0; }

    const Individual& root() const { return root_; }

    bool has_individual(const Individual& x) const { return levels_.count(x) != 0; }

    std::size_t level(const Individual& x) const {
        auto it = levels_.find(x);
        if (it == levels_.end()) throw ValidationError("unknown individual: " + x);
        return it->second;
    }

    const std::map<Individual, std::size_t>& levels() const { return levels_; }

    std::size_t individual_count() const { return levels_.size(); }

    std::vector<Individual> individuals() const {
        std::vector<Individual> out;
        out.reserve(levels_.size());
        for (const auto& [x, _] : levels_) out.push_back(x);
        return out;
    }

    // Top is never stored: it holds for every individual implicitly.
    void add_concept(const Individual& x, const Concept& c) {
        require_known(x);
        if (c.kind() == ConceptKind::Top) return;
        concepts_[x].insert(c);
    }

    bool has_concept(const Individual& x, const Concept& c) const {
        if (c.kind() == ConceptKind::Top) return true;
        auto it = concepts_.find(x);
        return it != concepts_.end() && it->second.count(c) != 0;
    }

    const std::set<Concept>& concepts_of(const Individual& x) const {
        static const std::set<Concept> empty;
        auto it = concepts_.find(x);
        return it == concepts_.end() ? empty : it->second;
    }

    const std::map<Individual, std::set<Concept>>& concept_assertions() const { return concepts_; }

    // The target of a new edge sits one level below its source; a target seen
    // before must already sit there (role chains from the root agree on length).
    void add_role(const std::string& role, const Individual& from, const Individual& to) {
        require_known(from);
        std::size_t want = levels_.at(from) + 1;
        auto it = levels_.find(to);
        if (it == levels_.end()) {
            levels_[to] = want;
        } else if (it->second != want) {
            throw ValidationError("role edge " + role + "(" + from + "," + to +
                                  ") breaks the unique-level invariant");
        }
        out_[from][role].insert(to);
    }

    bool has_role(const std::string& role, const Individual& from, const Individual& to) const {
        auto i = out_.find(from);
        if (i == out_.end()) return false;
        auto j = i->second.find(role);
        return j != i->second.end() && j->second.count(to) != 0;
    }

    const std::set<Individual>& successors(const Individual& x, const std::string& role) const {
        static const std::set<Individual> empty;
        auto i = out_.find(x);
        if (i == out_.end()) return empty;
        auto j = i->second.find(role);
        return j == i->second.end() ? empty : j->second;
    }

    std::vector<std::tuple<std::string, Individual, Individual>> role_assertion_list() const {
        std::vector<std::tuple<std::string, Individual, Individual>> out;
        for (const auto& [from, byrole] : out_)
            for (const auto& [role, tos] : byrole)
                for (const auto& to : tos) out.emplace_back(role, from, to);
        std::sort(out.begin(), out.end());
        return out;
    }

    void add_inequality(const Individual& a, const Individual& b) {
        require_known(a);
        require_known(b);
        if (a == b) throw ValidationError("inequality assertion must relate distinct names");
        inequalities_.insert(ordered(a, b));
    }

    bool has_inequality(const Individual& a, const Individual& b) const {
        if (a == b) return false;
        return inequalities_.count(ordered(a, b)) != 0;
    }

    const std::set<std::pair<Individual, Individual>>& inequalities() const { return inequalities_; }

    std::size_t assertion_count() const {
        std::size_t n = inequalities_.size();
        for (const auto& [_, cs] : concepts_) n += cs.size();
        for (const auto& [_, byrole] : out_)
            for (const auto& [_r, tos] : byrole) n += tos.size();
        return n;
    }

    // One assertion per line, deterministic sorted order.
    std::vector<std::string> to_lines() const {
        std::vector<std::string> lines;
        for (const auto& [x, cs] : concepts_)
            for (const auto& c : cs) lines.push_back(print_concept(c) + "(" + x + ")");
        for (const auto& [role, from, to] : role_assertion_list())
            lines.push_back(role + "(" + from + "," + to + ")");
        for (const auto& [a, b] : inequalities_) lines.push_back(a + " != " + b);
        return lines;
    }

    friend std::ostream& operator<<(std::ostream& os, const ABox& a) {
        for (const auto& line : a.to_lines()) os << line << "\n";
        return os;
    }

    friend ABox merge(const ABox& a, const Individual& victim, const Individual& survivor);

private:
    void require_known(const Individual& x) const {
        if (!has_individual(x)) throw ValidationError("unknown individual: " + x);
    }

    static std::pair<Individual, Individual> ordered(const Individual& a, const Individual& b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }

    Individual root_;
    std::map<Individual, std::size_t> levels_;
    std::map<Individual, std::set<Concept>> concepts_;
    std::map<Individual, std::map<std::string, std::set<Individual>>> out_;
    std::set<std::pair<Individual, Individual>> inequalities_;
};

// ---------------------------------------------------------------------------
// Successor computation
// ---------------------------------------------------------------------------

// y is a (R1 o ... o Rm)-successor of x iff a chain of asserted edges labeled
// R1..Rm leads from x to y.
inline std::set<Individual> chain_successors(const ABox& a, const Individual& x,
                                             const ChainNames& chain) {
    if (chain.empty()) throw ValidationError("role chain must have length >= 1");
    std::set<Individual> cur{x};
    for (const auto& role : chain) {
        std::set<Individual> next;
        for (const auto& u : cur) {
            const auto& succ = a.successors(u, role);
            next.insert(succ.begin(), succ.end());
        }
        cur = std::move(next);
        if (cur.empty()) break;
    }
    return cur;
}

// y is an R-successor for a DNF role iff for some disjunct every conjunct
// chain reaches y: intermediate individuals are free per conjunct, the final
// endpoint is shared.
inline std::set<Individual> complex_successors(const ABox& a, const Individual& x,
                                               const DnfForm& form) {
    std::set<Individual> out;
    for (const auto& disjunct : form) {
        std::optional<std::set<Individual>> inter;
        for (const auto& ch : disjunct) {
            std::set<Individual> s = chain_successors(a, x, ch);
            if (!inter) {
                inter = std::move(s);
            } else {
                std::set<Individual> tmp;
                std::set_intersection(inter->begin(), inter->end(), s.begin(), s.end(),
                                      std::inserter(tmp, tmp.begin()));
                *inter = std::move(tmp);
            }
            if (inter->empty()) break;
        }
        if (inter) out.insert(inter->begin(), inter->end());
    }
    return out;
}

namespace detail {

inline ChainNames atomic_chain_names(const RoleExpr& r) {
    ChainNames names;
    if (r.kind() == RoleKind::Atomic) {
        names.push_back(r.name());
        return names;
    }
    if (r.kind() == RoleKind::Chain) {
        for (const auto& p : r.parts()) {
            if (p.kind() != RoleKind::Atomic)
                throw FragmentError("expected a chain of atomic roles, got: " + print_role(r));
            names.push_back(p.name());
        }
        return names;
    }
    throw FragmentError("expected a chain of atomic roles, got: " + print_role(r));
}

}  // namespace detail

inline std::set<Individual> successors_of(const ABox& a, const Individual& x, const RoleExpr& r) {
    if (r.kind() == RoleKind::Dnf) return complex_successors(a, x, r.dnf_form());
    return chain_successors(a, x, detail::atomic_chain_names(r));
}

// ---------------------------------------------------------------------------
// Distinct qualified successors (maximum cliques in the inequality graph)
// ---------------------------------------------------------------------------

struct DistinctQualified {
    std::size_t count = 0;
    std::vector<Individual> witnesses;  // one maximum set, deterministic choice
};

// Maximum cardinality of a set of r-successors of x that all carry the
// qualifier C and are pairwise asserted distinct. Qualifier Top counts every
// successor. Exact branch and bound; instance sizes stay small because rule
// applications bound successor counts.
inline DistinctQualified max_distinct_qualified(const ABox& a, const Individual& x,
                                                const RoleExpr& r, const Concept& c) {
    std::vector<Individual> qualified;
    for (const auto& y : successors_of(a, x, r))
        if (a.has_concept(y, c)) qualified.push_back(y);

    DistinctQualified best;
    std::vector<Individual> cur;
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == qualified.size()) {
            if (cur.size() > best.count) {
                best.count = cur.size();
                best.witnesses = cur;
            }
            return;
        }
        if (cur.size() + (qualified.size() - idx) <= best.count) return;
        const Individual& y = qualified[idx];
        bool compatible = true;
        for (const auto& u : cur)
            if (!a.has_inequality(u, y)) {
                compatible = false;
                break;
            }
        if (compatible) {
            cur.push_back(y);
            self(self, idx + 1);
            cur.pop_back();
        }
        self(self, idx + 1);
    };
    rec(rec, 0);
    return best;
}

// ---------------------------------------------------------------------------
// Clash detection
// ---------------------------------------------------------------------------

struct Clash {
    enum class Kind { AtomicPair, BottomAsserted, AtMostExceeded };
    Kind kind;
    Individual x;
    std::string description;
};

// Reports {A(x), not A(x)}, an asserted Bottom(x) (which nnf can produce from
// negated >=0 restrictions), or an at-most restriction with more asserted
// distinct qualified successors than its bound.
inline std::optional<Clash> has_clash(const ABox& a) {
    for (const auto& [x, cs] : a.concept_assertions()) {
        for (const auto& c : cs) {
            if (c.kind() == ConceptKind::Bottom)
                return Clash{Clash::Kind::BottomAsserted, x, "Bottom(" + x + ")"};
            if (c.kind() == ConceptKind::Not && cs.count(c.child()) != 0)
                return Clash{Clash::Kind::AtomicPair, x,
                             print_concept(c.child()) + "(" + x + ") together with its negation"};
        }
    }
    for (const auto& [x, cs] : a.concept_assertions()) {
        for (const auto& c : cs) {
            if (c.kind() != ConceptKind::AtMost) continue;
            DistinctQualified d = max_distinct_qualified(a, x, c.role(), c.child());
            if (Nat(d.count) > c.n())
                return Clash{Clash::Kind::AtMostExceeded, x,
                             print_concept(c) + "(" + x + ") has " + std::to_string(d.count) +
                                 " asserted-distinct qualified successors"};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Merging
// ---------------------------------------------------------------------------

// Replaces every occurrence of `victim` by `survivor`; the survivor carries
// the union of both constraint sets. Requires equal levels, no asserted
// inequality between the two, and that neither is the root.
inline ABox merge(const ABox& a, const Individual& victim, const Individual& survivor) {
    if (!a.has_individual(victim) || !a.has_individual(survivor))
        throw IllegalMergeError("merge of unknown individual");
    if (victim == survivor) throw IllegalMergeError("merge of an individual with itself");
    if (victim == a.root() || survivor == a.root())
        throw IllegalMergeError("the root individual is never merged");
    if (a.level(victim) != a.level(survivor))
        throw IllegalMergeError("merge candidates must have the same level");
    if (a.has_inequality(victim, survivor))
        throw IllegalMergeError("merge candidates are asserted distinct");

    auto ren = [&](const Individual& x) { return x == victim ? survivor : x; };

    ABox out(a.root());
    out.levels_ = a.levels_;
    out.levels_.erase(victim);
    for (const auto& [x, cs] : a.concepts_) {
        auto& dst = out.concepts_[ren(x)];
        dst.insert(cs.begin(), cs.end());
    }
    for (const auto& [from, byrole] : a.out_)
        for (const auto& [role, tos] : byrole)
            for (const auto& to : tos) out.out_[ren(from)][role].insert(ren(to));
    for (const auto& [p, q] : a.inequalities_) {
        Individual pp = ren(p), qq = ren(q);
        out.inequalities_.insert(ABox::ordered(pp, qq));
    }
    return out;
}

}  // namespace alcq
