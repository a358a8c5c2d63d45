#pragma once

// Finite interpretations and their uses:
//   eval_role / eval_concept   set-theoretic evaluation of role and concept
//                              expressions (inverses and compositions included)
//   check_abox_model           does an interpretation satisfy an ABox?
//   enumerate_model            bounded brute-force search for a model of a
//                              concept, domain sizes ascending
//   read/write_interpretation  line-based text format
//
// Unknown concept/role names evaluate to the empty extension.
//
// Interpretation file format, one item per line:
//   individual <name>
//   concept <Name>: <id> <id> ...
//   role <Name>: <id> <id> ; <id> <id> ; ...
//   assign <abox-name> = <id>
// where <id> is a declared individual name. '#' starts a comment.

#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alcq/abox.hpp"
#include "alcq/syntax.hpp"

namespace alcq {

struct Interpretation {
    std::vector<std::string> domain;  // element names; index is the element id
    std::map<std::string, std::set<std::size_t>> concept_ext;
    std::map<std::string, std::set<std::pair<std::size_t, std::size_t>>> role_ext;
    std::map<std::string, std::size_t> assignment;  // ABox individual -> element id

    std::size_t size() const { return domain.size(); }

    std::size_t add_element(const std::string& name) {
        for (std::size_t i = 0; i < domain.size(); ++i)
            if (domain[i] == name) throw ValidationError("duplicate domain element: " + name);
        domain.push_back(name);
        return domain.size() - 1;
    }

    std::optional<std::size_t> element(const std::string& name) const {
        for (std::size_t i = 0; i < domain.size(); ++i)
            if (domain[i] == name) return i;
        return std::nullopt;
    }

    std::size_t require_element(const std::string& name) const {
        auto e = element(name);
        if (!e) throw ValidationError("unknown domain element: " + name);
        return *e;
    }
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

using Pairs = std::set<std::pair<std::size_t, std::size_t>>;
using Elems = std::set<std::size_t>;

namespace detail {

inline Pairs compose(const Pairs& a, const Pairs& b) {
    std::map<std::size_t, std::vector<std::size_t>> by_first;
    for (const auto& [x, y] : b) by_first[x].push_back(y);
    Pairs out;
    for (const auto& [x, y] : a) {
        auto it = by_first.find(y);
        if (it == by_first.end()) continue;
        for (std::size_t z : it->second) out.emplace(x, z);
    }
    return out;
}

inline Pairs intersect(const Pairs& a, const Pairs& b) {
    Pairs out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
    return out;
}

}  // namespace detail

inline Pairs eval_role(const Interpretation& i, const RoleExpr& r) {
    switch (r.kind()) {
        case RoleKind::Atomic: {
            auto it = i.role_ext.find(r.name());
            return it == i.role_ext.end() ? Pairs{} : it->second;
        }
        case RoleKind::Inverse: {
            Pairs sub = eval_role(i, r.sub());
            Pairs out;
            for (const auto& [x, y] : sub) out.emplace(y, x);
            return out;
        }
        case RoleKind::Chain: {
            Pairs acc = eval_role(i, r.parts().front());
            for (std::size_t k = 1; k < r.parts().size(); ++k)
                acc = detail::compose(acc, eval_role(i, r.parts()[k]));
            return acc;
        }
        case RoleKind::RoleAnd:
            return detail::intersect(eval_role(i, r.sub(0)), eval_role(i, r.sub(1)));
        case RoleKind::RoleOr: {
            Pairs out = eval_role(i, r.sub(0));
            Pairs rr = eval_role(i, r.sub(1));
            out.insert(rr.begin(), rr.end());
            return out;
        }
        case RoleKind::Dnf: {
            Pairs out;
            for (const auto& dis : r.dnf_form()) {
                std::optional<Pairs> inter;
                for (const auto& ch : dis) {
                    Pairs p;
                    bool first = true;
                    for (const auto& name : ch) {
                        Pairs atom = eval_role(i, RoleExpr::atomic(name));
                        p = first ? std::move(atom) : detail::compose(p, atom);
                        first = false;
                    }
                    inter = inter ? detail::intersect(*inter, p) : std::move(p);
                }
                if (inter) out.insert(inter->begin(), inter->end());
            }
            return out;
        }
    }
    return {};
}

inline Elems eval_concept(const Interpretation& i, const Concept& c) {
    const std::size_t n = i.size();
    auto all = [n]() {
        Elems e;
        for (std::size_t k = 0; k < n; ++k) e.insert(k);
        return e;
    };
    switch (c.kind()) {
        case ConceptKind::Atom: {
            auto it = i.concept_ext.find(c.name());
            return it == i.concept_ext.end() ? Elems{} : it->second;
        }
        case ConceptKind::Top: return all();
        case ConceptKind::Bottom: return {};
        case ConceptKind::Not: {
            Elems sub = eval_concept(i, c.child());
            Elems out;
            for (std::size_t k = 0; k < n; ++k)
                if (!sub.count(k)) out.insert(k);
            return out;
        }
        case ConceptKind::And: {
            Elems a = eval_concept(i, c.child(0));
            Elems b = eval_concept(i, c.child(1));
            Elems out;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::inserter(out, out.begin()));
            return out;
        }
        case ConceptKind::Or: {
            Elems out = eval_concept(i, c.child(0));
            Elems b = eval_concept(i, c.child(1));
            out.insert(b.begin(), b.end());
            return out;
        }
        default: break;
    }
    Pairs rel = eval_role(i, c.role());
    Elems q = eval_concept(i, c.child());
    std::map<std::size_t, std::size_t> qualified_count;
    std::map<std::size_t, std::size_t> total_count;
    for (const auto& [x, y] : rel) {
        ++total_count[x];
        if (q.count(y)) ++qualified_count[x];
    }
    Elems out;
    for (std::size_t k = 0; k < n; ++k) {
        Nat cnt = Nat(qualified_count.count(k) ? qualified_count[k] : 0);
        switch (c.kind()) {
            case ConceptKind::Some:
                if (cnt > 0) out.insert(k);
                break;
            case ConceptKind::All: {
                std::size_t tot = total_count.count(k) ? total_count[k] : 0;
                if (Nat(tot) == cnt) out.insert(k);  // every successor qualifies
                break;
            }
            case ConceptKind::AtLeast:
                if (cnt >= c.n()) out.insert(k);
                break;
            case ConceptKind::AtMost:
                if (cnt <= c.n()) out.insert(k);
                break;
            default: break;
        }
    }
    return out;
}

// True iff every concept, role and inequality assertion of `a` holds in `i`
// under its assignment. The assignment must cover all ABox individuals.
inline bool check_abox_model(const Interpretation& i, const ABox& a) {
    std::map<Individual, std::size_t> pi;
    for (const auto& x : a.individuals()) {
        auto it = i.assignment.find(x);
        if (it == i.assignment.end())
            throw ValidationError("assignment does not cover individual: " + x);
        if (it->second >= i.size())
            throw ValidationError("assignment maps " + x + " outside the domain");
        pi[x] = it->second;
    }
    for (const auto& [x, cs] : a.concept_assertions()) {
        for (const auto& c : cs) {
            Elems ext = eval_concept(i, c);
            if (!ext.count(pi.at(x))) return false;
        }
    }
    for (const auto& [role, from, to] : a.role_assertion_list()) {
        auto it = i.role_ext.find(role);
        if (it == i.role_ext.end() || !it->second.count({pi.at(from), pi.at(to)})) return false;
    }
    for (const auto& [p, q] : a.inequalities())
        if (pi.at(p) == pi.at(q)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

inline void write_interpretation(std::ostream& os, const Interpretation& i) {
    for (const auto& name : i.domain) os << "individual " << name << "\n";
    for (const auto& [name, ext] : i.concept_ext) {
        if (ext.empty()) continue;
        os << "concept " << name << ":";
        for (std::size_t e : ext) os << " " << i.domain.at(e);
        os << "\n";
    }
    for (const auto& [name, ext] : i.role_ext) {
        if (ext.empty()) continue;
        os << "role " << name << ":";
        bool first = true;
        for (const auto& [x, y] : ext) {
            os << (first ? " " : " ; ") << i.domain.at(x) << " " << i.domain.at(y);
            first = false;
        }
        os << "\n";
    }
    for (const auto& [x, e] : i.assignment)
        os << "assign " << x << " = " << i.domain.at(e) << "\n";
}

inline std::string write_interpretation(const Interpretation& i) {
    std::ostringstream os;
    write_interpretation(os, i);
    return os.str();
}

inline Interpretation read_interpretation(std::istream& is) {
    Interpretation out;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&lineno](const std::string& msg) -> void {
        throw ValidationError(msg + " (line " + std::to_string(lineno) + ")");
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "individual") {
            std::string name;
            if (!(ls >> name)) fail("individual line needs a name");
            out.add_element(name);
        } else if (kw == "concept" || kw == "role") {
            std::string name;
            if (!(ls >> name)) fail(kw + " line needs a name");
            if (name.back() == ':') {
                name.pop_back();
            } else {
                std::string colon;
                if (!(ls >> colon) || colon != ":") fail("expected ':' after " + kw + " name");
            }
            if (name.empty()) fail(kw + " line needs a name");
            std::vector<std::string> toks;
            std::string t;
            while (ls >> t) toks.push_back(t);
            if (kw == "concept") {
                for (const auto& id : toks) out.concept_ext[name].insert(out.require_element(id));
            } else {
                std::vector<std::string> pair;
                for (const auto& tok : toks) {
                    if (tok == ";") continue;
                    pair.push_back(tok);
                    if (pair.size() == 2) {
                        out.role_ext[name].emplace(out.require_element(pair[0]),
                                                   out.require_element(pair[1]));
                        pair.clear();
                    }
                }
                if (!pair.empty()) fail("role line has an unpaired element id");
            }
        } else if (kw == "assign") {
            std::string x, eq, id;
            if (!(ls >> x >> eq >> id) || eq != "=") fail("assign line must be 'assign <x> = <id>'");
            out.assignment[x] = out.require_element(id);
        } else {
            fail("unknown directive: " + kw);
        }
    }
    if (out.domain.empty()) throw ValidationError("interpretation has an empty domain");
    return out;
}

inline Interpretation read_interpretation(const std::string& text) {
    std::istringstream is(text);
    return read_interpretation(is);
}

// ---------------------------------------------------------------------------
// Bounded model enumeration
// ---------------------------------------------------------------------------

namespace detail {

// Partial interpretation over a fixed signature: every name's extension is
// either a committed bitmask or unknown. Three-valued evaluation brackets the
// exact extension between a definite lower and a possible upper bound, which
// prunes assignments that can no longer put element 0 into the extension
// (searching for a witness at element 0 is exhaustive up to isomorphism).
struct PartialInterp {
    std::size_t d = 0;
    std::uint64_t full = 0;
    std::vector<std::string> cnames;
    std::vector<std::uint64_t> cmask;
    std::vector<char> cknown;
    std::vector<std::string> rnames;
    std::vector<std::vector<std::uint32_t>> rrows;  // [role][source] target bits
    std::vector<std::vector<char>> rknown;

    std::optional<std::size_t> concept_index(const std::string& n) const {
        for (std::size_t i = 0; i < cnames.size(); ++i)
            if (cnames[i] == n) return i;
        return std::nullopt;
    }
    std::optional<std::size_t> role_index(const std::string& n) const {
        for (std::size_t i = 0; i < rnames.size(); ++i)
            if (rnames[i] == n) return i;
        return std::nullopt;
    }
};

struct Bounds {
    std::uint64_t lo = 0, hi = 0;
};

struct RoleBounds {
    std::vector<std::uint32_t> lo, hi;  // per source element
};

inline RoleBounds eval3_role(const PartialInterp& p, const RoleExpr& r) {
    const std::size_t d = p.d;
    const std::uint32_t row_full = static_cast<std::uint32_t>(p.full);
    auto empty = [d]() { return RoleBounds{std::vector<std::uint32_t>(d, 0), std::vector<std::uint32_t>(d, 0)}; };
    switch (r.kind()) {
        case RoleKind::Atomic: {
            auto idx = p.role_index(r.name());
            RoleBounds b = empty();
            if (!idx) return b;  // unknown names have empty extension
            for (std::size_t i = 0; i < d; ++i) {
                if (p.rknown[*idx][i]) {
                    b.lo[i] = b.hi[i] = p.rrows[*idx][i];
                } else {
                    b.lo[i] = 0;
                    b.hi[i] = row_full;
                }
            }
            return b;
        }
        case RoleKind::Inverse: {
            RoleBounds s = eval3_role(p, r.sub());
            RoleBounds b = empty();
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    if (s.lo[i] & (1u << j)) b.lo[j] |= (1u << i);
                    if (s.hi[i] & (1u << j)) b.hi[j] |= (1u << i);
                }
            return b;
        }
        case RoleKind::Chain: {
            RoleBounds acc = eval3_role(p, r.parts().front());
            for (std::size_t k = 1; k < r.parts().size(); ++k) {
                RoleBounds nxt = eval3_role(p, r.parts()[k]);
                RoleBounds b = empty();
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) {
                        if (acc.lo[i] & (1u << j)) b.lo[i] |= nxt.lo[j];
                        if (acc.hi[i] & (1u << j)) b.hi[i] |= nxt.hi[j];
                    }
                acc = std::move(b);
            }
            return acc;
        }
        case RoleKind::RoleAnd: {
            RoleBounds a = eval3_role(p, r.sub(0));
            RoleBounds bb = eval3_role(p, r.sub(1));
            for (std::size_t i = 0; i < d; ++i) {
                a.lo[i] &= bb.lo[i];
                a.hi[i] &= bb.hi[i];
            }
            return a;
        }
        case RoleKind::RoleOr: {
            RoleBounds a = eval3_role(p, r.sub(0));
            RoleBounds bb = eval3_role(p, r.sub(1));
            for (std::size_t i = 0; i < d; ++i) {
                a.lo[i] |= bb.lo[i];
                a.hi[i] |= bb.hi[i];
            }
            return a;
        }
        case RoleKind::Dnf: {
            RoleBounds out = empty();
            for (const auto& dis : r.dnf_form()) {
                std::optional<RoleBounds> inter;
                for (const auto& ch : dis) {
                    std::vector<RoleExpr> parts;
                    for (const auto& n : ch) parts.push_back(RoleExpr::atomic(n));
                    RoleBounds cb = eval3_role(p, RoleExpr::chain(std::move(parts)));
                    if (!inter) {
                        inter = std::move(cb);
                    } else {
                        for (std::size_t i = 0; i < d; ++i) {
                            inter->lo[i] &= cb.lo[i];
                            inter->hi[i] &= cb.hi[i];
                        }
                    }
                }
                for (std::size_t i = 0; i < d; ++i) {
                    out.lo[i] |= inter->lo[i];
                    out.hi[i] |= inter->hi[i];
                }
            }
            return out;
        }
    }
    return empty();
}

inline Bounds eval3_concept(const PartialInterp& p, const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Atom: {
            auto idx = p.concept_index(c.name());
            if (!idx) return {0, 0};
            if (p.cknown[*idx]) return {p.cmask[*idx], p.cmask[*idx]};
            return {0, p.full};
        }
        case ConceptKind::Top: return {p.full, p.full};
        case ConceptKind::Bottom: return {0, 0};
        case ConceptKind::Not: {
            Bounds s = eval3_concept(p, c.child());
            return {p.full & ~s.hi, p.full & ~s.lo};
        }
        case ConceptKind::And: {
            Bounds a = eval3_concept(p, c.child(0));
            Bounds b = eval3_concept(p, c.child(1));
            return {a.lo & b.lo, a.hi & b.hi};
        }
        case ConceptKind::Or: {
            Bounds a = eval3_concept(p, c.child(0));
            Bounds b = eval3_concept(p, c.child(1));
            return {a.lo | b.lo, a.hi | b.hi};
        }
        default: break;
    }
    RoleBounds r = eval3_role(p, c.role());
    Bounds q = eval3_concept(p, c.child());
    Bounds out;
    for (std::size_t i = 0; i < p.d; ++i) {
        std::uint32_t qlo = static_cast<std::uint32_t>(q.lo);
        std::uint32_t qhi = static_cast<std::uint32_t>(q.hi);
        Nat cnt_lo = std::popcount(r.lo[i] & qlo);
        Nat cnt_hi = std::popcount(r.hi[i] & qhi);
        bool in_lo = false, in_hi = false;
        switch (c.kind()) {
            case ConceptKind::Some:
                in_lo = cnt_lo > 0;
                in_hi = cnt_hi > 0;
                break;
            case ConceptKind::All:
                in_lo = (r.hi[i] & ~qlo) == 0;
                in_hi = (r.lo[i] & ~qhi) == 0;
                break;
            case ConceptKind::AtLeast:
                in_lo = cnt_lo >= c.n();
                in_hi = cnt_hi >= c.n();
                break;
            case ConceptKind::AtMost:
                in_lo = cnt_hi <= c.n();
                in_hi = cnt_lo <= c.n();
                break;
            default: break;
        }
        if (in_lo) out.lo |= (1ull << i);
        if (in_hi) out.hi |= (1ull << i);
    }
    return out;
}

}  // namespace detail

struct OracleOptions {
    std::uint64_t step_budget = 1'000'000;  // search nodes visited
};

// Exhaustively searches interpretations over `sig` with domain size 1 up to
// `max_domain` for one whose extension of `c` is non-empty; returns the first
// witness in enumeration order or nullopt when none exists within the bound.
// Enumeration is deterministic: domain sizes ascending, names in sorted order
// (concepts before roles), extensions in ascending bitmask order, role
// extensions row by row. A witness is searched at element 0, which is
// exhaustive up to isomorphism. Throws ResourceLimitError when the step
// budget is exceeded.
inline std::optional<Interpretation> enumerate_model(const Concept& c, const Signature& sig,
                                                     std::size_t max_domain,
                                                     const OracleOptions& opts = {}) {
    if (max_domain < 1) throw ValidationError("max_domain must be at least 1");
    std::uint64_t steps = 0;

    for (std::size_t d = 1; d <= max_domain; ++d) {
        if (!sig.roles.empty() && d > 24)
            throw ResourceLimitError("domain size too large for role enumeration");
        if (d > 63) throw ResourceLimitError("domain size too large for enumeration");

        detail::PartialInterp p;
        p.d = d;
        p.full = (d == 64) ? ~0ull : ((1ull << d) - 1);
        p.cnames.assign(sig.concepts.begin(), sig.concepts.end());
        p.cmask.assign(p.cnames.size(), 0);
        p.cknown.assign(p.cnames.size(), 0);
        p.rnames.assign(sig.roles.begin(), sig.roles.end());
        p.rrows.assign(p.rnames.size(), std::vector<std::uint32_t>(d, 0));
        p.rknown.assign(p.rnames.size(), std::vector<char>(d, 0));

        // slot list: one per concept mask, then one per role row
        struct Slot {
            bool is_role;
            std::size_t name_idx;
            std::size_t row;
        };
        std::vector<Slot> slots;
        for (std::size_t i = 0; i < p.cnames.size(); ++i) slots.push_back({false, i, 0});
        for (std::size_t i = 0; i < p.rnames.size(); ++i)
            for (std::size_t row = 0; row < d; ++row) slots.push_back({true, i, row});

        const std::uint64_t limit = 1ull << d;
        bool found = false;
        auto dfs = [&](auto&& self, std::size_t si) -> bool {
            if (++steps > opts.step_budget)
                throw ResourceLimitError("model enumeration exceeded its step budget");
            detail::Bounds b = detail::eval3_concept(p, c);
            if ((b.hi & 1ull) == 0) return false;  // element 0 ruled out
            if (si == slots.size()) return true;   // fully assigned: exact witness
            const Slot& s = slots[si];
            for (std::uint64_t v = 0; v < limit; ++v) {
                if (s.is_role) {
                    p.rrows[s.name_idx][s.row] = static_cast<std::uint32_t>(v);
                    p.rknown[s.name_idx][s.row] = 1;
                } else {
                    p.cmask[s.name_idx] = v;
                    p.cknown[s.name_idx] = 1;
                }
                if (self(self, si + 1)) return true;
            }
            if (s.is_role)
                p.rknown[s.name_idx][s.row] = 0;
            else
                p.cknown[s.name_idx] = 0;
            return false;
        };
        found = dfs(dfs, 0);

        if (found) {
            Interpretation out;
            for (std::size_t e = 0; e < d; ++e) out.add_element("d" + std::to_string(e));
            for (std::size_t i = 0; i < p.cnames.size(); ++i)
                for (std::size_t e = 0; e < d; ++e)
                    if (p.cmask[i] & (1ull << e)) out.concept_ext[p.cnames[i]].insert(e);
            for (std::size_t i = 0; i < p.rnames.size(); ++i)
                for (std::size_t x = 0; x < d; ++x)
                    for (std::size_t y = 0; y < d; ++y)
                        if (p.rrows[i][x] & (1u << y)) out.role_ext[p.rnames[i]].emplace(x, y);
            return out;
        }
    }
    return std::nullopt;
}

inline std::optional<Interpretation> enumerate_model(const Concept& c, std::size_t max_domain,
                                                     const OracleOptions& opts = {}) {
    return enumerate_model(c, collect_signature(c), max_domain, opts);
}

}  // namespace alcq
