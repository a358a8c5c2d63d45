#pragma once

// The completion-rule engine and satisfiability search.
//
// Satisfiability of a preprocessed concept C0 (negation normal form, boolean
// role combinations in DNF, no inverses) is decided by expanding the initial
// ABox {C0(x0)} with completion rules until no rule applies, backtracking
// over the don't-know choices (disjunctions, qualifier choices, merge pairs,
// DNF disjunct selection). A branch is abandoned as soon as it contains a
// clash; clashes persist under further rule applications, so pruning early
// cannot lose models.
//
// Rules over composition chains:
//   and      (C1 and C2)(x) present, some conjunct missing -> add both
//   or       neither disjunct present -> one branch per disjunct
//   geq      (>= n R.C)(x) with fewer than n asserted-distinct qualified
//            successors -> add fresh chains, qualifiers and inequalities
//   leq      (<= n R.C)(x) with more than n qualified successors, some pair
//            not asserted distinct -> one branch per mergeable pair
//   choose   a successor carries neither C nor its complement -> two branches
// The -ext variants handle DNF roles; geq-ext additionally branches over the
// disjunct each fresh successor is realized through, and all conjunct chains
// of the chosen disjunct share one fresh endpoint.
//
// Every rule application strictly decreases a lexicographic metric over
// per-level tuples, which bounds the search. See Metric below.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "alcq/abox.hpp"
#include "alcq/interp.hpp"
#include "alcq/normalize.hpp"
#include "alcq/syntax.hpp"

namespace alcq {

// ---------------------------------------------------------------------------
// Termination metric
// ---------------------------------------------------------------------------

// Per-level components, compared lexicographically level by level:
//   individuals      number of individuals at this level
//   pending_choices  (restriction, successor) pairs whose qualifier decision
//                    is still open, counted at the successor's level
//   boolean_size     summed and/or sizes of assertions the and/or rules still
//                    apply to at this level
//   atleast_deficit  summed shortfalls max(n - s, 0) of at-least assertions
//                    at this level, where s counts asserted-distinct
//                    qualified successors
//
// pending_choices sits between the individual count and the boolean size
// because resolving a choice may assert a compound qualifier (raising
// boolean_size at the successor's level), while rule applications focused at
// level l only ever create new choice obligations at deeper levels, whose
// tuples compare later.
struct MetricLevel {
    std::uint64_t individuals = 0;
    std::uint64_t pending_choices = 0;
    std::uint64_t boolean_size = 0;
    Nat atleast_deficit = 0;

    friend int cmp(const MetricLevel& a, const MetricLevel& b) {
        if (a.individuals != b.individuals) return a.individuals < b.individuals ? -1 : 1;
        if (a.pending_choices != b.pending_choices)
            return a.pending_choices < b.pending_choices ? -1 : 1;
        if (a.boolean_size != b.boolean_size) return a.boolean_size < b.boolean_size ? -1 : 1;
        return a.atleast_deficit.compare(b.atleast_deficit);
    }
};

struct Metric {
    std::vector<MetricLevel> levels;  // m0+1 entries, level 0 first

    friend int cmp(const Metric& a, const Metric& b) {
        std::size_t n = std::max(a.levels.size(), b.levels.size());
        static const MetricLevel zero{};
        for (std::size_t i = 0; i < n; ++i) {
            const MetricLevel& x = i < a.levels.size() ? a.levels[i] : zero;
            const MetricLevel& y = i < b.levels.size() ? b.levels[i] : zero;
            int c = cmp(x, y);
            if (c != 0) return c;
        }
        return 0;
    }
    friend bool operator<(const Metric& a, const Metric& b) { return cmp(a, b) < 0; }
    friend bool operator==(const Metric& a, const Metric& b) { return cmp(a, b) == 0; }

    friend std::ostream& operator<<(std::ostream& os, const Metric& m) {
        for (const auto& l : m.levels)
            os << "(" << l.individuals << "," << l.pending_choices << "," << l.boolean_size << ","
               << l.atleast_deficit << ")";
        return os;
    }
};

namespace detail {

// Open qualifier decisions: for every at-least/at-most assertion with a
// non-trivial qualifier C, every successor lacking both C and its complement.
template <class Fn>
void for_each_choose_obligation(const ABox& a, Fn&& fn) {
    for (const auto& [x, cs] : a.concept_assertions()) {
        for (const auto& c : cs) {
            if (!c.is_restriction()) continue;
            const Concept& qual = c.child();
            if (qual.kind() == ConceptKind::Top || qual.kind() == ConceptKind::Bottom) continue;
            Concept qual_neg = complement_nnf(qual);
            for (const auto& y : successors_of(a, x, c.role()))
                if (!a.has_concept(y, qual) && !a.has_concept(y, qual_neg)) fn(x, c, y);
        }
    }
}

inline bool and_or_applicable(const ABox& a, const Individual& x, const Concept& c) {
    if (c.kind() == ConceptKind::And)
        return !(a.has_concept(x, c.child(0)) && a.has_concept(x, c.child(1)));
    if (c.kind() == ConceptKind::Or)
        return !a.has_concept(x, c.child(0)) && !a.has_concept(x, c.child(1));
    return false;
}

}  // namespace detail

inline Metric compute_metric(const ABox& a, std::size_t m0) {
    Metric m;
    m.levels.resize(m0 + 1);
    auto slot = [&m](std::size_t lvl) -> MetricLevel& {
        if (lvl >= m.levels.size()) m.levels.resize(lvl + 1);  // out-of-depth ABoxes still measurable
        return m.levels[lvl];
    };
    for (const auto& [x, lvl] : a.levels()) slot(lvl).individuals += 1;
    detail::for_each_choose_obligation(a, [&](const Individual&, const Concept&, const Individual& y) {
        slot(a.level(y)).pending_choices += 1;
    });
    for (const auto& [x, cs] : a.concept_assertions()) {
        for (const auto& c : cs) {
            if (detail::and_or_applicable(a, x, c))
                slot(a.level(x)).boolean_size += measures(c).and_or_size;
            if (c.kind() == ConceptKind::AtLeast) {
                DistinctQualified d = max_distinct_qualified(a, x, c.role(), c.child());
                if (c.n() > Nat(d.count)) slot(a.level(x)).atleast_deficit += c.n() - Nat(d.count);
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Rule instances
// ---------------------------------------------------------------------------

enum class RuleKind { And, Or, Geq, Leq, Choose, GeqExt, LeqExt, ChooseExt };

inline const char* to_string(RuleKind k) {
    switch (k) {
        case RuleKind::And: return "and";
        case RuleKind::Or: return "or";
        case RuleKind::Geq: return "geq";
        case RuleKind::Leq: return "leq";
        case RuleKind::Choose: return "choose";
        case RuleKind::GeqExt: return "geq-ext";
        case RuleKind::LeqExt: return "leq-ext";
        case RuleKind::ChooseExt: return "choose-ext";
    }
    return "?";
}

struct RuleInstance {
    RuleKind kind;
    Individual x;       // focus individual
    Concept assertion;  // focus concept assertion

    Individual successor;                                        // choose rules
    std::vector<std::pair<Individual, Individual>> merge_pairs;  // leq rules
    std::size_t found = 0;                                       // geq rules: current count
    std::vector<Individual> witnesses;                           // geq rules: one maximum set
};

namespace detail {

// Deterministic instance ordering: deterministic rules (and, geq) first, then
// or < choose < leq < geq-ext, lowest focus level first.
inline int rule_priority(RuleKind k) {
    switch (k) {
        case RuleKind::And: return 0;
        case RuleKind::Geq: return 1;
        case RuleKind::Or: return 2;
        case RuleKind::Choose:
        case RuleKind::ChooseExt: return 3;
        case RuleKind::Leq:
        case RuleKind::LeqExt: return 4;
        case RuleKind::GeqExt: return 5;
    }
    return 9;
}

inline void require_tableau_concept(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bottom:
        case ConceptKind::Atom:
            return;
        case ConceptKind::Not:
            if (c.child().kind() != ConceptKind::Atom)
                throw FragmentError("assertion is not in negation normal form: " + print_concept(c));
            return;
        case ConceptKind::Some:
        case ConceptKind::All:
            throw FragmentError("value restrictions must be rewritten before the tableau: " +
                                print_concept(c));
        case ConceptKind::And:
        case ConceptKind::Or:
            require_tableau_concept(c.child(0));
            require_tableau_concept(c.child(1));
            return;
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost: {
            const RoleExpr& r = c.role();
            if (r.kind() != RoleKind::Dnf) detail::atomic_chain_names(r);  // throws if unsupported
            require_tableau_concept(c.child());
            return;
        }
    }
}

}  // namespace detail

inline std::vector<RuleInstance> applicable_rules(const ABox& a) {
    std::vector<RuleInstance> out;
    for (const auto& [x, cs] : a.concept_assertions()) {
        for (const auto& c : cs) {
            detail::require_tableau_concept(c);
            switch (c.kind()) {
                case ConceptKind::And:
                case ConceptKind::Or:
                    if (detail::and_or_applicable(a, x, c))
                        out.push_back({c.kind() == ConceptKind::And ? RuleKind::And : RuleKind::Or,
                                       x, c, {}, {}, 0, {}});
                    break;
                case ConceptKind::AtLeast: {
                    DistinctQualified d = max_distinct_qualified(a, x, c.role(), c.child());
                    if (Nat(d.count) < c.n()) {
                        RuleKind k = c.role().kind() == RoleKind::Dnf ? RuleKind::GeqExt : RuleKind::Geq;
                        out.push_back({k, x, c, {}, {}, d.count, d.witnesses});
                    }
                    break;
                }
                case ConceptKind::AtMost: {
                    std::vector<Individual> qualified;
                    for (const auto& y : successors_of(a, x, c.role()))
                        if (a.has_concept(y, c.child())) qualified.push_back(y);
                    if (Nat(qualified.size()) > c.n()) {
                        std::vector<std::pair<Individual, Individual>> pairs;
                        for (std::size_t i = 0; i < qualified.size(); ++i)
                            for (std::size_t j = i + 1; j < qualified.size(); ++j)
                                if (!a.has_inequality(qualified[i], qualified[j]))
                                    pairs.emplace_back(qualified[i], qualified[j]);
                        if (!pairs.empty()) {
                            RuleKind k = c.role().kind() == RoleKind::Dnf ? RuleKind::LeqExt : RuleKind::Leq;
                            out.push_back({k, x, c, {}, std::move(pairs), 0, {}});
                        }
                    }
                    break;
                }
                default: break;
            }
        }
    }
    detail::for_each_choose_obligation(
        a, [&](const Individual& x, const Concept& c, const Individual& y) {
            RuleKind k = c.role().kind() == RoleKind::Dnf ? RuleKind::ChooseExt : RuleKind::Choose;
            out.push_back({k, x, c, y, {}, 0, {}});
        });
    std::stable_sort(out.begin(), out.end(), [&a](const RuleInstance& p, const RuleInstance& q) {
        int pp = detail::rule_priority(p.kind), qq = detail::rule_priority(q.kind);
        if (pp != qq) return pp < qq;
        std::size_t pl = a.level(p.x), ql = a.level(q.x);
        if (pl != ql) return pl < ql;
        if (p.x != q.x) return p.x < q.x;
        int c = cmp(p.assertion, q.assertion);
        if (c != 0) return c < 0;
        return p.successor < q.successor;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Rule application
// ---------------------------------------------------------------------------

// Fresh individuals are named v1, v2, ... with a counter that is part of the
// search state: sibling branches reuse the same names.
class FreshNames {
public:
    Individual make() { return "v" + std::to_string(next_++); }
    std::size_t counter() const { return next_; }

private:
    std::size_t next_ = 1;
};

struct Branch {
    ABox abox;
    FreshNames fresh;
    std::string delta;  // trace description of what this branch changed
};

namespace detail {

inline std::string added_lines_delta(const ABox& before, const ABox& after) {
    std::vector<std::string> b = before.to_lines();
    std::vector<std::string> aa = after.to_lines();
    std::set<std::string> old(b.begin(), b.end());
    std::string out;
    for (const auto& line : aa) {
        if (old.count(line)) continue;
        if (!out.empty()) out += " ";
        out += "+" + line;
    }
    return out;
}

// Adds one fresh chain x --R1--> w2 ... --Rm--> endpoint.
inline void add_chain_to(ABox& a, const Individual& x, const ChainNames& chain,
                         const Individual& endpoint, FreshNames& fresh) {
    Individual prev = x;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        Individual w = fresh.make();
        a.add_role(chain[k], prev, w);
        prev = w;
    }
    a.add_role(chain.back(), prev, endpoint);
}

inline std::size_t materialization_count(const Nat& n, std::size_t found) {
    Nat need = n - Nat(found);
    if (need > Nat(100000))
        throw ResourceLimitError("at-least bound too large to materialize: " + need.str());
    return need.convert_to<std::size_t>();
}

}  // namespace detail

// Applies one rule instance, returning every resulting branch in a fixed
// deterministic order. Deterministic rules (and, geq) yield exactly one
// branch. Throws NotApplicableError when the precondition no longer holds.
inline std::vector<Branch> apply_rule(const ABox& a, const RuleInstance& ri, FreshNames fresh) {
    if (!a.has_concept(ri.x, ri.assertion))
        throw NotApplicableError("focus assertion is not present");
    std::vector<Branch> out;

    switch (ri.kind) {
        case RuleKind::And: {
            if (!detail::and_or_applicable(a, ri.x, ri.assertion))
                throw NotApplicableError("and-rule precondition no longer holds");
            ABox next = a;
            next.add_concept(ri.x, ri.assertion.child(0));
            next.add_concept(ri.x, ri.assertion.child(1));
            out.push_back({std::move(next), fresh, ""});
            break;
        }
        case RuleKind::Or: {
            if (!detail::and_or_applicable(a, ri.x, ri.assertion))
                throw NotApplicableError("or-rule precondition no longer holds");
            for (std::size_t k = 0; k < 2; ++k) {
                ABox next = a;
                next.add_concept(ri.x, ri.assertion.child(k));
                out.push_back({std::move(next), fresh, ""});
            }
            break;
        }
        case RuleKind::Geq: {
            DistinctQualified d = max_distinct_qualified(a, ri.x, ri.assertion.role(), ri.assertion.child());
            if (Nat(d.count) >= ri.assertion.n())
                throw NotApplicableError("geq-rule precondition no longer holds");
            std::size_t need = detail::materialization_count(ri.assertion.n(), d.count);
            ChainNames chain = detail::atomic_chain_names(ri.assertion.role());
            ABox next = a;
            FreshNames f = fresh;
            std::vector<Individual> endpoints;
            for (std::size_t i = 0; i < need; ++i) {
                // names in chain order: intermediates first, endpoint last
                Individual prev = ri.x;
                for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
                    Individual w = f.make();
                    next.add_role(chain[k], prev, w);
                    prev = w;
                }
                Individual z = f.make();
                next.add_role(chain.back(), prev, z);
                next.add_concept(z, ri.assertion.child());
                endpoints.push_back(z);
            }
            for (std::size_t i = 0; i < endpoints.size(); ++i)
                for (std::size_t j = i + 1; j < endpoints.size(); ++j)
                    next.add_inequality(endpoints[i], endpoints[j]);
            for (const auto& w : d.witnesses)
                for (const auto& z : endpoints) next.add_inequality(w, z);
            out.push_back({std::move(next), f, ""});
            break;
        }
        case RuleKind::GeqExt: {
            DistinctQualified d = max_distinct_qualified(a, ri.x, ri.assertion.role(), ri.assertion.child());
            if (Nat(d.count) >= ri.assertion.n())
                throw NotApplicableError("geq-rule precondition no longer holds");
            std::size_t need = detail::materialization_count(ri.assertion.n(), d.count);
            const DnfForm& form = ri.assertion.role().dnf_form();
            const std::size_t m = form.size();
            // one disjunct choice per fresh successor, all combinations
            double combos = std::pow(static_cast<double>(m), static_cast<double>(need));
            if (combos > 1e6)
                throw ResourceLimitError("too many disjunct combinations in geq-ext rule");
            std::vector<std::size_t> vec(need, 0);
            bool done = false;
            while (!done) {
                ABox next = a;
                FreshNames f = fresh;
                std::vector<Individual> endpoints;
                for (std::size_t i = 0; i < need; ++i) {
                    const DnfDisjunct& dis = form[vec[i]];
                    Individual z = f.make();
                    // every conjunct chain of the chosen disjunct shares the endpoint
                    for (const auto& ch : dis) detail::add_chain_to(next, ri.x, ch, z, f);
                    next.add_concept(z, ri.assertion.child());
                    endpoints.push_back(z);
                }
                for (std::size_t i = 0; i < endpoints.size(); ++i)
                    for (std::size_t j = i + 1; j < endpoints.size(); ++j)
                        next.add_inequality(endpoints[i], endpoints[j]);
                for (const auto& w : d.witnesses)
                    for (const auto& z : endpoints) next.add_inequality(w, z);
                out.push_back({std::move(next), f, ""});
                // next combination: rightmost digit fastest
                done = true;
                for (std::size_t i = need; i-- > 0;) {
                    if (++vec[i] < m) {
                        done = false;
                        break;
                    }
                    vec[i] = 0;
                }
            }
            break;
        }
        case RuleKind::Leq:
        case RuleKind::LeqExt: {
            if (ri.merge_pairs.empty()) throw NotApplicableError("leq-rule has no merge pair");
            for (const auto& [u, v] : ri.merge_pairs) {
                if (!a.has_individual(u) || !a.has_individual(v) || a.has_inequality(u, v))
                    throw NotApplicableError("leq-rule merge pair is no longer mergeable");
                const Individual& victim = individual_newer(u, v) ? u : v;
                const Individual& survivor = individual_newer(u, v) ? v : u;
                out.push_back({merge(a, victim, survivor), fresh,
                               "merge " + victim + " -> " + survivor});
            }
            break;
        }
        case RuleKind::Choose:
        case RuleKind::ChooseExt: {
            const Concept& qual = ri.assertion.child();
            Concept qual_neg = complement_nnf(qual);
            if (a.has_concept(ri.successor, qual) || a.has_concept(ri.successor, qual_neg))
                throw NotApplicableError("choose-rule precondition no longer holds");
            for (const Concept& d : {qual, qual_neg}) {
                ABox next = a;
                next.add_concept(ri.successor, d);
                out.push_back({std::move(next), fresh, ""});
            }
            break;
        }
    }
    for (auto& b : out)
        if (b.delta.empty()) b.delta = detail::added_lines_delta(a, b.abox);
    return out;
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

struct SearchLimits {
    std::uint64_t max_rule_applications = 1'000'000;
    std::size_t max_individuals = 100'000;
};

struct SearchOptions {
    SearchLimits limits;
    bool record_trace = false;
    bool check_metric = true;  // verify the termination measure strictly decreases
    bool audit_bounds = true;  // track level/out-degree bounds of generated ABoxes
};

struct SearchStats {
    std::uint64_t rule_applications = 0;
    std::array<std::uint64_t, 8> applications_by_rule{};  // indexed by RuleKind
    std::uint64_t branches_explored = 0;
    std::size_t max_individuals = 0;
    std::uint64_t metric_violations = 0;
    std::uint64_t level_bound_violations = 0;
    std::uint64_t outdegree_bound_violations = 0;
};

struct TraceEntry {
    std::string branch_id;
    RuleKind rule;
    Individual x;
    Concept focus;
    std::string delta;

    std::string to_line() const {
        return branch_id + " " + to_string(rule) + " " + x + " " + print_concept(focus) + " -> " +
               delta;
    }
};

struct Verdict {
    bool satisfiable = false;
    std::optional<Interpretation> model;    // canonical model, present iff satisfiable
    std::optional<ABox> final_abox;         // the complete clash-free ABox behind the model
    SearchStats stats;
    std::vector<TraceEntry> trace;
};

// Canonical interpretation of a complete and clash-free ABox: the domain is
// its individuals, concept names and roles take exactly the asserted
// extensions, the assignment is the identity.
inline Interpretation extract_model(const ABox& a) {
    if (has_clash(a)) throw HasClashError("cannot extract a model from a clashed ABox");
    if (!applicable_rules(a).empty())
        throw NotCompleteError("cannot extract a model from an incomplete ABox");
    Interpretation out;
    for (const auto& x : a.individuals()) {
        std::size_t id = out.add_element(x);
        out.assignment[x] = id;
    }
    for (const auto& [x, cs] : a.concept_assertions())
        for (const auto& c : cs)
            if (c.kind() == ConceptKind::Atom)
                out.concept_ext[c.name()].insert(out.assignment.at(x));
    for (const auto& [role, from, to] : a.role_assertion_list())
        out.role_ext[role].emplace(out.assignment.at(from), out.assignment.at(to));
    return out;
}

namespace detail {

struct Prepared {
    Concept concept0 = Concept::top();
    std::size_t m0 = 0;
    Nat outdegree_bound = 0;
};

inline Concept dnf_roles(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Atom:
        case ConceptKind::Top:
        case ConceptKind::Bottom:
            return c;
        case ConceptKind::Not:
            return Concept::negation(dnf_roles(c.child()));
        case ConceptKind::And:
            return Concept::conj(dnf_roles(c.child(0)), dnf_roles(c.child(1)));
        case ConceptKind::Or:
            return Concept::disj(dnf_roles(c.child(0)), dnf_roles(c.child(1)));
        default: {
            RoleExpr r = c.role();
            if (r.kind() == RoleKind::RoleAnd || r.kind() == RoleKind::RoleOr) r = role_dnf(r);
            Concept body = dnf_roles(c.child());
            switch (c.kind()) {
                case ConceptKind::Some: return Concept::some(r, body);
                case ConceptKind::All: return Concept::all(r, body);
                case ConceptKind::AtLeast: return Concept::at_least(c.n(), r, body);
                default: return Concept::at_most(c.n(), r, body);
            }
        }
    }
}

inline Prepared preprocess(const Concept& c0) {
    Concept c = nnf(c0);
    if (classify_fragment(c) != Fragment::AlcqComp)
        throw FragmentError("concept lies outside the decidable fragment: " + print_concept(c0));
    c = dnf_roles(c);
    Prepared p;
    Measures ms = measures(c);
    p.concept0 = c;
    p.m0 = ms.depth;
    p.outdegree_bound = Nat(ms.size_c0) * ms.max_n * Nat(ms.depth);
    return p;
}

class Search {
public:
    Search(const Prepared& prep, const SearchOptions& opts) : prep_(prep), opts_(opts) {}

    Verdict run() {
        Verdict v;
        ABox init(Individual("x0"));
        init.add_concept("x0", prep_.concept0);
        Node root;
        root.a = std::move(init);
        root.id = "b0";
        if (opts_.check_metric) root.metric = compute_metric(root.a, prep_.m0);
        stats_.branches_explored = 1;
        std::optional<ABox> model_abox = dfs(std::move(root));
        v.stats = stats_;
        v.trace = std::move(trace_);
        if (model_abox) {
            v.satisfiable = true;
            v.model = extract_model(*model_abox);
            v.final_abox = std::move(*model_abox);
        }
        return v;
    }

private:
    struct Node {
        ABox a{Individual("x0")};
        FreshNames fresh;
        std::string id;
        Metric metric;
        std::map<Individual, std::size_t> created;  // fresh individuals per creator
    };

    std::optional<ABox> dfs(Node node) {
        for (;;) {
            stats_.max_individuals = std::max(stats_.max_individuals, node.a.individual_count());
            if (has_clash(node.a)) return std::nullopt;
            std::vector<RuleInstance> insts = applicable_rules(node.a);
            if (insts.empty()) return std::move(node.a);

            const RuleInstance ri = insts.front();
            if (++stats_.rule_applications > opts_.limits.max_rule_applications)
                throw ResourceLimitError("rule application limit exceeded");
            ++stats_.applications_by_rule[static_cast<std::size_t>(ri.kind)];
            std::vector<Branch> branches = apply_rule(node.a, ri, node.fresh);

            std::vector<Metric> metrics;
            if (opts_.check_metric) {
                for (const auto& b : branches) {
                    metrics.push_back(compute_metric(b.abox, prep_.m0));
                    if (!(metrics.back() < node.metric)) ++stats_.metric_violations;
                }
            }
            std::map<Individual, std::size_t> created = node.created;
            if (opts_.audit_bounds) audit(node, ri, branches, created);
            for (const auto& b : branches)
                if (b.abox.individual_count() > opts_.limits.max_individuals)
                    throw ResourceLimitError("individual limit exceeded");

            bool deterministic = ri.kind == RuleKind::And || ri.kind == RuleKind::Geq;
            if (deterministic && branches.size() == 1) {
                if (opts_.record_trace)
                    trace_.push_back({node.id, ri.kind, ri.x, ri.assertion, branches[0].delta});
                node.created = std::move(created);
                node.a = std::move(branches[0].abox);
                node.fresh = branches[0].fresh;
                if (opts_.check_metric) node.metric = std::move(metrics[0]);
                continue;
            }
            for (std::size_t k = 0; k < branches.size(); ++k) {
                Node child;
                child.a = std::move(branches[k].abox);
                child.fresh = branches[k].fresh;
                child.id = node.id + "." + std::to_string(k);
                if (opts_.check_metric) child.metric = std::move(metrics[k]);
                child.created = created;
                ++stats_.branches_explored;
                if (opts_.record_trace)
                    trace_.push_back({child.id, ri.kind, ri.x, ri.assertion, branches[k].delta});
                std::optional<ABox> res = dfs(std::move(child));
                if (res) return res;
            }
            return std::nullopt;
        }
    }

    void audit(const Node& node, const RuleInstance& ri, const std::vector<Branch>& branches,
               std::map<Individual, std::size_t>& created) {
        for (const auto& b : branches)
            for (const auto& [x, lvl] : b.abox.levels())
                if (lvl > prep_.m0) ++stats_.level_bound_violations;
        if (ri.kind == RuleKind::Geq || ri.kind == RuleKind::GeqExt) {
            std::size_t most = 0;
            for (const auto& b : branches)
                most = std::max(most, b.abox.individual_count() - node.a.individual_count());
            std::size_t total = (created[ri.x] += most);
            if (Nat(total) > prep_.outdegree_bound) ++stats_.outdegree_bound_violations;
        }
    }

    Prepared prep_;
    SearchOptions opts_;
    SearchStats stats_;
    std::vector<TraceEntry> trace_;
};

}  // namespace detail

// Decides satisfiability of c0. Preprocessing: negation normal form, boolean
// role combinations to DNF, fragment gate. The verdict carries the canonical
// model and the final ABox when satisfiable. Throws FragmentError for
// concepts outside the decidable fragment and ResourceLimitError when a
// configured cap is hit (never reported as a verdict).
inline Verdict is_satisfiable(const Concept& c0, const SearchOptions& opts = {}) {
    detail::Prepared prep = detail::preprocess(c0);
    detail::Search search(prep, opts);
    return search.run();
}

// C is subsumed by D iff (C and not D) is unsatisfiable.
inline bool subsumes(const Concept& c, const Concept& d, const SearchOptions& opts = {}) {
    return !is_satisfiable(Concept::conj(c, Concept::negation(d)), opts).satisfiable;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct ClassifyResult {
    // Equivalence classes of the input names, members sorted, classes ordered
    // by first member.
    std::vector<std::vector<std::string>> classes;
    // Covering edges of the strict subsumption order between classes
    // (subsumee index, subsumer index), i.e. the Hasse diagram.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

inline ClassifyResult classify(const std::vector<std::pair<std::string, Concept>>& named,
                               const SearchOptions& opts = {}) {
    const std::size_t n = named.size();
    std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            below[i][j] = i == j || subsumes(named[i].second, named[j].second, opts);

    std::vector<long> cls(n, -1);
    std::vector<std::vector<std::string>> classes;
    std::vector<std::size_t> rep;
    for (std::size_t i = 0; i < n; ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = static_cast<long>(classes.size());
        classes.push_back({named[i].first});
        rep.push_back(i);
        for (std::size_t j = i + 1; j < n; ++j)
            if (cls[j] < 0 && below[i][j] && below[j][i]) {
                cls[j] = cls[i];
                classes.back().push_back(named[j].first);
            }
    }
    for (auto& c : classes) std::sort(c.begin(), c.end());

    // sort classes by first member, remapping representatives
    std::vector<std::size_t> order(classes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&classes](std::size_t a, std::size_t b) { return classes[a] < classes[b]; });
    std::vector<std::vector<std::string>> sorted_classes;
    std::vector<std::size_t> sorted_rep;
    for (std::size_t idx : order) {
        sorted_classes.push_back(std::move(classes[idx]));
        sorted_rep.push_back(rep[idx]);
    }

    ClassifyResult out;
    out.classes = std::move(sorted_classes);
    const std::size_t k = out.classes.size();
    auto strictly_below = [&](std::size_t a, std::size_t b) {
        return a != b && below[sorted_rep[a]][sorted_rep[b]] && !below[sorted_rep[b]][sorted_rep[a]];
    };
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (!strictly_below(i, j)) continue;
            bool covered = false;
            for (std::size_t z = 0; z < k && !covered; ++z)
                if (strictly_below(i, z) && strictly_below(z, j)) covered = true;
            if (!covered) out.edges.emplace_back(i, j);
        }
    return out;
}

}  // namespace alcq
