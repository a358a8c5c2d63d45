#pragma once

// Encoder for the domino-tiling construction: a tiling system (tile set with
// horizontal/vertical matching pairs) is compiled into concepts over atomic
// names C_ij, A_ij (0 <= i,j <= 2), tile atoms Tile_<name> and roles R, U.
// Grid centers carry a C_ij type and connect via R to the four corner points
// of their cell; a start individual reaches every center via U. The final
// concept e_d is satisfiable iff the tiling system tiles the plane, which is
// what makes satisfiability of the inverse-role fragment undecidable; the
// tableau rejects it with FragmentError.
//
// make_torus_model builds the finite 3x3-torus realization of the grid (19
// individuals) so the whole construction can be model-checked: the start
// individual lands in the extension of e_d exactly when the given torus
// tiling respects the matching pairs.
//
// Tiling file format, one item per line ('#' starts a comment):
//   tiles: D1 D2 ...
//   h: A B
//   v: A B
//   cell: i j D     (optional: fixes the torus tiling used by --model)

#include <array>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alcq/interp.hpp"
#include "alcq/normalize.hpp"
#include "alcq/syntax.hpp"

namespace alcq {

struct TilingSystem {
    std::vector<std::string> tiles;  // non-empty, unique
    std::set<std::pair<std::string, std::string>> horizontal;
    std::set<std::pair<std::string, std::string>> vertical;

    void validate() const {
        if (tiles.empty()) throw ValidationError("tiling system needs a non-empty tile set");
        std::set<std::string> seen;
        for (const auto& t : tiles)
            if (!seen.insert(t).second) throw ValidationError("duplicate tile: " + t);
        auto check = [&seen](const std::set<std::pair<std::string, std::string>>& pairs,
                             const char* which) {
            for (const auto& [a, b] : pairs) {
                if (!seen.count(a) || !seen.count(b))
                    throw ValidationError(std::string(which) + " pair references an unknown tile: " +
                                          a + " " + b);
            }
        };
        check(horizontal, "horizontal");
        check(vertical, "vertical");
    }
};

struct TorusTiling {
    std::array<std::array<std::string, 3>, 3> assignment;  // [i][j] -> tile name

    static TorusTiling uniform(const std::string& tile) {
        TorusTiling t;
        for (auto& row : t.assignment) row.fill(tile);
        return t;
    }
};

struct DominoEncoding {
    Concept c;              // partition of grid centers into the nine C_ij types
    Concept a;              // partition of grid points into the nine A_ij types
    Concept c_grid;         // grid constraints on centers
    Concept a_grid;         // grid constraints on points
    Concept c_d;            // local tiling compatibility
    Concept d_start;        // start-individual constraints
    Concept d_start_prime;  // start-individual constraints, strengthened
    Concept e_d;            // the full reduction concept (7 top-level conjuncts)
};

namespace detail {

inline int wrap3(int a) { return ((a % 3) + 3) % 3; }

inline std::string grid_center_name(int i, int j) {
    return "C_" + std::to_string(i) + std::to_string(j);
}
inline std::string grid_point_name(int i, int j) {
    return "A_" + std::to_string(i) + std::to_string(j);
}
inline std::string tile_atom_name(const std::string& tile) { return "Tile_" + tile; }

// empty conjunction is Top, empty disjunction is Bottom; folds are
// left-associated
inline Concept big_and(const std::vector<Concept>& cs) {
    if (cs.empty()) return Concept::top();
    Concept out = cs.front();
    for (std::size_t i = 1; i < cs.size(); ++i) out = Concept::conj(out, cs[i]);
    return out;
}

inline Concept big_or(const std::vector<Concept>& cs) {
    if (cs.empty()) return Concept::bottom();
    Concept out = cs.front();
    for (std::size_t i = 1; i < cs.size(); ++i) out = Concept::disj(out, cs[i]);
    return out;
}

inline Concept implies(const Concept& a, const Concept& b) {
    return Concept::disj(Concept::negation(a), b);
}

inline Concept exists(const RoleExpr& r) { return Concept::some(r, Concept::top()); }
inline Concept not_exists(const RoleExpr& r) { return nnf(Concept::negation(exists(r))); }

// one-of-nine partition: the (i,j) case conjoined with the negations of the
// other eight
inline Concept partition9(std::string (*name)(int, int)) {
    std::vector<Concept> cases;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::vector<Concept> negs;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    if (k != i || l != j) negs.push_back(Concept::negation(Concept::atom(name(k, l))));
            cases.push_back(Concept::conj(Concept::atom(name(i, j)), big_and(negs)));
        }
    return big_or(cases);
}

}  // namespace detail

inline DominoEncoding encode(const TilingSystem& ts) {
    ts.validate();
    using detail::big_and;
    using detail::big_or;
    using detail::implies;
    using detail::wrap3;

    const RoleExpr r = RoleExpr::atomic("R");
    const RoleExpr u = RoleExpr::atomic("U");
    const RoleExpr r_inv = RoleExpr::inverse(r);
    const RoleExpr u_inv = RoleExpr::inverse(u);
    auto cat = [](int i, int j) { return Concept::atom(detail::grid_center_name(i, j)); };
    auto aat = [](int i, int j) { return Concept::atom(detail::grid_point_name(i, j)); };
    auto tile = [](const std::string& t) { return Concept::atom(detail::tile_atom_name(t)); };

    DominoEncoding out{Concept::top(), Concept::top(), Concept::top(), Concept::top(),
                       Concept::top(), Concept::top(), Concept::top(), Concept::top()};
    out.c = detail::partition9(&detail::grid_center_name);
    out.a = Concept::conj(detail::partition9(&detail::grid_point_name),
                          Concept::negation(out.c));

    // grid constraints on points: each A_ij point sees the four centers of the
    // cells it is a corner of
    {
        std::vector<Concept> conjs{out.a};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                std::vector<Concept> succs{
                    Concept::some(r_inv, cat(i, j)),
                    Concept::some(r_inv, cat(wrap3(i + 2), j)),
                    Concept::some(r_inv, cat(i, wrap3(j + 2))),
                    Concept::some(r_inv, cat(wrap3(i + 2), wrap3(j + 2)))};
                conjs.push_back(implies(aat(i, j), big_and(succs)));
            }
        out.a_grid = big_and(conjs);
    }

    // grid constraints on centers: at most four corner points, at most nine
    // neighbouring centers, and the four corners of the own cell exist
    {
        std::vector<Concept> conjs{
            out.c,
            Concept::at_most(4, r, Concept::top()),
            Concept::all(r, out.a_grid),
            Concept::at_most(9, RoleExpr::chain({r, r_inv}), Concept::top())};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                std::vector<Concept> succs{
                    Concept::some(r, aat(i, j)),
                    Concept::some(r, aat(wrap3(i + 1), j)),
                    Concept::some(r, aat(i, wrap3(j + 1))),
                    Concept::some(r, aat(wrap3(i + 1), wrap3(j + 1)))};
                conjs.push_back(implies(cat(i, j), big_and(succs)));
            }
        out.c_grid = big_and(conjs);
    }

    // local compatibility: points carry exactly one tile type; the corner
    // points of a cell satisfy the horizontal/vertical matching pairs
    {
        std::vector<Concept> tile_cases;
        for (const auto& k : ts.tiles) {
            std::vector<Concept> negs;
            for (const auto& l : ts.tiles)
                if (l != k) negs.push_back(Concept::negation(tile(l)));
            tile_cases.push_back(Concept::conj(tile(k), big_and(negs)));
        }
        std::vector<Concept> conjs{Concept::all(r, big_or(tile_cases))};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                std::vector<Concept> per_tile;
                for (const auto& k : ts.tiles) {
                    std::vector<Concept> h_opts, v_opts;
                    for (const auto& [p, q] : ts.horizontal)
                        if (p == k) h_opts.push_back(tile(q));
                    for (const auto& [p, q] : ts.vertical)
                        if (p == k) v_opts.push_back(tile(q));
                    Concept trigger = Concept::some(r, Concept::conj(aat(i, j), tile(k)));
                    Concept consequent = Concept::conj(
                        Concept::some(r, Concept::conj(aat(wrap3(i + 1), j), big_or(h_opts))),
                        Concept::some(r, Concept::conj(aat(i, wrap3(j + 1)), big_or(v_opts))));
                    per_tile.push_back(implies(trigger, consequent));
                }
                conjs.push_back(implies(cat(i, j), big_and(per_tile)));
            }
        out.c_d = big_and(conjs);
    }

    const RoleExpr u_then_r = RoleExpr::chain({u, r});
    const RoleExpr there_and_back = RoleExpr::chain({u_then_r, RoleExpr::inverse(u_then_r)});

    out.d_start = big_and({detail::exists(u_then_r),
                           Concept::at_most(1, there_and_back, Concept::top()),
                           detail::not_exists(r_inv),
                           detail::not_exists(u_inv),
                           Concept::all(u, detail::not_exists(r_inv))});

    out.d_start_prime = big_and(
        {out.d_start,
         Concept::all(u, Concept::all(r, Concept::all(r_inv, detail::exists(u_inv)))),
         detail::not_exists(r)});

    out.e_d = big_and({detail::exists(u_then_r),
                       Concept::at_most(1, there_and_back, Concept::top()),
                       detail::not_exists(r),
                       detail::not_exists(r_inv),
                       detail::not_exists(u_inv),
                       Concept::all(u, Concept::all(r, Concept::all(r_inv, detail::exists(u_inv)))),
                       Concept::all(u, big_and({out.c_grid, out.c_d, detail::not_exists(r_inv)}))});
    return out;
}

// ---------------------------------------------------------------------------
// Translation into the inverse fragment without compositions under some/all
// ---------------------------------------------------------------------------

namespace detail {

inline Concept push_roles(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Atom:
        case ConceptKind::Top:
        case ConceptKind::Bottom:
            return c;
        case ConceptKind::Not:
            return Concept::negation(push_roles(c.child()));
        case ConceptKind::And:
            return Concept::conj(push_roles(c.child(0)), push_roles(c.child(1)));
        case ConceptKind::Or:
            return Concept::disj(push_roles(c.child(0)), push_roles(c.child(1)));
        case ConceptKind::Some:
            return Concept::some(push_inverses(c.role()), push_roles(c.child()));
        case ConceptKind::All:
            return Concept::all(push_inverses(c.role()), push_roles(c.child()));
        case ConceptKind::AtLeast:
            return Concept::at_least(c.n(), push_inverses(c.role()), push_roles(c.child()));
        case ConceptKind::AtMost:
            return Concept::at_most(c.n(), push_inverses(c.role()), push_roles(c.child()));
    }
    return c;
}

}  // namespace detail

// Pushes inverses onto atomic roles everywhere, then unfolds compositions
// under some/all into nested quantifiers. Number restrictions keep their
// (normalized) chains.
inline Concept translate_to_alcni(const Concept& c) {
    return unfold_value_restrictions(detail::push_roles(c));
}

// ---------------------------------------------------------------------------
// The 3x3 torus realization
// ---------------------------------------------------------------------------

// 19 individuals: a start s, nine centers c<ij> in C_ij, nine points a<ij> in
// A_ij carrying tile t(i,j). R connects each center to the four corners of
// its cell (indices mod 3), U connects s to every center.
inline Interpretation make_torus_model(const TilingSystem& ts, const TorusTiling& t) {
    ts.validate();
    std::set<std::string> known(ts.tiles.begin(), ts.tiles.end());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!known.count(t.assignment[i][j]))
                throw ValidationError("torus tiling uses an unknown tile: " + t.assignment[i][j]);

    Interpretation out;
    std::size_t s = out.add_element("s");
    std::array<std::array<std::size_t, 3>, 3> center{}, point{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            center[i][j] = out.add_element("c" + std::to_string(i) + std::to_string(j));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            point[i][j] = out.add_element("a" + std::to_string(i) + std::to_string(j));

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            out.concept_ext[detail::grid_center_name(i, j)].insert(center[i][j]);
            out.concept_ext[detail::grid_point_name(i, j)].insert(point[i][j]);
            out.concept_ext[detail::tile_atom_name(t.assignment[i][j])].insert(point[i][j]);
            out.role_ext["U"].emplace(s, center[i][j]);
            out.role_ext["R"].emplace(center[i][j], point[i][j]);
            out.role_ext["R"].emplace(center[i][j], point[detail::wrap3(i + 1)][j]);
            out.role_ext["R"].emplace(center[i][j], point[i][detail::wrap3(j + 1)]);
            out.role_ext["R"].emplace(center[i][j], point[detail::wrap3(i + 1)][detail::wrap3(j + 1)]);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Tiling file format
// ---------------------------------------------------------------------------

struct TilingInput {
    TilingSystem system;
    std::optional<TorusTiling> torus;  // present when cell: lines were given
};

inline TilingInput read_tiling(std::istream& is) {
    TilingInput out;
    bool saw_tiles = false;
    std::vector<std::tuple<int, int, std::string>> cells;
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
        if (kw == "tiles:") {
            std::string t;
            while (ls >> t) out.system.tiles.push_back(t);
            saw_tiles = true;
        } else if (kw == "h:" || kw == "v:") {
            std::string a, b, extra;
            if (!(ls >> a >> b) || (ls >> extra))
                fail("matching pair line must be '" + kw + " A B'");
            auto& dst = kw == "h:" ? out.system.horizontal : out.system.vertical;
            dst.emplace(a, b);
        } else if (kw == "cell:") {
            int i = -1, j = -1;
            std::string t;
            if (!(ls >> i >> j >> t) || i < 0 || i > 2 || j < 0 || j > 2)
                fail("cell line must be 'cell: i j TILE' with 0 <= i,j <= 2");
            cells.emplace_back(i, j, t);
        } else {
            fail("unknown directive: " + kw);
        }
    }
    if (!saw_tiles) throw ValidationError("tiling file declares no tiles");
    out.system.validate();
    if (!cells.empty()) {
        TorusTiling t = TorusTiling::uniform(out.system.tiles.front());
        for (const auto& [i, j, tile] : cells) t.assignment[i][j] = tile;
        out.torus = t;
    }
    return out;
}

inline TilingInput read_tiling(const std::string& text) {
    std::istringstream is(text);
    return read_tiling(is);
}

}  // namespace alcq
