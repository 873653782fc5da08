#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "flagvec/enumeration.hpp"
#include "flagvec/formal_sum.hpp"
#include "flagvec/hypergraph.hpp"
#include "oracles.hpp"

using namespace flagvec;

namespace {

Hypergraph random_graph(std::mt19937& rng, int arity, int n) {
    const std::vector<Cell> universe = all_cells(arity, n);
    std::vector<Cell> cells;
    for (const Cell& c : universe)
        if (rng() % 2) cells.push_back(c);
    return Hypergraph(arity, n, std::move(cells));
}

}  // namespace

TEST_CASE("construction normalizes and validates") {
    Hypergraph g(2, 3, {{2, 1}, {1, 0}});
    REQUIRE(g.cells() == std::vector<Cell>{{0, 1}, {1, 2}});
    REQUIRE(g.ncells() == 2);
    REQUIRE(g.has_cell({2, 1}));
    REQUIRE_FALSE(g.has_cell({0, 2}));
    REQUIRE(g.degree(1) == 2);
    REQUIRE(g.degree(0) == 1);

    REQUIRE_THROWS_AS(Hypergraph(2, 3, {{0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Hypergraph(2, 3, {{0, 3}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Hypergraph(2, 3, {{1, 1}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Hypergraph(2, 3, {{0, 1}, {1, 0}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(Hypergraph(-1, 3, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(Hypergraph(2, -1, {}), std::invalid_argument);
}

TEST_CASE("arity zero admits exactly the two atoms per vertex count") {
    Hypergraph bare = Hypergraph::empty(0, 0);
    Hypergraph marked(0, 0, {{}});
    REQUIRE(bare.ncells() == 0);
    REQUIRE(marked.ncells() == 1);
    REQUIRE(bare != marked);
    REQUIRE_THROWS_AS(Hypergraph(0, 1, {{}, {}}), std::invalid_argument);
}

TEST_CASE("canonicalize maps isomorphic graphs together and others apart") {
    // Two labelings of the path on 3 vertices.
    Hypergraph p1(2, 3, {{0, 1}, {1, 2}});
    Hypergraph p2(2, 3, {{0, 2}, {1, 2}});
    REQUIRE(canonical_form(p1) == canonical_form(p2));

    // The witness permutation really maps the input to the canonical form.
    CanonicalResult r = canonicalize(p2);
    REQUIRE(relabel(p2, r.permutation) == r.graph);
    // Canonicalization is idempotent.
    REQUIRE(canonical_form(r.graph) == r.graph);

    // Non-isomorphic pair with equal cell counts.
    Hypergraph path4(2, 4, {{0, 1}, {1, 2}, {2, 3}});
    Hypergraph star3(2, 4, {{0, 1}, {0, 2}, {0, 3}});
    REQUIRE(canonical_form(path4) != canonical_form(star3));
    REQUIRE_FALSE(is_isomorphic(path4, star3));
    REQUIRE(is_isomorphic(p1, p2));
}

TEST_CASE("canonicalize agrees with exhaustive isomorphism search") {
    std::mt19937 rng(20240817);
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            Hypergraph a = random_graph(rng, 2, n);
            Hypergraph b = random_graph(rng, 2, n);
            INFO("n=" << n << " trial=" << trial);
            REQUIRE((canonical_form(a) == canonical_form(b)) ==
                    oracles::is_isomorphic(a, b));
        }
    }
}

TEST_CASE("canonicalize enforces the vertex budget") {
    REQUIRE_THROWS_AS(canonicalize(Hypergraph::empty(2, 13)), BudgetError);
}

TEST_CASE("link removes the chosen vertex from its cells") {
    Hypergraph triangle(2, 3, {{0, 1}, {0, 2}, {1, 2}});
    Hypergraph l = link(triangle, 0);
    REQUIRE(l.arity() == 1);
    REQUIRE(l.nvertices() == 2);
    REQUIRE(l.cells() == std::vector<Cell>{{0}, {1}});

    Hypergraph tet(3, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    Hypergraph lt = link(tet, 1);
    REQUIRE(lt.arity() == 2);
    REQUIRE(lt.nvertices() == 3);
    // Removing vertex 1 relabels 2 -> 1 and 3 -> 2.
    REQUIRE(lt.cells() == std::vector<Cell>{{0, 1}, {0, 2}, {1, 2}});

    REQUIRE_THROWS_AS(link(triangle, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(link(Hypergraph(0, 2, {{}}), 0), std::invalid_argument);
}

TEST_CASE("delete_vertex keeps the cells avoiding the vertex") {
    Hypergraph triangle(2, 3, {{0, 1}, {0, 2}, {1, 2}});
    Hypergraph d = delete_vertex(triangle, 0);
    REQUIRE(d.arity() == 2);
    REQUIRE(d.nvertices() == 2);
    REQUIRE(d.cells() == std::vector<Cell>{{0, 1}});
    REQUIRE_THROWS_AS(delete_vertex(triangle, -1), std::invalid_argument);
}

TEST_CASE("link and delete split the cell set") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const int arity = 1 + static_cast<int>(rng() % 2);
        Hypergraph g = random_graph(rng, arity, n);
        const int v = static_cast<int>(rng() % n);
        REQUIRE(link(g, v).ncells() + delete_vertex(g, v).ncells() ==
                g.ncells());
    }
}

TEST_CASE("cone adds an apex to every cell and links back to the base") {
    Hypergraph atom(0, 1, {{}});
    Hypergraph c = cone(atom);
    REQUIRE(c.arity() == 1);
    REQUIRE(c.nvertices() == 2);
    REQUIRE(c.cells() == std::vector<Cell>{{1}});

    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const int arity = static_cast<int>(rng() % 3);
        Hypergraph g = arity == 0 && (rng() % 2)
                           ? Hypergraph(0, n, {{}})
                           : random_graph(rng, arity, n);
        Hypergraph k = cone(g);
        REQUIRE(k.ncells() == g.ncells());
        REQUIRE(link(k, n) == g);
        REQUIRE(delete_vertex(k, n) == Hypergraph::empty(g.arity() + 1, n));
    }
}

TEST_CASE("glue_split partitions cells by the vertex bipartition") {
    // Two triangles sharing nothing, on 6 vertices.
    Hypergraph g(2, 6,
                 {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
    GlueSplit s = glue_split(g, {0, 1, 2});
    REQUIRE(s.inside.cells() == std::vector<Cell>{{0, 1}, {0, 2}, {1, 2}});
    REQUIRE(s.outside.cells() == std::vector<Cell>{{3, 4}, {3, 5}, {4, 5}});
    REQUIRE(s.boundary.cells() == std::vector<Cell>{{2, 3}});
    REQUIRE(s.inside.nvertices() == 6);

    REQUIRE_THROWS_AS(glue_split(g, {6}), std::invalid_argument);

    std::mt19937 rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        Hypergraph h = random_graph(rng, 2, n);
        std::vector<int> part;
        for (int v = 0; v < n; ++v)
            if (rng() % 2) part.push_back(v);
        GlueSplit split = glue_split(h, part);
        std::vector<Cell> merged = split.inside.cells();
        for (const Cell& c : split.outside.cells()) merged.push_back(c);
        for (const Cell& c : split.boundary.cells()) merged.push_back(c);
        REQUIRE(Hypergraph(2, n, std::move(merged)) == h);
    }
}

TEST_CASE("formal sums merge isomorphic terms and drop zeros") {
    Hypergraph p1(2, 3, {{0, 1}, {1, 2}});
    Hypergraph p2(2, 3, {{0, 2}, {1, 2}});
    FormalSum s;
    s.add(p1, 1);
    s.add(p2, 2);  // isomorphic relabeling merges
    REQUIRE(s.terms().size() == 1);
    REQUIRE(s.coefficient(p1) == 3);

    s.add(p2, -3);
    REQUIRE(s.is_zero());

    FormalSum t(p1, Q(1, 2));
    t *= 4;
    REQUIRE(t.coefficient(p2) == 2);

    REQUIRE_THROWS_AS(t.add(Hypergraph::empty(1, 3), 1),
                      std::invalid_argument);
}

TEST_CASE("expand_optional follows inclusion-exclusion") {
    // No optional cells: the base graph itself.
    OptionalSpec plain{2, 3, {{0, 1}}, {}};
    FormalSum s = expand_optional(plain);
    REQUIRE(s.terms().size() == 1);
    REQUIRE(s.coefficient(Hypergraph(2, 3, {{0, 1}})) == 1);

    // One optional cell: (A u c) - A.
    OptionalSpec one{2, 3, {{0, 1}}, {{1, 2}}};
    FormalSum s1 = expand_optional(one);
    REQUIRE(s1.coefficient(Hypergraph(2, 3, {{0, 1}, {1, 2}})) == 1);
    REQUIRE(s1.coefficient(Hypergraph(2, 3, {{0, 1}})) == -1);
    REQUIRE(s1.coefficient_sum() == 0);

    // Two optional cells over an empty base: signs by subset parity.
    OptionalSpec two{2, 4, {}, {{0, 1}, {2, 3}}};
    FormalSum s2 = expand_optional(two);
    REQUIRE(s2.coefficient(Hypergraph(2, 4, {{0, 1}, {2, 3}})) == 1);
    // The two singleton subsets are isomorphic classes, so they merge.
    REQUIRE(s2.coefficient(Hypergraph(2, 4, {{0, 1}})) == -2);
    REQUIRE(s2.coefficient(Hypergraph::empty(2, 4)) == 1);
    REQUIRE(s2.coefficient_sum() == 0);

    // Overlapping base and options are rejected.
    OptionalSpec overlap{2, 3, {{0, 1}}, {{1, 0}}};
    REQUIRE_THROWS_AS(expand_optional(overlap), std::invalid_argument);
}

TEST_CASE("expand_optional signed mass is 2^k before merging") {
    std::mt19937 rng(314159);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 3);
        const std::vector<Cell> universe = all_cells(2, n);
        OptionalSpec spec;
        spec.arity = 2;
        spec.nvertices = n;
        int k = 0;
        for (const Cell& c : universe) {
            const int roll = static_cast<int>(rng() % 4);
            if (roll == 0 && k < 6) {
                spec.options.push_back(c);
                ++k;
            } else if (roll == 1) {
                spec.base.push_back(c);
            }
        }
        FormalSum s = expand_optional(spec);
        Q abs_mass = 0;
        for (const auto& [g, c] : s.terms()) abs_mass += c < 0 ? Q(-c) : c;
        // Parity separates cell counts, so merging never cancels.
        REQUIRE(abs_mass == Q(1 << k));
        REQUIRE(s.coefficient_sum() == (k == 0 ? Q(1) : Q(0)));
    }
}
