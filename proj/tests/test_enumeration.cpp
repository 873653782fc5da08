#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "flagvec/enumeration.hpp"
#include "oracles.hpp"

using namespace flagvec;

TEST_CASE("all_cells lists the i-subsets in lexicographic order") {
    REQUIRE(all_cells(2, 3) ==
            std::vector<Cell>{{0, 1}, {0, 2}, {1, 2}});
    REQUIRE(all_cells(0, 5) == std::vector<Cell>{{}});
    REQUIRE(all_cells(3, 2).empty());
    REQUIRE(all_cells(1, 3) == std::vector<Cell>{{0}, {1}, {2}});
}

TEST_CASE("enumerate_graphs counts match the known family sizes") {
    const int expected_2[] = {1, 1, 2, 4, 11, 34, 156};
    for (int n = 0; n <= 6; ++n) {
        GraphFamily f = enumerate_graphs(2, n);
        INFO("n=" << n);
        REQUIRE(static_cast<int>(f.members.size()) == expected_2[n]);
        REQUIRE(f.labeled_total() ==
                1ll << (static_cast<long long>(n) * (n - 1) / 2));
    }
    for (int n = 0; n <= 5; ++n)
        REQUIRE(enumerate_graphs(1, n).members.size() ==
                static_cast<size_t>(n + 1));
    REQUIRE(enumerate_graphs(3, 4).members.size() == 5);
}

TEST_CASE("enumerate_graphs members are canonical, sorted and distinct") {
    GraphFamily f = enumerate_graphs(2, 4);
    for (size_t i = 0; i < f.members.size(); ++i) {
        REQUIRE(canonical_form(f.members[i]) == f.members[i]);
        if (i > 0) REQUIRE(f.members[i - 1] < f.members[i]);
    }
    // Pairwise non-isomorphic by the exhaustive oracle.
    for (size_t i = 0; i < f.members.size(); ++i)
        for (size_t j = i + 1; j < f.members.size(); ++j)
            REQUIRE_FALSE(oracles::is_isomorphic(f.members[i], f.members[j]));
}

TEST_CASE("class counts agree with independent labeled grouping") {
    // Group all labeled graphs by exhaustive-isomorphism, no canonical
    // forms involved.
    for (int n = 2; n <= 4; ++n) {
        const std::vector<Cell> universe = all_cells(2, n);
        std::vector<Hypergraph> reps;
        std::vector<long long> counts;
        for (unsigned mask = 0; mask < (1u << universe.size()); ++mask) {
            std::vector<Cell> cells;
            for (size_t j = 0; j < universe.size(); ++j)
                if (mask & (1u << j)) cells.push_back(universe[j]);
            Hypergraph g(2, n, std::move(cells));
            bool found = false;
            for (size_t r = 0; r < reps.size(); ++r)
                if (oracles::is_isomorphic(reps[r], g)) {
                    ++counts[r];
                    found = true;
                    break;
                }
            if (!found) {
                reps.push_back(g);
                counts.push_back(1);
            }
        }
        GraphFamily f = enumerate_graphs(2, n);
        INFO("n=" << n);
        REQUIRE(reps.size() == f.members.size());
        std::multiset<long long> got(f.labeled_counts.begin(),
                                     f.labeled_counts.end());
        std::multiset<long long> want(counts.begin(), counts.end());
        REQUIRE(got == want);
    }
}

TEST_CASE("enumerate_graphs enforces the budgets") {
    REQUIRE_THROWS_AS(enumerate_graphs(2, 13), BudgetError);
    REQUIRE_THROWS_AS(enumerate_graphs(3, 12), BudgetError);
}

TEST_CASE("cycle_union builds polygon unions") {
    Hypergraph triangle = cycle_union({3});
    REQUIRE(triangle.cells() == std::vector<Cell>{{0, 1}, {0, 2}, {1, 2}});

    Hypergraph two = cycle_union({3, 4});
    REQUIRE(two.nvertices() == 7);
    REQUIRE(two.ncells() == 7);
    for (int v = 0; v < 7; ++v) REQUIRE(two.degree(v) == 2);
    REQUIRE(component_count(two) == 2);

    REQUIRE_THROWS_AS(cycle_union({2}), std::invalid_argument);
    REQUIRE_THROWS_AS(cycle_union({3, 1}), std::invalid_argument);
}

TEST_CASE("is_1manifold detects exact degree-2 covers") {
    REQUIRE(is_1manifold(cycle_union({3})));
    REQUIRE(is_1manifold(cycle_union({3, 5})));
    REQUIRE(is_1manifold(Hypergraph::empty(2, 0)));
    REQUIRE_FALSE(is_1manifold(Hypergraph(2, 3, {{0, 1}, {1, 2}})));
    // Triangle plus an isolated vertex is not closed.
    REQUIRE_FALSE(is_1manifold(
        Hypergraph(2, 4, {{0, 1}, {0, 2}, {1, 2}})));
    REQUIRE_THROWS_AS(is_1manifold(Hypergraph::empty(1, 3)),
                      std::invalid_argument);
}

TEST_CASE("optional_cycle expands to the signed subgraph sum") {
    FormalSum s = optional_cycle(3, {0, 1, 2});
    REQUIRE(s.terms().size() == 4);
    REQUIRE(s.coefficient(Hypergraph::empty(2, 3)) == -1);
    REQUIRE(s.coefficient(Hypergraph(2, 3, {{0, 1}})) == 3);
    REQUIRE(s.coefficient(Hypergraph(2, 3, {{0, 1}, {1, 2}})) == -3);
    REQUIRE(s.coefficient(cycle_union({3})) == 1);
    REQUIRE(s.coefficient_sum() == 0);

    REQUIRE_THROWS_AS(optional_cycle(3, {0, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(optional_cycle(3, {0, 1, 1}), std::invalid_argument);
}

TEST_CASE("partition_count matches the classical sequence") {
    const long long expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30};
    for (int n = 0; n <= 9; ++n) REQUIRE(partition_count(n) == expected[n]);
}

TEST_CASE("one_manifold_classes equals enumerate-and-filter") {
    for (int n = 3; n <= 6; ++n) {
        std::vector<Hypergraph> filtered;
        for (const Hypergraph& g : enumerate_graphs(2, n).members)
            if (is_1manifold(g)) filtered.push_back(g);
        std::sort(filtered.begin(), filtered.end());
        INFO("n=" << n);
        REQUIRE(one_manifold_classes(n) == filtered);
    }
    REQUIRE(one_manifold_classes(3).size() == 1);
    REQUIRE(one_manifold_classes(6).size() == 2);   // hexagon, two triangles
    REQUIRE(one_manifold_classes(9).size() == 4);   // 9, 6+3, 5+4, 3+3+3
    REQUIRE(one_manifold_classes(2).empty());
}

TEST_CASE("component_count separates polygon unions and isolated vertices") {
    REQUIRE(component_count(cycle_union({3, 3, 4})) == 3);
    REQUIRE(component_count(Hypergraph::empty(2, 5)) == 5);
    REQUIRE(component_count(Hypergraph(3, 4, {{0, 1, 2}})) == 2);
}
