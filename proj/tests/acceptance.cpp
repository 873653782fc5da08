// Acceptance gate: the ten exact criteria the library must meet, one
// pass/fail line each. Every check uses rational arithmetic with zero
// tolerance; each criterion also has a wall-clock limit that is enforced.
// Exit code 0 only when all ten pass within their limits.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flagvec/claims.hpp"
#include "flagvec/enumeration.hpp"
#include "flagvec/flagvector.hpp"
#include "flagvec/shelling.hpp"
#include "oracles.hpp"

using namespace flagvec;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& what) {
        if (condition) return;
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

Hypergraph random_graph(std::mt19937& rng, int arity, int n) {
    std::vector<Cell> cells;
    for (const Cell& c : all_cells(arity, n))
        if (rng() % 2) cells.push_back(c);
    return Hypergraph(arity, n, cells);
}

std::vector<int> random_permutation(std::mt19937& rng, int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

WordVector literal(int length, std::map<std::string, Q> terms) {
    WordVector v;
    v.length = length;
    for (auto& [w, c] : terms) v.add_term(w, c);
    return v;
}

// ---------------------------------------------------------------------
// criterion 1: the three one-graph shelling vectors on two vertices

Check criterion_shelling_two_vertices() {
    Check c;
    GraphFamily fam = enumerate_graphs(1, 2);
    c.expect(fam.members.size() == 3, "expected 3 classes of 1-graphs");
    std::vector<WordVector> expected = {
        literal(2, {{"aa", Q(2)}}),
        literal(2, {{"ab", Q(1)}, {"ba", Q(1)}}),
        literal(2, {{"bb", Q(2)}}),
    };
    for (const Hypergraph& g : fam.members) {
        const WordVector w = shelling_words(g);
        bool found = false;
        for (auto it = expected.begin(); it != expected.end(); ++it)
            if (*it == w) {
                expected.erase(it);
                found = true;
                break;
            }
        c.expect(found, "unexpected vector " + word_vector_to_string(w));
    }
    c.expect(expected.empty(), "a documented vector was never produced");
    return c;
}

// ---------------------------------------------------------------------
// criterion 2: the two-vertex kernel identity and its generalizations

Check criterion_kernel_identity() {
    Check c;
    // Word image of G0 - 2 G1 + G2 on two vertices.
    WordVector image;
    image.length = 2;
    image.add_scaled(shelling_words(Hypergraph(1, 2, {})), Q(1));
    image.add_scaled(shelling_words(Hypergraph(1, 2, {{0}})), Q(-2));
    image.add_scaled(shelling_words(Hypergraph(1, 2, {{0}, {1}})), Q(1));
    c.expect(image == literal(2, {{"aa", Q(2)},
                                  {"ab", Q(-2)},
                                  {"ba", Q(-2)},
                                  {"bb", Q(2)}}),
             "G0 - 2G1 + G2 image mismatch");
    c.expect(image == detail::symmetric_product_words(2, 0),
             "image differs from the expanded symmetric product");

    for (int n = 2; n <= 5; ++n) {
        const KernelCheckReport rep = kernel_element_check(n);
        c.expect(rep.pass, "kernel check failed at n=" + std::to_string(n));
        c.expect(rep.kernel_dim == n - 1,
                 "kernel dimension at n=" + std::to_string(n) + " is " +
                     std::to_string(rep.kernel_dim));
    }
    return c;
}

// ---------------------------------------------------------------------
// criterion 3: the alternating three-vertex relation

Check criterion_three_vertex_relation() {
    Check c;
    GraphFamily fam = enumerate_graphs(2, 3);
    c.expect(fam.members.size() == 4, "expected 4 classes");
    for (size_t m = 0; m < fam.members.size(); ++m)
        c.expect(fam.members[m].ncells() == static_cast<int>(m),
                 "members are not in cell-count order");

    const std::vector<Q> coeffs{Q(1), Q(-3), Q(3), Q(-1)};
    FormalSum combo;
    for (size_t m = 0; m < 4; ++m) combo.add(fam.members[m], coeffs[m]);
    c.expect(flag_vector(combo).is_zero(), "fA - 3fB + 3fC - fD != 0");

    const Hypergraph one_edge = fam.members[1];
    const WordVector fb = flag_vector(one_edge);
    c.expect(fb == literal(3, {{"aaa", Q(6)}, {"baa", Q(4)}, {"aba", Q(2)}}),
             "fB literal mismatch");
    c.expect(fb == oracles::flag_vector(one_edge),
             "fB differs from the removal-order oracle");
    return c;
}

// ---------------------------------------------------------------------
// criterion 4: optional cycles vanish for lengths 3..5 in n <= 6

Check criterion_optional_cycles() {
    Check c;
    int checked = 0;
    for (int len = 3; len <= 5; ++len)
        for (int n = len; n <= 6; ++n)
            for (const Cell& subset : all_cells(len, n))
                for (const std::vector<int>& cyc :
                     detail::distinct_cycles(subset)) {
                    ++checked;
                    if (!flag_vector(optional_cycle(n, cyc)).is_zero())
                        c.expect(false, "nonzero image at n=" +
                                            std::to_string(n));
                }
    c.expect(checked > 0, "no embeddings were generated");
    c.detail = c.ok ? std::to_string(checked) + " embeddings" : c.detail;
    return c;
}

// ---------------------------------------------------------------------
// criterion 5: flag span ranks follow the partition numbers

Check criterion_partition_ranks() {
    Check c;
    const std::vector<size_t> expected = {1, 2, 3, 5, 7};
    for (int n = 1; n <= 5; ++n) {
        const size_t r = flag_span_rank(2, n);
        c.expect(r == expected[static_cast<size_t>(n - 1)],
                 "rank at n=" + std::to_string(n) + " is " +
                     std::to_string(r));
    }
    return c;
}

// ---------------------------------------------------------------------
// criterion 6: the eleven four-vertex classes span a 4-polytope

Check criterion_four_vertex_polytope() {
    Check c;
    GraphFamily fam = enumerate_graphs(2, 4);
    c.expect(fam.members.size() == 11, "expected 11 classes");

    std::vector<WordVector> flags;
    for (const Hypergraph& g : fam.members) flags.push_back(flag_vector(g));
    for (size_t i = 0; i < flags.size(); ++i)
        for (size_t j = i + 1; j < flags.size(); ++j)
            c.expect(!(flags[i] == flags[j]), "flag vectors collide");

    const std::vector<std::string> universe = word_universe(flags);
    std::vector<QVector> points;
    for (const WordVector& f : flags)
        points.push_back(word_coordinates(f, universe));
    c.expect(affine_dim(points) == 4, "affine dimension is not 4");

    for (size_t i = 0; i < points.size(); ++i) {
        std::vector<QVector> others;
        for (size_t j = 0; j < points.size(); ++j)
            if (j != i) others.push_back(points[j]);
        c.expect(hull_vertex_test(points[i], others),
                 "class " + std::to_string(i) + " is not a hull vertex");
    }
    return c;
}

// ---------------------------------------------------------------------
// criterion 7: component count is a linear functional, n = 3..9

Check criterion_component_functional() {
    Check c;
    for (int n = 3; n <= 9; ++n) {
        const std::vector<Hypergraph> family = one_manifold_classes(n);
        c.expect(!family.empty(), "no 1-manifolds at n=" + std::to_string(n));
        std::vector<Q> targets;
        for (const Hypergraph& g : family)
            targets.emplace_back(component_count(g));
        const FitResult fit = fit_linear_functional(family, targets);
        c.expect(fit.feasible, "no functional at n=" + std::to_string(n));
        if (!fit.feasible) continue;
        for (size_t i = 0; i < family.size(); ++i) {
            Q acc = 0;
            for (const auto& [w, coeff] : flag_vector(family[i]).terms) {
                auto it = fit.functional.find(w);
                if (it != fit.functional.end()) acc += it->second * coeff;
            }
            c.expect(acc == targets[i],
                     "inexact reproduction at n=" + std::to_string(n));
        }
    }
    return c;
}

// ---------------------------------------------------------------------
// criterion 8: quotient dimensions and the three spanning functionals

Check criterion_quotient_dimensions() {
    Check c;
    for (int k = 2; k <= 6; ++k) {
        const int d = quotient_basis(1, k).dim;
        c.expect(d == 2, "dim(1," + std::to_string(k) + ") = " +
                             std::to_string(d));
    }
    c.expect(quotient_basis(2, 3).dim == 3, "dim(2,3) != 3");

    for (int k = 4; k <= 5; ++k) {
        const QuotientBasis qb = quotient_basis(2, k);
        c.expect(qb.dim == 3,
                 "dim(2," + std::to_string(k) + ") = " + std::to_string(qb.dim));

        // The functionals 1 / cell count / adjacent pairs descend to the
        // quotient and stay independent there.
        GraphFamily fam = enumerate_graphs(2, k);
        std::vector<WordVector> flags;
        for (const Hypergraph& g : fam.members)
            flags.push_back(flag_vector(g));
        QMatrix a = word_matrix(flags, qb.words);
        for (size_t i = 0; i < qb.relations.rank; ++i)
            a.append_row(qb.relations.matrix.row(i));

        QMatrix values(fam.members.size(), 3);
        for (size_t i = 0; i < fam.members.size(); ++i) {
            values.at(i, 0) = 1;
            values.at(i, 1) = fam.members[i].ncells();
            values.at(i, 2) = adjacent_pair_count(fam.members[i]);
        }
        for (size_t col = 0; col < 3; ++col) {
            QVector rhs(a.rows(), Q(0));
            for (size_t i = 0; i < fam.members.size(); ++i)
                rhs[i] = values.at(i, col);
            c.expect(solve(a, rhs).feasible(),
                     "functional " + std::to_string(col) +
                         " does not descend at k=" + std::to_string(k));
        }
        c.expect(rank(values) == 3,
                 "functionals are dependent at k=" + std::to_string(k));
    }
    return c;
}

// ---------------------------------------------------------------------
// criterion 9: subset recursion equals the removal-order oracle

Check criterion_oracle_equivalence() {
    Check c;
    for (int n = 0; n <= 5; ++n)
        for (const Hypergraph& g : enumerate_graphs(2, n).members)
            c.expect(flag_vector(g) == oracles::flag_vector(g),
                     "2-graph mismatch at n=" + std::to_string(n));
    for (int n = 0; n <= 4; ++n)
        for (const Hypergraph& g : enumerate_graphs(3, n).members)
            c.expect(flag_vector(g) == oracles::flag_vector(g),
                     "3-graph mismatch at n=" + std::to_string(n));
    return c;
}

// ---------------------------------------------------------------------
// criterion 10: five exact properties, 200 seeded cases each

Check criterion_property_suite() {
    Check c;

    {   // label invariance
        std::mt19937 rng(1001);
        for (int t = 0; t < 200; ++t) {
            const int arity = 1 + static_cast<int>(rng() % 3);
            const int n = 1 + static_cast<int>(rng() % (arity == 3 ? 4 : 5));
            const Hypergraph g = random_graph(rng, arity, n);
            const Hypergraph h = relabel(g, random_permutation(rng, n));
            c.expect(flag_vector(g) == flag_vector(h),
                     "label invariance failed (case " + std::to_string(t) + ")");
        }
    }
    {   // linearity on formal sums
        std::mt19937 rng(1002);
        for (int t = 0; t < 200; ++t) {
            const int n = 2 + static_cast<int>(rng() % 3);
            const Hypergraph g = random_graph(rng, 2, n);
            const Hypergraph h = random_graph(rng, 2, n);
            const Q alpha(static_cast<int>(rng() % 9) - 4,
                          1 + static_cast<int>(rng() % 3));
            const Q beta(static_cast<int>(rng() % 9) - 4,
                         1 + static_cast<int>(rng() % 3));
            FormalSum s;
            s.add(g, alpha);
            s.add(h, beta);
            WordVector expected;
            expected.length = n;
            expected.add_scaled(flag_vector(g), alpha);
            expected.add_scaled(flag_vector(h), beta);
            const WordVector got = flag_vector(s);
            // A sum cancelling to zero maps to the shapeless zero vector.
            const bool match = s.is_zero()
                                   ? got.is_zero() && expected.is_zero()
                                   : got == expected;
            c.expect(match,
                     "linearity failed (case " + std::to_string(t) + ")");
        }
    }
    {   // last letter is always 'a'
        std::mt19937 rng(1003);
        for (int t = 0; t < 200; ++t) {
            const int arity = 2 + static_cast<int>(rng() % 2);
            const int n = 1 + static_cast<int>(rng() % 4);
            const Hypergraph g = random_graph(rng, arity, n);
            for (const auto& [w, coeff] : flag_vector(g).terms)
                c.expect(w.back() == 'a',
                         "word not ending in a (case " + std::to_string(t) + ")");
        }
    }
    {   // shelling mass of empty graphs
        std::mt19937 rng(1004);
        for (int t = 0; t < 200; ++t) {
            const int arity = 1 + static_cast<int>(rng() % 4);
            const int n = static_cast<int>(rng() % 7);
            c.expect(shelling_vector(Hypergraph(arity, n, {})).mass() ==
                         q_factorial(n),
                     "empty-graph mass failed (case " + std::to_string(t) + ")");
        }
    }
    {   // link of the cone apex restores the graph
        std::mt19937 rng(1005);
        for (int t = 0; t < 200; ++t) {
            const int arity = 1 + static_cast<int>(rng() % 3);
            const int n = static_cast<int>(rng() % 5);
            const Hypergraph g = random_graph(rng, arity, n);
            c.expect(link(cone(g), n) == g,
                     "cone round-trip failed (case " + std::to_string(t) + ")");
        }
    }
    return c;
}

struct Criterion {
    int index;
    const char* label;
    double limit_s;
    std::function<Check()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "one-graph shelling vectors on 2 vertices", 1.0,
         criterion_shelling_two_vertices},
        {2, "two-vertex kernel identity, kernel dims n-1 for n=2..5", 5.0,
         criterion_kernel_identity},
        {3, "alternating three-vertex relation and fB literal", 1.0,
         criterion_three_vertex_relation},
        {4, "optional cycles of length 3..5 vanish in n<=6", 10.0,
         criterion_optional_cycles},
        {5, "flag span ranks 1,2,3,5,7 for n=1..5", 30.0,
         criterion_partition_ranks},
        {6, "eleven 4-vertex classes form a 4-polytope vertex set", 30.0,
         criterion_four_vertex_polytope},
        {7, "component-count functional exact for n=3..9", 60.0,
         criterion_component_functional},
        {8, "quotient dims (1,k)=2, (2,3..5)=3 with spanning functionals",
         60.0, criterion_quotient_dimensions},
        {9, "flag recursion equals removal-order oracle", 60.0,
         criterion_oracle_equivalence},
        {10, "five exact properties, 200 seeded cases each", 30.0,
         criterion_property_suite},
    };

    int failed = 0;
    for (const Criterion& cr : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check c;
        try {
            c = cr.run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        const bool in_time = elapsed <= cr.limit_s;
        const bool pass = c.ok && in_time;
        if (!pass) ++failed;
        std::printf("[%s] criterion %2d: %s (%.2f s, limit %.0f s)%s%s\n",
                    pass ? "PASS" : "FAIL", cr.index, cr.label, elapsed,
                    cr.limit_s,
                    c.detail.empty() ? "" : " -- ",
                    c.detail.c_str());
    }
    if (failed == 0)
        std::printf("all %zu criteria passed\n", criteria.size());
    else
        std::printf("%d of %zu criteria FAILED\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
