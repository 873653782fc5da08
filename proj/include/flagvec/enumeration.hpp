#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagvec/common.hpp"
#include "flagvec/formal_sum.hpp"
#include "flagvec/hypergraph.hpp"

namespace flagvec {

/// All arity-element subsets of {0..n-1} in lexicographic order.
inline std::vector<Cell> all_cells(int arity, int n) {
    if (arity < 0 || n < 0) throw std::invalid_argument("negative size");
    std::vector<Cell> out;
    if (arity > n) return out;
    Cell c(arity);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        out.push_back(c);
        int j = arity - 1;
        while (j >= 0 && c[j] == n - arity + j) --j;
        if (j < 0) break;
        ++c[j];
        for (int t = j + 1; t < arity; ++t) c[t] = c[t - 1] + 1;
    }
    return out;
}

struct GraphFamily {
    int arity = 0;
    int nvertices = 0;
    std::vector<Hypergraph> members;            // canonical forms, sorted
    std::vector<long long> labeled_counts;      // labeled graphs per class
    long long labeled_total() const {
        long long t = 0;
        for (long long c : labeled_counts) t += c;
        return t;
    }
};

/// All isomorphism classes of arity-uniform graphs on n vertices, by
/// filtered exhaustive enumeration of the 2^C(n, arity) labeled graphs.
/// Throws BudgetError when that count exceeds the enumeration budget or n
/// exceeds the vertex budget.
inline GraphFamily enumerate_graphs(int arity, int n) {
    if (n > vertex_budget())
        throw BudgetError("instance too large: " + std::to_string(n) +
                          " vertices exceeds the budget of " +
                          std::to_string(vertex_budget()));
    const std::vector<Cell> universe = all_cells(arity, n);
    if (universe.size() >= 64 ||
        (1ull << universe.size()) > kMaxLabeledGraphs)
        throw BudgetError("enumeration budget exceeded: 2^" +
                          std::to_string(universe.size()) +
                          " labeled graphs");

    std::map<Hypergraph, long long> classes;
    for (unsigned long long mask = 0; mask < (1ull << universe.size());
         ++mask) {
        std::vector<Cell> cells;
        for (size_t j = 0; j < universe.size(); ++j)
            if (mask & (1ull << j)) cells.push_back(universe[j]);
        ++classes[canonical_form(Hypergraph(arity, n, std::move(cells)))];
    }

    GraphFamily fam{arity, n, {}, {}};
    for (const auto& [g, count] : classes) {
        fam.members.push_back(g);
        fam.labeled_counts.push_back(count);
    }
    return fam;
}

/// Disjoint union of polygons with the given vertex counts, each at least
/// 3, laid out on consecutive vertex blocks.
inline Hypergraph cycle_union(const std::vector<int>& lengths) {
    std::vector<Cell> cells;
    int offset = 0;
    for (int len : lengths) {
        if (len < 3)
            throw std::invalid_argument(
                "polygon needs at least 3 vertices, got " +
                std::to_string(len));
        for (int j = 0; j < len; ++j) {
            int u = offset + j, v = offset + (j + 1) % len;
            cells.push_back({std::min(u, v), std::max(u, v)});
        }
        offset += len;
    }
    return Hypergraph(2, offset, std::move(cells));
}

/// The cycle through the given vertices (in that cyclic order) on n
/// vertices, with every edge optional, expanded by inclusion-exclusion.
inline FormalSum optional_cycle(int n, const std::vector<int>& cycle) {
    const int len = static_cast<int>(cycle.size());
    if (len < 3)
        throw std::invalid_argument("cycle needs at least 3 vertices, got " +
                                    std::to_string(len));
    OptionalSpec spec;
    spec.arity = 2;
    spec.nvertices = n;
    for (int j = 0; j < len; ++j) {
        int u = cycle[j], v = cycle[(j + 1) % len];
        spec.options.push_back({std::min(u, v), std::max(u, v)});
    }
    return expand_optional(spec);
}

/// True when every vertex lies in exactly two edges, i.e. the graph is a
/// disjoint union of polygons covering all vertices.
inline bool is_1manifold(const Hypergraph& g) {
    if (g.arity() != 2)
        throw std::invalid_argument("manifold test requires arity 2");
    std::vector<int> degree(g.nvertices(), 0);
    for (const Cell& c : g.cells()) {
        ++degree[c[0]];
        ++degree[c[1]];
    }
    return std::all_of(degree.begin(), degree.end(),
                       [](int d) { return d == 2; });
}

/// Connected components of the vertex set under "shares a cell".
/// Isolated vertices count as their own components.
inline int component_count(const Hypergraph& g) {
    std::vector<int> parent(g.nvertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const Cell& c : g.cells())
        for (size_t j = 1; j < c.size(); ++j) {
            int a = find(c[0]), b = find(c[j]);
            if (a != b) parent[a] = b;
        }
    int components = 0;
    for (int v = 0; v < g.nvertices(); ++v)
        if (find(v) == v) ++components;
    return components;
}

/// Partitions of n into parts of size at least min_part, each partition
/// sorted descending, the list in lexicographically descending order.
inline std::vector<std::vector<int>> partitions_with_min_part(int n,
                                                              int min_part) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, int remaining, int cap) -> void {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (int part = std::min(cap, remaining); part >= min_part; --part) {
            if (remaining - part != 0 && remaining - part < min_part) continue;
            current.push_back(part);
            self(self, remaining - part, part);
            current.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

/// Number of partitions of n (p(0) = 1).
inline long long partition_count(int n) {
    if (n < 0) throw std::invalid_argument("negative argument");
    std::vector<long long> p(n + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int total = part; total <= n; ++total) p[total] += p[total - part];
    return p[n];
}

/// Isomorphism classes of closed 1-manifolds on exactly n vertices: one
/// polygon union per partition of n into parts >= 3. Sorted canonical
/// forms; empty for n in {1, 2}.
inline std::vector<Hypergraph> one_manifold_classes(int n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    std::vector<Hypergraph> out;
    for (const auto& partition : partitions_with_min_part(n, 3))
        out.push_back(canonical_form(cycle_union(partition)));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace flagvec
