#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "flagvec/common.hpp"

namespace flagvec {

// A cell is a strictly increasing list of vertex labels.
using Cell = std::vector<int>;

/// A simple i-uniform hypergraph on the vertex set {0, ..., n-1}.
///
/// Cells are kept sorted, both inside each cell and across the cell list, so
/// structurally equal graphs compare equal. Arity 0 is allowed: the only
/// possible cell is the empty one, giving exactly two 0-graphs per vertex
/// count (no cells, or the single empty cell).
class Hypergraph {
public:
    /// Validates and normalizes. Cells may arrive unsorted; repeated
    /// vertices inside a cell, out-of-range labels, wrong cell sizes and
    /// repeated cells are rejected.
    Hypergraph(int arity, int nvertices, std::vector<Cell> cells)
        : arity_(arity), nvertices_(nvertices), cells_(std::move(cells)) {
        if (arity_ < 0) throw std::invalid_argument("negative arity");
        if (nvertices_ < 0) throw std::invalid_argument("negative vertex count");
        for (Cell& c : cells_) {
            if (static_cast<int>(c.size()) != arity_)
                throw std::invalid_argument("cell size does not match arity");
            std::sort(c.begin(), c.end());
            for (size_t j = 0; j < c.size(); ++j) {
                if (c[j] < 0 || c[j] >= nvertices_)
                    throw std::invalid_argument("cell vertex out of range");
                if (j > 0 && c[j] == c[j - 1])
                    throw std::invalid_argument("repeated vertex in cell");
            }
        }
        std::sort(cells_.begin(), cells_.end());
        if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end())
            throw std::invalid_argument("repeated cell");
    }

    static Hypergraph empty(int arity, int nvertices) {
        return Hypergraph(arity, nvertices, {});
    }

    int arity() const { return arity_; }
    int nvertices() const { return nvertices_; }
    const std::vector<Cell>& cells() const { return cells_; }
    int ncells() const { return static_cast<int>(cells_.size()); }

    bool has_cell(const Cell& c) const {
        Cell s = c;
        std::sort(s.begin(), s.end());
        return std::binary_search(cells_.begin(), cells_.end(), s);
    }

    /// Number of cells containing v.
    int degree(int v) const {
        int d = 0;
        for (const Cell& c : cells_)
            d += std::binary_search(c.begin(), c.end(), v) ? 1 : 0;
        return d;
    }

    /// Compact byte string usable as a map key; distinct graphs get
    /// distinct encodings and lexicographic order matches operator<=>.
    std::string encoding() const {
        std::string s;
        s.reserve(2 + cells_.size() * (arity_ + 1));
        s.push_back(static_cast<char>(arity_));
        s.push_back(static_cast<char>(nvertices_));
        for (const Cell& c : cells_) {
            for (int v : c) s.push_back(static_cast<char>(v));
            s.push_back('\x7f');
        }
        return s;
    }

    bool operator==(const Hypergraph&) const = default;
    auto operator<=>(const Hypergraph&) const = default;

private:
    int arity_;
    int nvertices_;
    std::vector<Cell> cells_;
};

/// Relabels a graph by a permutation of its vertex set; perm[v] is the new
/// label of v.
inline Hypergraph relabel(const Hypergraph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.nvertices())
        throw std::invalid_argument("permutation size does not match vertex count");
    std::vector<Cell> cells;
    cells.reserve(g.cells().size());
    for (const Cell& c : g.cells()) {
        Cell d;
        d.reserve(c.size());
        for (int v : c) d.push_back(perm.at(v));
        cells.push_back(std::move(d));
    }
    return Hypergraph(g.arity(), g.nvertices(), std::move(cells));
}

struct CanonicalResult {
    Hypergraph graph;
    // Witness relabeling: relabel(input, permutation) == graph.
    std::vector<int> permutation;
};

namespace detail {

// Cells packed as 4-bit vertex labels, most significant nibble first, so
// integer order equals lexicographic order on the vertex sequence. Needs
// labels < 16 and arity <= 16, which the vertex cap guarantees.
inline uint64_t pack_cell(const int* v, int arity) {
    uint64_t key = 0;
    for (int j = 0; j < arity; ++j)
        key |= static_cast<uint64_t>(v[j]) << (4 * (15 - j));
    return key;
}

inline std::unordered_map<std::string, CanonicalResult>& canonical_memo() {
    static std::unordered_map<std::string, CanonicalResult> memo;
    return memo;
}

inline std::mutex& canonical_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace detail

/// Canonical form under vertex relabeling: the lexicographically least
/// sorted cell list over all permutations, found by exhaustive search.
/// Memoized; safe to call concurrently. Throws BudgetError above the
/// vertex budget.
inline CanonicalResult canonicalize(const Hypergraph& g) {
    const int n = g.nvertices();
    if (n > vertex_budget())
        throw BudgetError("instance too large: " + std::to_string(n) +
                          " vertices exceeds the budget of " +
                          std::to_string(vertex_budget()));

    const std::string key = g.encoding();
    {
        std::lock_guard<std::mutex> lock(detail::canonical_mutex());
        auto it = detail::canonical_memo().find(key);
        if (it != detail::canonical_memo().end()) return it->second;
    }

    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);

    CanonicalResult result{g, identity};
    if (!g.cells().empty() && n > 1) {
        const int arity = g.arity();
        const auto& cells = g.cells();
        const size_t m = cells.size();

        std::vector<int> perm = identity;
        std::vector<uint64_t> best;
        std::vector<int> best_perm;
        std::vector<uint64_t> cand(m);
        std::vector<int> buf(arity);
        do {
            for (size_t k = 0; k < m; ++k) {
                for (int j = 0; j < arity; ++j) buf[j] = perm[cells[k][j]];
                std::sort(buf.begin(), buf.end());
                cand[k] = detail::pack_cell(buf.data(), arity);
            }
            std::sort(cand.begin(), cand.end());
            if (best.empty() || cand < best) {
                best = cand;
                best_perm = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::vector<Cell> canonical_cells;
        canonical_cells.reserve(m);
        for (uint64_t packed : best) {
            Cell c(arity);
            for (int j = 0; j < arity; ++j)
                c[j] = static_cast<int>((packed >> (4 * (15 - j))) & 0xf);
            canonical_cells.push_back(std::move(c));
        }
        result = CanonicalResult{
            Hypergraph(arity, n, std::move(canonical_cells)), best_perm};
    }

    {
        std::lock_guard<std::mutex> lock(detail::canonical_mutex());
        detail::canonical_memo().emplace(key, result);
        // Seed the fixed point so canonicalize(canonical) is a cheap hit.
        detail::canonical_memo().emplace(
            result.graph.encoding(), CanonicalResult{result.graph, identity});
    }
    return result;
}

inline Hypergraph canonical_form(const Hypergraph& g) {
    return canonicalize(g).graph;
}

inline bool is_isomorphic(const Hypergraph& a, const Hypergraph& b) {
    if (a.arity() != b.arity() || a.nvertices() != b.nvertices() ||
        a.ncells() != b.ncells())
        return false;
    return canonical_form(a) == canonical_form(b);
}

namespace detail {

// Order-preserving relabeling {0..n-1} \ {v} -> {0..n-2}.
inline int drop_label(int w, int v) { return w < v ? w : w - 1; }

inline void check_vertex(const Hypergraph& g, int v) {
    if (v < 0 || v >= g.nvertices())
        throw std::invalid_argument("vertex out of range");
}

}  // namespace detail

/// Link of g at v: cells containing v, with v removed, on the remaining
/// vertices (relabeled order-preservingly). Drops the arity by one.
inline Hypergraph link(const Hypergraph& g, int v) {
    if (g.arity() == 0)
        throw std::invalid_argument("0-graphs have no links");
    detail::check_vertex(g, v);
    std::vector<Cell> cells;
    for (const Cell& c : g.cells()) {
        if (!std::binary_search(c.begin(), c.end(), v)) continue;
        Cell d;
        d.reserve(c.size() - 1);
        for (int w : c)
            if (w != v) d.push_back(detail::drop_label(w, v));
        cells.push_back(std::move(d));
    }
    return Hypergraph(g.arity() - 1, g.nvertices() - 1, std::move(cells));
}

/// Induced subgraph after removing v: cells avoiding v, on the remaining
/// vertices (relabeled order-preservingly). Keeps the arity.
inline Hypergraph delete_vertex(const Hypergraph& g, int v) {
    detail::check_vertex(g, v);
    std::vector<Cell> cells;
    for (const Cell& c : g.cells()) {
        if (std::binary_search(c.begin(), c.end(), v)) continue;
        Cell d;
        d.reserve(c.size());
        for (int w : c) d.push_back(detail::drop_label(w, v));
        cells.push_back(std::move(d));
    }
    return Hypergraph(g.arity(), g.nvertices() - 1, std::move(cells));
}

/// Cone: a fresh apex vertex n is added to every cell. Raises the arity by
/// one; link(cone(g), n) == g.
inline Hypergraph cone(const Hypergraph& g) {
    std::vector<Cell> cells;
    cells.reserve(g.cells().size());
    for (const Cell& c : g.cells()) {
        Cell d = c;
        d.push_back(g.nvertices());  // largest label, so order is kept
        cells.push_back(std::move(d));
    }
    return Hypergraph(g.arity() + 1, g.nvertices() + 1, std::move(cells));
}

struct GlueSplit {
    Hypergraph inside;    // cells supported inside the chosen vertex set
    Hypergraph outside;   // cells supported in the complement
    Hypergraph boundary;  // cells meeting both sides
};

/// Splits the cell set by the vertex bipartition (part, complement). All
/// three results live on the full original vertex set, so g is recovered by
/// taking the union of their cells.
inline GlueSplit glue_split(const Hypergraph& g, const std::vector<int>& part) {
    std::vector<char> in(g.nvertices(), 0);
    for (int v : part) {
        detail::check_vertex(g, v);
        in[v] = 1;
    }
    std::vector<Cell> inside, outside, boundary;
    for (const Cell& c : g.cells()) {
        int hits = 0;
        for (int v : c) hits += in[v];
        if (hits == static_cast<int>(c.size()))
            inside.push_back(c);
        else if (hits == 0)
            outside.push_back(c);
        else
            boundary.push_back(c);
    }
    const int a = g.arity(), n = g.nvertices();
    return GlueSplit{Hypergraph(a, n, std::move(inside)),
                     Hypergraph(a, n, std::move(outside)),
                     Hypergraph(a, n, std::move(boundary))};
}

}  // namespace flagvec
