#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flagvec/common.hpp"
#include "flagvec/enumeration.hpp"
#include "flagvec/formal_sum.hpp"
#include "flagvec/hypergraph.hpp"
#include "flagvec/linalg.hpp"
#include "flagvec/wordvector.hpp"

namespace flagvec {

/// Pairs of cells sharing a vertex. Distinct cells of a simple 2-graph
/// share at most one vertex, so summing C(deg v, 2) counts each pair once.
inline int adjacent_pair_count(const Hypergraph& g) {
    if (g.arity() != 2)
        throw std::invalid_argument("adjacent pair count requires arity 2");
    int total = 0;
    for (int v = 0; v < g.nvertices(); ++v) {
        const int d = g.degree(v);
        total += d * (d - 1) / 2;
    }
    return total;
}

/// Letter coefficients a removed vertex contributes, as a function of its
/// link L alone:
///   - any link on 0 vertices: the single coordinate (1);
///   - arity 0: (1, 0) without the empty cell, (0, 1) with it;
///   - arity 1 with m cells: (1, m);
///   - arity 2 with e edges and t adjacent edge pairs: (1, e, t).
/// Higher arities have no closed form here; see the quotient machinery.
inline std::vector<Q> link_contribution(const Hypergraph& link_graph) {
    if (link_graph.arity() >= 1 && link_graph.nvertices() == 0)
        return {Q(1)};
    switch (link_graph.arity()) {
        case 0:
            return link_graph.ncells() == 0 ? std::vector<Q>{Q(1), Q(0)}
                                            : std::vector<Q>{Q(0), Q(1)};
        case 1:
            return {Q(1), Q(link_graph.ncells())};
        case 2:
            return {Q(1), Q(link_graph.ncells()),
                    Q(adjacent_pair_count(link_graph))};
        default:
            throw std::invalid_argument(
                "no closed-form letter rule for links of arity " +
                std::to_string(link_graph.arity()));
    }
}

namespace detail {

inline std::unordered_map<std::string, WordVector>& flag_memo() {
    static std::unordered_map<std::string, WordVector> memo;
    return memo;
}

inline std::mutex& flag_mutex() {
    static std::mutex m;
    return m;
}

inline WordVector flag_rec(const Hypergraph& canonical, const std::string& letters);

inline WordVector flag_of_canonical(const Hypergraph& canonical,
                                    const std::string& letters) {
    const std::string key = canonical.encoding();
    {
        std::lock_guard<std::mutex> lock(flag_mutex());
        auto it = flag_memo().find(key);
        if (it != flag_memo().end()) return it->second;
    }
    WordVector result = flag_rec(canonical, letters);
    std::lock_guard<std::mutex> lock(flag_mutex());
    flag_memo().emplace(key, result);
    return result;
}

inline WordVector flag_rec(const Hypergraph& canonical,
                           const std::string& letters) {
    WordVector out;
    out.length = canonical.nvertices();
    out.letters = letters;
    if (canonical.nvertices() == 0) {
        out.add_term("", 1);
        return out;
    }
    for (int v = 0; v < canonical.nvertices(); ++v) {
        const std::vector<Q> head = link_contribution(link(canonical, v));
        const WordVector tail = flag_of_canonical(
            canonical_form(delete_vertex(canonical, v)), letters);
        out += tensor_prepend(head, tail, letters);
    }
    return out;
}

}  // namespace detail

/// The flag vector of a graph of arity 1, 2 or 3: the sum over all vertex
/// removal orders of the word of letter contributions, computed by the
/// one-vertex-at-a-time recursion with memoization on canonical forms.
/// Label-invariant by construction.
inline WordVector flag_vector(const Hypergraph& g) {
    if (g.arity() < 1 || g.arity() > 3)
        throw std::invalid_argument(
            "closed-form flag vectors cover arities 1..3, got arity " +
            std::to_string(g.arity()));
    const std::string letters = g.arity() <= 2 ? "ab" : "abc";
    return detail::flag_of_canonical(canonical_form(g), letters);
}

/// Linear extension to formal sums. All terms must share one vertex count;
/// the empty sum maps to the zero vector.
inline WordVector flag_vector(const FormalSum& s) {
    WordVector out;
    bool first = true;
    for (const auto& [g, c] : s.terms()) {
        WordVector f = flag_vector(g);
        if (first) {
            out.length = f.length;
            out.letters = f.letters;
            first = false;
        } else if (!out.shape_equals(f)) {
            throw std::invalid_argument("formal sum mixes vertex counts");
        }
        out.add_scaled(f, c);
    }
    return out;
}

class QuotientTable;
inline WordVector flag_vector_generic(const Hypergraph& g, QuotientTable& table);

/// The letter space attached to one (arity, vertex count) pair: flag
/// vectors of all graphs of that size, modulo the relations generated by
/// expanding a disjoint pair of optional cells over every background graph.
/// Coordinates in the quotient are read off a fixed RREF basis, so they are
/// deterministic.
struct QuotientBasis {
    int arity = 0;
    int nvertices = 0;
    std::vector<std::string> words;  // universe the bases are written over
    RrefResult span;                 // row space of all flag vectors
    RrefResult relations;            // row space of the relation vectors
    QMatrix quotient_rows;           // RREF basis of span reduced by relations
    std::vector<int> quotient_pivots;
    int dim = 0;

    /// Reduces v by the relation basis, then reads its coordinates in the
    /// quotient basis. Throws when v is not in the span of the family's
    /// flag vectors.
    QVector project(const WordVector& v) const {
        QVector x(words.size(), Q(0));
        {
            std::map<std::string, size_t> index;
            for (size_t j = 0; j < words.size(); ++j) index[words[j]] = j;
            for (const auto& [w, c] : v.terms) {
                auto it = index.find(w);
                if (it == index.end())
                    throw std::invalid_argument(
                        "vector is not in the family span: stray word " + w);
                x[it->second] = c;
            }
        }
        reduce_in_place(x, relations);

        QVector coords(static_cast<size_t>(dim), Q(0));
        QVector residue = x;
        for (int i = 0; i < dim; ++i) {
            coords[i] = residue[static_cast<size_t>(quotient_pivots[i])];
            if (coords[i] == 0) continue;
            for (size_t j = 0; j < words.size(); ++j)
                residue[j] -= coords[i] * quotient_rows.at(i, j);
        }
        for (const Q& r : residue)
            if (r != 0)
                throw std::invalid_argument(
                    "vector is not in the family span");
        return coords;
    }

private:
    static void reduce_in_place(QVector& x, const RrefResult& basis) {
        for (size_t i = 0; i < basis.rank; ++i) {
            const size_t p = static_cast<size_t>(basis.pivots[i]);
            if (x[p] == 0) continue;
            const Q f = x[p];
            for (size_t j = 0; j < x.size(); ++j)
                x[j] -= f * basis.matrix.at(i, j);
        }
    }
};

/// Lazily built table of quotient bases, keyed by (arity, vertex count).
/// Also owns the memo for generic-mode flag vectors. One table is one
/// computation context; instances are not thread-safe.
class QuotientTable {
public:
    const QuotientBasis& get(int arity, int nvertices);

    std::unordered_map<std::string, WordVector>& generic_memo() {
        return generic_memo_;
    }

private:
    std::map<std::pair<int, int>, QuotientBasis> bases_;
    std::unordered_map<std::string, WordVector> generic_memo_;
};

namespace detail {

/// Flag vector by whichever mode the arity requires.
inline WordVector flag_any(const Hypergraph& g, QuotientTable& table) {
    return g.arity() <= 3 ? flag_vector(g) : flag_vector_generic(g, table);
}

inline WordVector flag_sum_any(const FormalSum& s, QuotientTable& table) {
    WordVector out;
    bool first = true;
    for (const auto& [g, c] : s.terms()) {
        WordVector f = flag_any(g, table);
        if (first) {
            out = f;
            out.terms.clear();
            first = false;
        } else if (!out.shape_equals(f)) {
            throw std::invalid_argument("formal sum mixes vertex counts");
        }
        out.add_scaled(f, c);
    }
    return out;
}

}  // namespace detail

/// Builds the quotient basis for arity-j graphs on k vertices. Relation
/// vectors are flag vectors of expand_optional(A, {c1, c2}) over every
/// disjoint cell pair {c1, c2} and every background cell set A disjoint
/// from the pair.
inline QuotientBasis quotient_basis(int arity, int nvertices,
                                    QuotientTable& table) {
    if (arity < 1)
        throw std::invalid_argument("quotient basis requires arity >= 1");
    GraphFamily family = enumerate_graphs(arity, nvertices);

    std::vector<WordVector> flags;
    flags.reserve(family.members.size());
    for (const Hypergraph& g : family.members)
        flags.push_back(detail::flag_any(g, table));

    QuotientBasis qb;
    qb.arity = arity;
    qb.nvertices = nvertices;
    qb.words = word_universe(flags);
    qb.span = rref(word_matrix(flags, qb.words));

    const std::vector<Cell> cells = all_cells(arity, nvertices);
    std::vector<std::pair<size_t, size_t>> disjoint_pairs;
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = i + 1; j < cells.size(); ++j) {
            std::vector<int> inter;
            std::set_intersection(cells[i].begin(), cells[i].end(),
                                  cells[j].begin(), cells[j].end(),
                                  std::back_inserter(inter));
            if (inter.empty()) disjoint_pairs.emplace_back(i, j);
        }

    const size_t backgrounds =
        cells.size() >= 2 ? (1ull << (cells.size() - 2)) : 0;
    if (!disjoint_pairs.empty() &&
        disjoint_pairs.size() * backgrounds > (1ull << 16))
        throw BudgetError("quotient relation budget exceeded: " +
                          std::to_string(disjoint_pairs.size()) + " pairs x 2^" +
                          std::to_string(cells.size() - 2) + " backgrounds");

    std::vector<WordVector> relation_rows;
    for (const auto& [i, j] : disjoint_pairs) {
        std::vector<Cell> others;
        for (size_t t = 0; t < cells.size(); ++t)
            if (t != i && t != j) others.push_back(cells[t]);
        for (unsigned long long mask = 0; mask < (1ull << others.size());
             ++mask) {
            OptionalSpec spec;
            spec.arity = arity;
            spec.nvertices = nvertices;
            spec.options = {cells[i], cells[j]};
            for (size_t t = 0; t < others.size(); ++t)
                if (mask & (1ull << t)) spec.base.push_back(others[t]);
            WordVector rel =
                detail::flag_sum_any(expand_optional(spec), table);
            if (!rel.is_zero()) relation_rows.push_back(std::move(rel));
        }
    }
    qb.relations = relation_rows.empty()
                       ? rref(QMatrix(0, qb.words.size()))
                       : rref(word_matrix(relation_rows, qb.words));

    // Relations are combinations of flag vectors, so they must already lie
    // in the span; the quotient dimension identity below depends on it.
    {
        QMatrix stacked = qb.span.matrix;
        for (size_t i = 0; i < qb.relations.rank; ++i)
            stacked.append_row(qb.relations.matrix.row(i));
        if (rank(stacked) != qb.span.rank)
            throw std::logic_error("relation vectors escape the family span");
    }

    QMatrix reduced(0, qb.words.size());
    for (size_t i = 0; i < qb.span.rank; ++i) {
        QVector x = qb.span.matrix.row(i);
        for (size_t r = 0; r < qb.relations.rank; ++r) {
            const size_t p = static_cast<size_t>(qb.relations.pivots[r]);
            if (x[p] == 0) continue;
            const Q f = x[p];
            for (size_t j = 0; j < x.size(); ++j)
                x[j] -= f * qb.relations.matrix.at(r, j);
        }
        reduced.append_row(std::move(x));
    }
    RrefResult reduced_rref = rref(reduced);
    qb.quotient_rows = QMatrix(0, qb.words.size());
    for (size_t i = 0; i < reduced_rref.rank; ++i)
        qb.quotient_rows.append_row(reduced_rref.matrix.row(i));
    qb.quotient_pivots = reduced_rref.pivots;
    qb.dim = static_cast<int>(reduced_rref.rank);

    if (qb.dim != static_cast<int>(qb.span.rank - qb.relations.rank))
        throw std::logic_error("quotient dimension identity violated");
    return qb;
}

/// Convenience form with a private table (arity <= 3 only needs one level).
inline QuotientBasis quotient_basis(int arity, int nvertices) {
    QuotientTable table;
    return quotient_basis(arity, nvertices, table);
}

inline const QuotientBasis& QuotientTable::get(int arity, int nvertices) {
    const auto key = std::make_pair(arity, nvertices);
    auto it = bases_.find(key);
    if (it == bases_.end())
        it = bases_.emplace(key, quotient_basis(arity, nvertices, *this)).first;
    return it->second;
}

/// Flag vector for arities beyond the closed-form letter rules: the letter
/// space of each removed link is its quotient basis, and the link
/// contribution is the projection of the link's own flag vector. Positions
/// carry their own coordinate alphabets (digits).
inline WordVector flag_vector_generic(const Hypergraph& g, QuotientTable& table) {
    if (g.arity() < 2)
        throw std::invalid_argument("generic flag vectors require arity >= 2");
    const Hypergraph canonical = canonical_form(g);
    const std::string key = canonical.encoding();
    auto memo_it = table.generic_memo().find(key);
    if (memo_it != table.generic_memo().end()) return memo_it->second;

    WordVector out;
    if (canonical.nvertices() == 0) {
        out.length = 0;
        out.letters.clear();
        out.add_term("", 1);
    } else {
        // Every summand has one shape: the link of each vertex keeps all
        // n-1 others, so the head alphabet is the same quotient each time.
        bool first = true;
        for (int v = 0; v < canonical.nvertices(); ++v) {
            const Hypergraph l = link(canonical, v);
            const QuotientBasis& qb = table.get(l.arity(), l.nvertices());
            if (qb.dim > 10)
                throw BudgetError("generic letter alphabet limit exceeded");
            const QVector coords = qb.project(detail::flag_any(l, table));
            const WordVector tail = flag_vector_generic(
                delete_vertex(canonical, v), table);
            WordVector term = tensor_prepend(
                std::vector<Q>(coords.begin(), coords.end()), tail, {});
            if (first) {
                out = std::move(term);
                first = false;
            } else {
                out += term;
            }
        }
    }
    table.generic_memo().emplace(key, out);
    return out;
}

/// Rank of the span of the flag vectors of all arity-j graphs on n
/// vertices.
inline size_t flag_span_rank(int arity, int nvertices) {
    GraphFamily family = enumerate_graphs(arity, nvertices);
    QuotientTable table;
    std::vector<WordVector> flags;
    for (const Hypergraph& g : family.members)
        flags.push_back(detail::flag_any(g, table));
    return rank(word_matrix(flags, word_universe(flags)));
}

struct NullspaceResult {
    GraphFamily family;            // row order of the kernel coordinates
    QMatrix kernel;                // RREF basis of the left kernel
    std::vector<FormalSum> basis;  // the same rows as formal sums
    size_t span_rank = 0;
};

namespace detail {

inline NullspaceResult nullspace_of_members(GraphFamily family) {
    QuotientTable table;
    std::vector<WordVector> flags;
    for (const Hypergraph& g : family.members)
        flags.push_back(flag_any(g, table));
    const QMatrix m = word_matrix(flags, word_universe(flags));

    NullspaceResult out;
    out.family = std::move(family);
    out.kernel = nullspace(m);
    out.span_rank = rank(m);
    for (size_t i = 0; i < out.kernel.rows(); ++i) {
        FormalSum s;
        for (size_t j = 0; j < out.family.members.size(); ++j)
            if (out.kernel.at(i, j) != 0)
                s.add(out.family.members[j], out.kernel.at(i, j));
        out.basis.push_back(std::move(s));
    }
    return out;
}

}  // namespace detail

/// Left kernel of the flag map on isomorphism classes: the combinations of
/// classes with vanishing flag vector.
inline NullspaceResult flag_nullspace(int arity, int nvertices) {
    return detail::nullspace_of_members(enumerate_graphs(arity, nvertices));
}

/// Same kernel computation restricted to closed 1-manifold classes on
/// exactly n vertices. Equals the intersection of the manifold span with
/// the flag kernel, without enumerating all 2-graphs.
inline NullspaceResult manifold_nullspace(int nvertices) {
    GraphFamily family;
    family.arity = 2;
    family.nvertices = nvertices;
    family.members = one_manifold_classes(nvertices);
    family.labeled_counts.assign(family.members.size(), 0);
    return detail::nullspace_of_members(std::move(family));
}

struct FitResult {
    bool feasible = false;
    // Nonzero word coefficients of a functional reproducing the targets.
    std::map<std::string, Q> functional;
    // Farkas certificate when infeasible: combination of family members
    // whose flag vector vanishes but whose target combination does not.
    QVector certificate;
};

/// Finds a linear functional on words that takes prescribed values on the
/// flag vectors of the given graphs, when one exists. Exact: the returned
/// functional reproduces every target with no error.
inline FitResult fit_linear_functional(const std::vector<Hypergraph>& family,
                                       const std::vector<Q>& targets) {
    if (family.size() != targets.size())
        throw std::invalid_argument("one target per family member required");
    QuotientTable table;
    std::vector<WordVector> flags;
    for (const Hypergraph& g : family) {
        flags.push_back(detail::flag_any(g, table));
        if (!flags.back().shape_equals(flags.front()))
            throw std::invalid_argument("family mixes vertex counts");
    }
    const std::vector<std::string> universe = word_universe(flags);
    const QMatrix a = word_matrix(flags, universe);
    SolveResult sol = solve(a, targets);

    FitResult out;
    out.feasible = sol.feasible();
    if (out.feasible) {
        const QVector& x = *sol.solution;
        for (size_t j = 0; j < universe.size(); ++j)
            if (x[j] != 0) out.functional[universe[j]] = x[j];
        for (size_t i = 0; i < family.size(); ++i) {
            Q acc = 0;
            for (size_t j = 0; j < universe.size(); ++j)
                acc += a.at(i, j) * x[j];
            if (acc != targets[i])
                throw std::logic_error("functional fit verification failed");
        }
    } else {
        out.certificate = *sol.certificate;
    }
    return out;
}

}  // namespace flagvec
