#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flagvec/flagvector.hpp"
#include "flagvec/hypergraph.hpp"
#include "flagvec/linalg.hpp"
#include "flagvec/rational.hpp"
#include "flagvec/wordvector.hpp"

namespace flagvec {

/// A rational combination of shelling expressions, keyed by their
/// canonical serialization. An expression is either an atom ("a" or "b",
/// the two 0-graphs) or a bracket "[e1,...,eN]" whose entries are the
/// serialized summands contributed by each removed vertex in order.
struct ShellingSum {
    std::map<std::string, Q> terms;

    void add_term(const std::string& expr, const Q& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms.emplace(expr, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms.erase(it);
        }
    }

    Q mass() const {
        Q s = 0;
        for (const auto& [e, c] : terms) s += c;
        return s;
    }

    bool operator==(const ShellingSum&) const = default;
};

/// Canonical rendering: terms in expression order, coefficient 1 elided,
/// "p/q" form otherwise, joined with " + " / " - ". Used both for display
/// and as the serialization spliced into parent brackets, so it must be
/// deterministic.
inline std::string to_string(const ShellingSum& s) {
    if (s.terms.empty()) return "0";
    std::string out;
    for (const auto& [expr, coeff] : s.terms) {
        const bool negative = coeff < 0;
        const Q abs_coeff = negative ? Q(-coeff) : coeff;
        std::string piece =
            abs_coeff == 1 ? expr : abs_coeff.get_str() + "*" + expr;
        if (out.empty())
            out = negative ? "-" + piece : piece;
        else
            out += (negative ? " - " : " + ") + piece;
    }
    return out;
}

namespace detail {

// Wraps a child sum and an existing tail bracket "[...]" into the bracket
// with the child prepended. Works on serializations directly, so no
// parsing is ever needed.
inline std::string splice_bracket(const std::string& child,
                                  const std::string& tail_bracket) {
    if (tail_bracket == "[]") return "[" + child + "]";
    return "[" + child + "," + tail_bracket.substr(1);
}

inline std::unordered_map<std::string, ShellingSum>& shelling_memo() {
    static std::unordered_map<std::string, ShellingSum> memo;
    return memo;
}

inline std::unordered_map<std::string, ShellingSum>& expanded_memo() {
    static std::unordered_map<std::string, ShellingSum> memo;
    return memo;
}

inline std::mutex& shelling_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace detail

/// The shelling vector: the sum over all vertex removal orders of the
/// bracket of link contributions. 0-graphs are the atoms "a"/"b"; a graph
/// on N vertices yields a sum of total coefficient mass N!. Each bracket
/// entry is the complete (already summed) shelling vector of the link, so
/// the result matches the nested display form.
inline ShellingSum shelling_vector(const Hypergraph& g) {
    if (g.arity() == 0) {
        ShellingSum s;
        s.add_term(g.ncells() == 0 ? "a" : "b", 1);
        return s;
    }
    const Hypergraph canonical = canonical_form(g);
    const std::string key = canonical.encoding();
    {
        std::lock_guard<std::mutex> lock(detail::shelling_mutex());
        auto it = detail::shelling_memo().find(key);
        if (it != detail::shelling_memo().end()) return it->second;
    }

    ShellingSum out;
    if (canonical.nvertices() == 0) {
        out.add_term("[]", 1);
    } else {
        for (int v = 0; v < canonical.nvertices(); ++v) {
            const std::string child =
                to_string(shelling_vector(link(canonical, v)));
            const ShellingSum tail =
                shelling_vector(delete_vertex(canonical, v));
            for (const auto& [expr, coeff] : tail.terms)
                out.add_term(detail::splice_bracket(child, expr), coeff);
        }
    }
    std::lock_guard<std::mutex> lock(detail::shelling_mutex());
    detail::shelling_memo().emplace(key, out);
    return out;
}

/// Fully multilinear variant: bracket entries are single expressions, not
/// sums, so [x+y, t] is split into [x, t] + [y, t]. Rank and equality
/// questions are asked in this basis, where distinct keys really are
/// independent expressions.
inline ShellingSum shelling_vector_expanded(const Hypergraph& g) {
    if (g.arity() == 0) {
        ShellingSum s;
        s.add_term(g.ncells() == 0 ? "a" : "b", 1);
        return s;
    }
    const Hypergraph canonical = canonical_form(g);
    const std::string key = canonical.encoding();
    {
        std::lock_guard<std::mutex> lock(detail::shelling_mutex());
        auto it = detail::expanded_memo().find(key);
        if (it != detail::expanded_memo().end()) return it->second;
    }

    ShellingSum out;
    if (canonical.nvertices() == 0) {
        out.add_term("[]", 1);
    } else {
        for (int v = 0; v < canonical.nvertices(); ++v) {
            const ShellingSum child =
                shelling_vector_expanded(link(canonical, v));
            const ShellingSum tail =
                shelling_vector_expanded(delete_vertex(canonical, v));
            for (const auto& [ce, cc] : child.terms)
                for (const auto& [te, tc] : tail.terms)
                    out.add_term(detail::splice_bracket(ce, te), cc * tc);
        }
    }
    std::lock_guard<std::mutex> lock(detail::shelling_mutex());
    detail::expanded_memo().emplace(key, out);
    return out;
}

/// For arity 1 the bracket entries are bare atoms, so expressions are
/// words in disguise: "[a,b,a]" becomes the word "aba".
inline WordVector shelling_words(const Hypergraph& g) {
    if (g.arity() != 1)
        throw std::invalid_argument("word flattening requires arity 1");
    const ShellingSum s = shelling_vector(g);
    WordVector out;
    out.length = g.nvertices();
    out.letters = "ab";
    for (const auto& [expr, coeff] : s.terms) {
        std::string word;
        for (char c : expr)
            if (c == 'a' || c == 'b') word.push_back(c);
        out.add_term(word, coeff);
    }
    return out;
}

/// Outcome of the kernel analysis for 1-graphs on n vertices. G_m is the
/// 1-graph with m marked vertices; S_j is the symmetric product with two
/// (a - b) factors, j letters b and n-2-j letters a, summed over all n!
/// factor orders.
struct KernelCheckReport {
    int n = 0;
    bool shelling_vectors_independent = false;  // the n+1 classes
    int kernel_dim = 0;                         // of the letter-count map
    int expected_kernel_dim = 0;                // n - 1
    bool products_in_span = false;       // every S_j is a combination of G_m
    bool products_in_kernel = false;     // those combinations kill (1, m)
    bool products_span_kernel = false;   // the S_j are independent
    bool two_vertex_identity = false;    // n = 2: S_0 = f(G_0 - 2 G_1 + G_2)
    bool pass = false;
};

namespace detail {

// Symmetric product over all n! orders of the factor list; factor types:
// 0, 1 are the two (a - b) binomials, then j copies of b, then a's.
inline WordVector symmetric_product_words(int n, int j) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    WordVector out;
    out.length = n;
    out.letters = "ab";
    std::string word(n, 'a');
    do {
        // Positions of the two binomial factors in this order.
        int p0 = -1, p1 = -1;
        for (int pos = 0; pos < n; ++pos) {
            const int f = order[pos];
            if (f == 0) p0 = pos;
            if (f == 1) p1 = pos;
            word[pos] = (f >= 2 && f < 2 + j) ? 'b' : 'a';
        }
        for (int s0 = 0; s0 < 2; ++s0)
            for (int s1 = 0; s1 < 2; ++s1) {
                word[p0] = s0 ? 'b' : 'a';
                word[p1] = s1 ? 'b' : 'a';
                out.add_term(word, Q((s0 + s1) % 2 == 0 ? 1 : -1));
            }
        word[p0] = 'a';
        word[p1] = 'a';
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

}  // namespace detail

/// Checks that the symmetric products S_j realize the kernel of the
/// letter-count map on the span of the n+1 one-graph shelling vectors.
inline KernelCheckReport kernel_element_check(int n) {
    if (n < 2 || n > 8)
        throw std::invalid_argument("kernel check covers 2 <= n <= 8");

    KernelCheckReport rep;
    rep.n = n;
    rep.expected_kernel_dim = n - 1;

    std::vector<WordVector> shellings;
    for (int m = 0; m <= n; ++m) {
        std::vector<Cell> cells;
        for (int v = 0; v < m; ++v) cells.push_back({v});
        shellings.push_back(shelling_words(Hypergraph(1, n, std::move(cells))));
    }
    const std::vector<std::string> universe = word_universe(shellings);
    const QMatrix w = word_matrix(shellings, universe);
    rep.shelling_vectors_independent =
        rank(w) == static_cast<size_t>(n + 1);

    // Letter-count map G_m -> (1, m); its left kernel is the target space.
    QMatrix letter_counts(static_cast<size_t>(n + 1), 2);
    for (int m = 0; m <= n; ++m) {
        letter_counts.at(m, 0) = 1;
        letter_counts.at(m, 1) = m;
    }
    rep.kernel_dim = static_cast<int>(nullspace(letter_counts).rows());

    const QMatrix wt = w.transposed();
    QMatrix lambdas(0, static_cast<size_t>(n + 1));
    bool in_span = true, in_kernel = true;
    for (int j = 0; j <= n - 2; ++j) {
        const WordVector s = detail::symmetric_product_words(n, j);
        SolveResult sol = solve(wt, word_coordinates(s, universe));
        if (!sol.feasible()) {
            in_span = false;
            continue;
        }
        const QVector& lambda = *sol.solution;
        Q count_sum = 0, mark_sum = 0;
        for (int m = 0; m <= n; ++m) {
            count_sum += lambda[m];
            mark_sum += lambda[m] * m;
        }
        if (count_sum != 0 || mark_sum != 0) in_kernel = false;
        lambdas.append_row(lambda);
    }
    rep.products_in_span = in_span;
    rep.products_in_kernel = in_span && in_kernel;
    rep.products_span_kernel =
        in_span && rank(lambdas) == static_cast<size_t>(n - 1);

    if (n == 2) {
        WordVector expected;  // 2(a-b)(a-b) expanded
        expected.length = 2;
        expected.letters = "ab";
        expected.add_term("aa", 2);
        expected.add_term("ab", -2);
        expected.add_term("ba", -2);
        expected.add_term("bb", 2);
        WordVector image = shellings[0];
        image.add_scaled(shellings[1], -2);
        image += shellings[2];
        rep.two_vertex_identity =
            image == expected && detail::symmetric_product_words(2, 0) == expected;
    } else {
        rep.two_vertex_identity = true;
    }

    rep.pass = rep.shelling_vectors_independent &&
               rep.kernel_dim == rep.expected_kernel_dim &&
               rep.products_in_span && rep.products_in_kernel &&
               rep.products_span_kernel && rep.two_vertex_identity;
    return rep;
}

/// How well nested shelling vectors separate isomorphism classes: the rank
/// of the family's expanded shelling vectors and any equal pairs.
struct DistinguishReport {
    int arity = 0;
    int nvertices = 0;
    int class_count = 0;
    size_t expanded_rank = 0;
    bool full_rank = false;
    std::vector<std::pair<int, int>> equal_pairs;  // indices into the family
    std::vector<Hypergraph> members;
};

inline DistinguishReport distinguishes_report(int arity, int nvertices) {
    GraphFamily family = enumerate_graphs(arity, nvertices);
    DistinguishReport rep;
    rep.arity = arity;
    rep.nvertices = nvertices;
    rep.class_count = static_cast<int>(family.members.size());
    rep.members = family.members;

    std::vector<ShellingSum> expanded;
    expanded.reserve(family.members.size());
    for (const Hypergraph& g : family.members)
        expanded.push_back(shelling_vector_expanded(g));

    for (size_t i = 0; i < expanded.size(); ++i)
        for (size_t j = i + 1; j < expanded.size(); ++j)
            if (expanded[i] == expanded[j])
                rep.equal_pairs.emplace_back(static_cast<int>(i),
                                             static_cast<int>(j));

    std::map<std::string, size_t> index;
    for (const ShellingSum& s : expanded)
        for (const auto& [e, c] : s.terms)
            index.emplace(e, index.size());
    QMatrix m(expanded.size(), index.size());
    for (size_t i = 0; i < expanded.size(); ++i)
        for (const auto& [e, c] : expanded[i].terms)
            m.at(i, index.at(e)) = c;
    rep.expanded_rank = rank(m);
    rep.full_rank = rep.expanded_rank == expanded.size();
    return rep;
}

}  // namespace flagvec
