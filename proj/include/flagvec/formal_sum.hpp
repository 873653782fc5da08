#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flagvec/common.hpp"
#include "flagvec/hypergraph.hpp"
#include "flagvec/rational.hpp"

namespace flagvec {

/// A formal rational combination of isomorphism classes of graphs of one
/// arity. Terms are keyed by canonical form, so adding a relabeled copy of
/// a graph merges with the original; zero coefficients are dropped.
class FormalSum {
public:
    FormalSum() = default;
    explicit FormalSum(const Hypergraph& g, const Q& coeff = 1) { add(g, coeff); }

    void add(const Hypergraph& g, const Q& coeff) {
        if (coeff == 0) return;
        if (arity_ < 0)
            arity_ = g.arity();
        else if (arity_ != g.arity())
            throw std::invalid_argument("formal sum mixes arities");
        Hypergraph c = canonical_form(g);
        auto [it, inserted] = terms_.emplace(std::move(c), coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    FormalSum& operator+=(const FormalSum& o) {
        for (const auto& [g, c] : o.terms_) add(g, c);
        return *this;
    }

    FormalSum& operator*=(const Q& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [g, c] : terms_) c *= s;
        return *this;
    }

    void add_scaled(const FormalSum& o, const Q& s) {
        for (const auto& [g, c] : o.terms_) add(g, c * s);
    }

    const std::map<Hypergraph, Q>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int arity() const { return arity_; }

    Q coefficient(const Hypergraph& g) const {
        auto it = terms_.find(canonical_form(g));
        return it == terms_.end() ? Q(0) : it->second;
    }

    Q coefficient_sum() const {
        Q s = 0;
        for (const auto& [g, c] : terms_) s += c;
        return s;
    }

    bool operator==(const FormalSum& o) const { return terms_ == o.terms_; }

private:
    int arity_ = -1;  // unset until the first term arrives
    std::map<Hypergraph, Q> terms_;
};

/// A graph with optional cells: mandatory cells `base`, optional cells
/// `options`, disjoint from each other as sets of cells.
struct OptionalSpec {
    int arity = 0;
    int nvertices = 0;
    std::vector<Cell> base;
    std::vector<Cell> options;
};

/// Inclusion-exclusion expansion of optional cells:
/// sum over C subseteq options of (-1)^(|options| - |C|) (base u C).
/// With k options the expansion has signed coefficient mass 2^k before
/// merging; merging cannot cancel across subsets because cell counts
/// differ between parities.
inline FormalSum expand_optional(const OptionalSpec& spec) {
    // Validate both cell lists together; the combined construction also
    // rejects base/options overlap as a repeated cell.
    std::vector<Cell> all = spec.base;
    all.insert(all.end(), spec.options.begin(), spec.options.end());
    (void)Hypergraph(spec.arity, spec.nvertices, std::move(all));

    const int k = static_cast<int>(spec.options.size());
    if (k >= 22)
        throw BudgetError("optional-cell expansion budget exceeded: " +
                          std::to_string(k) + " optional cells");

    // Normalized copies, so subset graphs can be built without re-sorting.
    const std::vector<Cell> base_cells =
        Hypergraph(spec.arity, spec.nvertices, spec.base).cells();
    const std::vector<Cell> option_cells =
        Hypergraph(spec.arity, spec.nvertices, spec.options).cells();

    FormalSum result;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<Cell> cells = base_cells;
        for (int j = 0; j < k; ++j)
            if (mask & (1u << j)) cells.push_back(option_cells[j]);
        const int sign = ((k - __builtin_popcount(mask)) % 2 == 0) ? 1 : -1;
        result.add(Hypergraph(spec.arity, spec.nvertices, std::move(cells)),
                   Q(sign));
    }
    return result;
}

}  // namespace flagvec
