#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagvec/linalg.hpp"
#include "flagvec/rational.hpp"

namespace flagvec {

/// A rational combination of fixed-length words. Two shapes exist:
///  - closed-form: every position draws from one alphabet ("ab" or "abc");
///  - generic: position l draws from a coordinate alphabet of its own size
///    (digits), recorded in position_dims; `letters` is empty then.
struct WordVector {
    int length = 0;
    std::string letters = "ab";
    std::vector<int> position_dims;  // generic shape only
    std::map<std::string, Q> terms;

    bool generic() const { return letters.empty(); }

    bool shape_equals(const WordVector& o) const {
        return length == o.length && letters == o.letters &&
               position_dims == o.position_dims;
    }

    void add_term(const std::string& word, const Q& coeff) {
        if (static_cast<int>(word.size()) != length)
            throw std::invalid_argument("word length mismatch");
        if (coeff == 0) return;
        auto [it, inserted] = terms.emplace(word, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms.erase(it);
        }
    }

    WordVector& add_scaled(const WordVector& o, const Q& s) {
        if (!shape_equals(o))
            throw std::invalid_argument("mixed word lengths or alphabets");
        if (s == 0) return *this;
        for (const auto& [w, c] : o.terms) add_term(w, c * s);
        return *this;
    }

    WordVector& operator+=(const WordVector& o) { return add_scaled(o, 1); }

    WordVector& operator*=(const Q& s) {
        if (s == 0) {
            terms.clear();
            return *this;
        }
        for (auto& [w, c] : terms) c *= s;
        return *this;
    }

    bool is_zero() const { return terms.empty(); }

    Q coefficient(const std::string& word) const {
        auto it = terms.find(word);
        return it == terms.end() ? Q(0) : it->second;
    }

    Q coefficient_sum() const {
        Q s = 0;
        for (const auto& [w, c] : terms) s += c;
        return s;
    }

    bool operator==(const WordVector& o) const {
        return shape_equals(o) && terms == o.terms;
    }
};

/// Prepends one position to every word of `tail`: coordinate l of
/// `head_coeffs` becomes the letter for index l, scaling the tail terms.
/// The letter is taken from `alphabet` when given (closed form), else the
/// digit '0' + l (generic form).
inline WordVector tensor_prepend(const std::vector<Q>& head_coeffs,
                                 const WordVector& tail,
                                 const std::string& alphabet = {}) {
    WordVector out;
    out.length = tail.length + 1;
    out.letters = tail.letters;
    out.position_dims = tail.position_dims;
    if (tail.generic())
        out.position_dims.insert(out.position_dims.begin(),
                                 static_cast<int>(head_coeffs.size()));
    for (size_t l = 0; l < head_coeffs.size(); ++l) {
        if (head_coeffs[l] == 0) continue;
        const char letter = alphabet.empty() ? static_cast<char>('0' + l)
                                             : alphabet.at(l);
        for (const auto& [w, c] : tail.terms)
            out.add_term(letter + w, head_coeffs[l] * c);
    }
    return out;
}

/// Sorted union of the words appearing across the given vectors.
inline std::vector<std::string> word_universe(
    const std::vector<WordVector>& vectors) {
    std::map<std::string, int> seen;
    for (const WordVector& v : vectors)
        for (const auto& [w, c] : v.terms) seen[w] = 1;
    std::vector<std::string> out;
    out.reserve(seen.size());
    for (const auto& [w, x] : seen) out.push_back(w);
    return out;
}

/// One row per vector, one column per universe word. Words outside the
/// universe are an error, so callers cannot silently drop coordinates.
inline QMatrix word_matrix(const std::vector<WordVector>& vectors,
                           const std::vector<std::string>& universe) {
    std::map<std::string, size_t> index;
    for (size_t j = 0; j < universe.size(); ++j) index[universe[j]] = j;
    QMatrix m(vectors.size(), universe.size());
    for (size_t i = 0; i < vectors.size(); ++i)
        for (const auto& [w, c] : vectors[i].terms) {
            auto it = index.find(w);
            if (it == index.end())
                throw std::invalid_argument("word outside the universe: " + w);
            m.at(i, it->second) = c;
        }
    return m;
}

/// Coordinates of one vector over a word universe.
inline QVector word_coordinates(const WordVector& v,
                                const std::vector<std::string>& universe) {
    return word_matrix({v}, universe).row(0);
}

/// Human-oriented rendering like "2*aa + 2*ba"; terms in word order.
inline std::string word_vector_to_string(const WordVector& v) {
    if (v.terms.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : v.terms) {
        std::string coeff = c.get_str();
        std::string piece = (c == 1) ? w : (c == -1) ? "-" + w
                                                     : coeff + "*" + w;
        if (out.empty())
            out = piece;
        else if (!piece.empty() && piece[0] == '-')
            out += " - " + piece.substr(1);
        else
            out += " + " + piece;
    }
    return out;
}

}  // namespace flagvec
