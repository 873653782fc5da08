#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagvec/formal_sum.hpp"
#include "flagvec/hypergraph.hpp"
#include "flagvec/rational.hpp"
#include "flagvec/wordvector.hpp"

namespace flagvec {

using nlohmann::json;

/// Parses JSON text; malformed input becomes std::invalid_argument with
/// the parser's line/column diagnostics preserved.
inline json parse_json_text(const std::string& text,
                            const std::string& origin = "<input>") {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + origin + ": " +
                                    e.what());
    }
}

inline json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

namespace detail {

inline const json& require_field(const json& j, const char* key,
                                 const char* context) {
    auto it = j.find(key);
    if (j.is_object() && it != j.end()) return *it;
    throw std::invalid_argument(std::string(context) + ": missing field '" +
                                key + "'");
}

inline int require_int(const json& j, const char* key, const char* context) {
    const json& f = require_field(j, key, context);
    if (!f.is_number_integer())
        throw std::invalid_argument(std::string(context) + ": field '" + key +
                                    "' must be an integer");
    return f.get<int>();
}

}  // namespace detail

inline json hypergraph_to_json(const Hypergraph& g) {
    json cells = json::array();
    for (const Cell& c : g.cells()) cells.push_back(c);
    return json{{"arity", g.arity()},
                {"vertices", g.nvertices()},
                {"cells", cells}};
}

inline Hypergraph hypergraph_from_json(const json& j) {
    const char* ctx = "hypergraph";
    const int arity = detail::require_int(j, "arity", ctx);
    const int vertices = detail::require_int(j, "vertices", ctx);
    const json& jc = detail::require_field(j, "cells", ctx);
    if (!jc.is_array())
        throw std::invalid_argument("hypergraph: 'cells' must be an array");
    std::vector<Cell> cells;
    for (const json& c : jc) {
        if (!c.is_array())
            throw std::invalid_argument("hypergraph: each cell must be an array");
        Cell cell;
        for (const json& v : c) {
            if (!v.is_number_integer())
                throw std::invalid_argument(
                    "hypergraph: cell entries must be integers");
            cell.push_back(v.get<int>());
        }
        cells.push_back(std::move(cell));
    }
    return Hypergraph(arity, vertices, std::move(cells));
}

inline json formal_sum_to_json(const FormalSum& s) {
    json terms = json::array();
    for (const auto& [g, c] : s.terms())
        terms.push_back(json{{"coeff", q_to_string(c)},
                             {"graph", hypergraph_to_json(g)}});
    return json{{"terms", terms}};
}

inline FormalSum formal_sum_from_json(const json& j) {
    const json& jt = detail::require_field(j, "terms", "formal sum");
    if (!jt.is_array())
        throw std::invalid_argument("formal sum: 'terms' must be an array");
    FormalSum s;
    for (const json& t : jt) {
        const json& jc = detail::require_field(t, "coeff", "formal sum term");
        if (!jc.is_string())
            throw std::invalid_argument(
                "formal sum term: 'coeff' must be a string");
        s.add(hypergraph_from_json(
                  detail::require_field(t, "graph", "formal sum term")),
              q_from_string(jc.get<std::string>()));
    }
    return s;
}

inline json optional_spec_to_json(const OptionalSpec& spec) {
    json base = json::array(), options = json::array();
    for (const Cell& c : spec.base) base.push_back(c);
    for (const Cell& c : spec.options) options.push_back(c);
    return json{{"arity", spec.arity},
                {"vertices", spec.nvertices},
                {"base", base},
                {"options", options}};
}

inline OptionalSpec optional_spec_from_json(const json& j) {
    const char* ctx = "optional spec";
    OptionalSpec spec;
    spec.arity = detail::require_int(j, "arity", ctx);
    spec.nvertices = detail::require_int(j, "vertices", ctx);
    auto read_cells = [&](const char* key) {
        const json& jc = detail::require_field(j, key, ctx);
        if (!jc.is_array())
            throw std::invalid_argument(std::string(ctx) + ": '" + key +
                                        "' must be an array");
        std::vector<Cell> cells;
        for (const json& c : jc) cells.push_back(c.get<Cell>());
        return cells;
    };
    spec.base = read_cells("base");
    spec.options = read_cells("options");
    return spec;
}

/// Emits {"length", "alphabet", "terms"}; terms arrive word-sorted from
/// the underlying map. Generic vectors additionally carry their
/// per-position dimensions.
inline json word_vector_to_json(const WordVector& v) {
    json alphabet = json::array();
    if (v.generic()) {
        int max_dim = 0;
        for (int d : v.position_dims) max_dim = std::max(max_dim, d);
        for (int l = 0; l < max_dim; ++l)
            alphabet.push_back(std::string(1, static_cast<char>('0' + l)));
    } else {
        for (char c : v.letters) alphabet.push_back(std::string(1, c));
    }
    json terms = json::array();
    for (const auto& [w, c] : v.terms)
        terms.push_back(json{{"word", w}, {"coeff", q_to_string(c)}});
    json out{{"length", v.length}, {"alphabet", alphabet}, {"terms", terms}};
    if (v.generic()) out["position_dims"] = v.position_dims;
    return out;
}

inline WordVector word_vector_from_json(const json& j) {
    const char* ctx = "word vector";
    WordVector v;
    v.length = detail::require_int(j, "length", ctx);
    const json& ja = detail::require_field(j, "alphabet", ctx);
    if (!ja.is_array())
        throw std::invalid_argument("word vector: 'alphabet' must be an array");
    std::string letters;
    for (const json& a : ja) {
        const std::string s = a.get<std::string>();
        if (s.size() != 1)
            throw std::invalid_argument(
                "word vector: alphabet entries must be single characters");
        letters += s;
    }
    if (j.contains("position_dims")) {
        v.letters.clear();
        v.position_dims = j.at("position_dims").get<std::vector<int>>();
    } else {
        v.letters = letters;
    }
    const json& jt = detail::require_field(j, "terms", ctx);
    if (!jt.is_array())
        throw std::invalid_argument("word vector: 'terms' must be an array");
    for (const json& t : jt) {
        const json& jw = detail::require_field(t, "word", "word vector term");
        const json& jc = detail::require_field(t, "coeff", "word vector term");
        if (!jw.is_string() || !jc.is_string())
            throw std::invalid_argument(
                "word vector term: 'word' and 'coeff' must be strings");
        v.add_term(jw.get<std::string>(),
                   q_from_string(jc.get<std::string>()));
    }
    return v;
}

}  // namespace flagvec
