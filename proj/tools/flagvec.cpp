// Command-line front end: exact flag vectors, shelling vectors, family
// enumeration, kernel/quotient computations and the claims verifier.
//
// Exit codes: 0 success, 1 at least one verified claim failed, 2 usage or
// malformed input, 3 resource budget exhausted.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flagvec/claims.hpp"
#include "flagvec/enumeration.hpp"
#include "flagvec/flagvector.hpp"
#include "flagvec/io.hpp"
#include "flagvec/shelling.hpp"

namespace {

using flagvec::json;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot write file: " + path);
    out << text << "\n";
}

json load_input(const std::string& path) {
    return path == "-" ? flagvec::parse_json_text(
                             std::string(std::istreambuf_iterator<char>(std::cin),
                                         std::istreambuf_iterator<char>()),
                             "<stdin>")
                       : flagvec::parse_json_file(path);
}

int cmd_compute(const std::string& input, const std::string& output) {
    const json j = load_input(input);
    flagvec::WordVector result;
    if (j.contains("cells"))
        result = flagvec::flag_vector(flagvec::hypergraph_from_json(j));
    else if (j.contains("options"))
        result = flagvec::flag_vector(
            flagvec::expand_optional(flagvec::optional_spec_from_json(j)));
    else if (j.contains("terms"))
        result = flagvec::flag_vector(flagvec::formal_sum_from_json(j));
    else
        throw std::invalid_argument(
            "input is neither a hypergraph, a formal sum nor an optional "
            "spec");
    write_output(output, flagvec::word_vector_to_json(result).dump(2));
    return 0;
}

int cmd_shelling(const std::string& input, const std::string& format,
                 bool expanded, const std::string& output) {
    const json j = load_input(input);
    const flagvec::Hypergraph g = flagvec::hypergraph_from_json(j);
    const flagvec::ShellingSum s = expanded
                                       ? flagvec::shelling_vector_expanded(g)
                                       : flagvec::shelling_vector(g);
    if (format == "text") {
        write_output(output, flagvec::to_string(s));
        return 0;
    }
    json terms = json::array();
    for (const auto& [expr, coeff] : s.terms)
        terms.push_back(json{{"expr", expr},
                             {"coeff", flagvec::q_to_string(coeff)}});
    write_output(output, json{{"display", flagvec::to_string(s)},
                              {"terms", terms}}
                             .dump(2));
    return 0;
}

int cmd_enumerate(int arity, int n, const std::string& output) {
    const flagvec::GraphFamily fam = flagvec::enumerate_graphs(arity, n);
    std::cout << fam.members.size() << " isomorphism classes of arity-"
              << arity << " graphs on " << n << " vertices ("
              << fam.labeled_total() << " labeled graphs)\n";
    if (!output.empty()) {
        json members = json::array();
        for (size_t i = 0; i < fam.members.size(); ++i) {
            json entry = flagvec::hypergraph_to_json(fam.members[i]);
            entry["labeled_count"] = fam.labeled_counts[i];
            members.push_back(std::move(entry));
        }
        write_output(output, members.dump(2));
    }
    return 0;
}

int cmd_rank(int arity, int n) {
    std::cout << flagvec::flag_span_rank(arity, n) << "\n";
    return 0;
}

int cmd_nullspace(int arity, int n, bool manifold,
                  const std::string& output) {
    const flagvec::NullspaceResult r =
        manifold ? flagvec::manifold_nullspace(n)
                 : flagvec::flag_nullspace(arity, n);
    json basis = json::array();
    for (const flagvec::FormalSum& s : r.basis)
        basis.push_back(flagvec::formal_sum_to_json(s));
    write_output(output, json{{"arity", r.family.arity},
                              {"vertices", r.family.nvertices},
                              {"classes", r.family.members.size()},
                              {"span_rank", r.span_rank},
                              {"kernel_dim", r.kernel.rows()},
                              {"kernel_basis", basis}}
                             .dump(2));
    return 0;
}

int cmd_quotient(int arity, int n, const std::string& output) {
    const flagvec::QuotientBasis qb = flagvec::quotient_basis(arity, n);
    json rows = json::array();
    for (size_t i = 0; i < qb.quotient_rows.rows(); ++i) {
        json row = json::object();
        for (size_t j = 0; j < qb.words.size(); ++j)
            if (qb.quotient_rows.at(i, j) != 0)
                row[qb.words[j]] =
                    flagvec::q_to_string(qb.quotient_rows.at(i, j));
        rows.push_back(std::move(row));
    }
    write_output(output,
                 json{{"arity", qb.arity},
                      {"vertices", qb.nvertices},
                      {"span_rank", qb.span.rank},
                      {"relation_rank", qb.relations.rank},
                      {"dim", qb.dim},
                      {"basis", rows}}
                     .dump(2));
    return 0;
}

int cmd_fit_components(const std::vector<int>& ns, const std::string& output) {
    json table = json::array();
    bool all_feasible = true;
    for (int n : ns) {
        const std::vector<flagvec::Hypergraph> family =
            flagvec::one_manifold_classes(n);
        std::vector<flagvec::Q> targets;
        for (const flagvec::Hypergraph& g : family)
            targets.emplace_back(flagvec::component_count(g));
        const flagvec::FitResult fit =
            flagvec::fit_linear_functional(family, targets);
        all_feasible = all_feasible && fit.feasible;
        json functional = json::object();
        for (const auto& [w, c] : fit.functional)
            functional[w] = flagvec::q_to_string(c);
        table.push_back(json{{"n", n},
                             {"classes", family.size()},
                             {"feasible", fit.feasible},
                             {"functional", functional}});
    }
    write_output(output, json{{"fits", table}}.dump(2));
    return all_feasible ? 0 : 1;
}

std::string format_report_table(const std::vector<flagvec::ClaimReport>& reports) {
    size_t width = 0;
    for (const auto& r : reports) width = std::max(width, r.id.size());
    std::string out;
    for (const auto& r : reports) {
        std::string line = r.id;
        line.resize(width + 2, ' ');
        line += flagvec::claim_status_name(r.status);
        char ms[32];
        std::snprintf(ms, sizeof(ms), "%10.1f ms", r.runtime_ms);
        line.resize(std::max(line.size(), width + 16), ' ');
        out += line + ms + "  " + r.detail + "\n";
    }
    return out;
}

int cmd_verify(const std::vector<std::string>& claims,
               const std::string& params_text, double budget,
               const std::string& format, const std::string& output) {
    std::vector<flagvec::ClaimReport> reports;
    if (claims.empty()) {
        reports = flagvec::run_all(budget);
    } else {
        const json params =
            params_text.empty()
                ? json::object()
                : flagvec::parse_json_text(params_text, "--params");
        for (const std::string& id : claims)
            reports.push_back(flagvec::run_claim(id, params));
    }

    json jreports = json::array();
    for (const auto& r : reports)
        jreports.push_back(flagvec::claim_report_to_json(r));
    if (format == "json")
        write_output(output, jreports.dump(2));
    else {
        std::cout << format_report_table(reports);
        if (!output.empty()) write_output(output, jreports.dump(2));
    }

    for (const auto& r : reports)
        if (r.status == flagvec::ClaimStatus::fail) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact shelling and flag vector toolkit"};
    app.require_subcommand(1);

    std::string input, output = "";
    std::string format = "json";
    std::string verify_format = "table";
    bool expanded = false, manifold = false;
    int arity = 2, n = 3;
    std::vector<int> ns{3, 4, 5, 6, 7, 8, 9};
    std::vector<std::string> claims;
    std::string params_text;
    double budget = 300.0;

    auto* compute = app.add_subcommand("compute", "flag vector of a graph, "
                                                  "formal sum or optional spec");
    compute->add_option("--input", input, "JSON input file, or - for stdin")
        ->required();
    compute->add_option("--output", output, "output file (default stdout)");

    auto* shelling =
        app.add_subcommand("shelling", "shelling vector of a graph");
    shelling->add_option("--input", input, "JSON input file, or - for stdin")
        ->required();
    shelling->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    shelling->add_flag("--expanded", expanded,
                       "fully multilinear bracket expansion");
    shelling->add_option("--output", output, "output file (default stdout)");

    auto* enumerate =
        app.add_subcommand("enumerate", "isomorphism classes of a family");
    enumerate->add_option("--arity", arity, "cell size")->required();
    enumerate->add_option("--n", n, "vertex count")->required();
    enumerate->add_option("--output", output, "write the family as JSON");

    auto* rank_cmd =
        app.add_subcommand("rank", "rank of the family's flag vector span");
    rank_cmd->add_option("--arity", arity, "cell size")->required();
    rank_cmd->add_option("--n", n, "vertex count")->required();

    auto* nullspace_cmd = app.add_subcommand(
        "nullspace", "kernel of the flag map on isomorphism classes");
    nullspace_cmd->add_option("--arity", arity, "cell size");
    nullspace_cmd->add_option("--n", n, "vertex count")->required();
    nullspace_cmd->add_flag("--manifold", manifold,
                            "restrict to closed 1-manifold classes");
    nullspace_cmd->add_option("--output", output, "output file");

    auto* quotient_cmd = app.add_subcommand(
        "quotient", "letter-space quotient basis for one (arity, n)");
    quotient_cmd->add_option("--arity", arity, "cell size")->required();
    quotient_cmd->add_option("--n", n, "vertex count")->required();
    quotient_cmd->add_option("--output", output, "output file");

    auto* fit = app.add_subcommand(
        "fit-components", "fit the component-count functional per size");
    fit->add_option("--ns", ns, "vertex counts")->expected(-1);
    fit->add_option("--output", output, "output file");

    auto* verify = app.add_subcommand("verify", "run claims");
    verify->add_option("--claim", claims,
                       "claim id (repeatable; default: the whole catalog)");
    verify->add_option("--params", params_text,
                       "inline JSON parameters for the selected claims");
    verify->add_option("--budget", budget,
                       "wall-clock budget in seconds for the full catalog");
    verify->add_option("--format", verify_format, "table or json")
        ->check(CLI::IsMember({"json", "table"}));
    verify->add_option("--output", output, "write JSON reports to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (compute->parsed()) return cmd_compute(input, output);
        if (shelling->parsed())
            return cmd_shelling(input, format, expanded, output);
        if (enumerate->parsed()) return cmd_enumerate(arity, n, output);
        if (rank_cmd->parsed()) return cmd_rank(arity, n);
        if (nullspace_cmd->parsed())
            return cmd_nullspace(arity, n, manifold, output);
        if (quotient_cmd->parsed()) return cmd_quotient(arity, n, output);
        if (fit->parsed()) return cmd_fit_components(ns, output);
        if (verify->parsed())
            return cmd_verify(claims, params_text, budget, verify_format,
                              output);
    } catch (const flagvec::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
