#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "widthproof/atp.hpp"
#include "widthproof/combinator.hpp"
#include "widthproof/cores.hpp"
#include "widthproof/dpcore.hpp"
#include "widthproof/itd.hpp"

namespace {

using namespace widthproof;

// Exit codes: 0 success/accept/holds, 1 reject/refuted, 2 usage or input
// error, 3 budget exhausted.
constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;
constexpr int kExitBudget = 3;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::stringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Term load_term(const std::string& path) { return parse_term(slurp(path)); }

Conjecture load_conjecture(const std::string& text, const std::string& file) {
    if (!file.empty())
        return parse_conjecture(slurp(file));
    if (text.empty())
        throw std::runtime_error("no conjecture given");
    return parse_conjecture(text);
}

std::string invariant_text(const BitString& inv) {
    if (inv.empty())
        return "undefined";
    if (inv.bit_count() <= 64 && inv.bit_count() % 8 == 0)
        return std::to_string(inv.to_integer());
    return inv.to_base64();
}

std::uint64_t default_byte_budget() {
    if (const char* env = std::getenv("WIDTHPROOF_BUDGET_BYTES"))
        return std::strtoull(env, nullptr, 10);
    return 1ull << 30;
}

int cmd_check(int k, const std::string& term_file, const std::string& conjecture,
              const std::string& conjecture_file, const std::string& format) {
    Term t = load_term(term_file);
    extract(k, t);  // rejects invalid terms, naming the failing node
    Conjecture c = load_conjecture(conjecture, conjecture_file);
    CorePtr product = c.product();
    ModelCheckResult result = model_check(*product, k, t);

    std::vector<std::pair<std::string, std::string>> parts;
    for (const CorePtr& core : c.cores) {
        ModelCheckResult r = model_check(*core, k, t);
        parts.emplace_back(core->name(),
                           std::string(r.accepted ? "accept" : "reject") +
                               " inv=" + invariant_text(r.invariant));
    }

    if (format == "json") {
        nlohmann::json out;
        out["verdict"] = result.accepted ? "accept" : "reject";
        out["cores"] = nlohmann::json::array();
        for (const auto& [name, text] : parts)
            out["cores"].push_back({{"core", name}, {"result", text}});
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (result.accepted ? "accept" : "reject") << "\n";
        for (const auto& [name, text] : parts)
            std::cout << "  " << name << ": " << text << "\n";
    }
    return result.accepted ? kExitAccept : kExitReject;
}

int cmd_prove(int k, const std::string& conjecture, const std::string& conjecture_file,
              int max_size, std::uint64_t max_pairs, std::uint64_t max_bytes,
              const std::string& refutation_out, const std::string& format) {
    Conjecture c = load_conjecture(conjecture, conjecture_file);
    CorePtr core = c.product();
    SearchBudget budget{max_pairs, max_bytes};
    ProofOutcome outcome = max_size > 0 ? bounded_inclusion_test(*core, k, max_size, budget)
                                        : inclusion_test(*core, k, budget);

    if (format == "json") {
        nlohmann::json out;
        out["width"] = k;
        out["conjecture"] = c.text;
        out["verdict"] = outcome.verdict == Verdict::Holds     ? "holds"
                         : outcome.verdict == Verdict::Refuted ? "refuted"
                                                               : "budget-exhausted";
        if (max_size > 0)
            out["max_size"] = max_size;
        out["pairs_visited"] = outcome.stats.pairs_visited;
        out["frontier_peak"] = outcome.stats.frontier_peak;
        if (outcome.counterexample) {
            out["counterexample_term"] = to_string(*outcome.counterexample);
            out["counterexample_graph"] = nlohmann::json::parse(to_json(*outcome.graph));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        if (outcome.verdict == Verdict::Holds) {
            std::cout << "HOLDS at width " << k;
            if (max_size > 0)
                std::cout << " for decompositions of size <= " << max_size;
            std::cout << "\n";
        } else if (outcome.verdict == Verdict::Refuted) {
            std::cout << "REFUTED at width " << k << "\n";
            std::cout << "counterexample term: " << to_string(*outcome.counterexample)
                      << "\n";
            std::cout << "counterexample graph: " << to_json(*outcome.graph) << "\n";
            std::cout << to_dot(*outcome.graph);
        } else {
            std::cout << "BUDGET EXHAUSTED after " << outcome.stats.pairs_visited
                      << " pairs\n";
        }
        std::cout << "pairs visited: " << outcome.stats.pairs_visited << "\n";
    }

    if (outcome.refutation && !refutation_out.empty()) {
        std::ofstream out(refutation_out);
        if (!out)
            throw std::runtime_error("cannot write '" + refutation_out + "'");
        out << refutation_to_json(*core, k, *outcome.refutation) << "\n";
    }
    switch (outcome.verdict) {
        case Verdict::Holds: return kExitAccept;
        case Verdict::Refuted: return kExitReject;
        case Verdict::BudgetExhausted: return kExitBudget;
    }
    return kExitError;
}

int cmd_extract(int k, const std::string& term_file, const std::string& format) {
    Term t = load_term(term_file);
    ExtractionResult r = extract(k, t);
    if (format == "dot") {
        std::cout << to_dot(r.graph);
    } else if (format == "json") {
        nlohmann::json out;
        out["graph"] = nlohmann::json::parse(to_json(r.graph));
        out["top_map"] = nlohmann::json::object();
        for (const auto& [label, vertex] : r.top_map)
            out["top_map"][std::to_string(label)] = vertex;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "vertices:";
        for (int v : r.graph.vertices())
            std::cout << " " << v;
        std::cout << "\nedges:";
        for (const auto& [e, ends] : r.graph.edges())
            std::cout << " " << e << ":{" << ends.first << "," << ends.second << "}";
        std::cout << "\ntop map:";
        for (const auto& [label, vertex] : r.top_map)
            std::cout << " " << label << "->" << vertex;
        std::cout << "\n";
    }
    return kExitAccept;
}

int cmd_validate(int k, const std::string& term_file) {
    Term t = load_term(term_file);
    bool ok = validate(k, t);
    std::cout << (ok ? "valid" : "invalid") << " at width " << k << "\n";
    if (ok) {
        std::cout << "width: " << term_width(t) << "\n";
        std::cout << "path decomposition: " << (is_path_decomposition(t) ? "yes" : "no")
                  << "\n";
    }
    return ok ? kExitAccept : kExitReject;
}

int cmd_enumerate(int k, int max_size, bool count_only, const std::string& format) {
    ActiveSetAutomaton automaton(k);
    std::vector<Term> terms = enumerate_accepted_terms(automaton, max_size);
    if (count_only) {
        std::cout << terms.size() << "\n";
    } else if (format == "json") {
        nlohmann::json out = nlohmann::json::array();
        for (const Term& t : terms)
            out.push_back(to_string(t));
        std::cout << out.dump() << "\n";
    } else {
        for (const Term& t : terms)
            std::cout << to_string(t) << "\n";
    }
    return kExitAccept;
}

int cmd_measure(int k, int max_size, const std::string& core_spec,
                const std::string& format) {
    CorePtr core = cores::make_core(core_spec);
    ComplexityReport report = measure_complexity(*core, k, max_size);
    if (format == "json") {
        nlohmann::json out;
        out["core"] = core->name();
        out["k"] = report.k;
        out["n"] = report.n;
        out["terms"] = report.term_count;
        out["beta"] = report.beta;
        out["mu"] = report.mu;
        out["nu"] = report.nu;
        out["delta"] = report.delta;
        out["inequalities"] = report.inequalities_hold() ? "ok" : "violated";
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "core=" << core->name() << " k=" << report.k << " n=" << report.n
                  << " terms=" << report.term_count << " beta=" << report.beta
                  << " mu=" << report.mu << " nu=" << report.nu << " delta=" << report.delta
                  << " inequalities=" << (report.inequalities_hold() ? "ok" : "violated")
                  << "\n";
    }
    return kExitAccept;
}

int cmd_convert(int k, const std::string& graph_file, const std::string& decomposition_file) {
    Multigraph g = graph_from_json(slurp(graph_file));
    NiceTreeDecomposition d = nice_decomposition_from_json(slurp(decomposition_file));
    Term t = from_nice_decomposition(g, d, k);
    std::cout << to_string(t) << "\n";
    return kExitAccept;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"width-bounded model checking and conjecture proving"};
    app.require_subcommand(1);

    int k = 0;
    std::string term_file = "-";
    std::string conjecture;
    std::string conjecture_file;
    std::string format = "text";
    std::string refutation_out;
    std::string graph_file;
    std::string decomposition_file;
    std::string core_spec;
    int max_size = 0;
    bool count_only = false;
    std::uint64_t max_pairs = 1'000'000;
    std::uint64_t max_bytes = default_byte_budget();

    auto* check = app.add_subcommand("check", "model-check a term against a conjecture");
    check->add_option("--width", k, "width parameter")->required();
    check->add_option("--term", term_file, "term file ('-' for stdin)")->required();
    check->add_option("conjecture", conjecture, "conjecture expression");
    check->add_option("--conjecture-file", conjecture_file,
                      "read the conjecture from a file");
    check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* prove = app.add_subcommand("prove", "decide a conjecture on all graphs of width k");
    prove->add_option("--width", k)->required();
    prove->add_option("conjecture", conjecture);
    prove->add_option("--conjecture-file", conjecture_file);
    prove->add_option("--max-size", max_size, "restrict to decompositions of this size");
    prove->add_option("--max-pairs", max_pairs, "search budget in pairs");
    prove->add_option("--max-bytes", max_bytes, "search budget in bytes");
    prove->add_option("--refutation-out", refutation_out, "write the refutation as JSON");
    prove->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* extract_graph =
        app.add_subcommand("extract-graph", "build the graph a term encodes");
    extract_graph->add_option("--width", k)->required();
    extract_graph->add_option("--term", term_file)->required();
    extract_graph->add_option("--format", format)
        ->check(CLI::IsMember({"text", "json", "dot"}));

    auto* validate_cmd = app.add_subcommand("validate", "check a term's validity and width");
    validate_cmd->add_option("--width", k)->required();
    validate_cmd->add_option("--term", term_file)->required();

    auto* enumerate = app.add_subcommand("enumerate", "list valid terms up to a size");
    enumerate->add_option("--width", k)->required();
    enumerate->add_option("--max-size", max_size)->required();
    enumerate->add_flag("--count-only", count_only);
    enumerate->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* measure = app.add_subcommand("measure", "empirical complexity measures of a core");
    measure->add_option("--width", k)->required();
    measure->add_option("--max-size", max_size)->required();
    measure->add_option("core", core_spec, "core spec, e.g. Colorable(2)")->required();
    measure->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* convert = app.add_subcommand("convert", "nice tree decomposition to a term");
    convert->add_option("--width", k)->required();
    convert->add_option("--graph", graph_file)->required();
    convert->add_option("--decomposition", decomposition_file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed())
            return cmd_check(k, term_file, conjecture, conjecture_file, format);
        if (prove->parsed())
            return cmd_prove(k, conjecture, conjecture_file, max_size, max_pairs, max_bytes,
                             refutation_out, format);
        if (extract_graph->parsed())
            return cmd_extract(k, term_file, format);
        if (validate_cmd->parsed())
            return cmd_validate(k, term_file);
        if (enumerate->parsed())
            return cmd_enumerate(k, max_size, count_only, format);
        if (measure->parsed())
            return cmd_measure(k, max_size, core_spec, format);
        if (convert->parsed())
            return cmd_convert(k, graph_file, decomposition_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
