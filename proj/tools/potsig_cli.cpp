// potsig: graphicality checks, potentially-H decisions, sigma(H, n) thresholds
// and the K4 - e verification table.
//
//   potsig check 4^1,3^5,1^1
//   potsig potential 3^6 --pattern k4e --engine both
//   potsig sigma --pattern k4e --n 6 --format json
//   potsig verify --n 4..9 --json table.json --csv table.csv

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "potsig/potsig.hpp"

namespace {

using namespace potsig;

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct RunConfig {
    std::string pattern_selector = "k4e";
    std::string pattern_file;
    std::string engine = "oracle";
    std::string n_range;
    int n = 0;
    std::optional<long> sigma_min;
    int cap = kDefaultOracleCap;
    std::string format = "text";
    bool trace = false;
    int workers = 1;
    std::string json_out;
    std::string csv_out;

    OracleConfig oracle() const { return {cap, workers}; }
};

struct UsageError : Error {
    using Error::Error;
};

int default_cap() {
    const char* env = std::getenv("POTENTIAL_SIGMA_CAP");
    if (env == nullptr || *env == '\0')
        return kDefaultOracleCap;
    int value = 0;
    std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1)
        throw UsageError("POTENTIAL_SIGMA_CAP must be a positive integer, got '" + std::string(text) + "'");
    return value;
}

Pattern load_pattern(const RunConfig& cfg) {
    if (!cfg.pattern_file.empty()) {
        std::ifstream in(cfg.pattern_file, std::ios::binary);
        if (!in)
            throw UsageError("cannot read pattern file '" + cfg.pattern_file + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return custom_pattern(parse_edge_list(buffer.str()));
    }
    return parse_pattern_selector(cfg.pattern_selector);
}

std::pair<int, int> parse_range(const std::string& text) {
    auto number = [&](std::string_view tok) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
            throw UsageError("malformed n range '" + text + "'");
        return value;
    };
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        int n = number(text);
        return {n, n};
    }
    int lo = number(std::string_view(text).substr(0, dots));
    int hi = number(std::string_view(text).substr(dots + 2));
    if (lo > hi)
        throw UsageError("empty n range '" + text + "'");
    return {lo, hi};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write '" + path + "'");
    out << content;
}

std::string embedding_text(const Embedding& e) {
    std::string out;
    for (std::size_t a = 0; a < e.map.size(); ++a) {
        if (a > 0)
            out += ' ';
        out += std::to_string(a) + "->" + std::to_string(e.map[a]);
    }
    return out;
}

int cmd_check(const std::string& literal) {
    auto s = parse_sequence(literal);
    bool graphical = is_graphical(s);
    std::cout << "graphical=" << (graphical ? "yes" : "no") << " sigma=" << sigma(s) << " n=" << s.size()
              << "\n";
    return graphical ? kExitOk : kExitNo;
}

int cmd_potential(const std::string& literal, const RunConfig& cfg) {
    auto s = parse_sequence(literal);
    auto pattern = load_pattern(cfg);
    if (!is_graphical(s))
        throw NotGraphicalError("sequence (" + to_plain(s) + ") is not graphical");
    bool run_oracle = cfg.engine == "oracle" || cfg.engine == "both";
    bool run_constructive = cfg.engine == "constructive" || cfg.engine == "both";
    if (run_constructive && pattern.kind != PatternKind::k4_minus_e)
        throw UsageError("the constructive engine only handles --pattern k4e");

    std::optional<PotentialVerdict> oracle;
    std::optional<TheoremOutcome> constructive;
    if (run_oracle)
        oracle = is_potentially(s, pattern, cfg.oracle());
    if (run_constructive)
        constructive = potentially_k4e_constructive(s, cfg.oracle());

    std::string verdict;
    std::optional<Witness> witness;
    bool agreement = true;
    bool constructive_claims = constructive && constructive->kind != OutcomeKind::below_threshold;
    if (constructive_claims) {
        verdict = constructive->kind == OutcomeKind::realized ? "YES" : "EXCEPTIONAL";
        witness = constructive->witness;
    } else if (constructive && !oracle) {
        verdict = "BELOW_THRESHOLD";
    }
    if (oracle) {
        bool yes = oracle->kind == Verdict::yes;
        if (constructive_claims)
            agreement = yes == (constructive->kind == OutcomeKind::realized);
        else {
            verdict = yes ? "YES" : "NO";
            witness = oracle->witness;
        }
    }

    if (cfg.format == "json") {
        ordered_json j;
        j["sequence"] = to_plain(s);
        j["n"] = s.size();
        j["sigma"] = sigma(s);
        j["pattern"] = pattern.selector();
        j["engine"] = cfg.engine;
        if (oracle)
            j["oracle"] = oracle->kind == Verdict::yes ? "YES" : "NO";
        if (constructive)
            j["constructive"] = to_string(constructive->kind);
        if (oracle && constructive)
            j["engines_agree"] = agreement;
        j["verdict"] = verdict;
        if (witness) {
            j["witness"] = to_edge_list(witness->graph);
            j["embedding"] = witness->embedding.map;
        }
        if (cfg.trace && constructive) {
            auto lines = ordered_json::array();
            std::istringstream in(constructive->trace.to_text());
            for (std::string line; std::getline(in, line);)
                lines.push_back(line);
            j["trace"] = lines;
        }
        std::cout << dump_json(j);
    } else {
        std::cout << "sequence=" << to_plain(s) << "\n"
                  << "n=" << s.size() << " sigma=" << sigma(s) << "\n"
                  << "pattern=" << pattern.selector() << "\n"
                  << "engine=" << cfg.engine << "\n";
        if (oracle)
            std::cout << "oracle=" << (oracle->kind == Verdict::yes ? "YES" : "NO")
                      << " realizations_examined=" << oracle->realizations_examined << "\n";
        if (constructive)
            std::cout << "constructive=" << to_string(constructive->kind) << "\n";
        if (oracle && constructive)
            std::cout << "engines=" << (!constructive_claims ? "no-claim" : agreement ? "agree" : "DISAGREE")
                      << "\n";
        std::cout << "verdict=" << verdict << "\n";
        if (cfg.trace && constructive) {
            std::cout << "trace:\n" << constructive->trace.to_text();
        }
        if (witness) {
            std::cout << "witness:\n" << to_edge_list(witness->graph);
            std::cout << "embedding=" << embedding_text(witness->embedding) << "\n";
        }
    }

    if (!agreement) {
        std::cerr << "error: engines disagree on (" << to_plain(s) << ")\n";
        return kExitError;
    }
    return verdict == "YES" ? kExitOk : kExitNo;
}

int cmd_sigma(const RunConfig& cfg) {
    auto pattern = load_pattern(cfg);
    auto report = sigma_threshold(pattern, cfg.n, cfg.oracle());
    if (cfg.format == "json")
        std::cout << dump_json(to_json(report));
    else if (cfg.format == "csv")
        std::cout << kCsvHeader << "\n" << to_csv_row(report) << "\n";
    else
        std::cout << to_text(report);
    return report.agrees ? kExitOk : kExitNo;
}

std::string bracketed(const std::vector<DegreeSequence>& seqs) {
    std::string out = "[";
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        if (i > 0)
            out += ' ';
        out += to_compact(seqs[i]);
    }
    return out + "]";
}

ordered_json verify_json(const std::vector<VerifyRow>& rows) {
    ordered_json j;
    j["pattern"] = "k4e";
    auto arr = ordered_json::array();
    bool all = true;
    for (const auto& r : rows) {
        ordered_json o;
        o["n"] = r.n;
        o["computed_sigma"] = r.threshold.computed_sigma;
        o["formula_sigma"] = r.threshold.formula_sigma ? ordered_json(*r.threshold.formula_sigma)
                                                       : ordered_json(nullptr);
        o["agrees"] = r.ok();
        o["extremal_sequences"] = sequences_to_json(r.threshold.extremal_sequences);
        o["cross_checked_from_sigma"] = r.sigma_from;
        o["cross_checked"] = r.cross_checked;
        o["disagreements"] = sequences_to_json(r.disagreements);
        o["witness_failures"] = sequences_to_json(r.witness_failures);
        o["exceptional"] = sequences_to_json(r.exceptional);
        o["sequences_examined"] = r.threshold.sequences_examined;
        o["elapsed_ms"] = r.elapsed_ms;
        arr.push_back(o);
        all = all && r.ok();
    }
    j["rows"] = arr;
    j["all_agree"] = all;
    return j;
}

std::string verify_csv(const std::vector<VerifyRow>& rows) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : rows) {
        auto report = r.threshold;
        report.agrees = r.ok();
        report.elapsed_ms = r.elapsed_ms;
        out += to_csv_row(report) + "\n";
    }
    return out;
}

int cmd_verify(const RunConfig& cfg) {
    auto [lo, hi] = parse_range(cfg.n_range);
    if (lo < 4)
        throw UsageError("verify needs n >= 4");
    std::vector<VerifyRow> rows;
    for (int n = lo; n <= hi; ++n)
        rows.push_back(verify_row(n, cfg.oracle(), cfg.sigma_min));

    bool all_ok = true;
    for (const auto& r : rows)
        all_ok = all_ok && r.ok();

    if (!cfg.json_out.empty())
        write_file(cfg.json_out, dump_json(verify_json(rows)));
    if (!cfg.csv_out.empty())
        write_file(cfg.csv_out, verify_csv(rows));

    if (cfg.format == "json") {
        std::cout << dump_json(verify_json(rows));
    } else if (cfg.format == "csv") {
        std::cout << verify_csv(rows);
    } else {
        std::printf("%3s %9s %8s %6s %14s %14s  %s\n", "n", "computed", "formula", "agree", "cross_checked",
                    "disagreements", "exceptional");
        for (const auto& r : rows) {
            std::printf("%3d %9ld %8ld %6s %14ld %14zu  %s\n", r.n, r.threshold.computed_sigma,
                        r.threshold.formula_sigma.value_or(-1), r.ok() ? "yes" : "NO", r.cross_checked,
                        r.disagreements.size() + r.witness_failures.size(), bracketed(r.exceptional).c_str());
        }
        std::cout << (all_ok ? "all rows agree\n" : "verification FAILED\n");
    }
    for (const auto& r : rows) {
        if (!r.threshold.agrees)
            std::cerr << "counterexample: n=" << r.n << " oracle threshold " << r.threshold.computed_sigma
                      << " differs from formula " << r.threshold.formula_sigma.value_or(-1) << "\n";
        for (const auto& s : r.disagreements)
            std::cerr << "counterexample: engines disagree on (" << to_plain(s) << ")\n";
        for (const auto& s : r.witness_failures)
            std::cerr << "counterexample: invalid witness for (" << to_plain(s) << ")\n";
    }
    return all_ok ? kExitOk : kExitNo;
}

void add_pattern_options(CLI::App* cmd, RunConfig& cfg) {
    auto* sel = cmd->add_option("--pattern", cfg.pattern_selector, "k4e, k<k>, or c<k>")->capture_default_str();
    auto* file = cmd->add_option("--pattern-file", cfg.pattern_file, "pattern graph in edge-list format");
    sel->excludes(file);
}

void add_oracle_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--cap", cfg.cap, "largest n for exhaustive search (env POTENTIAL_SIGMA_CAP)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    try {
        cfg.cap = default_cap();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }

    CLI::App app{"Potentially K4-e graphical sequences: checks, decisions, thresholds"};
    app.require_subcommand(1);

    std::string literal;
    auto* check = app.add_subcommand("check", "test a sequence for graphicality");
    check->add_option("sequence", literal, "e.g. 4,3,3,3,3,3,1 or 4^1,3^5,1^1")->required();

    auto* potential = app.add_subcommand("potential", "decide whether a sequence is potentially H graphical");
    potential->add_option("sequence", literal, "sequence literal")->required();
    add_pattern_options(potential, cfg);
    potential->add_option("--engine", cfg.engine, "oracle, constructive, or both")
        ->check(CLI::IsMember({"oracle", "constructive", "both"}))
        ->capture_default_str();
    potential->add_flag("--trace", cfg.trace, "print the constructive case trace");
    potential->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    add_oracle_options(potential, cfg);

    auto* sigma_cmd = app.add_subcommand("sigma", "compute sigma(H, n) exhaustively");
    add_pattern_options(sigma_cmd, cfg);
    sigma_cmd->add_option("--n", cfg.n, "sequence length")->required()->check(CLI::NonNegativeNumber);
    sigma_cmd->add_option("--format", cfg.format)
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    add_oracle_options(sigma_cmd, cfg);

    auto* verify = app.add_subcommand("verify", "check the K4-e threshold table over a range of n");
    verify->add_option("--n", cfg.n_range, "n or lo..hi")->required();
    verify->add_option("--sigma-min", cfg.sigma_min, "lower sigma for the engine cross-check");
    verify->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "csv"}))->capture_default_str();
    verify->add_option("--json", cfg.json_out, "also write the table as JSON");
    verify->add_option("--csv", cfg.csv_out, "also write the table as CSV");
    add_oracle_options(verify, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (*check)
            return cmd_check(literal);
        if (*potential)
            return cmd_potential(literal, cfg);
        if (*sigma_cmd)
            return cmd_sigma(cfg);
        if (*verify)
            return cmd_verify(cfg);
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
