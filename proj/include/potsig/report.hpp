#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "potsig/degree_sequence.hpp"
#include "potsig/oracle.hpp"

namespace potsig {

using ordered_json = nlohmann::ordered_json;

inline ordered_json sequences_to_json(const std::vector<DegreeSequence>& seqs) {
    auto arr = ordered_json::array();
    for (const auto& s : seqs)
        arr.push_back(to_plain(s));
    return arr;
}

inline ordered_json to_json(const ThresholdReport& r) {
    ordered_json j;
    j["pattern"] = r.pattern.selector();
    j["n"] = r.n;
    j["computed_sigma"] = r.computed_sigma;
    j["formula_sigma"] = r.formula_sigma ? ordered_json(*r.formula_sigma) : ordered_json(nullptr);
    j["agrees"] = r.agrees;
    j["extremal_sequences"] = sequences_to_json(r.extremal_sequences);
    j["sequences_examined"] = r.sequences_examined;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline std::string dump_json(const ordered_json& j) {
    return j.dump(2) + "\n";
}

/// key=value lines, one field per line.
inline std::string to_text(const ThresholdReport& r) {
    std::string extremal;
    for (const auto& s : r.extremal_sequences) {
        if (!extremal.empty())
            extremal += ';';
        extremal += to_plain(s);
    }
    std::string out;
    out += "pattern=" + r.pattern.selector() + "\n";
    out += "n=" + std::to_string(r.n) + "\n";
    out += "computed_sigma=" + std::to_string(r.computed_sigma) + "\n";
    out += "formula_sigma=" + (r.formula_sigma ? std::to_string(*r.formula_sigma) : std::string("none")) + "\n";
    out += "agrees=" + std::string(r.agrees ? "true" : "false") + "\n";
    out += "extremal_sequences=" + extremal + "\n";
    out += "sequences_examined=" + std::to_string(r.sequences_examined) + "\n";
    out += "realizations_examined=" + std::to_string(r.realizations_examined) + "\n";
    out += "all_potential=" + std::string(r.all_potential ? "true" : "false") + "\n";
    out += "elapsed_ms=" + std::to_string(r.elapsed_ms) + "\n";
    return out;
}

inline constexpr const char* kCsvHeader = "n,pattern,computed_sigma,formula_sigma,agrees,n_extremal,elapsed_ms";

inline std::string to_csv_row(const ThresholdReport& r) {
    return std::to_string(r.n) + "," + r.pattern.selector() + "," + std::to_string(r.computed_sigma) +
           "," + (r.formula_sigma ? std::to_string(*r.formula_sigma) : std::string()) + "," +
           (r.agrees ? "true" : "false") + "," + std::to_string(r.extremal_sequences.size()) + "," +
           std::to_string(r.elapsed_ms);
}

}  // namespace potsig
