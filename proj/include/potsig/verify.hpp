#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "potsig/formula.hpp"
#include "potsig/oracle.hpp"
#include "potsig/pattern.hpp"
#include "potsig/sequences.hpp"
#include "potsig/theorem.hpp"

namespace potsig {

/// One row of the K4 - e verification table.
struct VerifyRow {
    int n = 0;
    ThresholdReport threshold;
    long sigma_from = 0;  // lower end of the cross-checked range
    long cross_checked = 0;
    std::vector<DegreeSequence> disagreements;
    std::vector<DegreeSequence> witness_failures;
    std::vector<DegreeSequence> exceptional;  // not potentially K4 - e, sigma >= sigma_from
    std::int64_t elapsed_ms = 0;

    bool ok() const { return threshold.agrees && disagreements.empty() && witness_failures.empty(); }
};

enum class CheckResult { agree, disagree, bad_witness };

/// Runs both engines on s and compares their verdicts; a constructive witness
/// is re-validated here independently of the engine's own check.
inline CheckResult cross_check(const DegreeSequence& s, const OracleConfig& cfg, bool& oracle_yes) {
    auto h = k4_minus_e();
    auto constructive = potentially_k4e_constructive(s, cfg);
    auto oracle = is_potentially(s, h, cfg);
    oracle_yes = oracle.kind == Verdict::yes;
    if (constructive.kind == OutcomeKind::below_threshold)
        return CheckResult::agree;
    bool realized = constructive.kind == OutcomeKind::realized;
    if (realized != oracle_yes)
        return CheckResult::disagree;
    if (realized) {
        const auto& w = *constructive.witness;
        if (degree_sequence(w.graph) != s || !is_valid_embedding(w.graph, h, w.embedding))
            return CheckResult::bad_witness;
    }
    return CheckResult::agree;
}

/// Oracle threshold vs. closed form, plus an engine cross-check over every
/// graphical sequence with sigma >= sigma_from (default 2*floor((3n-1)/2)).
inline VerifyRow verify_row(int n, const OracleConfig& cfg, std::optional<long> sigma_from = {}) {
    auto start = std::chrono::steady_clock::now();
    VerifyRow row;
    row.n = n;
    row.threshold = sigma_threshold(k4_minus_e(), n, cfg);
    row.sigma_from = sigma_from.value_or(induction_threshold(n));
    auto sequences = graphical_sequences(n, row.sigma_from, static_cast<long>(n) * (n - 1));
    auto results = detail::parallel_map(sequences, cfg.workers, [&](const DegreeSequence& s) {
        bool oracle_yes = false;
        auto result = cross_check(s, cfg, oracle_yes);
        return std::pair{result, oracle_yes};
    });
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        ++row.cross_checked;
        if (results[i].first == CheckResult::disagree)
            row.disagreements.push_back(sequences[i]);
        if (results[i].first == CheckResult::bad_witness)
            row.witness_failures.push_back(sequences[i]);
        if (!results[i].second)
            row.exceptional.push_back(sequences[i]);
    }
    row.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return row;
}

}  // namespace potsig
