#pragma once

#include "hfpss/chart.hpp"
#include "hfpss/picard.hpp"
#include "hfpss/scenarios.hpp"

namespace hfpss {

struct RunOutcome {
    Scenario scenario;
    std::optional<SsResult> endo;                         // endomorphism mode
    std::optional<PicardResult> picard;                   // picard mode
    std::vector<std::pair<int, FgAbGroup>> weight_line;   // weight0 mode: (t, group)
    std::vector<StemVerdict> verdicts;
    nlohmann::ordered_json report;  // deterministic: no timing, no addresses
    int exit_code = 1;              // 0 ok, 2 mismatch/inconclusive
};

// Validates, runs the scenario's pipeline, and assembles the report.
// Throws (ParseError, std::runtime_error...) on hard failures.
RunOutcome run_scenario(const Scenario& sc);

// Chart input for one page of the outcome (picard charts the Picard pages).
// `page` < 2 selects the last computed page. Throws std::out_of_range.
ChartInput chart_input(const RunOutcome& out, int page);

}  // namespace hfpss
