#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "fairclust/core.hpp"
#include "fairclust/fpt.hpp"
#include "fairclust/gen.hpp"
#include "fairclust/oracle.hpp"
#include "fairclust/rounding.hpp"

namespace fairclust::io {

using Json = nlohmann::ordered_json;

// Decimal string with 12 significant digits ("%.12g").
std::string format_cost(double value);

// Instance interchange document. Throws InputError on malformed JSON (with
// line and column), unknown fields, or invalid content.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);
Json instance_to_json(const Instance& inst);

gen::SetCoverageInstance parse_set_coverage(std::string_view text);
gen::SetCoverageInstance load_set_coverage(const std::string& path);
Json set_coverage_to_json(const gen::SetCoverageInstance& sc);

Json center_set_to_json(const CenterSet& centers, const Instance& inst);
Json solve_report_to_json(const fpt::SolveReport& report, const Instance& inst);
Json oracle_result_to_json(const oracle::OracleResult& result, const Instance& inst);
Json metric_report_to_json(const MetricReport& report, const Instance& inst);
Json trace_to_json(const rounding::RoundingTrace& trace, const Instance& inst);

std::string read_file(const std::string& path);

}  // namespace fairclust::io
