#pragma once

#include <json.hpp>

#include <string>

#include "antgrn/aco.hpp"
#include "antgrn/evaluation.hpp"
#include "antgrn/oracle.hpp"
#include "antgrn/types.hpp"

namespace antgrn {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

/// Result documents. Field order is fixed so identical runs serialize to
/// identical bytes.
nlohmann::ordered_json result_to_json(const AcoResult& result, const CorrelationMatrix& corr);
nlohmann::ordered_json oracle_to_json(const OracleResult& oracle, const CorrelationMatrix& corr,
                                      ObjectiveMode mode);
nlohmann::ordered_json report_to_json(const EvaluationReport& report);

}  // namespace antgrn
