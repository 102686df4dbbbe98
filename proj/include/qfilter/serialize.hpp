#pragma once

#include <json.hpp>

#include <string>

#include "qfilter/balanced_ensemble.hpp"
#include "qfilter/boolean_function.hpp"
#include "qfilter/filtering.hpp"
#include "qfilter/povm_synthesis.hpp"
#include "qfilter/simulate.hpp"

namespace qfilter {

inline constexpr int kSchemaVersion = 1;

nlohmann::json function_record(const BooleanFunction& f);
nlohmann::json encode_record(const BooleanFunction& f);
nlohmann::json basis_record(int n);
nlohmann::json analyze_record(const WkClosedForms& forms);
nlohmann::json report_record(const StrategyReport& report);
nlohmann::json thresholds_record(const RegimeScan& scan);
nlohmann::json dilation_record(const DilationUnitary& d);
nlohmann::json validation_record(const DilationValidation& v);
nlohmann::json simulation_record(const SimulationSummary& s);
nlohmann::json ensemble_record(const EnsembleSummary& s);
nlohmann::json error_record(int exit_code, std::string_view kind, std::string_view message);

std::string basis_csv(int n);
std::string ensemble_csv(const EnsembleSummary& s);
std::string sweep_csv(const std::vector<WkClosedForms>& rows);

}  // namespace qfilter
