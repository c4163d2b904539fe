#pragma once

#include <string>
#include <vector>

#include "grr/cli.hpp"
#include "grr/diagnostics.hpp"
#include "grr/estimator.hpp"
#include "grr/inference.hpp"
#include "grr/selection.hpp"

namespace grr {

// All serializers are canonical: numbers carry 10 significant digits, keys
// are sorted, output ends in a newline, and re-parsing then re-serializing
// reproduces the bytes exactly. Infinities appear as the string "inf".

std::string to_json(const DiagnosticsReport& report);
std::string to_json(const OlsResult& result,
                    const std::vector<std::string>& names,
                    const std::string& dependent);
std::string to_json(const OlsResult& base, const EstimateReport& penalized,
                    const std::vector<std::string>& names,
                    const std::string& dependent);
std::string to_json(const SelectionResult& result,
                    const std::vector<std::string>& names);
std::string to_json(const BootstrapReport& report);
std::string to_json(const TraceReport& report);
std::string to_tsv(const TraceReport& report);

}  // namespace grr
