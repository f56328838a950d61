#pragma once

#include "subgeom/analysis.hpp"
#include "subgeom/catalog.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace subgeom::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsageError = 2 };

struct RunConfig {
    std::string entry;           // catalog id or "all"
    ParamMap params;
    std::vector<int> grid{5};    // one count per axis, or a single count for every axis
    Tolerances tolerances;
    std::string out;             // empty: stdout
    std::string format = "json"; // json | csv
};

/// Thrown for invalid configurations; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-axis grid counts for a chart of dimension n. Throws ConfigError.
std::vector<int> resolve_grid(const RunConfig& config, int n);

/// Checks counts >= 3, tolerances > 0 and the output format.
void validate(const RunConfig& config);

int cmd_identities(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_list(std::ostream& out);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace subgeom::cli
