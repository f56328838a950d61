#include "subgeom/cli.hpp"

#include "subgeom/errors.hpp"
#include "subgeom/report.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace subgeom::cli {

namespace {

std::vector<std::string> entry_ids(const RunConfig& config)
{
    std::vector<std::string> ids;
    if (config.entry == "all") {
        for (const CatalogListing& l : list_entries()) {
            ids.push_back(l.id);
        }
    } else {
        ids.push_back(config.entry);
    }
    return ids;
}

// Writes to --out or the given stream. Returns false if the file cannot be opened.
bool emit(const RunConfig& config, const std::string& text, std::ostream& out, std::ostream& err)
{
    if (config.out.empty()) {
        out << text;
        return true;
    }
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
        err << "error: cannot open output file " << config.out << '\n';
        return false;
    }
    file << text;
    return true;
}

std::string render(const RunConfig& config, const std::vector<Json>& runs, const std::string& csv)
{
    if (config.format == "csv") {
        return csv;
    }
    const Json doc = runs.size() == 1 ? runs.front() : Json{{"schema", "1"}, {"runs", runs}};
    return doc.dump(2) + "\n";
}

template <class Body>
int guarded(const RunConfig& config, std::ostream& err, Body body)
{
    try {
        validate(config);
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const GeometryError& e) {
        err << "check failed: " << e.what() << '\n';
        return kCheckFailed;
    }
}

} // namespace

std::vector<int> resolve_grid(const RunConfig& config, int n)
{
    if (config.grid.size() == 1) {
        return std::vector<int>(n, config.grid.front());
    }
    if (static_cast<int>(config.grid.size()) != n) {
        throw ConfigError("grid has " + std::to_string(config.grid.size()) + " counts but the chart has " +
                          std::to_string(n) + " axes");
    }
    return config.grid;
}

void validate(const RunConfig& config)
{
    if (config.entry.empty()) {
        throw ConfigError("no entry given (use --entry <id> or --entry all)");
    }
    if (config.grid.empty()) {
        throw ConfigError("empty grid");
    }
    for (int c : config.grid) {
        if (c < 3) {
            throw ConfigError("grid counts must be at least 3, got " + std::to_string(c));
        }
    }
    for (const std::string& name : Tolerances::names()) {
        if (!(*config.tolerances.get(name) > 0.0)) {
            throw ConfigError("tolerance '" + name + "' must be positive");
        }
    }
    if (config.format != "json" && config.format != "csv") {
        throw ConfigError("unknown format '" + config.format + "' (json or csv)");
    }
    if (config.entry == "all" && !config.params.empty()) {
        throw ConfigError("--param cannot be combined with --entry all");
    }
}

int cmd_identities(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(config, err, [&] {
        std::vector<Json> runs;
        std::string csv;
        bool passed = true;
        for (const std::string& id : entry_ids(config)) {
            const CatalogEntry e = instantiate(id, config.params);
            const std::vector<int> grid = resolve_grid(config, e.chart.n);
            const Classification r = identity_suite(e.chart, e.ambient, grid, config.tolerances);
            passed = passed && r.summary.worst_identity() <= config.tolerances.identity;
            runs.push_back(identities_json(e, grid, config.tolerances, r));
            csv += classification_csv(e, r, true);
        }
        if (!emit(config, render(config, runs, csv), out, err)) {
            return static_cast<int>(kUsageError);
        }
        return static_cast<int>(passed ? kPass : kCheckFailed);
    });
}

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(config, err, [&] {
        std::vector<Json> runs;
        std::string csv;
        bool passed = true;
        for (const std::string& id : entry_ids(config)) {
            const CatalogEntry e = instantiate(id, config.params);
            const std::vector<int> grid = resolve_grid(config, e.chart.n);
            const Classification r = classify(e.chart, e.ambient, grid, config.tolerances);
            passed = passed && matches_expected(e, r);
            runs.push_back(classification_json(e, grid, config.tolerances, r));
            csv += classification_csv(e, r, false);
        }
        if (!emit(config, render(config, runs, csv), out, err)) {
            return static_cast<int>(kUsageError);
        }
        return static_cast<int>(passed ? kPass : kCheckFailed);
    });
}

int cmd_list(std::ostream& out)
{
    for (const CatalogListing& l : list_entries()) {
        const char* sign = l.c > 0.0 ? "c>0" : (l.c < 0.0 ? "c<0" : "c=0");
        out << l.id << "\t" << sign << "\tn=" << l.n << "\tN=" << l.ambient_dim << "\t" << l.description;
        for (const ParamSpec& p : l.params) {
            out << "\t" << p.name << "=" << p.default_value;
        }
        out << '\n';
    }
    return kPass;
}

namespace {

std::pair<std::string, double> split_assignment(const std::string& text, const char* what)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError(std::string("malformed ") + what + " '" + text + "' (expected name=value)");
    }
    const std::string name = text.substr(0, eq);
    const std::string value = text.substr(eq + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError(std::string("malformed number in ") + what + " '" + text + "'");
    }
    return {name, v};
}

std::vector<int> parse_grid(const std::string& text)
{
    std::vector<int> counts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
            throw ConfigError("malformed grid '" + text + "'");
        }
        counts.push_back(v);
    }
    return counts;
}

} // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Recurrence and structure checks for submanifolds of constant-curvature spaces"};
    app.require_subcommand(1);

    std::string entry;
    std::vector<std::string> params;
    std::string grid = "5";
    std::vector<std::string> tols;
    std::string out_path;
    std::string format = "json";

    auto add_run_options = [&](CLI::App* sub) {
        sub->add_option("--entry", entry, "catalog entry id, or 'all'")->required();
        sub->add_option("--param", params, "entry parameter name=value (repeatable)");
        sub->add_option("--grid", grid, "samples per axis: a,b,... or one count for all axes");
        sub->add_option("--tol", tols, "tolerance override name=value (repeatable)");
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--format", format, "json or csv");
    };
    CLI::App* identities = app.add_subcommand("identities", "Gauss, Codazzi and Ricci residuals over a grid");
    CLI::App* classify_cmd = app.add_subcommand("classify", "full recurrence classification over a grid");
    CLI::App* list = app.add_subcommand("list", "list catalog entries");
    add_run_options(identities);
    add_run_options(classify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    if (list->parsed()) {
        return cmd_list(out);
    }

    RunConfig config;
    try {
        config.entry = entry;
        config.grid = parse_grid(grid);
        config.out = out_path;
        config.format = format;
        for (const std::string& p : params) {
            const auto [name, value] = split_assignment(p, "--param");
            config.params[name] = value;
        }
        for (const std::string& t : tols) {
            const auto [name, value] = split_assignment(t, "--tol");
            if (!config.tolerances.set(name, value)) {
                throw ConfigError("unknown tolerance '" + name + "'");
            }
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    if (identities->parsed()) {
        return cmd_identities(config, out, err);
    }
    return cmd_classify(config, out, err);
}

} // namespace subgeom::cli
