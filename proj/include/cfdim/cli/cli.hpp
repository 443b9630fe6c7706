#pragma once

#include "cfdim/numerics/big_real.hpp"
#include "cfdim/numerics/growth.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cfdim::cli {

// Bad flags, malformed values or an inconsistent config file: exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

std::string to_string(OutputFormat f);
OutputFormat parse_format(const std::string& text);

// Everything that determines the output of a run. Parameters are stored as
// canonical strings so a config file replays exactly.
struct RunConfig {
    std::string subcommand;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    long precision = kDefaultPrecision;
    OutputFormat format = OutputFormat::csv;
    std::string output;  // empty: standard output
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

struct ParamSpec {
    std::string name;
    std::string default_value;
    std::string help;
    bool positional = false;
    bool required = false;
};

// Typed access to a validated parameter set. Conversion failures raise
// ConfigError naming the parameter.
class Params {
public:
    Params(const nlohmann::json& values, const RunConfig& config) : values_(values), config_(config) {}

    const RunConfig& config() const { return config_; }
    bool has(const std::string& name) const;  // non-empty value
    std::string text(const std::string& name) const;
    long integer(const std::string& name) const;
    ExactRational rational(const std::string& name) const;
    bool flag(const std::string& name) const;
    std::vector<long> integers(const std::string& name) const;            // "a,b,c"
    std::vector<ExactRational> rationals(const std::string& name) const;  // "a,b,c"
    GrowthFunction growth(const std::string& name) const;
    // Any parse step that throws is reported as a config error on `name`.
    template <class F>
    auto convert(const std::string& name, F&& f) const -> decltype(f(std::string{}));

private:
    const nlohmann::json& values_;
    const RunConfig& config_;
};

// Output of one subcommand: summary lines, then a table whose first column
// is the index variable.
struct Table {
    std::vector<std::pair<std::string, std::string>> summary;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

using Handler = std::function<Table(const Params&)>;

struct CommandSpec {
    std::string name;
    std::string help;
    std::vector<ParamSpec> params;
    // library operations exposed by this command, as "module::operation"
    std::vector<std::string> operations;
    Handler handler;
};

const std::vector<CommandSpec>& registry();
const CommandSpec* find_command(const std::string& name);

// Fills defaults, rejects unknown or missing parameters. ConfigError.
void validate(RunConfig& config);

// Output text of a validated config; library errors propagate.
std::string render(const RunConfig& config);

// Runs a config and writes its output. Exit status 0, 2 or 3.
int run(RunConfig config, std::ostream& out, std::ostream& err);

// Command-line entry point.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

// Shared cell formatting.
std::string format_exact(const ExactRational& x);  // finite decimal when possible, else p/q
std::string format_double(double x);
std::string format_center(const BigReal& x);
std::string format_radius(const BigReal& x);

template <class F>
auto Params::convert(const std::string& name, F&& f) const -> decltype(f(std::string{}))
{
    const std::string t = text(name);
    try {
        return f(t);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("invalid value '" + t + "' for " + name + ": " + e.what());
    }
}

} // namespace cfdim::cli
