#include "cfdim/cli/cli.hpp"
#include "cfdim/errors.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cfdim::cli {

namespace {

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    out.push_back(cur);
    for (const auto& s : out)
        if (s.empty()) throw ConfigError("empty entry in list '" + text + "'");
    return out;
}

long parse_long(const std::string& s)
{
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("not an integer: '" + s + "'");
    return v;
}

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

// Config lines echoed ahead of the data, in declaration order.
std::vector<std::pair<std::string, std::string>> echo_lines(const RunConfig& config)
{
    std::vector<std::pair<std::string, std::string>> lines{{"subcommand", config.subcommand}};
    if (const CommandSpec* spec = find_command(config.subcommand))
        for (const auto& p : spec->params) lines.emplace_back(p.name, config.params.at(p.name).get<std::string>());
    lines.emplace_back("seed", std::to_string(config.seed));
    lines.emplace_back("precision", std::to_string(config.precision));
    lines.emplace_back("format", to_string(config.format));
    return lines;
}

} // namespace

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_format(const std::string& text)
{
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ConfigError("format must be csv or json, got '" + text + "'");
}

nlohmann::json to_json(const RunConfig& config)
{
    nlohmann::json j{{"subcommand", config.subcommand},
                     {"params", config.params},
                     {"seed", config.seed},
                     {"precision", config.precision},
                     {"format", to_string(config.format)}};
    if (!config.output.empty()) j["output"] = config.output;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "subcommand") {
            if (!value.is_string()) throw ConfigError("subcommand must be a string");
            c.subcommand = value.get<std::string>();
        } else if (key == "params") {
            if (!value.is_object()) throw ConfigError("params must be an object");
            for (const auto& [name, v] : value.items()) {
                if (!v.is_string()) throw ConfigError("parameter " + name + " must be a string");
                c.params[name] = v;
            }
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
            c.seed = value.get<std::uint64_t>();
        } else if (key == "precision") {
            if (!value.is_number_integer()) throw ConfigError("precision must be an integer");
            c.precision = value.get<long>();
        } else if (key == "format") {
            if (!value.is_string()) throw ConfigError("format must be a string");
            c.format = parse_format(value.get<std::string>());
        } else if (key == "output") {
            if (!value.is_string()) throw ConfigError("output must be a string");
            c.output = value.get<std::string>();
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (c.subcommand.empty()) throw ConfigError("config has no subcommand");
    return c;
}

void validate(RunConfig& config)
{
    const CommandSpec* spec = find_command(config.subcommand);
    if (!spec) throw ConfigError("unknown subcommand '" + config.subcommand + "'");
    if (config.precision < 32 || config.precision > (1L << 20))
        throw ConfigError("precision must be in [32, 1048576] bits");
    if (!config.params.is_object()) throw ConfigError("params must be an object");
    for (const auto& [name, v] : config.params.items()) {
        bool known = false;
        for (const auto& p : spec->params) known = known || p.name == name;
        if (!known) throw ConfigError(config.subcommand + " has no parameter '" + name + "'");
        if (!v.is_string()) throw ConfigError("parameter " + name + " must be a string");
    }
    for (const auto& p : spec->params) {
        if (!config.params.contains(p.name)) config.params[p.name] = p.default_value;
        if (p.required && config.params[p.name].get<std::string>().empty())
            throw ConfigError(config.subcommand + " needs " + (p.positional ? p.name : "--" + p.name));
    }
}

bool Params::has(const std::string& name) const { return !text(name).empty(); }

std::string Params::text(const std::string& name) const
{
    if (!values_.contains(name)) throw ConfigError("internal: parameter '" + name + "' is not declared");
    return values_.at(name).get<std::string>();
}

long Params::integer(const std::string& name) const
{
    return convert(name, [](const std::string& s) { return parse_long(s); });
}

ExactRational Params::rational(const std::string& name) const
{
    return convert(name, [](const std::string& s) { return ExactRational::parse(s); });
}

bool Params::flag(const std::string& name) const
{
    return convert(name, [](const std::string& s) {
        if (s == "true" || s == "1") return true;
        if (s == "false" || s == "0" || s.empty()) return false;
        throw ConfigError("expected true or false");
    });
}

std::vector<long> Params::integers(const std::string& name) const
{
    return convert(name, [](const std::string& s) {
        std::vector<long> out;
        for (const auto& part : split_list(s)) out.push_back(parse_long(part));
        return out;
    });
}

std::vector<ExactRational> Params::rationals(const std::string& name) const
{
    return convert(name, [](const std::string& s) {
        std::vector<ExactRational> out;
        for (const auto& part : split_list(s)) out.push_back(ExactRational::parse(part));
        return out;
    });
}

GrowthFunction Params::growth(const std::string& name) const
{
    return convert(name, [](const std::string& s) { return parse_growth(s); });
}

std::string format_exact(const ExactRational& x)
{
    BigInt den = x.denominator();
    int twos = 0, fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return x.to_string();
    std::string s = x.to_decimal(std::max(twos, fives));
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

std::string format_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string format_center(const BigReal& x) { return x.to_string(17); }

std::string format_radius(const BigReal& x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x.radius_double());
    return buf;
}

std::string render(const RunConfig& config)
{
    const CommandSpec* spec = find_command(config.subcommand);
    if (!spec) throw ConfigError("unknown subcommand '" + config.subcommand + "'");
    const Params params(config.params, config);
    const Table table = spec->handler(params);

    std::ostringstream os;
    if (config.format == OutputFormat::csv) {
        for (const auto& [k, v] : echo_lines(config)) os << "# " << k << ": " << v << '\n';
        for (const auto& [k, v] : table.summary) os << "# " << k << ": " << v << '\n';
        for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << csv_cell(table.columns[i]);
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
            os << '\n';
        }
    } else {
        nlohmann::ordered_json doc;
        nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
        for (const auto& [k, v] : echo_lines(config)) cfg[k] = v;
        doc["config"] = cfg;
        nlohmann::ordered_json summary = nlohmann::ordered_json::object();
        for (const auto& [k, v] : table.summary) summary[k] = v;
        doc["summary"] = summary;
        doc["columns"] = table.columns;
        doc["rows"] = table.rows;
        os << doc.dump(2) << '\n';
    }
    return os.str();
}

int run(RunConfig config, std::ostream& out, std::ostream& err)
{
    std::string text;
    try {
        validate(config);
        text = render(config);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const EmptyWindow& e) {
        err << "error: empty digit window at n = " << e.index() << ": " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    if (config.output.empty()) {
        out << text;
        out.flush();
        return 0;
    }
    std::ofstream f(config.output, std::ios::binary);
    if (!f) {
        err << "config error: cannot write " << config.output << '\n';
        return 2;
    }
    f << text;
    return 0;
}

} // namespace cfdim::cli
