#include "cfdim/cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>

namespace cfdim::cli {

int main(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Continued-fraction digit growth and Hausdorff dimension experiments", "cfdim"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::string config_path, emit_path, format = "csv", output;
    std::uint64_t seed = 0;
    long precision = kDefaultPrecision;
    app.add_option("--config", config_path, "replay a JSON run config");
    app.add_option("--emit-config", emit_path, "write the resolved run config to this file, then run");
    auto* seed_opt = app.add_option("--seed", seed, "seed for every random choice")->capture_default_str();
    auto* prec_opt = app.add_option("--precision", precision, "working precision in bits")->capture_default_str();
    auto* fmt_opt = app.add_option("--format", format, "csv or json")->capture_default_str();
    app.add_option("--output", output, "output file (default: standard output)");

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::map<std::string, CLI::Option*>> options;
    for (const auto& cmd : registry()) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        for (const auto& p : cmd.params) {
            std::string& slot = values[cmd.name][p.name];
            const std::string flag = p.positional ? p.name : "--" + p.name;
            CLI::Option* o = sub->add_option(flag, slot, p.help);
            if (!p.default_value.empty()) o->default_str(p.default_value);
            options[cmd.name][p.name] = o;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }

    RunConfig config;
    try {
        const auto subs = app.get_subcommands();
        if (!config_path.empty()) {
            if (!subs.empty()) throw ConfigError("--config replays a stored run; do not give a subcommand as well");
            if (seed_opt->count() || prec_opt->count() || fmt_opt->count())
                throw ConfigError("--seed, --precision and --format come from the config file");
            std::ifstream f(config_path);
            if (!f) throw ConfigError("cannot read " + config_path);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(f);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("malformed config: ") + e.what());
            }
            config = config_from_json(j);
        } else {
            if (subs.empty()) throw ConfigError("a subcommand or --config is required (see --help)");
            const std::string name = subs.front()->get_name();
            config.subcommand = name;
            for (const auto& [pname, opt] : options[name])
                if (opt->count()) config.params[pname] = values[name][pname];
            config.seed = seed;
            config.precision = precision;
            config.format = parse_format(format);
        }
        if (!output.empty()) config.output = output;
        validate(config);
        if (!emit_path.empty()) {
            std::ofstream f(emit_path, std::ios::binary);
            if (!f) throw ConfigError("cannot write " + emit_path);
            RunConfig stored = config;
            stored.output.clear();
            f << to_json(stored).dump(2) << '\n';
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }
    return run(config, out, err);
}

} // namespace cfdim::cli
