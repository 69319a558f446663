#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "egw/ops.hpp"

namespace {

constexpr const char* kVersion = "egw 0.1.0";

std::string to_csv(const egw::Json& report) {
    std::string out = "key,value\n";
    for (const auto& [k, v] : report.items()) {
        if (v.is_structured())
            continue;
        out += k + "," + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic workbench for group-metric constructions"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(0, 1);

    std::string input, output, format = "json";
    long seed = -1, guard_size = -1, cap = -1;
    std::string chosen;
    for (const std::string& name : egw::op_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " subcommand");
        sub->add_option("--input", input, "inline JSON config file")->required();
        sub->add_option("--output", output, "write the report here instead of stdout");
        sub->add_option("--out", format, "report format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", seed, "seed for sampled modes");
        sub->add_option("--guard-size", guard_size, "explosion guard for growing spaces");
        sub->add_option("--cap", cap, "generic enumeration cap");
        sub->callback([&chosen, name] { chosen = name; });
    }

    CLI11_PARSE(app, argc, argv);
    if (chosen.empty()) {
        std::cout << app.help();
        return 0;
    }

    egw::Json config;
    {
        std::ifstream in(input);
        if (!in) {
            std::cerr << "cannot open input file: " << input << "\n";
            return 2;
        }
        try {
            config = egw::Json::parse(in);
        } catch (const std::exception& e) {
            std::cerr << "input is not valid JSON: " << e.what() << "\n";
            return 2;
        }
    }
    if (seed >= 0 && !config.contains("seed"))
        config["seed"] = seed;
    if (guard_size >= 0 && !config.contains("guard_size"))
        config["guard_size"] = guard_size;
    if (cap >= 0 && !config.contains("cap"))
        config["cap"] = cap;

    egw::OpResult res = egw::run_op(chosen, config);
    std::string text = format == "csv" ? to_csv(res.report) : res.report.dump(2) + "\n";
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        out << text;
    }
    return res.exit_code;
}
