#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "folcoh/jobs.hpp"

namespace {

// Write to a sibling temporary, then rename over the target.
bool write_atomically(const std::filesystem::path& target, const std::string& text) {
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        out << text;
        if (!out.flush()) return false;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    return !ec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact foliated cohomology and Poincare lemma engine"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    for (const auto& name : folcoh::job_commands()) {
        auto* sub = app.add_subcommand(name, "run a '" + name + "' job");
        sub->add_option("--spec", spec_path, "job specification (JSON)")->required();
        sub->add_option("--out", out_path, "result file (JSON)")->required();
        sub->add_option("--seed", seed, "seed recorded in the result; runs are deterministic");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(folcoh::ExitCode::invalid_input);
    }
    const std::string command = app.get_subcommands().front()->get_name();

    folcoh::JobResult result;
    std::ifstream in(spec_path);
    if (!in) {
        result = {folcoh::ExitCode::invalid_input, {{"status", "error"}, {"message", "cannot read " + spec_path}}};
    } else {
        folcoh::json spec;
        try {
            spec = folcoh::json::parse(in);
            result = folcoh::run_job(command, spec);
        } catch (const folcoh::json::parse_error& e) {
            result = {folcoh::ExitCode::invalid_input,
                      {{"status", "error"}, {"message", std::string("malformed JSON: ") + e.what()}}};
        }
    }
    if (!result.output.contains("command")) result.output["command"] = command;
    result.output["seed"] = seed ? folcoh::json(*seed) : folcoh::json(nullptr);
    result.output["exitCode"] = static_cast<int>(result.code);

    if (result.code != folcoh::ExitCode::ok)
        std::cerr << "folcoh " << command << ": " << result.output.value("message", result.output.value("status", ""))
                  << '\n';
    if (!write_atomically(out_path, result.output.dump(2) + "\n")) {
        std::cerr << "folcoh: cannot write " << out_path << '\n';
        return static_cast<int>(folcoh::ExitCode::invalid_input);
    }
    return static_cast<int>(result.code);
}
