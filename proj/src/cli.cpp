#include "radtrace/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace radtrace {

namespace {

Json load_system_doc(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open system file '" + path + "'", 0, 0);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0, 0);
    }
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("RADICAL_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return static_cast<std::uint64_t>(v);
    }
    return 1;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"zero-dimensional polynomial systems: trace matrices, radicals, roots"};
    app.require_subcommand(1);

    std::string input_path = "-";
    CliOptions opts;
    opts.seed = default_seed();

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("system", input_path, "system JSON file (or - for stdin)")->required();
        cmd->add_option("--seed", opts.seed, "random seed (default: RADICAL_SEED or 1)");
        cmd->add_option("--retries", opts.retries, "moment-sampling retries");
        cmd->add_option("--k", opts.k_override, "override the basis degree bound");
        cmd->add_option("--delta", opts.delta_override, "override the truncation degree");
        cmd->add_option("--bigdelta", opts.working_override, "override the working degree");
        cmd->add_option("--tol", opts.tolerance, "comparison tolerance for the approx field");
        cmd->add_option("--pipeline", opts.pipeline, "macaulay | bezout | both")
            ->check(CLI::IsMember({"macaulay", "bezout", "both"}));
        cmd->add_flag("--shortcut", opts.shortcut, "add the square-system Jacobian shortcut");
        cmd->add_flag("--kernel-filter", opts.kernel_filter,
                      "restrict the Bezoutian kernel before mapping generators");
    };

    for (const char* name :
         {"bounds", "basis", "traces", "radical", "roots", "squarefree", "bezout-radical"})
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        Json doc = load_system_doc(input_path);
        Json out = run_from_json(command, doc, opts);
        std::cout << out.dump(2) << "\n";
        return kOk;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const BoundsError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kPreconditionError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kPreconditionError;
    } catch (const ContractError& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return kContractError;
    } catch (const SingularMatrixError& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return kContractError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kContractError;
    }
}

}  // namespace radtrace
