// rsolve <command> <problem.json> [--tol --seed --mode --max-exponent --output json|text]

#include "rsolve/app.hpp"
#include "rsolve/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"Continuous rational solutions of phi = phi_1 f_1 + ... + phi_r f_r"};
    std::string command, path, mode, output = "json";
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> max_exponent;
    app.add_option("command", command, "check-pt, solve, verify or analyze")
        ->required()
        ->check(CLI::IsMember({"check-pt", "solve", "verify", "analyze"}));
    app.add_option("file", path, "problem file, or the output of solve for verify")->required();
    app.add_option("--tol", tol, "numeric tolerance");
    app.add_option("--seed", seed, "random seed (default: RSOLVE_SEED, then 0)");
    app.add_option("--mode", mode, "exact, numeric or auto")->check(CLI::IsMember({"exact", "numeric", "auto"}));
    app.add_option("--max-exponent", max_exponent, "largest exponent N tried when gluing");
    app.add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : rsolve::kExitInput;
    }

    rsolve::RunOptions opts;
    opts.tol = tol;
    opts.seed = seed;
    opts.max_exponent = max_exponent;
    opts.text = output == "text";
    if (!mode.empty()) opts.mode = rsolve::solve_mode_from_string(mode);
    if (const char* env = std::getenv("RSOLVE_SEED")) {
        try {
            opts.env_seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "input error: RSOLVE_SEED is not an unsigned integer\n";
            return rsolve::kExitInput;
        }
    }

    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "input error: cannot read " << path << "\n";
        return rsolve::kExitInput;
    }
    std::ostringstream text;
    text << in.rdbuf();

    rsolve::RunResult r = rsolve::run(command, text.str(), opts);
    std::cout << r.out;
    std::cerr << r.err;
    return r.code;
}
