#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "report.hpp"

namespace symfp::cli {

struct Tolerances {
    double z = 3.0;                 ///< cell check: |emp − π| <= max(z·se, abs)
    double abs = 0.01;
    double step_uniform = 0.02;     ///< walk, uniform model
    double step_rademacher = 0.03;  ///< walk, Rademacher exposure
    double tv = 0.02;               ///< chain
    double mean = 0.15;             ///< roots: |mean − 1| <= mean
    double fourier = 1e-10;         ///< anticonc: DP vs character sum
    double mass = 1e-10;            ///< theory: |Σπ_k − 1|
};

/// Everything a subcommand reads. Echoed in full into every output.
struct Config {
    std::string command;
    std::size_t n = 0;
    std::vector<std::uint64_t> primes;
    std::vector<std::int64_t> lambdas{0};
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    std::size_t workers = 1;
    std::string out;  ///< empty: stdout
    std::string format = "csv";
    bool check = false;
    bool no_clock = false;

    std::vector<double> const_C;
    unsigned k = 1;
    double L = 5.0;
    std::size_t m = 8;
    std::size_t t_min = 0;  ///< 0: command default
    std::size_t t_max = 0;
    std::size_t steps = 100;
    std::size_t k_max = 40;
    std::vector<std::string> vectors;
    std::vector<double> thresholds;
    std::size_t budget = 25;
    std::uint64_t samples = 100000;
    bool duplicate = false;
    std::string model = "both";
    std::size_t min_vectors = 0;
    Tolerances tol;
};

/// Subcommand names in the order `--help` lists them.
const std::vector<std::string>& command_names();
/// One-line description per subcommand.
std::string command_description(const std::string& name);
/// Defaults for a subcommand (n, primes, trials, constants).
Config default_config(const std::string& name);

/// Runs the subcommand and fills rows, summary and (always) checks; the
/// caller decides whether failed checks matter. Throws symfp::Error
/// subclasses on invalid input or exceeded budgets.
Report run_command(const Config& cfg);

/// Prime list syntax: comma-separated primes or ranges "lo:hi" (all primes
/// in [lo, hi]).
std::vector<std::uint64_t> parse_primes(const std::vector<std::string>& tokens);
/// "a:b" with a <= b.
std::pair<std::size_t, std::size_t> parse_range(const std::string& s);
/// Comma-separated integers.
std::vector<std::int64_t> parse_integers(const std::string& s);

Json config_json(const Config& cfg);

}  // namespace symfp::cli
