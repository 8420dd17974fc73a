#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "output.hpp"
#include "symfp/error.hpp"

namespace {

using symfp::cli::Config;

struct RawOptions {
    std::vector<std::string> primes;
    std::string lambdas;
    std::string t_range;
};

std::string env(const std::string& flag) {
    std::string name = "SYMFP_";
    for (char ch : flag) name += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return name;
}

void bind(CLI::App& sub, Config& c, RawOptions& raw) {
    auto opt = [&](const std::string& flag, auto& target, const std::string& help) {
        return sub.add_option("--" + flag, target, help)->envname(env(flag))->capture_default_str();
    };
    auto flag = [&](const std::string& name, bool& target, const std::string& help) {
        return sub.add_flag("--" + name, target, help)->envname(env(name));
    };
    opt("n", c.n, "Matrix dimension, vector length, or grid bound");
    opt("p", raw.primes, "Primes: comma list, ranges lo:hi allowed")->delimiter(',');
    opt("lambda", raw.lambdas, "Diagonal shifts, comma list");
    opt("trials", c.trials, "Monte Carlo trials");
    opt("seed", c.seed, "Master seed");
    opt("stream", c.stream, "Stream id base");
    opt("workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    opt("out", c.out, "Output file (default stdout)");
    opt("format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    flag("check", c.check, "Gate on tolerances; exit 3 on failure");
    flag("no-clock", c.no_clock, "Omit wall-clock fields so identical runs give identical files");
    opt("tol-z", c.tol.z, "z multiplier in max(z*se, abs)");
    opt("tol-abs", c.tol.abs, "Absolute floor in max(z*se, abs)");
    opt("tol-step-uniform", c.tol.step_uniform, "walk: step tolerance, uniform model");
    opt("tol-step-rademacher", c.tol.step_rademacher, "walk: step tolerance, Rademacher model");
    opt("tol-tv", c.tol.tv, "chain: total variation tolerance");
    opt("tol-mean", c.tol.mean, "roots: allowed |mean - 1|");
    opt("tol-fourier", c.tol.fourier, "anticonc: DP vs character-sum tolerance");
    opt("tol-mass", c.tol.mass, "theory: allowed |sum pi_k - 1|");
    opt("const-C", c.const_C, "Constants C (halasz, structure)")->delimiter(',');
    opt("k", c.k, "Level k");
    opt("L", c.L, "Scale L");
    opt("m", c.m, "Dagger chunk size");
    opt("t-range", raw.t_range, "walk: conditioning times a:b (default n/2:n-1)");
    opt("steps", c.steps, "chain: steps per trial");
    opt("k-max", c.k_max, "Largest corank with an explicit pmf value");
    opt("vector", c.vectors, "anticonc: an input vector as a comma list (repeatable)");
    opt("t", c.thresholds, "badset: thresholds t")->delimiter(',');
    opt("budget", c.budget, "irred: primes to try per matrix");
    opt("samples", c.samples, "anticonc: samples for the R_k^* estimate above the exact budget");
    flag("duplicate", c.duplicate, "irred: use block_diag(B, B) matrices");
    opt("model", c.model, "walk: uniform, rademacher or both")->check(CLI::IsMember({"uniform", "rademacher", "both"}));
    opt("min-vectors", c.min_vectors, "structure: required number of kernel vectors");
}

void finalize(Config& c, const RawOptions& raw) {
    if (!raw.primes.empty()) c.primes = symfp::cli::parse_primes(raw.primes);
    if (!raw.lambdas.empty()) c.lambdas = symfp::cli::parse_integers(raw.lambdas);
    if (!raw.t_range.empty()) std::tie(c.t_min, c.t_max) = symfp::cli::parse_range(raw.t_range);
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-field random symmetric matrix experiments"};
    app.set_version_flag("--version", std::string(SYMFP_VERSION));
    app.require_subcommand(1);
    std::map<std::string, Config> configs;
    std::map<std::string, RawOptions> raws;
    for (const auto& name : symfp::cli::command_names()) {
        configs[name] = symfp::cli::default_config(name);
        auto* sub = app.add_subcommand(name, symfp::cli::command_description(name));
        bind(*sub, configs[name], raws[name]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    std::string name;
    for (const auto* sub : app.get_subcommands()) name = sub->get_name();
    Config& cfg = configs[name];

    try {
        finalize(cfg, raws[name]);
        const auto start = std::chrono::steady_clock::now();
        const std::string started = utc_now();
        auto report = symfp::cli::run_command(cfg);
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!cfg.no_clock) {
            report.meta["started_at"] = started;
            report.meta["wall_clock_seconds"] = elapsed;
        }

        std::ofstream file;
        if (!cfg.out.empty()) {
            file.open(cfg.out, std::ios::binary);
            if (!file) throw symfp::InvalidArgument("cannot open output file " + cfg.out);
        }
        std::ostream& os = cfg.out.empty() ? std::cout : file;
        if (cfg.format == "json")
            symfp::cli::write_json(os, report);
        else
            symfp::cli::write_csv(os, report);
        os.flush();

        if (cfg.check) {
            for (const auto& c : report.checks)
                std::cerr << "check " << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (" << c.detail << ")\n";
            if (!report.all_passed()) return 3;
        }
        return 0;
    } catch (const symfp::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const symfp::PreconditionViolated& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const symfp::InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
