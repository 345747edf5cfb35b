// gammax: Gauss-period conjugate explorer.
//
// Subcommands:
//   kappa <p>           least q with a nonzero Fermat quotient
//   eta <p>             root count of the Mirimanoff polynomial
//   gamma <p> [--json]  conjugate table, max and argmax
//   simulate <p>        run the sampling algorithm, JSON report
//   verify-lemmas       statevector oracle vs closed form, per prime
//   scan                prime scan with CSV output and checkpointing
//   fit                 fit empirical constants from a scan CSV

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gammax/cyclotomic.hpp"
#include "gammax/driver.hpp"
#include "gammax/ntheory.hpp"
#include "gammax/report.hpp"
#include "gammax/scan.hpp"
#include "gammax/verify.hpp"

namespace {

constexpr int kExitInvalidInput = 2;
constexpr int kExitCheckpointConflict = 3;

gammax::LogBase parse_log_base(const std::string& name) {
    if (name == "e") return gammax::LogBase::natural;
    if (name == "2") return gammax::LogBase::two;
    throw gammax::InvalidInput("--log-base must be 'e' or '2'");
}

std::vector<gammax::u64> parse_prime_list(const std::string& csv) {
    std::vector<gammax::u64> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(std::stoull(item));
    }
    if (out.empty()) throw gammax::InvalidInput("--primes list is empty");
    return out;
}

int cmd_kappa(gammax::u64 p) {
    std::cout << gammax::kappa(gammax::make_context(p)) << '\n';
    return 0;
}

int cmd_eta(gammax::u64 p) {
    std::cout << gammax::mirimanoff_zero_count(gammax::make_context(p)) << '\n';
    return 0;
}

int cmd_gamma(gammax::u64 p, bool as_json) {
    const auto ctx = gammax::make_context(p);
    const auto table = gammax::gamma_conjugates(ctx);
    if (as_json) {
        std::cout << gammax::conjugate_table_json(table) << '\n';
        return 0;
    }
    std::cout << "p " << table.p << "\ngamma_max " << gammax::format_real(table.gamma_max)
              << "\nargmax";
    for (auto a : table.argmax) std::cout << ' ' << a;
    std::cout << '\n';
    for (gammax::u64 a = 0; a < table.p; ++a) {
        std::cout << a << ' ' << gammax::format_real(table.values[a]) << '\n';
    }
    return 0;
}

int cmd_simulate(gammax::u64 p, const gammax::RunConfig& config, const std::string& out_path) {
    const auto ctx = gammax::make_context(p);
    const auto table = gammax::gamma_conjugates(ctx);
    const auto report = gammax::run(ctx, table, config);
    const std::string json = gammax::run_report_json(report);
    if (out_path.empty()) {
        std::cout << json << '\n';
    } else {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw gammax::InvalidInput("cannot open " + out_path);
        out << json << '\n';
    }
    return 0;
}

int cmd_verify_lemmas(const std::vector<gammax::u64>& primes) {
    const auto checks = gammax::verify_lemmas(primes);
    for (const auto& c : checks) {
        if (!c.error.empty()) {
            std::cout << "p " << c.p << " error " << c.error << '\n';
        } else {
            std::cout << "p " << c.p << " max_deviation " << gammax::format_real(c.max_deviation)
                      << (c.pass ? " pass" : " FAIL") << '\n';
        }
    }
    return gammax::all_pass(checks) ? 0 : 1;
}

int cmd_scan(const gammax::ScanConfig& config) {
    const auto result = gammax::scan(config);
    const auto fit = result.summary.fit();
    std::cout << "primes " << result.summary.count << '\n'
              << "c1_hat " << gammax::format_real(fit.c1_hat) << '\n'
              << "c2_hat " << gammax::format_real(fit.c2_hat) << '\n'
              << "max_kappa_over_sqrt_p " << gammax::format_real(result.summary.max_kappa_over_sqrt_p)
              << '\n'
              << "min_stmt1_margin " << gammax::format_real(result.summary.min_stmt1_margin) << '\n';
    if (fit.s_hat < 0) {
        std::cout << "s_hat not satisfied up to s=64\n";
    } else {
        std::cout << "s_hat " << fit.s_hat << '\n';
    }
    return 0;
}

int cmd_fit(const std::string& in_path) {
    const auto records = gammax::read_csv(in_path);
    const auto fit = gammax::fit_constants(records);
    std::cout << "c1_hat " << gammax::format_real(fit.c1_hat) << '\n'
              << "c2_hat " << gammax::format_real(fit.c2_hat) << '\n';
    if (fit.s_hat < 0) {
        std::cout << "s_hat not satisfied up to s=64\n";
    } else {
        std::cout << "s_hat " << fit.s_hat << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gauss-period conjugate explorer"};
    app.require_subcommand(1);

    gammax::u64 p = 0;

    auto* kappa_cmd = app.add_subcommand("kappa", "least q with a nonzero Fermat quotient");
    kappa_cmd->add_option("p", p, "odd prime")->required();

    auto* eta_cmd = app.add_subcommand("eta", "Mirimanoff polynomial root count");
    eta_cmd->add_option("p", p, "odd prime")->required();

    bool gamma_json = false;
    auto* gamma_cmd = app.add_subcommand("gamma", "conjugate table and maximum");
    gamma_cmd->add_option("p", p, "odd prime")->required();
    gamma_cmd->add_flag("--json", gamma_json, "emit the table as JSON");

    gammax::RunConfig run_config;
    std::string log_base = "e";
    std::string sim_out;
    auto* sim_cmd = app.add_subcommand("simulate", "sample the outcome distribution, report the mode");
    sim_cmd->add_option("p", p, "odd prime")->required();
    sim_cmd->add_option("--seed", run_config.seed, "RNG seed");
    sim_cmd->add_option("--k", run_config.k, "repetition exponent")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--cap", run_config.rep_cap, "repetition cap")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--t", run_config.t, "membership exponent")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--log-base", log_base, "e or 2")->check(CLI::IsMember({"e", "2"}));
    sim_cmd->add_option("--out", sim_out, "write the JSON report here instead of stdout");

    std::string primes_csv = "3,5,7,11,13";
    auto* verify_cmd = app.add_subcommand("verify-lemmas", "statevector oracle vs closed form");
    verify_cmd->add_option("--primes", primes_csv, "comma-separated primes (each <= 101)");

    gammax::ScanConfig scan_config;
    scan_config.workers = std::max(1u, std::thread::hardware_concurrency());
    auto* scan_cmd = app.add_subcommand("scan", "per-prime statistics over a range");
    scan_cmd->add_option("--from", scan_config.p_min, "range start (>= 3)")->required();
    scan_cmd->add_option("--to", scan_config.p_max, "range end")->required();
    scan_cmd->add_option("--s", scan_config.s, "margin exponent")->check(CLI::PositiveNumber);
    scan_cmd->add_option("--workers", scan_config.workers, "worker threads")->check(CLI::PositiveNumber);
    scan_cmd->add_option("--out", scan_config.out_path, "output CSV")->required();
    scan_cmd->add_option("--checkpoint", scan_config.checkpoint_path, "checkpoint file");
    scan_cmd->add_flag("--restart", scan_config.restart, "ignore any existing checkpoint");

    std::string fit_in;
    auto* fit_cmd = app.add_subcommand("fit", "fit empirical constants from a scan CSV");
    fit_cmd->add_option("--in", fit_in, "scan CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidInput;
    }

    try {
        if (kappa_cmd->parsed()) return cmd_kappa(p);
        if (eta_cmd->parsed()) return cmd_eta(p);
        if (gamma_cmd->parsed()) return cmd_gamma(p, gamma_json);
        if (sim_cmd->parsed()) {
            run_config.log_base = parse_log_base(log_base);
            return cmd_simulate(p, run_config, sim_out);
        }
        if (verify_cmd->parsed()) return cmd_verify_lemmas(parse_prime_list(primes_csv));
        if (scan_cmd->parsed()) return cmd_scan(scan_config);
        if (fit_cmd->parsed()) return cmd_fit(fit_in);
    } catch (const gammax::CheckpointCorrupt& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckpointConflict;
    } catch (const gammax::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
