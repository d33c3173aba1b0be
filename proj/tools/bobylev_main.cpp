// Experiment driver: simulate | verify | smoothing | induction | kernel-info.
// Exit codes: 0 success, 1 inequality violation, 2 config error, 3 blow-up.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bobylev/config.hpp"
#include "bobylev/io.hpp"
#include "bobylev/regularity.hpp"
#include "bobylev/suite.hpp"
#include "bobylev/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bobylev;

namespace {

json base_manifest(const ExperimentConfig& cfg, const std::string& command) {
    json m;
    m["command"] = command;
    m["seed"] = cfg.seed;
    m["config_echo"] = cfg.config_echo;
    m["timestamp"] = ""; // filled last; excluded from the content hash
    return m;
}

void finalize_manifest(json& m, const fs::path& out_dir) {
    json hashed = m;
    hashed.erase("timestamp");
    const std::uint64_t h = fnv1a64(hashed.dump(2));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    m["content_hash"] = buf;
    m["timestamp"] = std::to_string(std::time(nullptr));
    write_text_file((out_dir / "manifest.json").string(), m.dump(2) + "\n");
}

std::string snap_name(double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "snap_t%.6f.csv", t);
    return buf;
}

int cmd_simulate(const ExperimentConfig& cfg) {
    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir);
    json manifest = base_manifest(cfg, "simulate");
    try {
        const Trajectory traj = integrate(cfg.sim);
        json files = json::array();
        for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
            const std::string name = snap_name(traj.times[i]);
            const std::string csv = snapshot_csv(traj.snapshots[i]);
            write_text_file((out_dir / name).string(), csv);
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%016llx",
                          static_cast<unsigned long long>(fnv1a64(csv)));
            files.push_back({{"file", name}, {"hash", buf}});
        }
        const std::string mom = moments_csv(traj.moment_series);
        write_text_file((out_dir / "moments.csv").string(), mom);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(mom)));
        files.push_back({{"file", "moments.csv"}, {"hash", buf}});
        manifest["files"] = files;
        manifest["residuals"] = {{"mass_drift", traj.max_mass_drift},
                                 {"energy_drift", traj.max_energy_drift},
                                 {"bochner_excess", traj.max_bochner_excess}};
        finalize_manifest(manifest, out_dir);
        return 0;
    } catch (const BlowUpError& e) {
        manifest["error"] = e.what();
        manifest["t_last"] = e.t_last;
        finalize_manifest(manifest, out_dir);
        std::cerr << "blow-up: " << e.what() << " at t = " << e.t_last << "\n";
        return 3;
    } catch (const StabilityError& e) {
        manifest["error"] = e.what();
        manifest["t_last"] = e.t_last;
        finalize_manifest(manifest, out_dir);
        std::cerr << "instability: " << e.what() << " at t = " << e.t_last << "\n";
        return 3;
    }
}

int cmd_verify(const ExperimentConfig& cfg) {
    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir);
    const VerificationReport rep = run_inequality_suite(cfg);
    json manifest = base_manifest(cfg, "verify");
    manifest["checks"] = rep.to_json();
    manifest["violations"] = rep.violations();
    write_text_file((out_dir / "report.json").string(), rep.to_json().dump(2) + "\n");
    finalize_manifest(manifest, out_dir);
    for (const auto& e : rep.entries) {
        std::cout << (e.pass ? "[PASS] " : "[FAIL] ") << e.check_id
                  << "  margin = " << e.margin << "\n";
        if (!e.pass) std::cerr << "witness: " << e.inputs.dump() << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

int cmd_smoothing(const ExperimentConfig& cfg) {
    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir);
    SimConfig sim = cfg.sim;
    sim.snapshot_times = cfg.fit_times;
    for (double t : cfg.fit_times)
        if (!(t > 0))
            throw ConfigError("smoothing fit times must be positive", 0, "smoothing.times");
    const Trajectory traj = integrate(sim);
    const double alpha = cfg.has_weights ? cfg.weights.alpha : std::exp(4.0);
    const double mu = cfg.has_weights ? cfg.weights.mu : sim.kernel.mu;

    std::string csv = "t,beta_hat,beta_hat_t,m_hat,r_squared,n_points,x_lo,x_hi\n";
    json fits = json::array();
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const double t = traj.times[i];
        const FitBetaResult fr =
            fit_beta(traj.snapshots[i], t, alpha, mu, cfg.fit_x_lo, cfg.fit_x_hi);
        csv += fmt_full(t) + "," + fmt_full(fr.beta_hat) + "," + fmt_full(fr.beta_hat * t) +
               "," + fmt_full(fr.m_hat) + "," + fmt_full(fr.r_squared) + "," +
               std::to_string(fr.n_points) + "," + fmt_full(cfg.fit_x_lo) + "," +
               fmt_full(cfg.fit_x_hi) + "\n";
        fits.push_back({{"t", t},
                        {"beta_hat", fr.beta_hat},
                        {"m_hat", fr.m_hat},
                        {"r_squared", fr.r_squared},
                        {"window", {cfg.fit_x_lo, cfg.fit_x_hi}}});
        std::cout << "t = " << t << "  beta_hat*t = " << fr.beta_hat * t
                  << "  R^2 = " << fr.r_squared << "\n";
    }
    write_text_file((out_dir / "fits.csv").string(), csv);
    json manifest = base_manifest(cfg, "smoothing");
    manifest["fits"] = fits;
    finalize_manifest(manifest, out_dir);
    return 0;
}

int cmd_induction(const ExperimentConfig& cfg) {
    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir);
    SimConfig sim = cfg.sim;
    sim.snapshot_times.clear();
    const int snaps = 20;
    for (int i = 0; i <= snaps; ++i) {
        const double t = cfg.induction_t0 * i / snaps;
        const double k = std::round(t / sim.dt);
        sim.snapshot_times.push_back(k * sim.dt);
    }
    const Trajectory traj = integrate(sim);
    const double mu = sim.kernel.mu;
    const LadderReport lr = run_induction(traj, sim.kernel, mu, cfg.induction_t0);

    std::string csv = "N,lambda_N,sup_weighted,margin,pass\n";
    for (const auto& row : lr.rows)
        csv += std::to_string(row.n) + "," + fmt_full(row.lambda_n) + "," +
               fmt_full(row.sup_weighted) + "," + fmt_full(row.margin) + "," +
               (row.pass ? "1" : "0") + "\n";
    write_text_file((out_dir / "ladder.csv").string(), csv);

    json manifest = base_manifest(cfg, "induction");
    manifest["constants"] = {{"alpha_star", lr.constants.alpha_star},
                             {"exponent", lr.constants.exponent},
                             {"lambda0", lr.constants.lambda0},
                             {"B1", lr.constants.b1},
                             {"B2", lr.constants.b2},
                             {"M", lr.constants.big_m},
                             {"K", lr.constants.big_k},
                             {"C_f0", lr.constants.c_f0},
                             {"C_tilde_f0", lr.constants.c_tilde_f0},
                             {"c_bd", lr.constants.c_bd},
                             {"A_f0", lr.constants.a_f0},
                             {"beta0", lr.constants.beta0_value},
                             {"beta_tilde", lr.constants.beta_tilde},
                             {"beta", lr.constants.beta},
                             {"T0", lr.constants.t0}};
    manifest["n_max_pass"] = lr.n_max_pass;
    finalize_manifest(manifest, out_dir);
    std::cout << "ladder rungs passing: N_max = " << lr.n_max_pass << "\n";
    return 0;
}

int cmd_kernel_info(const ExperimentConfig& cfg) {
    const AngularKernel& k = cfg.sim.kernel;
    std::cout << "family            " << to_string(k.family) << "\n";
    std::cout << "d                 " << k.d << "\n";
    std::cout << "kappa             " << k.kappa << "\n";
    if (k.family == KernelFamily::debye_yukawa_model) std::cout << "mu                " << k.mu << "\n";
    if (k.family == KernelFamily::power_law_model) std::cout << "nu                " << k.nu << "\n";
    const double mt = momentum_transfer(k, cfg.sim.quad_tol);
    std::cout << "momentum_transfer " << fmt_full(mt) << "\n";
    std::cout << "lambda2           "
              << fmt_full(kernel_moment(k, MomentWeight::two_sc, cfg.sim.quad_tol)) << "\n";
    std::cout << "c_bd              " << fmt_full(c_bd_constant(k, cfg.sim.quad_tol)) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier-spectral homogeneous Boltzmann simulator and inequality harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    long seed_override = -1;
    double tol_override = -1.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--out", out_override, "output directory override");
        sub->add_option("--seed", seed_override, "seed override");
        sub->add_option("--tol-report", tol_override, "report tolerance override");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run a trajectory, write snapshots");
    CLI::App* ver = app.add_subcommand("verify", "run the inequality suite");
    CLI::App* smo = app.add_subcommand("smoothing", "measure the Fourier-weight decay rate");
    CLI::App* ind = app.add_subcommand("induction", "replay the frequency-cutoff ladder");
    CLI::App* kin = app.add_subcommand("kernel-info", "print kernel moments");
    for (CLI::App* sub : {sim, ver, smo, ind, kin}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
        if (tol_override > 0) cfg.tol_report = tol_override;

        if (app.got_subcommand(sim)) return cmd_simulate(cfg);
        if (app.got_subcommand(ver)) return cmd_verify(cfg);
        if (app.got_subcommand(smo)) return cmd_smoothing(cfg);
        if (app.got_subcommand(ind)) return cmd_induction(cfg);
        if (app.got_subcommand(kin)) return cmd_kernel_info(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error";
        if (e.line > 0) std::cerr << " (line " << e.line << ")";
        if (!e.field.empty()) std::cerr << " [" << e.field << "]";
        std::cerr << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
