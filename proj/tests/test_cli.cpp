// Exercises the command-line driver end to end: artifact contract, exit
// codes, determinism of outputs. Invoked with the binary path as argv[1].

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <algorithm>
#include <sstream>
#include <string>

#include "bobylev/io.hpp"

namespace fs = std::filesystem;

static int failures = 0;

#define REQUIRE_MSG(cond, msg)                                              \
    do {                                                                    \
        if (!(cond)) {                                                      \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << "  "  \
                      << msg << "\n";                                       \
            ++failures;                                                     \
        }                                                                   \
    } while (0)

namespace {

std::string g_binary;

int run(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

const char* kSimConfig = R"(
seed = 42

[kernel]
family = debye_yukawa_model
d = 3
kappa = 1.0
mu = 1.0
tol = 1e-12

[grid]
n = 256
x_max = 100.0

[time]
dt = 0.01
t_end = 0.5
snapshots = 0.25, 0.5

[ic]
family = bkw
a0 = -0.2
e0 = 1.0
)";

const char* kVerifyConfig = R"(
seed = 42

[kernel]
family = debye_yukawa_model
d = 3
kappa = 1.0
mu = 1.0

[verify]
subadditivity_samples = 2000
gtilde_samples = 2000
psi_samples = 500
embedding_samples = 10
coercivity_samples = 8
commutation_samples = 8
trilinear_samples = 8
)";

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <binary>\n";
        return 1;
    }
    g_binary = argv[1];
    const fs::path work = fs::temp_directory_path() / "bobylev_cli_test";
    fs::remove_all(work);
    fs::create_directories(work);

    // --- simulate: artifact contract
    write(work / "sim.cfg", kSimConfig);
    const fs::path out1 = work / "out1";
    REQUIRE_MSG(run("simulate --config " + (work / "sim.cfg").string() + " --out " +
                    out1.string()) == 0,
                "simulate exits 0");
    REQUIRE_MSG(fs::exists(out1 / "manifest.json"), "manifest written");
    REQUIRE_MSG(fs::exists(out1 / "moments.csv"), "moments written");
    REQUIRE_MSG(fs::exists(out1 / "snap_t0.250000.csv"), "snapshot 0.25 written");
    REQUIRE_MSG(fs::exists(out1 / "snap_t0.500000.csv"), "snapshot 0.5 written");

    // determinism: identical config + seed => identical artifacts
    const fs::path out2 = work / "out2";
    REQUIRE_MSG(run("simulate --config " + (work / "sim.cfg").string() + " --out " +
                    out2.string()) == 0,
                "second simulate exits 0");
    REQUIRE_MSG(bobylev::read_text_file((out1 / "moments.csv").string()) ==
                    bobylev::read_text_file((out2 / "moments.csv").string()),
                "moment series byte-identical");
    REQUIRE_MSG(bobylev::read_text_file((out1 / "snap_t0.500000.csv").string()) ==
                    bobylev::read_text_file((out2 / "snap_t0.500000.csv").string()),
                "snapshots byte-identical");
    {
        const std::string m1 = bobylev::read_text_file((out1 / "manifest.json").string());
        const std::string m2 = bobylev::read_text_file((out2 / "manifest.json").string());
        auto hash_of = [](const std::string& s) {
            const auto pos = s.find("content_hash");
            return s.substr(pos, 40);
        };
        REQUIRE_MSG(hash_of(m1) == hash_of(m2), "content hashes agree");
    }

    // conservation residuals present in the manifest
    {
        const std::string m = bobylev::read_text_file((out1 / "manifest.json").string());
        REQUIRE_MSG(m.find("mass_drift") != std::string::npos, "residuals recorded");
    }

    // --- malformed config: exit 2 and the offending field is named
    write(work / "bad.cfg", R"(
[kernel]
family = debye_yukawa_model
d = 3
kappa = 1.0
)");
    {
        const std::string cmd = g_binary + " simulate --config " + (work / "bad.cfg").string() +
                                " --out " + (work / "outbad").string() + " 2> " +
                                (work / "bad.err").string();
        const int rc = WEXITSTATUS(std::system(cmd.c_str()));
        REQUIRE_MSG(rc == 2, "config error exits 2");
        const std::string err = bobylev::read_text_file((work / "bad.err").string());
        REQUIRE_MSG(err.find("kernel.mu") != std::string::npos, "missing field named");
    }

    // unknown key also exits 2
    write(work / "unk.cfg", std::string(kSimConfig) + "\n[grid]\nwhatever = 2\n");
    REQUIRE_MSG(run("simulate --config " + (work / "unk.cfg").string() + " --out " +
                    (work / "outunk").string()) == 2,
                "unknown key exits 2");

    // --- verify: report contract and exit 0 on the default suite
    write(work / "ver.cfg", kVerifyConfig);
    const fs::path outv = work / "outv";
    REQUIRE_MSG(run("verify --config " + (work / "ver.cfg").string() + " --out " +
                    outv.string()) == 0,
                "verify exits 0");
    {
        const std::string rep = bobylev::read_text_file((outv / "report.json").string());
        REQUIRE_MSG(rep.find("check_id") != std::string::npos, "report schema");
        REQUIRE_MSG(rep.find("margin") != std::string::npos, "report margins");
        REQUIRE_MSG(rep.find("subadditivity_sweep") != std::string::npos, "sweep present");
    }

    // adversarial weights: alpha below e^mu rejected at validation
    write(work / "adv.cfg", std::string(kVerifyConfig) +
                                "\n[weights]\nalpha = 2.0\nbeta = 0.1\nmu = 1.0\nt = 1.0\n");
    REQUIRE_MSG(run("verify --config " + (work / "adv.cfg").string() + " --out " +
                    (work / "outadv").string()) == 2,
                "alpha below e^mu rejected");

    // --- smoothing: fits table
    write(work / "smooth.cfg", R"(
seed = 42

[kernel]
family = debye_yukawa_model
d = 3
kappa = 0.4
mu = 1.0
tol = 1e-11

[grid]
n = 256
x_max = 500.0

[time]
dt = 0.01
t_end = 0.5

[ic]
family = matern
p = 4.0

[weights]
alpha = 54.598150033144236
beta = 0.1
mu = 1.0
t = 1.0

[smoothing]
fit_x_lo = 30.0
fit_x_hi = 400.0
times = 0.25, 0.5
)");
    const fs::path outs = work / "outs";
    REQUIRE_MSG(run("smoothing --config " + (work / "smooth.cfg").string() + " --out " +
                    outs.string()) == 0,
                "smoothing exits 0");
    {
        const std::string fits = bobylev::read_text_file((outs / "fits.csv").string());
        REQUIRE_MSG(fits.find("beta_hat") != std::string::npos, "fits header");
        REQUIRE_MSG(fits.find("r_squared") != std::string::npos, "fits r^2 column");
        REQUIRE_MSG(std::count(fits.begin(), fits.end(), '\n') == 3, "two fit rows");
    }
    // t = 0 rows are refused
    write(work / "smooth0.cfg", std::string(kSimConfig) + "\n[smoothing]\ntimes = 0.0, 0.25\n");
    REQUIRE_MSG(run("smoothing --config " + (work / "smooth0.cfg").string() + " --out " +
                    (work / "outs0").string()) == 2,
                "t = 0 fit refused");

    // --- induction: ladder table and constants block
    write(work / "ind.cfg", R"(
seed = 42

[kernel]
family = debye_yukawa_model
d = 3
kappa = 1.0
mu = 1.0
tol = 1e-11

[grid]
n = 384
x_max = 500.0

[time]
dt = 0.01
t_end = 1.0

[ic]
family = maxwellian
c = 1.0

[induction]
t0 = 1.0
)");
    const fs::path outi = work / "outi";
    REQUIRE_MSG(run("induction --config " + (work / "ind.cfg").string() + " --out " +
                    outi.string()) == 0,
                "induction exits 0");
    {
        const std::string ladder = bobylev::read_text_file((outi / "ladder.csv").string());
        REQUIRE_MSG(ladder.find("lambda_N") != std::string::npos, "ladder header");
        const std::string man = bobylev::read_text_file((outi / "manifest.json").string());
        REQUIRE_MSG(man.find("alpha_star") != std::string::npos, "constants block");
        REQUIRE_MSG(man.find("54.598") != std::string::npos, "alpha* = e^4 for d=3, mu=1");
        REQUIRE_MSG(man.find("beta_tilde") != std::string::npos, "beta_tilde recorded");
    }

    // --- kernel-info runs
    REQUIRE_MSG(run("kernel-info --config " + (work / "sim.cfg").string()) == 0,
                "kernel-info exits 0");

    if (failures == 0) std::cout << "test_cli: all checks passed\n";
    return failures == 0 ? 0 : 1;
}
