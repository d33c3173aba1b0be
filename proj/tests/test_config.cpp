#include <doctest.h>

#include "bobylev/config.hpp"
#include "bobylev/io.hpp"

using namespace bobylev;

namespace {

const char* kGoodConfig = R"(
seed = 7
out_dir = scratch

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

[weights]
alpha = 54.598150033144236
beta = 0.1
mu = 1.0
t = 1.0
lambda = 8.0
)";

} // namespace

TEST_CASE("config round trip") {
    ConfigDoc doc = ConfigDoc::parse_string(kGoodConfig);
    const ExperimentConfig cfg = ExperimentConfig::from_doc(doc);
    CHECK(cfg.seed == 7);
    CHECK(cfg.out_dir == "scratch");
    CHECK(cfg.sim.kernel.d == 3);
    CHECK(cfg.sim.kernel.mu == doctest::Approx(1.0));
    CHECK(cfg.sim.grid.n == 256);
    CHECK(cfg.sim.snapshot_times.size() == 2);
    CHECK(cfg.sim.ic.family == InitialCondition::Family::bkw);
    CHECK(cfg.has_weights);
    CHECK(cfg.weights.lambda_cut.has_value());
    CHECK_NOTHROW(cfg.sim.validate());
}

TEST_CASE("unknown keys are rejected with their line") {
    const std::string text = std::string(kGoodConfig) + "\n[kernel]\n"; // reopen section
    ConfigDoc doc = ConfigDoc::parse_string(std::string(kGoodConfig) +
                                            "\n[weights]\nbogus_knob = 3\n");
    CHECK_THROWS_AS(ExperimentConfig::from_doc(doc), ConfigError);
    try {
        ConfigDoc doc2 = ConfigDoc::parse_string(std::string(kGoodConfig) +
                                                 "\n[weights]\nbogus_knob = 3\n");
        ExperimentConfig::from_doc(doc2);
    } catch (const ConfigError& e) {
        CHECK(e.field == "weights.bogus_knob");
        CHECK(e.line > 0);
    }
}

TEST_CASE("missing required fields are named") {
    const char* text = R"(
[kernel]
family = debye_yukawa_model
d = 3
kappa = 1.0
)"; // mu missing
    ConfigDoc doc = ConfigDoc::parse_string(text);
    try {
        ExperimentConfig::from_doc(doc);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.field == "kernel.mu");
    }
}

TEST_CASE("malformed lines carry diagnostics") {
    CHECK_THROWS_AS(ConfigDoc::parse_string("[kernel\nfamily = x\n"), ConfigError);
    CHECK_THROWS_AS(ConfigDoc::parse_string("[kernel]\nno_equals_sign\n"), ConfigError);
    CHECK_THROWS_AS(ConfigDoc::parse_string("[a]\nk = 1\nk = 2\n"), ConfigError);
}

TEST_CASE("duplicate and typed getters") {
    ConfigDoc doc = ConfigDoc::parse_string("[s]\na = 1.5\nb = nope\n");
    CHECK(doc.get_double("s", "a") == doctest::Approx(1.5));
    CHECK_THROWS_AS(doc.get_double("s", "b"), ConfigError);
}

TEST_CASE("full precision round trip of doubles") {
    const double v = 0.1234567890123456789;
    const std::string s = fmt_full(v);
    CHECK(std::stod(s) == v);
    CHECK(fmt_full(1.0) == "1");
}

TEST_CASE("fnv hash is stable") {
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") == 12638187200555641996ull);
}
