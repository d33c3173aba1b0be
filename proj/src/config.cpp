#include "bobylev/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bobylev {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path, 0, path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

ConfigDoc ConfigDoc::parse_string(const std::string& text) {
    ConfigDoc doc;
    doc.raw_ = text;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header", lineno, line);
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value", lineno, line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno, line);
        const std::string full = section.empty() ? key : section + "." + key;
        if (doc.entries_.count(full))
            throw ConfigError("duplicate key: " + full, lineno, full);
        doc.entries_[full] = Entry{value, lineno, false};
    }
    return doc;
}

bool ConfigDoc::has(const std::string& section, const std::string& key) const {
    const std::string full = section.empty() ? key : section + "." + key;
    return entries_.count(full) != 0;
}

const ConfigDoc::Entry& ConfigDoc::lookup(const std::string& section, const std::string& key) {
    const std::string full = section.empty() ? key : section + "." + key;
    auto it = entries_.find(full);
    if (it == entries_.end()) throw ConfigError("missing required field: " + full, 0, full);
    it->second.consumed = true;
    return it->second;
}

std::string ConfigDoc::get_string(const std::string& section, const std::string& key) {
    return lookup(section, key).value;
}

std::string ConfigDoc::get_string(const std::string& section, const std::string& key,
                                  const std::string& fallback) {
    if (!has(section, key)) return fallback;
    return lookup(section, key).value;
}

double ConfigDoc::get_double(const std::string& section, const std::string& key) {
    const Entry& e = lookup(section, key);
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0')
        throw ConfigError("expected a number for " + section + "." + key, e.line,
                          section + "." + key);
    return v;
}

double ConfigDoc::get_double(const std::string& section, const std::string& key, double fallback) {
    if (!has(section, key)) return fallback;
    return get_double(section, key);
}

long ConfigDoc::get_int(const std::string& section, const std::string& key, long fallback) {
    if (!has(section, key)) return fallback;
    const Entry& e = lookup(section, key);
    char* end = nullptr;
    const long v = std::strtol(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0')
        throw ConfigError("expected an integer for " + section + "." + key, e.line,
                          section + "." + key);
    return v;
}

std::vector<double> ConfigDoc::get_double_list(const std::string& section, const std::string& key,
                                               const std::vector<double>& fallback) {
    if (!has(section, key)) return fallback;
    const Entry& e = lookup(section, key);
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ConfigError("expected a number list for " + section + "." + key, e.line,
                              section + "." + key);
        out.push_back(v);
    }
    return out;
}

void ConfigDoc::reject_unknown() const {
    for (const auto& [full, e] : entries_)
        if (!e.consumed)
            throw ConfigError("unknown config key: " + full, e.line, full);
}

std::string ConfigDoc::canonical_text() const {
    return raw_;
}

ExperimentConfig ExperimentConfig::from_doc(ConfigDoc& doc) {
    ExperimentConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(doc.get_int("", "seed", 42));
    cfg.out_dir = doc.get_string("", "out_dir", "out");
    cfg.tol_report = doc.get_double("", "tol_report", 1e-12);

    AngularKernel& k = cfg.sim.kernel;
    const std::string fam = doc.get_string("kernel", "family", "debye_yukawa_model");
    k.family = kernel_family_from_string(fam);
    k.d = static_cast<int>(doc.get_int("kernel", "d", 3));
    k.kappa = doc.get_double("kernel", "kappa", 1.0);
    if (k.family == KernelFamily::debye_yukawa_model) {
        if (!doc.has("kernel", "mu"))
            throw ConfigError("missing required field: kernel.mu", 0, "kernel.mu");
        k.mu = doc.get_double("kernel", "mu");
    } else if (k.family == KernelFamily::power_law_model) {
        if (!doc.has("kernel", "nu"))
            throw ConfigError("missing required field: kernel.nu", 0, "kernel.nu");
        k.nu = doc.get_double("kernel", "nu");
    }
    cfg.sim.quad_tol = doc.get_double("kernel", "tol", 1e-12);

    cfg.sim.grid.n = static_cast<int>(doc.get_int("grid", "n", 2048));
    cfg.sim.grid.x_max = doc.get_double("grid", "x_max", 400.0);
    cfg.sim.interp_order = static_cast<int>(doc.get_int("grid", "interp_order", 5));

    cfg.sim.dt = doc.get_double("time", "dt", 1e-3);
    cfg.sim.t_end = doc.get_double("time", "t_end", 1.0);
    cfg.sim.snapshot_times = doc.get_double_list("time", "snapshots", {cfg.sim.t_end});
    const std::string integ = doc.get_string("time", "integrator", "rk4");
    if (integ == "rk4") cfg.sim.integrator = Integrator::rk4;
    else if (integ == "euler") cfg.sim.integrator = Integrator::euler;
    else throw ConfigError("unknown integrator: " + integ, 0, "time.integrator");

    InitialCondition& ic = cfg.sim.ic;
    const std::string icfam = doc.get_string("ic", "family", "maxwellian");
    if (icfam == "maxwellian") {
        ic.family = InitialCondition::Family::maxwellian;
        ic.c = doc.get_double("ic", "c", 1.0);
    } else if (icfam == "bkw") {
        ic.family = InitialCondition::Family::bkw;
        ic.a0 = doc.get_double("ic", "a0", -0.2);
        ic.e0 = doc.get_double("ic", "e0", 1.0);
    } else if (icfam == "matern") {
        ic.family = InitialCondition::Family::matern;
        ic.p = doc.get_double("ic", "p", 4.0);
    } else if (icfam == "two_temperature") {
        ic.family = InitialCondition::Family::two_temperature;
        ic.c1 = doc.get_double("ic", "c1", 0.5);
        ic.c2 = doc.get_double("ic", "c2", 2.0);
        ic.w = doc.get_double("ic", "w", 0.5);
    } else {
        throw ConfigError("unknown ic family: " + icfam, 0, "ic.family");
    }

    if (doc.has("weights", "alpha")) {
        cfg.has_weights = true;
        cfg.weights.alpha = doc.get_double("weights", "alpha");
        cfg.weights.beta = doc.get_double("weights", "beta", 0.1);
        cfg.weights.mu = doc.get_double("weights", "mu", k.mu);
        cfg.weights.t = doc.get_double("weights", "t", 1.0);
        if (doc.has("weights", "lambda"))
            cfg.weights.lambda_cut = doc.get_double("weights", "lambda");
        try {
            cfg.weights.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what(), 0, "weights.alpha");
        }
    }

    cfg.subadditivity_samples = doc.get_int("verify", "subadditivity_samples", 100000);
    cfg.gtilde_samples = doc.get_int("verify", "gtilde_samples", 100000);
    cfg.psi_samples = doc.get_int("verify", "psi_samples", 10000);
    cfg.embedding_samples = doc.get_int("verify", "embedding_samples", 100);
    cfg.coercivity_samples = doc.get_int("verify", "coercivity_samples", 100);
    cfg.commutation_samples = doc.get_int("verify", "commutation_samples", 100);
    cfg.trilinear_samples = doc.get_int("verify", "trilinear_samples", 100);

    cfg.fit_x_lo = doc.get_double("smoothing", "fit_x_lo", 30.0);
    cfg.fit_x_hi = doc.get_double("smoothing", "fit_x_hi", 400.0);
    cfg.fit_times = doc.get_double_list("smoothing", "times", {0.25, 0.5, 1.0});

    cfg.induction_t0 = doc.get_double("induction", "t0", 1.0);

    doc.reject_unknown();
    cfg.config_echo = doc.canonical_text();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    ConfigDoc doc = ConfigDoc::parse_file(path);
    return from_doc(doc);
}

} // namespace bobylev
