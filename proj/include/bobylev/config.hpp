#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bobylev/solver.hpp"
#include "bobylev/weights.hpp"

namespace bobylev {

/// Config-file diagnostics carry the offending line and field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line_, std::string field_)
        : std::runtime_error(what), line(line_), field(std::move(field_)) {}
    int line;
    std::string field;
};

/// Flat INI-style document: [section] headers, key = value pairs,
/// '#'/';' comments. Keys are consumed by the typed getters; anything left
/// unconsumed is rejected, so schema drift fails loudly.
class ConfigDoc {
public:
    static ConfigDoc parse_file(const std::string& path);
    static ConfigDoc parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key);
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback);
    double get_double(const std::string& section, const std::string& key);
    double get_double(const std::string& section, const std::string& key, double fallback);
    long get_int(const std::string& section, const std::string& key, long fallback);
    std::vector<double> get_double_list(const std::string& section, const std::string& key,
                                        const std::vector<double>& fallback);

    /// Throws on any key never consumed by a getter.
    void reject_unknown() const;

    std::string canonical_text() const; // config echo for the manifest

private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool consumed = false;
    };
    std::map<std::string, Entry> entries_; // "section.key" -> entry
    std::string raw_;

    const Entry& lookup(const std::string& section, const std::string& key);
};

/// Typed experiment configuration shared by all CLI commands.
struct ExperimentConfig {
    std::uint64_t seed = 42;
    std::string out_dir = "out";
    double tol_report = 1e-12;

    SimConfig sim;
    WeightParams weights;
    bool has_weights = false;

    // verify sweep sizes
    long subadditivity_samples = 100000;
    long gtilde_samples = 100000;
    long psi_samples = 10000;
    long embedding_samples = 100;
    long coercivity_samples = 100;
    long commutation_samples = 100;
    long trilinear_samples = 100;

    // smoothing
    double fit_x_lo = 30.0;
    double fit_x_hi = 400.0;
    std::vector<double> fit_times{0.25, 0.5, 1.0};

    // induction
    double induction_t0 = 1.0;

    std::string config_echo;

    static ExperimentConfig from_doc(ConfigDoc& doc);
    static ExperimentConfig from_file(const std::string& path);
};

} // namespace bobylev
