#pragma once

#include "bobylev/config.hpp"
#include "bobylev/regularity.hpp"
#include "bobylev/verify.hpp"

namespace bobylev {

/// Seeded randomized inequality suite: subadditivity, weight-difference
/// bound, psi scaling, cube embedding, coercivity, commutation error,
/// trilinear bound, Laplace substitution identity. Sample counts come from
/// the config; identical seed implies identical report.
VerificationReport run_inequality_suite(const ExperimentConfig& cfg);

/// Random mass-normalized radial test state on a quadratic grid
/// (Maxwellian mixtures, BKW-type, polynomial-decay families).
IsoSpectralField random_state(std::uint64_t seed, int n, double x_max, int d);

} // namespace bobylev
