#pragma once

#include <cstdint>
#include <vector>

#include "aen.hpp"
#include "levels.hpp"

namespace expcode::mc {

enum class StatKind {
    LevelFrequency,
    Carry,
    EffectiveNoise,
    MutualInformation,
};

const char* stat_kind_name(StatKind k) noexcept;

/// One empirical-vs-analytic comparison. z is the normalized deviation:
/// binomial z-score for frequency stats, bootstrap-normalized deviation for
/// mutual-information stats (with a 0.0025-bit floor on the bootstrap sigma,
/// so |z| <= 4 means |emp - analytic| <= max(4·sigma_boot, 0.01)).
struct LevelStat {
    StatKind kind;
    int level;
    double empirical;
    double analytic;
    double z;
};

struct SimReport {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::vector<LevelStat> per_level_stats;
    bool has_ks = false;
    double ks_statistic = 0.0;
    double ks_threshold = 0.0;
    bool pass = false;
};

/// Samples n expansion draws, then checks (a) per-level one-frequencies
/// against the analytic bit probabilities within 4 sigma and (b) the
/// Kolmogorov-Smirnov distance of the reconstructed values from the
/// exponential CDF against the alpha = 0.01 threshold 1.63/sqrt(n).
/// `sampling_override`, when given, replaces the sampling profile while the
/// analytic reference stays untouched (negative-control hook).
SimReport validate_expansion(double lambda, const LevelRange& range, std::uint64_t n,
                             std::uint64_t seed,
                             const BernoulliProfile* sampling_override = nullptr);

/// Samples expanded input and noise words, adds them exactly on the level
/// grid, and compares the realized carry-into-level frequencies against the
/// carry recursion and the realized flip frequencies (Y_l != X_l) against the
/// effective noise, all within 4 sigma. `carry_reference`, when given,
/// replaces the analytic carry profile (negative-control hook).
SimReport simulate_carries(const aen::ChannelSpec& spec, const LevelRange& range, std::uint64_t n,
                           std::uint64_t seed, const BernoulliProfile* carry_reference = nullptr);

/// Plug-in mutual information per level for the decode-carries model
/// (X_l against X_l xor Z_l), compared with the analytic per-level rate.
/// Tolerance is max(4·sigma_boot, 0.01 bits) with a 100-resample bootstrap.
SimReport empirical_level_mi(const aen::ChannelSpec& spec, const LevelRange& range,
                             std::uint64_t n, std::uint64_t seed);

/// Kolmogorov-Smirnov statistic of a sample against the Exp(lambda) CDF.
/// Sorts a copy of the values.
double ks_statistic_exponential(std::vector<double> values, double lambda);

}  // namespace expcode::mc
