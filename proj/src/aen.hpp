#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "levels.hpp"

namespace expcode::aen {

/// Additive exponential noise channel: mean input constraint e_x, mean noise
/// e_z, both positive.
struct ChannelSpec {
    double e_x;
    double e_z;

    ChannelSpec(double ex, double ez);
    double snr() const noexcept { return e_x / e_z; }
    /// log2 of the noise mean.
    double eta() const noexcept;
    /// log2 of the input mean.
    double xi() const noexcept;
};

enum class Scheme {
    CarriesAsNoise,
    DecodeCarries,
    QaryDecodeCarries,
};

const char* scheme_name(Scheme s) noexcept;

/// Per-level and total achievable rate for one channel configuration, plus
/// capacity and the gap to it. All rates in bits per channel use.
struct RateReport {
    LevelRange range{0, 0};
    Scheme scheme = Scheme::DecodeCarries;
    int q = 2;
    std::vector<double> per_level;
    double total = 0.0;
    double capacity = 0.0;
    double gap = 0.0;
};

/// log2(1 + SNR).
double capacity(const ChannelSpec& spec);

/// Capacity-achieving input law: exponential body plus an atom at zero.
struct InputDensity {
    double density;  // continuous part at the query point
    double atom;     // point mass at zero
};
InputDensity optimal_input_density(double x, const ChannelSpec& spec);

/// Noise bit probabilities q_l = 1/(1+e^{2^l/e_z}).
BernoulliProfile noise_profile(const ChannelSpec& spec, const LevelRange& range);
/// Input bit probabilities p_l = 1/(1+e^{2^l/e_x}).
BernoulliProfile input_profile(const ChannelSpec& spec, const LevelRange& range);

/// Probability that a carry arrives *into* each level when the expanded input
/// and noise are added over the reals. The lowest level has carry 0; one level
/// up, c_{l+1} = p_l q_l (1-c_l) + p_l (1-q_l) c_l + (1-p_l) q_l c_l + p_l q_l c_l.
/// The carry out of the top level is dropped (levels above the window are
/// uncoded zeros).
BernoulliProfile carry_profile(const BernoulliProfile& input, const BernoulliProfile& noise);

/// Elementwise q_l ⊗ c_l: the bit-flip probability seen at a level when the
/// incoming carry is lumped into the noise.
BernoulliProfile effective_noise(const BernoulliProfile& noise, const BernoulliProfile& carry);

/// Rate of the scheme that treats carries as extra per-level noise:
/// sum of H(p_l ⊗ q̃_l) - H(q̃_l). The effective noise at each level includes
/// the carry state after that level's own addition step (the convention the
/// reference rate curves follow); the physical carry-in marginals are what
/// carry_profile() returns.
RateReport rate_carries_as_noise(const ChannelSpec& spec, const LevelRange& range);

/// Rate of the scheme that recovers carries level by level:
/// sum of H(p_l ⊗ q_l) - H(q_l).
RateReport rate_decoding_carries(const ChannelSpec& spec, const LevelRange& range);

/// q-ary generalization of the decode-carries rate: per-level categorical
/// entropies with cyclic (mod-q) convolution of the input and noise rows.
RateReport qary_rate_decoding_carries(const ChannelSpec& spec, const LevelRange& range, int q);

enum class BoundKind {
    NoiseEntropyUpper,      // H(q_l) < 3·log2e·2^{eta-l},        l > eta
    NoiseEntropyLower,      // H(q_l) > 1 - 2^{l-eta}·log2e,      l <= eta
    EffectiveEntropyUpper,  // H(q̃_l) < 6(l-eta)·2^{eta-l}·log2e, l > eta
    EffectiveEntropyLower,  // H(q̃_l) > 1 - 2^{l-eta}·log2e,      l <= eta
    CarryUpper,             // c_l < 2^{eta-l+1} - 2/(1+e^{2^{l-eta}}), l > eta
};

const char* bound_name(BoundKind k) noexcept;

struct BoundCheck {
    int level;
    BoundKind kind;
    double value;  // the checked quantity
    double bound;  // the analytic bound
    double slack;  // positive margin when satisfied
    bool ok;
};

struct BoundReport {
    std::vector<BoundCheck> checks;
    std::size_t violations = 0;
};

/// Evaluates the per-level noise/effective-noise entropy bounds and the carry
/// bound at every level of `range`; the expected violation count is zero.
BoundReport verify_entropy_bounds(const ChannelSpec& spec, const LevelRange& range);

/// Smallest level window satisfying L1 >= -log2(eps) - log2(e_z) and
/// L2 >= -log2(eps) + log2(e_x), clamped to L1, L2 >= 1.
LevelRange compliant_range(double epsilon, const ChannelSpec& spec);

/// Capacity-gap verdict at the minimal compliant range for a given epsilon.
struct GapReport {
    bool hypotheses_met = false;  // requires SNR >= 1/epsilon
    double epsilon = 0.0;
    LevelRange range{0, 0};
    double capacity = 0.0;
    double rate_carries_as_noise = 0.0;
    double rate_decoding_carries = 0.0;
    double gap_carries_as_noise = 0.0;
    double gap_decoding_carries = 0.0;
    double bound_decoding_carries = 0.0;  // 5·eps·log2e
    double bound_carries_as_noise = 0.0;  // 19·log2e, SNR-independent
    bool pass = false;
};
GapReport gap_report(double epsilon, const ChannelSpec& spec);

}  // namespace expcode::aen
