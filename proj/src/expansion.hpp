#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "levels.hpp"

namespace expcode::expansion {

/// Probability that the bit at weight 2^level is one in the binary expansion
/// of an Exp(lambda) variable: 1/(1 + e^{lambda·2^level}).
///
/// Saturation contract: when lambda·2^level exceeds the double exponent range
/// the result is exactly 0 (never NaN); when it is below 1e-300 the first-order
/// series 0.5 - lambda·2^level/4 is returned, so monotonicity in `level`
/// survives down to the representable limit.
double level_prob(double lambda, int level);

/// The full per-level bit-probability vector over `range`.
BernoulliProfile binary_profile(double lambda, const LevelRange& range);

/// One row of the q-ary expansion table:
/// b_{l,s} = (1 - e^{-lambda·q^l}) e^{-lambda·q^l·s} / (1 - e^{-lambda·q^{l+1}}),
/// s = 0..q-1. When e^{-lambda·q^{l+1}} underflows the denominator is exactly 1
/// and the limiting form is used as-is.
std::vector<double> qary_level_dist(double lambda, int level, int q);

/// Per-level q-ary expansion table over `range`.
QaryProfile qary_profile(double lambda, const LevelRange& range, int q);

/// Positional reconstruction: sum of q^level · symbol over the range.
/// `symbols` is indexed lo..hi; each symbol must lie in [0, q-1].
double reconstruct(std::span<const int> symbols, const LevelRange& range, int q = 2);

/// n reconstructed draws from independently sampled Bernoulli levels with
/// probabilities binary_profile(lambda, range). Deterministic in (seed, index,
/// level) via the keyed counter generator.
std::vector<double> sample_expanded(double lambda, const LevelRange& range, std::uint64_t n,
                                    std::uint64_t seed);

/// Mean of the truncated expansion: sum of 2^level · prob over the profile.
double truncated_mean(const BernoulliProfile& profile);

}  // namespace expcode::expansion
