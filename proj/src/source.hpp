#pragma once

#include <vector>

#include "levels.hpp"

namespace expcode::source {

/// Exponential source with rate parameter lambda (mean 1/lambda).
struct SourceSpec {
    double lambda;

    explicit SourceSpec(double lam);
    /// -log2(lambda), the level-shift parameter of the source profile.
    double gamma() const noexcept;
};

enum class RdScheme {
    OneSided,
    Successive,
    Shannon,
    QuantizerLinear,
    QuantizerNonlinear,
};

const char* rd_scheme_name(RdScheme s) noexcept;

/// An achievable (rate, distortion) pair under the one-sided error measure,
/// with per-level breakdown and the two truncation-tail terms for the
/// expansion schemes (tails are zero for quantizer points).
struct RdPoint {
    RdScheme scheme = RdScheme::OneSided;
    LevelRange range{0, 0};
    double rate = 0.0;        // bits/sample
    double distortion = 0.0;  // one-sided error, source units
    std::vector<double> per_level_rates;
    std::vector<double> per_level_distortions;  // 2^l · d_l terms
    double tail_high = 0.0;                     // 2^{-L2+1}/lambda^2
    double tail_low = 0.0;                      // 2^{-L1-1}
};

/// Shannon limit: -log2(lambda·d) on (0, 1/lambda], 0 beyond, +inf at d = 0.
double rd_function(const SourceSpec& spec, double distortion);

/// Per-level distortion parameters d_l = 1/(1+e^{2^l/d}).
BernoulliProfile distortion_profile(double distortion, const LevelRange& range);

/// Rate of a single level coded through the asymmetric (Z-channel) test
/// channel: H(p) - (1-p+d)·H(d/(1-p+d)). Requires 0 <= d <= p <= 0.5.
double rate_z(double p, double d);

/// Rate of a single level coded through the symmetric test channel:
/// H(p) - H(d/(1-2p+2d)). Requires 0 <= d <= p <= 0.5.
double rate_x(double p, double d);

/// Probability that all levels above each level were encoded equal to the
/// source: alpha_{L2} = 1, alpha_l = prod_{k>l} (1-d_k). Indexed lo..hi.
std::vector<double> alpha_weights(const BernoulliProfile& distortion);

/// One-sided scheme: every level uses the Z-channel model.
RdPoint scheme_one_sided(const SourceSpec& spec, double target, const LevelRange& range);

/// Successive scheme: Z-channel with weight alpha_l, symmetric otherwise.
/// Same distortion accounting as the one-sided scheme.
RdPoint scheme_successive(const SourceSpec& spec, double target, const LevelRange& range);

/// Smallest window with L1 >= -log2(d) and L2 >= -log2(lambda^2·d), clamped
/// to L1, L2 >= 1.
LevelRange compliant_range(const SourceSpec& spec, double target);

/// Rate-distortion gap verdict at the minimal compliant range. The enforced
/// bound is 5.5·log2e bits.
struct RdGapReport {
    double target = 0.0;
    LevelRange range{0, 0};
    double rate_one_sided = 0.0;
    double rate_successive = 0.0;
    double distortion_one_sided = 0.0;
    double distortion_successive = 0.0;
    double gap_one_sided = 0.0;   // R1 - R(D1)
    double gap_successive = 0.0;  // R2 - R(D2)
    double bound = 0.0;           // 5.5·log2e
    bool pass = false;
};
RdGapReport gap_check(const SourceSpec& spec, double target);

enum class QuantizerKind { Linear, Nonlinear };

/// Fixed-rate scalar quantizer baseline with k cells and lower-edge
/// reconstruction (so estimates never exceed the source and the one-sided
/// distortion stays finite). Linear: uniform cell width optimized by
/// golden-section search; nonlinear: equiprobable cells at exponential
/// quantiles. Rate is log2(k); distortion is exact (geometric sums).
RdPoint quantizer_baseline(const SourceSpec& spec, int cells, QuantizerKind kind);

}  // namespace expcode::source
