#include "source.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "entropy.hpp"
#include "expansion.hpp"

namespace expcode::source {

namespace {

constexpr double kLog2e = std::numbers::log2e;

double clamp_rate(double r) {
    return (r < 0.0 && r > -1e-12) ? 0.0 : r;
}

void check_level_pair(double p, double d) {
    if (!(d >= 0.0) || !(p <= 0.5) || !(p >= 0.0))
        throw std::domain_error("level probabilities must satisfy 0 <= p <= 0.5, d >= 0");
    if (d > p) throw std::domain_error("infeasible level: d exceeds p");
}

struct SchemeParts {
    BernoulliProfile source_bits;
    BernoulliProfile level_distortions;
    std::vector<double> weighted_distortions;  // 2^l · d_l
    double tail_high;
    double tail_low;
};

SchemeParts build_parts(const SourceSpec& spec, double target, const LevelRange& range) {
    if (!(target > 0.0) || !std::isfinite(target))
        throw std::domain_error("target distortion must be positive and finite");
    BernoulliProfile p = expansion::binary_profile(spec.lambda, range);
    BernoulliProfile d = distortion_profile(target, range);
    std::vector<double> weighted(range.width());
    for (int l = range.lo; l <= range.hi; ++l) {
        const std::size_t i = range.index_of(l);
        if (d.by_index(i) > p.by_index(i))
            throw InfeasibleError("distortion parameter exceeds source parameter at level " +
                                      std::to_string(l),
                                  l);
        weighted[i] = std::exp2(static_cast<double>(l)) * d.by_index(i);
    }
    const double lam = spec.lambda;
    SchemeParts parts{std::move(p), std::move(d), std::move(weighted),
                      std::exp2(static_cast<double>(-range.hi + 1)) / (lam * lam),
                      std::exp2(static_cast<double>(range.lo - 1))};
    return parts;
}

RdPoint assemble(RdScheme scheme, const LevelRange& range, SchemeParts parts,
                 std::vector<double> per_level_rates) {
    RdPoint pt;
    pt.scheme = scheme;
    pt.range = range;
    pt.per_level_rates = std::move(per_level_rates);
    pt.per_level_distortions = std::move(parts.weighted_distortions);
    pt.tail_high = parts.tail_high;
    pt.tail_low = parts.tail_low;
    pt.rate = 0.0;
    for (double r : pt.per_level_rates) pt.rate += r;
    pt.distortion = pt.tail_high + pt.tail_low;
    for (double d : pt.per_level_distortions) pt.distortion += d;
    return pt;
}

}  // namespace

SourceSpec::SourceSpec(double lam) : lambda(lam) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error("lambda must be positive and finite");
}

double SourceSpec::gamma() const noexcept { return -std::log2(lambda); }

const char* rd_scheme_name(RdScheme s) noexcept {
    switch (s) {
        case RdScheme::OneSided: return "one-sided";
        case RdScheme::Successive: return "successive";
        case RdScheme::Shannon: return "shannon";
        case RdScheme::QuantizerLinear: return "quantizer-linear";
        case RdScheme::QuantizerNonlinear: return "quantizer-nonlinear";
    }
    return "?";
}

double rd_function(const SourceSpec& spec, double distortion) {
    if (distortion < 0.0 || !std::isfinite(distortion))
        throw std::domain_error("distortion must be >= 0 and finite");
    if (distortion == 0.0) return std::numeric_limits<double>::infinity();
    if (distortion > 1.0 / spec.lambda) return 0.0;
    return std::max(0.0, -std::log2(spec.lambda * distortion));
}

BernoulliProfile distortion_profile(double distortion, const LevelRange& range) {
    if (!(distortion > 0.0)) throw std::domain_error("distortion must be positive");
    return expansion::binary_profile(1.0 / distortion, range);
}

double rate_z(double p, double d) {
    check_level_pair(p, d);
    if (d == 0.0) return binary_entropy(p);
    const double denom = 1.0 - p + d;
    return clamp_rate(binary_entropy(p) - denom * binary_entropy(d / denom));
}

double rate_x(double p, double d) {
    check_level_pair(p, d);
    if (d == 0.0) return binary_entropy(p);
    const double denom = 1.0 - 2.0 * p + 2.0 * d;
    const double arg = d / denom;
    if (!(arg >= 0.0 && arg <= 0.5 + 1e-12))
        throw std::domain_error("symmetric test channel parameter outside [0, 0.5]");
    return clamp_rate(binary_entropy(p) - binary_entropy(arg));
}

std::vector<double> alpha_weights(const BernoulliProfile& distortion) {
    const std::size_t n = distortion.size();
    std::vector<double> alpha(n, 1.0);
    for (std::size_t i = n - 1; i-- > 0;)
        alpha[i] = alpha[i + 1] * (1.0 - distortion.by_index(i + 1));
    return alpha;
}

RdPoint scheme_one_sided(const SourceSpec& spec, double target, const LevelRange& range) {
    SchemeParts parts = build_parts(spec, target, range);
    std::vector<double> rates(range.width());
    for (std::size_t i = 0; i < rates.size(); ++i)
        rates[i] = rate_z(parts.source_bits.by_index(i), parts.level_distortions.by_index(i));
    return assemble(RdScheme::OneSided, range, std::move(parts), std::move(rates));
}

RdPoint scheme_successive(const SourceSpec& spec, double target, const LevelRange& range) {
    SchemeParts parts = build_parts(spec, target, range);
    const std::vector<double> alpha = alpha_weights(parts.level_distortions);
    std::vector<double> rates(range.width());
    for (std::size_t i = 0; i < rates.size(); ++i) {
        const double p = parts.source_bits.by_index(i);
        const double d = parts.level_distortions.by_index(i);
        rates[i] = alpha[i] * rate_z(p, d) + (1.0 - alpha[i]) * rate_x(p, d);
    }
    return assemble(RdScheme::Successive, range, std::move(parts), std::move(rates));
}

LevelRange compliant_range(const SourceSpec& spec, double target) {
    if (!(target > 0.0) || target > (1.0 / spec.lambda) * (1.0 + 1e-12))
        throw std::domain_error("target distortion must lie in (0, 1/lambda]");
    const int l1 = std::max(1, ceil_level(-std::log2(target)));
    const int l2 = std::max(1, ceil_level(-std::log2(spec.lambda * spec.lambda * target)));
    return LevelRange(-l1, l2);
}

RdGapReport gap_check(const SourceSpec& spec, double target) {
    RdGapReport g;
    g.target = target;
    g.range = compliant_range(spec, target);
    g.bound = 5.5 * kLog2e;
    const RdPoint one = scheme_one_sided(spec, target, g.range);
    const RdPoint suc = scheme_successive(spec, target, g.range);
    g.rate_one_sided = one.rate;
    g.rate_successive = suc.rate;
    g.distortion_one_sided = one.distortion;
    g.distortion_successive = suc.distortion;
    g.gap_one_sided = one.rate - rd_function(spec, one.distortion);
    g.gap_successive = suc.rate - rd_function(spec, suc.distortion);
    g.pass = g.gap_one_sided <= g.bound + 1e-9 && g.gap_successive <= g.bound + 1e-9;
    return g;
}

namespace {

// Mean of the reconstruction of a linear quantizer with cell width delta:
// E[est] = delta · sum_{i=1}^{k-1} e^{-lambda·i·delta} (geometric sum).
double linear_quantizer_distortion(double lambda, int k, double delta) {
    const double r = std::exp(-lambda * delta);
    double mean_est;
    if (r >= 1.0) {  // degenerate delta -> 0
        mean_est = delta * static_cast<double>(k - 1);
    } else {
        mean_est = delta * r * (1.0 - std::pow(r, static_cast<double>(k - 1))) / (1.0 - r);
    }
    return 1.0 / lambda - mean_est;
}

double optimize_linear_delta(double lambda, int k) {
    // Coarse log-spaced scan, then golden-section refinement around the best
    // bracket to 1e-9 relative width.
    const int kScan = 400;
    const double lo = 1e-4 / (lambda * static_cast<double>(k));
    const double hi = 64.0 / lambda;
    double best = lo;
    double best_val = std::numeric_limits<double>::infinity();
    const double step = std::log(hi / lo) / (kScan - 1);
    for (int i = 0; i < kScan; ++i) {
        const double delta = lo * std::exp(step * i);
        const double v = linear_quantizer_distortion(lambda, k, delta);
        if (v < best_val) {
            best_val = v;
            best = delta;
        }
    }
    double a = best * std::exp(-step);
    double b = best * std::exp(step);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = linear_quantizer_distortion(lambda, k, c);
    double fd = linear_quantizer_distortion(lambda, k, d);
    while ((b - a) > 1e-9 * b) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = linear_quantizer_distortion(lambda, k, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = linear_quantizer_distortion(lambda, k, d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

RdPoint quantizer_baseline(const SourceSpec& spec, int cells, QuantizerKind kind) {
    if (cells < 1) throw std::domain_error("cell count must be >= 1");
    RdPoint pt;
    pt.scheme = kind == QuantizerKind::Linear ? RdScheme::QuantizerLinear
                                              : RdScheme::QuantizerNonlinear;
    pt.rate = std::log2(static_cast<double>(cells));
    if (cells == 1) {
        pt.distortion = 1.0 / spec.lambda;
        return pt;
    }
    if (kind == QuantizerKind::Linear) {
        const double delta = optimize_linear_delta(spec.lambda, cells);
        pt.distortion = linear_quantizer_distortion(spec.lambda, cells, delta);
    } else {
        // Equiprobable cells: edges at quantiles -ln(1 - i/k)/lambda,
        // reconstruction at the lower edge, each cell holding mass 1/k.
        double mean_est = 0.0;
        for (int i = 1; i < cells; ++i)
            mean_est += -std::log1p(-static_cast<double>(i) / cells) / spec.lambda;
        mean_est /= static_cast<double>(cells);
        pt.distortion = 1.0 / spec.lambda - mean_est;
    }
    return pt;
}

}  // namespace expcode::source
