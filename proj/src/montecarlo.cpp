#include "montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "entropy.hpp"
#include "expansion.hpp"
#include "rng.hpp"

namespace expcode::mc {

namespace {

double frequency_z(double freq, double analytic, std::uint64_t n) {
    if (analytic <= 0.0 || analytic >= 1.0) {
        return freq == analytic ? 0.0 : std::numeric_limits<double>::infinity();
    }
    const double sigma = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(n));
    if (sigma == 0.0)  // expected count underflows; only an empty sample agrees
        return freq == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return (freq - analytic) / sigma;
}

bool all_within_4sigma(const std::vector<LevelStat>& stats) {
    for (const LevelStat& s : stats)
        if (!(std::abs(s.z) <= 4.0)) return false;
    return true;
}

}  // namespace

const char* stat_kind_name(StatKind k) noexcept {
    switch (k) {
        case StatKind::LevelFrequency: return "level_freq";
        case StatKind::Carry: return "carry";
        case StatKind::EffectiveNoise: return "effective_noise";
        case StatKind::MutualInformation: return "mi";
    }
    return "?";
}

double ks_statistic_exponential(std::vector<double> values, double lambda) {
    if (values.empty()) throw std::domain_error("sample must be non-empty");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double cdf = -std::expm1(-lambda * values[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
    }
    return d;
}

SimReport validate_expansion(double lambda, const LevelRange& range, std::uint64_t n,
                             std::uint64_t seed, const BernoulliProfile* sampling_override) {
    if (n < 1000) throw std::domain_error("need at least 1000 samples");
    const BernoulliProfile analytic = expansion::binary_profile(lambda, range);
    const BernoulliProfile& sampling = sampling_override ? *sampling_override : analytic;
    if (!(sampling.range() == range))
        throw std::invalid_argument("sampling override range mismatch");

    std::vector<std::uint64_t> ones(range.width(), 0);
    std::vector<double> values;
    values.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        double value = 0.0;
        for (int l = range.lo; l <= range.hi; ++l) {
            const double u = rng::keyed_uniform(seed, rng::kStreamExpansion, i, rng::level_key(l));
            if (u < sampling.at(l)) {
                ones[range.index_of(l)] += 1;
                value += std::exp2(static_cast<double>(l));
            }
        }
        values.push_back(value);
    }

    SimReport rep;
    rep.n = n;
    rep.seed = seed;
    for (int l = range.lo; l <= range.hi; ++l) {
        const double freq =
            static_cast<double>(ones[range.index_of(l)]) / static_cast<double>(n);
        rep.per_level_stats.push_back(LevelStat{StatKind::LevelFrequency, l, freq, analytic.at(l),
                                                frequency_z(freq, analytic.at(l), n)});
    }
    rep.has_ks = true;
    rep.ks_statistic = ks_statistic_exponential(std::move(values), lambda);
    rep.ks_threshold = 1.63 / std::sqrt(static_cast<double>(n));
    rep.pass = all_within_4sigma(rep.per_level_stats) && rep.ks_statistic < rep.ks_threshold;
    return rep;
}

SimReport simulate_carries(const aen::ChannelSpec& spec, const LevelRange& range, std::uint64_t n,
                           std::uint64_t seed, const BernoulliProfile* carry_reference) {
    if (n < 1000) throw std::domain_error("need at least 1000 samples");
    const BernoulliProfile p = aen::input_profile(spec, range);
    const BernoulliProfile q = aen::noise_profile(spec, range);
    const BernoulliProfile carry_ref =
        carry_reference ? *carry_reference : aen::carry_profile(p, q);
    if (!(carry_ref.range() == range))
        throw std::invalid_argument("carry reference range mismatch");
    const BernoulliProfile eff_ref = aen::effective_noise(q, carry_ref);

    const std::size_t w = range.width();
    std::vector<std::uint64_t> carry_ones(w, 0);
    std::vector<std::uint64_t> flip_ones(w, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        int carry = 0;  // exact bitwise addition on the level grid
        for (int l = range.lo; l <= range.hi; ++l) {
            const std::size_t idx = range.index_of(l);
            const int x =
                rng::keyed_uniform(seed, rng::kStreamChannelInput, i, rng::level_key(l)) < p.at(l);
            const int z =
                rng::keyed_uniform(seed, rng::kStreamChannelNoise, i, rng::level_key(l)) < q.at(l);
            carry_ones[idx] += static_cast<std::uint64_t>(carry);
            const int s = x + z + carry;
            const int y = s & 1;
            carry = s >> 1;
            flip_ones[idx] += static_cast<std::uint64_t>(y != x);
        }
        // the carry out of the top level is outside the modeled window
    }

    SimReport rep;
    rep.n = n;
    rep.seed = seed;
    for (int l = range.lo; l <= range.hi; ++l) {
        const std::size_t idx = range.index_of(l);
        const double cf = static_cast<double>(carry_ones[idx]) / static_cast<double>(n);
        rep.per_level_stats.push_back(LevelStat{StatKind::Carry, l, cf, carry_ref.at(l),
                                                frequency_z(cf, carry_ref.at(l), n)});
    }
    for (int l = range.lo; l <= range.hi; ++l) {
        const std::size_t idx = range.index_of(l);
        const double ff = static_cast<double>(flip_ones[idx]) / static_cast<double>(n);
        rep.per_level_stats.push_back(LevelStat{StatKind::EffectiveNoise, l, ff, eff_ref.at(l),
                                                frequency_z(ff, eff_ref.at(l), n)});
    }
    rep.pass = all_within_4sigma(rep.per_level_stats);
    return rep;
}

SimReport empirical_level_mi(const aen::ChannelSpec& spec, const LevelRange& range,
                             std::uint64_t n, std::uint64_t seed) {
    if (n < 10000) throw std::domain_error("need at least 10000 samples");
    const BernoulliProfile p = aen::input_profile(spec, range);
    const BernoulliProfile q = aen::noise_profile(spec, range);
    constexpr int kResamples = 100;
    constexpr double kSigmaFloor = 0.0025;  // 4·floor = 0.01-bit tolerance floor

    const auto plugin_mi = [](const std::array<double, 4>& joint) {
        // cells indexed x*2 + y
        const std::array<double, 2> px{joint[0] + joint[1], joint[2] + joint[3]};
        const std::array<double, 2> py{joint[0] + joint[2], joint[1] + joint[3]};
        return categorical_entropy(px) + categorical_entropy(py) - categorical_entropy(joint);
    };

    SimReport rep;
    rep.n = n;
    rep.seed = seed;
    for (int l = range.lo; l <= range.hi; ++l) {
        std::array<std::uint64_t, 4> counts{0, 0, 0, 0};
        for (std::uint64_t i = 0; i < n; ++i) {
            const int x =
                rng::keyed_uniform(seed, rng::kStreamChannelInput, i, rng::level_key(l)) < p.at(l);
            const int z =
                rng::keyed_uniform(seed, rng::kStreamChannelNoise, i, rng::level_key(l)) < q.at(l);
            counts[static_cast<std::size_t>(x * 2 + (x ^ z))] += 1;
        }
        std::array<double, 4> joint;
        for (std::size_t c = 0; c < 4; ++c)
            joint[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
        const double mi = plugin_mi(joint);

        // multinomial bootstrap of the empirical joint
        std::array<double, 4> cdf;
        double acc = 0.0;
        for (std::size_t c = 0; c < 4; ++c) {
            acc += joint[c];
            cdf[c] = acc;
        }
        cdf[3] = 1.0;
        double mean = 0.0, m2 = 0.0;
        for (int r = 0; r < kResamples; ++r) {
            std::array<std::uint64_t, 4> rc{0, 0, 0, 0};
            for (std::uint64_t i = 0; i < n; ++i) {
                const double u = rng::keyed_uniform(
                    seed, rng::kStreamBootstrap + static_cast<std::uint64_t>(r) * 131,
                    i, rng::level_key(l));
                std::size_t c = 0;
                while (c < 3 && u >= cdf[c]) ++c;
                rc[c] += 1;
            }
            std::array<double, 4> rj;
            for (std::size_t c = 0; c < 4; ++c)
                rj[c] = static_cast<double>(rc[c]) / static_cast<double>(n);
            const double rmi = plugin_mi(rj);
            const double delta = rmi - mean;
            mean += delta / (r + 1);
            m2 += delta * (rmi - mean);
        }
        const double sigma_boot = std::sqrt(m2 / (kResamples - 1));

        const double analytic =
            binary_entropy(binary_convolve(p.at(l), q.at(l))) - binary_entropy(q.at(l));
        const double z = (mi - analytic) / std::max(sigma_boot, kSigmaFloor);
        rep.per_level_stats.push_back(LevelStat{StatKind::MutualInformation, l, mi, analytic, z});
    }
    rep.pass = all_within_4sigma(rep.per_level_stats);
    return rep;
}

}  // namespace expcode::mc
