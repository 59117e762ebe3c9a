#include "expansion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rng.hpp"

namespace expcode::expansion {

namespace {

void require_positive_rate(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error("rate parameter must be positive and finite");
}

}  // namespace

double level_prob(double lambda, int level) {
    require_positive_rate(lambda);
    const double t = lambda * std::exp2(static_cast<double>(level));
    if (t < 1e-300) return 0.5 - 0.25 * t;
    // Stable logistic tail: e^{-t}/(1+e^{-t}) underflows cleanly to 0 once
    // e^{-t} itself is unrepresentable, with subnormals filling the gap.
    const double et = std::exp(-t);
    return et / (1.0 + et);
}

BernoulliProfile binary_profile(double lambda, const LevelRange& range) {
    std::vector<double> probs;
    probs.reserve(range.width());
    for (int l = range.lo; l <= range.hi; ++l) probs.push_back(level_prob(lambda, l));
    return BernoulliProfile(range, std::move(probs));
}

std::vector<double> qary_level_dist(double lambda, int level, int q) {
    require_positive_rate(lambda);
    if (q < 2) throw std::domain_error("alphabet size must be >= 2");
    // u = lambda * q^level; may overflow to inf for extreme levels.
    const double u = lambda * std::pow(static_cast<double>(q), static_cast<double>(level));
    std::vector<double> row(static_cast<std::size_t>(q));
    if (!std::isfinite(u)) {
        row[0] = 1.0;
        return row;
    }
    // (1-e^{-u}) / (1-e^{-uq}) via expm1; the denominator becomes exactly 1
    // when e^{-uq} underflows.
    const double head = -std::expm1(-u);
    const double den = -std::expm1(-u * static_cast<double>(q));
    for (int s = 0; s < q; ++s) {
        const double decay = (s == 0) ? 1.0 : std::exp(-u * static_cast<double>(s));
        row[static_cast<std::size_t>(s)] = head * decay / den;
    }
    return row;
}

QaryProfile qary_profile(double lambda, const LevelRange& range, int q) {
    std::vector<std::vector<double>> table;
    table.reserve(range.width());
    for (int l = range.lo; l <= range.hi; ++l) table.push_back(qary_level_dist(lambda, l, q));
    return QaryProfile(range, q, std::move(table));
}

double reconstruct(std::span<const int> symbols, const LevelRange& range, int q) {
    if (q < 2) throw std::domain_error("alphabet size must be >= 2");
    if (symbols.size() != range.width())
        throw std::invalid_argument("reconstruct: symbol count does not match range width");
    double value = 0.0;
    for (int l = range.lo; l <= range.hi; ++l) {
        const int s = symbols[range.index_of(l)];
        if (s < 0 || s >= q)
            throw std::domain_error("reconstruct: symbol out of [0, q-1] at level " +
                                    std::to_string(l));
        value += std::pow(static_cast<double>(q), static_cast<double>(l)) * s;
    }
    return value;
}

std::vector<double> sample_expanded(double lambda, const LevelRange& range, std::uint64_t n,
                                    std::uint64_t seed) {
    if (n < 1) throw std::domain_error("sample count must be >= 1");
    const BernoulliProfile profile = binary_profile(lambda, range);
    std::vector<double> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        double value = 0.0;
        for (int l = range.lo; l <= range.hi; ++l) {
            const double u = rng::keyed_uniform(seed, rng::kStreamExpansion, i, rng::level_key(l));
            if (u < profile.at(l)) value += std::exp2(static_cast<double>(l));
        }
        out.push_back(value);
    }
    return out;
}

double truncated_mean(const BernoulliProfile& profile) {
    double sum = 0.0;
    const LevelRange& r = profile.range();
    for (int l = r.lo; l <= r.hi; ++l) sum += std::exp2(static_cast<double>(l)) * profile.at(l);
    return sum;
}

}  // namespace expcode::expansion
