#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace expcode {

/// Error carrying the level index at which a per-level feasibility check failed.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, int level)
        : std::runtime_error(what), level_(level) {}
    int level() const noexcept { return level_; }

private:
    int level_;
};

/// Closed window of expansion level indices [lo, hi]; the index set every
/// per-level profile is defined over.
struct LevelRange {
    int lo = 0;
    int hi = 0;

    LevelRange() = default;
    LevelRange(int lo_, int hi_) : lo(lo_), hi(hi_) {
        if (lo > hi)
            throw std::invalid_argument("LevelRange: lo > hi (" + std::to_string(lo) + " > " +
                                        std::to_string(hi) + ")");
    }

    std::size_t width() const noexcept { return static_cast<std::size_t>(hi - lo) + 1; }
    bool contains(int level) const noexcept { return level >= lo && level <= hi; }
    std::size_t index_of(int level) const { return static_cast<std::size_t>(level - lo); }

    friend bool operator==(const LevelRange& a, const LevelRange& b) noexcept {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

/// Per-level probability-of-one vector indexed by level. Entries live in
/// [0, 0.5]; every profile in this library (noise, input, carry, effective
/// noise, distortion) satisfies that by construction.
class BernoulliProfile {
public:
    BernoulliProfile(LevelRange range, std::vector<double> probs)
        : range_(range), probs_(std::move(probs)) {
        if (probs_.size() != range_.width())
            throw std::invalid_argument("BernoulliProfile: length does not match range width");
        for (double p : probs_)
            if (!(p >= 0.0 && p <= 0.5))
                throw std::invalid_argument("BernoulliProfile: entry outside [0, 0.5]");
    }

    const LevelRange& range() const noexcept { return range_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double at(int level) const {
        if (!range_.contains(level))
            throw std::invalid_argument("BernoulliProfile: level out of range");
        return probs_[range_.index_of(level)];
    }
    double by_index(std::size_t i) const { return probs_.at(i); }
    std::span<const double> probs() const noexcept { return probs_; }

private:
    LevelRange range_;
    std::vector<double> probs_;
};

/// Per-level categorical distribution over q symbols (row-major, one row per
/// level). Rows of an expansion table sum to 1 and decay geometrically in the
/// symbol index.
class QaryProfile {
public:
    QaryProfile(LevelRange range, int q, std::vector<std::vector<double>> table)
        : range_(range), q_(q), table_(std::move(table)) {
        if (q_ < 2) throw std::domain_error("QaryProfile: alphabet size must be >= 2");
        if (table_.size() != range_.width())
            throw std::invalid_argument("QaryProfile: table height does not match range width");
        for (const auto& row : table_) {
            if (row.size() != static_cast<std::size_t>(q_))
                throw std::invalid_argument("QaryProfile: row width does not match alphabet size");
            double sum = 0.0;
            for (std::size_t s = 0; s < row.size(); ++s) {
                if (row[s] < 0.0)
                    throw std::invalid_argument("QaryProfile: negative entry");
                if (s > 0 && row[s] > row[s - 1] + 1e-15)
                    throw std::invalid_argument("QaryProfile: row not nonincreasing in symbol");
                sum += row[s];
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw std::invalid_argument("QaryProfile: row does not sum to 1");
        }
    }

    const LevelRange& range() const noexcept { return range_; }
    int q() const noexcept { return q_; }
    const std::vector<double>& row(int level) const {
        if (!range_.contains(level))
            throw std::invalid_argument("QaryProfile: level out of range");
        return table_[range_.index_of(level)];
    }

private:
    LevelRange range_;
    int q_;
    std::vector<std::vector<double>> table_;
};

}  // namespace expcode
