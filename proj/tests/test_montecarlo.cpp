#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "aen.hpp"
#include "expansion.hpp"
#include "montecarlo.hpp"
#include "rng.hpp"

using namespace expcode;
using aen::ChannelSpec;

TEST_CASE("validate_expansion positive control") {
    const mc::SimReport rep = mc::validate_expansion(1.0, LevelRange(-10, 10), 100000, 20240901);
    CHECK(rep.pass);
    CHECK(rep.has_ks);
    CHECK(rep.ks_statistic < rep.ks_threshold);
    CHECK(rep.per_level_stats.size() == 21);
    for (const mc::LevelStat& s : rep.per_level_stats) {
        CHECK(s.kind == mc::StatKind::LevelFrequency);
        CHECK(std::abs(s.z) <= 4.0);
    }
}

TEST_CASE("validate_expansion single level frequency") {
    const mc::SimReport rep = mc::validate_expansion(1.0, LevelRange(0, 0), 10000, 99);
    CHECK(rep.per_level_stats.size() == 1);
    CHECK(rep.per_level_stats[0].analytic ==
          doctest::Approx(0.26894142136999512).epsilon(1e-15));
    CHECK(std::abs(rep.per_level_stats[0].z) <= 4.0);
}

TEST_CASE("validate_expansion negative control") {
    const LevelRange range(-10, 10);
    std::vector<double> probs;
    for (int l = range.lo; l <= range.hi; ++l) probs.push_back(expansion::level_prob(1.0, l));
    probs[range.index_of(0)] += 0.1;  // corrupt one level
    const BernoulliProfile corrupted(range, probs);
    const mc::SimReport rep =
        mc::validate_expansion(1.0, range, 100000, 20240901, &corrupted);
    CHECK_FALSE(rep.pass);
    for (const mc::LevelStat& s : rep.per_level_stats)
        if (s.level == 0) CHECK(std::abs(s.z) > 4.0);
}

TEST_CASE("validate_expansion determinism") {
    const mc::SimReport a = mc::validate_expansion(1.0, LevelRange(-6, 6), 5000, 11);
    const mc::SimReport b = mc::validate_expansion(1.0, LevelRange(-6, 6), 5000, 11);
    CHECK(a.ks_statistic == b.ks_statistic);
    for (std::size_t i = 0; i < a.per_level_stats.size(); ++i)
        CHECK(a.per_level_stats[i].empirical == b.per_level_stats[i].empirical);
}

TEST_CASE("simulate_carries positive control") {
    const mc::SimReport rep =
        mc::simulate_carries(ChannelSpec(256.0, 1.0), LevelRange(-5, 12), 100000, 31337);
    CHECK(rep.pass);
    CHECK_FALSE(rep.has_ks);
    std::size_t carry_rows = 0, eff_rows = 0;
    for (const mc::LevelStat& s : rep.per_level_stats) {
        if (s.kind == mc::StatKind::Carry) {
            ++carry_rows;
            if (s.level == -5) {
                CHECK(s.empirical == 0.0);  // nothing feeds the lowest level
                CHECK(s.analytic == 0.0);
            }
        } else {
            CHECK(s.kind == mc::StatKind::EffectiveNoise);
            ++eff_rows;
        }
        CHECK(std::abs(s.z) <= 4.0);
    }
    CHECK(carry_rows == 18);
    CHECK(eff_rows == 18);
}

TEST_CASE("simulate_carries negative control") {
    const LevelRange range(-5, 12);
    const ChannelSpec spec(256.0, 1.0);
    const BernoulliProfile p = aen::input_profile(spec, range);
    const BernoulliProfile q = aen::noise_profile(spec, range);
    const BernoulliProfile c = aen::carry_profile(p, q);
    std::vector<double> perturbed(c.probs().begin(), c.probs().end());
    perturbed[range.index_of(2)] = std::min(0.5, perturbed[range.index_of(2)] + 0.05);
    const BernoulliProfile bad(range, perturbed);
    const mc::SimReport rep = mc::simulate_carries(spec, range, 100000, 31337, &bad);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("all-zero input produces no carries") {
    // e_x so small that every input bit probability underflows to zero
    const mc::SimReport rep =
        mc::simulate_carries(ChannelSpec(1e-280, 1.0), LevelRange(0, 8), 2000, 5);
    for (const mc::LevelStat& s : rep.per_level_stats)
        if (s.kind == mc::StatKind::Carry) CHECK(s.empirical == 0.0);
}

TEST_CASE("addition on the level grid is exact") {
    // reconstruct(X) + reconstruct(Z) == reconstruct(Y) + carry_out·2^{hi+1},
    // checked in integer units of 2^lo
    const LevelRange range(-4, 6);
    const ChannelSpec spec(16.0, 1.0);
    const BernoulliProfile p = aen::input_profile(spec, range);
    const BernoulliProfile q = aen::noise_profile(spec, range);
    for (std::uint64_t i = 0; i < 500; ++i) {
        std::uint64_t xi = 0, zi = 0, yi = 0;
        int carry = 0;
        for (int l = range.lo; l <= range.hi; ++l) {
            const std::uint64_t bit = std::uint64_t{1} << (l - range.lo);
            const int x =
                rng::keyed_uniform(77, rng::kStreamChannelInput, i, rng::level_key(l)) < p.at(l);
            const int z =
                rng::keyed_uniform(77, rng::kStreamChannelNoise, i, rng::level_key(l)) < q.at(l);
            xi += x * bit;
            zi += z * bit;
            const int s = x + z + carry;
            yi += static_cast<std::uint64_t>(s & 1) * bit;
            carry = s >> 1;
        }
        CHECK(xi + zi == yi + (static_cast<std::uint64_t>(carry) << range.width()));
    }
}

TEST_CASE("empirical mutual information tracks the analytic per-level rates") {
    const ChannelSpec spec(std::exp2(15.0), 1.0);
    const mc::SimReport rep = mc::empirical_level_mi(spec, LevelRange(-3, 17), 20000, 271828);
    CHECK(rep.pass);
    for (const mc::LevelStat& s : rep.per_level_stats) {
        CHECK(s.kind == mc::StatKind::MutualInformation);
        CHECK(std::abs(s.z) <= 4.0);
        if (s.level >= 4 && s.level <= 11) CHECK(s.analytic > 0.9);  // mid levels carry ~1 bit
        if (s.level == 17) CHECK(s.empirical < 0.2);                 // input fading above xi
    }
}

TEST_CASE("mutual information edge regimes") {
    // q ~ 0 and p = 0.5: a clean bit
    const mc::SimReport clean =
        mc::empirical_level_mi(ChannelSpec(std::exp2(30.0), 1e-6), LevelRange(10, 10), 20000, 9);
    CHECK(clean.per_level_stats[0].empirical > 0.95);
    // p ~ 0: nothing to learn
    const mc::SimReport dead =
        mc::empirical_level_mi(ChannelSpec(1e-9, 1.0), LevelRange(0, 0), 20000, 9);
    CHECK(dead.per_level_stats[0].empirical < 0.01);
}

TEST_CASE("sample-size preconditions") {
    CHECK_THROWS_AS(mc::validate_expansion(1.0, LevelRange(0, 1), 10, 1), std::domain_error);
    CHECK_THROWS_AS(mc::simulate_carries(ChannelSpec(1, 1), LevelRange(0, 1), 10, 1),
                    std::domain_error);
    CHECK_THROWS_AS(mc::empirical_level_mi(ChannelSpec(1, 1), LevelRange(0, 1), 100, 1),
                    std::domain_error);
}
