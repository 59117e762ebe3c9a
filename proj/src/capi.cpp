#include "expcode.h"

#include <cstring>
#include <exception>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aen.hpp"
#include "expansion.hpp"
#include "levels.hpp"
#include "montecarlo.hpp"
#include "source.hpp"

using namespace expcode;

namespace {

thread_local std::string g_last_error;

ec_status fail(ec_status code, const char* what) {
    g_last_error = what ? what : "";
    return code;
}

/* Runs the body, mapping C++ exceptions to status codes. */
template <typename Fn>
ec_status guarded(Fn&& fn) {
    try {
        fn();
        return EC_OK;
    } catch (const InfeasibleError& e) {
        return fail(EC_ERROR_INFEASIBLE, e.what());
    } catch (const std::domain_error& e) {
        return fail(EC_ERROR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(EC_ERROR_USAGE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(EC_ERROR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(EC_ERROR_INTERNAL, e.what());
    }
}

ec_status require(bool ok, const char* what) {
    return ok ? EC_OK : fail(EC_ERROR_USAGE, what);
}

}  // namespace

struct ec_profile {
    BernoulliProfile value;
};

struct ec_rate_report {
    aen::RateReport value;
};

struct ec_bound_report {
    aen::BoundReport value;
};

struct ec_rd_point {
    source::RdPoint value;
};

struct ec_sim_report {
    mc::SimReport value;
};

extern "C" {

const char* ec_last_error_message(void) { return g_last_error.c_str(); }

const char* ec_version(void) { return "0.1.0"; }

/* ---------------- expansion ---------------- */

ec_status ec_level_prob(double lambda, int level, double* out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] { *out = expansion::level_prob(lambda, level); });
}

ec_status ec_binary_profile(double lambda, int lo, int hi, ec_profile** out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        *out = new ec_profile{expansion::binary_profile(lambda, LevelRange(lo, hi))};
    });
}

ec_status ec_profile_range(const ec_profile* p, int* lo, int* hi) {
    if (ec_status s = require(p && lo && hi, "null argument"); s != EC_OK) return s;
    *lo = p->value.range().lo;
    *hi = p->value.range().hi;
    return EC_OK;
}

ec_status ec_profile_get(const ec_profile* p, int level, double* out) {
    if (ec_status s = require(p && out, "null argument"); s != EC_OK) return s;
    return guarded([&] { *out = p->value.at(level); });
}

ec_status ec_profile_copy(const ec_profile* p, double* out, size_t capacity) {
    if (ec_status s = require(p && out, "null argument"); s != EC_OK) return s;
    if (capacity < p->value.size()) return fail(EC_ERROR_USAGE, "capacity too small");
    std::span<const double> probs = p->value.probs();
    std::memcpy(out, probs.data(), probs.size() * sizeof(double));
    return EC_OK;
}

void ec_profile_free(ec_profile* p) { delete p; }

ec_status ec_qary_level_dist(double lambda, int level, int q, double* out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        const std::vector<double> row = expansion::qary_level_dist(lambda, level, q);
        std::memcpy(out, row.data(), row.size() * sizeof(double));
    });
}

ec_status ec_reconstruct(const int* symbols, int lo, int hi, int q, double* out) {
    if (ec_status s = require(symbols && out, "null argument"); s != EC_OK) return s;
    return guarded([&] {
        const LevelRange range(lo, hi);
        *out = expansion::reconstruct(std::span<const int>(symbols, range.width()), range, q);
    });
}

ec_status ec_sample_expanded(double lambda, int lo, int hi, uint64_t n, uint64_t seed,
                             double* out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        const std::vector<double> v = expansion::sample_expanded(lambda, LevelRange(lo, hi), n, seed);
        std::memcpy(out, v.data(), v.size() * sizeof(double));
    });
}

ec_status ec_truncated_mean(const ec_profile* p, double* out) {
    if (ec_status s = require(p && out, "null argument"); s != EC_OK) return s;
    return guarded([&] { *out = expansion::truncated_mean(p->value); });
}

/* ---------------- aen ---------------- */

ec_status ec_aen_capacity(double e_x, double e_z, double* out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] { *out = aen::capacity(aen::ChannelSpec(e_x, e_z)); });
}

ec_status ec_aen_optimal_input_density(double x, double e_x, double e_z, double* density,
                                       double* atom) {
    if (ec_status s = require(density && atom, "null argument"); s != EC_OK) return s;
    return guarded([&] {
        const aen::InputDensity d = aen::optimal_input_density(x, aen::ChannelSpec(e_x, e_z));
        *density = d.density;
        *atom = d.atom;
    });
}

ec_status ec_aen_noise_profile(double e_x, double e_z, int lo, int hi, ec_profile** out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        *out = new ec_profile{aen::noise_profile(aen::ChannelSpec(e_x, e_z), LevelRange(lo, hi))};
    });
}

ec_status ec_aen_input_profile(double e_x, double e_z, int lo, int hi, ec_profile** out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        *out = new ec_profile{aen::input_profile(aen::ChannelSpec(e_x, e_z), LevelRange(lo, hi))};
    });
}

ec_status ec_aen_carry_profile(const ec_profile* input, const ec_profile* noise,
                               ec_profile** out) {
    if (ec_status s = require(input && noise && out, "null argument"); s != EC_OK) return s;
    return guarded([&] {
        *out = new ec_profile{aen::carry_profile(input->value, noise->value)};
    });
}

ec_status ec_aen_effective_noise(const ec_profile* noise, const ec_profile* carry,
                                 ec_profile** out) {
    if (ec_status s = require(noise && carry && out, "null argument"); s != EC_OK) return s;
    return guarded([&] {
        *out = new ec_profile{aen::effective_noise(noise->value, carry->value)};
    });
}

ec_status ec_aen_rate(double e_x, double e_z, int lo, int hi, ec_aen_scheme scheme, int q,
                      ec_rate_report** out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        const aen::ChannelSpec spec(e_x, e_z);
        const LevelRange range(lo, hi);
        aen::RateReport rep;
        switch (scheme) {
            case EC_AEN_CARRIES_AS_NOISE: rep = aen::rate_carries_as_noise(spec, range); break;
            case EC_AEN_DECODE_CARRIES: rep = aen::rate_decoding_carries(spec, range); break;
            case EC_AEN_QARY_DECODE_CARRIES:
                rep = aen::qary_rate_decoding_carries(spec, range, q);
                break;
            default: throw std::invalid_argument("unknown scheme");
        }
        *out = new ec_rate_report{std::move(rep)};
    });
}

ec_status ec_rate_range(const ec_rate_report* r, int* lo, int* hi) {
    if (ec_status s = require(r && lo && hi, "null argument"); s != EC_OK) return s;
    *lo = r->value.range.lo;
    *hi = r->value.range.hi;
    return EC_OK;
}

ec_status ec_rate_total(const ec_rate_report* r, double* out) {
    if (ec_status s = require(r && out, "null argument"); s != EC_OK) return s;
    *out = r->value.total;
    return EC_OK;
}

ec_status ec_rate_capacity(const ec_rate_report* r, double* out) {
    if (ec_status s = require(r && out, "null argument"); s != EC_OK) return s;
    *out = r->value.capacity;
    return EC_OK;
}

ec_status ec_rate_gap(const ec_rate_report* r, double* out) {
    if (ec_status s = require(r && out, "null argument"); s != EC_OK) return s;
    *out = r->value.gap;
    return EC_OK;
}

ec_status ec_rate_per_level(const ec_rate_report* r, int level, double* out) {
    if (ec_status s = require(r && out, "null argument"); s != EC_OK) return s;
    if (!r->value.range.contains(level)) return fail(EC_ERROR_USAGE, "level out of range");
    *out = r->value.per_level[r->value.range.index_of(level)];
    return EC_OK;
}

void ec_rate_free(ec_rate_report* r) { delete r; }

ec_status ec_aen_compliant_range(double epsilon, double e_x, double e_z, int* lo, int* hi) {
    if (ec_status s = require(lo && hi, "null argument"); s != EC_OK) return s;
    return guarded([&] {
        const LevelRange r = aen::compliant_range(epsilon, aen::ChannelSpec(e_x, e_z));
        *lo = r.lo;
        *hi = r.hi;
    });
}

ec_status ec_aen_verify_bounds(double e_x, double e_z, int lo, int hi, ec_bound_report** out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        *out = new ec_bound_report{
            aen::verify_entropy_bounds(aen::ChannelSpec(e_x, e_z), LevelRange(lo, hi))};
    });
}

ec_status ec_bounds_count(const ec_bound_report* b, size_t* out) {
    if (ec_status s = require(b && out, "null argument"); s != EC_OK) return s;
    *out = b->value.checks.size();
    return EC_OK;
}

ec_status ec_bounds_violations(const ec_bound_report* b, size_t* out) {
    if (ec_status s = require(b && out, "null argument"); s != EC_OK) return s;
    *out = b->value.violations;
    return EC_OK;
}

ec_status ec_bounds_check(const ec_bound_report* b, size_t index, int* level,
                          ec_bound_kind* kind, double* value, double* bound, double* slack,
                          int* ok) {
    if (ec_status s = require(b && level && kind && value && bound && slack && ok,
                              "null argument");
        s != EC_OK)
        return s;
    if (index >= b->value.checks.size()) return fail(EC_ERROR_USAGE, "index out of range");
    const aen::BoundCheck& c = b->value.checks[index];
    *level = c.level;
    *kind = static_cast<ec_bound_kind>(c.kind);
    *value = c.value;
    *bound = c.bound;
    *slack = c.slack;
    *ok = c.ok ? 1 : 0;
    return EC_OK;
}

void ec_bounds_free(ec_bound_report* b) { delete b; }

ec_status ec_aen_gap_report(double epsilon, double e_x, double e_z, int* hypotheses_met, int* lo,
                            int* hi, double* capacity, double* rate1, double* rate2, double* gap1,
                            double* gap2, double* bound1, double* bound2, int* pass) {
    if (ec_status s = require(hypotheses_met && lo && hi && capacity && rate1 && rate2 && gap1 &&
                                  gap2 && bound1 && bound2 && pass,
                              "null argument");
        s != EC_OK)
        return s;
    return guarded([&] {
        const aen::GapReport g = aen::gap_report(epsilon, aen::ChannelSpec(e_x, e_z));
        *hypotheses_met = g.hypotheses_met ? 1 : 0;
        *lo = g.range.lo;
        *hi = g.range.hi;
        *capacity = g.capacity;
        *rate1 = g.rate_carries_as_noise;
        *rate2 = g.rate_decoding_carries;
        *gap1 = g.gap_carries_as_noise;
        *gap2 = g.gap_decoding_carries;
        *bound1 = g.bound_carries_as_noise;
        *bound2 = g.bound_decoding_carries;
        *pass = g.pass ? 1 : 0;
    });
}

/* ---------------- source ---------------- */

ec_status ec_rd_function(double lambda, double distortion, double* out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] { *out = source::rd_function(source::SourceSpec(lambda), distortion); });
}

ec_status ec_source_distortion_profile(double distortion, int lo, int hi, ec_profile** out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        *out = new ec_profile{source::distortion_profile(distortion, LevelRange(lo, hi))};
    });
}

ec_status ec_source_rate_z(double p, double d, double* out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] { *out = source::rate_z(p, d); });
}

ec_status ec_source_rate_x(double p, double d, double* out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] { *out = source::rate_x(p, d); });
}

ec_status ec_source_alpha_weights(const ec_profile* distortion, double* out, size_t capacity) {
    if (ec_status s = require(distortion && out, "null argument"); s != EC_OK) return s;
    if (capacity < distortion->value.size()) return fail(EC_ERROR_USAGE, "capacity too small");
    return guarded([&] {
        const std::vector<double> a = source::alpha_weights(distortion->value);
        std::memcpy(out, a.data(), a.size() * sizeof(double));
    });
}

ec_status ec_source_scheme(double lambda, double target, int lo, int hi, ec_rd_scheme scheme,
                           ec_rd_point** out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        const source::SourceSpec spec(lambda);
        const LevelRange range(lo, hi);
        source::RdPoint pt;
        switch (scheme) {
            case EC_RD_ONE_SIDED: pt = source::scheme_one_sided(spec, target, range); break;
            case EC_RD_SUCCESSIVE: pt = source::scheme_successive(spec, target, range); break;
            default: throw std::invalid_argument("not an expansion scheme");
        }
        *out = new ec_rd_point{std::move(pt)};
    });
}

ec_status ec_source_quantizer(double lambda, int cells, ec_rd_scheme kind, ec_rd_point** out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        source::QuantizerKind k;
        switch (kind) {
            case EC_RD_QUANTIZER_LINEAR: k = source::QuantizerKind::Linear; break;
            case EC_RD_QUANTIZER_NONLINEAR: k = source::QuantizerKind::Nonlinear; break;
            default: throw std::invalid_argument("not a quantizer kind");
        }
        *out = new ec_rd_point{source::quantizer_baseline(source::SourceSpec(lambda), cells, k)};
    });
}

ec_status ec_rd_rate(const ec_rd_point* p, double* out) {
    if (ec_status s = require(p && out, "null argument"); s != EC_OK) return s;
    *out = p->value.rate;
    return EC_OK;
}

ec_status ec_rd_distortion(const ec_rd_point* p, double* out) {
    if (ec_status s = require(p && out, "null argument"); s != EC_OK) return s;
    *out = p->value.distortion;
    return EC_OK;
}

ec_status ec_rd_tails(const ec_rd_point* p, double* tail_high, double* tail_low) {
    if (ec_status s = require(p && tail_high && tail_low, "null argument"); s != EC_OK) return s;
    *tail_high = p->value.tail_high;
    *tail_low = p->value.tail_low;
    return EC_OK;
}

ec_status ec_rd_range(const ec_rd_point* p, int* lo, int* hi) {
    if (ec_status s = require(p && lo && hi, "null argument"); s != EC_OK) return s;
    *lo = p->value.range.lo;
    *hi = p->value.range.hi;
    return EC_OK;
}

ec_status ec_rd_per_level(const ec_rd_point* p, int level, double* rate, double* distortion) {
    if (ec_status s = require(p && rate && distortion, "null argument"); s != EC_OK) return s;
    if (p->value.per_level_rates.empty()) return fail(EC_ERROR_USAGE, "no per-level data");
    if (!p->value.range.contains(level)) return fail(EC_ERROR_USAGE, "level out of range");
    const std::size_t i = p->value.range.index_of(level);
    *rate = p->value.per_level_rates[i];
    *distortion = p->value.per_level_distortions[i];
    return EC_OK;
}

void ec_rd_free(ec_rd_point* p) { delete p; }

ec_status ec_source_compliant_range(double lambda, double target, int* lo, int* hi) {
    if (ec_status s = require(lo && hi, "null argument"); s != EC_OK) return s;
    return guarded([&] {
        const LevelRange r = source::compliant_range(source::SourceSpec(lambda), target);
        *lo = r.lo;
        *hi = r.hi;
    });
}

ec_status ec_source_gap_check(double lambda, double target, int* lo, int* hi, double* rate1,
                              double* rate2, double* d1, double* d2, double* gap1, double* gap2,
                              double* bound, int* pass) {
    if (ec_status s = require(lo && hi && rate1 && rate2 && d1 && d2 && gap1 && gap2 && bound &&
                                  pass,
                              "null argument");
        s != EC_OK)
        return s;
    return guarded([&] {
        const source::RdGapReport g = source::gap_check(source::SourceSpec(lambda), target);
        *lo = g.range.lo;
        *hi = g.range.hi;
        *rate1 = g.rate_one_sided;
        *rate2 = g.rate_successive;
        *d1 = g.distortion_one_sided;
        *d2 = g.distortion_successive;
        *gap1 = g.gap_one_sided;
        *gap2 = g.gap_successive;
        *bound = g.bound;
        *pass = g.pass ? 1 : 0;
    });
}

/* ---------------- montecarlo ---------------- */

ec_status ec_mc_validate_expansion(double lambda, int lo, int hi, uint64_t n, uint64_t seed,
                                   ec_sim_report** out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        *out = new ec_sim_report{mc::validate_expansion(lambda, LevelRange(lo, hi), n, seed)};
    });
}

ec_status ec_mc_simulate_carries(double e_x, double e_z, int lo, int hi, uint64_t n,
                                 uint64_t seed, ec_sim_report** out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        *out = new ec_sim_report{
            mc::simulate_carries(aen::ChannelSpec(e_x, e_z), LevelRange(lo, hi), n, seed)};
    });
}

ec_status ec_mc_level_mi(double e_x, double e_z, int lo, int hi, uint64_t n, uint64_t seed,
                         ec_sim_report** out) {
    if (ec_status s = require(out != nullptr, "out is null"); s != EC_OK) return s;
    return guarded([&] {
        *out = new ec_sim_report{
            mc::empirical_level_mi(aen::ChannelSpec(e_x, e_z), LevelRange(lo, hi), n, seed)};
    });
}

ec_status ec_sim_stat_count(const ec_sim_report* r, size_t* out) {
    if (ec_status s = require(r && out, "null argument"); s != EC_OK) return s;
    *out = r->value.per_level_stats.size();
    return EC_OK;
}

ec_status ec_sim_stat(const ec_sim_report* r, size_t index, ec_stat_kind* kind, int* level,
                      double* empirical, double* analytic, double* z) {
    if (ec_status s = require(r && kind && level && empirical && analytic && z, "null argument");
        s != EC_OK)
        return s;
    if (index >= r->value.per_level_stats.size())
        return fail(EC_ERROR_USAGE, "index out of range");
    const mc::LevelStat& st = r->value.per_level_stats[index];
    *kind = static_cast<ec_stat_kind>(st.kind);
    *level = st.level;
    *empirical = st.empirical;
    *analytic = st.analytic;
    *z = st.z;
    return EC_OK;
}

ec_status ec_sim_ks(const ec_sim_report* r, int* has_ks, double* statistic, double* threshold) {
    if (ec_status s = require(r && has_ks && statistic && threshold, "null argument");
        s != EC_OK)
        return s;
    *has_ks = r->value.has_ks ? 1 : 0;
    *statistic = r->value.has_ks ? r->value.ks_statistic : 0.0;
    *threshold = r->value.has_ks ? r->value.ks_threshold : 0.0;
    return EC_OK;
}

ec_status ec_sim_pass(const ec_sim_report* r, int* out) {
    if (ec_status s = require(r && out, "null argument"); s != EC_OK) return s;
    *out = r->value.pass ? 1 : 0;
    return EC_OK;
}

void ec_sim_free(ec_sim_report* r) { delete r; }

} /* extern "C" */
