/* expcode: expansion coding toolkit for the additive exponential noise
 * channel and exponential-source rate distortion.
 *
 * C API of the shared library. All functions return ec_status; results come
 * back through out-parameters. Aggregate results are opaque handles that must
 * be released with the matching *_free function. On failure the out-handle is
 * untouched and ec_last_error_message() (thread-local) describes the problem.
 *
 * Rates are bits per use, distortions in source units, logs base 2.
 */
#ifndef EXPCODE_H
#define EXPCODE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ec_status {
    EC_OK = 0,
    EC_ERROR_DOMAIN = 1,     /* argument outside its mathematical domain */
    EC_ERROR_USAGE = 2,      /* null pointer, mismatched ranges, bad enum */
    EC_ERROR_INFEASIBLE = 3, /* per-level feasibility violated (see message) */
    EC_ERROR_INTERNAL = 4,
} ec_status;

/* Thread-local message for the most recent failure in this thread. */
const char* ec_last_error_message(void);

const char* ec_version(void);

/* ------------------------------------------------------------------ */
/* Expansion of exponential distributions                              */
/* ------------------------------------------------------------------ */

/* Bit probability 1/(1 + e^{lambda·2^level}); saturates to exactly 0 when the
 * exponent overflows the double range. */
ec_status ec_level_prob(double lambda, int level, double* out);

/* Opaque per-level probability vector over levels [lo, hi]. */
typedef struct ec_profile ec_profile;

ec_status ec_binary_profile(double lambda, int lo, int hi, ec_profile** out);
ec_status ec_profile_range(const ec_profile* p, int* lo, int* hi);
ec_status ec_profile_get(const ec_profile* p, int level, double* out);
/* Copies all width = hi-lo+1 entries (low level first) into out. */
ec_status ec_profile_copy(const ec_profile* p, double* out, size_t capacity);
void ec_profile_free(ec_profile* p);

/* One row of the q-ary expansion table at a level; out must hold q entries. */
ec_status ec_qary_level_dist(double lambda, int level, int q, double* out);

/* Positional value sum q^l·symbol_l; symbols indexed lo..hi, each in [0,q-1]. */
ec_status ec_reconstruct(const int* symbols, int lo, int hi, int q, double* out);

/* n reconstructed draws (deterministic in seed); out must hold n doubles. */
ec_status ec_sample_expanded(double lambda, int lo, int hi, uint64_t n, uint64_t seed,
                             double* out);

/* Sum of 2^level · prob over the profile. */
ec_status ec_truncated_mean(const ec_profile* p, double* out);

/* ------------------------------------------------------------------ */
/* Additive exponential noise channel                                  */
/* ------------------------------------------------------------------ */

ec_status ec_aen_capacity(double e_x, double e_z, double* out);

/* Capacity-achieving input law: continuous density at x plus atom at 0. */
ec_status ec_aen_optimal_input_density(double x, double e_x, double e_z, double* density,
                                       double* atom);

ec_status ec_aen_noise_profile(double e_x, double e_z, int lo, int hi, ec_profile** out);
ec_status ec_aen_input_profile(double e_x, double e_z, int lo, int hi, ec_profile** out);

/* Carry-into-level probabilities from the carry recursion (lowest level 0). */
ec_status ec_aen_carry_profile(const ec_profile* input, const ec_profile* noise,
                               ec_profile** out);
/* Elementwise binary convolution q ⊗ c. */
ec_status ec_aen_effective_noise(const ec_profile* noise, const ec_profile* carry,
                                 ec_profile** out);

typedef enum ec_aen_scheme {
    EC_AEN_CARRIES_AS_NOISE = 0,
    EC_AEN_DECODE_CARRIES = 1,
    EC_AEN_QARY_DECODE_CARRIES = 2,
} ec_aen_scheme;

/* Opaque per-level rate report. */
typedef struct ec_rate_report ec_rate_report;

/* q is only read for EC_AEN_QARY_DECODE_CARRIES (use 2 otherwise). */
ec_status ec_aen_rate(double e_x, double e_z, int lo, int hi, ec_aen_scheme scheme, int q,
                      ec_rate_report** out);
ec_status ec_rate_range(const ec_rate_report* r, int* lo, int* hi);
ec_status ec_rate_total(const ec_rate_report* r, double* out);
ec_status ec_rate_capacity(const ec_rate_report* r, double* out);
ec_status ec_rate_gap(const ec_rate_report* r, double* out);
ec_status ec_rate_per_level(const ec_rate_report* r, int level, double* out);
void ec_rate_free(ec_rate_report* r);

/* Smallest window with L1 >= -log2(eps) - log2(e_z), L2 >= -log2(eps) +
 * log2(e_x) (both clamped to >= 1); lo = -L1, hi = L2. */
ec_status ec_aen_compliant_range(double epsilon, double e_x, double e_z, int* lo, int* hi);

/* Per-level entropy/carry bound inventory. */
typedef struct ec_bound_report ec_bound_report;

typedef enum ec_bound_kind {
    EC_BOUND_NOISE_ENTROPY_UPPER = 0,
    EC_BOUND_NOISE_ENTROPY_LOWER = 1,
    EC_BOUND_EFFECTIVE_ENTROPY_UPPER = 2,
    EC_BOUND_EFFECTIVE_ENTROPY_LOWER = 3,
    EC_BOUND_CARRY_UPPER = 4,
} ec_bound_kind;

ec_status ec_aen_verify_bounds(double e_x, double e_z, int lo, int hi, ec_bound_report** out);
ec_status ec_bounds_count(const ec_bound_report* b, size_t* out);
ec_status ec_bounds_violations(const ec_bound_report* b, size_t* out);
ec_status ec_bounds_check(const ec_bound_report* b, size_t index, int* level,
                          ec_bound_kind* kind, double* value, double* bound, double* slack,
                          int* ok);
void ec_bounds_free(ec_bound_report* b);

/* Capacity-gap verdict at the minimal compliant range for epsilon.
 * hypotheses_met is 0 when SNR < 1/epsilon, in which case only the bounds are
 * filled in. pass covers both schemes' gap bounds. */
ec_status ec_aen_gap_report(double epsilon, double e_x, double e_z, int* hypotheses_met, int* lo,
                            int* hi, double* capacity, double* rate1, double* rate2, double* gap1,
                            double* gap2, double* bound1, double* bound2, int* pass);

/* ------------------------------------------------------------------ */
/* Exponential-source rate distortion                                  */
/* ------------------------------------------------------------------ */

/* Shannon limit -log2(lambda·d); 0 above 1/lambda; +inf at d = 0. */
ec_status ec_rd_function(double lambda, double distortion, double* out);

ec_status ec_source_distortion_profile(double distortion, int lo, int hi, ec_profile** out);

/* Single-level rates of the asymmetric / symmetric test channels. */
ec_status ec_source_rate_z(double p, double d, double* out);
ec_status ec_source_rate_x(double p, double d, double* out);

/* alpha weights of a distortion profile; out must hold the profile width. */
ec_status ec_source_alpha_weights(const ec_profile* distortion, double* out, size_t capacity);

typedef enum ec_rd_scheme {
    EC_RD_ONE_SIDED = 0,
    EC_RD_SUCCESSIVE = 1,
    EC_RD_QUANTIZER_LINEAR = 2,
    EC_RD_QUANTIZER_NONLINEAR = 3,
} ec_rd_scheme;

/* Opaque achievable (rate, distortion) point. */
typedef struct ec_rd_point ec_rd_point;

/* Expansion schemes (EC_RD_ONE_SIDED / EC_RD_SUCCESSIVE) over [lo, hi]. */
ec_status ec_source_scheme(double lambda, double target, int lo, int hi, ec_rd_scheme scheme,
                           ec_rd_point** out);
/* Scalar quantizer baselines; `cells` >= 1, rate log2(cells). */
ec_status ec_source_quantizer(double lambda, int cells, ec_rd_scheme kind, ec_rd_point** out);

ec_status ec_rd_rate(const ec_rd_point* p, double* out);
ec_status ec_rd_distortion(const ec_rd_point* p, double* out);
ec_status ec_rd_tails(const ec_rd_point* p, double* tail_high, double* tail_low);
ec_status ec_rd_range(const ec_rd_point* p, int* lo, int* hi);
ec_status ec_rd_per_level(const ec_rd_point* p, int level, double* rate, double* distortion);
void ec_rd_free(ec_rd_point* p);

/* Smallest window with L1 >= -log2(d), L2 >= -log2(lambda^2·d) (both >= 1). */
ec_status ec_source_compliant_range(double lambda, double target, int* lo, int* hi);

/* Rate-distortion gap verdict at the minimal compliant range; the bound is
 * 5.5·log2e bits and pass covers both schemes. */
ec_status ec_source_gap_check(double lambda, double target, int* lo, int* hi, double* rate1,
                              double* rate2, double* d1, double* d2, double* gap1, double* gap2,
                              double* bound, int* pass);

/* ------------------------------------------------------------------ */
/* Seeded Monte Carlo validation                                       */
/* ------------------------------------------------------------------ */

typedef enum ec_stat_kind {
    EC_STAT_LEVEL_FREQ = 0,
    EC_STAT_CARRY = 1,
    EC_STAT_EFFECTIVE_NOISE = 2,
    EC_STAT_MI = 3,
} ec_stat_kind;

/* Opaque simulation report: per-level (empirical, analytic, z) rows plus an
 * optional Kolmogorov-Smirnov statistic and an overall pass flag. */
typedef struct ec_sim_report ec_sim_report;

/* Expansion fidelity: per-level frequencies within 4 sigma and KS distance of
 * the reconstructed sample from the exponential CDF below 1.63/sqrt(n). */
ec_status ec_mc_validate_expansion(double lambda, int lo, int hi, uint64_t n, uint64_t seed,
                                   ec_sim_report** out);
/* Exact bitwise addition of expanded input and noise: realized carries vs the
 * recursion, realized flips vs the effective noise, within 4 sigma. */
ec_status ec_mc_simulate_carries(double e_x, double e_z, int lo, int hi, uint64_t n,
                                 uint64_t seed, ec_sim_report** out);
/* Plug-in per-level mutual information vs the decode-carries rate terms. */
ec_status ec_mc_level_mi(double e_x, double e_z, int lo, int hi, uint64_t n, uint64_t seed,
                         ec_sim_report** out);

ec_status ec_sim_stat_count(const ec_sim_report* r, size_t* out);
ec_status ec_sim_stat(const ec_sim_report* r, size_t index, ec_stat_kind* kind, int* level,
                      double* empirical, double* analytic, double* z);
/* has_ks is 0 for reports without a KS component (then the values are 0). */
ec_status ec_sim_ks(const ec_sim_report* r, int* has_ks, double* statistic, double* threshold);
ec_status ec_sim_pass(const ec_sim_report* r, int* out);
void ec_sim_free(ec_sim_report* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EXPCODE_H */
