// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion pins its tolerances in code and carries a runtime budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "aen.hpp"
#include "entropy.hpp"
#include "expansion.hpp"
#include "levels.hpp"
#include "montecarlo.hpp"
#include "source.hpp"

using namespace expcode;
using aen::ChannelSpec;
using source::SourceSpec;

namespace {

constexpr double kLog2e = std::numbers::log2e;

struct Runner {
    int failures = 0;

    template <typename Fn>
    void criterion(int index, const std::string& name, double budget_seconds, Fn&& fn) {
        std::ostringstream detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed >= budget_seconds) {
            ok = false;
            detail << " [over budget " << budget_seconds << "s]";
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %2d: %s (%s) [%.2fs]\n", ok ? "PASS" : "FAIL", index,
                    name.c_str(), detail.str().c_str(), elapsed);
        std::fflush(stdout);
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

int main() {
    Runner run;

    run.criterion(1, "expansion fidelity", 5.0, [](std::ostringstream& out) {
        const mc::SimReport rep =
            mc::validate_expansion(1.0, LevelRange(-10, 10), 100000, 20240901);
        double max_z = 0.0;
        for (const mc::LevelStat& s : rep.per_level_stats) max_z = std::max(max_z, std::abs(s.z));
        out << "ks=" << fmt(rep.ks_statistic) << " threshold=" << fmt(rep.ks_threshold)
            << " max|z|=" << fmt(max_z);
        return rep.pass && rep.ks_statistic < 1.63 / std::sqrt(100000.0) && max_z <= 4.0;
    });

    run.criterion(2, "bound inventory", 1.0, [](std::ostringstream& out) {
        std::size_t checks = 0, violations = 0;
        for (int e = -5; e <= 5; ++e) {
            const double ez = std::exp2(static_cast<double>(e));
            const aen::BoundReport rep =
                aen::verify_entropy_bounds(ChannelSpec(1024.0 * ez, ez), LevelRange(-30, 30));
            checks += rep.checks.size();
            violations += rep.violations;
        }
        out << checks << " checks, " << violations << " violations";
        return violations == 0;
    });

    run.criterion(3, "decode-carries capacity gap at minimal windows", 1.0,
                  [](std::ostringstream& out) {
                      bool ok = true;
                      for (double eps : {0.5, 0.1, 0.01}) {
                          const aen::GapReport g = aen::gap_report(eps, ChannelSpec(1.0 / eps, 1.0));
                          const bool this_ok =
                              g.hypotheses_met &&
                              g.gap_decoding_carries <= 5.0 * eps * kLog2e + 1e-9;
                          out << "eps=" << fmt(eps) << ":" << fmt(g.gap_decoding_carries) << "<="
                              << fmt(5.0 * eps * kLog2e) << " ";
                          ok = ok && this_ok;
                      }
                      return ok;
                  });

    run.criterion(4, "carries-as-noise high-snr gap", 1.0, [](std::ostringstream& out) {
        bool ok = true;
        for (double snr_bits : {20.0, 24.0}) {
            const ChannelSpec spec(std::exp2(snr_bits), 1.0);
            const LevelRange range = aen::compliant_range(std::exp2(-10.0), spec);
            const aen::RateReport rep = aen::rate_carries_as_noise(spec, range);
            out << "snr=2^" << fmt(snr_bits) << ":gap=" << fmt(rep.gap) << " ";
            ok = ok && rep.gap >= 1.55 && rep.gap <= 1.90 && rep.gap <= 19.0 * kLog2e;
        }
        return ok;
    });

    run.criterion(5, "rate-vs-snr sweep shape", 5.0, [](std::ostringstream& out) {
        bool ok = true;
        double worst_gap2 = 0.0;
        for (int db = 0; db <= 40; db += 2) {
            const double snr = std::pow(10.0, db / 10.0);
            const ChannelSpec spec(snr, 1.0);
            const LevelRange range = aen::compliant_range(0.01, spec);
            const double r1 = aen::rate_carries_as_noise(spec, range).total;
            const aen::RateReport rep2 = aen::rate_decoding_carries(spec, range);
            ok = ok && rep2.total >= r1 - 1e-12;
            if (db >= 20) {
                worst_gap2 = std::max(worst_gap2, rep2.gap);
                ok = ok && rep2.gap <= 0.2;
            }
        }
        out << "worst gap2 above 20dB = " << fmt(worst_gap2) << ", decode>=carries everywhere";
        return ok;
    });

    run.criterion(6, "q-ary consistency and monotonicity", 5.0, [](std::ostringstream& out) {
        bool ok = true;
        for (int db : {10, 20, 30}) {
            const double snr = std::pow(10.0, db / 10.0);
            const ChannelSpec spec(snr, 1.0);
            const LevelRange range = aen::compliant_range(0.01, spec);
            const double binary = aen::rate_decoding_carries(spec, range).total;
            double prev = 0.0;
            for (int q : {2, 3, 4, 8, 16}) {
                const double total = aen::qary_rate_decoding_carries(spec, range, q).total;
                if (q == 2) {
                    ok = ok && std::abs(total - binary) < 1e-9;
                    out << db << "dB:|q2-bin|=" << fmt(std::abs(total - binary)) << " ";
                }
                ok = ok && total >= prev - 1e-9;
                prev = total;
            }
        }
        return ok;
    });

    run.criterion(7, "rate-distortion gap at minimal windows", 1.0, [](std::ostringstream& out) {
        bool ok = true;
        double worst = 0.0;
        for (double lambda : {0.5, 1.0, 2.0}) {
            for (double frac : {0.5, 0.1, 0.01, 0.001}) {
                const source::RdGapReport g =
                    source::gap_check(SourceSpec(lambda), frac / lambda);
                ok = ok && g.gap_one_sided <= 5.5 * kLog2e + 1e-9 &&
                     g.gap_successive <= 5.5 * kLog2e + 1e-9 &&
                     g.distortion_one_sided == g.distortion_successive &&
                     g.rate_successive <= g.rate_one_sided + 1e-12;
                worst = std::max(worst, std::max(g.gap_one_sided, g.gap_successive));
            }
        }
        out << "worst gap=" << fmt(worst) << " bound=" << fmt(5.5 * kLog2e) << ", D1==D2, R2<=R1";
        return ok;
    });

    run.criterion(8, "low-distortion gap pair", 5.0, [](std::ostringstream& out) {
        const SourceSpec unit(1.0);
        bool ok = true;
        double g1_last = 0.0, g2_last = 0.0;
        for (double target = 1e-3; target <= 1e-2 * (1.0 + 1e-12); target *= std::sqrt(10.0)) {
            const int w = ceil_level(-std::log2(target)) + 12;
            const LevelRange range(-w, w);
            const source::RdPoint one = source::scheme_one_sided(unit, target, range);
            const source::RdPoint suc = source::scheme_successive(unit, target, range);
            const double g1 = one.rate - source::rd_function(unit, one.distortion);
            const double g2 = suc.rate - source::rd_function(unit, suc.distortion);
            ok = ok && g2 < g1;  // sweep fixes the assignment: successive is the tighter one
            ok = ok && std::abs(g1 - 0.43) <= 0.08 && std::abs(g2 - 0.24) <= 0.08;
            g1_last = g1;
            g2_last = g2;
        }
        out << "one-sided->" << fmt(g1_last) << " (0.43±0.08), successive->" << fmt(g2_last)
            << " (0.24±0.08)";
        return ok;
    });

    run.criterion(9, "Monte Carlo carry validation", 10.0, [](std::ostringstream& out) {
        const ChannelSpec spec(256.0, 1.0);
        const LevelRange range(-5, 12);
        const mc::SimReport rep = mc::simulate_carries(spec, range, 100000, 31337);
        double max_z = 0.0;
        for (const mc::LevelStat& s : rep.per_level_stats) max_z = std::max(max_z, std::abs(s.z));

        // negative control: a perturbed carry reference must be rejected
        const BernoulliProfile p = aen::input_profile(spec, range);
        const BernoulliProfile q = aen::noise_profile(spec, range);
        const BernoulliProfile c = aen::carry_profile(p, q);
        std::vector<double> perturbed(c.probs().begin(), c.probs().end());
        perturbed[range.index_of(2)] = std::min(0.5, perturbed[range.index_of(2)] + 0.05);
        const BernoulliProfile bad(range, perturbed);
        const mc::SimReport control = mc::simulate_carries(spec, range, 100000, 31337, &bad);

        out << "max|z|=" << fmt(max_z) << ", negative control "
            << (control.pass ? "accepted" : "rejected");
        return rep.pass && max_z <= 4.0 && !control.pass;
    });

    run.criterion(10, "expansion dominates the nonlinear quantizer", 5.0,
                  [](std::ostringstream& out) {
                      const SourceSpec unit(1.0);
                      bool ok = true;
                      int tested = 0;
                      for (int k = 4; k <= 64; ++k) {
                          const source::RdPoint qpt = source::quantizer_baseline(
                              unit, k, source::QuantizerKind::Nonlinear);
                          if (qpt.distortion > 0.1) continue;
                          ++tested;
                          const double target = 0.9 * qpt.distortion;
                          const int w = ceil_level(-std::log2(target)) + 6;
                          const source::RdPoint ept =
                              source::scheme_one_sided(unit, target, LevelRange(-w, w));
                          ok = ok && ept.rate <= qpt.rate && ept.distortion <= qpt.distortion;
                      }
                      out << tested << " cell counts with distortion <= 0.1, all dominated";
                      return ok && tested > 0;
                  });

    std::printf("%d of 10 criteria passed\n", 10 - run.failures);
    return run.failures == 0 ? 0 : 1;
}
