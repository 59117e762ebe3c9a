// expcode command-line front end: profile tables, rate sweeps, rate-distortion
// sweeps, seeded simulations, and the bound/gap verification suite. Emits CSV
// (12 significant digits) or JSON {config, rows, version}; everything goes
// through the shared-library C API.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expcode.h"

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct CliError {
    std::string message;
};

void check(ec_status status) {
    if (status != EC_OK) throw CliError{ec_last_error_message()};
}

std::string fmt12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double snr) { return 10.0 * std::log10(snr); }

// ---------------------------------------------------------------- output

struct Table {
    std::vector<std::string> columns;
    std::vector<ordered_json> rows;  // objects keyed by column name

    void add_row(std::initializer_list<ordered_json> values) {
        ordered_json row = ordered_json::object();
        auto it = values.begin();
        for (const std::string& c : columns) row[c] = *it++;
        rows.push_back(std::move(row));
    }
};

struct OutputOptions {
    std::string format = "csv";
    std::string path;  // empty -> stdout
};

void emit(const OutputOptions& out, const ordered_json& config, const Table& table) {
    std::ostringstream body;
    if (out.format == "json") {
        ordered_json doc;
        doc["config"] = config;
        doc["rows"] = table.rows;
        doc["version"] = ec_version();
        body << doc.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            body << (i ? "," : "") << table.columns[i];
        body << "\n";
        for (const ordered_json& row : table.rows) {
            bool first = true;
            for (const std::string& c : table.columns) {
                if (!first) body << ",";
                first = false;
                const ordered_json& v = row.at(c);
                if (v.is_number()) {
                    body << fmt12(v.get<double>());
                } else if (v.is_null()) {
                    // empty field
                } else {
                    body << v.get<std::string>();
                }
            }
            body << "\n";
        }
    }
    if (out.path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(out.path);
        if (!f) throw CliError{"cannot open output file: " + out.path};
        f << body.str();
    }
}

// ---------------------------------------------------------------- config

ordered_json load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CliError{"cannot open config file: " + path};
    ordered_json cfg;
    try {
        f >> cfg;
    } catch (const std::exception& e) {
        throw CliError{std::string("config parse error: ") + e.what()};
    }
    return cfg;
}

// Applies a config-file value to any option the user did not pass explicitly.
template <typename T>
void merge(const CLI::App& app, const ordered_json& cfg, const std::string& flag,
           const std::string& key, T& value) {
    if (app.count(flag) == 0 && cfg.contains(key)) {
        try {
            value = cfg.at(key).get<T>();
        } catch (const std::exception& e) {
            throw CliError{"config field '" + key + "': " + e.what()};
        }
    }
}

// ---------------------------------------------------------------- expand

struct ExpandArgs {
    double lambda = 1.0;
    int lo = -10, hi = 10;
    std::uint64_t n = 0;  // 0: no sampling columns
    std::uint64_t seed = 1;
    OutputOptions out;
    std::string config_path;
};

int cmd_expand(ExpandArgs& a, const CLI::App& app) {
    if (!a.config_path.empty()) {
        const ordered_json cfg = load_config_file(a.config_path);
        merge(app, cfg, "--lambda", "lambda", a.lambda);
        merge(app, cfg, "--lo", "lo", a.lo);
        merge(app, cfg, "--hi", "hi", a.hi);
        merge(app, cfg, "--n", "n", a.n);
        merge(app, cfg, "--seed", "seed", a.seed);
        merge(app, cfg, "--format", "format", a.out.format);
        merge(app, cfg, "--out", "out", a.out.path);
    }
    ordered_json config{{"command", "expand"}, {"lambda", a.lambda}, {"lo", a.lo},
                        {"hi", a.hi},          {"n", a.n},           {"seed", a.seed},
                        {"format", a.out.format}};
    if (!a.out.path.empty()) config["out"] = a.out.path;

    ec_profile* prof = nullptr;
    check(ec_binary_profile(a.lambda, a.lo, a.hi, &prof));

    Table table;
    if (a.n == 0) {
        table.columns = {"level", "b_l"};
        for (int l = a.lo; l <= a.hi; ++l) {
            double p = 0.0;
            check(ec_profile_get(prof, l, &p));
            table.add_row({l, p});
        }
    } else {
        table.columns = {"level", "b_l", "empirical", "z_score"};
        ec_sim_report* rep = nullptr;
        ec_status s = ec_mc_validate_expansion(a.lambda, a.lo, a.hi, a.n, a.seed, &rep);
        if (s != EC_OK) {
            ec_profile_free(prof);
            throw CliError{ec_last_error_message()};
        }
        size_t count = 0;
        check(ec_sim_stat_count(rep, &count));
        for (size_t i = 0; i < count; ++i) {
            ec_stat_kind kind;
            int level;
            double emp, ana, z;
            check(ec_sim_stat(rep, i, &kind, &level, &emp, &ana, &z));
            table.add_row({level, ana, emp, z});
        }
        ec_sim_free(rep);
    }
    ec_profile_free(prof);
    emit(a.out, config, table);
    return kExitOk;
}

// ---------------------------------------------------------------- aen-sweep

struct AenSweepArgs {
    std::vector<double> snr_db;
    double ex = 0.0, ez = 1.0;  // explicit alternative to --snr-db
    std::vector<std::string> schemes{"carries-as-noise", "decode-carries"};
    std::vector<int> qs{2};
    double epsilon = 0.01;
    std::optional<int> lo, hi;  // fixed-range mode
    OutputOptions out;
    std::string config_path;
};

int cmd_aen_sweep(AenSweepArgs& a, const CLI::App& app) {
    if (!a.config_path.empty()) {
        const ordered_json cfg = load_config_file(a.config_path);
        merge(app, cfg, "--snr-db", "snr_db", a.snr_db);
        merge(app, cfg, "--ex", "e_x", a.ex);
        merge(app, cfg, "--ez", "e_z", a.ez);
        merge(app, cfg, "--schemes", "schemes", a.schemes);
        merge(app, cfg, "--q", "q", a.qs);
        merge(app, cfg, "--epsilon", "epsilon", a.epsilon);
        if (app.count("--lo") == 0 && cfg.contains("lo")) a.lo = cfg.at("lo").get<int>();
        if (app.count("--hi") == 0 && cfg.contains("hi")) a.hi = cfg.at("hi").get<int>();
        merge(app, cfg, "--format", "format", a.out.format);
        merge(app, cfg, "--out", "out", a.out.path);
    }
    if (a.lo.has_value() != a.hi.has_value())
        throw CliError{"--lo and --hi must be given together"};
    std::vector<std::pair<double, double>> points;  // (e_x, e_z)
    if (a.ex > 0.0) {
        points.emplace_back(a.ex, a.ez);
    } else {
        if (a.snr_db.empty()) throw CliError{"aen-sweep needs --snr-db or --ex/--ez"};
        for (double db : a.snr_db) points.emplace_back(db_to_linear(db) * a.ez, a.ez);
    }

    ordered_json config{{"command", "aen-sweep"}};
    if (a.ex > 0.0) {
        config["e_x"] = a.ex;
        config["e_z"] = a.ez;
    } else {
        config["snr_db"] = a.snr_db;
        config["e_z"] = a.ez;
    }
    config["schemes"] = a.schemes;
    config["q"] = a.qs;
    config["epsilon"] = a.epsilon;
    if (a.lo) config["lo"] = *a.lo;
    if (a.hi) config["hi"] = *a.hi;
    config["format"] = a.out.format;
    if (!a.out.path.empty()) config["out"] = a.out.path;

    Table table;
    table.columns = {"snr_db", "scheme", "L1", "L2", "rate", "capacity", "gap"};
    for (const auto& [ex, ez] : points) {
        int lo, hi;
        if (a.lo && a.hi) {
            lo = *a.lo;
            hi = *a.hi;
        } else {
            check(ec_aen_compliant_range(a.epsilon, ex, ez, &lo, &hi));
        }
        const double snr_db = linear_to_db(ex / ez);
        for (const std::string& scheme : a.schemes) {
            std::vector<int> qs{2};
            ec_aen_scheme sc;
            if (scheme == "carries-as-noise") {
                sc = EC_AEN_CARRIES_AS_NOISE;
            } else if (scheme == "decode-carries") {
                sc = EC_AEN_DECODE_CARRIES;
            } else if (scheme == "qary") {
                sc = EC_AEN_QARY_DECODE_CARRIES;
                qs = a.qs;
            } else {
                throw CliError{"unknown scheme: " + scheme +
                               " (expected carries-as-noise, decode-carries, qary)"};
            }
            for (int q : qs) {
                ec_rate_report* rep = nullptr;
                check(ec_aen_rate(ex, ez, lo, hi, sc, q, &rep));
                double rate, cap, gap;
                check(ec_rate_total(rep, &rate));
                check(ec_rate_capacity(rep, &cap));
                check(ec_rate_gap(rep, &gap));
                ec_rate_free(rep);
                std::string label = scheme;
                if (sc == EC_AEN_QARY_DECODE_CARRIES) label += "-q" + std::to_string(q);
                table.add_row({snr_db, label, -lo, hi, rate, cap, gap});
            }
        }
    }
    emit(a.out, config, table);
    return kExitOk;
}

// ---------------------------------------------------------------- rd-sweep

struct RdSweepArgs {
    double lambda = 1.0;
    std::vector<double> distortions;
    std::vector<std::string> schemes{"one-sided", "successive", "shannon"};
    std::vector<int> ks{4, 8, 16, 32, 64};
    int margin = 12;
    std::optional<int> lo, hi;
    OutputOptions out;
    std::string config_path;
};

int cmd_rd_sweep(RdSweepArgs& a, const CLI::App& app) {
    if (!a.config_path.empty()) {
        const ordered_json cfg = load_config_file(a.config_path);
        merge(app, cfg, "--lambda", "lambda", a.lambda);
        merge(app, cfg, "--distortions", "distortions", a.distortions);
        merge(app, cfg, "--schemes", "schemes", a.schemes);
        merge(app, cfg, "--k", "k", a.ks);
        merge(app, cfg, "--margin", "margin", a.margin);
        if (app.count("--lo") == 0 && cfg.contains("lo")) a.lo = cfg.at("lo").get<int>();
        if (app.count("--hi") == 0 && cfg.contains("hi")) a.hi = cfg.at("hi").get<int>();
        merge(app, cfg, "--format", "format", a.out.format);
        merge(app, cfg, "--out", "out", a.out.path);
    }
    if (a.lo.has_value() != a.hi.has_value())
        throw CliError{"--lo and --hi must be given together"};
    bool wants_quantizer = false, wants_expansion = false, wants_shannon = false;
    for (const std::string& s : a.schemes) {
        if (s == "quantizer-linear" || s == "quantizer-nonlinear") wants_quantizer = true;
        else if (s == "one-sided" || s == "successive") wants_expansion = true;
        else if (s == "shannon") wants_shannon = true;
        else throw CliError{"unknown scheme: " + s};
    }
    if ((wants_expansion || wants_shannon) && a.distortions.empty())
        throw CliError{"rd-sweep needs --distortions for expansion/shannon schemes"};

    ordered_json config{{"command", "rd-sweep"}, {"lambda", a.lambda}};
    config["distortions"] = a.distortions;
    config["schemes"] = a.schemes;
    config["k"] = a.ks;
    config["margin"] = a.margin;
    if (a.lo) config["lo"] = *a.lo;
    if (a.hi) config["hi"] = *a.hi;
    config["format"] = a.out.format;
    if (!a.out.path.empty()) config["out"] = a.out.path;

    Table table;
    table.columns = {"D_target", "scheme", "rate", "distortion", "shannon", "gap"};
    for (const std::string& scheme : a.schemes) {
        if (scheme == "quantizer-linear" || scheme == "quantizer-nonlinear") {
            const ec_rd_scheme kind = scheme == "quantizer-linear" ? EC_RD_QUANTIZER_LINEAR
                                                                   : EC_RD_QUANTIZER_NONLINEAR;
            for (int k : a.ks) {
                ec_rd_point* pt = nullptr;
                check(ec_source_quantizer(a.lambda, k, kind, &pt));
                double rate, dist;
                check(ec_rd_rate(pt, &rate));
                check(ec_rd_distortion(pt, &dist));
                ec_rd_free(pt);
                double shannon;
                check(ec_rd_function(a.lambda, dist, &shannon));
                table.add_row({dist, scheme, rate, dist, shannon, rate - shannon});
            }
            continue;
        }
        for (double target : a.distortions) {
            if (scheme == "shannon") {
                double shannon;
                check(ec_rd_function(a.lambda, target, &shannon));
                table.add_row({target, scheme, shannon, target, shannon, 0.0});
                continue;
            }
            int lo, hi;
            if (a.lo && a.hi) {
                lo = *a.lo;
                hi = *a.hi;
            } else {
                check(ec_source_compliant_range(a.lambda, target, &lo, &hi));
                lo -= a.margin;
                hi += a.margin;
            }
            ec_rd_point* pt = nullptr;
            check(ec_source_scheme(a.lambda, target, lo, hi,
                                   scheme == "one-sided" ? EC_RD_ONE_SIDED : EC_RD_SUCCESSIVE,
                                   &pt));
            double rate, dist;
            check(ec_rd_rate(pt, &rate));
            check(ec_rd_distortion(pt, &dist));
            ec_rd_free(pt);
            double shannon;
            check(ec_rd_function(a.lambda, dist, &shannon));
            table.add_row({target, scheme, rate, dist, shannon, rate - shannon});
        }
    }
    emit(a.out, config, table);
    return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string kind = "expansion";
    double lambda = 1.0;
    double ex = 0.0, ez = 1.0;
    std::optional<int> lo, hi;
    std::uint64_t n = 0;
    std::uint64_t seed = 1;
    OutputOptions out;
    std::string config_path;
};

int cmd_simulate(SimulateArgs& a, const CLI::App& app) {
    if (!a.config_path.empty()) {
        const ordered_json cfg = load_config_file(a.config_path);
        merge(app, cfg, "--kind", "kind", a.kind);
        merge(app, cfg, "--lambda", "lambda", a.lambda);
        merge(app, cfg, "--ex", "e_x", a.ex);
        merge(app, cfg, "--ez", "e_z", a.ez);
        if (app.count("--lo") == 0 && cfg.contains("lo")) a.lo = cfg.at("lo").get<int>();
        if (app.count("--hi") == 0 && cfg.contains("hi")) a.hi = cfg.at("hi").get<int>();
        merge(app, cfg, "--n", "n", a.n);
        merge(app, cfg, "--seed", "seed", a.seed);
        merge(app, cfg, "--format", "format", a.out.format);
        merge(app, cfg, "--out", "out", a.out.path);
    }
    int lo, hi;
    ec_sim_report* rep = nullptr;
    ordered_json config{{"command", "simulate"}, {"kind", a.kind}};
    if (a.kind == "expansion") {
        lo = a.lo.value_or(-10);
        hi = a.hi.value_or(10);
        if (a.n == 0) a.n = 100000;
        config["lambda"] = a.lambda;
        check(ec_mc_validate_expansion(a.lambda, lo, hi, a.n, a.seed, &rep));
    } else if (a.kind == "carries" || a.kind == "mi") {
        if (a.ex <= 0.0) a.ex = a.kind == "carries" ? 256.0 : 32768.0;
        if (a.kind == "carries") {
            lo = a.lo.value_or(-5);
            hi = a.hi.value_or(12);
            if (a.n == 0) a.n = 100000;
            check(ec_mc_simulate_carries(a.ex, a.ez, lo, hi, a.n, a.seed, &rep));
        } else {
            lo = a.lo.value_or(-5);
            hi = a.hi.value_or(20);
            if (a.n == 0) a.n = 20000;
            check(ec_mc_level_mi(a.ex, a.ez, lo, hi, a.n, a.seed, &rep));
        }
        config["e_x"] = a.ex;
        config["e_z"] = a.ez;
    } else {
        throw CliError{"unknown kind: " + a.kind + " (expected expansion, carries, mi)"};
    }
    config["lo"] = lo;
    config["hi"] = hi;
    config["n"] = a.n;
    config["seed"] = a.seed;
    config["format"] = a.out.format;
    if (!a.out.path.empty()) config["out"] = a.out.path;

    Table table;
    table.columns = {"stat", "level", "empirical", "analytic", "z_score"};
    size_t count = 0;
    check(ec_sim_stat_count(rep, &count));
    for (size_t i = 0; i < count; ++i) {
        ec_stat_kind kind;
        int level;
        double emp, ana, z;
        check(ec_sim_stat(rep, i, &kind, &level, &emp, &ana, &z));
        const char* name = kind == EC_STAT_LEVEL_FREQ        ? "level_freq"
                           : kind == EC_STAT_CARRY           ? "carry"
                           : kind == EC_STAT_EFFECTIVE_NOISE ? "effective_noise"
                                                             : "mi";
        table.add_row({name, level, emp, ana, z});
    }
    int has_ks = 0, pass = 0;
    double ks, threshold;
    check(ec_sim_ks(rep, &has_ks, &ks, &threshold));
    if (has_ks) table.add_row({"ks", nullptr, ks, threshold, nullptr});
    check(ec_sim_pass(rep, &pass));
    ec_sim_free(rep);
    emit(a.out, config, table);
    return pass ? kExitOk : kExitVerificationFailure;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    bool full = false;
    bool inject_fault = false;
    OutputOptions out;
};

int cmd_verify(VerifyArgs& a) {
    const std::uint64_t n = a.full ? 100000 : 20000;
    Table table;
    table.columns = {"check", "detail", "pass"};
    bool all_ok = true;
    const auto add = [&](const std::string& name, const std::string& detail, bool ok) {
        table.add_row({name, detail, ok ? "ok" : "FAIL"});
        all_ok = all_ok && ok;
    };

    // entropy + carry bound inventory: e_z = 2^-5..2^5, levels [-30,30], snr 2^10
    {
        size_t total = 0, bad = 0;
        for (int e = -5; e <= 5; ++e) {
            const double ez = std::exp2(static_cast<double>(e));
            ec_bound_report* rep = nullptr;
            check(ec_aen_verify_bounds(1024.0 * ez, ez, -30, 30, &rep));
            size_t c = 0, v = 0;
            check(ec_bounds_count(rep, &c));
            check(ec_bounds_violations(rep, &v));
            total += c;
            bad += v;
            ec_bounds_free(rep);
        }
        add("bound-inventory",
            std::to_string(total) + " checks; " + std::to_string(bad) + " violations",
            bad == 0);
    }
    // capacity-gap verdicts at the hypothesis boundary
    for (double eps : {0.5, 0.1, 0.01}) {
        int met, lo, hi, pass;
        double cap, r1, r2, g1, g2, b1, b2;
        check(ec_aen_gap_report(eps, 1.0 / eps, 1.0, &met, &lo, &hi, &cap, &r1, &r2, &g1, &g2,
                                &b1, &b2, &pass));
        add("capacity-gap eps=" + fmt12(eps),
            "gap2=" + fmt12(g2) + " bound=" + fmt12(b2), met == 1 && pass == 1);
    }
    // rate-distortion gap verdicts
    {
        bool ok = true;
        double worst = 0.0;
        for (double lambda : {0.5, 1.0, 2.0}) {
            for (double frac : {0.5, 0.1, 0.01, 0.001}) {
                int lo, hi, pass;
                double r1, r2, d1, d2, g1, g2, bound;
                check(ec_source_gap_check(lambda, frac / lambda, &lo, &hi, &r1, &r2, &d1, &d2,
                                          &g1, &g2, &bound, &pass));
                ok = ok && pass == 1 && d1 == d2 && r2 <= r1 + 1e-12;
                worst = std::max(worst, std::max(g1, g2));
            }
        }
        add("rd-gap grid", "worst gap=" + fmt12(worst) + " bound=" + fmt12(5.5 * 1.4426950408889634),
            ok);
    }
    // Monte Carlo positive controls
    {
        ec_sim_report* rep = nullptr;
        check(ec_mc_validate_expansion(1.0, -10, 10, n, 20240901, &rep));
        int pass = 0, has_ks = 0;
        double ks, thr;
        check(ec_sim_pass(rep, &pass));
        check(ec_sim_ks(rep, &has_ks, &ks, &thr));
        ec_sim_free(rep);
        add("mc-expansion", "ks=" + fmt12(ks) + " threshold=" + fmt12(thr), pass == 1);

        check(ec_mc_simulate_carries(256.0, 1.0, -5, 12, n, 31337, &rep));
        check(ec_sim_pass(rep, &pass));
        ec_sim_free(rep);
        add("mc-carries", "n=" + std::to_string(n), pass == 1);
    }
    if (a.inject_fault) add("injected-fault", "deliberate failure", false);

    ordered_json config{{"command", "verify"}, {"full", a.full}, {"format", a.out.format}};
    emit(a.out, config, table);
    if (a.out.format != "json" && a.out.path.empty())
        std::cout << (all_ok ? "PASS" : "FAIL") << "\n";
    return all_ok ? kExitOk : kExitVerificationFailure;
}

void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", out.path, "Write output to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expansion coding toolkit for exponential channels and sources"};
    app.require_subcommand(1);

    ExpandArgs expand_args;
    CLI::App* expand = app.add_subcommand("expand", "Per-level bit probabilities of an expansion");
    expand->add_option("--lambda", expand_args.lambda, "Rate parameter of the exponential law")
        ->capture_default_str();
    expand->add_option("--lo", expand_args.lo, "Lowest level")->capture_default_str();
    expand->add_option("--hi", expand_args.hi, "Highest level")->capture_default_str();
    expand->add_option("--n", expand_args.n, "Also sample n draws and report frequencies");
    expand->add_option("--seed", expand_args.seed, "Sampling seed")->capture_default_str();
    expand->add_option("--config", expand_args.config_path, "JSON config file");
    add_output_options(expand, expand_args.out);

    AenSweepArgs aen_args;
    CLI::App* aen = app.add_subcommand("aen-sweep", "Achievable-rate sweep on the AEN channel");
    aen->add_option("--snr-db", aen_args.snr_db, "SNR grid in dB")->delimiter(',');
    aen->add_option("--ex", aen_args.ex, "Mean input constraint (instead of --snr-db)");
    aen->add_option("--ez", aen_args.ez, "Mean noise")->capture_default_str();
    aen->add_option("--schemes", aen_args.schemes,
                    "Schemes: carries-as-noise, decode-carries, qary")
        ->delimiter(',')
        ->capture_default_str();
    aen->add_option("--q", aen_args.qs, "Alphabet sizes for the qary scheme")
        ->delimiter(',')
        ->capture_default_str();
    aen->add_option("--epsilon", aen_args.epsilon,
                    "Gap parameter fixing the per-point level window")
        ->capture_default_str();
    aen->add_option("--lo", aen_args.lo, "Fixed lowest level (overrides --epsilon)");
    aen->add_option("--hi", aen_args.hi, "Fixed highest level (overrides --epsilon)");
    aen->add_option("--config", aen_args.config_path, "JSON config file");
    add_output_options(aen, aen_args.out);

    RdSweepArgs rd_args;
    CLI::App* rd = app.add_subcommand("rd-sweep", "Rate-distortion sweep for exponential sources");
    rd->add_option("--lambda", rd_args.lambda, "Source rate parameter")->capture_default_str();
    rd->add_option("--distortions", rd_args.distortions, "Target distortion grid")->delimiter(',');
    rd->add_option("--schemes", rd_args.schemes,
                   "Schemes: one-sided, successive, shannon, quantizer-linear, quantizer-nonlinear")
        ->delimiter(',')
        ->capture_default_str();
    rd->add_option("--k", rd_args.ks, "Quantizer cell counts")->delimiter(',')->capture_default_str();
    rd->add_option("--margin", rd_args.margin,
                   "Extra levels beyond the compliant window (keeps truncation tails negligible)")
        ->capture_default_str();
    rd->add_option("--lo", rd_args.lo, "Fixed lowest level (overrides the window rule)");
    rd->add_option("--hi", rd_args.hi, "Fixed highest level (overrides the window rule)");
    rd->add_option("--config", rd_args.config_path, "JSON config file");
    add_output_options(rd, rd_args.out);

    SimulateArgs sim_args;
    CLI::App* sim = app.add_subcommand("simulate", "Seeded Monte Carlo validation runs");
    sim->add_option("--kind", sim_args.kind, "expansion, carries, or mi")->capture_default_str();
    sim->add_option("--lambda", sim_args.lambda, "Rate parameter (expansion kind)")
        ->capture_default_str();
    sim->add_option("--ex", sim_args.ex, "Mean input constraint (carries/mi kinds)");
    sim->add_option("--ez", sim_args.ez, "Mean noise (carries/mi kinds)")->capture_default_str();
    sim->add_option("--lo", sim_args.lo, "Lowest level");
    sim->add_option("--hi", sim_args.hi, "Highest level");
    sim->add_option("--n", sim_args.n, "Sample count (0 = kind default)");
    sim->add_option("--seed", sim_args.seed, "Seed")->capture_default_str();
    sim->add_option("--config", sim_args.config_path, "JSON config file");
    add_output_options(sim, sim_args.out);

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Bound inventory, gap theorems, Monte Carlo controls");
    verify->add_flag("--full", verify_args.full, "Run simulations at n=100000");
    verify->add_flag("--inject-fault", verify_args.inject_fault)->group("");  // test hook, hidden
    add_output_options(verify, verify_args.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (expand->parsed()) return cmd_expand(expand_args, *expand);
        if (aen->parsed()) return cmd_aen_sweep(aen_args, *aen);
        if (rd->parsed()) return cmd_rd_sweep(rd_args, *rd);
        if (sim->parsed()) return cmd_simulate(sim_args, *sim);
        if (verify->parsed()) return cmd_verify(verify_args);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
