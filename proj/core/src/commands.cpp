#include "mimosim/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mimosim/analysis.hpp"

namespace mimosim {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "nt",   "nr",    "ntot",  "nrt",     "sigma_h2",         "snr_db",
    "frames", "seed", "workers", "iterations", "interleaver_seed", "early_exit_errors",
    "eta_min", "out_csv"};

[[noreturn]] void config_error(const std::string& msg) { throw std::runtime_error(msg); }

template <typename T>
T require_number(const json& j, const std::string& key) {
    if (!j.at(key).is_number()) {
        config_error("config key '" + key + "' must be a number");
    }
    return j.at(key).get<T>();
}

}  // namespace

std::string csv_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::optional<std::uint64_t> env_seed_override() {
    const char* env = std::getenv("MIMOSIM_SEED");
    if (env == nullptr || *env == '\0') {
        return std::nullopt;
    }
    std::uint64_t value = 0;
    const char* end = env;
    while (*end != '\0') ++end;
    const auto res = std::from_chars(env, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        config_error(std::string("MIMOSIM_SEED is not a valid integer: '") + env + "'");
    }
    return value;
}

RunConfigFile load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        config_error("cannot open config file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        config_error("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) {
        config_error("config file " + path + " must hold a JSON object");
    }
    for (const auto& item : j.items()) {
        if (!kKnownKeys.contains(item.key())) {
            config_error("unknown config key '" + item.key() + "' in " + path);
        }
    }

    RunConfigFile cfg;
    SimulationPlan& plan = cfg.plan;

    const bool has_nt = j.contains("nt");
    const bool has_nr = j.contains("nr");
    const bool has_ntot = j.contains("ntot");
    if (has_nt) plan.cfg.n_t = require_number<int>(j, "nt");
    if (has_nr) plan.cfg.n_r = require_number<int>(j, "nr");
    if (has_ntot) {
        const int n_tot = require_number<int>(j, "ntot");
        if (has_nt && has_nr) {
            if (plan.cfg.n_t + plan.cfg.n_r != n_tot) {
                config_error("keys 'nt', 'nr', 'ntot' are inconsistent: nt + nr != ntot");
            }
        } else if (has_nt) {
            plan.cfg.n_r = n_tot - plan.cfg.n_t;
        } else if (has_nr) {
            plan.cfg.n_t = n_tot - plan.cfg.n_r;
        } else {
            config_error("key 'ntot' needs an explicit split: give 'nt' or 'nr' as well");
        }
    } else if (!has_nt || !has_nr) {
        config_error("config must give both 'nt' and 'nr' (or 'ntot' with one of them)");
    }

    if (j.contains("nrt")) plan.cfg.n_rt = require_number<int>(j, "nrt");
    if (j.contains("sigma_h2")) plan.cfg.sigma_h_sq = require_number<double>(j, "sigma_h2");

    if (j.contains("snr_db")) {
        if (!j.at("snr_db").is_array()) {
            config_error("config key 'snr_db' must be an array of numbers");
        }
        for (const auto& v : j.at("snr_db")) {
            if (!v.is_number()) {
                config_error("config key 'snr_db' must be an array of numbers");
            }
            plan.snr_points_db.push_back(v.get<double>());
        }
    }
    if (j.contains("frames")) plan.frames = require_number<std::size_t>(j, "frames");
    if (j.contains("seed")) {
        plan.master_seed = require_number<std::uint64_t>(j, "seed");
        cfg.seed_in_config = true;
    }
    if (j.contains("workers")) plan.workers = require_number<unsigned>(j, "workers");
    if (j.contains("iterations")) plan.turbo.num_iterations = require_number<int>(j, "iterations");
    if (j.contains("interleaver_seed")) {
        plan.interleaver_seed = require_number<std::uint64_t>(j, "interleaver_seed");
    }
    if (j.contains("early_exit_errors")) {
        plan.early_exit_errors = require_number<std::size_t>(j, "early_exit_errors");
    }
    if (j.contains("eta_min")) cfg.eta_min = require_number<double>(j, "eta_min");
    if (j.contains("out_csv")) {
        if (!j.at("out_csv").is_string()) {
            config_error("config key 'out_csv' must be a string");
        }
        cfg.out_csv = j.at("out_csv").get<std::string>();
    }

    try {
        plan.cfg.validate();
    } catch (const std::invalid_argument& e) {
        config_error(std::string("invalid configuration: ") + e.what());
    }
    return cfg;
}

namespace {

int write_csv_or_fail(const std::optional<std::string>& path, const std::string& body,
                      std::ostream& out, std::ostream& err) {
    if (!path) {
        out << body;
        return kExitOk;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) {
        err << "error: cannot open output file: " << *path << "\n";
        return kExitRuntimeError;
    }
    file << body;
    if (!file) {
        err << "error: failed writing output file: " << *path << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}

}  // namespace

int cmd_ber(const BerOptions& opts, std::ostream& out, std::ostream& err) {
    RunConfigFile cfg;
    try {
        cfg = load_run_config(opts.config_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    SimulationPlan plan = cfg.plan;
    // Seed precedence: --seed, then the config file, then MIMOSIM_SEED.
    if (!opts.seed && !cfg.seed_in_config) {
        try {
            if (const auto env = env_seed_override()) {
                plan.master_seed = *env;
            }
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitConfigError;
        }
    }
    if (opts.seed) plan.master_seed = *opts.seed;
    if (opts.frames) plan.frames = *opts.frames;
    if (opts.workers) plan.workers = *opts.workers;
    const std::optional<std::string> out_csv = opts.out_csv ? opts.out_csv : cfg.out_csv;

    if (plan.snr_points_db.empty()) {
        err << "error: config key 'snr_db' must list at least one SNR point\n";
        return kExitConfigError;
    }
    for (const double snr_db : plan.snr_points_db) {
        try {
            snr_to_sigma_w(snr_db, plan.cfg);
        } catch (const std::exception&) {
            err << "error: 'snr_db' value " << snr_db
                << " exceeds the interference-limited SINR bound "
                << to_db(sinr_av_b_ub(plan.cfg.n_t, plan.cfg.n_r, plan.cfg.n_rt))
                << " dB for this geometry\n";
            return kExitConfigError;
        }
    }

    std::vector<BerRecord> records;
    try {
        records = run_sweep(plan);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }

    const double eta = spectral_efficiency(plan.cfg.n_r, plan.cfg.n_rt);
    const double ub = sinr_av_b_ub(plan.cfg.n_t, plan.cfg.n_r, plan.cfg.n_rt);
    const double ub_db = to_db(ub);

    std::string body = "snr_db,frames,bits,errors,ber,ci_low,ci_high,eta_p,sinr_ub_db\n";
    for (const BerRecord& r : records) {
        const ConfidenceInterval ci = ber_confidence(r);
        body += csv_double(r.snr_db);
        body += ',';
        body += std::to_string(r.frames);
        body += ',';
        body += std::to_string(r.bits_sent);
        body += ',';
        body += std::to_string(r.bit_errors);
        body += ',';
        body += csv_double(r.ber);
        body += ',';
        body += csv_double(ci.low);
        body += ',';
        body += csv_double(ci.high);
        body += ',';
        body += csv_double(eta);
        body += ',';
        body += csv_double(ub_db);
        body += '\n';
    }

    const int rc = write_csv_or_fail(out_csv, body, out, err);
    if (rc != kExitOk) {
        return rc;
    }

    out << "# nt=" << plan.cfg.n_t << " nr=" << plan.cfg.n_r << " nrt=" << plan.cfg.n_rt
        << " frames=" << plan.frames << " seed=" << plan.master_seed << "\n";
    out << "# snr_db       ber          errors/bits          wall_s\n";
    for (const BerRecord& r : records) {
        std::ostringstream line;
        line << "  " << std::setw(7) << std::fixed << std::setprecision(2) << r.snr_db << "  "
             << std::scientific << std::setprecision(3) << r.ber << "  " << r.bit_errors << "/"
             << r.bits_sent << "  " << std::fixed << std::setprecision(1) << r.wall_time_s;
        out << line.str() << "\n";
    }
    return kExitOk;
}

int cmd_plan(const PlanOptions& opts, std::ostream& out, std::ostream& err) {
    PlannerResult res;
    try {
        res = plan_antenna_range(opts.n_tot, opts.n_rt, opts.eta_min);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    std::string body = "nt,sinr_ub_db,eta_p,f\n";
    for (const PlannerCurvePoint& p : res.curves) {
        body += std::to_string(p.n_t);
        body += ',';
        body += csv_double(p.sinr_ub_db);
        body += ',';
        body += csv_double(p.eta_p);
        body += ',';
        body += csv_double(p.f);
        body += '\n';
    }
    if (res.empty) {
        body += "# range,EMPTY\n";
    } else {
        body += "# nt_min," + std::to_string(res.n_t_min) + "\n";
        body += "# nt_max," + std::to_string(res.n_t_max) + "\n";
    }
    body += "# stationary_nt," + csv_double(res.stationary_n_t) + "\n";
    body += std::string("# f_minimum_avoidable,") + (res.minimum_avoidable ? "true" : "false") +
            "\n";

    return write_csv_or_fail(opts.out_csv, body, out, err);
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.draws < 10000) {
        err << "error: --draws must be at least 10000 to resolve a 4-standard-error check\n";
        return kExitConfigError;
    }
    SystemConfig cfg;
    cfg.n_t = opts.n_t;
    cfg.n_r = opts.n_r;
    cfg.n_rt = opts.n_rt;
    cfg.sigma_h_sq = opts.sigma_h_sq;
    cfg.sigma_w_sq = opts.sigma_w_sq;
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    std::optional<double> analytic_override;
    if (opts.corrupt_analytic) {
        analytic_override = cfg.sigma_h_sq * 1.1;
    }

    MomentReport report;
    try {
        report = validate_moments(cfg, opts.draws, opts.seed, analytic_override);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }

    out << "moment             analytic        estimate        std_err        z      status\n";
    for (const MomentCheck& c : report.checks) {
        std::ostringstream line;
        line << std::left << std::setw(18) << c.name << std::right << std::setw(14)
             << csv_double(c.analytic) << "  " << std::setw(14) << csv_double(c.estimate) << "  "
             << std::setw(12) << csv_double(c.std_error) << "  " << std::setw(6) << std::fixed
             << std::setprecision(2) << c.z_score() << "  " << (c.pass ? "PASS" : "FAIL");
        out << line.str() << "\n";
    }
    out << (report.all_pass ? "all moments PASS" : "moment check FAILED") << "\n";
    return report.all_pass ? kExitOk : kExitValidationFailed;
}

}  // namespace mimosim
