#include "mimosim/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mimosim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

double sinr_av_b(const SystemConfig& cfg) {
    cfg.validate();
    const double sig_h4 = cfg.sigma_h_sq * cfg.sigma_h_sq;
    const double signal = 8.0 * sig_h4 * cfg.n_t * (cfg.n_t + 1) * 2.0 * cfg.n_rt;
    const double disturbance = 8.0 * sig_h4 * cfg.n_t * (cfg.n_r - 1) + 2.0 * cfg.sigma_w_sq;
    return signal / disturbance;
}

double sinr_av_b_ub(int n_t, int n_r, int n_rt) {
    if (n_t < 1 || n_r < 1 || n_rt < 1) {
        throw std::invalid_argument("sinr_av_b_ub: counts must be >= 1");
    }
    if (n_r == 1) {
        return kInf;
    }
    return 2.0 * n_rt * (n_t + 1) / static_cast<double>(n_r - 1);
}

double spectral_efficiency(int n_r, int n_rt) {
    if (n_r < 1 || n_rt < 1) {
        throw std::invalid_argument("spectral_efficiency: counts must be >= 1");
    }
    return n_r / (2.0 * n_rt);
}

double objective_f(double n_t, int n_tot, int n_rt) {
    if (!(n_t >= 1.0) || !(n_t <= n_tot - 2.0)) {
        throw std::invalid_argument("objective_f: n_t must lie in [1, n_tot-2]");
    }
    const double n_r = n_tot - n_t;
    return 2.0 * n_rt * (n_t + 1.0) / (n_r - 1.0) + n_r / (2.0 * n_rt);
}

double f_stationary_point(int n_tot, int n_rt) {
    if (n_tot < 2) {
        throw std::invalid_argument("f_stationary_point: n_tot must be >= 2");
    }
    return n_tot - 2.0 * n_rt * std::sqrt(static_cast<double>(n_tot)) - 1.0;
}

double sinr_av_b_combined(const SystemConfig& cfg) {
    cfg.validate();
    const double sig_h4 = cfg.sigma_h_sq * cfg.sigma_h_sq;
    const double signal =
        8.0 * sig_h4 * cfg.n_t * (static_cast<double>(cfg.n_t) * cfg.n_rt + 1) * 2.0;
    const double disturbance = 8.0 * sig_h4 * cfg.n_t * (cfg.n_r - 1) + 2.0 * cfg.sigma_w_sq;
    return signal / disturbance;
}

double combined_ub(int n_t, int n_r, int n_rt) {
    if (n_t < 1 || n_r < 1 || n_rt < 1) {
        throw std::invalid_argument("combined_ub: counts must be >= 1");
    }
    if (n_r == 1) {
        return kInf;
    }
    return 2.0 * n_rt * static_cast<double>(n_t) / (n_r - 1);
}

PlannerResult plan_antenna_range(int n_tot, int n_rt, double eta_min) {
    if (n_tot < 3) {
        throw std::invalid_argument("plan_antenna_range: n_tot must be >= 3");
    }
    if (n_rt < 1) {
        throw std::invalid_argument("plan_antenna_range: n_rt must be >= 1");
    }
    if (!(eta_min > 0.0)) {
        throw std::invalid_argument("plan_antenna_range: eta_min must be > 0");
    }

    PlannerResult res;
    res.stationary_n_t = f_stationary_point(n_tot, n_rt);
    res.curves.reserve(static_cast<std::size_t>(n_tot - 2));

    const double ln2 = std::numbers::ln2;
    bool any = false;
    for (int n_t = 1; n_t <= n_tot - 2; ++n_t) {
        const int n_r = n_tot - n_t;
        const double ub = sinr_av_b_ub(n_t, n_r, n_rt);
        const double eta = spectral_efficiency(n_r, n_rt);
        res.curves.push_back(PlannerCurvePoint{n_t, to_db(ub), eta, objective_f(n_t, n_tot, n_rt)});
        if (ub > ln2 && eta > eta_min) {
            if (!any) {
                res.n_t_min = n_t;
                any = true;
            }
            res.n_t_max = n_t;
        }
    }
    res.empty = !any;
    res.minimum_avoidable =
        any && !(res.stationary_n_t >= res.n_t_min && res.stationary_n_t <= res.n_t_max);
    return res;
}

}  // namespace mimosim
