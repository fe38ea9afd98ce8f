#ifndef MIMOSIM_ANALYSIS_HPP
#define MIMOSIM_ANALYSIS_HPP

#include <vector>

#include "mimosim/phy.hpp"

namespace mimosim {

double to_db(double linear);

/// Average SINR per bit of a single retransmission (linear).
double sinr_av_b(const SystemConfig& cfg);

/// Noise-free upper bound 2 N_rt (N_t+1) / (N_r-1); +infinity when N_r = 1.
double sinr_av_b_ub(int n_t, int n_r, int n_rt);

/// Spectral efficiency N_r / (2 N_rt) in bits per transmission.
double spectral_efficiency(int n_r, int n_rt);

/// f(N_t) = SINR upper bound + spectral efficiency at fixed N_tot.
/// Valid for 1 <= n_t <= n_tot - 2.
double objective_f(double n_t, int n_tot, int n_rt);

/// Real-valued stationary point of f: N_tot - 2 N_rt sqrt(N_tot) - 1.
/// May land outside [1, N_tot-2]; callers interpret.
double f_stationary_point(int n_tot, int n_rt);

/// Average SINR per bit after combining the N_rt retransmissions (linear).
double sinr_av_b_combined(const SystemConfig& cfg);

/// Approximate noise-free bound after combining: 2 N_rt N_t / (N_r-1);
/// +infinity when N_r = 1.
double combined_ub(int n_t, int n_r, int n_rt);

struct PlannerCurvePoint {
    int n_t;
    double sinr_ub_db;
    double eta_p;
    double f;
};

struct PlannerResult {
    bool empty = true;
    int n_t_min = 0;
    int n_t_max = 0;
    double stationary_n_t = 0.0;
    /// False when the minimum of f sits inside the admissible range and so
    /// cannot be avoided.
    bool minimum_avoidable = false;
    std::vector<PlannerCurvePoint> curves;  // N_t = 1 .. N_tot-2
};

/// Scans integer N_t and keeps the values where the SINR upper bound exceeds
/// ln 2 (strictly) and the spectral efficiency exceeds eta_min (strictly).
PlannerResult plan_antenna_range(int n_tot, int n_rt, double eta_min);

}  // namespace mimosim

#endif
