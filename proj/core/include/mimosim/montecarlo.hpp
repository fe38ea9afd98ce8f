#ifndef MIMOSIM_MONTECARLO_HPP
#define MIMOSIM_MONTECARLO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mimosim/phy.hpp"
#include "mimosim/turbo.hpp"

namespace mimosim {

/// Full description of a BER sweep; run_sweep is a pure function of this.
struct SimulationPlan {
    SystemConfig cfg;
    TurboSpec turbo;
    std::vector<double> snr_points_db;
    std::size_t frames = 1000;
    std::uint64_t master_seed = 1;
    unsigned workers = 0;              // 0: use hardware concurrency
    std::size_t early_exit_errors = 0; // 0: disabled; else stop an SNR point
                                       // once this many errors accumulated
    std::optional<std::uint64_t> interleaver_seed;  // defaults to master_seed

    /// Fills turbo.data_length from n_r when unset and validates divisibility.
    void resolve();
    std::uint64_t resolved_interleaver_seed() const {
        return interleaver_seed.value_or(master_seed);
    }
};

struct BerRecord {
    double snr_db = 0.0;
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    std::size_t frames = 0;
    double wall_time_s = 0.0;  // excluded from any regression comparison
};

/// Encode -> map -> transmit N_rt times per block -> combine -> demap ->
/// decode one frame; returns the number of decoded bit errors.
std::uint64_t run_frame(const SimulationPlan& plan, std::uint32_t frame_idx, double sigma_w_sq);

/// Runs every SNR point over `frames` frames, distributed over workers with a
/// fixed reduction order, so results do not depend on the worker count.
std::vector<BerRecord> run_sweep(const SimulationPlan& plan);

struct MomentCheck {
    std::string name;
    double analytic = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    bool pass = false;

    double z_score() const { return (estimate - analytic) / std_error; }
};

struct MomentReport {
    std::vector<MomentCheck> checks;
    bool all_pass = false;
};

/// Monte Carlo estimates of the channel-statistics moments against their
/// closed forms; a check fails beyond 4 standard errors.
/// analytic_sigma_h_sq overrides the sigma_H^2 used on the analytic side only
/// (negative-control hook for the validate command).
MomentReport validate_moments(const SystemConfig& cfg, std::size_t num_draws,
                              std::uint64_t seed = 1,
                              std::optional<double> analytic_sigma_h_sq = std::nullopt);

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;
};

/// 95% Wilson score interval on the binomial error count.
ConfidenceInterval ber_confidence(const BerRecord& record);

}  // namespace mimosim

#endif
