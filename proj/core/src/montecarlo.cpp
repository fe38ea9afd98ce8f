#include "mimosim/montecarlo.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace mimosim {

namespace {

/// Frames are dispatched in fixed-size waves; early-exit decisions happen only
/// at wave boundaries so they cannot depend on the worker count.
constexpr std::size_t kWaveSize = 64;

std::uint64_t run_frame_prepared(const SimulationPlan& plan, const InterleaverPerm& perm,
                                 std::uint32_t frame_idx, double sigma_w_sq) {
    const std::size_t data_len = plan.turbo.data_length;
    const std::size_t n_r = static_cast<std::size_t>(plan.cfg.n_r);
    const std::size_t n_rt = static_cast<std::size_t>(plan.cfg.n_rt);

    SystemConfig cfg = plan.cfg;
    cfg.sigma_w_sq = sigma_w_sq;

    RngStream data_rng(plan.master_seed, StreamId{frame_idx, StreamId::kDataBits, 0});
    std::vector<std::uint8_t> data(data_len);
    for (auto& b : data) b = data_rng.bit();

    const auto pairs = turbo_encode(data, plan.turbo, perm);
    const CVec symbols = map_qpsk(pairs);

    const std::size_t blocks = symbols.size() / n_r;
    // A noise- and interference-free link has zero effective variance; floor
    // it so the demapper sees saturated LLRs instead of a division by zero.
    const double noise_var = std::max(effective_noise_var_per_dim(cfg), 1e-300);

    std::vector<LlrPair> llrs(symbols.size());
    std::vector<ReceivedBlock> received;
    received.reserve(n_rt);
    for (std::size_t b = 0; b < blocks; ++b) {
        const CVec block_symbols(symbols.begin() + b * n_r, symbols.begin() + (b + 1) * n_r);
        received.clear();
        for (std::size_t k = 0; k < n_rt; ++k) {
            RngStream rng(plan.master_seed,
                          StreamId{frame_idx, static_cast<std::uint8_t>(k),
                                   static_cast<std::uint32_t>(b)});
            received.push_back(transmit_block(block_symbols, cfg, rng));
        }
        const CombinedBlock combined = combine_retransmissions(received);
        const auto block_llrs = demap_llr(combined, noise_var);
        for (std::size_t i = 0; i < n_r; ++i) {
            llrs[b * n_r + i] = block_llrs[i];
        }
    }

    const auto decoded = turbo_decode(llrs, plan.turbo, perm);
    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < data_len; ++i) {
        errors += decoded[i] != data[i];
    }
    return errors;
}

}  // namespace

void SimulationPlan::resolve() {
    cfg.validate();
    if (turbo.data_length == 0) {
        turbo.data_length = TurboSpec::data_length_for(static_cast<std::size_t>(cfg.n_r));
    }
    if (turbo.coded_length() % static_cast<std::size_t>(cfg.n_r) != 0) {
        throw std::invalid_argument("SimulationPlan: coded length must divide into n_r blocks");
    }
    if (turbo.num_iterations < 1) {
        throw std::invalid_argument("SimulationPlan: turbo iterations must be >= 1");
    }
}

std::uint64_t run_frame(const SimulationPlan& plan, std::uint32_t frame_idx, double sigma_w_sq) {
    SimulationPlan resolved = plan;
    resolved.resolve();
    const InterleaverPerm perm(resolved.turbo.data_length, resolved.resolved_interleaver_seed());
    return run_frame_prepared(resolved, perm, frame_idx, sigma_w_sq);
}

std::vector<BerRecord> run_sweep(const SimulationPlan& plan) {
    SimulationPlan resolved = plan;
    resolved.resolve();
    if (resolved.snr_points_db.empty()) {
        throw std::invalid_argument("run_sweep: snr_points_db must be nonempty");
    }
    const InterleaverPerm perm(resolved.turbo.data_length, resolved.resolved_interleaver_seed());

    unsigned workers = resolved.workers;
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }

    std::vector<BerRecord> records;
    records.reserve(resolved.snr_points_db.size());
    for (const double snr_db : resolved.snr_points_db) {
        const double sigma_w_sq = snr_to_sigma_w(snr_db, resolved.cfg);
        const auto start = std::chrono::steady_clock::now();

        std::vector<std::uint64_t> frame_errors(resolved.frames, 0);
        std::uint64_t total_errors = 0;
        std::size_t frames_done = 0;
        while (frames_done < resolved.frames) {
            const std::size_t wave_end = std::min(frames_done + kWaveSize, resolved.frames);
            std::atomic<std::size_t> next{frames_done};
            auto work = [&]() {
                for (;;) {
                    const std::size_t idx = next.fetch_add(1);
                    if (idx >= wave_end) break;
                    frame_errors[idx] = run_frame_prepared(
                        resolved, perm, static_cast<std::uint32_t>(idx), sigma_w_sq);
                }
            };
            if (workers == 1) {
                work();
            } else {
                std::vector<std::thread> pool;
                pool.reserve(workers);
                for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
                for (auto& t : pool) t.join();
            }
            // Reduce in frame order.
            for (std::size_t i = frames_done; i < wave_end; ++i) {
                total_errors += frame_errors[i];
            }
            frames_done = wave_end;
            if (resolved.early_exit_errors > 0 && total_errors >= resolved.early_exit_errors) {
                break;
            }
        }

        const auto stop = std::chrono::steady_clock::now();
        BerRecord rec;
        rec.snr_db = snr_db;
        rec.frames = frames_done;
        rec.bits_sent = static_cast<std::uint64_t>(frames_done) * resolved.turbo.data_length;
        rec.bit_errors = total_errors;
        rec.ber = rec.bits_sent == 0 ? 0.0
                                     : static_cast<double>(rec.bit_errors) /
                                           static_cast<double>(rec.bits_sent);
        rec.wall_time_s = std::chrono::duration<double>(stop - start).count();
        records.push_back(rec);
    }
    return records;
}

MomentReport validate_moments(const SystemConfig& cfg, std::size_t num_draws, std::uint64_t seed,
                              std::optional<double> analytic_sigma_h_sq) {
    cfg.validate();
    if (num_draws < 2) {
        throw std::invalid_argument("validate_moments: num_draws must be >= 2");
    }
    const std::size_t n_r = static_cast<std::size_t>(cfg.n_r);
    const std::size_t n_rt = static_cast<std::size_t>(cfg.n_rt);
    const double sigma_h = std::sqrt(cfg.sigma_h_sq);
    const double sigma_w = std::sqrt(cfg.sigma_w_sq);

    // One accumulator per moment; cross-antenna moments need n_r >= 2.
    const bool has_cross = cfg.n_r >= 2;
    enum Idx {
        kMeanF = 0,     // E[F_kii]
        kMeanFSq,       // E[F_kii^2]
        kCrossSq,       // E[|F_kij|^2], i != j
        kInterfSq,      // E[|I_ki|^2]
        kDisturbSq,     // E[|I_ki + W_ki|^2]
        kCombGainSq,    // E[F_i^2]
        kCombDisturbSq, // E[|U_i|^2]
        kCount
    };
    std::array<double, kCount> sum{};
    std::array<double, kCount> sum_sq{};

    for (std::size_t d = 0; d < num_draws; ++d) {
        const std::uint32_t frame = static_cast<std::uint32_t>(d);
        RngStream sym_rng(seed, StreamId{frame, StreamId::kDataBits, 0});
        CVec symbols(n_r);
        for (auto& s : symbols) {
            s = cplx{sym_rng.bit() ? -1.0 : 1.0, sym_rng.bit() ? -1.0 : 1.0};
        }

        double gain_avg = 0.0;
        cplx disturb_avg{0.0, 0.0};
        std::array<double, kCount> draw{};
        for (std::size_t k = 0; k < n_rt; ++k) {
            RngStream rng(seed, StreamId{frame, static_cast<std::uint8_t>(k), 0});
            const ComplexMatrix h = sample_cscg_matrix(n_r, static_cast<std::size_t>(cfg.n_t),
                                                       sigma_h, rng);
            const cplx w{sigma_w * rng.gaussian(), sigma_w * rng.gaussian()};
            const Decomposition dec = decompose_block(h, symbols);
            gain_avg += dec.direct_gain[0];
            disturb_avg += dec.interference[0] + w;
            if (k == 0) {
                draw[kMeanF] = dec.direct_gain[0];
                draw[kMeanFSq] = dec.direct_gain[0] * dec.direct_gain[0];
                if (has_cross) {
                    cplx f01{0.0, 0.0};
                    for (std::size_t l = 0; l < h.cols(); ++l) {
                        f01 += h(0, l) * std::conj(h(1, l));
                    }
                    draw[kCrossSq] = std::norm(f01);
                }
                draw[kInterfSq] = std::norm(dec.interference[0]);
                draw[kDisturbSq] = std::norm(dec.interference[0] + w);
            }
        }
        gain_avg /= static_cast<double>(n_rt);
        disturb_avg /= static_cast<double>(n_rt);
        draw[kCombGainSq] = gain_avg * gain_avg;
        draw[kCombDisturbSq] = std::norm(disturb_avg);

        for (int m = 0; m < kCount; ++m) {
            sum[m] += draw[m];
            sum_sq[m] += draw[m] * draw[m];
        }
    }

    const double a_sig_h_sq = analytic_sigma_h_sq.value_or(cfg.sigma_h_sq);
    const double sig_h4 = a_sig_h_sq * a_sig_h_sq;
    const double n_t = cfg.n_t;
    const double sigma_u_sq = 8.0 * sig_h4 * n_t * (cfg.n_r - 1) + 2.0 * cfg.sigma_w_sq;
    std::array<double, kCount> analytic{};
    analytic[kMeanF] = 2.0 * a_sig_h_sq * n_t;
    analytic[kMeanFSq] = 4.0 * sig_h4 * n_t * (n_t + 1);
    analytic[kCrossSq] = 4.0 * sig_h4 * n_t;
    analytic[kInterfSq] = 8.0 * sig_h4 * n_t * (cfg.n_r - 1);
    analytic[kDisturbSq] = sigma_u_sq;
    analytic[kCombGainSq] = 4.0 * sig_h4 * n_t * (n_t * cfg.n_rt + 1) / cfg.n_rt;
    analytic[kCombDisturbSq] = sigma_u_sq / cfg.n_rt;

    static const char* names[kCount] = {
        "E[F_kii]",       "E[F_kii^2]",  "E[|F_kij|^2]", "E[|I_ki|^2]",
        "E[|I_ki+W_ki|^2]", "E[F_i^2]",  "E[|U_i|^2]"};

    MomentReport report;
    report.all_pass = true;
    const double n = static_cast<double>(num_draws);
    for (int m = 0; m < kCount; ++m) {
        if (!has_cross && (m == kCrossSq || m == kInterfSq)) {
            continue;  // no cross-antenna terms with a single receive antenna
        }
        MomentCheck chk;
        chk.name = names[m];
        chk.analytic = analytic[m];
        chk.estimate = sum[m] / n;
        const double var = std::max(0.0, sum_sq[m] / n - chk.estimate * chk.estimate);
        chk.std_error = std::sqrt(var / n);
        const double tol = 4.0 * chk.std_error;
        chk.pass = std::abs(chk.estimate - chk.analytic) <= tol;
        report.all_pass = report.all_pass && chk.pass;
        report.checks.push_back(chk);
    }
    return report;
}

ConfidenceInterval ber_confidence(const BerRecord& record) {
    if (record.bits_sent == 0) {
        throw std::invalid_argument("ber_confidence: bits_sent must be > 0");
    }
    const double n = static_cast<double>(record.bits_sent);
    const double p = static_cast<double>(record.bit_errors) / n;
    const double z = 1.959963984540054;  // 97.5th percentile of the standard normal
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return ConfidenceInterval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace mimosim
