#include "mimosim/phy.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mimosim {

void SystemConfig::validate() const {
    if (n_t < 1 || n_r < 1 || n_rt < 1) {
        throw std::invalid_argument("SystemConfig: antenna and retransmission counts must be >= 1");
    }
    if (sigma_h_sq < 0.0 || sigma_w_sq < 0.0) {
        throw std::invalid_argument("SystemConfig: variances must be >= 0");
    }
}

CVec map_qpsk(std::span<const BitPair> pairs) {
    CVec out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out[i] = cplx{pairs[i].in_phase ? -1.0 : 1.0, pairs[i].quadrature ? -1.0 : 1.0};
    }
    return out;
}

ReceivedBlock transmit_block(const CVec& symbols, const SystemConfig& cfg, RngStream& rng) {
    cfg.validate();
    if (symbols.size() != static_cast<std::size_t>(cfg.n_r)) {
        throw std::invalid_argument("transmit_block: symbol count must equal n_r");
    }
    ComplexMatrix h = sample_cscg_matrix(static_cast<std::size_t>(cfg.n_r),
                                         static_cast<std::size_t>(cfg.n_t),
                                         std::sqrt(cfg.sigma_h_sq), rng);
    CVec noise(symbols.size());
    const double sigma_w = std::sqrt(cfg.sigma_w_sq);
    for (auto& w : noise) {
        w = cplx{sigma_w * rng.gaussian(), sigma_w * rng.gaussian()};
    }
    return apply_channel(std::move(h), symbols, std::move(noise));
}

ReceivedBlock apply_channel(ComplexMatrix h, const CVec& symbols, CVec noise) {
    const std::size_t n_r = h.rows();
    const std::size_t n_t = h.cols();
    if (symbols.size() != n_r || noise.size() != n_r) {
        throw std::invalid_argument("apply_channel: vector lengths must equal h.rows()");
    }
    // R = H (H^H S) + W; associating right keeps the hot path at O(n_r n_t).
    CVec precoded(n_t, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n_r; ++i) {
        for (std::size_t l = 0; l < n_t; ++l) {
            precoded[l] += std::conj(h(i, l)) * symbols[i];
        }
    }
    CVec received(n_r);
    for (std::size_t i = 0; i < n_r; ++i) {
        cplx acc{0.0, 0.0};
        for (std::size_t l = 0; l < n_t; ++l) {
            acc += h(i, l) * precoded[l];
        }
        received[i] = acc + noise[i];
    }
    return ReceivedBlock{std::move(received), std::move(h), std::move(noise)};
}

Decomposition decompose_block(const ComplexMatrix& h, const CVec& symbols) {
    const std::size_t n_r = h.rows();
    if (symbols.size() != n_r) {
        throw std::invalid_argument("decompose_block: symbol count must equal h.rows()");
    }
    const ComplexMatrix g = hermitian_product(h);
    Decomposition d;
    d.direct_gain.resize(n_r);
    d.interference.assign(n_r, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n_r; ++i) {
        d.direct_gain[i] = g(i, i).real();
        for (std::size_t j = 0; j < n_r; ++j) {
            if (j != i) {
                d.interference[i] += g(i, j) * symbols[j];
            }
        }
    }
    return d;
}

CombinedBlock combine_retransmissions(std::span<const ReceivedBlock> blocks) {
    if (blocks.empty()) {
        throw std::invalid_argument("combine_retransmissions: need at least one block");
    }
    const std::size_t n_r = blocks.front().samples.size();
    const double inv = 1.0 / static_cast<double>(blocks.size());
    CombinedBlock out;
    out.samples.assign(n_r, cplx{0.0, 0.0});
    out.gains.assign(n_r, 0.0);
    for (const ReceivedBlock& blk : blocks) {
        if (blk.samples.size() != n_r || blk.channel.rows() != n_r) {
            throw std::invalid_argument("combine_retransmissions: inconsistent n_r across blocks");
        }
        for (std::size_t i = 0; i < n_r; ++i) {
            out.samples[i] += blk.samples[i];
            double diag = 0.0;
            for (std::size_t l = 0; l < blk.channel.cols(); ++l) {
                diag += std::norm(blk.channel(i, l));
            }
            out.gains[i] += diag;
        }
    }
    for (std::size_t i = 0; i < n_r; ++i) {
        out.samples[i] *= inv;
        out.gains[i] *= inv;
    }
    return out;
}

double effective_noise_var_per_dim(const SystemConfig& cfg) {
    cfg.validate();
    const double sig_h4 = cfg.sigma_h_sq * cfg.sigma_h_sq;
    const double sigma_u_sq = 8.0 * sig_h4 * cfg.n_t * (cfg.n_r - 1) + 2.0 * cfg.sigma_w_sq;
    return sigma_u_sq / (2.0 * cfg.n_rt);
}

std::vector<LlrPair> demap_llr(const CombinedBlock& block, double noise_var_per_dim) {
    if (!(noise_var_per_dim > 0.0)) {
        throw std::invalid_argument("demap_llr: noise variance must be positive");
    }
    std::vector<LlrPair> out(block.samples.size());
    const double scale = 2.0 / noise_var_per_dim;
    for (std::size_t i = 0; i < block.samples.size(); ++i) {
        const double g = scale * block.gains[i];
        out[i] = LlrPair{g * block.samples[i].real(), g * block.samples[i].imag()};
    }
    return out;
}

double snr_to_sigma_w(double snr_av_b_db, const SystemConfig& cfg) {
    const double snr = std::pow(10.0, snr_av_b_db / 10.0);
    const double sig_h4 = cfg.sigma_h_sq * cfg.sigma_h_sq;
    const double signal = 8.0 * sig_h4 * cfg.n_t * (cfg.n_t + 1) * 2.0 * cfg.n_rt;
    const double interference = 8.0 * sig_h4 * cfg.n_t * (cfg.n_r - 1);
    const double sigma_w_sq = (signal / snr - interference) / 2.0;
    if (sigma_w_sq < 0.0) {
        throw std::invalid_argument(
            "snr_to_sigma_w: requested SINR per bit exceeds the interference-limited bound");
    }
    return sigma_w_sq;
}

double sigma_w_to_snr(double sigma_w_sq, const SystemConfig& cfg) {
    const double sig_h4 = cfg.sigma_h_sq * cfg.sigma_h_sq;
    const double signal = 8.0 * sig_h4 * cfg.n_t * (cfg.n_t + 1) * 2.0 * cfg.n_rt;
    const double interference = 8.0 * sig_h4 * cfg.n_t * (cfg.n_r - 1);
    return 10.0 * std::log10(signal / (interference + 2.0 * sigma_w_sq));
}

}  // namespace mimosim
