#ifndef MIMOSIM_PHY_HPP
#define MIMOSIM_PHY_HPP

#include <span>
#include <vector>

#include "mimosim/complex_matrix.hpp"
#include "mimosim/rng.hpp"
#include "mimosim/turbo.hpp"

namespace mimosim {

/// Antenna and statistics configuration of the precoded link.
struct SystemConfig {
    int n_t = 1;   // transmit antennas
    int n_r = 1;   // receive antennas
    int n_rt = 1;  // retransmissions
    double sigma_h_sq = 0.5;  // per-dimension channel variance
    double sigma_w_sq = 0.0;  // per-dimension noise variance

    /// QPSK at +-1 +- j: E|S|^2 = 2, fixed.
    static constexpr double kAvgSymbolPower = 2.0;

    int n_tot() const { return n_t + n_r; }
    void validate() const;
};

/// One received vector R_k together with the channel and noise that produced
/// it. The receiver is ideal: it knows H_k exactly.
struct ReceivedBlock {
    CVec samples;          // R_k, N_r entries
    ComplexMatrix channel; // H_k, N_r x N_t
    CVec noise;            // W_k, kept for diagnostics
};

/// Retransmission-combined vector Y with its per-antenna real gains F_i.
struct CombinedBlock {
    CVec samples;
    std::vector<double> gains;
};

/// Direct-gain / interference split of one received sample:
/// R_i = direct_gain[i]*S_i + interference[i] + W_i.
struct Decomposition {
    std::vector<double> direct_gain;
    CVec interference;
};

/// QPSK mapping, one symbol per bit pair: bit 0 -> +1, bit 1 -> -1 on each rail.
CVec map_qpsk(std::span<const BitPair> pairs);

/// One use of the precoded channel: draws H and W fresh from rng and returns
/// R = H H^H S + W.
ReceivedBlock transmit_block(const CVec& symbols, const SystemConfig& cfg, RngStream& rng);

/// Deterministic variant with caller-supplied channel and noise.
ReceivedBlock apply_channel(ComplexMatrix h, const CVec& symbols, CVec noise);

/// Per-antenna split of H H^H S into the diagonal (desired) term and the
/// cross-antenna interference.
Decomposition decompose_block(const ComplexMatrix& h, const CVec& symbols);

/// Averages the N_rt received copies of one block; gains are the averaged
/// channel diagonals.
CombinedBlock combine_retransmissions(std::span<const ReceivedBlock> blocks);

/// Per-dimension variance of the combined disturbance U_i under the Gaussian
/// interference approximation: (8 sigma_H^4 N_t (N_r-1) + 2 sigma_W^2) / (2 N_rt).
double effective_noise_var_per_dim(const SystemConfig& cfg);

/// Gain-aware QPSK soft demapping of a combined block; positive LLR favors
/// bit 0 (amplitude +1).
std::vector<LlrPair> demap_llr(const CombinedBlock& block, double noise_var_per_dim);

/// Noise variance for a requested average SINR per bit of a single
/// retransmission (the BER-curve abscissa):
///   SINR = 8 sigma_H^4 N_t (N_t+1) 2 N_rt / (8 sigma_H^4 N_t (N_r-1) + 2 sigma_W^2).
/// Throws when the request exceeds the interference-limited bound; at N_r = 1
/// the abscissa reduces to the pure-noise SNR per bit.
double snr_to_sigma_w(double snr_av_b_db, const SystemConfig& cfg);

/// Inverse of snr_to_sigma_w.
double sigma_w_to_snr(double sigma_w_sq, const SystemConfig& cfg);

}  // namespace mimosim

#endif
