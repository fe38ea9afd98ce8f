#ifndef MIMOSIM_RNG_HPP
#define MIMOSIM_RNG_HPP

#include <array>
#include <cstdint>

#include "mimosim/complex_matrix.hpp"

namespace mimosim {

/// Identifies one independent random substream. Frames, retransmissions and
/// blocks each get their own stream so that the draws a worker makes never
/// depend on scheduling order.
///
/// retransmission values 0..253 address channel/noise streams; two values are
/// reserved for per-frame bookkeeping streams.
struct StreamId {
    std::uint32_t frame = 0;
    std::uint8_t retransmission = 0;
    std::uint32_t block = 0;  // < 2^24

    static constexpr std::uint8_t kDataBits = 0xFF;     // frame payload bits
    static constexpr std::uint8_t kAuxiliary = 0xFE;    // interleaver, misc draws
};

/// Counter-based generator (Philox4x32-10). A stream is fully determined by
/// (master_seed, StreamId): replaying either side of a parallel run cannot
/// change the numbers it sees.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, StreamId id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1); safe to pass to log().
    double uniform();

    /// Standard normal via Box-Muller; the paired draw is cached.
    double gaussian();

    /// One fair bit.
    std::uint8_t bit() { return static_cast<std::uint8_t>(next_u32() >> 31); }

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;   // packed StreamId, occupies the high counter lanes
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffered_ = 0;
    double spare_gaussian_ = 0.0;
    bool has_spare_ = false;
};

/// rows x cols matrix of independent circularly symmetric complex Gaussians;
/// real and imaginary parts each have variance sigma_per_dim^2.
ComplexMatrix sample_cscg_matrix(std::size_t rows, std::size_t cols, double sigma_per_dim,
                                 RngStream& rng);

}  // namespace mimosim

#endif
