#include "mimosim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mimosim {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
}

inline std::array<std::uint32_t, 4> philox10(std::array<std::uint32_t, 4> ctr,
                                             std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
    }
    return ctr;
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, StreamId id) {
    if (id.block >= (1u << 24)) {
        throw std::invalid_argument("RngStream: block index must be < 2^24");
    }
    key_ = {static_cast<std::uint32_t>(master_seed),
            static_cast<std::uint32_t>(master_seed >> 32)};
    stream_ = (static_cast<std::uint64_t>(id.frame) << 32) |
              (static_cast<std::uint64_t>(id.retransmission) << 24) |
              static_cast<std::uint64_t>(id.block);
}

void RngStream::refill() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    buffer_ = philox10(ctr, key_);
    ++counter_;
    buffered_ = 4;
}

std::uint32_t RngStream::next_u32() {
    if (buffered_ == 0) {
        refill();
    }
    return buffer_[--buffered_];
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
}

double RngStream::uniform() {
    // 53 random mantissa bits, shifted to the open interval (0, 1).
    const std::uint64_t mantissa = next_u64() >> 11;
    return (static_cast<double>(mantissa) + 0.5) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_gaussian_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_gaussian_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

ComplexMatrix sample_cscg_matrix(std::size_t rows, std::size_t cols, double sigma_per_dim,
                                 RngStream& rng) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("sample_cscg_matrix: dimensions must be >= 1");
    }
    if (sigma_per_dim < 0.0) {
        throw std::invalid_argument("sample_cscg_matrix: sigma_per_dim must be >= 0");
    }
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            out(i, j) = cplx{sigma_per_dim * rng.gaussian(), sigma_per_dim * rng.gaussian()};
        }
    }
    return out;
}

}  // namespace mimosim
