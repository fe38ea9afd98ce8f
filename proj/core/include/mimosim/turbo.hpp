#ifndef MIMOSIM_TURBO_HPP
#define MIMOSIM_TURBO_HPP

#include <cstdint>
#include <vector>

namespace mimosim {

/// Per-bit log-likelihood ratios, natural log, LLR = ln P(bit=0)/P(bit=1).
using LlrVector = std::vector<double>;

/// Magnitude cap applied to every LLR entering a decoder.
inline constexpr double kLlrClip = 50.0;

/// One QPSK symbol worth of coded bits: (in-phase, quadrature).
struct BitPair {
    std::uint8_t in_phase;
    std::uint8_t quadrature;
};

/// Channel LLRs for one QPSK symbol, same rail order as BitPair.
struct LlrPair {
    double in_phase;
    double quadrature;
};

/// Rate-compatible turbo code parameters. The constituent encoder is a
/// recursive systematic convolutional code; taps are polynomials in D with
/// bit i holding the D^i coefficient, so the default G(D) = [1, (1+D^2)/(1+D+D^2)]
/// is feedforward 0b101, feedback 0b111.
struct TurboSpec {
    int constraint_length = 3;
    std::uint32_t feedforward_taps = 0b101;
    std::uint32_t feedback_taps = 0b111;
    int num_iterations = 8;
    std::size_t data_length = 0;  // L_d1, bits per frame

    int memory() const { return constraint_length - 1; }
    int num_states() const { return 1 << memory(); }

    /// Coded QPSK symbol count L_d = 2 L_d1.
    std::size_t coded_length() const { return 2 * data_length; }

    /// Smallest integer greater than 1000 that is an integer multiple of n_r.
    static std::size_t data_length_for(std::size_t n_r);
};

/// Seeded uniformly random permutation, fixed for a whole run.
class InterleaverPerm {
public:
    InterleaverPerm(std::size_t length, std::uint64_t seed);

    std::size_t size() const { return forward_.size(); }
    std::uint64_t seed() const { return seed_; }

    /// Interleaved index: element j of the permuted sequence is element
    /// forward(j) of the original.
    std::uint32_t forward(std::size_t j) const { return forward_[j]; }
    std::uint32_t inverse(std::size_t i) const { return inverse_[i]; }

private:
    std::uint64_t seed_;
    std::vector<std::uint32_t> forward_;
    std::vector<std::uint32_t> inverse_;
};

/// Parity stream of the recursive systematic constituent encoder, one parity
/// bit per data bit. The encoder starts in the all-zero state and is not
/// terminated.
std::vector<std::uint8_t> rsc_encode(const std::vector<std::uint8_t>& data, const TurboSpec& spec);

/// Full turbo codeword as QPSK bit pairs of length 2*L_d1: the first half is
/// (data_i, parity1_i), the second half (data_perm(i), parity2_i) where
/// parity2 comes from encoding the interleaved data.
std::vector<BitPair> turbo_encode(const std::vector<std::uint8_t>& data, const TurboSpec& spec,
                                  const InterleaverPerm& perm);

struct BcjrResult {
    LlrVector extrinsic;
    LlrVector aposteriori;  // = sys + apriori + extrinsic (after clipping)
};

/// Exact log-domain MAP (forward-backward) over the constituent trellis.
/// Alpha starts in state 0; beta is uniform at the final stage.
BcjrResult bcjr_decode(const LlrVector& sys_llr, const LlrVector& par_llr,
                       const LlrVector& apriori, const TurboSpec& spec);

/// Iterative decoder: num_iterations rounds of extrinsic exchange between the
/// two constituent decoders. Decoder 2 reads its systematic LLRs from the
/// second-segment in-phase observations; hard decisions come from its final
/// a posteriori, de-interleaved.
std::vector<std::uint8_t> turbo_decode(const std::vector<LlrPair>& llrs, const TurboSpec& spec,
                                       const InterleaverPerm& perm);

/// Same as turbo_decode but returns the hard decisions after every iteration
/// (element i = decisions after iteration i+1).
std::vector<std::vector<std::uint8_t>> turbo_decode_iterations(const std::vector<LlrPair>& llrs,
                                                               const TurboSpec& spec,
                                                               const InterleaverPerm& perm);

}  // namespace mimosim

#endif
