#include "mimosim/turbo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mimosim/rng.hpp"

namespace mimosim {

namespace {

constexpr double kNegInf = -1e30;

inline double max_star(double a, double b) {
    // Jacobian logarithm with the exact correction term.
    return std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
}

inline double clip_llr(double v) { return std::clamp(v, -kLlrClip, kLlrClip); }

inline double bit_sign(int b) { return b == 0 ? 1.0 : -1.0; }

/// Transition tables of the recursive systematic constituent code.
/// State packs the shift register with the most recent bit in the top bit.
struct Trellis {
    explicit Trellis(const TurboSpec& spec)
        : states(spec.num_states()), memory(spec.memory()) {
        if (spec.constraint_length < 2 || spec.constraint_length > 16) {
            throw std::invalid_argument("TurboSpec: unsupported constraint length");
        }
        if ((spec.feedback_taps & 1u) == 0) {
            throw std::invalid_argument("TurboSpec: feedback polynomial must contain the D^0 term");
        }
        next_state.assign(2 * states, 0);
        parity.assign(2 * states, 0);
        for (int s = 0; s < states; ++s) {
            for (int d = 0; d < 2; ++d) {
                // Register bit x_{k-i} sits at state bit (memory - i).
                int feedback = d;
                int par = 0;
                for (int i = 1; i <= memory; ++i) {
                    const int reg_bit = (s >> (memory - i)) & 1;
                    if ((spec.feedback_taps >> i) & 1u) feedback ^= reg_bit;
                    if ((spec.feedforward_taps >> i) & 1u) par ^= reg_bit;
                }
                if (spec.feedforward_taps & 1u) par ^= feedback;
                next_state[2 * s + d] =
                    ((feedback << (memory - 1)) | (s >> 1)) & (states - 1);
                parity[2 * s + d] = par;
            }
        }
    }

    int states;
    int memory;
    std::vector<int> next_state;  // [2s + d]
    std::vector<int> parity;      // [2s + d]
};

std::vector<std::uint8_t> rsc_parity(const std::vector<std::uint8_t>& data, const Trellis& tr) {
    std::vector<std::uint8_t> out(data.size());
    int state = 0;
    for (std::size_t t = 0; t < data.size(); ++t) {
        const int idx = 2 * state + data[t];
        out[t] = static_cast<std::uint8_t>(tr.parity[idx]);
        state = tr.next_state[idx];
    }
    return out;
}

BcjrResult bcjr_with_trellis(const LlrVector& sys_llr, const LlrVector& par_llr,
                             const LlrVector& apriori, const Trellis& tr) {
    const std::size_t len = sys_llr.size();
    if (par_llr.size() != len || apriori.size() != len) {
        throw std::invalid_argument("bcjr_decode: input lengths differ");
    }
    const int ns = tr.states;

    LlrVector sys(len), par(len), apr(len);
    for (std::size_t t = 0; t < len; ++t) {
        sys[t] = clip_llr(sys_llr[t]);
        par[t] = clip_llr(par_llr[t]);
        apr[t] = clip_llr(apriori[t]);
    }

    // Branch metric: log p(y_t | d, state) + log P(d), up to a common constant.
    auto gamma = [&](std::size_t t, int s, int d) {
        const int p = tr.parity[2 * s + d];
        return 0.5 * ((sys[t] + apr[t]) * bit_sign(d) + par[t] * bit_sign(p));
    };

    std::vector<double> alpha((len + 1) * ns, kNegInf);
    alpha[0] = 0.0;  // encoder starts in state 0
    for (std::size_t t = 0; t < len; ++t) {
        double* cur = &alpha[t * ns];
        double* nxt = &alpha[(t + 1) * ns];
        for (int s = 0; s < ns; ++s) {
            if (cur[s] <= kNegInf) continue;
            for (int d = 0; d < 2; ++d) {
                const int s2 = tr.next_state[2 * s + d];
                const double v = cur[s] + gamma(t, s, d);
                nxt[s2] = nxt[s2] <= kNegInf ? v : max_star(nxt[s2], v);
            }
        }
        const double m = *std::max_element(nxt, nxt + ns);
        for (int s = 0; s < ns; ++s) {
            if (nxt[s] > kNegInf) nxt[s] -= m;
        }
    }

    // No termination: final beta is uniform.
    std::vector<double> beta((len + 1) * ns, 0.0);
    for (std::size_t t = len; t-- > 0;) {
        double* cur = &beta[t * ns];
        const double* nxt = &beta[(t + 1) * ns];
        double m = kNegInf;
        for (int s = 0; s < ns; ++s) {
            double acc = kNegInf;
            for (int d = 0; d < 2; ++d) {
                const double v = gamma(t, s, d) + nxt[tr.next_state[2 * s + d]];
                acc = acc <= kNegInf ? v : max_star(acc, v);
            }
            cur[s] = acc;
            m = std::max(m, acc);
        }
        for (int s = 0; s < ns; ++s) cur[s] -= m;
    }

    BcjrResult res;
    res.extrinsic.resize(len);
    res.aposteriori.resize(len);
    for (std::size_t t = 0; t < len; ++t) {
        double num = kNegInf;
        double den = kNegInf;
        const double* a = &alpha[t * ns];
        const double* b = &beta[(t + 1) * ns];
        for (int s = 0; s < ns; ++s) {
            if (a[s] <= kNegInf) continue;
            for (int d = 0; d < 2; ++d) {
                const double v = a[s] + gamma(t, s, d) + b[tr.next_state[2 * s + d]];
                double& acc = d == 0 ? num : den;
                acc = acc <= kNegInf ? v : max_star(acc, v);
            }
        }
        res.aposteriori[t] = num - den;
        res.extrinsic[t] = res.aposteriori[t] - sys[t] - apr[t];
    }
    return res;
}

struct SegmentedLlrs {
    LlrVector sys1, par1, sys2, par2;
};

SegmentedLlrs split_channel_llrs(const std::vector<LlrPair>& llrs, std::size_t data_len) {
    if (llrs.size() != 2 * data_len) {
        throw std::invalid_argument("turbo_decode: LLR count must equal 2*data_length");
    }
    SegmentedLlrs seg;
    seg.sys1.resize(data_len);
    seg.par1.resize(data_len);
    seg.sys2.resize(data_len);
    seg.par2.resize(data_len);
    for (std::size_t t = 0; t < data_len; ++t) {
        seg.sys1[t] = llrs[t].in_phase;
        seg.par1[t] = llrs[t].quadrature;
        seg.sys2[t] = llrs[data_len + t].in_phase;
        seg.par2[t] = llrs[data_len + t].quadrature;
    }
    return seg;
}

}  // namespace

std::size_t TurboSpec::data_length_for(std::size_t n_r) {
    if (n_r == 0) {
        throw std::invalid_argument("data_length_for: n_r must be >= 1");
    }
    return n_r * (1000 / n_r + 1);
}

InterleaverPerm::InterleaverPerm(std::size_t length, std::uint64_t seed) : seed_(seed) {
    if (length == 0) {
        throw std::invalid_argument("InterleaverPerm: length must be >= 1");
    }
    forward_.resize(length);
    for (std::size_t i = 0; i < length; ++i) forward_[i] = static_cast<std::uint32_t>(i);
    RngStream rng(seed, StreamId{0, StreamId::kAuxiliary, 0});
    for (std::size_t i = length - 1; i > 0; --i) {
        // Unbiased index in [0, i] by rejection.
        const std::uint64_t bound = i + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do {
            r = rng.next_u64();
        } while (r >= limit);
        std::swap(forward_[i], forward_[r % bound]);
    }
    inverse_.resize(length);
    for (std::size_t j = 0; j < length; ++j) inverse_[forward_[j]] = static_cast<std::uint32_t>(j);
}

std::vector<std::uint8_t> rsc_encode(const std::vector<std::uint8_t>& data,
                                     const TurboSpec& spec) {
    if (data.size() != spec.data_length) {
        throw std::invalid_argument("rsc_encode: data length does not match spec.data_length");
    }
    return rsc_parity(data, Trellis(spec));
}

std::vector<BitPair> turbo_encode(const std::vector<std::uint8_t>& data, const TurboSpec& spec,
                                  const InterleaverPerm& perm) {
    const std::size_t n = spec.data_length;
    if (data.size() != n) {
        throw std::invalid_argument("turbo_encode: data length does not match spec.data_length");
    }
    if (perm.size() != n) {
        throw std::invalid_argument("turbo_encode: interleaver length does not match data length");
    }
    const Trellis tr(spec);
    std::vector<std::uint8_t> interleaved(n);
    for (std::size_t j = 0; j < n; ++j) interleaved[j] = data[perm.forward(j)];
    const auto parity1 = rsc_parity(data, tr);
    const auto parity2 = rsc_parity(interleaved, tr);

    std::vector<BitPair> out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = BitPair{data[i], parity1[i]};
        out[n + i] = BitPair{interleaved[i], parity2[i]};
    }
    return out;
}

BcjrResult bcjr_decode(const LlrVector& sys_llr, const LlrVector& par_llr,
                       const LlrVector& apriori, const TurboSpec& spec) {
    return bcjr_with_trellis(sys_llr, par_llr, apriori, Trellis(spec));
}

std::vector<std::vector<std::uint8_t>> turbo_decode_iterations(const std::vector<LlrPair>& llrs,
                                                               const TurboSpec& spec,
                                                               const InterleaverPerm& perm) {
    const std::size_t n = spec.data_length;
    if (perm.size() != n) {
        throw std::invalid_argument("turbo_decode: interleaver length does not match data length");
    }
    const Trellis tr(spec);
    const SegmentedLlrs seg = split_channel_llrs(llrs, n);

    // The permuted systematic copy rides on the second segment, so each
    // decoder's a priori input carries the other segment's systematic
    // observation along with the exchanged extrinsic.
    LlrVector apriori1(n), apriori2(n), ext2(n, 0.0);
    std::vector<std::vector<std::uint8_t>> per_iteration;
    per_iteration.reserve(static_cast<std::size_t>(spec.num_iterations));
    for (int it = 0; it < spec.num_iterations; ++it) {
        for (std::size_t j = 0; j < n; ++j) {
            apriori1[perm.forward(j)] = seg.sys2[j] + ext2[j];
        }
        const BcjrResult dec1 = bcjr_with_trellis(seg.sys1, seg.par1, apriori1, tr);
        for (std::size_t j = 0; j < n; ++j) {
            const std::uint32_t i = perm.forward(j);
            apriori2[j] = seg.sys1[i] + dec1.extrinsic[i];
        }
        const BcjrResult dec2 = bcjr_with_trellis(seg.sys2, seg.par2, apriori2, tr);
        ext2 = dec2.extrinsic;

        std::vector<std::uint8_t> decisions(n);
        for (std::size_t j = 0; j < n; ++j) {
            decisions[perm.forward(j)] = dec2.aposteriori[j] >= 0.0 ? 0 : 1;
        }
        per_iteration.push_back(std::move(decisions));
    }
    return per_iteration;
}

std::vector<std::uint8_t> turbo_decode(const std::vector<LlrPair>& llrs, const TurboSpec& spec,
                                       const InterleaverPerm& perm) {
    auto all = turbo_decode_iterations(llrs, spec, perm);
    if (all.empty()) {
        throw std::invalid_argument("turbo_decode: num_iterations must be >= 1");
    }
    return std::move(all.back());
}

}  // namespace mimosim
