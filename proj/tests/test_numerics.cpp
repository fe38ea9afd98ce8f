#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mimosim/complex_matrix.hpp"
#include "mimosim/rng.hpp"

using namespace mimosim;

namespace {

RngStream make_stream(std::uint64_t seed, std::uint32_t frame = 0, std::uint8_t k = 0,
                      std::uint32_t block = 0) {
    return RngStream(seed, StreamId{frame, k, block});
}

}  // namespace

TEST_CASE("philox known-answer vector, zero key and counter") {
    // Reference output of Philox4x32-10 for ctr = key = 0; the stream hands
    // the four lanes out in reverse buffer order.
    RngStream rng = make_stream(0);
    CHECK(rng.next_u32() == 0x9b00dbd8u);
    CHECK(rng.next_u32() == 0xbc57ac4cu);
    CHECK(rng.next_u32() == 0xe169c58du);
    CHECK(rng.next_u32() == 0x6627e8d5u);
}

TEST_CASE("stream reproducibility and independence") {
    RngStream a = make_stream(42, 7, 1, 3);
    RngStream b = make_stream(42, 7, 1, 3);
    for (int i = 0; i < 64; ++i) {
        CHECK(a.next_u32() == b.next_u32());
    }

    RngStream c = make_stream(42, 7, 1, 4);
    RngStream d = make_stream(42, 7, 2, 3);
    RngStream e = make_stream(43, 7, 1, 3);
    RngStream base = make_stream(42, 7, 1, 3);
    int same_c = 0, same_d = 0, same_e = 0;
    for (int i = 0; i < 64; ++i) {
        const std::uint32_t r = base.next_u32();
        same_c += r == c.next_u32();
        same_d += r == d.next_u32();
        same_e += r == e.next_u32();
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
    CHECK(same_e == 0);
}

TEST_CASE("uniform stays inside the open unit interval") {
    RngStream rng = make_stream(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("cscg sampling: zero variance gives the zero matrix") {
    RngStream rng = make_stream(5);
    const ComplexMatrix m = sample_cscg_matrix(2, 2, 0.0, rng);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(m(i, j) == cplx{0.0, 0.0});
        }
    }
}

TEST_CASE("cscg sampling rejects empty dimensions") {
    RngStream rng = make_stream(5);
    CHECK_THROWS_AS(sample_cscg_matrix(0, 2, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_cscg_matrix(2, 0, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS((ComplexMatrix{0, 3}), std::invalid_argument);
}

TEST_CASE("cscg sample statistics match the channel model") {
    // 10^6 entries at sigma_per_dim = 1/sqrt(2): per-dimension mean 0 within
    // 3 standard errors, E|h|^2 = 2 sigma^2 = 1 within 1%.
    const std::size_t n = 1000;  // n x n = 10^6 entries
    const double sigma = 0.7071067811865476;
    RngStream rng = make_stream(2024);
    const ComplexMatrix m = sample_cscg_matrix(n, n, sigma, rng);

    double sum_re = 0.0, sum_im = 0.0, sum_sq = 0.0;
    for (const cplx& v : m.entries()) {
        sum_re += v.real();
        sum_im += v.imag();
        sum_sq += std::norm(v);
    }
    const double count = static_cast<double>(n * n);
    const double se = sigma / std::sqrt(count);
    CHECK(std::abs(sum_re / count) < 3.0 * se);
    CHECK(std::abs(sum_im / count) < 3.0 * se);
    CHECK(sum_sq / count == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("fourth moment of a real gaussian is 3 sigma^4") {
    const std::size_t n = 1000000;
    const double sigma_sq = 0.5;
    const double sigma = std::sqrt(sigma_sq);
    RngStream rng = make_stream(77);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = sigma * rng.gaussian();
        const double x4 = x * x * x * x;
        sum += x4;
        sum_sq += x4 * x4;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    const double se = std::sqrt(var / n);
    const double expected = 3.0 * sigma_sq * sigma_sq;
    CHECK(std::abs(mean - expected) < 3.0 * se);
}

TEST_CASE("hermitian transpose is an involution") {
    RngStream rng = make_stream(9);
    const ComplexMatrix h = sample_cscg_matrix(4, 3, 1.0, rng);
    const ComplexMatrix back = h.hermitian().hermitian();
    REQUIRE(back.rows() == h.rows());
    REQUIRE(back.cols() == h.cols());
    for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = 0; j < h.cols(); ++j) {
            CHECK(back(i, j) == h(i, j));  // exact, conjugation twice is identity
        }
    }
}

TEST_CASE("hermitian product: scalar and identity cases") {
    ComplexMatrix scalar(1, 1, {cplx{3.0, -4.0}});
    const ComplexMatrix g = hermitian_product(scalar);
    CHECK(g(0, 0).real() == doctest::Approx(25.0));
    CHECK(g(0, 0).imag() == 0.0);

    const ComplexMatrix eye = ComplexMatrix::identity(2);
    const ComplexMatrix gi = hermitian_product(eye);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(gi(i, j) == (i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
        }
    }
}

TEST_CASE("hermitian product matches the brute-force double loop") {
    RngStream rng = make_stream(11);
    const ComplexMatrix h = sample_cscg_matrix(3, 2, 1.0, rng);
    const ComplexMatrix g = hermitian_product(h);
    REQUIRE(g.rows() == 3);
    REQUIRE(g.cols() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            cplx ref{0.0, 0.0};
            for (std::size_t l = 0; l < 2; ++l) {
                ref += h(i, l) * std::conj(h(j, l));
            }
            CHECK(std::abs(g(i, j) - ref) < 1e-12);
        }
    }
}

TEST_CASE("hermitian product is hermitian with real diagonal") {
    RngStream rng = make_stream(13);
    const ComplexMatrix h = sample_cscg_matrix(5, 4, 0.9, rng);
    const ComplexMatrix g = hermitian_product(h);
    for (std::size_t i = 0; i < g.rows(); ++i) {
        CHECK(g(i, i).imag() == 0.0);
        CHECK(g(i, i).real() >= 0.0);
        // Diagonal equals the row power sum computed independently.
        double row_power = 0.0;
        for (std::size_t l = 0; l < h.cols(); ++l) row_power += std::norm(h(i, l));
        CHECK(g(i, i).real() == doctest::Approx(row_power).epsilon(1e-14));
        for (std::size_t j = 0; j < g.cols(); ++j) {
            CHECK(g(i, j) == std::conj(g(j, i)));
        }
    }
}
