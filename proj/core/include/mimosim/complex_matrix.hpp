#ifndef MIMOSIM_COMPLEX_MATRIX_HPP
#define MIMOSIM_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace mimosim {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Dense row-major complex matrix. Just enough linear algebra for the
/// conjugate-transpose precoder; no solvers, no decompositions.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, CVec entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }

    const CVec& entries() const noexcept { return data_; }

    /// Conjugate transpose.
    ComplexMatrix hermitian() const;

    static ComplexMatrix identity(std::size_t n);

private:
    std::size_t rows_;
    std::size_t cols_;
    CVec data_;
};

/// Gram product H H^H of an N_r x N_t matrix; the result is N_r x N_r,
/// Hermitian with a real nonnegative diagonal.
ComplexMatrix hermitian_product(const ComplexMatrix& h);

}  // namespace mimosim

#endif
