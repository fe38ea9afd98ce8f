#include "mimosim/complex_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace mimosim {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("ComplexMatrix: dimensions must be >= 1");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, CVec entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("ComplexMatrix: dimensions must be >= 1");
    }
    if (data_.size() != rows * cols) {
        throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
    }
}

ComplexMatrix ComplexMatrix::hermitian() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = cplx{1.0, 0.0};
    }
    return out;
}

ComplexMatrix hermitian_product(const ComplexMatrix& h) {
    const std::size_t n = h.rows();
    const std::size_t m = h.cols();
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        // Diagonal is real: sum of |H(i,l)|^2.
        double diag = 0.0;
        for (std::size_t l = 0; l < m; ++l) {
            diag += std::norm(h(i, l));
        }
        g(i, i) = cplx{diag, 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            cplx acc{0.0, 0.0};
            for (std::size_t l = 0; l < m; ++l) {
                acc += h(i, l) * std::conj(h(j, l));
            }
            g(i, j) = acc;
            g(j, i) = std::conj(acc);
        }
    }
    return g;
}

}  // namespace mimosim
