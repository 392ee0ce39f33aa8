#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "semilab/errors.hpp"

namespace semilab::numeric {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

/// Dense complex matrix, row-major storage. Entries are validated to be
/// finite when the matrix is built from user-supplied data.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, cvec entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const cvec& d);
    static ComplexMatrix diagonal(const rvec& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cvec& data() { return data_; }
    const cvec& data() const { return data_; }

    const cplx* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }
    cplx* row_ptr(std::size_t i) { return data_.data() + i * cols_; }

    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    cvec data_;
};

} // namespace semilab::numeric
