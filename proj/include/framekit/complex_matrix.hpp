#ifndef FRAMEKIT_COMPLEX_MATRIX_HPP
#define FRAMEKIT_COMPLEX_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace framekit {

using cx = std::complex<double>;

/// Dense row-major complex matrix. Sizes are fixed at construction; entries
/// are expected to stay finite (validate_finite() is called at I/O boundaries,
/// not in inner loops).
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cx(0.0, 0.0)) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = cx(1.0, 0.0);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cx& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cx& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cx>& data() const { return data_; }
    std::vector<cx>& data() { return data_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r.at(j, i) = std::conj(at(i, j));
        return r;
    }

    ComplexMatrix operator*(const ComplexMatrix& b) const {
        if (cols_ != b.rows_)
            throw std::invalid_argument("ComplexMatrix: size mismatch in product");
        ComplexMatrix r(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const cx a = at(i, k);
                if (a == cx(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) += a * b.at(k, j);
            }
        }
        return r;
    }

    ComplexMatrix operator+(const ComplexMatrix& b) const {
        check_same_shape(b, "sum");
        ComplexMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + b.data_[i];
        return r;
    }

    ComplexMatrix operator-(const ComplexMatrix& b) const {
        check_same_shape(b, "difference");
        ComplexMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - b.data_[i];
        return r;
    }

    ComplexMatrix scaled(cx factor) const {
        ComplexMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * factor;
        return r;
    }

    std::vector<cx> column(std::size_t j) const {
        std::vector<cx> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    void set_column(std::size_t j, const std::vector<cx>& v) {
        if (v.size() != rows_)
            throw std::invalid_argument("ComplexMatrix: column length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cx& z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cx& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    /// Max entrywise deviation from the conjugate transpose. Infinity for
    /// non-square input.
    double hermitian_defect() const {
        if (rows_ != cols_) return std::numeric_limits<double>::infinity();
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
        return m;
    }

    void validate_finite() const {
        for (const cx& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }

private:
    void check_same_shape(const ComplexMatrix& b, const char* what) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument(std::string("ComplexMatrix: size mismatch in ") + what);
    }

    std::size_t rows_, cols_;
    std::vector<cx> data_;
};

/// Inner product, linear in the first argument: sum_k x_k * conj(y_k).
inline cx inner_product(const std::vector<cx>& x, const std::vector<cx>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("inner_product: length mismatch");
    cx s(0.0, 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
    return s;
}

inline double norm_sq(const std::vector<cx>& x) {
    double s = 0.0;
    for (const cx& z : x) s += std::norm(z);
    return s;
}

} // namespace framekit

#endif
