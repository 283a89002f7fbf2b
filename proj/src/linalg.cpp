#include "framekit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace framekit {

namespace {

double off_diagonal_mass(const ComplexMatrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (i != j) s += std::norm(b.at(i, j));
    return std::sqrt(s);
}

ComplexMatrix symmetrized(const ComplexMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("hermitian_eig: matrix not square");
    const double scale = std::max(a.frobenius_norm(), 1e-300);
    ComplexMatrix h = a;
    double defect = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cx sym = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
            defect = std::max(defect, std::abs(a.at(i, j) - sym));
            h.at(i, j) = sym;
        }
    }
    if (defect > kHermTol * scale)
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian within tolerance");
    return h;
}

// One Jacobi rotation zeroing B(p,q). The 2x2 block is phase-reduced to a
// real symmetric block by D = diag(1, conj(u)) with u = B(p,q)/|B(p,q)|,
// then rotated with the classic small-angle tangent choice, which keeps
// |theta| <= pi/4 and guarantees cyclic convergence. The combined unitary is
// U2 = D J with J = [[c, s], [-s, c]]; updates below apply B <- U2* B U2 and
// accumulate V <- V U2.
void rotate(ComplexMatrix& b, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cx bpq = b.at(p, q);
    const double beta = std::abs(bpq);
    if (beta == 0.0) return;
    const cx u = bpq / beta;
    const double app = b.at(p, p).real();
    const double aqq = b.at(q, q).real();
    const double tau = (aqq - app) / (2.0 * beta);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const cx us = u * s;
    const cx uc = u * c;
    const cx cus = std::conj(u) * s;
    const cx cuc = std::conj(u) * c;

    const std::size_t n = b.rows();
    for (std::size_t j = 0; j < n; ++j) { // B <- U2* B
        const cx bp = b.at(p, j);
        const cx bq = b.at(q, j);
        b.at(p, j) = c * bp - us * bq;
        b.at(q, j) = s * bp + uc * bq;
    }
    for (std::size_t i = 0; i < n; ++i) { // B <- B U2, V <- V U2
        const cx bp = b.at(i, p);
        const cx bq = b.at(i, q);
        b.at(i, p) = c * bp - cus * bq;
        b.at(i, q) = s * bp + cuc * bq;
        const cx vp = v.at(i, p);
        const cx vq = v.at(i, q);
        v.at(i, p) = c * vp - cus * vq;
        v.at(i, q) = s * vp + cuc * vq;
    }
    b.at(p, q) = cx(0.0, 0.0);
    b.at(q, p) = cx(0.0, 0.0);
}

void fix_phase(ComplexMatrix& vectors, std::size_t col) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < vectors.rows(); ++i) {
        const double m = std::abs(vectors.at(i, col));
        if (m > best + 1e-15) {
            best = m;
            arg = i;
        }
    }
    if (best <= 0.0) return;
    const cx z = vectors.at(arg, col);
    const cx phase = z / std::abs(z);
    for (std::size_t i = 0; i < vectors.rows(); ++i)
        vectors.at(i, col) *= std::conj(phase);
    vectors.at(arg, col) = cx(std::abs(vectors.at(arg, col)), 0.0);
}

} // namespace

Spectrum hermitian_eig(const ComplexMatrix& a) {
    ComplexMatrix b = symmetrized(a);
    const std::size_t n = b.rows();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = b.frobenius_norm();

    if (n > 1 && scale > 0.0) {
        for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
            if (off_diagonal_mass(b) <= kEigTol * scale) break;
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q)
                    rotate(b, v, p, q);
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return b.at(i, i).real() < b.at(j, j).real();
    });

    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = b.at(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i)
            out.eigenvectors.at(i, j) = v.at(i, order[j]);
        fix_phase(out.eigenvectors, j);
    }
    return out;
}

ComplexMatrix spectral_function(const ComplexMatrix& a, double p) {
    if (p != -1.0 && p != -0.5 && p != 0.5)
        throw std::invalid_argument("spectral_function: power must be -1, -1/2 or 1/2");
    Spectrum sp = hermitian_eig(a);
    const std::size_t n = sp.eigenvalues.size();
    double lmax = 0.0;
    for (double l : sp.eigenvalues) lmax = std::max(lmax, l);
    const double cutoff = kRankTol * lmax;

    std::vector<double> powered(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double l = sp.eigenvalues[i];
        if (l < -cutoff - 1e-300)
            throw std::invalid_argument("spectral_function: matrix not positive semidefinite");
        if (l <= cutoff) {
            if (p < 0.0)
                throw std::invalid_argument(
                    "spectral_function: negative power of a rank-deficient matrix");
            powered[i] = 0.0;
        } else {
            powered[i] = std::pow(l, p);
        }
    }

    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cx s(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k)
                s += sp.eigenvectors.at(i, k) * powered[k] * std::conj(sp.eigenvectors.at(j, k));
            r.at(i, j) = s;
        }
    return r;
}

double operator_norm(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const ComplexMatrix gram = a.adjoint() * a;
    Spectrum sp = hermitian_eig(gram);
    const double top = sp.eigenvalues.empty() ? 0.0 : sp.eigenvalues.back();
    return std::sqrt(std::max(top, 0.0));
}

double schur_norm_bound(const ComplexMatrix& a) {
    double max_row = 0.0, max_col = 0.0;
    std::vector<double> col_sums(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double m = std::abs(a.at(i, j));
            row += m;
            col_sums[j] += m;
        }
        max_row = std::max(max_row, row);
    }
    for (double c : col_sums) max_col = std::max(max_col, c);
    return std::max(max_row, max_col);
}

ComplexMatrix orthonormal_complement_basis(const ComplexMatrix& t) {
    const std::size_t m = t.rows();
    const std::size_t n = t.cols();
    if (n > m)
        throw std::invalid_argument("orthonormal_complement_basis: more columns than rows");
    {
        const ComplexMatrix gram = t.adjoint() * t;
        double defect = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const cx want = (i == j) ? cx(1.0, 0.0) : cx(0.0, 0.0);
                defect = std::max(defect, std::abs(gram.at(i, j) - want));
            }
        if (defect > 1e-8)
            throw std::invalid_argument("orthonormal_complement_basis: input is not an isometry");
    }

    // columns of the running orthonormal system: t's columns, then accepted
    // canonical vectors
    std::vector<std::vector<cx>> basis;
    basis.reserve(m);
    for (std::size_t j = 0; j < n; ++j) basis.push_back(t.column(j));

    ComplexMatrix out(m, m - n);
    std::size_t produced = 0;
    for (std::size_t k = 0; k < m && produced < m - n; ++k) {
        std::vector<cx> v(m, cx(0.0, 0.0));
        v[k] = cx(1.0, 0.0);
        // two Gram-Schmidt passes for numerical stability
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                const cx coeff = inner_product(v, b);
                for (std::size_t i = 0; i < m; ++i) v[i] -= coeff * b[i];
            }
        }
        const double r = std::sqrt(norm_sq(v));
        if (r <= kRankTol) continue; // canonical vector already in span
        for (std::size_t i = 0; i < m; ++i) v[i] /= r;
        out.set_column(produced, v);
        basis.push_back(std::move(v));
        ++produced;
    }
    if (produced != m - n)
        throw std::runtime_error("orthonormal_complement_basis: completion failed");
    return out;
}

double lambda_min(const ComplexMatrix& a) {
    Spectrum sp = hermitian_eig(a);
    return sp.eigenvalues.empty() ? 0.0 : sp.eigenvalues.front();
}

double lambda_max(const ComplexMatrix& a) {
    Spectrum sp = hermitian_eig(a);
    return sp.eigenvalues.empty() ? 0.0 : sp.eigenvalues.back();
}

} // namespace framekit
