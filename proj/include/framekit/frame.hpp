#ifndef FRAMEKIT_FRAME_HPP
#define FRAMEKIT_FRAME_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "framekit/complex_matrix.hpp"
#include "framekit/linalg.hpp"

namespace framekit {

/// Finite indexed vector family in C^dim. The synthesis matrix holds the
/// vectors as columns (dim x size). Labels identify vectors for reporting and
/// for localization maps; they default to 0..M-1 and must stay distinct.
struct Frame {
    std::size_t dim = 0;
    ComplexMatrix synthesis; // dim x M
    std::vector<long long> labels;

    Frame() = default;
    Frame(std::size_t n, std::size_t m)
        : dim(n), synthesis(n, m), labels(m) {
        for (std::size_t i = 0; i < m; ++i) labels[i] = static_cast<long long>(i);
    }

    std::size_t size() const { return synthesis.cols(); }
    std::vector<cx> vector(std::size_t i) const { return synthesis.column(i); }

    void validate() const;
};

struct FrameBounds {
    double lower = 0.0; // 0 signals "not a frame"
    double upper = 0.0;
};

struct DualPair {
    Frame frame;
    Frame dual;
    std::vector<double> diagonal; // <f_i, dual_i>, real nonnegative
};

struct RedundancyRow {
    std::size_t window_size = 0;
    double average = 0.0;    // mean of <f_i, dual_i> over the window
    double redundancy = 0.0; // 1 / average
};

struct RedundancyProfile {
    std::vector<RedundancyRow> rows;
    double redundancy_lo = 0.0; // min over the window sequence
    double redundancy_hi = 0.0; // max over the window sequence
};

struct SandwichResult {
    FrameBounds full;        // bounds of F
    FrameBounds normalized;  // bounds of the Parseval-normalized subfamily
    FrameBounds predicted;   // (A*A', B*B')
    FrameBounds computed;    // bounds of F restricted to J
    double lower_slack = 0.0; // computed.lower - predicted.lower
    double upper_slack = 0.0; // predicted.upper - computed.upper
};

/// S = sum_i f_i f_i*.
ComplexMatrix frame_operator(const Frame& f);

/// (lambda_min, lambda_max) of the frame operator, tiny negatives clamped to 0.
FrameBounds frame_bounds(const Frame& f);

bool is_parseval(const Frame& f, double tol = 1e-8);

/// Canonical dual S^{-1} f_i together with the diagonal <f_i, S^{-1} f_i>.
/// Requires a spanning family (lower bound above the rank cutoff).
DualPair canonical_dual(const Frame& f);

/// S^{-1/2} f_i; the result is Parseval. Requires a spanning family.
Frame parseval_normalize(const Frame& f);

/// Column subset in index order (indices must be strictly increasing and in
/// range). Labels follow their vectors.
Frame subframe(const Frame& f, const std::vector<std::size_t>& indices);

/// Naimark complement of a Parseval frame: with T the M x N analysis isometry
/// and T' its orthonormal completion, the complement vectors are the rows of
/// T' conjugated, an (M-N)-dimensional Parseval frame on the same labels.
/// Cross-Gram identity: Gram(complement) = I - Gram(F). For M = N the result
/// has dimension 0 (M empty vectors), not an error.
Frame naimark_complement(const Frame& f);

/// Per-window averages of the dual diagonal over a nested window sequence,
/// with min/max of the finite redundancy sequence standing in for
/// liminf/limsup. The trace identity sum_i <f_i, dual_i> = dim makes the
/// full-window redundancy equal to M/N.
RedundancyProfile redundancy_profile(const Frame& f,
                                     const std::vector<std::vector<std::size_t>>& windows);

/// Transported subframe bounds: if (A, B) are bounds of F and (A', B') bounds
/// of the Parseval-normalized family restricted to J, then F restricted to J
/// has bounds within [A*A', B*B'].
SandwichResult subframe_bounds_sandwich(const Frame& f, const std::vector<std::size_t>& j);

} // namespace framekit

#endif
