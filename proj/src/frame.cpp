#include "framekit/frame.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace framekit {

void Frame::validate() const {
    if (synthesis.rows() != dim)
        throw std::invalid_argument("Frame: synthesis row count != dim");
    if (labels.size() != synthesis.cols())
        throw std::invalid_argument("Frame: label count != vector count");
    std::unordered_set<long long> seen;
    for (long long l : labels)
        if (!seen.insert(l).second)
            throw std::invalid_argument("Frame: duplicate label");
    synthesis.validate_finite();
}

ComplexMatrix frame_operator(const Frame& f) {
    const std::size_t n = f.dim;
    const std::size_t m = f.size();
    ComplexMatrix s(n, n);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const cx fi = f.synthesis.at(i, k);
            if (fi == cx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j)
                s.at(i, j) += fi * std::conj(f.synthesis.at(j, k));
        }
    }
    return s;
}

FrameBounds frame_bounds(const Frame& f) {
    if (f.dim == 0) return {0.0, 0.0};
    Spectrum sp = hermitian_eig(frame_operator(f));
    FrameBounds b;
    b.lower = std::max(sp.eigenvalues.front(), 0.0);
    b.upper = std::max(sp.eigenvalues.back(), 0.0);
    return b;
}

bool is_parseval(const Frame& f, double tol) {
    const ComplexMatrix s = frame_operator(f);
    double defect = 0.0;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) {
            const cx want = (i == j) ? cx(1.0, 0.0) : cx(0.0, 0.0);
            defect = std::max(defect, std::abs(s.at(i, j) - want));
        }
    return defect <= tol;
}

DualPair canonical_dual(const Frame& f) {
    const ComplexMatrix s = frame_operator(f);
    const ComplexMatrix sinv = spectral_function(s, -1.0); // throws if not spanning
    DualPair d;
    d.frame = f;
    d.dual = f;
    d.dual.synthesis = sinv * f.synthesis;
    d.diagonal.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        cx v(0.0, 0.0);
        for (std::size_t k = 0; k < f.dim; ++k)
            v += f.synthesis.at(k, i) * std::conj(d.dual.synthesis.at(k, i));
        d.diagonal[i] = v.real(); // <f_i, S^-1 f_i> is real nonnegative
    }
    return d;
}

Frame parseval_normalize(const Frame& f) {
    const ComplexMatrix s = frame_operator(f);
    const ComplexMatrix root = spectral_function(s, -0.5);
    Frame g = f;
    g.synthesis = root * f.synthesis;
    return g;
}

Frame subframe(const Frame& f, const std::vector<std::size_t>& indices) {
    for (std::size_t t = 0; t < indices.size(); ++t) {
        if (indices[t] >= f.size())
            throw std::invalid_argument("subframe: index out of range");
        if (t > 0 && indices[t] <= indices[t - 1])
            throw std::invalid_argument("subframe: indices must be strictly increasing");
    }
    Frame g(f.dim, indices.size());
    for (std::size_t t = 0; t < indices.size(); ++t) {
        g.synthesis.set_column(t, f.synthesis.column(indices[t]));
        g.labels[t] = f.labels[indices[t]];
    }
    return g;
}

Frame naimark_complement(const Frame& f) {
    if (!is_parseval(f))
        throw std::invalid_argument("naimark_complement: input is not Parseval");
    const std::size_t m = f.size();
    const std::size_t n = f.dim;
    const ComplexMatrix analysis = f.synthesis.adjoint(); // M x N isometry
    const ComplexMatrix comp = orthonormal_complement_basis(analysis); // M x (M-N)
    Frame g;
    g.dim = m - n;
    g.synthesis = comp.adjoint(); // (M-N) x M
    g.labels = f.labels;
    return g;
}

RedundancyProfile redundancy_profile(const Frame& f,
                                     const std::vector<std::vector<std::size_t>>& windows) {
    if (windows.empty())
        throw std::invalid_argument("redundancy_profile: empty window sequence");
    for (std::size_t w = 0; w < windows.size(); ++w) {
        if (windows[w].empty())
            throw std::invalid_argument("redundancy_profile: empty window");
        for (std::size_t t = 0; t < windows[w].size(); ++t) {
            if (windows[w][t] >= f.size())
                throw std::invalid_argument("redundancy_profile: window index out of range");
            if (t > 0 && windows[w][t] <= windows[w][t - 1])
                throw std::invalid_argument("redundancy_profile: window not sorted");
        }
        if (w > 0 && !std::includes(windows[w].begin(), windows[w].end(),
                                    windows[w - 1].begin(), windows[w - 1].end()))
            throw std::invalid_argument("redundancy_profile: windows not nested");
    }

    const DualPair d = canonical_dual(f);
    RedundancyProfile p;
    for (const auto& w : windows) {
        RedundancyRow row;
        row.window_size = w.size();
        double s = 0.0;
        for (std::size_t i : w) s += d.diagonal[i];
        row.average = s / static_cast<double>(w.size());
        row.redundancy = 1.0 / row.average;
        p.rows.push_back(row);
    }
    p.redundancy_lo = p.rows.front().redundancy;
    p.redundancy_hi = p.rows.front().redundancy;
    for (const auto& row : p.rows) {
        p.redundancy_lo = std::min(p.redundancy_lo, row.redundancy);
        p.redundancy_hi = std::max(p.redundancy_hi, row.redundancy);
    }
    return p;
}

SandwichResult subframe_bounds_sandwich(const Frame& f, const std::vector<std::size_t>& j) {
    SandwichResult r;
    r.full = frame_bounds(f);
    const Frame normalized = parseval_normalize(f);
    r.normalized = frame_bounds(subframe(normalized, j));
    r.predicted.lower = r.full.lower * r.normalized.lower;
    r.predicted.upper = r.full.upper * r.normalized.upper;
    r.computed = frame_bounds(subframe(f, j));
    r.lower_slack = r.computed.lower - r.predicted.lower;
    r.upper_slack = r.predicted.upper - r.computed.upper;
    return r;
}

} // namespace framekit
