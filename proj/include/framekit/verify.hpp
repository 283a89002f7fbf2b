#ifndef FRAMEKIT_VERIFY_HPP
#define FRAMEKIT_VERIFY_HPP

#include <cstdint>
#include <string>

#include "framekit/io.hpp"

namespace framekit {

struct VerifySummary {
    std::string suite;
    std::size_t passed = 0;
    std::size_t failed = 0;
    Report report;

    bool ok() const { return failed == 0 && passed > 0; }
};

/// Orthonormal completion of Parseval frames: the completed family is
/// Parseval, Gram matrices of the pair sum to the identity, and coefficient
/// energy splits across the two synthesis maps. 100 random frames.
VerifySummary verify_naimark(std::uint64_t seed);

/// Truncation of localized frames over cyclic index groups: the partial
/// frame operator of any subfamily moves by at most the tail-sum budget when
/// every vector is clipped to a ball around its index, and the analysis-map
/// gap obeys the row/column-sum bound. 50 random configurations.
VerifySummary verify_truncation(std::uint64_t seed);

/// Subframe bound transport: bounds of a subfamily of the Parseval
/// normalization, scaled by the outer bounds, never overstate the bounds of
/// the corresponding raw subfamily. 100 random frame/subset pairs.
VerifySummary verify_sandwich(std::uint64_t seed);

/// Index density bookkeeping: sup/inf ratio tables, window membership,
/// additivity of window counts under disjoint unions, and two pinned
/// reference sets with known limiting ratios.
VerifySummary verify_densities(std::uint64_t seed);

/// Full time-frequency grids are tight: the frame operator equals
/// L * ||g||^2 times the identity for every window. Gaussian plus five
/// random windows per length in {8, 12, 16}.
VerifySummary verify_gabor_tight(std::uint64_t seed);

/// Dispatch by suite name: naimark | truncation | sandwich | densities |
/// gabor-tight. Unknown names throw.
VerifySummary run_verify_suite(const std::string& name, std::uint64_t seed);

} // namespace framekit

#endif
