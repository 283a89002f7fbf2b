#ifndef FRAMEKIT_SAMPLING_HPP
#define FRAMEKIT_SAMPLING_HPP

#include <cstddef>
#include <vector>

#include "framekit/frame.hpp"
#include "framekit/rng.hpp"

namespace framekit {

/// dim x m matrix of standard complex Gaussians drawn column by column
/// (column-major order is part of the reproducibility contract).
Frame random_gaussian_frame(std::size_t dim, std::size_t m, SplitMix64& rng);

/// Parseval-normalized Gaussian frame; m >= dim required.
Frame random_parseval_frame(std::size_t dim, std::size_t m, SplitMix64& rng);

/// Unit-norm complex Gaussian vector.
std::vector<cx> random_unit_window(std::size_t length, SplitMix64& rng);

} // namespace framekit

#endif
