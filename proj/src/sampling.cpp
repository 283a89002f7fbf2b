#include "framekit/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace framekit {

Frame random_gaussian_frame(std::size_t dim, std::size_t m, SplitMix64& rng) {
    Frame f(dim, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            f.synthesis.at(k, i) = rng.next_gaussian();
        }
    }
    return f;
}

Frame random_parseval_frame(std::size_t dim, std::size_t m, SplitMix64& rng) {
    if (m < dim) {
        throw std::invalid_argument("random_parseval_frame: need at least dim vectors");
    }
    return parseval_normalize(random_gaussian_frame(dim, m, rng));
}

std::vector<cx> random_unit_window(std::size_t length, SplitMix64& rng) {
    std::vector<cx> g(length);
    double nsq = 0.0;
    for (std::size_t t = 0; t < length; ++t) {
        g[t] = rng.next_gaussian();
        nsq += std::norm(g[t]);
    }
    const double scale = 1.0 / std::sqrt(nsq);
    for (auto& v : g) v *= scale;
    return g;
}

} // namespace framekit
