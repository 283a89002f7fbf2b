#include "framekit/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace framekit {

namespace {

constexpr double kPi = 3.14159265358979323846;

int wrap(int v, int modulus) { return ((v % modulus) + modulus) % modulus; }

} // namespace

void FiniteGaborSystem::validate() const {
    if (length < 1) throw std::invalid_argument("gabor system: length must be positive");
    if (window.size() != static_cast<std::size_t>(length))
        throw std::invalid_argument("gabor system: window length mismatch");
    std::set<std::pair<int, int>> seen;
    for (const auto& [x, omega] : labels) {
        if (x < 0 || x >= length || omega < 0 || omega >= length)
            throw std::invalid_argument("gabor system: label out of range");
        if (!seen.insert({x, omega}).second)
            throw std::invalid_argument("gabor system: duplicate label");
    }
}

std::vector<cx> time_frequency_shift(const std::vector<cx>& g, int x, int omega) {
    const int length = static_cast<int>(g.size());
    if (length == 0) throw std::invalid_argument("time_frequency_shift: empty vector");
    if (x < 0 || x >= length || omega < 0 || omega >= length)
        throw std::invalid_argument("time_frequency_shift: shift out of range");
    std::vector<cx> out(g.size());
    for (int t = 0; t < length; ++t) {
        const double phase = 2.0 * kPi * static_cast<double>(omega) * static_cast<double>(t) /
                             static_cast<double>(length);
        out[t] = cx(std::cos(phase), std::sin(phase)) * g[wrap(t - x, length)];
    }
    return out;
}

std::vector<cx> discrete_gaussian(int length) {
    if (length < 4) throw std::invalid_argument("discrete_gaussian: length must be at least 4");
    std::vector<cx> g(static_cast<std::size_t>(length));
    double norm2 = 0.0;
    for (int t = 0; t < length; ++t) {
        // fold to (-L/2, L/2] so the +-3 periodization window is symmetric
        const double tf = (t <= length / 2) ? static_cast<double>(t)
                                            : static_cast<double>(t - length);
        double v = 0.0;
        for (int m = -3; m <= 3; ++m) {
            const double u = tf - static_cast<double>(m) * static_cast<double>(length);
            v += std::exp(-kPi * u * u / static_cast<double>(length));
        }
        g[t] = cx(v, 0.0);
        norm2 += v * v;
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& v : g) v *= scale;
    return g;
}

ComplexMatrix stft(const std::vector<cx>& h, const std::vector<cx>& window) {
    const int length = static_cast<int>(h.size());
    if (window.size() != h.size())
        throw std::invalid_argument("stft: window length mismatch");
    double wnorm2 = 0.0;
    for (const cx& v : window) wnorm2 += std::norm(v);
    if (std::abs(std::sqrt(wnorm2) - 1.0) > 1e-8)
        throw std::invalid_argument("stft: window must have unit norm");

    ComplexMatrix out(h.size(), h.size());
    for (int y = 0; y < length; ++y)
        for (int xi = 0; xi < length; ++xi) {
            cx acc(0.0, 0.0);
            for (int t = 0; t < length; ++t) {
                const double phase = -2.0 * kPi * static_cast<double>(xi) *
                                     static_cast<double>(t) / static_cast<double>(length);
                acc += h[t] * cx(std::cos(phase), std::sin(phase)) * window[wrap(t - y, length)];
            }
            out.at(y, xi) = acc;
        }
    return out;
}

Frame gabor_frame(const FiniteGaborSystem& sys) {
    sys.validate();
    Frame f(static_cast<std::size_t>(sys.length), sys.labels.size());
    for (std::size_t i = 0; i < sys.labels.size(); ++i) {
        const std::vector<cx> v =
            time_frequency_shift(sys.window, sys.labels[i].first, sys.labels[i].second);
        f.synthesis.set_column(i, v);
        f.labels[i] = static_cast<long long>(sys.labels[i].first) * sys.length +
                      sys.labels[i].second;
    }
    return f;
}

double GaborEnvelope::at(int y, int xi) const {
    return values[static_cast<std::size_t>(wrap(y, length)) * length + wrap(xi, length)];
}

GaborEnvelope stft_magnitude_envelope(const std::vector<cx>& g) {
    const int length = static_cast<int>(g.size());
    const ComplexMatrix v = stft(g, discrete_gaussian(length));
    GaborEnvelope env;
    env.length = length;
    env.values.resize(g.size() * g.size());
    for (int y = 0; y < length; ++y)
        for (int xi = 0; xi < length; ++xi)
            env.values[static_cast<std::size_t>(y) * length + xi] = std::abs(v.at(y, xi));
    return env;
}

MoleculeCheck molecule_check(const GaborEnvelope& envelope,
                             const std::vector<std::vector<cx>>& members,
                             const std::vector<std::pair<int, int>>& labels) {
    if (members.size() != labels.size())
        throw std::invalid_argument("molecule_check: member/label count mismatch");
    const int length = envelope.length;
    if (envelope.values.size() != static_cast<std::size_t>(length) * length)
        throw std::invalid_argument("molecule_check: envelope size mismatch");
    const std::vector<cx> gamma = discrete_gaussian(length);

    MoleculeCheck out;
    out.worst_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i].size() != static_cast<std::size_t>(length))
            throw std::invalid_argument("molecule_check: member length mismatch");
        const ComplexMatrix v = stft(members[i], gamma);
        for (int y = 0; y < length; ++y)
            for (int xi = 0; xi < length; ++xi) {
                const double excess = std::abs(v.at(y, xi)) -
                                      envelope.at(y - labels[i].first, xi - labels[i].second);
                if (excess > out.worst_violation) {
                    out.worst_violation = excess;
                    out.worst_member = i;
                }
            }
    }
    if (members.empty()) out.worst_violation = 0.0;
    out.passes = out.worst_violation <= 1e-9;
    return out;
}

MoleculeCheck molecule_check(const GaborEnvelope& envelope, const FiniteGaborSystem& sys) {
    sys.validate();
    std::vector<std::vector<cx>> members;
    members.reserve(sys.labels.size());
    for (const auto& [x, omega] : sys.labels)
        members.push_back(time_frequency_shift(sys.window, x, omega));
    return molecule_check(envelope, members, sys.labels);
}

double envelope_w_norm(const GaborEnvelope& envelope) {
    double s = 0.0;
    for (double v : envelope.values) s += v;
    return s;
}

double window_m1_norm(const std::vector<cx>& g) {
    const ComplexMatrix v = stft(g, discrete_gaussian(static_cast<int>(g.size())));
    double s = 0.0;
    for (std::size_t y = 0; y < v.rows(); ++y)
        for (std::size_t xi = 0; xi < v.cols(); ++xi) s += std::abs(v.at(y, xi));
    return s;
}

BeurlingTable beurling_density(const std::vector<std::pair<int, int>>& labels, int length,
                               const std::vector<int>& radii) {
    if (length < 4) throw std::invalid_argument("beurling_density: length must be at least 4");
    std::vector<std::size_t> hist(static_cast<std::size_t>(length) * length, 0);
    for (const auto& [x, omega] : labels) {
        if (x < 0 || x >= length || omega < 0 || omega >= length)
            throw std::invalid_argument("beurling_density: label out of range");
        ++hist[static_cast<std::size_t>(x) * length + omega];
    }

    BeurlingTable table;
    for (int radius : radii) {
        if (radius < 1 || radius > length / 4)
            throw std::invalid_argument("beurling_density: radius outside [1, L/4]");
        const double denom = static_cast<double>(2 * radius) * static_cast<double>(2 * radius);
        std::size_t lo = static_cast<std::size_t>(-1), hi = 0;
        for (int cy = 0; cy < length; ++cy)
            for (int cx_ = 0; cx_ < length; ++cx_) {
                std::size_t count = 0;
                for (int dy = -radius; dy <= radius; ++dy)
                    for (int dx = -radius; dx <= radius; ++dx)
                        count += hist[static_cast<std::size_t>(wrap(cy + dy, length)) * length +
                                      wrap(cx_ + dx, length)];
                lo = std::min(lo, count);
                hi = std::max(hi, count);
            }
        BeurlingRow row;
        row.radius = radius;
        row.upper = static_cast<double>(hi) / denom;
        row.lower = static_cast<double>(lo) / denom;
        table.rows.push_back(row);
    }
    return table;
}

GaborThinOutcome gabor_thin(const FiniteGaborSystem& sys, double eps, bool strict,
                            std::optional<int> step_a, std::optional<int> step_b) {
    sys.validate();
    return gabor_thin_frame(gabor_frame(sys), eps, strict, step_a, step_b);
}

GaborThinOutcome gabor_thin_frame(const Frame& f, double eps, bool strict,
                                  std::optional<int> step_a, std::optional<int> step_b) {
    f.validate();
    const int length = static_cast<int>(f.dim);
    if (length < 4) throw std::invalid_argument("gabor_thin_frame: dimension must be at least 4");

    std::vector<std::pair<int, int>> labels;
    labels.reserve(f.size());
    std::set<long long> seen;
    for (long long label : f.labels) {
        if (label < 0 || label >= static_cast<long long>(length) * length)
            throw std::invalid_argument(
                "gabor_thin_frame: label outside the time-frequency grid");
        if (!seen.insert(label).second)
            throw std::invalid_argument("gabor_thin_frame: duplicate time-frequency label");
        labels.push_back({static_cast<int>(label / length), static_cast<int>(label % length)});
    }

    int a = 0;
    if (step_a || step_b) {
        a = step_a.value_or(step_b.value_or(0));
        const int b = step_b.value_or(a);
        if (b != a)
            throw std::invalid_argument(
                "gabor_thin: unsupported reference lattice (steps must agree so the quotient "
                "group is square)");
        if (a < 1 || length % a != 0)
            throw std::invalid_argument(
                "gabor_thin: unsupported reference lattice (step must divide L)");
        if (a * a >= length)
            throw std::invalid_argument(
                "gabor_thin: unsupported reference lattice (a*b must stay below L)");
    } else {
        for (a = static_cast<int>(std::floor(std::sqrt(static_cast<double>(length) / 2.0)));
             a >= 1; --a)
            if (length % a == 0 && a * a < length) break;
    }
    const int quotient = length / a;
    if (quotient < 4)
        throw std::invalid_argument("gabor_thin: quotient group too small; grow L");

    FiniteGaborSystem ref;
    ref.length = length;
    ref.window = discrete_gaussian(length);
    for (int p = 0; p < quotient; ++p)
        for (int q = 0; q < quotient; ++q) ref.labels.push_back({a * p, a * q});
    const Frame e = gabor_frame(ref);
    {
        const FrameBounds be = frame_bounds(e);
        if (be.lower <= kRankTol * be.upper)
            throw std::invalid_argument("gabor_thin: reference system is not a frame at this L");
    }

    LocalizationMap map;
    map.group = IndexGroup(2, quotient, 1);
    map.targets.reserve(labels.size());
    for (const auto& [x, omega] : labels)
        map.targets.push_back(static_cast<std::size_t>(x / a) * quotient +
                              static_cast<std::size_t>(omega / a));

    GaborThinOutcome out;
    out.result = extract_sparse_subframe(f, e, map, eps, strict);
    out.lattice_a = a;
    out.lattice_b = a;
    out.density_factor = static_cast<double>(a) * static_cast<double>(a);
    for (std::size_t i : out.result.selected) out.selected_labels.push_back(labels[i]);
    std::vector<int> radii;
    for (int radius = 1; radius <= length / 4; ++radius) radii.push_back(radius);
    out.beurling = beurling_density(out.selected_labels, length, radii);
    return out;
}

} // namespace framekit
