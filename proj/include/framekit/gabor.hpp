#ifndef FRAMEKIT_GABOR_HPP
#define FRAMEKIT_GABOR_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "framekit/complex_matrix.hpp"
#include "framekit/frame.hpp"
#include "framekit/thinning.hpp"

namespace framekit {

/// Time-frequency system over Z_L: vectors M_omega T_x g for (x, omega) in
/// the label set. Labels are distinct pairs with entries in [0, L).
struct FiniteGaborSystem {
    int length = 0;
    std::vector<cx> window;
    std::vector<std::pair<int, int>> labels;

    void validate() const;
};

/// (M_omega T_x g)(t) = e^{2 pi i omega t / L} g((t - x) mod L); unitary.
std::vector<cx> time_frequency_shift(const std::vector<cx>& g, int x, int omega);

/// Unit-norm periodized Gaussian: fold t to (-L/2, L/2], sum
/// exp(-pi (t - mL)^2 / L) over |m| <= 3, normalize. Symmetric:
/// gamma(t) = gamma(L - t).
std::vector<cx> discrete_gaussian(int length);

/// V_gamma h(y, xi) = sum_t h(t) e^{-2 pi i xi t / L} gamma((t - y) mod L),
/// returned as an L x L matrix indexed (y, xi). No conjugation on the window;
/// with a unit-norm window the energy identity reads
/// sum |V|^2 = L * ||h||^2.
ComplexMatrix stft(const std::vector<cx>& h, const std::vector<cx>& window);

/// Frame of the system's shifts, dim = L, label x*L + omega.
Frame gabor_frame(const FiniteGaborSystem& sys);

/// Nonnegative function on Z_L x Z_L, row-major (y * L + xi), wrapped lookup.
struct GaborEnvelope {
    int length = 0;
    std::vector<double> values;

    double at(int y, int xi) const;
};

/// Gamma = |V_gamma g| against the discrete Gaussian reference window.
GaborEnvelope stft_magnitude_envelope(const std::vector<cx>& g);

struct MoleculeCheck {
    bool passes = true;
    double worst_violation = 0.0; // max of |V member| - envelope(offset); <= 0 means slack
    std::size_t worst_member = 0;
};

/// Pointwise envelope domination |V_gamma f_i(y, xi)| <= Gamma(y - x_i,
/// xi - omega_i) with wrapped offsets; reference window = discrete Gaussian.
MoleculeCheck molecule_check(const GaborEnvelope& envelope,
                             const std::vector<std::vector<cx>>& members,
                             const std::vector<std::pair<int, int>>& labels);
MoleculeCheck molecule_check(const GaborEnvelope& envelope, const FiniteGaborSystem& sys);

/// l1 mass of an envelope over the full time-frequency grid.
double envelope_w_norm(const GaborEnvelope& envelope);

/// l1 mass of V_gamma g against the discrete Gaussian reference window.
double window_m1_norm(const std::vector<cx>& g);

struct BeurlingRow {
    int radius = 0;
    double upper = 0.0; // sup over centers of count / (2N)^2
    double lower = 0.0; // inf over centers of the same
};

struct BeurlingTable {
    std::vector<BeurlingRow> rows;
};

/// Counting density of a label set over wrapped max-metric balls, with the
/// plane normalization (2N)^2. Radii must lie in [1, L/4].
BeurlingTable beurling_density(const std::vector<std::pair<int, int>>& labels, int length,
                               const std::vector<int>& radii);

struct GaborThinOutcome {
    ThinningResult result;
    int lattice_a = 0; // reference lattice time step
    int lattice_b = 0; // reference lattice frequency step
    double density_factor = 0.0;      // a * b, the group-to-plane density conversion
    BeurlingTable beurling;           // of the selected label subset
    std::vector<std::pair<int, int>> selected_labels;
};

/// Thinning specialized to Gabor systems: reference system = discrete
/// Gaussian on the sublattice aZ_L x bZ_L with a = b = floor(sqrt(L/2))
/// lowered until a | L and a*b < L (overridable; non-divisor overrides are
/// rejected), localization map (x, omega) -> (floor(x/a), floor(omega/b)) on
/// Z_{L/a} x Z_{L/b}, then the general extraction pipeline.
GaborThinOutcome gabor_thin(const FiniteGaborSystem& sys, double eps, bool strict = false,
                            std::optional<int> step_a = {}, std::optional<int> step_b = {});

/// Same pipeline for an already-synthesized frame on C^L whose labels encode
/// time-frequency positions as x * L + omega (the layout gabor_frame emits).
GaborThinOutcome gabor_thin_frame(const Frame& f, double eps, bool strict = false,
                                  std::optional<int> step_a = {}, std::optional<int> step_b = {});

} // namespace framekit

#endif
