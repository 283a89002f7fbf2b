#ifndef FRAMEKIT_LOCALIZATION_HPP
#define FRAMEKIT_LOCALIZATION_HPP

#include <cstddef>
#include <vector>

#include "framekit/frame.hpp"

namespace framekit {

/// Finite abelian index group Z_L^d x Z_D with the wrapped max metric:
/// |g| = max over coordinates of min(c, modulus - c). Elements are handled as
/// flat indices 0 .. L^d * D - 1 (free coordinates first, most significant
/// first, torsion last).
struct IndexGroup {
    int d = 1; // free rank
    int L = 4; // cyclic modulus per free coordinate
    int D = 1; // torsion modulus

    IndexGroup() = default;
    IndexGroup(int d_, int L_, int D_);

    std::size_t size() const;
    int diameter() const;

    std::vector<int> coords(std::size_t flat) const; // d free + 1 torsion
    std::size_t flat(const std::vector<int>& c) const;

    std::size_t add(std::size_t a, std::size_t b) const;
    std::size_t sub(std::size_t a, std::size_t b) const;
    std::size_t neg(std::size_t a) const;
    int norm(std::size_t a) const;

    /// Closed ball B_N(center) as flat indices; cardinality is independent of
    /// the center.
    std::vector<std::size_t> box(std::size_t center, int radius) const;
    std::size_t box_size(int radius) const;

    /// Radius cap for density reporting: boxes with radius <= modulus/4 never
    /// wrap onto themselves.
    int report_radius() const;
};

/// Total assignment of frame index positions to group elements. targets[i] is
/// the flat group element for vector position i.
struct LocalizationMap {
    IndexGroup group;
    std::vector<std::size_t> targets;

    void validate() const;
};

/// Nonnegative function on the group, stored by flat index.
struct GroupSequence {
    IndexGroup group;
    std::vector<double> values;

    double l1() const;
};

/// Cross-localization r(g) = sup { |<f_i, e_k>| : a(i) - k = g }.
GroupSequence localization_sequence(const Frame& f, const LocalizationMap& a, const Frame& e);

/// Self-localization s(g) = sup { |<e_k, e_l>| : k - l = g }; symmetric. The
/// frame is indexed by the group through its flat positions.
GroupSequence self_localization_sequence(const Frame& e, const IndexGroup& g);

/// Tail sum over norms: sum of values at |g| >= radius.
double tail_sum(const GroupSequence& seq, int radius);

/// Localization data of a family F against a reference frame E under a map a:
/// cross sequence r, self sequence s, their l1 masses, and the covering
/// constant of a.
struct LocalizationProfile {
    GroupSequence r;
    GroupSequence s;
    double r_l1 = 0.0;
    double s_l1 = 0.0;
    double k_a = 1.0;
};

LocalizationProfile localization_profile(const Frame& f, const LocalizationMap& a,
                                         const Frame& e);

/// Truncation error scale E(R) = 3 * K_a * tail_sum(r, R) * ||s||_1.
double truncation_error_scale(const LocalizationProfile& p, int radius);

/// Smallest K >= 1 with |a^{-1}(B_N(k))| <= K |B_N(0)| over all centers and
/// all radii 0 <= N <= diameter.
double covering_constant(const LocalizationMap& a);

struct DensityRow {
    int radius = 0;
    double sup_ratio = 0.0;
    double inf_ratio = 0.0;
};

struct DensityTable {
    std::vector<DensityRow> rows; // radii 0 .. report_radius
    int report_radius = 0;
    double upper = 0.0; // sup ratio at the report radius
    double lower = 0.0; // inf ratio at the report radius
};

DensityTable density_table(const LocalizationMap& a, const std::vector<std::size_t>& j);
double upper_density(const LocalizationMap& a, const std::vector<std::size_t>& j);
double lower_density(const LocalizationMap& a, const std::vector<std::size_t>& j);

struct WindowedDensity {
    std::vector<double> ratios;
    double lo = 0.0; // min over the sequence (liminf stand-in)
    double hi = 0.0; // max over the sequence (limsup stand-in)
};

/// Ratios |a^{-1}(B_{radius_t}(center_t)) cap J| / |B_{radius_t}(0)| along a
/// finite window sequence.
WindowedDensity windowed_density(const LocalizationMap& a, const std::vector<std::size_t>& j,
                                 const std::vector<std::size_t>& centers,
                                 const std::vector<int>& radii);

/// f_{i,R} = sum over |k - a(i)| < R of <f_i, e_k> e_k (strict inequality;
/// radius 0 yields zero vectors, radius > diameter reproduces f_i when E is
/// Parseval).
Frame truncate_frame(const Frame& f, const Frame& e, const LocalizationMap& a, int radius);

/// Smallest R with tail_sum(r, R) <= 1 / (K_a ||s||_1); the horizon beyond
/// which the truncation bound below is guaranteed.
int truncation_r0(const GroupSequence& r, double k_a, double s_l1);

struct TruncationCheck {
    double lhs = 0.0;            // ||S_J - S_{R,J}||
    double bound = 0.0;          // factor * K_a * tail * s_l1
    double factor = 3.0;         // 3 for Parseval input, ||T_J|| + ||T_{R,J}|| otherwise
    bool parseval_input = true;  // factor 3 applies
    double analysis_gap = 0.0;   // ||T_J - T_{R,J}||
    double analysis_bound = 0.0; // K_a * tail * s_l1
    double schur_bound = 0.0;    // schur_norm_bound of the cross-Gram matrix
    double tail = 0.0;           // tail_sum(r, R)
    int r0 = 0;
    bool guaranteed = false;     // R >= r0: the bound is asserted, not just reported
    bool holds = false;
};

/// Checks ||S_J - S_{R,J}|| against the Schur-test bound. E must be Parseval;
/// for non-Parseval F the constant 3 is replaced by the computed
/// ||T_J|| + ||T_{R,J}|| and parseval_input records the departure.
TruncationCheck truncation_error_check(const Frame& f, const Frame& e, const LocalizationMap& a,
                                       int radius, const std::vector<std::size_t>& j);

} // namespace framekit

#endif
