#ifndef FRAMEKIT_THINNING_HPP
#define FRAMEKIT_THINNING_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "framekit/frame.hpp"
#include "framekit/localization.hpp"
#include "framekit/removal.hpp"

namespace framekit {

/// Sizing and certification parameters fixed before the per-box stage.
/// radius (R) controls truncation, box_radius (N) the tiling cell half-width;
/// the lattice holds the box centers (free coordinates on 2N steps, torsion
/// 0). c_eps = g_estimate(eps / (2 (2 K_a - 1))) underflows to 0.0 for most
/// configurations; c_eps_log is its always-finite logarithm.
struct ThinningConfig {
    double eps = 0.0;
    bool strict = true;
    double c_eps = 0.0;
    double c_eps_log = 0.0;
    int radius = 0;
    int box_radius = 0;
    std::vector<std::size_t> lattice;
    bool radius_feasible = false; // E(R) < c_eps / (2 (1 + c_eps)) held at radius
    bool box_feasible = false;    // (1+eps/2)|B_{N+R}| <= (1+eps)|B_N| held
};

struct PerBoxLog {
    std::size_t center = 0;     // flat group element
    std::size_t population = 0; // labels assigned to the box
    bool small_branch = true;
    std::size_t rank = 0;       // span rank of the truncated vectors (capped boxes)
    std::size_t kept = 0;
    std::size_t cap = 0;        // floor((1+eps/2)|B_{N+R}(0)|)
    double ratio = 1.0;         // spectral ratio of kept vs full box operator
    double density_ratio = 0.0; // kept / |B_N(0)|
};

struct BoxOutcome {
    std::vector<std::size_t> kept; // subset of the box labels, sorted
    PerBoxLog log;
};

struct ThinningResult {
    std::vector<std::size_t> selected; // J, sorted
    ThinningConfig config;
    double k_a = 1.0;
    double s_l1 = 0.0;
    double truncation_error = 0.0;   // E(R)
    double full_truncated_lo = 0.0;  // lambda_min of the full truncated operator
    double full_truncated_hi = 0.0;  // lambda_max of the same
    bool truncation_window_ok = false;
    double kept_truncated_lo = 0.0;  // lambda_min over the kept truncated family
    double ratio_floor = 0.0;        // strict: c_eps; practical: min per-box ratio
    double certified = 0.0;          // ratio_floor * (1 - E(R)) - E(R)
    double certified_target = 0.0;   // c_eps / 2
    double achieved = 0.0;           // lambda_min(S_J) of the (normalized) input
    bool certified_ok = false;
    std::vector<PerBoxLog> boxes;
    DensityTable densities;
    std::vector<std::string> diagnostics;

    // transported bounds when the inputs required normalization
    bool transported = false;
    double input_lower = 0.0;
    double input_upper = 0.0;
    double transported_lower = 0.0; // A * A'
    double transported_upper = 0.0; // B * B'
    double achieved_original = 0.0; // lambda_min of the kept operator of the input
};

/// Smallest R <= diameter with E(R) < c_eps / (2 (1 + c_eps)); a zero tail
/// counts as feasible even when c_eps underflowed. Throws when no such R
/// exists (the error message carries the E(R) table).
int choose_R(double eps, const LocalizationProfile& profile);

/// Smallest N in (R, L/4] satisfying (1+eps/2)|B_{N+R}(0)| <= (1+eps)|B_N(0)|,
/// adjusted to the tiling constraint 2N | L: round down when the rounded value
/// still satisfies the inequality, otherwise the smallest compatible feasible
/// value above. Throws with a sizing diagnostic when none exists.
int choose_N(double eps, int radius, const IndexGroup& g);

/// One box of the thinning stage. q lists positions (into truncated) whose
/// map targets fall in the box. Small boxes are kept whole; oversized boxes
/// are reduced by finite_removal on their span coordinates with slack
/// b = (1+eps/2)|B_{N+R}|/rank - 1 and hard cap floor((1+eps/2)|B_{N+R}|).
BoxOutcome per_box_thin(const Frame& truncated, const std::vector<std::size_t>& q, double eps,
                        double k_a, std::size_t inner_box_size, std::size_t outer_box_size);

/// Density-thinning of a Parseval frame against a Parseval reference:
/// truncate at R, tile the group into half-open cells of side 2N, thin each
/// box, and certify the kept family. Infeasible strict sizing falls back to
/// R = min(r0, N-1) with N searched up to L/2 and is reported through the
/// feasibility flags and diagnostics instead of certifying.
ThinningResult extract_sparse_subframe_parseval(const Frame& f, const Frame& e,
                                                const LocalizationMap& a, double eps,
                                                bool strict = true);

/// General spanning inputs: both families are Parseval-normalized, the
/// Parseval pipeline runs, and the certificate is transported back through
/// the frame bounds of the input (lower A*A', upper B*B').
ThinningResult extract_sparse_subframe(const Frame& f, const Frame& e, const LocalizationMap& a,
                                       double eps, bool strict = true);

} // namespace framekit

#endif
