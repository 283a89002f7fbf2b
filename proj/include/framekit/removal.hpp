#ifndef FRAMEKIT_REMOVAL_HPP
#define FRAMEKIT_REMOVAL_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "framekit/frame.hpp"

namespace framekit {

/// Worst-case lower-bound estimate (eps^2/8)^(1 + (4/eps^2) ln(1/eps)) for
/// the spectral ratio retained by the removal construction. Monotone
/// increasing on (0,1); astronomically small for moderate eps, and the double
/// value underflows to 0 below roughly eps ~ 0.15 (use the _log variant for
/// diagnostics and monotonicity checks).
double g_estimate(double eps);
double g_estimate_log(double eps);

struct RieszSelection {
    std::vector<std::size_t> indices; // sorted
    double lower_riesz_bound = 0.0;   // lambda_min of the selected Gram
    double target_bound = 0.0;        // g_estimate(delta)
    bool estimate_met = false;
};

/// Greedy forward selection of a Riesz subsequence from a Parseval frame
/// whose vectors all satisfy ||f_i||^2 >= 1/2. Adds at each step the vector
/// maximizing lambda_min of the running Gram matrix (ties to the smallest
/// index), stopping at floor((1-delta) * dim) vectors.
RieszSelection riesz_subset_select(const Frame& f, double delta);

struct RemovalCertificate {
    std::vector<std::size_t> selected;        // kept index set J, sorted
    std::vector<std::size_t> complement_kept; // sigma of the construction
    std::size_t cardinality_bound = 0;        // |J| <= this, enforced
    double certified_ratio = 0.0;             // g_estimate(delta)
    double constructive_bound = 0.0;          // bound certified by the greedy run
    double achieved_ratio = 0.0;              // lambda_min of the whitened S_J
    double delta = 0.0;
    bool estimate_met = false;                // constructive_bound >= certified_ratio
};

/// Removal for a Parseval frame with all ||f_i||^2 <= 1/2: selects the
/// complement-side subset sigma with delta = eps / (2M/N - 1) and keeps
/// J = I \ sigma, so that S_J = I - S_sigma with lambda_min(S_J) at least the
/// selected complement Riesz bound. |J| <= ceil((1+eps) N), or the explicit
/// keep_cap when one is supplied.
RemovalCertificate remove_parseval_smallnorm(const Frame& f, double eps,
                                             std::optional<std::size_t> keep_cap = {});

/// General Parseval removal: duplicate-and-halve (two copies of f_i / sqrt 2),
/// run the small-norm construction on the doubled family with the original
/// delta = eps / (2M/N - 1), and merge kept copies back to original indices.
RemovalCertificate remove_parseval(const Frame& f, double eps,
                                   std::optional<std::size_t> keep_cap = {});

/// Removal for any spanning frame: Parseval-normalize, remove, and report the
/// ratio against S_F (achieved_ratio = lambda_min of the normalized kept
/// operator, i.e. of S_F^{-1/2} S_J S_F^{-1/2}).
RemovalCertificate finite_removal(const Frame& f, double eps,
                                  std::optional<std::size_t> keep_cap = {});

struct OracleResult {
    std::vector<std::size_t> subset; // sorted; lexicographically smallest argmax
    double best_lambda_min = 0.0;
};

/// Exact maximizer of lambda_min(S_J) over all J with |J| <= cap, found by
/// branch-and-bound over the subset lattice in lexicographic order. Pruning
/// uses the PSD monotonicity bound lambda_min(S_partial + S_suffix); it never
/// discards a strictly better subset. Guarded to M <= 32.
OracleResult exhaustive_oracle(const Frame& f, std::size_t cap);

} // namespace framekit

#endif
