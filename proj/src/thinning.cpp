#include "framekit/thinning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace framekit {

namespace {

std::size_t floor_tol(double x) {
    return static_cast<std::size_t>(std::floor(std::max(x, 0.0) + 1e-9));
}

bool box_growth_ok(const IndexGroup& g, double eps, int n, int radius) {
    const double lhs = (1.0 + eps / 2.0) * static_cast<double>(g.box_size(n + radius));
    const double rhs = (1.0 + eps) * static_cast<double>(g.box_size(n));
    return lhs <= rhs + 1e-9;
}

// half-open cell assignment: the free coordinates of the center are the
// multiples of 2N whose window [center - N, center + N) contains the target;
// torsion is collapsed to 0
std::size_t cell_center(const IndexGroup& g, std::size_t target, int n) {
    std::vector<int> c = g.coords(target);
    for (int j = 0; j < g.d; ++j) {
        const int shifted = (c[j] + n) % g.L;
        c[j] = (2 * n * (shifted / (2 * n))) % g.L;
    }
    c[g.d] = 0;
    return g.flat(c);
}

std::vector<std::size_t> lattice_centers(const IndexGroup& g, int n) {
    if (g.d == 0 || 2 * n >= g.L) return {0};
    const int m = g.L / (2 * n);
    std::vector<std::size_t> out;
    std::vector<int> c(static_cast<std::size_t>(g.d) + 1, 0);
    std::vector<int> digit(static_cast<std::size_t>(g.d), 0);
    while (true) {
        for (int j = 0; j < g.d; ++j) c[j] = 2 * n * digit[j];
        c[g.d] = 0;
        out.push_back(g.flat(c));
        int j = g.d;
        bool carry = true;
        while (j-- > 0) {
            if (++digit[j] < m) {
                carry = false;
                break;
            }
            digit[j] = 0;
        }
        if (carry) return out;
    }
}

} // namespace

int choose_R(double eps, const LocalizationProfile& profile) {
    const double arg = eps / (2.0 * (2.0 * profile.k_a - 1.0));
    if (!(arg > 0.0) || !(arg < 1.0))
        throw std::invalid_argument("choose_R: eps / (2(2K_a - 1)) must lie in (0, 1)");
    const double c = g_estimate(arg);
    const double threshold = c / (2.0 * (1.0 + c));
    const int diam = profile.r.group.diameter();
    for (int radius = 0; radius <= diam; ++radius) {
        const double e = truncation_error_scale(profile, radius);
        if (e == 0.0 || e < threshold) return radius;
    }
    std::ostringstream msg;
    msg << "choose_R: no feasible truncation radius up to the group diameter; threshold "
        << threshold << "; E(R) table:";
    for (int radius = 0; radius <= diam; ++radius)
        msg << " E(" << radius << ")=" << truncation_error_scale(profile, radius);
    throw std::runtime_error(msg.str());
}

int choose_N(double eps, int radius, const IndexGroup& g) {
    if (radius < 0) throw std::invalid_argument("choose_N: negative radius");
    if (g.d == 0)
        throw std::invalid_argument("choose_N: group has no free coordinates to tile");
    const int cap = g.L / 4;
    int raw = -1;
    for (int n = radius + 1; n <= cap; ++n)
        if (box_growth_ok(g, eps, n, radius)) {
            raw = n;
            break;
        }
    if (raw < 0)
        throw std::runtime_error(
            "choose_N: no box radius in (R, L/4] satisfies the growth bound; grow the group");
    if (g.L % (2 * raw) == 0) return raw;
    for (int n = raw - 1; n > radius; --n)
        if (g.L % (2 * n) == 0) {
            if (box_growth_ok(g, eps, n, radius)) return n;
            break;
        }
    for (int n = raw + 1; n <= cap; ++n)
        if (g.L % (2 * n) == 0 && box_growth_ok(g, eps, n, radius)) return n;
    throw std::runtime_error(
        "choose_N: no box radius in (R, L/4] is tiling-compatible (2N | L) and satisfies the "
        "growth bound; grow the group");
}

BoxOutcome per_box_thin(const Frame& truncated, const std::vector<std::size_t>& q, double eps,
                        double k_a, std::size_t inner_box_size, std::size_t outer_box_size) {
    if (q.empty()) throw std::invalid_argument("per_box_thin: empty box");
    if (inner_box_size == 0 || outer_box_size == 0)
        throw std::invalid_argument("per_box_thin: zero box size");

    BoxOutcome out;
    out.log.population = q.size();
    const double threshold = (1.0 + eps / 2.0) * static_cast<double>(outer_box_size);
    out.log.cap = floor_tol(threshold);

    if (q.size() <= out.log.cap) {
        out.kept = q;
        out.log.small_branch = true;
        out.log.kept = q.size();
        out.log.ratio = 1.0;
    } else {
        out.log.small_branch = false;
        const Frame box = subframe(truncated, q);
        const Spectrum sp = hermitian_eig(frame_operator(box));
        const double top = sp.eigenvalues.back();
        std::size_t rank = 0;
        for (double v : sp.eigenvalues)
            if (top > 0.0 && v > kRankTol * top) ++rank;
        out.log.rank = rank;
        if (rank == 0) {
            out.log.kept = 0;
            out.log.ratio = 0.0;
        } else {
            // coordinates of the box vectors in their span
            std::vector<std::vector<cx>> basis(rank);
            for (std::size_t jj = 0; jj < rank; ++jj)
                basis[jj] = sp.eigenvectors.column(truncated.dim - rank + jj);
            Frame coords(rank, q.size());
            for (std::size_t t = 0; t < q.size(); ++t) {
                const std::vector<cx> v = box.vector(t);
                for (std::size_t jj = 0; jj < rank; ++jj)
                    coords.synthesis.at(jj, t) = inner_product(v, basis[jj]);
            }
            const double b = threshold / static_cast<double>(rank) - 1.0;
            const RemovalCertificate cert = finite_removal(coords, b, out.log.cap);
            // the per-box slack b / (2|Q|/rank - 1) never undercuts
            // eps / (2(2K_a - 1)) when |Q| respects the covering constant
            if (cert.delta + 1e-12 < eps / (2.0 * (2.0 * k_a - 1.0)))
                throw std::logic_error(
                    "per_box_thin: per-box slack fell below the covering-constant floor");
            for (std::size_t t : cert.selected) out.kept.push_back(q[t]);
            out.log.kept = out.kept.size();
            out.log.ratio = cert.achieved_ratio;
        }
    }
    if (out.log.kept > out.log.cap)
        throw std::logic_error("per_box_thin: cardinality cap violated");
    out.log.density_ratio =
        static_cast<double>(out.log.kept) / static_cast<double>(inner_box_size);
    return out;
}

namespace {

ThinningResult run_parseval(const Frame& f, const Frame& e, const LocalizationMap& a, double eps,
                            bool strict) {
    if (!(eps > 0.0)) throw std::invalid_argument("thinning: eps must be positive");
    if (!is_parseval(f)) throw std::invalid_argument("thinning: family is not Parseval");
    if (!is_parseval(e)) throw std::invalid_argument("thinning: reference is not Parseval");
    a.validate();
    if (a.targets.size() != f.size())
        throw std::invalid_argument("thinning: map does not cover the family");
    if (e.size() != a.group.size())
        throw std::invalid_argument("thinning: reference not indexed by the group");

    const IndexGroup& g = a.group;
    const LocalizationProfile profile = localization_profile(f, a, e);

    ThinningResult out;
    out.k_a = profile.k_a;
    out.s_l1 = profile.s_l1;

    ThinningConfig cfg;
    cfg.eps = eps;
    cfg.strict = strict;
    const double arg = eps / (2.0 * (2.0 * profile.k_a - 1.0));
    if (arg > 0.0 && arg < 1.0) {
        cfg.c_eps = g_estimate(arg);
        cfg.c_eps_log = g_estimate_log(arg);
        if (cfg.c_eps == 0.0)
            out.diagnostics.push_back("certificate base underflowed to 0; log value " +
                                      std::to_string(cfg.c_eps_log));
    } else {
        cfg.c_eps = 0.0;
        cfg.c_eps_log = -std::numeric_limits<double>::infinity();
        out.diagnostics.push_back("estimate argument outside (0,1); certificate base unavailable");
    }

    int radius = 0;
    int box_r = 0;
    try {
        radius = choose_R(eps, profile);
        box_r = (g.d == 0) ? g.diameter() + 1 : choose_N(eps, radius, g);
    } catch (const std::exception& ex) {
        out.diagnostics.push_back(std::string("strict sizing infeasible: ") + ex.what());
        const int r0 = truncation_r0(profile.r, profile.k_a, profile.s_l1);
        if (g.d == 0) {
            box_r = g.diameter() + 1;
            radius = std::max(1, std::min(r0, g.diameter()));
        } else {
            box_r = -1;
            for (int n = 1; 2 * n <= g.L; ++n) {
                if (g.L % (2 * n) != 0) continue;
                const int rc = std::max(1, std::min(r0, n - 1));
                if (n > rc && box_growth_ok(g, eps, n, rc)) {
                    box_r = n;
                    radius = rc;
                    break;
                }
            }
            if (box_r < 0)
                throw std::runtime_error(
                    "thinning: no workable (R, N) sizing with 2N | L up to N = L/2; grow the "
                    "group");
        }
        out.diagnostics.push_back("fallback sizing: R = max(1, min(r0, N-1)), N over 2N | L up "
                                  "to L/2");
    }
    cfg.radius = radius;
    cfg.box_radius = box_r;
    {
        const double e_r = truncation_error_scale(profile, radius);
        const double thr = cfg.c_eps / (2.0 * (1.0 + cfg.c_eps));
        cfg.radius_feasible = (e_r == 0.0) || (e_r < thr);
        cfg.box_feasible = box_growth_ok(g, eps, box_r, radius);
    }
    cfg.lattice = lattice_centers(g, box_r);

    // truncation window around the identity
    const Frame truncated = truncate_frame(f, e, a, radius);
    out.truncation_error = truncation_error_scale(profile, radius);
    const FrameBounds full_trunc = frame_bounds(truncated);
    out.full_truncated_lo = full_trunc.lower;
    out.full_truncated_hi = full_trunc.upper;
    out.truncation_window_ok = full_trunc.lower >= 1.0 - out.truncation_error - 1e-9 &&
                               full_trunc.upper <= 1.0 + out.truncation_error + 1e-9;

    // partition of the labels into half-open cells
    const std::size_t inner = g.box_size(box_r);
    const std::size_t outer = g.box_size(box_r + radius);
    std::vector<std::vector<std::size_t>> cells(cfg.lattice.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::size_t center = cell_center(g, a.targets[i], box_r);
        const auto it = std::lower_bound(cfg.lattice.begin(), cfg.lattice.end(), center);
        if (it == cfg.lattice.end() || *it != center)
            throw std::logic_error("thinning: cell center not on the lattice");
        cells[static_cast<std::size_t>(it - cfg.lattice.begin())].push_back(i);
    }

    std::size_t empty_boxes = 0;
    double min_ratio = std::numeric_limits<double>::infinity();
    bool any_ratio = false;
    bool per_box_certified = true;
    std::vector<std::size_t> selected;
    for (std::size_t idx = 0; idx < cfg.lattice.size(); ++idx) {
        if (cells[idx].empty()) {
            ++empty_boxes;
            continue;
        }
        BoxOutcome b = per_box_thin(truncated, cells[idx], eps, profile.k_a, inner, outer);
        b.log.center = cfg.lattice[idx];
        if (!b.log.small_branch && b.log.kept == 0) {
            out.diagnostics.push_back("rank-zero box at center " +
                                      std::to_string(b.log.center) + " contributed nothing");
        } else {
            min_ratio = std::min(min_ratio, b.log.ratio);
            any_ratio = true;
        }
        per_box_certified = per_box_certified && b.log.ratio >= cfg.c_eps - 1e-12;
        selected.insert(selected.end(), b.kept.begin(), b.kept.end());
        out.boxes.push_back(b.log);
    }
    if (empty_boxes > 0)
        out.diagnostics.push_back(std::to_string(empty_boxes) + " of " +
                                  std::to_string(cfg.lattice.size()) + " boxes empty, skipped");
    std::sort(selected.begin(), selected.end());
    out.selected = selected;
    out.config = cfg;

    const Frame kept_truncated = subframe(truncated, selected);
    out.kept_truncated_lo = frame_bounds(kept_truncated).lower;
    out.ratio_floor = strict ? cfg.c_eps : (any_ratio ? min_ratio : 0.0);
    out.certified = out.ratio_floor * (1.0 - out.truncation_error) - out.truncation_error;
    out.certified_target = cfg.c_eps / 2.0;
    out.achieved = frame_bounds(subframe(f, selected)).lower;

    const bool kept_window_ok =
        out.kept_truncated_lo >= out.ratio_floor * (1.0 - out.truncation_error) - 1e-9;
    if (!kept_window_ok)
        out.diagnostics.push_back("kept truncated operator fell below the summed per-box bound");
    const bool base = out.truncation_window_ok && cfg.box_feasible && !selected.empty() &&
                      kept_window_ok && out.achieved >= out.certified - 1e-9;
    if (strict)
        out.certified_ok = base && cfg.radius_feasible && per_box_certified &&
                           out.certified >= out.certified_target - 1e-15;
    else
        out.certified_ok = base && out.certified > 0.0;

    out.densities = density_table(a, selected);
    for (const PerBoxLog& log : out.boxes)
        if (log.density_ratio > 1.0 + eps + 1e-9)
            out.diagnostics.push_back("per-box density ratio " +
                                      std::to_string(log.density_ratio) +
                                      " exceeded 1+eps at center " + std::to_string(log.center));
    return out;
}

} // namespace

ThinningResult extract_sparse_subframe_parseval(const Frame& f, const Frame& e,
                                                const LocalizationMap& a, double eps,
                                                bool strict) {
    return run_parseval(f, e, a, eps, strict);
}

ThinningResult extract_sparse_subframe(const Frame& f, const Frame& e, const LocalizationMap& a,
                                       double eps, bool strict) {
    const FrameBounds bf = frame_bounds(f);
    if (bf.lower <= kRankTol * bf.upper)
        throw std::invalid_argument("extract_sparse_subframe: family does not span");
    const FrameBounds be = frame_bounds(e);
    if (be.lower <= kRankTol * be.upper)
        throw std::invalid_argument("extract_sparse_subframe: reference does not span");

    const bool f_parseval = is_parseval(f);
    const Frame fn = f_parseval ? f : parseval_normalize(f);
    const Frame en = is_parseval(e) ? e : parseval_normalize(e);

    ThinningResult out = run_parseval(fn, en, a, eps, strict);
    out.transported = true;
    out.input_lower = bf.lower;
    out.input_upper = bf.upper;
    const FrameBounds kept_normalized = frame_bounds(subframe(fn, out.selected));
    out.transported_lower = bf.lower * kept_normalized.lower;
    out.transported_upper = bf.upper * kept_normalized.upper;
    out.achieved_original =
        f_parseval ? out.achieved : frame_bounds(subframe(f, out.selected)).lower;
    return out;
}

} // namespace framekit
