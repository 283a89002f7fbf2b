#include "framekit/removal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace framekit {

namespace {

// tolerant integer floor/ceil: protect exact products like 1.4 * 10 from
// one-ulp drift
std::size_t floor_tol(double x) {
    return static_cast<std::size_t>(std::floor(std::max(x, 0.0) + 1e-9));
}
std::size_t ceil_tol(double x) {
    return static_cast<std::size_t>(std::ceil(std::max(x, 0.0) - 1e-9));
}

void add_outer(ComplexMatrix& s, const ComplexMatrix& synth, std::size_t col) {
    const std::size_t n = s.rows();
    for (std::size_t i = 0; i < n; ++i) {
        const cx fi = synth.at(i, col);
        if (fi == cx(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < n; ++j)
            s.at(i, j) += fi * std::conj(synth.at(j, col));
    }
}

struct ComplementSelection {
    std::vector<std::size_t> sigma; // sorted
    double kept_bound = 1.0;        // 1 - lambda_max(S_sigma)
};

// Forward greedy on the complement side, evaluated through the coefficient
// split: for a Parseval family, the complement Gram of sigma equals
// I - Gram(sigma), so maximizing the complement's lambda_min is the same as
// minimizing lambda_max of S_sigma, which lives in the span dimension.
// A Rayleigh-quotient screen (lambda_max(S) + |<f_j, u>|^2 is a lower bound
// for lambda_max(S + f_j f_j*)) skips candidates that provably cannot improve
// on the current best; ties go to the smallest index.
ComplementSelection greedy_complement_selection(const ComplexMatrix& synth,
                                                std::size_t sigma_target) {
    const std::size_t n = synth.rows();
    const std::size_t m = synth.cols();
    if (sigma_target > m)
        throw std::invalid_argument("greedy selection: target exceeds family size");

    ComplementSelection out;
    std::vector<char> in_sigma(m, 0);
    ComplexMatrix s(n, n);
    double lam_top = 0.0;
    std::vector<cx> top(n, cx(0.0, 0.0));
    if (n > 0) top[0] = cx(1.0, 0.0);

    for (std::size_t step = 0; step < sigma_target; ++step) {
        double best_val = std::numeric_limits<double>::infinity();
        std::size_t best_j = m;
        for (std::size_t j = 0; j < m; ++j) {
            if (in_sigma[j]) continue;
            cx proj(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k)
                proj += synth.at(k, j) * std::conj(top[k]);
            const double screen = lam_top + std::norm(proj);
            if (screen >= best_val + 1e-12) continue;
            ComplexMatrix s2 = s;
            add_outer(s2, synth, j);
            const double val = lambda_max(s2);
            if (val < best_val) {
                best_val = val;
                best_j = j;
            }
        }
        if (best_j == m)
            throw std::runtime_error("greedy selection: no candidate available");
        in_sigma[best_j] = 1;
        add_outer(s, synth, best_j);
        const Spectrum sp = hermitian_eig(s);
        lam_top = sp.eigenvalues.back();
        top = sp.eigenvectors.column(n - 1);
        out.sigma.push_back(best_j);
    }
    std::sort(out.sigma.begin(), out.sigma.end());
    out.kept_bound = 1.0 - lam_top;
    return out;
}

void check_eps_range(double eps, std::size_t m, std::size_t n, const char* who) {
    if (m <= n)
        throw std::invalid_argument(std::string(who) + ": no redundancy to remove (M <= N)");
    const double limit = static_cast<double>(m) / static_cast<double>(n) - 1.0;
    if (!(eps > 0.0) || !(eps < limit))
        throw std::invalid_argument(std::string(who) + ": eps outside (0, M/N - 1)");
}

std::vector<std::size_t> complement_of(const std::vector<std::size_t>& sigma, std::size_t m) {
    std::vector<char> mark(m, 0);
    for (std::size_t i : sigma) mark[i] = 1;
    std::vector<std::size_t> j;
    for (std::size_t i = 0; i < m; ++i)
        if (!mark[i]) j.push_back(i);
    return j;
}

} // namespace

double g_estimate_log(double eps) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::invalid_argument("g_estimate: eps must lie in (0, 1)");
    const double base = eps * eps / 8.0;
    const double expo = 1.0 + (4.0 / (eps * eps)) * std::log(1.0 / eps);
    return expo * std::log(base);
}

double g_estimate(double eps) { return std::exp(g_estimate_log(eps)); }

RieszSelection riesz_subset_select(const Frame& f, double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("riesz_subset_select: delta must lie in (0, 1)");
    if (!is_parseval(f))
        throw std::invalid_argument("riesz_subset_select: input is not Parseval");
    for (std::size_t i = 0; i < f.size(); ++i)
        if (norm_sq(f.vector(i)) < 0.5 - 1e-9)
            throw std::invalid_argument(
                "riesz_subset_select: a vector has squared norm below 1/2");

    const std::size_t target = floor_tol((1.0 - delta) * static_cast<double>(f.dim));
    const ComplexMatrix gram_full = f.synthesis.adjoint() * f.synthesis;

    RieszSelection out;
    out.target_bound = g_estimate(delta);
    std::vector<std::size_t> sigma;
    std::vector<char> used(f.size(), 0);
    double current_bound = 1.0;

    for (std::size_t step = 0; step < target; ++step) {
        double best_val = -1.0;
        std::size_t best_j = f.size();
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (used[j]) continue;
            const std::size_t k = sigma.size() + 1;
            ComplexMatrix g(k, k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) {
                    const std::size_t ia = (a + 1 == k) ? j : sigma[a];
                    const std::size_t ib = (b + 1 == k) ? j : sigma[b];
                    g.at(a, b) = gram_full.at(ia, ib);
                }
            const double val = lambda_min(g);
            if (val > best_val) {
                best_val = val;
                best_j = j;
            }
        }
        sigma.push_back(best_j);
        used[best_j] = 1;
        current_bound = best_val;
    }

    std::sort(sigma.begin(), sigma.end());
    out.indices = sigma;
    out.lower_riesz_bound = sigma.empty() ? 1.0 : current_bound;
    out.estimate_met = out.lower_riesz_bound >= out.target_bound;
    return out;
}

RemovalCertificate remove_parseval_smallnorm(const Frame& f, double eps,
                                             std::optional<std::size_t> keep_cap) {
    if (!is_parseval(f))
        throw std::invalid_argument("remove_parseval_smallnorm: input is not Parseval");
    const std::size_t m = f.size();
    const std::size_t n = f.dim;
    check_eps_range(eps, m, n, "remove_parseval_smallnorm");
    for (std::size_t i = 0; i < m; ++i)
        if (norm_sq(f.vector(i)) > 0.5 + 1e-9)
            throw std::invalid_argument(
                "remove_parseval_smallnorm: a vector has squared norm above 1/2");

    const double ratio = static_cast<double>(m) / static_cast<double>(n);
    const double delta = eps / (2.0 * ratio - 1.0);
    const std::size_t cap = keep_cap.value_or(ceil_tol((1.0 + eps) * static_cast<double>(n)));
    const std::size_t sigma_target =
        std::max(floor_tol((1.0 - delta) * static_cast<double>(m - n)),
                 m > cap ? m - cap : std::size_t{0});

    const ComplementSelection sel = greedy_complement_selection(f.synthesis, sigma_target);

    RemovalCertificate cert;
    cert.complement_kept = sel.sigma;
    cert.selected = complement_of(sel.sigma, m);
    cert.cardinality_bound = cap;
    cert.delta = delta;
    cert.certified_ratio = g_estimate(delta);
    cert.constructive_bound = sel.kept_bound;
    cert.achieved_ratio = lambda_min(frame_operator(subframe(f, cert.selected)));
    cert.estimate_met = cert.constructive_bound >= cert.certified_ratio;
    if (cert.selected.size() > cap)
        throw std::runtime_error("remove_parseval_smallnorm: cardinality bound violated");
    return cert;
}

RemovalCertificate remove_parseval(const Frame& f, double eps,
                                   std::optional<std::size_t> keep_cap) {
    if (!is_parseval(f))
        throw std::invalid_argument("remove_parseval: input is not Parseval");
    const std::size_t m = f.size();
    const std::size_t n = f.dim;
    check_eps_range(eps, m, n, "remove_parseval");

    const double ratio = static_cast<double>(m) / static_cast<double>(n);
    const double delta = eps / (2.0 * ratio - 1.0);
    const std::size_t cap = keep_cap.value_or(ceil_tol((1.0 + eps) * static_cast<double>(n)));

    // duplicate and halve: copies 2i and 2i+1 hold f_i / sqrt 2
    ComplexMatrix doubled(n, 2 * m);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cx half = f.synthesis.at(k, i) * inv_sqrt2;
            doubled.at(k, 2 * i) = half;
            doubled.at(k, 2 * i + 1) = half;
        }

    const std::size_t sigma_target =
        std::max(floor_tol((1.0 - delta) * static_cast<double>(2 * m - n)),
                 2 * m > cap ? 2 * m - cap : std::size_t{0});
    const ComplementSelection sel = greedy_complement_selection(doubled, sigma_target);

    std::vector<char> kept(m, 0);
    {
        std::vector<char> in_sigma(2 * m, 0);
        for (std::size_t i : sel.sigma) in_sigma[i] = 1;
        for (std::size_t i = 0; i < m; ++i)
            if (!in_sigma[2 * i] || !in_sigma[2 * i + 1]) kept[i] = 1;
    }

    RemovalCertificate cert;
    for (std::size_t i = 0; i < m; ++i)
        if (kept[i]) cert.selected.push_back(i);
    cert.complement_kept = sel.sigma; // indices into the doubled family
    cert.cardinality_bound = cap;
    cert.delta = delta;
    cert.certified_ratio = g_estimate(delta);
    cert.constructive_bound = sel.kept_bound;
    cert.achieved_ratio = lambda_min(frame_operator(subframe(f, cert.selected)));
    cert.estimate_met = cert.constructive_bound >= cert.certified_ratio;
    if (cert.selected.size() > cap)
        throw std::runtime_error("remove_parseval: cardinality bound violated");
    return cert;
}

RemovalCertificate finite_removal(const Frame& f, double eps,
                                  std::optional<std::size_t> keep_cap) {
    const FrameBounds b = frame_bounds(f);
    if (b.lower <= kRankTol * b.upper)
        throw std::invalid_argument("finite_removal: input does not span");
    const Frame normalized = parseval_normalize(f);
    return remove_parseval(normalized, eps, keep_cap);
}

OracleResult exhaustive_oracle(const Frame& f, std::size_t cap) {
    const std::size_t m = f.size();
    const std::size_t n = f.dim;
    if (m > 32)
        throw std::invalid_argument("exhaustive_oracle: family too large (M > 32)");
    if (cap > m)
        throw std::invalid_argument("exhaustive_oracle: cap exceeds family size");

    // suffix operators for the pruning bound
    std::vector<ComplexMatrix> suffix(m + 1, ComplexMatrix(n, n));
    for (std::size_t j = m; j-- > 0;) {
        suffix[j] = suffix[j + 1];
        add_outer(suffix[j], f.synthesis, j);
    }

    OracleResult best;
    best.best_lambda_min = 0.0; // value of the empty subset
    std::vector<std::size_t> path;

    // include-first depth-first search visits subsets in lexicographic order,
    // so updating only on strict improvement returns the lexicographically
    // smallest maximizer
    auto dfs = [&](auto&& self, std::size_t pos, const ComplexMatrix& s) -> void {
        if (pos == m || path.size() == cap) return;
        {
            ComplexMatrix bound = s + suffix[pos];
            if (lambda_min(bound) <= best.best_lambda_min) return;
        }
        // include pos
        ComplexMatrix s2 = s;
        add_outer(s2, f.synthesis, pos);
        path.push_back(pos);
        const double val = lambda_min(s2);
        if (val > best.best_lambda_min) {
            best.best_lambda_min = val;
            best.subset = path;
        }
        self(self, pos + 1, s2);
        path.pop_back();
        // exclude pos
        self(self, pos + 1, s);
    };
    dfs(dfs, 0, ComplexMatrix(n, n));
    return best;
}

} // namespace framekit
