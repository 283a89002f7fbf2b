#include "framekit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "framekit/gabor.hpp"
#include "framekit/localization.hpp"
#include "framekit/sampling.hpp"

namespace framekit {

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kSlackTol = 1e-9;
constexpr double kRatioTol = 1e-12;
constexpr double kTightTol = 1e-9;

std::vector<cx> apply_synthesis(const Frame& f, const std::vector<cx>& c) {
    std::vector<cx> out(f.dim, cx(0.0, 0.0));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t k = 0; k < f.dim; ++k) out[k] += f.synthesis.at(k, i) * c[i];
    return out;
}

ComplexMatrix gram(const Frame& f) { return f.synthesis.adjoint() * f.synthesis; }

void start(VerifySummary& s, const std::string& suite, std::uint64_t seed,
           std::vector<std::string> columns) {
    s.suite = suite;
    s.report.add("suite", suite);
    s.report.add("seed", std::to_string(seed));
    ReportTable t;
    t.name = "checks";
    t.columns = std::move(columns);
    s.report.tables.push_back(std::move(t));
}

void finish(VerifySummary& s) {
    s.report.add_count("passed", s.passed);
    s.report.add_count("failed", s.failed);
    s.report.add("ok", s.ok() ? "yes" : "no");
}

void record(VerifySummary& s, std::vector<std::string> row, bool pass) {
    row.push_back(pass ? "pass" : "fail");
    s.report.tables.back().rows.push_back(std::move(row));
    if (pass)
        ++s.passed;
    else
        ++s.failed;
}

LocalizationMap identity_map(int length) {
    LocalizationMap a;
    a.group = IndexGroup(1, length, 1);
    a.targets.resize(static_cast<std::size_t>(length));
    std::iota(a.targets.begin(), a.targets.end(), std::size_t{0});
    return a;
}

} // namespace

VerifySummary verify_naimark(std::uint64_t seed) {
    VerifySummary s;
    start(s, "naimark", seed,
          {"trial", "dim", "m", "parseval_defect", "gram_defect", "split_defect", "result"});
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < 100; ++t) {
        const std::size_t dim = 2 + t % 4;
        const std::size_t m = dim + 1 + t % (dim + 1);
        const Frame f = random_parseval_frame(dim, m, rng);
        const Frame comp = naimark_complement(f);

        ComplexMatrix sc = frame_operator(comp);
        for (std::size_t k = 0; k < sc.rows(); ++k) sc.at(k, k) -= 1.0;
        const double parseval_defect = sc.max_abs();

        ComplexMatrix gsum = gram(f) + gram(comp);
        for (std::size_t k = 0; k < m; ++k) gsum.at(k, k) -= 1.0;
        const double gram_defect = gsum.max_abs();

        double split_defect = 0.0;
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<cx> c(m);
            double energy = 0.0;
            for (auto& v : c) {
                v = rng.next_gaussian();
                energy += std::norm(v);
            }
            const double through = norm_sq(apply_synthesis(f, c)) +
                                   norm_sq(apply_synthesis(comp, c));
            split_defect =
                std::max(split_defect, std::abs(energy - through) / std::max(1.0, energy));
        }

        const bool pass = parseval_defect <= kIdentityTol && gram_defect <= kIdentityTol &&
                          split_defect <= kIdentityTol;
        record(s,
               {std::to_string(t), std::to_string(dim), std::to_string(m),
                format_double(parseval_defect), format_double(gram_defect),
                format_double(split_defect)},
               pass);
    }
    finish(s);
    return s;
}

VerifySummary verify_truncation(std::uint64_t seed) {
    VerifySummary s;
    start(s, "truncation", seed,
          {"trial", "length", "r0", "radius", "subset", "lhs", "bound", "gap", "gap_bound",
           "result"});
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < 50; ++t) {
        const int length = (t % 2 == 0) ? 32 : 64;
        const std::size_t n = static_cast<std::size_t>(length);
        LocalizationMap a = identity_map(length);
        Frame e(n, n);
        e.synthesis = ComplexMatrix::identity(n);

        const double decay = 0.5 + 0.3 * static_cast<double>(t % 3);
        Frame raw(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const int dist = a.group.norm(a.group.sub(k, i));
                cx v = 0.3 * std::exp(-decay * dist) * rng.next_gaussian();
                if (k == i) v += 1.0;
                raw.synthesis.at(k, i) = v;
            }
        const Frame f = parseval_normalize(raw);

        const LocalizationProfile p = localization_profile(f, a, e);
        const int r0 = truncation_r0(p.r, p.k_a, p.s_l1);
        const int radius =
            std::min(r0 + static_cast<int>(t % 3), a.group.diameter() + 1);

        std::vector<std::size_t> j;
        for (std::size_t i = 0; i < n; ++i)
            if (rng.next_double() < 0.5) j.push_back(i);

        const TruncationCheck c = truncation_error_check(f, e, a, radius, j);
        const bool pass = c.holds && c.guaranteed && c.parseval_input;
        record(s,
               {std::to_string(t), std::to_string(length), std::to_string(c.r0),
                std::to_string(radius), std::to_string(j.size()), format_double(c.lhs),
                format_double(c.bound), format_double(c.analysis_gap),
                format_double(c.analysis_bound)},
               pass);
    }
    finish(s);
    return s;
}

VerifySummary verify_sandwich(std::uint64_t seed) {
    VerifySummary s;
    start(s, "sandwich", seed,
          {"trial", "dim", "m", "subset", "lower_slack", "upper_slack", "result"});
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < 100; ++t) {
        const std::size_t dim = 2 + t % 5;
        const std::size_t m = dim + t % (dim + 4);
        const Frame f = random_gaussian_frame(dim, m, rng);

        std::vector<std::size_t> j;
        for (std::size_t i = 0; i < m; ++i)
            if (rng.next_double() < 0.5) j.push_back(i);
        if (j.empty()) j.push_back(t % m);

        const SandwichResult r = subframe_bounds_sandwich(f, j);
        const bool pass = r.lower_slack >= -kSlackTol && r.upper_slack >= -kSlackTol;
        record(s,
               {std::to_string(t), std::to_string(dim), std::to_string(m),
                std::to_string(j.size()), format_double(r.lower_slack),
                format_double(r.upper_slack)},
               pass);
    }
    finish(s);
    return s;
}

VerifySummary verify_densities(std::uint64_t seed) {
    VerifySummary s;
    start(s, "densities", seed, {"check", "detail", "result"});
    SplitMix64 rng(seed);

    {
        // Alternating set on Z_64: every window of 33 consecutive positions
        // holds 16 or 17 even residues, so the report-radius ratios are
        // exactly 16/33 and 17/33.
        LocalizationMap a = identity_map(64);
        std::vector<std::size_t> evens;
        for (std::size_t i = 0; i < 64; i += 2) evens.push_back(i);
        const DensityTable t = density_table(a, evens);
        const bool pass = t.report_radius == 16 &&
                          std::abs(t.upper - 17.0 / 33.0) <= kRatioTol &&
                          std::abs(t.lower - 16.0 / 33.0) <= kRatioTol;
        record(s, {"alternating_z64", format_double(t.upper)}, pass);
    }
    {
        LocalizationMap a = identity_map(32);
        std::vector<std::size_t> all(32);
        std::iota(all.begin(), all.end(), std::size_t{0});
        const DensityTable t = density_table(a, all);
        bool pass = true;
        for (const auto& row : t.rows)
            pass = pass && std::abs(row.sup_ratio - 1.0) <= kRatioTol &&
                   std::abs(row.inf_ratio - 1.0) <= kRatioTol;
        record(s, {"full_set_ratio_one", format_double(t.upper)}, pass);
    }
    {
        LocalizationMap a = identity_map(32);
        const DensityTable t = density_table(a, {});
        bool pass = true;
        for (const auto& row : t.rows)
            pass = pass && row.sup_ratio == 0.0 && row.inf_ratio == 0.0;
        record(s, {"empty_set_ratio_zero", format_double(t.upper)}, pass);
    }
    {
        // Window ratios stay inside the table's sup/inf envelope.
        LocalizationMap a = identity_map(32);
        std::vector<std::size_t> j;
        for (std::size_t i = 0; i < 32; ++i)
            if (rng.next_double() < 0.4) j.push_back(i);
        const DensityTable t = density_table(a, j);
        bool pass = true;
        for (const auto& row : t.rows) {
            std::vector<std::size_t> centers;
            std::vector<int> radii;
            for (int rep = 0; rep < 5; ++rep) {
                centers.push_back(rng.next_u64() % a.group.size());
                radii.push_back(row.radius);
            }
            const WindowedDensity w = windowed_density(a, j, centers, radii);
            pass = pass && w.lo >= row.inf_ratio - kRatioTol && w.hi <= row.sup_ratio + kRatioTol;
        }
        record(s, {"window_within_envelope", std::to_string(j.size())}, pass);
    }
    for (std::size_t trial = 0; trial < 20; ++trial) {
        // Disjoint split: window counts and ratios add exactly.
        LocalizationMap a = identity_map(16);
        std::vector<std::size_t> j1, j2, ju;
        for (std::size_t i = 0; i < 16; ++i) {
            if (rng.next_double() < 0.5) continue;
            ju.push_back(i);
            if (rng.next_double() < 0.5)
                j1.push_back(i);
            else
                j2.push_back(i);
        }
        std::vector<std::size_t> centers;
        std::vector<int> radii;
        for (int rep = 0; rep < 3; ++rep) {
            centers.push_back(rng.next_u64() % a.group.size());
            radii.push_back(static_cast<int>(rng.next_u64() % (a.group.report_radius() + 1)));
        }
        const WindowedDensity w1 = windowed_density(a, j1, centers, radii);
        const WindowedDensity w2 = windowed_density(a, j2, centers, radii);
        const WindowedDensity wu = windowed_density(a, ju, centers, radii);
        bool pass = true;
        double worst = 0.0;
        for (std::size_t k = 0; k < centers.size(); ++k) {
            const double gap = std::abs(w1.ratios[k] + w2.ratios[k] - wu.ratios[k]);
            worst = std::max(worst, gap);
            pass = pass && gap <= kRatioTol;
            std::size_t count = 0;
            for (std::size_t i : ju)
                if (a.group.norm(a.group.sub(a.targets[i], centers[k])) <= radii[k]) ++count;
            const double scaled =
                wu.ratios[k] * static_cast<double>(a.group.box_size(radii[k]));
            pass = pass && std::abs(scaled - static_cast<double>(count)) <= 1e-6;
        }
        record(s, {"disjoint_additivity_" + std::to_string(trial), format_double(worst)}, pass);
    }
    {
        LocalizationMap a = identity_map(16);
        const bool pass = std::abs(covering_constant(a) - 1.0) <= kRatioTol;
        record(s, {"covering_identity", format_double(covering_constant(a))}, pass);
    }
    {
        LocalizationMap a;
        a.group = IndexGroup(1, 16, 1);
        a.targets.resize(32);
        for (std::size_t i = 0; i < 32; ++i) a.targets[i] = i / 2;
        const bool pass = std::abs(covering_constant(a) - 2.0) <= kRatioTol;
        record(s, {"covering_doubled", format_double(covering_constant(a))}, pass);
    }
    finish(s);
    return s;
}

VerifySummary verify_gabor_tight(std::uint64_t seed) {
    VerifySummary s;
    start(s, "gabor-tight", seed, {"length", "window", "defect", "result"});
    SplitMix64 rng(seed);
    for (int length : {8, 12, 16}) {
        std::vector<std::pair<std::string, std::vector<cx>>> windows;
        windows.push_back({"gaussian", discrete_gaussian(length)});
        for (int k = 0; k < 5; ++k)
            windows.push_back({"random_" + std::to_string(k),
                               random_unit_window(static_cast<std::size_t>(length), rng)});

        for (const auto& [name, g] : windows) {
            FiniteGaborSystem sys;
            sys.length = length;
            sys.window = g;
            for (int x = 0; x < length; ++x)
                for (int omega = 0; omega < length; ++omega) sys.labels.push_back({x, omega});

            double nsq = 0.0;
            for (const cx& v : g) nsq += std::norm(v);
            const double scale = static_cast<double>(length) * nsq;

            ComplexMatrix op = frame_operator(gabor_frame(sys));
            for (int k = 0; k < length; ++k) op.at(k, k) -= scale;
            const double defect = op.max_abs();
            record(s, {std::to_string(length), name, format_double(defect)},
                   defect <= kTightTol);
        }
    }
    finish(s);
    return s;
}

VerifySummary run_verify_suite(const std::string& name, std::uint64_t seed) {
    if (name == "naimark") return verify_naimark(seed);
    if (name == "truncation") return verify_truncation(seed);
    if (name == "sandwich") return verify_sandwich(seed);
    if (name == "densities") return verify_densities(seed);
    if (name == "gabor-tight") return verify_gabor_tight(seed);
    throw std::invalid_argument("unknown verification suite: " + name);
}

} // namespace framekit
