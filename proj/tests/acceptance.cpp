// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion carries a wall-clock budget; tolerances are pinned below.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "framekit/cli.hpp"
#include "framekit/frame.hpp"
#include "framekit/gabor.hpp"
#include "framekit/io.hpp"
#include "framekit/localization.hpp"
#include "framekit/removal.hpp"
#include "framekit/sampling.hpp"
#include "framekit/verify.hpp"

using namespace framekit;

namespace {

constexpr double kParsevalTol = 1e-9;  // frame bounds of generated Parseval families
constexpr double kOracleTol = 1e-12;   // exact best-subset value comparisons
constexpr double kSplitTol = 1e-9;     // coefficient energy split defect
constexpr double kGreedyTol = 1e-9;    // oracle-vs-greedy and certificate slack
constexpr double kTraceTol = 1e-8;     // dual diagonal trace identity
constexpr double kTightTol = 1e-9;     // full-window redundancy defect
constexpr double kAddTol = 1e-12;      // disjoint-union density additivity
constexpr double kDensityTol = 1e-9;   // density cap slack in the end-to-end run

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

double norm2(const std::vector<cx>& v) {
    double s = 0.0;
    for (const cx& z : v) s += std::norm(z);
    return s;
}

std::vector<cx> apply_synthesis(const Frame& f, const std::vector<cx>& c) {
    std::vector<cx> out(f.dim, cx(0.0));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t k = 0; k < f.dim; ++k) out[k] += c[i] * f.synthesis.at(k, i);
    return out;
}

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = run_command(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string meta_value(const std::string& report, const std::string& key) {
    std::istringstream in(report);
    std::string line;
    const std::string prefix = "# " + key + ": ";
    while (std::getline(in, line))
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    throw Failure("report is missing the '" + key + "' field");
}

std::vector<std::vector<std::string>> table_rows(const std::string& report,
                                                 const std::string& name) {
    std::istringstream in(report);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    bool inside = false;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        if (line.rfind("## ", 0) == 0) {
            inside = line.substr(3) == name;
            header_skipped = false;
            continue;
        }
        if (!inside || line.empty()) continue;
        if (!header_skipped) {
            header_skipped = true;
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    if (rows.empty()) throw Failure("report is missing the '" + name + "' table");
    return rows;
}

Frame gen_via_cli(const std::vector<std::string>& args) {
    const CliRun r = cli(args);
    require(r.code == 0, "generator exited with code " + std::to_string(r.code));
    return parse_frame(r.out);
}

Frame gabor_grid(int length) {
    FiniteGaborSystem sys;
    sys.length = length;
    sys.window = discrete_gaussian(length);
    for (int x = 0; x < length; ++x)
        for (int omega = 0; omega < length; ++omega) sys.labels.push_back({x, omega});
    return gabor_frame(sys);
}

LocalizationMap identity_map_line(int length) {
    LocalizationMap a;
    a.group = IndexGroup(1, length, 1);
    a.targets.resize(static_cast<std::size_t>(length));
    for (std::size_t i = 0; i < a.targets.size(); ++i) a.targets[i] = i;
    return a;
}

// 1. The generated one-deficient family (a basis minus nothing, with the last
//    direction split into N scaled copies) is Parseval, and the best subset of
//    size N has lower bound exactly 1/N.
void criterion_forced_redundancy() {
    for (std::size_t n : {4u, 8u, 16u}) {
        const Frame f =
            gen_via_cli({"gen", "--kind", "example31", "--dim", std::to_string(n)});
        require(f.size() == 2 * n - 1, "family size should be 2N-1");
        const FrameBounds b = frame_bounds(f);
        require(std::abs(b.lower - 1.0) <= kParsevalTol &&
                    std::abs(b.upper - 1.0) <= kParsevalTol,
                "generated family is not Parseval to 1e-9");
        const OracleResult best = exhaustive_oracle(f, n);
        require(std::abs(best.best_lambda_min - 1.0 / static_cast<double>(n)) <= kOracleTol,
                "best subset bound should equal 1/N at N=" + std::to_string(n));
    }
}

// 2. For random Parseval families, coefficient energy splits exactly between
//    the family and its orthonormal-completion complement.
void criterion_energy_split() {
    SplitMix64 rng(202);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 2 + static_cast<std::size_t>(trial % 5);
        const std::size_t m = dim + 1 + static_cast<std::size_t>(trial) % (dim + 2);
        const Frame f = random_parseval_frame(dim, m, rng);
        const Frame g = naimark_complement(f);
        for (int v = 0; v < 100; ++v) {
            std::vector<cx> c(m);
            for (cx& z : c) z = rng.next_gaussian();
            const double total = norm2(c);
            const double split = norm2(apply_synthesis(f, c)) + norm2(apply_synthesis(g, c));
            require(std::abs(total - split) <= kSplitTol * std::max(1.0, total),
                    "energy split defect exceeded 1e-9");
        }
    }
}

// 3. Subset-removal certificates on random families: cardinality cap
//    ceil(1.4 N), positive whitened lower bound, bound at least both the
//    closed-form floor and the constructive greedy certificate.
void criterion_removal_certificates() {
    SplitMix64 rng(303);
    const double eps = 0.4;
    for (double ratio : {1.5, 2.0, 3.0}) {
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t n = 4 + 2 * static_cast<std::size_t>(trial % 4);
            const std::size_t m = static_cast<std::size_t>(ratio * static_cast<double>(n) + 0.5);
            const Frame f = random_gaussian_frame(n, m, rng);
            const RemovalCertificate cert = finite_removal(f, eps);
            const auto cap =
                static_cast<std::size_t>(std::ceil((1.0 + eps) * static_cast<double>(n)));
            require(cert.selected.size() <= cap, "kept set exceeded ceil(1.4 N)");
            require(cert.achieved_ratio > 0.0, "whitened lower bound is not positive");
            require(cert.achieved_ratio >= g_estimate(eps / (2.0 * ratio - 1.0)),
                    "whitened lower bound fell below the closed-form floor");
            require(cert.achieved_ratio >= cert.constructive_bound - kGreedyTol,
                    "achieved bound fell below the constructive certificate");
        }
    }
}

// 4. On every small instance, the exhaustive subset search confirms a subset
//    within the cardinality cap at least as good as the greedy selection.
void criterion_oracle_dominates() {
    const double eps = 0.5;
    SplitMix64 rng(404);
    std::vector<Frame> instances;
    for (const auto& [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{
             {2, 4}, {2, 6}, {3, 6}, {3, 9}, {4, 8}, {4, 12}, {5, 10}, {6, 12}})
        instances.push_back(random_parseval_frame(n, m, rng));
    for (std::size_t n : {4u, 5u, 6u})
        instances.push_back(
            gen_via_cli({"gen", "--kind", "example31", "--dim", std::to_string(n)}));
    {
        // doubled orthonormal basis: half-norm copies, exact ties
        Frame dup(3, 6);
        const double r = 1.0 / std::sqrt(2.0);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t c = 0; c < 2; ++c) dup.synthesis.at(i, 2 * i + c) = r;
        instances.push_back(dup);
    }

    for (const Frame& f : instances) {
        const auto cap = static_cast<std::size_t>(
            std::ceil((1.0 + eps) * static_cast<double>(f.dim)));
        const RemovalCertificate greedy = finite_removal(f, eps);
        const OracleResult best = exhaustive_oracle(f, cap);
        require(best.subset.size() <= cap, "oracle subset exceeded the cap");
        require(best.best_lambda_min > 0.0, "oracle found no spanning subset");
        require(best.best_lambda_min >= greedy.achieved_ratio - kGreedyTol,
                "greedy beat the exhaustive search");
    }
}

// 5. Truncating analysis coefficients at radius R perturbs the frame operator
//    by at most the tail-driven error bound, including the intermediate
//    cross-term bound, on 50 randomized localized configurations.
void criterion_truncation_bound() {
    const VerifySummary s = run_verify_suite("truncation", 7);
    require(s.failed == 0, std::to_string(s.failed) + " truncation trials violated the bound");
    require(s.passed == 50, "expected 50 truncation trials");
}

// 6. Transported subframe bounds (A*A', B*B') bracket the true restricted
//    bounds on 100 random family/subset pairs.
void criterion_sandwich_bounds() {
    const VerifySummary s = run_verify_suite("sandwich", 7);
    require(s.failed == 0, std::to_string(s.failed) + " sandwich trials had negative slack");
    require(s.passed == 100, "expected 100 sandwich trials");
}

// 7. Full time-frequency grids act as L * ||g||^2 times the identity for the
//    Gaussian and for random unit windows.
void criterion_grid_tightness() {
    const VerifySummary s = run_verify_suite("gabor-tight", 7);
    require(s.failed == 0, std::to_string(s.failed) + " grids failed the tightness check");
    require(s.passed == 18, "expected 18 tightness checks");
}

// 8. End-to-end: generate the full grid on a 16-cycle, thin it at eps = 0.5 in
//    practical mode through the command line, and check the per-box caps, the
//    spanning bound of the emitted subfamily, and the selected density.
void criterion_end_to_end() {
    const std::string grid_path = "/tmp/framekit_acceptance_grid.txt";
    const std::string report_path = "/tmp/framekit_acceptance_report.txt";
    const std::string sub_path = "/tmp/framekit_acceptance_sub.txt";

    CliRun gen = cli({"gen", "--kind", "gabor", "--length", "16", "--output", grid_path});
    require(gen.code == 0, "grid generation failed");

    const CliRun thin = cli({"thin", grid_path, "--gabor-auto", "--eps", "0.5", "--mode",
                             "practical", "--output", report_path, "--subframe-output",
                             sub_path});
    require(thin.code == 0 || thin.code == 1,
            "thinning exited with code " + std::to_string(thin.code));
    const std::string report = read_text_file(report_path);

    const std::size_t selected = std::stoull(meta_value(report, "selected"));
    require(selected > 0 && selected < 256, "selection should be a proper subset");
    for (const auto& row : table_rows(report, "boxes")) {
        require(row.size() >= 6, "boxes table lost columns");
        require(std::stoull(row[4]) <= std::stoull(row[5]), "a box exceeded its count cap");
    }
    const auto densities = table_rows(report, "densities");
    const double sup_at_report = parse_double(densities.back()[1]);
    require(sup_at_report <= 1.5 + kDensityTol,
            "selected density exceeded 1+eps at the report radius");
    require(parse_double(meta_value(report, "achieved_lower")) > 0.0,
            "selected subfamily bound is not positive");

    const CliRun an = cli({"analyze", sub_path});
    require(an.code == 0, "emitted subfamily does not span");
    require(parse_double(meta_value(an.out, "lower")) > 0.0,
            "analyzer reports a nonpositive lower bound");

    std::remove(grid_path.c_str());
    std::remove(report_path.c_str());
    std::remove(sub_path.c_str());
}

// 9. Dual-diagonal trace equals the dimension on a batch of frames; the
//    full-window redundancy of a full grid equals its length; windowed
//    densities add exactly across disjoint unions.
void criterion_redundancy_identities() {
    SplitMix64 rng(909);
    std::vector<Frame> batch;
    batch.push_back(gen_via_cli({"gen", "--kind", "example31", "--dim", "4"}));
    batch.push_back(gen_via_cli({"gen", "--kind", "example31", "--dim", "8"}));
    {
        Frame mercedes(2, 3);
        const double scale = std::sqrt(2.0 / 3.0);
        for (int k = 0; k < 3; ++k) {
            const double angle = 0.5 * 3.14159265358979323846 +
                                 2.0 * 3.14159265358979323846 * k / 3.0;
            mercedes.synthesis.at(0, static_cast<std::size_t>(k)) = scale * std::cos(angle);
            mercedes.synthesis.at(1, static_cast<std::size_t>(k)) = scale * std::sin(angle);
        }
        batch.push_back(mercedes);
    }
    batch.push_back(random_parseval_frame(3, 7, rng));
    batch.push_back(random_parseval_frame(5, 12, rng));
    batch.push_back(random_gaussian_frame(4, 9, rng));
    batch.push_back(gabor_grid(8));
    batch.push_back(gabor_grid(12));

    for (const Frame& f : batch) {
        const DualPair dp = canonical_dual(f);
        double trace = 0.0;
        for (double d : dp.diagonal) trace += d;
        require(std::abs(trace - static_cast<double>(f.dim)) <= kTraceTol,
                "dual diagonal trace missed the dimension");
    }

    for (int length : {8, 12}) {
        const Frame f = gabor_grid(length);
        std::vector<std::size_t> full(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) full[i] = i;
        const RedundancyProfile prof = redundancy_profile(f, {full});
        require(std::abs(prof.rows.back().redundancy - static_cast<double>(length)) <=
                    kTightTol,
                "full-window redundancy of the grid should equal its length");
    }

    const LocalizationMap a = identity_map_line(64);
    const std::vector<std::size_t> centers = {0, 17, 40};
    const std::vector<int> radii = {5, 16, 10};
    for (int pair = 0; pair < 20; ++pair) {
        std::vector<std::size_t> j1, j2, both;
        for (std::size_t el = 0; el < 64; ++el) {
            const double u = rng.next_double();
            if (u < 0.3) {
                j1.push_back(el);
                both.push_back(el);
            } else if (u < 0.6) {
                j2.push_back(el);
                both.push_back(el);
            }
        }
        if (j1.empty() || j2.empty()) continue;
        const WindowedDensity w1 = windowed_density(a, j1, centers, radii);
        const WindowedDensity w2 = windowed_density(a, j2, centers, radii);
        const WindowedDensity wu = windowed_density(a, both, centers, radii);
        for (std::size_t t = 0; t < radii.size(); ++t) {
            require(std::abs(wu.ratios[t] - w1.ratios[t] - w2.ratios[t]) <= kAddTol,
                    "windowed density failed to add over a disjoint union");
            const double box = static_cast<double>(2 * radii[t] + 1);
            const long long cu = std::llround(wu.ratios[t] * box);
            const long long c1 = std::llround(w1.ratios[t] * box);
            const long long c2 = std::llround(w2.ratios[t] * box);
            require(cu == c1 + c2, "window counts failed to add over a disjoint union");
        }
    }
}

// 10. Even residues on a 64-cycle with the identity map: every window ratio at
//     radius 16 equals 17/33 (even center) or 16/33 (odd center), matching a
//     direct count.
void criterion_density_counts() {
    const LocalizationMap a = identity_map_line(64);
    std::vector<std::size_t> evens;
    for (std::size_t el = 0; el < 64; el += 2) evens.push_back(el);

    const DensityTable table = density_table(a, evens);
    require(table.report_radius == 16, "report radius should be L/4 = 16");
    require(table.rows.back().sup_ratio == 17.0 / 33.0, "sup ratio at radius 16 should be 17/33");
    require(table.rows.back().inf_ratio == 16.0 / 33.0, "inf ratio at radius 16 should be 16/33");

    std::vector<std::size_t> centers(64);
    for (std::size_t c = 0; c < 64; ++c) centers[c] = c;
    const std::vector<int> radii(64, 16);
    const WindowedDensity w = windowed_density(a, evens, centers, radii);
    for (std::size_t c = 0; c < 64; ++c) {
        int count = 0;
        for (int off = -16; off <= 16; ++off) {
            const std::size_t el = static_cast<std::size_t>(((static_cast<int>(c) + off) % 64 + 64) % 64);
            if (el % 2 == 0) ++count;
        }
        require(w.ratios[c] == static_cast<double>(count) / 33.0,
                "window ratio disagrees with the direct count");
        require(count == (c % 2 == 0 ? 17 : 16), "direct count itself is off");
    }
}

struct Criterion {
    int number;
    std::string name;
    double budget_seconds;
    std::function<void()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "forced-redundancy family", 10.0, criterion_forced_redundancy},
        {2, "complement energy split", 30.0, criterion_energy_split},
        {3, "removal certificates", 120.0, criterion_removal_certificates},
        {4, "oracle dominates greedy", 120.0, criterion_oracle_dominates},
        {5, "truncation error bound", 120.0, criterion_truncation_bound},
        {6, "transported subframe bounds", 60.0, criterion_sandwich_bounds},
        {7, "full-grid tightness", 60.0, criterion_grid_tightness},
        {8, "end-to-end grid thinning", 300.0, criterion_end_to_end},
        {9, "redundancy identities", 60.0, criterion_redundancy_identities},
        {10, "window density counts", 5.0, criterion_density_counts},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string problem;
        try {
            c.run();
        } catch (const std::exception& e) {
            problem = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (problem.empty() && seconds > c.budget_seconds)
            problem = "exceeded the " + format_double(c.budget_seconds) + "s budget";
        char timing[32];
        std::snprintf(timing, sizeof(timing), "%.1fs", seconds);
        if (problem.empty()) {
            std::cout << "criterion " << c.number << " " << c.name << ": PASS (" << timing
                      << ")\n";
        } else {
            ++failures;
            std::cout << "criterion " << c.number << " " << c.name << ": FAIL (" << timing
                      << ") - " << problem << "\n";
        }
    }
    std::cout << "acceptance: " << (criteria.size() - static_cast<std::size_t>(failures))
              << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
