#include "framekit/cli.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "framekit/gabor.hpp"
#include "framekit/io.hpp"
#include "framekit/sampling.hpp"
#include "framekit/thinning.hpp"
#include "framekit/verify.hpp"

namespace framekit {

namespace {

std::string slurp(const std::string& path) {
    try {
        return read_text_file(path);
    } catch (const std::exception& e) {
        throw std::invalid_argument(e.what());
    }
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
    if (output.empty())
        out << text;
    else
        write_text_file(output, text);
}

std::string sanitize_cell(std::string v) {
    for (char& c : v)
        if (c == ',' || c == '\n') c = ';';
    return v;
}

struct GenOptions {
    std::string kind;
    std::size_t dim = 0;
    std::size_t count = 0;
    int length = 0;
    std::uint64_t seed = 1;
    std::string output;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
    Frame f;
    if (o.kind == "onb") {
        if (o.dim == 0) throw std::invalid_argument("gen onb: --dim is required");
        f = Frame(o.dim, o.dim);
        f.synthesis = ComplexMatrix::identity(o.dim);
    } else if (o.kind == "random-parseval") {
        if (o.dim == 0 || o.count == 0)
            throw std::invalid_argument("gen random-parseval: --dim and --count are required");
        if (o.count < o.dim)
            throw std::invalid_argument("gen random-parseval: --count must be at least --dim");
        SplitMix64 rng(o.seed);
        f = random_parseval_frame(o.dim, o.count, rng);
    } else if (o.kind == "example31") {
        // e_0 .. e_{n-2} plus n copies of e_{n-1} / sqrt(n): a Parseval frame
        // whose last direction carries all the redundancy.
        if (o.dim < 2) throw std::invalid_argument("gen example31: --dim must be at least 2");
        const std::size_t n = o.dim;
        f = Frame(n, 2 * n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) f.synthesis.at(i, i) = 1.0;
        const double v = 1.0 / std::sqrt(static_cast<double>(n));
        for (std::size_t c = 0; c < n; ++c) f.synthesis.at(n - 1, n - 1 + c) = v;
    } else if (o.kind == "gabor") {
        if (o.length < 4) throw std::invalid_argument("gen gabor: --length must be at least 4");
        FiniteGaborSystem sys;
        sys.length = o.length;
        sys.window = discrete_gaussian(o.length);
        for (int x = 0; x < o.length; ++x)
            for (int omega = 0; omega < o.length; ++omega) sys.labels.push_back({x, omega});
        f = gabor_frame(sys);
    } else {
        throw std::invalid_argument("gen: unknown --kind '" + o.kind + "'");
    }
    emit(serialize_frame(f), o.output, out);
    return 0;
}

struct AnalyzeOptions {
    std::string input;
    std::string output;
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
    const Frame f = parse_frame(slurp(o.input));
    const std::size_t m = f.size();

    Report rep;
    rep.add("command", "analyze");
    rep.add("input", o.input);
    rep.add_count("vectors", m);
    rep.add_count("dimension", f.dim);

    const FrameBounds b = frame_bounds(f);
    rep.add("lower", b.lower);
    rep.add("upper", b.upper);
    const bool spanning = m > 0 && b.lower > kRankTol * b.upper;
    rep.add("frame", spanning ? "yes" : "no");
    rep.add("parseval", is_parseval(f) ? "yes" : "no");

    ReportTable table;
    table.name = "vectors";
    table.columns = {"index", "label", "norm_sq"};

    if (spanning) {
        rep.add("redundancy",
                static_cast<double>(m) / static_cast<double>(f.dim));
        const DualPair d = canonical_dual(f);
        double trace = 0.0;
        for (double v : d.diagonal) trace += v;
        rep.add("dual_diagonal_sum", trace);
        table.columns.push_back("dual_diagonal");
        for (std::size_t i = 0; i < m; ++i)
            table.rows.push_back({std::to_string(i), std::to_string(f.labels[i]),
                                  format_double(norm_sq(f.vector(i))),
                                  format_double(d.diagonal[i])});
    } else {
        for (std::size_t i = 0; i < m; ++i)
            table.rows.push_back({std::to_string(i), std::to_string(f.labels[i]),
                                  format_double(norm_sq(f.vector(i)))});
    }
    rep.tables.push_back(std::move(table));
    emit(rep.str(), o.output, out);
    return spanning ? 0 : 1;
}

struct ThinOptions {
    std::string input;
    std::string reference;
    std::string map;
    bool gabor_auto = false;
    double eps = 0.0;
    std::string mode = "strict";
    int lattice_step = 0;
    std::string output;
    std::string subframe_output;
};

void add_thin_report(Report& rep, const ThinningResult& r) {
    rep.add("eps", r.config.eps);
    rep.add("mode", r.config.strict ? "strict" : "practical");
    rep.add("truncation_radius", static_cast<double>(r.config.radius));
    rep.add("cell_radius", static_cast<double>(r.config.box_radius));
    rep.add("radius_feasible", r.config.radius_feasible ? "yes" : "no");
    rep.add("cell_feasible", r.config.box_feasible ? "yes" : "no");
    rep.add("covering_constant", r.k_a);
    rep.add("self_overlap_l1", r.s_l1);
    rep.add("truncation_error", r.truncation_error);
    rep.add("target_ratio_log", r.config.c_eps_log);
    rep.add_count("selected", r.selected.size());
    rep.add("ratio_floor", r.ratio_floor);
    rep.add("certified_lower", r.certified);
    rep.add("certification_target", r.certified_target);
    rep.add("achieved_lower", r.achieved);
    rep.add("certified", r.certified_ok ? "yes" : "no");
    if (r.transported) {
        rep.add("input_lower", r.input_lower);
        rep.add("input_upper", r.input_upper);
        rep.add("transported_lower", r.transported_lower);
        rep.add("transported_upper", r.transported_upper);
        rep.add("achieved_original", r.achieved_original);
    }
    for (std::size_t k = 0; k < r.diagnostics.size(); ++k)
        rep.add("note_" + std::to_string(k), r.diagnostics[k]);

    ReportTable boxes;
    boxes.name = "boxes";
    boxes.columns = {"center", "population", "branch", "rank",
                     "kept",   "cap",        "ratio",  "density_ratio"};
    for (const PerBoxLog& b : r.boxes)
        boxes.rows.push_back({std::to_string(b.center), std::to_string(b.population),
                              b.small_branch ? "small" : "capped", std::to_string(b.rank),
                              std::to_string(b.kept), std::to_string(b.cap),
                              format_double(b.ratio), format_double(b.density_ratio)});
    rep.tables.push_back(std::move(boxes));

    ReportTable dens;
    dens.name = "densities";
    dens.columns = {"radius", "sup_ratio", "inf_ratio"};
    for (const DensityRow& row : r.densities.rows)
        dens.rows.push_back({std::to_string(row.radius), format_double(row.sup_ratio),
                             format_double(row.inf_ratio)});
    rep.tables.push_back(std::move(dens));
}

int cmd_thin(const ThinOptions& o, std::ostream& out) {
    if (o.eps <= 0.0) throw std::invalid_argument("thin: --eps must be positive");
    const bool strict = o.mode == "strict";
    if (!strict && o.mode != "practical")
        throw std::invalid_argument("thin: --mode must be strict or practical");
    if (o.gabor_auto == (!o.reference.empty() || !o.map.empty()))
        throw std::invalid_argument(
            "thin: pass either --gabor-auto or both --reference and --map");

    const Frame f = parse_frame(slurp(o.input));

    Report rep;
    rep.add("command", "thin");
    rep.add("input", o.input);

    ThinningResult result;
    if (o.gabor_auto) {
        std::optional<int> step;
        if (o.lattice_step > 0) step = o.lattice_step;
        GaborThinOutcome outcome = gabor_thin_frame(f, o.eps, strict, step, step);
        rep.add("reference", "gabor-auto");
        rep.add("lattice_step", static_cast<double>(outcome.lattice_a));
        rep.add("density_factor", outcome.density_factor);
        result = std::move(outcome.result);
        add_thin_report(rep, result);

        ReportTable beurling;
        beurling.name = "beurling";
        beurling.columns = {"radius", "upper", "lower"};
        for (const BeurlingRow& row : outcome.beurling.rows)
            beurling.rows.push_back({std::to_string(row.radius), format_double(row.upper),
                                     format_double(row.lower)});
        rep.tables.push_back(std::move(beurling));
    } else {
        if (o.reference.empty() || o.map.empty())
            throw std::invalid_argument("thin: --reference and --map are both required");
        const Frame e = parse_frame(slurp(o.reference));
        const LocalizationMap a = parse_map(slurp(o.map));
        rep.add("reference", o.reference);
        result = extract_sparse_subframe(f, e, a, o.eps, strict);
        add_thin_report(rep, result);
    }

    if (!o.subframe_output.empty())
        write_text_file(o.subframe_output, serialize_frame(subframe(f, result.selected)));
    emit(rep.str(), o.output, out);
    return result.certified_ok ? 0 : 1;
}

struct VerifyOptions {
    std::string suite;
    std::uint64_t seed = 7;
    std::string output;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    const VerifySummary s = run_verify_suite(o.suite, o.seed);
    emit(s.report.str(), o.output, out);
    return s.ok() ? 0 : 1;
}

struct SweepOptions {
    std::vector<double> eps_grid;
    std::vector<int> length_grid;
    std::string mode = "practical";
    std::string output;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
    const bool strict = o.mode == "strict";
    if (!strict && o.mode != "practical")
        throw std::invalid_argument("sweep: --mode must be strict or practical");
    if (o.eps_grid.empty() || o.length_grid.empty())
        throw std::invalid_argument("sweep: --eps-grid and --length-grid are required");

    Report rep;
    rep.add("command", "sweep");
    rep.add("mode", o.mode);

    ReportTable table;
    table.name = "cells";
    table.columns = {"eps", "length", "selected", "density", "achieved", "status",
                     "runtime_ms"};

    bool any_error = false;
    for (double eps : o.eps_grid) {
        for (int length : o.length_grid) {
            std::vector<std::string> row{format_double(eps), std::to_string(length)};
            const auto t0 = std::chrono::steady_clock::now();
            try {
                FiniteGaborSystem sys;
                sys.length = length;
                sys.window = discrete_gaussian(length);
                for (int x = 0; x < length; ++x)
                    for (int omega = 0; omega < length; ++omega)
                        sys.labels.push_back({x, omega});
                const GaborThinOutcome g = gabor_thin(sys, eps, strict);
                row.push_back(std::to_string(g.result.selected.size()));
                row.push_back(format_double(g.beurling.rows.back().upper));
                row.push_back(format_double(g.result.achieved));
                row.push_back(g.result.certified_ok ? "certified" : "uncertified");
            } catch (const std::exception& e) {
                row.push_back("0");
                row.push_back("0");
                row.push_back("0");
                row.push_back("error: " + sanitize_cell(e.what()));
                any_error = true;
            }
            const auto t1 = std::chrono::steady_clock::now();
            const double ms =
                std::chrono::duration<double, std::milli>(t1 - t0).count();
            row.push_back(format_double(ms));
            table.rows.push_back(std::move(row));
        }
    }
    rep.tables.push_back(std::move(table));
    emit(rep.str(), o.output, out);
    return any_error ? 1 : 0;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"frame toolkit: generation, analysis, density thinning, verification"};
    app.name("framekit");
    app.require_subcommand(1);

    GenOptions gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a frame file");
    gen_cmd->add_option("--kind", gen.kind, "onb | random-parseval | example31 | gabor")
        ->required()
        ->check(CLI::IsMember({"onb", "random-parseval", "example31", "gabor"}));
    gen_cmd->add_option("--dim", gen.dim, "ambient dimension");
    gen_cmd->add_option("--count", gen.count, "number of vectors");
    gen_cmd->add_option("--length", gen.length, "time-frequency grid length");
    gen_cmd->add_option("--seed", gen.seed, "random seed (default 1)");
    gen_cmd->add_option("--output", gen.output, "write to file instead of stdout");

    AnalyzeOptions analyze;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "frame bounds, dual diagonal, redundancy");
    analyze_cmd->add_option("input", analyze.input, "frame file")->required();
    analyze_cmd->add_option("--output", analyze.output, "write report to file");

    ThinOptions thin;
    CLI::App* thin_cmd =
        app.add_subcommand("thin", "extract a sparse well-conditioned subfamily");
    thin_cmd->add_option("input", thin.input, "frame file")->required();
    thin_cmd->add_option("--reference", thin.reference, "reference frame file");
    thin_cmd->add_option("--map", thin.map, "localization map file");
    thin_cmd->add_flag("--gabor-auto", thin.gabor_auto,
                       "derive reference and map from time-frequency labels");
    thin_cmd->add_option("--eps", thin.eps, "density slack, must be positive")->required();
    thin_cmd->add_option("--mode", thin.mode, "strict | practical (default strict)")
        ->check(CLI::IsMember({"strict", "practical"}));
    thin_cmd->add_option("--lattice-step", thin.lattice_step,
                         "override the reference lattice step (gabor-auto only)");
    thin_cmd->add_option("--output", thin.output, "write report to file");
    thin_cmd->add_option("--subframe-output", thin.subframe_output,
                         "write the selected subfamily as a frame file");

    VerifyOptions verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run a property suite");
    verify_cmd
        ->add_option("suite", verify.suite,
                     "naimark | truncation | sandwich | densities | gabor-tight")
        ->required()
        ->check(CLI::IsMember({"naimark", "truncation", "sandwich", "densities",
                               "gabor-tight"}));
    verify_cmd->add_option("--seed", verify.seed, "random seed (default 7)");
    verify_cmd->add_option("--output", verify.output, "write report to file");

    SweepOptions sweep;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "thin full time-frequency grids over a parameter grid");
    sweep_cmd->add_option("--eps-grid", sweep.eps_grid, "comma-separated eps values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--length-grid", sweep.length_grid, "comma-separated grid lengths")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--mode", sweep.mode, "strict | practical (default practical)")
        ->check(CLI::IsMember({"strict", "practical"}));
    sweep_cmd->add_option("--output", sweep.output, "write report to file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen, out);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze, out);
        if (thin_cmd->parsed()) return cmd_thin(thin, out);
        if (verify_cmd->parsed()) return cmd_verify(verify, out);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep, out);
        err << "no command given\n";
        return 2;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

} // namespace framekit
