#include "qudit_phase/cli.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qudit_phase/asymptotics.hpp"
#include "qudit_phase/completeness.hpp"
#include "qudit_phase/context.hpp"
#include "qudit_phase/harper.hpp"
#include "qudit_phase/io.hpp"
#include "qudit_phase/min_uncertainty.hpp"
#include "qudit_phase/quasiprob.hpp"
#include "qudit_phase/random.hpp"
#include "qudit_phase/selftest.hpp"

namespace qudit_phase::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kMaxDimension = 4096;

struct CommonOptions {
    int d = 5;
    double theta = kPi / 4;
    std::uint64_t seed = 42;
    std::string format = "csv";
};

struct CommonFlags {
    bool dimension = true;
    bool theta = false;
    bool format = true;
};

void add_common(CLI::App* cmd, CommonOptions& opt, CommonFlags flags = {}) {
    if (flags.dimension)
        cmd->add_option("-d,--d", opt.d, "dimension")
            ->check(CLI::Range(1, kMaxDimension))
            ->capture_default_str();
    if (flags.theta)
        cmd->add_option("--theta", opt.theta, "theta parameter in (0, pi/2)")
            ->capture_default_str();
    cmd->add_option("--seed", opt.seed, "PRNG seed, recorded in output metadata")
        ->capture_default_str();
    if (flags.format)
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
}

Metadata base_metadata(const std::string& tool, const CommonOptions& opt) {
    return {
        {"tool", tool},
        {"d", std::to_string(opt.d)},
        {"seed", std::to_string(opt.seed)},
        {"generator_version", std::string(kGeneratorVersion)},
    };
}

void report_written(const std::string& path) { std::cout << "wrote " << path << "\n"; }

// ---------------------------------------------------------------- harper

int run_harper(const CommonOptions& opt, const std::string& out_path) {
    const QuditContext ctx = build_context(opt.d);
    const RealMatrix h_mat = build_harper(ctx, opt.theta);
    const GroundPair pair = ground_pair_dense(h_mat, opt.theta);
    const PowerSolveResult power = ground_pair_power(h_mat, 1.0, 1e-13, opt.theta);
    const SymmetryReport symmetry = verify_gamma_symmetries(pair, ctx);

    if (opt.format == "json") {
        json j;
        j["d"] = opt.d;
        j["theta"] = opt.theta;
        j["h"] = pair.h;
        j["gap"] = pair.gap;
        j["power_iterations"] = power.iterations;
        j["h_power_minus_dense"] = power.pair.h - pair.h;
        j["residuals"] = {{"fourier", symmetry.fourier_residual},
                          {"reflection", symmetry.reflection_residual},
                          {"expectation", symmetry.expectation_residual}};
        std::vector<double> gamma(pair.gamma.data(), pair.gamma.data() + pair.gamma.size());
        j["gamma"] = gamma;
        j["seed"] = opt.seed;
        j["generator_version"] = std::string(kGeneratorVersion);
        write_text_file(out_path, j.dump(2) + "\n");
    } else {
        Metadata meta = base_metadata("harper", opt);
        meta.emplace_back("theta", format_double(opt.theta));
        meta.emplace_back("h", format_double(pair.h));
        meta.emplace_back("gap", format_double(pair.gap));
        meta.emplace_back("power_iterations", std::to_string(power.iterations));
        meta.emplace_back("h_power_minus_dense", format_double(power.pair.h - pair.h));
        meta.emplace_back("fourier_residual", format_double(symmetry.fourier_residual));
        meta.emplace_back("reflection_residual", format_double(symmetry.reflection_residual));
        meta.emplace_back("expectation_residual", format_double(symmetry.expectation_residual));
        std::string out;
        for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
        out += "a,gamma\n";
        for (int a = 0; a < opt.d; ++a)
            out += std::to_string(a) + "," + format_double(pair.gamma(a)) + "\n";
        write_text_file(out_path, out);
    }
    report_written(out_path);
    return 0;
}

// ---------------------------------------------------------------- states

int run_states(const CommonOptions& opt, int seeds, int iterations,
               const std::string& out_path) {
    const QuditContext ctx = build_context(opt.d);
    const GroundPair pair = ground_pair_dense(build_harper(ctx));
    const double h2 = pair.h * pair.h;
    const double resolution = resolution_of_identity_residual(pair, ctx);
    const CertaintyMaximum best = maximize_certainty(ctx, pair, seeds, iterations, opt.seed);

    std::vector<std::pair<std::string, double>> samples;
    samples.emplace_back("gamma", certainty({pair.gamma.cast<Complex>(), Basis::position}, ctx));
    Vector basis0 = Vector::Zero(opt.d);
    basis0(0) = 1.0;
    samples.emplace_back("basis0", certainty({basis0, Basis::position}, ctx));
    Vector uniform = Vector::Constant(opt.d, Complex(1.0 / std::sqrt(double(opt.d)), 0.0));
    samples.emplace_back("uniform", certainty({uniform, Basis::position}, ctx));
    Rng rng(opt.seed);
    for (int k = 0; k < 3; ++k)
        samples.emplace_back("haar" + std::to_string(k),
                             certainty({rng.haar_state(opt.d), Basis::position}, ctx));

    if (opt.format == "json") {
        json j;
        j["d"] = opt.d;
        j["h"] = pair.h;
        j["h_squared"] = h2;
        j["resolution_residual"] = resolution;
        j["optimizer"] = {{"seeds", seeds},
                          {"iterations", iterations},
                          {"value", best.value},
                          {"gap_to_h_squared", h2 - best.value},
                          {"matched_alpha", best.matched_alpha},
                          {"matched_beta", best.matched_beta},
                          {"fidelity", best.fidelity},
                          {"best_seed", best.best_seed}};
        json cert = json::object();
        for (const auto& [label, value] : samples) cert[label] = value;
        j["certainty"] = cert;
        j["seed"] = opt.seed;
        j["generator_version"] = std::string(kGeneratorVersion);
        write_text_file(out_path, j.dump(2) + "\n");
    } else {
        std::string out;
        for (const auto& [k, v] : base_metadata("states", opt)) out += "# " + k + "=" + v + "\n";
        out += "quantity,value\n";
        out += "h," + format_double(pair.h) + "\n";
        out += "h_squared," + format_double(h2) + "\n";
        out += "resolution_residual," + format_double(resolution) + "\n";
        out += "optimizer_value," + format_double(best.value) + "\n";
        out += "optimizer_gap," + format_double(h2 - best.value) + "\n";
        out += "optimizer_matched_alpha," + std::to_string(best.matched_alpha) + "\n";
        out += "optimizer_matched_beta," + std::to_string(best.matched_beta) + "\n";
        out += "optimizer_fidelity," + format_double(best.fidelity) + "\n";
        for (const auto& [label, value] : samples)
            out += "certainty_" + label + "," + format_double(value) + "\n";
        write_text_file(out_path, out);
    }
    report_written(out_path);
    return 0;
}

// ------------------------------------------------------------- quasiprob

int run_quasiprob(const CommonOptions& opt, const std::string& kind_name,
                  const std::string& state_name, int basis_index,
                  const std::string& roundtrip_mode, const std::string& out_path,
                  const std::string& report_path) {
    const QuditContext ctx = build_context(opt.d);
    const GroundPair pair = ground_pair_dense(build_harper(ctx));
    const PhasePointKind kind =
        kind_name == "wigner" ? PhasePointKind::wigner : PhasePointKind::husimi;

    DensityMatrix rho;
    if (state_name == "gamma") {
        rho = pure_density(pair.gamma.cast<Complex>());
    } else if (state_name == "basis") {
        if (basis_index < 0 || basis_index >= opt.d)
            throw std::invalid_argument("basis index out of range");
        Vector v = Vector::Zero(opt.d);
        v(basis_index) = 1.0;
        rho = pure_density(v);
    } else if (state_name == "mixed") {
        rho.rho = Matrix::Identity(opt.d, opt.d) / double(opt.d);
    } else { // random
        Rng rng(opt.seed);
        rho = rng.random_density(opt.d);
    }

    const PhasePointSet pps = phase_points(kind, pair, ctx);
    const QuasiDistribution dist = quasi_distribution(rho, pps);

    // presentation clamp: tiny negatives are reported as zero, the raw
    // values stay in the library
    QuasiDistribution shown = dist;
    if (kind == PhasePointKind::husimi)
        shown.values = shown.values.unaryExpr(
            [](double v) { return v < 0.0 && v >= -1e-12 ? 0.0 : v; });

    Metadata meta = base_metadata("quasiprob", opt);
    meta.emplace_back("kind", kind_name);
    meta.emplace_back("state", state_name);
    if (opt.format == "json")
        write_distribution_json(shown, out_path, opt.seed);
    else
        write_distribution_csv(shown, out_path, meta);
    report_written(out_path);

    const Sharpness sh = sharpness(pps, ctx);
    const double gap = optimality_gap(rho, pair, ctx);

    bool do_roundtrip = false;
    if (roundtrip_mode == "on")
        do_roundtrip = true; // invalid combinations surface as errors below
    else if (roundtrip_mode == "auto")
        do_roundtrip = kind == PhasePointKind::husimi && opt.d % 2 == 1;

    std::optional<double> roundtrip_error;
    if (do_roundtrip) {
        const DensityMatrix back = reconstruct_state(dist, pair, ctx);
        roundtrip_error = (back.rho - rho.rho).cwiseAbs().maxCoeff();
    }

    json j;
    j["d"] = opt.d;
    j["kind"] = kind_name;
    j["state"] = state_name;
    const RealVector mpos = marginal(dist, MarginalAxis::position);
    const RealVector mmom = marginal(dist, MarginalAxis::momentum);
    j["marginal_position"] = std::vector<double>(mpos.data(), mpos.data() + mpos.size());
    j["marginal_momentum"] = std::vector<double>(mmom.data(), mmom.data() + mmom.size());
    j["sharpness"] = {{"sigma", sh.sigma}, {"tau", sh.tau}};
    j["optimality_gap_of_state"] = gap;
    if (roundtrip_error) j["roundtrip_error"] = *roundtrip_error;
    j["seed"] = opt.seed;
    j["generator_version"] = std::string(kGeneratorVersion);
    write_text_file(report_path, j.dump(2) + "\n");
    report_written(report_path);
    return 0;
}

// -------------------------------------------------------------- complete

int run_complete(const CommonOptions& opt, double zero_tol, const std::string& table_path,
                 const std::string& report_path) {
    const QuditContext ctx = build_context(opt.d);
    const GroundPair pair = ground_pair_dense(build_harper(ctx));
    const FourierCoeffTable table = coeff_table(pair, ctx);
    Metadata meta = base_metadata("complete", opt);
    write_coeff_csv(table, table_path, meta);
    report_written(table_path);
    write_completeness_report_json(table, zero_tol, report_path,
                                   {{"seed", std::to_string(opt.seed)},
                                    {"generator_version", std::string(kGeneratorVersion)}});
    report_written(report_path);
    return 0;
}

// ---------------------------------------------------------------- asympt

int run_asympt(const CommonOptions& opt, int d_min, int d_max, int gamma_d, int cont_d,
               double sigma, double width, const std::string& prefix) {
    const Metadata shared = {{"tool", "asympt"},
                             {"seed", std::to_string(opt.seed)},
                             {"generator_version", std::string(kGeneratorVersion)}};

    Metadata h_meta = shared;
    h_meta.emplace_back("dmin", std::to_string(d_min));
    h_meta.emplace_back("dmax", std::to_string(d_max));
    const auto h_rows = h_comparison_table(d_min, d_max);
    write_h_table_csv(h_rows, prefix + "_h.csv", h_meta);
    report_written(prefix + "_h.csv");

    Metadata gamma_meta = shared;
    gamma_meta.emplace_back("d", std::to_string(gamma_d));
    const auto gamma_rows = gamma_comparison_table(gamma_d);
    write_gamma_table_csv(gamma_rows, prefix + "_gamma.csv", gamma_meta);
    report_written(prefix + "_gamma.csv");

    const QuditContext ctx = build_context(cont_d);
    const GroundPair pair = ground_pair_power(build_harper(ctx)).pair;
    const ContinuumScheme scheme = make_scheme(cont_d, sigma);
    const StateVector state =
        width > 0.0 ? gaussian_packet(scheme, width)
                    : StateVector{pair.gamma.cast<Complex>(), Basis::position};
    const ContinuumReport report = continuum_expansion_check(state, scheme, ctx);

    json j;
    j["d"] = cont_d;
    j["sigma"] = sigma;
    j["state"] = width > 0.0 ? "gaussian" : "gamma";
    if (width > 0.0) j["width"] = width;
    j["dx"] = report.dx;
    j["dp"] = report.dp;
    j["dxdp"] = report.dx * report.dp;
    j["q_deviation"] = report.q_deviation;
    j["p_deviation"] = report.p_deviation;
    j["sum_lhs"] = report.sum_lhs;
    j["expansion_envelope"] = report.expansion_envelope;
    j["inequality_envelope"] = report.inequality_envelope;
    j["expansions_ok"] = report.expansions_ok();
    j["inequality_ok"] = report.inequality_ok();
    j["product_ok"] = report.product_ok();
    j["mathieu_residual_at_cont_d"] = mathieu_residual(pair, ctx);
    j["seed"] = opt.seed;
    j["generator_version"] = std::string(kGeneratorVersion);
    write_text_file(prefix + "_continuum.json", j.dump(2) + "\n");
    report_written(prefix + "_continuum.json");
    return 0;
}

// ----------------------------------------------------------- plot-script

int run_plot_script(const std::string& table_path, const std::string& kind,
                    const std::string& out_path) {
    const std::string table = read_text_file(table_path);
    int data_rows = 0;
    bool past_header = false;
    std::istringstream lines(table);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!past_header) {
            past_header = true; // header row
            continue;
        }
        ++data_rows;
    }
    if (data_rows == 0) throw std::runtime_error("table has no data rows: " + table_path);

    std::string script;
    script += "# gnuplot script; run: gnuplot -persist " + out_path + "\n";
    script += "set datafile separator \",\"\n";
    script += "set key left top\n";
    if (kind == "h") {
        script += "set xlabel \"d\"\n";
        script += "set ylabel \"h\"\n";
    } else {
        script += "set xlabel \"a\"\n";
        script += "set ylabel \"gamma_a\"\n";
    }
    script += "plot \"" + table_path + "\" every ::1 using 1:2 with points pt 7 title \"exact\", \\\n";
    script += "     \"" + table_path + "\" every ::1 using 1:3 with points pt 9 title \"asymptotic\"\n";
    write_text_file(out_path, script);
    report_written(out_path);
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"finite-dimensional phase space toolkit"};
    app.require_subcommand(1);

    CommonOptions harper_opt;
    std::string harper_out;
    CLI::App* harper_cmd =
        app.add_subcommand("harper", "ground pair, gap and symmetry residuals");
    add_common(harper_cmd, harper_opt, {.theta = true});
    harper_cmd->add_option("--out", harper_out, "output file");

    CommonOptions states_opt;
    int states_seeds = 32, states_iterations = 500;
    std::string states_out;
    CLI::App* states_cmd =
        app.add_subcommand("states", "certainty table, completeness residual, optimizer");
    add_common(states_cmd, states_opt);
    states_cmd->add_option("--seeds", states_seeds, "optimizer starts")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    states_cmd->add_option("--iterations", states_iterations, "ascent iterations per start")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    states_cmd->add_option("--out", states_out, "output file");

    CommonOptions quasi_opt;
    std::string quasi_kind = "husimi", quasi_state = "gamma", quasi_roundtrip = "auto";
    int quasi_index = 0;
    std::string quasi_out, quasi_report;
    CLI::App* quasi_cmd =
        app.add_subcommand("quasiprob", "distribution grid, marginals, sharpness");
    add_common(quasi_cmd, quasi_opt);
    quasi_cmd->add_option("--kind", quasi_kind, "phase point kind")
        ->check(CLI::IsMember({"husimi", "wigner"}))
        ->capture_default_str();
    quasi_cmd->add_option("--state", quasi_state, "analyzed state")
        ->check(CLI::IsMember({"gamma", "basis", "mixed", "random"}))
        ->capture_default_str();
    quasi_cmd->add_option("--index", quasi_index, "basis index for --state basis")
        ->capture_default_str();
    quasi_cmd->add_option("--roundtrip", quasi_roundtrip, "tomography round trip")
        ->check(CLI::IsMember({"auto", "on", "off"}))
        ->capture_default_str();
    quasi_cmd->add_option("--out", quasi_out, "distribution file");
    quasi_cmd->add_option("--report", quasi_report, "report file");

    CommonOptions complete_opt;
    double complete_tol = 1e-10;
    std::string complete_table, complete_report;
    CLI::App* complete_cmd =
        app.add_subcommand("complete", "ground-state Fourier tables and zero set");
    add_common(complete_cmd, complete_opt, {.format = false});
    complete_cmd->add_option("--zero-tol", complete_tol, "zero detection tolerance")
        ->capture_default_str();
    complete_cmd->add_option("--table", complete_table, "f/g table CSV");
    complete_cmd->add_option("--report", complete_report, "JSON report");

    CommonOptions asympt_opt;
    int asympt_dmin = 2, asympt_dmax = 20, asympt_gamma_d = 9, asympt_cont_d = 101;
    double asympt_sigma = 1.0, asympt_width = 0.0;
    std::string asympt_prefix = "asympt";
    CLI::App* asympt_cmd =
        app.add_subcommand("asympt", "large-d tables and continuum checks");
    add_common(asympt_cmd, asympt_opt, {.dimension = false, .format = false});
    asympt_cmd->add_option("--dmin", asympt_dmin, "h table lower d")
        ->check(CLI::Range(1, kMaxDimension))->capture_default_str();
    asympt_cmd->add_option("--dmax", asympt_dmax, "h table upper d")
        ->check(CLI::Range(1, kMaxDimension))->capture_default_str();
    asympt_cmd->add_option("--gamma-d", asympt_gamma_d, "dimension for the gamma table")
        ->check(CLI::Range(1, kMaxDimension))->capture_default_str();
    asympt_cmd->add_option("--cont-d", asympt_cont_d, "dimension for the continuum check")
        ->check(CLI::Range(1, kMaxDimension))->capture_default_str();
    asympt_cmd->add_option("--sigma", asympt_sigma, "scale factor")->capture_default_str();
    asympt_cmd->add_option("--width", asympt_width,
                           "gaussian packet width (0: use the exact ground state)")
        ->capture_default_str();
    asympt_cmd->add_option("--prefix", asympt_prefix, "output path prefix")
        ->capture_default_str();

    std::string plot_table, plot_kind = "h", plot_out = "plot.gp";
    CLI::App* plot_cmd = app.add_subcommand("plot-script", "emit a gnuplot script for a table");
    plot_cmd->add_option("--table", plot_table, "CSV table path")->required();
    plot_cmd->add_option("--kind", plot_kind, "table kind")
        ->check(CLI::IsMember({"h", "gamma"}))
        ->capture_default_str();
    plot_cmd->add_option("--out", plot_out, "script path")->capture_default_str();

    CommonOptions selftest_opt;
    int selftest_max_d = 9;
    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the invariant suite");
    add_common(selftest_cmd, selftest_opt, {.dimension = false, .format = false});
    selftest_cmd->add_option("--max-d", selftest_max_d, "largest dimension in the sweep")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (harper_cmd->parsed()) {
            if (harper_out.empty())
                harper_out = harper_opt.format == "json" ? "harper.json" : "harper.csv";
            return run_harper(harper_opt, harper_out);
        }
        if (states_cmd->parsed()) {
            if (states_out.empty())
                states_out = states_opt.format == "json" ? "states.json" : "states.csv";
            return run_states(states_opt, states_seeds, states_iterations, states_out);
        }
        if (quasi_cmd->parsed()) {
            if (quasi_out.empty())
                quasi_out = quasi_opt.format == "json" ? "quasiprob.json" : "quasiprob.csv";
            if (quasi_report.empty()) quasi_report = "quasiprob_report.json";
            return run_quasiprob(quasi_opt, quasi_kind, quasi_state, quasi_index,
                                 quasi_roundtrip, quasi_out, quasi_report);
        }
        if (complete_cmd->parsed()) {
            if (complete_table.empty()) complete_table = "complete_fg.csv";
            if (complete_report.empty()) complete_report = "complete_report.json";
            return run_complete(complete_opt, complete_tol, complete_table, complete_report);
        }
        if (asympt_cmd->parsed())
            return run_asympt(asympt_opt, asympt_dmin, asympt_dmax, asympt_gamma_d,
                              asympt_cont_d, asympt_sigma, asympt_width, asympt_prefix);
        if (plot_cmd->parsed()) return run_plot_script(plot_table, plot_kind, plot_out);
        if (selftest_cmd->parsed()) {
            const int failures = run_selftest(selftest_max_d, selftest_opt.seed, std::cout);
            return failures == 0 ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

} // namespace qudit_phase::cli
