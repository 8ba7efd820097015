// sle_lab: command-line surface of the laboratory.  Runs any experiment or
// formula evaluation reproducibly, writes JSON reports (17-significant-digit
// floats) and CSV series, and turns regression reports into plot-ready data.
//
// Exit codes: 0 success, 2 statistical gate failure (|z| > 3 after the
// stated allowance), 1 usage or runtime error.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "slelab/coulomb_gas.hpp"
#include "slelab/exact_solutions.hpp"
#include "slelab/formulas.hpp"
#include "slelab/monte_carlo.hpp"
#include "slelab/percolation.hpp"
#include "slelab/sampler.hpp"
#include "slelab/trace_evaluator.hpp"
#include "slelab/verification.hpp"

using namespace slelab;

static constexpr const char* kVersion = "slelab 1.0.0";

// ---------------------------------------------------------------------------
// JSON report writer.  Hand-rolled so float formatting is pinned to %.17g and
// key order is deterministic: re-running a config reproduces the report
// byte-for-byte.
// ---------------------------------------------------------------------------

class Json {
public:
    std::string dump() const { return body_; }

    Json& obj_begin(const std::string& key = "") { return open(key, '{'); }
    Json& obj_end() { return close('}'); }
    Json& arr_begin(const std::string& key = "") { return open(key, '['); }
    Json& arr_end() { return close(']'); }

    Json& field(const std::string& key, double v) { return raw(key, dbl(v)); }
    Json& field(const std::string& key, std::uint64_t v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%" PRIu64, v);
        return raw(key, buf);
    }
    Json& field(const std::string& key, bool v) { return raw(key, v ? "true" : "false"); }
    Json& field(const std::string& key, const std::string& v) {
        return raw(key, "\"" + v + "\"");
    }
    Json& field(const std::string& key, const char* v) { return field(key, std::string(v)); }
    Json& elem(double v) { return raw("", dbl(v)); }

    Json& field(const std::string& key, const std::vector<double>& vs) {
        arr_begin(key);
        for (double v : vs) elem(v);
        return arr_end();
    }

private:
    static std::string dbl(double v) {
        if (v == 0.0) v = 0.0;  // normalize -0
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
    Json& open(const std::string& key, char c) {
        prefix(key);
        body_ += c;
        fresh_ = true;
        return *this;
    }
    Json& close(char c) {
        body_ += c;
        fresh_ = false;
        return *this;
    }
    Json& raw(const std::string& key, const std::string& v) {
        prefix(key);
        body_ += v;
        return *this;
    }
    void prefix(const std::string& key) {
        if (!fresh_) body_ += ',';
        fresh_ = false;
        if (!key.empty()) body_ += "\"" + key + "\":";
    }
    std::string body_;
    bool fresh_ = true;
};

static void emit_fingerprint(Json& j, const RunFingerprint& f) {
    j.obj_begin("fingerprint")
        .field("kappa", f.kappa)
        .field("total_time", f.total_time)
        .field("n_steps", f.n_steps)
        .field("n_samples", f.n_samples)
        .field("master_seed", f.master_seed)
        .obj_end();
}

static void emit_estimate(Json& j, const std::string& key, const Estimate& e) {
    j.obj_begin(key)
        .field("value", e.value)
        .field("std_error", e.std_error)
        .field("n_samples", e.n_samples);
    if (e.target) j.field("target", *e.target);
    if (e.z_score) j.field("z_score", *e.z_score);
    j.field("unresolved_fraction", e.unresolved_fraction).field("warning", e.warning);
    emit_fingerprint(j, e.fingerprint);
    j.obj_end();
}

static void emit_fit(Json& j, const RegressionFit& f) {
    j.obj_begin("fit")
        .field("slope", f.slope)
        .field("intercept", f.intercept)
        .field("slope_std_error", f.slope_std_error)
        .field("r_squared", f.r_squared)
        .field("xs", f.xs)
        .field("ys", f.ys)
        .obj_end();
}

static void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fputs(text.c_str(), stdout);
        std::fputc('\n', stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text << "\n";
}

/// Gate outcome -> process exit code: 0 pass, 2 statistical failure.
static int gate_exit(const Estimate& e, double allowance) {
    if (!e.target) return 0;
    double dev = std::abs(e.value - *e.target);
    return dev <= 3.0 * e.std_error + allowance ? 0 : 2;
}

static cplx parse_complex(const std::string& s) {
    // Accepts "a+bi", "a-bi", "bi", "a" (also with trailing 'j').
    std::string t = s;
    if (!t.empty() && (t.back() == 'i' || t.back() == 'j')) {
        t.pop_back();
        std::size_t split = t.find_last_of("+-");
        if (split == std::string::npos || split == 0) {
            double im = (t.empty() || t == "+") ? 1.0 : (t == "-" ? -1.0 : std::stod(t));
            return {0.0, im};
        }
        std::string ims = t.substr(split);
        double im = (ims == "+") ? 1.0 : (ims == "-" ? -1.0 : std::stod(ims));
        return {std::stod(t.substr(0, split)), im};
    }
    return {std::stod(t), 0.0};
}

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

struct CommonOpts {
    std::uint64_t seed = kDefaultMasterSeed;
    std::string output;  // "" or "-" means stdout
};

static int cmd_formulas(double kappa, const CommonOpts& c) {
    KappaContext ctx(kappa);
    CoulombConstants cg = coulomb_constants(kappa);
    CurveOperatorDims one = curve_operator_dims(1, kappa);
    Json j;
    j.obj_begin()
        .field("artifact", kVersion)
        .field("experiment", "formulas")
        .field("kappa", kappa)
        .field("central_charge", cg.c)
        .field("fractal_dimension", fractal_dimension(kappa))
        .field("coupling_g", cg.g)
        .field("loop_weight_n", cg.n)
        .field("q", cg.q)
        .field("q_in_validity", cg.q_in_validity)
        .field("compactification_radius", cg.radius)
        .field("alpha0", cg.alpha0)
        .field("alpha_plus", cg.alpha_plus)
        .field("alpha_minus", cg.alpha_minus)
        .field("h_boundary_one_curve", one.h_boundary)
        .field("h_bulk_one_curve", one.h_bulk)
        .field("phase", ctx.phase == SlePhase::Simple     ? "simple"
                        : ctx.phase == SlePhase::Touching ? "touching"
                                                          : "space-filling")
        .obj_end();
    write_output(c.output, j.dump());
    return 0;
}

static int cmd_trace(double kappa, double total_time, std::size_t n_steps,
                     std::uint64_t sample_index, const std::string& driving_csv,
                     const CommonOpts& c) {
    SamplerConfig cfg;
    cfg.total_time = total_time;
    cfg.n_steps = n_steps;
    cfg.master_seed = c.seed;
    cfg.sample_index = sample_index;
    cfg.validate();
    KappaContext ctx(kappa);
    DrivingFunction d = sample_driving(ctx, cfg);
    MapChain chain = discretize(d);
    Trace tr = compute_trace(chain);
    if (c.output.empty())
        throw CLI::ValidationError("trace", "--output CSV path is required");
    write_trace_csv(tr, c.output);
    if (!driving_csv.empty()) write_driving_csv(d, driving_csv);
    Json j;
    j.obj_begin()
        .field("artifact", kVersion)
        .field("experiment", "trace")
        .field("kappa", kappa)
        .field("sample_index", sample_index)
        .field("points", tr.points.size())
        .field("trace_csv", c.output);
    if (!driving_csv.empty()) j.field("driving_csv", driving_csv);
    RunFingerprint f{kappa, total_time, n_steps, 1, c.seed};
    emit_fingerprint(j, f);
    j.obj_end();
    std::puts(j.dump().c_str());
    return 0;
}

static int cmd_left_passage(double kappa, const std::string& z_str, std::size_t n_samples,
                            const CommonOpts& c) {
    cplx z = parse_complex(z_str);
    Estimate e = estimate_left_passage(kappa, z, n_samples, c.seed);
    e.set_target(left_passage_prob(kappa, z.real(), z.imag()));
    Json j;
    j.obj_begin()
        .field("artifact", kVersion)
        .field("experiment", "left-passage")
        .field("kappa", kappa)
        .field("z_re", z.real())
        .field("z_im", z.imag());
    emit_estimate(j, "estimate", e);
    j.obj_end();
    write_output(c.output, j.dump());
    return gate_exit(e, 0.0);
}

static int cmd_crossing(double kappa, double r, std::size_t n_samples, const CommonOpts& c) {
    Estimate e = estimate_crossing_ratio(kappa, r, n_samples, c.seed);
    e.set_target(cardy_crossing(kappa, r));
    Json j;
    j.obj_begin()
        .field("artifact", kVersion)
        .field("experiment", "crossing")
        .field("kappa", kappa)
        .field("cross_ratio", r);
    emit_estimate(j, "estimate", e);
    j.obj_end();
    write_output(c.output, j.dump());
    return gate_exit(e, 0.01);
}

static int cmd_dimension(double kappa, std::size_t n_traces, std::size_t n_steps,
                         const CommonOpts& c) {
    DimensionEstimate d = estimate_box_dimension(kappa, n_traces, n_steps, c.seed);
    Json j;
    j.obj_begin()
        .field("artifact", kVersion)
        .field("experiment", "dimension")
        .field("kappa", kappa)
        .field("dimension", d.dimension)
        .field("std_error", d.std_error)
        .field("target", fractal_dimension(kappa))
        .field("deltas", d.deltas)
        .field("mean_counts", d.mean_counts);
    emit_fit(j, d.fit);
    emit_fingerprint(j, d.fingerprint);
    j.obj_end();
    write_output(c.output, j.dump());
    return 0;
}

static int cmd_derivative(double kappa, double h, double x, std::vector<double> times,
                          std::size_t n_steps, std::size_t n_samples, const CommonOpts& c) {
    if (times.empty()) times = {4.0, 8.0, 16.0, 32.0, 64.0};
    DerivativeScan scan =
        estimate_derivative_exponent(kappa, h, x, times, n_steps, n_samples, c.seed);
    Json j;
    j.obj_begin()
        .field("artifact", kVersion)
        .field("experiment", "derivative")
        .field("kappa", kappa)
        .field("h", h)
        .field("x", x)
        .field("times", scan.times)
        .field("target_slope", scan.target_slope)
        .field("analytic", scan.analytic)
        .field("absorbed_fraction", scan.absorbed_fraction);
    j.arr_begin("estimates");
    for (std::size_t k = 0; k < scan.mc.size(); ++k) {
        j.obj_begin()
            .field("time", scan.times[k])
            .field("value", scan.mc[k].value)
            .field("std_error", scan.mc[k].std_error)
            .field("target", scan.mc[k].target.value_or(0.0))
            .field("z_score", scan.mc[k].z_score.value_or(0.0))
            .obj_end();
    }
    j.arr_end();
    emit_fit(j, scan.fit);
    emit_fingerprint(j, scan.fingerprint);
    j.obj_end();
    write_output(c.output, j.dump());
    for (const Estimate& e : scan.mc)
        if (std::abs(e.z_score.value_or(0.0)) > 3.0) return 2;
    return 0;
}

static int cmd_restriction(double x0, double height, std::size_t n_samples,
                           std::vector<double> radii, const CommonOpts& c) {
    RestrictionConfig rc;
    rc.x0 = x0;
    rc.height = height;
    rc.n_samples = n_samples;
    rc.master_seed = c.seed;
    std::vector<Estimate> ladder = estimate_restriction_ladder(rc, radii);
    Json j;
    j.obj_begin()
        .field("artifact", kVersion)
        .field("experiment", "restriction")
        .field("x0", x0)
        .field("height", height);
    emit_estimate(j, "estimate", ladder.front());
    if (ladder.size() > 1) {
        j.arr_begin("ladder");
        for (const Estimate& e : ladder)
            j.obj_begin().field("value", e.value).field("std_error", e.std_error).obj_end();
        j.arr_end();
    }
    j.obj_end();
    write_output(c.output, j.dump());
    return gate_exit(ladder.front(), 0.02);
}

static int cmd_swallow(double kappa, double x0, double total_time, std::size_t n_samples,
                       std::size_t n_steps, const CommonOpts& c) {
    Estimate e = estimate_swallow_fraction(kappa, x0, total_time, n_samples, n_steps, c.seed);
    Json j;
    j.obj_begin()
        .field("artifact", kVersion)
        .field("experiment", "swallow")
        .field("kappa", kappa)
        .field("x0", x0)
        .field("total_time", total_time);
    emit_estimate(j, "estimate", e);
    j.obj_end();
    write_output(c.output, j.dump());
    return gate_exit(e, 0.01);
}

static int cmd_percolation(const std::string& mode, const std::string& z_str, double radius,
                           std::size_t n_samples, const CommonOpts& c) {
    Json j;
    j.obj_begin()
        .field("artifact", kVersion)
        .field("experiment", "percolation")
        .field("mode", mode);
    int rc = 0;
    if (mode == "left-passage") {
        cplx z = parse_complex(z_str);
        Estimate e = lattice_left_passage(z, n_samples, c.seed);
        j.field("z_re", z.real()).field("z_im", z.imag());
        emit_estimate(j, "estimate", e);
        rc = gate_exit(e, 0.02);
    } else if (mode == "dimension") {
        DimensionEstimate d = lattice_box_dimension(radius, n_samples, c.seed);
        j.field("radius", radius)
            .field("dimension", d.dimension)
            .field("std_error", d.std_error)
            .field("target", 1.75)
            .field("deltas", d.deltas)
            .field("mean_counts", d.mean_counts);
        emit_fit(j, d.fit);
        emit_fingerprint(j, d.fingerprint);
    } else {
        throw CLI::ValidationError("percolation", "--mode must be left-passage or dimension");
    }
    j.obj_end();
    write_output(c.output, j.dump());
    return rc;
}

static int cmd_verify(const std::string& suite, const std::vector<std::string>& names,
                      const CommonOpts& c) {
    const auto& criteria = acceptance_criteria();
    for (const std::string& n : names) {
        bool known = false;
        for (const auto& cr : criteria) known = known || cr.name == n;
        if (!known) throw CLI::ValidationError("verify", "unknown criterion: " + n);
    }
    int ran = 0, failed = 0;
    for (const auto& cr : criteria) {
        if (!names.empty()) {
            bool want = false;
            for (const std::string& n : names) want = want || n == cr.name;
            if (!want) continue;
        } else if (suite == "quick" && cr.suite != "exact") {
            continue;
        } else if (suite == "mc" && cr.suite != "mc") {
            continue;
        }
        CriterionResult r = cr.run(c.seed);
        std::printf("[%s] %-24s %s\n", r.pass ? "PASS" : "FAIL", cr.name.c_str(),
                    r.detail.c_str());
        std::fflush(stdout);
        ++ran;
        if (!r.pass) ++failed;
    }
    std::printf("%d/%d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 2;
}

static int cmd_plot_data(const std::string& input, const CommonOpts& c) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open report: " + input);
    nlohmann::json report = nlohmann::json::parse(in);
    if (!report.contains("fit"))
        throw CLI::ValidationError("plot-data",
                                   "report has no regression fit (not a ladder experiment)");
    const auto& fit = report["fit"];
    std::vector<double> xs = fit["xs"].get<std::vector<double>>();
    std::vector<double> ys = fit["ys"].get<std::vector<double>>();
    double slope = fit["slope"].get<double>();
    double intercept = fit["intercept"].get<double>();
    if (xs.size() != ys.size() || xs.empty())
        throw CLI::ValidationError("plot-data", "malformed fit series in report");
    std::string csv = "x,y,fit\n";
    char line[128];
    for (std::size_t k = 0; k < xs.size(); ++k) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", xs[k], ys[k],
                      intercept + slope * xs[k]);
        csv += line;
    }
    csv.pop_back();  // write_output adds the final newline
    write_output(c.output, csv);
    return 0;
}

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{"Loewner-evolution simulation and verification laboratory"};
    app.set_config("--config");
    app.require_subcommand(1);

    CommonOpts common;
    if (const char* env = std::getenv("SLE_LAB_SEED"))
        common.seed = std::strtoull(env, nullptr, 0);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", common.seed, "master seed (also via SLE_LAB_SEED)");
        sub->add_option("-o,--output", common.output, "output file (default stdout)");
    };

    double kappa = 6.0, h = 1.0, x = 1.0, x0 = 1.0, height = 1.0, r = 0.5;
    double total_time = 1.0, radius = 500.0;
    std::size_t n_samples = 10000, n_steps = 1000, n_traces = 100;
    std::uint64_t sample_index = 0;
    std::string z_str = "0+1i", driving_csv, mode = "left-passage", suite = "quick", input;
    std::vector<double> times, radii;
    std::vector<std::string> names;

    auto* formulas = app.add_subcommand("formulas", "evaluate exponent/charge formulas");
    formulas->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
    add_common(formulas);

    auto* trace = app.add_subcommand("trace", "sample one trace to CSV");
    trace->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
    trace->add_option("--time", total_time)->check(CLI::PositiveNumber);
    trace->add_option("--steps", n_steps)->check(CLI::PositiveNumber);
    trace->add_option("--sample-index", sample_index);
    trace->add_option("--driving-csv", driving_csv, "also write the driving function");
    add_common(trace);

    auto* lp = app.add_subcommand("left-passage", "left-passage probability vs Schramm's formula");
    lp->add_option("--kappa", kappa)->check(CLI::Range(1e-9, 8.0));
    lp->add_option("--z", z_str, "probe point, e.g. 1+1i");
    lp->add_option("--samples", n_samples)->check(CLI::PositiveNumber);
    add_common(lp);

    auto* cross = app.add_subcommand("crossing", "crossing probability vs Cardy's formula");
    cross->add_option("--kappa", kappa)->check(CLI::Range(4.0, 8.0));
    cross->add_option("--r", r, "cross-ratio in (0,1)")->check(CLI::Range(0.0, 1.0));
    cross->add_option("--samples", n_samples)->check(CLI::PositiveNumber);
    add_common(cross);

    auto* dim = app.add_subcommand("dimension", "box-counting dimension of sampled traces");
    dim->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
    dim->add_option("--traces", n_traces)->check(CLI::PositiveNumber);
    dim->add_option("--steps", n_steps)->check(CLI::PositiveNumber);
    add_common(dim);

    auto* deriv = app.add_subcommand("derivative", "boundary derivative-moment scaling");
    deriv->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
    deriv->add_option("--moment", h, "moment order h");
    deriv->add_option("--x", x);
    deriv->add_option("--times", times, "snapshot ladder (>= 4 ascending times)");
    deriv->add_option("--steps", n_steps)->check(CLI::PositiveNumber);
    deriv->add_option("--samples", n_samples)->check(CLI::PositiveNumber);
    add_common(deriv);

    auto* restr = app.add_subcommand("restriction", "slit-avoidance vs the restriction formula");
    restr->add_option("--x0", x0);
    restr->add_option("--height", height)->check(CLI::PositiveNumber);
    restr->add_option("--samples", n_samples)->check(CLI::PositiveNumber);
    restr->add_option("--radii", radii, "escape-radius ladder (default single radius)");
    add_common(restr);

    auto* swallow = app.add_subcommand("swallow", "boundary-point absorption fraction");
    swallow->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
    swallow->add_option("--x0", x0);
    swallow->add_option("--time", total_time)->check(CLI::PositiveNumber);
    swallow->add_option("--samples", n_samples)->check(CLI::PositiveNumber);
    swallow->add_option("--steps", n_steps)->check(CLI::PositiveNumber);
    add_common(swallow);

    auto* perc = app.add_subcommand("percolation", "lattice interface experiments");
    perc->add_option("--mode", mode)->check(CLI::IsMember({"left-passage", "dimension"}));
    perc->add_option("--z", z_str);
    perc->add_option("--radius", radius)->check(CLI::PositiveNumber);
    perc->add_option("--samples", n_samples)->check(CLI::PositiveNumber);
    add_common(perc);

    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->add_option("--suite", suite)->check(CLI::IsMember({"quick", "mc", "all"}));
    verify->add_option("names", names, "run only the named criteria");
    add_common(verify);

    auto* plot = app.add_subcommand("plot-data", "plot-ready CSV from a regression report");
    plot->add_option("--input", input, "JSON report file")->required();
    add_common(plot);

    CLI11_PARSE(app, argc, argv);

    try {
        if (formulas->parsed()) return cmd_formulas(kappa, common);
        if (trace->parsed())
            return cmd_trace(kappa, total_time, n_steps, sample_index, driving_csv, common);
        if (lp->parsed()) return cmd_left_passage(kappa, z_str, n_samples, common);
        if (cross->parsed()) return cmd_crossing(kappa, r, n_samples, common);
        if (dim->parsed()) return cmd_dimension(kappa, n_traces, n_steps, common);
        if (deriv->parsed())
            return cmd_derivative(kappa, h, x, times, n_steps, n_samples, common);
        if (restr->parsed()) return cmd_restriction(x0, height, n_samples, radii, common);
        if (swallow->parsed())
            return cmd_swallow(kappa, x0, total_time, n_samples, n_steps, common);
        if (perc->parsed()) return cmd_percolation(mode, z_str, radius, n_samples, common);
        if (verify->parsed()) return cmd_verify(suite, names, common);
        if (plot->parsed()) return cmd_plot_data(input, common);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
