#include "framelab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "framelab/config.hpp"
#include "framelab/convex_body.hpp"
#include "framelab/decay_profile.hpp"
#include "framelab/erdos.hpp"
#include "framelab/errors.hpp"
#include "framelab/format.hpp"
#include "framelab/fourier_body.hpp"
#include "framelab/gram.hpp"
#include "framelab/pinned.hpp"
#include "framelab/pointset.hpp"
#include "framelab/rng.hpp"

namespace framelab::cli {

namespace {

using nlohmann::json;

// ----------------------------------------------------------------------
// Output helpers. CSV always carries a header row; numbers are rendered at
// full precision so reruns are byte-identical.
// ----------------------------------------------------------------------

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_json(const std::string& path, const json& doc) {
    write_text(path, doc.dump(2) + "\n");
}

struct BodyOptions {
    std::string kind = "ball";
    int dim = 2;
    std::vector<double> semi_axes;
    double radius = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--body", kind, "body kind: ball | ellipsoid")
            ->check(CLI::IsMember({"ball", "ellipsoid"}))
            ->capture_default_str();
        cmd->add_option("--dim", dim, "ambient dimension (>= 2)")->capture_default_str();
        cmd->add_option("--radius", radius, "ball radius")->capture_default_str();
        cmd->add_option("--semi-axes", semi_axes, "ellipsoid semi-axes (dim values)");
    }

    ConvexBody make() const {
        if (kind == "ellipsoid") {
            if (semi_axes.empty()) throw std::domain_error("--semi-axes is required for an ellipsoid");
            return ConvexBody::ellipsoid(semi_axes);
        }
        if (!semi_axes.empty()) {
            ConvexBody b = ConvexBody::ellipsoid(semi_axes);
            if (b.kind != ConvexBody::Kind::ball)
                throw std::domain_error("ball semi-axes must all be equal");
            return b;
        }
        return ConvexBody::ball(dim, radius);
    }
};

json body_json(const ConvexBody& body) {
    return json{{"kind", body.kind == ConvexBody::Kind::ball ? "ball" : "ellipsoid"},
                {"dim", body.dim},
                {"semi_axes", body.semi_axes}};
}

json density_json(const DensityEstimate& est) {
    return json{{"radii", est.radii},
                {"counts", est.counts},
                {"densities", est.densities},
                {"trend", trend_name(est.trend)}};
}

json profile_summary_json(const ProfileSummary& summary) {
    json per_pin = json::array();
    for (const auto& pp : summary.per_pin)
        per_pin.push_back(json{{"pin_index", pp.pin_index}, {"tail_proxy", pp.tail_proxy}});
    return json{{"per_pin", per_pin},
                {"head_max", summary.head_max},
                {"tail_max", summary.tail_max},
                {"ratio_threshold", summary.ratio_threshold},
                {"zero_floor", summary.zero_floor},
                {"verdict", profile_verdict_name(summary.verdict)}};
}

std::vector<double> parse_range(const std::string& text) {
    // "lo:hi:step" inclusive range, or a comma-separated list.
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0.0, hi = 0.0, step = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(text);
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0))
            throw std::domain_error("range must be lo:hi:step");
        for (long long k = 0;; ++k) {
            const double v = lo + step * static_cast<double>(k);
            if (v > hi * (1.0 + 1e-12) + 1e-12) break;
            out.push_back(v);
            if (k > 1000000) throw resource_error("range too long");
        }
    } else {
        std::istringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            out.push_back(std::stod(tok));
        }
    }
    if (out.empty()) throw std::domain_error("empty range");
    return out;
}

// ----------------------------------------------------------------------
// gen
// ----------------------------------------------------------------------

struct GenOptions {
    std::vector<double> lattice_spec;      // d spacing extent
    std::vector<double> progression_spec;  // d step offset count
    std::vector<double> bessel_spec;       // d count
    std::vector<double> direction;
    double perturb_mag = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenOptions& opt) {
    int provided = 0;
    provided += !opt.lattice_spec.empty();
    provided += !opt.progression_spec.empty();
    provided += !opt.bessel_spec.empty();
    if (provided != 1)
        throw std::domain_error("choose exactly one of --lattice, --progression, --bessel-zeros");

    PointSet pts = [&] {
        if (!opt.lattice_spec.empty()) {
            if (opt.lattice_spec.size() != 3)
                throw std::domain_error("--lattice needs: d spacing extent");
            return lattice(static_cast<int>(opt.lattice_spec[0]), opt.lattice_spec[1],
                           opt.lattice_spec[2]);
        }
        if (!opt.progression_spec.empty()) {
            if (opt.progression_spec.size() != 4)
                throw std::domain_error("--progression needs: d step offset count");
            return progression_line_set(static_cast<int>(opt.progression_spec[0]),
                                        opt.progression_spec[1], opt.progression_spec[2],
                                        static_cast<int>(opt.progression_spec[3]),
                                        std::span<const double>(opt.direction));
        }
        if (opt.bessel_spec.size() != 2) throw std::domain_error("--bessel-zeros needs: d count");
        return bessel_zero_line_set(static_cast<int>(opt.bessel_spec[0]),
                                    static_cast<int>(opt.bessel_spec[1]));
    }();

    if (opt.perturb_mag > 0.0) {
        const double mag = opt.perturb_mag;
        pts = perturb(pts, [mag](double) { return mag; }, opt.seed);
    }
    save_points(pts, opt.out);
    std::cerr << "wrote " << pts.size() << " points (dim " << pts.dim() << ", separation "
              << fmt17(pts.separation()) << ") to " << opt.out << "\n";
    return 0;
}

// ----------------------------------------------------------------------
// ft
// ----------------------------------------------------------------------

struct FtOptions {
    BodyOptions body;
    double rmin = 4.0, rmax = 64.0;
    int samples = 200;
    std::vector<double> direction;
    std::string out;
};

int cmd_ft(const FtOptions& opt) {
    ConvexBody body = opt.body.make();
    ErrorScan scan = herz_error_scan(body, opt.rmin, opt.rmax, opt.samples,
                                     std::span<const double>(opt.direction));
    std::ostringstream csv;
    csv << "r,exact,main,error,scaled_error\n";
    for (const ErrorScanRow& row : scan.rows)
        csv << fmt17(row.r) << ',' << fmt17(row.exact) << ',' << fmt17(row.main_term) << ','
            << fmt17(row.error_term) << ',' << fmt17(row.scaled_error) << '\n';
    write_text(opt.out, csv.str());
    std::cerr << "max scaled error " << fmt17(scan.max_scaled_error) << "\n";
    return 0;
}

// ----------------------------------------------------------------------
// profile
// ----------------------------------------------------------------------

struct ProfileOptions {
    BodyOptions body;
    std::string points_path;
    std::vector<long> pins;  // empty = pin 0
    bool all_pins = false;
    double p = 2.0;
    std::string p_text;
    double delta = 1e-3;
    int jmin = 0;
    int jmax = -1;  // default: from data
    std::string shells = "euclidean";
    std::string out;
    std::string json_out;
};

int cmd_profile(const ProfileOptions& opt) {
    ConvexBody body = opt.body.make();
    PointSet pts = load_points(opt.points_path);
    if (pts.size() < 2) throw std::domain_error("profile: need at least two points");
    double p = opt.p;
    if (!opt.p_text.empty()) p = opt.p_text == "inf" ? kPInf : std::stod(opt.p_text);
    const ShellNorm shells = opt.shells == "rho_star" ? ShellNorm::rho_star : ShellNorm::euclidean;

    std::vector<long> pins(opt.pins);
    if (opt.all_pins) {
        pins.clear();
        for (std::size_t i = 0; i < pts.size(); ++i) pins.push_back(static_cast<long>(i));
    } else if (pins.empty()) {
        pins.push_back(0);
    }

    std::ostringstream csv;
    csv << "pin_index,j,count,c_j,sin_fraction\n";
    std::vector<DecayProfile> profiles;
    for (long pin_index : pins) {
        if (pin_index < 0 || static_cast<std::size_t>(pin_index) >= pts.size())
            throw std::domain_error("profile: pin index out of range");
        const auto pin_pt = pts.point(static_cast<std::size_t>(pin_index));
        std::vector<double> pin(pin_pt.begin(), pin_pt.end());

        int jmax = opt.jmax;
        if (jmax < opt.jmin) {
            double maxdist = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const auto q = pts.point(i);
                double d2 = 0.0;
                for (int t = 0; t < pts.dim(); ++t) d2 += (q[t] - pin[t]) * (q[t] - pin[t]);
                maxdist = std::max(maxdist, std::sqrt(d2));
            }
            if (maxdist <= 0.0) throw std::domain_error("profile: degenerate point set");
            jmax = static_cast<int>(std::floor(std::log2(maxdist)));
        }

        DecayProfile prof;
        prof.p = p;
        prof.kind = DecayProfile::Kind::empirical;
        prof.pin = pin;
        prof.pin_index = pin_index;
        const auto buckets = annulus_partition(pts, pin, opt.jmin, jmax, shells,
                                               shells == ShellNorm::rho_star ? &body : nullptr);
        for (const AnnulusBucket& bucket : buckets) {
            const double cj = empirical_cj(pts, pin, body, p, bucket.j, shells);
            const SinClusterStat stat =
                sin_cluster_fraction(pts, pin, body, p, opt.delta, bucket.j, shells);
            prof.j_values.push_back(bucket.j);
            prof.c_values.push_back(cj);
            csv << pin_index << ',' << bucket.j << ',' << bucket.members.size() << ',' << fmt17(cj)
                << ',' << fmt17(stat.fraction) << '\n';
        }
        profiles.push_back(std::move(prof));
    }
    write_text(opt.out, csv.str());

    ProfileSummary summary = profile_summary(profiles);
    json doc{{"body", body_json(body)},
             {"p", std::isinf(p) ? json("inf") : json(p)},
             {"delta", opt.delta},
             {"shells", opt.shells},
             {"summary", profile_summary_json(summary)}};
    if (!opt.json_out.empty()) write_json(opt.json_out, doc);
    return 0;
}

// ----------------------------------------------------------------------
// gram
// ----------------------------------------------------------------------

struct GramOptions {
    BodyOptions body;
    std::string points_path;
    double tol = 1e-10;
    std::string json_out;
    std::string matrix_out;
};

int cmd_gram(const GramOptions& opt) {
    ConvexBody body = opt.body.make();
    PointSet pts = load_points(opt.points_path);
    GramSpectrum spec = gram_spectrum(pts, body, opt.tol);

    std::string verdict = "frame-plausible";
    if (spec.offdiag_max <= 1e-9) verdict = "orthogonal-like";
    else if (spec.lambda_min <= 0.1) verdict = "frame-obstructed-candidate";
    json doc{{"n", spec.size},
             {"lambda_min", spec.lambda_min},
             {"lambda_max", spec.lambda_max},
             {"offdiag_max", spec.offdiag_max},
             {"verdict", verdict},
             {"note", "finite-section truncation bounds, not infinite-system frame constants; "
                      "lambda_min threshold 0.1 is a desk-scale engineering choice"}};
    write_json(opt.json_out, doc);

    if (!opt.matrix_out.empty()) {
        Matrix g = gram_matrix(pts, body);
        std::ostringstream csv;
        csv << "i,j,value\n";
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j)
                csv << i << ',' << j << ',' << fmt17(g.at(i, j)) << '\n';
        write_text(opt.matrix_out, csv.str());
    }
    return 0;
}

// ----------------------------------------------------------------------
// erdos
// ----------------------------------------------------------------------

struct ErdosOptions {
    BodyOptions body;
    std::string points_path;
    std::string mode = "one-pair";
    double c1 = 0.5, c2 = 0.0;
    long a0 = 0, a1 = 1;
    std::string out;
    std::string json_out;
};

int cmd_erdos(const ErdosOptions& opt) {
    ConvexBody body = opt.body.make();
    PointSet pts = load_points(opt.points_path);

    ResidualReport report = [&] {
        if (opt.mode == "one-pair") return residual_one_pair(pts, body);
        if (opt.mode == "two-pair")
            return residual_two_pair(pts, static_cast<std::size_t>(opt.a0),
                                     static_cast<std::size_t>(opt.a1), body);
        return general_residuals(pts, body, opt.c1, opt.c2);
    }();

    std::ostringstream csv;
    csv << "i,j,distance,value,nearest_k,residual,scaled_residual\n";
    for (const PairResidual& r : report.pairs)
        csv << r.i << ',' << r.j << ',' << fmt17(r.distance) << ',' << fmt17(r.value) << ','
            << r.nearest_k << ',' << fmt17(r.residual) << ',' << fmt17(r.scaled_residual) << '\n';
    write_text(opt.out, csv.str());

    ClassifyReport cls = classify(pts, body);
    json doc{{"mode", opt.mode},
             {"c1", report.c1},
             {"c2", report.c2},
             {"scaling_exponent", report.scaling_exponent},
             {"max_residual", report.max_residual},
             {"residual_head_max", cls.residual_head_max},
             {"residual_tail_max", cls.residual_tail_max},
             {"residuals_pass", cls.residuals_pass},
             {"collinear", cls.line.collinear},
             {"max_deviation", cls.line.max_deviation},
             {"d_mod_4", cls.d_mod_4},
             {"tension_flag", cls.tension_flag},
             {"verdict", erdos_verdict_name(cls.verdict)},
             {"note", "trend-based verdicts are finite-scale proxies for asymptotic hypotheses"}};
    if (!opt.json_out.empty()) write_json(opt.json_out, doc);
    return 0;
}

// ----------------------------------------------------------------------
// pinned
// ----------------------------------------------------------------------

struct PinnedOptions {
    BodyOptions body;
    std::string mask_path;
    double checkerboard_extent = 0.0;
    double h = 0.25;
    std::vector<double> pin;
    std::string L_text = "2:40:0.25";
    double refine = 1.0;
    int trials = 1;
    std::uint64_t seed = 0;
    std::string out;
    std::string json_out;
    // good-set experiment inputs
    std::string points_path;
    double delta = 1e-3;
    int j0 = 4;
    long pin_index = 0;
    double p = 2.0;
};

int cmd_pinned(const PinnedOptions& opt) {
    const std::vector<double> L = parse_range(opt.L_text);
    CoverageReport rep;
    if (!opt.points_path.empty()) {
        ConvexBody body = opt.body.make();
        PointSet pts = load_points(opt.points_path);
        rep = good_set_coverage_experiment(pts, body, opt.p, opt.delta, opt.j0,
                                           static_cast<std::size_t>(opt.pin_index), L);
    } else {
        GridSet grid = [&] {
            if (!opt.mask_path.empty()) return load_grid_mask(opt.mask_path);
            if (opt.checkerboard_extent > 0.0) return checkerboard_grid(opt.checkerboard_extent, opt.h);
            throw std::domain_error("pinned: provide --mask, --checkerboard, or --points");
        }();
        if (opt.pin.size() != static_cast<std::size_t>(grid.dim()))
            throw std::domain_error("pinned: --pin must match the grid dimension");
        ConvexBody body = opt.body.kind == "ball" && opt.body.semi_axes.empty()
                              ? ConvexBody::ball(grid.dim(), opt.body.radius)
                              : opt.body.make();
        rep = refinement_coverage(grid, opt.pin, body, opt.refine, opt.trials, opt.seed, L);
    }

    std::ostringstream csv;
    csv << "L,covered,witness_count\n";
    for (std::size_t i = 0; i < rep.L_values.size(); ++i)
        csv << fmt17(rep.L_values[i]) << ',' << (rep.covered[i] ? 1 : 0) << ','
            << rep.witness_count[i] << '\n';
    write_text(opt.out, csv.str());

    if (!opt.json_out.empty()) {
        json doc{{"pin", rep.pin},
                 {"L0", rep.L0 ? json(*rep.L0) : json(nullptr)},
                 {"pin_outside_extent", rep.pin_outside_extent},
                 {"refine", opt.refine},
                 {"trials", opt.trials},
                 {"note", "shells are thickened by one grid cell; refinement worst case is "
                          "sampled, not adversarial"}};
        write_json(opt.json_out, doc);
    }
    return 0;
}

// ----------------------------------------------------------------------
// coarea
// ----------------------------------------------------------------------

struct CoareaOptions {
    BodyOptions body;
    double A = 1.0, B = 2.0;
    double fpow = 0.0;  // F(t) = t^fpow
    long long mc_samples = 0;
    std::uint64_t seed = 0;
    std::string json_out;
};

int cmd_coarea(const CoareaOptions& opt) {
    ConvexBody body = opt.body.make();
    const double power = opt.fpow;
    const double value =
        coarea_shell_integral(body, [power](double t) { return std::pow(t, power); }, opt.A, opt.B);

    json doc{{"body", body_json(body)},
             {"A", opt.A},
             {"B", opt.B},
             {"fpow", opt.fpow},
             {"value", value}};

    if (opt.mc_samples > 0) {
        // Monte Carlo over the bounding box of the outer shell.
        SplitMix64 rng(opt.seed);
        std::vector<double> u(body.dim);
        double box = 1.0;
        std::vector<double> half(body.dim);
        for (int t = 0; t < body.dim; ++t) {
            half[t] = opt.B / body.semi_axes[t];
            box *= 2.0 * half[t];
        }
        double acc = 0.0;
        for (long long s = 0; s < opt.mc_samples; ++s) {
            for (int t = 0; t < body.dim; ++t) u[t] = (2.0 * rng.uniform01() - 1.0) * half[t];
            const double rho = support(body, u);
            if (rho >= opt.A && rho <= opt.B) acc += std::pow(rho, power);
        }
        doc["mc_value"] = acc / static_cast<double>(opt.mc_samples) * box;
        doc["mc_samples"] = opt.mc_samples;
    }
    write_json(opt.json_out, doc);
    return 0;
}

// ----------------------------------------------------------------------
// report
// ----------------------------------------------------------------------

struct ReportOptions {
    std::string config_path;
};

int cmd_report(const ReportOptions& opt) {
    ExperimentConfig cfg = load_config(opt.config_path);
    ConvexBody body = cfg.body.make();
    PointSet pts = cfg.pointset.make(cfg.body.dim);
    if (pts.dim() != body.dim) throw std::domain_error("report: point/body dimension mismatch");

    RieszReport riesz = riesz_report(pts, body, cfg.analysis.p);

    if (!cfg.output.csv.empty()) {
        std::ostringstream csv;
        csv << "pin_index,j,count,c_j,sin_fraction\n";
        const std::size_t pin_cap = 64;
        const std::size_t stride = pts.size() <= pin_cap ? 1 : pts.size() / pin_cap;
        for (std::size_t s = 0; s < pts.size(); s += stride) {
            const auto pin_pt = pts.point(s);
            std::vector<double> pin(pin_pt.begin(), pin_pt.end());
            double maxdist = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const auto q = pts.point(i);
                double d2 = 0.0;
                for (int t = 0; t < pts.dim(); ++t) d2 += (q[t] - pin[t]) * (q[t] - pin[t]);
                maxdist = std::max(maxdist, std::sqrt(d2));
            }
            if (maxdist <= 0.0) continue;
            const int jmax = static_cast<int>(std::floor(std::log2(maxdist)));
            const int jmin = std::min(0, jmax - 2);
            const auto buckets =
                annulus_partition(pts, pin, jmin, jmax, cfg.analysis.shells,
                                  cfg.analysis.shells == ShellNorm::rho_star ? &body : nullptr);
            for (const AnnulusBucket& bucket : buckets) {
                const double cj =
                    empirical_cj(pts, pin, body, cfg.analysis.p, bucket.j, cfg.analysis.shells);
                const SinClusterStat stat = sin_cluster_fraction(
                    pts, pin, body, cfg.analysis.p, cfg.analysis.delta, bucket.j, cfg.analysis.shells);
                csv << s << ',' << bucket.j << ',' << bucket.members.size() << ',' << fmt17(cj)
                    << ',' << fmt17(stat.fraction) << '\n';
            }
        }
        write_text(cfg.output.csv, csv.str());
    }

    json doc{{"body", body_json(body)},
             {"points", json{{"count", pts.size()}, {"separation", pts.separation()}}},
             {"gram", json{{"n", riesz.spectrum.size},
                           {"lambda_min", riesz.spectrum.lambda_min},
                           {"lambda_max", riesz.spectrum.lambda_max},
                           {"offdiag_max", riesz.spectrum.offdiag_max}}},
             {"profile", profile_summary_json(riesz.profile)},
             {"density", density_json(riesz.density)},
             {"lambda_min_above_desk_threshold", riesz.lambda_min_above_desk_threshold},
             {"verdict", riesz_verdict_name(riesz.verdict)},
             {"note", riesz.note},
             {"seed", cfg.seed}};
    write_json(cfg.output.json, doc);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"numerical laboratory for exponential frames on smooth symmetric convex bodies"};
    app.require_subcommand(1);

    GenOptions gen_opt;
    CLI::App* gen = app.add_subcommand("gen", "generate a point configuration");
    gen->add_option("--lattice", gen_opt.lattice_spec, "lattice: d spacing extent")->expected(3);
    gen->add_option("--progression", gen_opt.progression_spec, "progression: d step offset count")
        ->expected(4);
    gen->add_option("--bessel-zeros", gen_opt.bessel_spec, "scaled Bessel zeros on a line: d count")
        ->expected(2);
    gen->add_option("--direction", gen_opt.direction, "progression direction (defaults to e1)");
    gen->add_option("--perturb", gen_opt.perturb_mag, "uniform perturbation magnitude");
    gen->add_option("--seed", gen_opt.seed, "perturbation seed");
    gen->add_option("-o,--out", gen_opt.out, "output point file")->required();

    FtOptions ft_opt;
    CLI::App* ft = app.add_subcommand("ft", "indicator-transform error scan along a ray");
    ft_opt.body.attach(ft);
    ft->add_option("--rmin", ft_opt.rmin, "smallest radius (>= 1)")->capture_default_str();
    ft->add_option("--rmax", ft_opt.rmax, "largest radius")->capture_default_str();
    ft->add_option("--samples", ft_opt.samples, "number of radii")->capture_default_str();
    ft->add_option("--direction", ft_opt.direction, "scan direction (defaults to e1)");
    ft->add_option("-o,--out", ft_opt.out, "CSV output (default stdout)");

    ProfileOptions prof_opt;
    CLI::App* prof = app.add_subcommand("profile", "empirical dyadic decay profile");
    prof_opt.body.attach(prof);
    prof->add_option("--points", prof_opt.points_path, "point file")->required();
    prof->add_option("--pin", prof_opt.pins, "pin indices (repeatable)");
    prof->add_flag("--all-pins", prof_opt.all_pins, "profile every pin");
    prof->add_option("--p", prof_opt.p_text, "exponent p in [1, inf], or 'inf'");
    prof->add_option("--delta", prof_opt.delta, "phase-clustering threshold")->capture_default_str();
    prof->add_option("--jmin", prof_opt.jmin, "smallest dyadic scale")->capture_default_str();
    prof->add_option("--jmax", prof_opt.jmax, "largest dyadic scale (default: from data)");
    prof->add_option("--shells", prof_opt.shells, "euclidean | rho_star")
        ->check(CLI::IsMember({"euclidean", "rho_star"}))
        ->capture_default_str();
    prof->add_option("-o,--out", prof_opt.out, "CSV output (default stdout)");
    prof->add_option("--json", prof_opt.json_out, "JSON summary output");

    GramOptions gram_opt;
    CLI::App* gram = app.add_subcommand("gram", "normalized Gram spectrum");
    gram_opt.body.attach(gram);
    gram->add_option("--points", gram_opt.points_path, "point file")->required();
    gram->add_option("--tol", gram_opt.tol, "eigenvalue tolerance")->capture_default_str();
    gram->add_option("--json", gram_opt.json_out, "JSON output (default stdout)");
    gram->add_option("--dump-matrix", gram_opt.matrix_out, "CSV dump of the Gram matrix");

    ErdosOptions erdos_opt;
    CLI::App* erdos = app.add_subcommand("erdos", "integer-distance residual checks");
    erdos_opt.body.attach(erdos);
    erdos->add_option("--points", erdos_opt.points_path, "point file")->required();
    erdos->add_option("--mode", erdos_opt.mode, "one-pair | two-pair | general")
        ->check(CLI::IsMember({"one-pair", "two-pair", "general"}))
        ->capture_default_str();
    erdos->add_option("--c1", erdos_opt.c1, "progression step (general mode)")->capture_default_str();
    erdos->add_option("--c2", erdos_opt.c2, "progression offset (general mode)")->capture_default_str();
    erdos->add_option("--a0", erdos_opt.a0, "first anchor index (two-pair mode)")->capture_default_str();
    erdos->add_option("--a1", erdos_opt.a1, "second anchor index (two-pair mode)")->capture_default_str();
    erdos->add_option("-o,--out", erdos_opt.out, "CSV output (default stdout)");
    erdos->add_option("--json", erdos_opt.json_out, "JSON verdict output");

    PinnedOptions pin_opt;
    CLI::App* pinned = app.add_subcommand("pinned", "pinned-distance coverage scan");
    pin_opt.body.attach(pinned);
    pinned->add_option("--mask", pin_opt.mask_path, "grid mask file");
    pinned->add_option("--checkerboard", pin_opt.checkerboard_extent,
                       "checkerboard of unit squares over [0, extent]^2");
    pinned->add_option("--h", pin_opt.h, "grid resolution")->capture_default_str();
    pinned->add_option("--pin", pin_opt.pin, "pin coordinates");
    pinned->add_option("--L", pin_opt.L_text, "radii: lo:hi:step or comma list")->capture_default_str();
    pinned->add_option("--refine", pin_opt.refine, "refinement keep-fraction r in (0, 1]")
        ->capture_default_str();
    pinned->add_option("--trials", pin_opt.trials, "refinement trials")->capture_default_str();
    pinned->add_option("--seed", pin_opt.seed, "refinement seed")->capture_default_str();
    pinned->add_option("--points", pin_opt.points_path, "good-subset experiment: point file");
    pinned->add_option("--delta", pin_opt.delta, "good-subset delta")->capture_default_str();
    pinned->add_option("--j0", pin_opt.j0, "good-subset starting scale")->capture_default_str();
    pinned->add_option("--pin-index", pin_opt.pin_index, "good-subset pin index")->capture_default_str();
    pinned->add_option("--p", pin_opt.p, "good-subset exponent")->capture_default_str();
    pinned->add_option("-o,--out", pin_opt.out, "CSV output (default stdout)");
    pinned->add_option("--json", pin_opt.json_out, "JSON output");

    CoareaOptions co_opt;
    CLI::App* coarea = app.add_subcommand("coarea", "shell integral via the co-area reduction");
    co_opt.body.attach(coarea);
    coarea->add_option("--A", co_opt.A, "inner shell radius")->capture_default_str();
    coarea->add_option("--B", co_opt.B, "outer shell radius")->capture_default_str();
    coarea->add_option("--fpow", co_opt.fpow, "integrand F(t) = t^fpow")->capture_default_str();
    coarea->add_option("--mc-check", co_opt.mc_samples, "Monte Carlo cross-check sample count");
    coarea->add_option("--seed", co_opt.seed, "Monte Carlo seed")->capture_default_str();
    coarea->add_option("--json", co_opt.json_out, "JSON output (default stdout)");

    ReportOptions rep_opt;
    CLI::App* report = app.add_subcommand("report", "config-driven combined report");
    report->add_option("--config", rep_opt.config_path, "experiment config (JSON)")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_opt);
        if (ft->parsed()) return cmd_ft(ft_opt);
        if (prof->parsed()) return cmd_profile(prof_opt);
        if (gram->parsed()) return cmd_gram(gram_opt);
        if (erdos->parsed()) return cmd_erdos(erdos_opt);
        if (pinned->parsed()) return cmd_pinned(pin_opt);
        if (coarea->parsed()) return cmd_coarea(co_opt);
        if (report->parsed()) return cmd_report(rep_opt);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace framelab::cli
