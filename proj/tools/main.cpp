// Command line driver: strip-mode scans, polygon eigenvalue studies, the
// full inequality battery on one polygon, aspect-ratio sweeps, and the
// bound-curve crossing.  Every run emits one document with the same five
// parts (command, inputs, rows, summary, reports) as JSON or as CSV with
// '#' metadata comments, and the bytes are reproducible run to run.
//
// Exit codes: 0 success, 1 a verified inequality failed, 2 bad input
// (parse errors, nonconvex polygons, out-of-range parameters, grids too
// coarse), 3 the solver gave up (iteration budget, indefinite pencil).

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bucklab/bounds.hpp"
#include "bucklab/checks.hpp"
#include "bucklab/eigensolve.hpp"
#include "bucklab/errors.hpp"
#include "bucklab/experiment.hpp"
#include "bucklab/geometry.hpp"
#include "bucklab/polygon_io.hpp"
#include "bucklab/report.hpp"
#include "bucklab/strip.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInequality = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---- tolerance overrides ----------------------------------------------------

/// Overrides from BUCKLAB_TOLERANCES ("key=value,key=value").  Every pair is
/// echoed into the output header verbatim; only the keys named below change
/// behavior.  Known keys: solver_tol, identity_tol, log_concavity_tol,
/// curvature_tol.
struct Overrides {
    std::vector<std::pair<std::string, std::string>> echoed;
    std::optional<double> solver_tol;
    std::optional<double> identity_tol;
    std::optional<double> log_concavity_tol;
    std::optional<double> curvature_tol;
};

Overrides parse_overrides() {
    Overrides o;
    const char* raw = std::getenv("BUCKLAB_TOLERANCES");
    if (raw == nullptr || *raw == '\0') return o;
    std::string text(raw);
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty()) continue;
        const size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("BUCKLAB_TOLERANCES: expected key=value, got \"" +
                                        item + "\"");
        }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        double parsed = 0.0;
        try {
            size_t used = 0;
            parsed = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("BUCKLAB_TOLERANCES: value for \"" + key +
                                        "\" is not a number: \"" + value + "\"");
        }
        o.echoed.emplace_back(key, value);
        if (key == "solver_tol") o.solver_tol = parsed;
        else if (key == "identity_tol") o.identity_tol = parsed;
        else if (key == "log_concavity_tol") o.log_concavity_tol = parsed;
        else if (key == "curvature_tol") o.curvature_tol = parsed;
    }
    return o;
}

ordered_json overrides_json(const Overrides& o) {
    ordered_json obj = ordered_json::object();
    for (const auto& [key, value] : o.echoed) obj[key] = value;
    return obj;
}

// ---- document emission --------------------------------------------------------

std::string csv_scalar(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return fmt(v.get<double>());
    return v.dump();
}

void emit_csv(const ordered_json& doc, std::ostream& os) {
    os << "# command: " << doc.at("command").get<std::string>() << "\n";
    for (const auto& [key, value] : doc.at("inputs").items()) {
        if (key == "tolerance_overrides") {
            os << "# tolerance_overrides:";
            if (value.empty()) {
                os << " (none)";
            } else {
                bool first = true;
                for (const auto& [k, v] : value.items()) {
                    os << (first ? " " : ",") << k << "=" << v.get<std::string>();
                    first = false;
                }
            }
            os << "\n";
        } else if (value.is_array()) {
            os << "# " << key << ":";
            for (const auto& item : value) os << " " << csv_scalar(item);
            os << "\n";
        } else {
            os << "# " << key << ": " << csv_scalar(value) << "\n";
        }
    }
    const auto& rows = doc.at("rows");
    if (!rows.empty()) {
        bool first = true;
        for (const auto& [key, value] : rows.front().items()) {
            (void)value;
            os << (first ? "" : ",") << key;
            first = false;
        }
        os << "\n";
        for (const auto& row : rows) {
            first = true;
            for (const auto& [key, value] : row.items()) {
                (void)key;
                os << (first ? "" : ",") << csv_scalar(value);
                first = false;
            }
            os << "\n";
        }
    }
    for (const auto& [key, value] : doc.at("summary").items())
        os << "# summary " << key << ": " << csv_scalar(value) << "\n";
    const auto& reports = doc.at("reports");
    if (!reports.empty()) {
        os << "# reports\n";
        os << "name,lhs,rhs,margin,pass\n";
        for (const auto& r : reports) {
            os << r.at("name").get<std::string>() << "," << fmt(r.at("lhs").get<double>())
               << "," << fmt(r.at("rhs").get<double>()) << ","
               << fmt(r.at("margin").get<double>()) << ","
               << (r.at("pass").get<bool>() ? "true" : "false") << "\n";
        }
    }
}

void emit(const ordered_json& doc, const std::string& format) {
    if (format == "csv") {
        emit_csv(doc, std::cout);
    } else {
        std::cout << doc.dump(2) << "\n";
    }
}

ordered_json report_json(const bucklab::InequalityReport& r) {
    ordered_json obj;
    obj["name"] = r.name;
    obj["lhs"] = r.lhs;
    obj["rhs"] = r.rhs;
    obj["margin"] = r.margin;
    obj["tolerance"] = r.tolerance;
    obj["pass"] = r.pass;
    ordered_json meta = ordered_json::object();
    for (const auto& [key, value] : r.metadata) meta[key] = value;
    obj["metadata"] = std::move(meta);
    return obj;
}

// ---- shared option plumbing ---------------------------------------------------

struct SolveKnobs {
    double solver_tol = 1e-10;
    int max_iterations = 10000;

    bucklab::SolveOptions options() const {
        bucklab::SolveOptions opts;
        opts.tol = solver_tol;
        opts.max_iterations = max_iterations;
        return opts;
    }
};

void apply_env(SolveKnobs& knobs, const Overrides& env) {
    if (env.solver_tol) knobs.solver_tol = *env.solver_tol;
}

std::vector<double> make_ladder(const bucklab::ConvexPolygon& poly,
                                std::optional<double> grid_h, int levels) {
    if (grid_h) {
        std::vector<double> ladder(static_cast<size_t>(levels));
        double h = *grid_h;
        for (auto& level : ladder) {
            level = h;
            h *= 0.5;
        }
        return ladder;
    }
    return bucklab::level_ladder(poly, 32, levels);
}

ordered_json ladder_json(const std::vector<double>& ladder) {
    ordered_json arr = ordered_json::array();
    for (double h : ladder) arr.push_back(h);
    return arr;
}

ordered_json study_rows(const std::string& kind, const bucklab::StudiedValue& sv) {
    ordered_json rows = ordered_json::array();
    for (const auto& [h, value] : sv.study.levels) {
        ordered_json row;
        row["kind"] = kind;
        row["h"] = h;
        row["value"] = value;
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- strip --------------------------------------------------------------------

int cmd_strip(double mu_min, double mu_max, int samples, const std::string& format,
              const Overrides& env) {
    if (!(mu_min >= 0.0) || !(mu_max > mu_min))
        throw std::invalid_argument("strip: need 0 <= mu-min < mu-max");
    if (samples < 2) throw std::invalid_argument("strip: need at least 2 samples");

    ordered_json doc;
    doc["command"] = "strip";
    doc["inputs"] = {{"mu_min", mu_min},
                     {"mu_max", mu_max},
                     {"samples", samples},
                     {"tolerance_overrides", overrides_json(env)}};

    ordered_json rows = ordered_json::array();
    bool all_below = true;
    for (int i = 0; i < samples; ++i) {
        const double mu = mu_min + (mu_max - mu_min) * i / (samples - 1);
        const auto mode = bucklab::smallest_lambda(mu);
        const double bound = bucklab::upper_bound_mu(mu);
        all_below = all_below && mode.lambda_mu <= bound + 1e-9;
        ordered_json row;
        row["mu"] = mu;
        row["lambda_mu"] = mode.lambda_mu;
        row["upper_bound"] = bound;
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);

    const auto minimum = bucklab::minimize_sigma();
    const double ceiling = 8.0 * std::numbers::sqrt2 / 3.0;
    doc["summary"] = {{"mu_star", minimum.mu_star},
                      {"sigma", minimum.sigma},
                      {"sigma_ceiling", ceiling},
                      {"all_below_bound", all_below}};
    doc["reports"] = ordered_json::array();

    emit(doc, format);
    return (minimum.sigma < ceiling && all_below) ? kExitOk : kExitInequality;
}

// ---- eig ----------------------------------------------------------------------

int cmd_eig(const std::string& path, const std::string& kind_name,
            std::optional<double> grid_h, int levels, const SolveKnobs& knobs,
            const std::string& format, const Overrides& env) {
    const auto poly = bucklab::load_polygon(path);
    const auto kind = kind_name == "buckling" ? bucklab::EigenKind::buckling
                                              : bucklab::EigenKind::dirichlet;
    const auto ladder = make_ladder(poly, grid_h, levels);
    const auto sv = bucklab::study_polygon(poly, kind, ladder, knobs.options());

    ordered_json doc;
    doc["command"] = "eig";
    doc["inputs"] = {{"polygon", path},
                     {"kind", kind_name},
                     {"levels_h", ladder_json(ladder)},
                     {"solver_tol", knobs.solver_tol},
                     {"max_iterations", knobs.max_iterations},
                     {"tolerance_overrides", overrides_json(env)}};
    doc["rows"] = study_rows(kind_name, sv);
    doc["summary"] = {{"extrapolated", sv.study.extrapolated},
                      {"observed_order", sv.study.observed_order},
                      {"order_suspect", sv.study.order_suspect},
                      {"error_estimate", sv.error_estimate},
                      {"finest_h", sv.finest.h},
                      {"finest_residual", sv.finest.residual_norm},
                      {"finest_iterations", sv.finest.iterations}};
    doc["reports"] = ordered_json::array();

    emit(doc, format);
    return kExitOk;
}

// ---- verify -------------------------------------------------------------------

int cmd_verify(const std::string& path, std::optional<double> grid_h, int levels,
               const SolveKnobs& knobs, const std::string& format, const Overrides& env) {
    const auto poly = bucklab::load_polygon(path);
    const auto ladder = make_ladder(poly, grid_h, levels);
    const auto opts = knobs.options();

    const auto lam = bucklab::study_polygon(poly, bucklab::EigenKind::dirichlet, ladder, opts);
    const auto buck = bucklab::study_polygon(poly, bucklab::EigenKind::buckling, ladder, opts);
    const auto geo = bucklab::summarize(poly);
    const auto thin = bucklab::thinness(geo.diameter, lam.value(), 2);

    std::vector<bucklab::InequalityReport> reports;
    reports.push_back(bucklab::check_payne(lam, buck));
    reports.push_back(bucklab::check_improved(lam, buck, thin));
    reports.push_back(bucklab::check_u_squared_identity(lam.domain, lam.finest,
                                                        env.identity_tol.value_or(0.02)));
    const auto chain = bucklab::rayleigh_chain(lam, buck, thin);
    reports.push_back(chain.above_buckling);
    reports.push_back(chain.below_improved);
    reports.push_back(bucklab::log_concavity_check(lam.domain, lam.finest.vector, geo.diameter,
                                                   env.log_concavity_tol.value_or(1e-9)));
    reports.push_back(bucklab::check_curvature_bound(lam.domain, lam.finest.vector,
                                                     geo.diameter,
                                                     env.curvature_tol.value_or(1e-6)));
    reports.push_back(bucklab::width_lambda_sandwich(poly, lam.value()));

    ordered_json doc;
    doc["command"] = "verify";
    doc["inputs"] = {{"polygon", path},
                     {"levels_h", ladder_json(ladder)},
                     {"solver_tol", knobs.solver_tol},
                     {"max_iterations", knobs.max_iterations},
                     {"tolerance_overrides", overrides_json(env)}};

    ordered_json rows = study_rows("dirichlet", lam);
    for (auto& row : study_rows("buckling", buck)) rows.push_back(std::move(row));
    doc["rows"] = std::move(rows);

    doc["summary"] = {{"diameter", geo.diameter},
                      {"min_width", geo.min_width},
                      {"inradius", geo.inradius},
                      {"area", geo.area},
                      {"thinness", thin.value},
                      {"lambda", lam.value()},
                      {"Lambda", buck.value()},
                      {"ratio", buck.value() / lam.value()},
                      {"rayleigh_quotient", chain.quotient}};

    ordered_json report_arr = ordered_json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        report_arr.push_back(report_json(r));
    }
    doc["reports"] = std::move(report_arr);

    emit(doc, format);
    return all_pass ? kExitOk : kExitInequality;
}

// ---- sweep ----------------------------------------------------------------------

int cmd_sweep(int aspect_max, int levels, const std::string& format, const Overrides& env) {
    if (aspect_max < 1) throw std::invalid_argument("sweep: need aspect-max >= 1");
    std::vector<int> aspects;
    for (int k = 1; k <= aspect_max; k *= 2) aspects.push_back(k);

    bucklab::HPolicy policy;
    policy.levels = levels;
    const auto result = bucklab::strip_limit_experiment(aspects, policy);

    ordered_json doc;
    doc["command"] = "sweep";
    doc["inputs"] = {{"aspect_max", aspect_max},
                     {"levels", levels},
                     {"base_divisor", policy.base_divisor},
                     {"tolerance_overrides", overrides_json(env)}};

    ordered_json rows = ordered_json::array();
    bool all_below_4 = true;
    for (const auto& r : result.rows) {
        if (r.aspect >= 2) all_below_4 = all_below_4 && r.ratio < 4.0;
        ordered_json row;
        row["k"] = r.aspect;
        row["lambda"] = r.lambda;
        row["Lambda"] = r.Lambda;
        row["ratio"] = r.ratio;
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);

    doc["summary"] = {{"sigma", result.sigma},
                      {"final_ratio", result.rows.back().ratio},
                      {"final_below_4", result.final_below_4},
                      {"final_within_sigma_window", result.final_within_sigma_window},
                      {"non_increasing_within_tol", result.non_increasing_within_tol}};
    doc["reports"] = ordered_json::array();

    emit(doc, format);
    return all_below_4 ? kExitOk : kExitInequality;
}

// ---- crossing -------------------------------------------------------------------

int cmd_crossing(int dimension, double tol, const std::string& format,
                 const Overrides& env) {
    const auto cp = bucklab::crossing_point(dimension, tol);

    ordered_json doc;
    doc["command"] = "crossing";
    doc["inputs"] = {{"dimension", dimension},
                     {"tol", tol},
                     {"tolerance_overrides", overrides_json(env)}};

    // Log-spaced abscissas so the curves resolve both the crossing region
    // near machine-small thinness and the O(1) regime.
    constexpr int kSamples = 200;
    constexpr double kLo = 1e-9;
    constexpr double kHi = 0.5;
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < kSamples; ++i) {
        const double t = kLo * std::pow(kHi / kLo, static_cast<double>(i) / (kSamples - 1));
        const auto point = bucklab::bound_curve_point(t, dimension);
        ordered_json row;
        row["T"] = point.T;
        row["improved_bound"] = point.improved_bound;
        row["thin_bound"] = point.thin_bound;
        row["effective"] = point.effective;
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);

    doc["summary"] = {{"T_star", cp.T_star},
                      {"coefficient", cp.value},
                      {"dimension", dimension}};
    doc["reports"] = ordered_json::array();

    emit(doc, format);
    return kExitOk;
}

void add_format_option(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Buckling laboratory for strips and convex polygons"};
    app.require_subcommand(1);

    std::string format = "json";
    SolveKnobs knobs;

    // strip
    double mu_min = 0.0, mu_max = 4.0;
    int samples = 101;
    auto* strip = app.add_subcommand("strip", "Scan the strip dispersion curve");
    strip->add_option("--mu-min", mu_min, "Lower end of the mu range")->capture_default_str();
    strip->add_option("--mu-max", mu_max, "Upper end of the mu range")->capture_default_str();
    strip->add_option("--samples", samples, "Number of mu samples")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();

    // eig
    std::string eig_path;
    std::string eig_kind = "dirichlet";
    std::optional<double> grid_h;
    int levels = 3;
    auto* eig = app.add_subcommand("eig", "Mesh-refinement eigenvalue study on a polygon");
    eig->add_option("polygon", eig_path, "Polygon file (one \"x y\" vertex per line)")
        ->required();
    eig->add_option("--kind", eig_kind, "Which eigenvalue")
        ->check(CLI::IsMember({"dirichlet", "buckling"}))
        ->capture_default_str();
    eig->add_option("--grid-h", grid_h, "Coarsest grid spacing (default min_width/32)")
        ->check(CLI::PositiveNumber);
    eig->add_option("--levels", levels, "Refinement levels, halving each time")
        ->check(CLI::Range(3, 12))
        ->capture_default_str();

    // verify
    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "Run the inequality battery on a polygon");
    verify->add_option("polygon", verify_path, "Polygon file")->required();
    verify->add_option("--grid-h", grid_h, "Coarsest grid spacing (default min_width/32)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--levels", levels, "Refinement levels, halving each time")
        ->check(CLI::Range(3, 12))
        ->capture_default_str();

    // sweep
    int aspect_max = 16;
    auto* sweep = app.add_subcommand("sweep", "Rectangle aspect-ratio sweep toward the strip");
    sweep->add_option("--aspect-max", aspect_max, "Largest aspect ratio (doubling from 1)")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    sweep->add_option("--levels", levels, "Refinement levels, halving each time")
        ->check(CLI::Range(3, 12))
        ->capture_default_str();

    // crossing
    int dimension = 2;
    double crossing_tol = 1e-12;
    auto* crossing = app.add_subcommand("crossing", "Locate the bound-curve crossing");
    crossing->add_option("--dimension", dimension, "Ambient dimension")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    crossing->add_option("--tol", crossing_tol, "Bisection width tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    for (auto* cmd : {strip, eig, verify, sweep, crossing}) add_format_option(cmd, format);
    for (auto* cmd : {eig, verify}) {
        cmd->add_option("--solver-tol", knobs.solver_tol, "Eigen-residual tolerance")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        // Undocumented escape hatch so a tiny budget can demonstrate the
        // solver-failure exit path.
        cmd->add_option("--max-iterations", knobs.max_iterations)->group("");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        const Overrides env = parse_overrides();
        // A --solver-tol flag on the command line wins over the environment.
        bool tol_from_flag = false;
        for (auto* cmd : {eig, verify})
            if (cmd->parsed() && cmd->count("--solver-tol") > 0) tol_from_flag = true;
        if (!tol_from_flag) apply_env(knobs, env);
        if (strip->parsed()) return cmd_strip(mu_min, mu_max, samples, format, env);
        if (eig->parsed())
            return cmd_eig(eig_path, eig_kind, grid_h, levels, knobs, format, env);
        if (verify->parsed())
            return cmd_verify(verify_path, grid_h, levels, knobs, format, env);
        if (sweep->parsed()) return cmd_sweep(aspect_max, levels, format, env);
        if (crossing->parsed()) return cmd_crossing(dimension, crossing_tol, format, env);
        return kExitInput;
    } catch (const bucklab::NoConvergence& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const bucklab::IndefinitePencil& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const bucklab::SingularPencil& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const bucklab::ParseError& e) {
        std::cerr << "input error: " << e.what() << " (line " << e.line << ")\n";
        return kExitInput;
    } catch (const bucklab::NonConvexPolygon& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const bucklab::InvalidPolygon& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const bucklab::TooCoarse& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const bucklab::NoRootInBracket& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const bucklab::NoCrossing& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kExitSolver;
    }
}
