// Command-line front end: reproducible experiments over the radial p-Laplacian
// toolkit with file-based inputs and outputs.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "plap/distribution.hpp"
#include "plap/exponents.hpp"
#include "plap/iteration.hpp"
#include "plap/radial.hpp"
#include "plap/sharpness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// exit codes: 0 ok, 2 validation, 3 numerics, 4 I/O
constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kNumerics = 3;
constexpr int kIo = 4;

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// shortest round-trip decimal representation
std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct ExperimentConfig {
    int n = 3;
    double p = 2.0;
    double q = 1.2;

    enum class SourceKind { Power, Constant, File };
    SourceKind source_kind = SourceKind::Constant;
    double power_coefficient = 1.0;
    double power_exponent = 0.0;
    double constant_value = 1.0;
    std::string source_file;

    plap::QuadratureConfig quad;
    int r_nodes = 512;
    int beta_nodes = 200;
    int height_nodes = 2048;  // trapezoid error in the layer-cake identity scales like h^2
    std::string output_dir = ".";
    long long seed = 0;

    void validate() const {
        if (r_nodes < 64 || beta_nodes < 64 || height_nodes < 64)
            throw plap::validation_error("grid node counts must be >= 64");
        quad.validate();
    }

    json to_json() const {
        json src;
        switch (source_kind) {
            case SourceKind::Power:
                src["power"] = {{"coefficient", power_coefficient},
                                {"exponent", power_exponent}};
                break;
            case SourceKind::Constant:
                src["constant"] = constant_value;
                break;
            case SourceKind::File:
                src["file"] = source_file;
                break;
        }
        return json{{"context", {{"n", n}, {"p", p}, {"q", q}}},
                    {"source", src},
                    {"quadrature",
                     {{"abs_tol", quad.abs_tol},
                      {"rel_tol", quad.rel_tol},
                      {"max_subdivisions", quad.max_subdivisions},
                      {"origin_cutoff", quad.origin_cutoff}}},
                    {"grids",
                     {{"r_nodes", r_nodes},
                      {"beta_nodes", beta_nodes},
                      {"height_nodes", height_nodes}}},
                    {"output_dir", output_dir},
                    {"seed", seed}};
    }

    void merge_json(const json& j) {
        if (j.contains("context")) {
            const auto& c = j.at("context");
            if (c.contains("n")) n = c.at("n").get<int>();
            if (c.contains("p")) p = c.at("p").get<double>();
            if (c.contains("q")) q = c.at("q").get<double>();
        }
        if (j.contains("source")) {
            const auto& s = j.at("source");
            if (s.contains("power")) {
                source_kind = SourceKind::Power;
                power_coefficient = s.at("power").at("coefficient").get<double>();
                power_exponent = s.at("power").at("exponent").get<double>();
            } else if (s.contains("constant")) {
                source_kind = SourceKind::Constant;
                constant_value = s.at("constant").get<double>();
            } else if (s.contains("file")) {
                source_kind = SourceKind::File;
                source_file = s.at("file").get<std::string>();
            }
        }
        if (j.contains("quadrature")) {
            const auto& qd = j.at("quadrature");
            if (qd.contains("abs_tol")) quad.abs_tol = qd.at("abs_tol").get<double>();
            if (qd.contains("rel_tol")) quad.rel_tol = qd.at("rel_tol").get<double>();
            if (qd.contains("max_subdivisions"))
                quad.max_subdivisions = qd.at("max_subdivisions").get<int>();
            if (qd.contains("origin_cutoff"))
                quad.origin_cutoff = qd.at("origin_cutoff").get<double>();
        }
        if (j.contains("grids")) {
            const auto& g = j.at("grids");
            if (g.contains("r_nodes")) r_nodes = g.at("r_nodes").get<int>();
            if (g.contains("beta_nodes")) beta_nodes = g.at("beta_nodes").get<int>();
            if (g.contains("height_nodes")) height_nodes = g.at("height_nodes").get<int>();
        }
        if (j.contains("output_dir")) output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("seed")) seed = j.at("seed").get<long long>();
    }
};

void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw io_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw io_error("rename to " + path.string() + " failed: " + ec.message());
}

std::string metadata_block(const ExperimentConfig& cfg) {
    return "# config: " + cfg.to_json().dump() + "\n";
}

void write_csv(const fs::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows,
               const ExperimentConfig& cfg) {
    std::string out = header + "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += fmt(row[i]);
        }
        out += '\n';
    }
    out += metadata_block(cfg);
    write_atomic(path, out);
}

void write_json_file(const fs::path& path, json j, const ExperimentConfig& cfg) {
    j["config"] = cfg.to_json();
    write_atomic(path, j.dump(2) + "\n");
}

plap::RadialProfile load_csv_source(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open source file " + path);
    std::vector<double> radii, values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
            throw io_error("malformed CSV at " + path + ":" + std::to_string(line_no) +
                           " (expected r,value)");
        char* end = nullptr;
        const double r = std::strtod(a.c_str(), &end);
        if (end == a.c_str()) {
            if (line_no == 1) continue;  // header row
            throw io_error("malformed CSV at " + path + ":" + std::to_string(line_no) +
                           " (bad radius '" + a + "')");
        }
        const double v = std::strtod(b.c_str(), &end);
        if (end == b.c_str())
            throw io_error("malformed CSV at " + path + ":" + std::to_string(line_no) +
                           " (bad value '" + b + "')");
        radii.push_back(r);
        values.push_back(v);
    }
    try {
        return plap::RadialProfile::sampled(std::move(radii), std::move(values), {});
    } catch (const std::invalid_argument& e) {
        throw io_error("source file " + path + ": " + e.what());
    }
}

plap::RadialProfile load_source(const ExperimentConfig& cfg) {
    switch (cfg.source_kind) {
        case ExperimentConfig::SourceKind::Power:
            return plap::RadialProfile::power_law(cfg.power_coefficient,
                                                  cfg.power_exponent, 0.0);
        case ExperimentConfig::SourceKind::Constant:
            return plap::RadialProfile::constant(cfg.constant_value);
        case ExperimentConfig::SourceKind::File:
            return load_csv_source(cfg.source_file);
    }
    throw std::logic_error("unreachable source kind");
}

fs::path prepare_output_dir(const ExperimentConfig& cfg) {
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output_dir " + dir.string() + ": " + ec.message());
    return dir;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        g[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, t);
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

json context_report(const plap::ExponentContext& ctx) {
    json j{{"n", ctx.n},
           {"p", ctx.p},
           {"q", ctx.q},
           {"regime", plap::to_string(ctx.regime)},
           {"sobolev_conjugate", ctx.sobolev_conjugate},
           {"iteration_ratio", ctx.iteration_ratio},
           {"duality_floor", ctx.duality_floor},
           {"below_duality_floor", ctx.below_duality_floor},
           {"ambient_measure", ctx.ambient_measure},
           {"sphere_area", ctx.sphere_area}};
    if (ctx.has_sharp_exponent())
        j["sharp_exponent"] = ctx.sharp_exponent;
    else
        j["sharp_exponent"] = nullptr;
    return j;
}

int cmd_context(const ExperimentConfig& cfg) {
    const auto ctx = plap::validate_context(cfg.n, cfg.p, cfg.q);
    std::printf("%s\n", context_report(ctx).dump(2).c_str());
    return kOk;
}

int cmd_solve(const ExperimentConfig& cfg, double residual_bound,
              const std::vector<double>& reference_power) {
    cfg.validate();
    const auto ctx = plap::validate_context(cfg.n, cfg.p, cfg.q);
    const auto f = load_source(cfg);
    const auto dir = prepare_output_dir(cfg);

    const auto u = plap::solve_radial(f, ctx, cfg.quad,
                                      static_cast<std::size_t>(cfg.r_nodes));
    std::vector<std::vector<double>> rows;
    rows.reserve(u.radii().size());
    for (std::size_t i = 0; i < u.radii().size(); ++i)
        rows.push_back({u.radii()[i], u.values()[i], u.derivatives()[i]});
    write_csv(dir / "solution.csv", "r,u,du", rows, cfg);

    std::vector<double> radii;
    for (double r : u.radii())
        if (r >= 0.01 && r <= 0.99) radii.push_back(r);
    const double residual = plap::p_laplacian_residual(u, f, ctx, radii, cfg.quad);

    json rj{{"residual_max", residual},
            {"residual_bound", residual_bound},
            {"pass", residual <= residual_bound}};
    if (reference_power.size() == 3) {
        const auto ref = plap::RadialProfile::power_law(
            reference_power[0], reference_power[1], reference_power[2]);
        double gap = 0.0;
        for (std::size_t i = 0; i < u.radii().size(); ++i) {
            const double r = u.radii()[i];
            if (r < 0.01 || r > 0.99) continue;
            const double exact = ref.value(r);
            gap = std::max(gap, std::abs(u.values()[i] - exact) / std::abs(exact));
        }
        rj["gap"] = gap;
    }
    write_json_file(dir / "residual.json", rj, cfg);
    return residual <= residual_bound ? kOk : kNumerics;
}

int cmd_analyze(const ExperimentConfig& cfg, const std::vector<double>& r_exps) {
    cfg.validate();
    const auto ctx = plap::validate_context(cfg.n, cfg.p, cfg.q);
    const auto f = load_source(cfg);
    const auto dir = prepare_output_dir(cfg);

    const auto u = plap::solve_radial(f, ctx, cfg.quad,
                                      static_cast<std::size_t>(cfg.r_nodes));
    double sup = 0.0;
    for (double v : u.values()) sup = std::max(sup, std::abs(v));
    if (!(sup > 0.0)) throw plap::validation_error("solution is identically zero");

    const auto heights = plap::default_height_grid(
        sup, static_cast<std::size_t>(cfg.height_nodes));
    const auto curve = plap::distribution_function(u, heights, ctx);
    std::vector<std::vector<double>> drows;
    for (std::size_t i = 0; i < heights.size(); ++i)
        drows.push_back({curve.heights[i], curve.measures[i]});
    write_csv(dir / "distribution.csv", "alpha,lambda", drows, cfg);

    std::string out = "r_exp,direct,layer_cake,relative_gap,status\n";
    bool all_ok = true;
    for (double r_exp : r_exps) {
        const auto direct = plap::lebesgue_norm(u, r_exp, ctx, cfg.quad);
        if (!direct.finite()) {
            out += fmt(r_exp) + ",nan,nan,nan,diverged\n";
            all_ok = false;
            continue;
        }
        const double lc = plap::layer_cake_norm(curve, r_exp);
        const double gap = std::abs(direct.value - lc) / direct.value;
        out += fmt(r_exp) + "," + fmt(direct.value) + "," + fmt(lc) + "," + fmt(gap) +
               ",finite\n";
        if (!(gap <= 1e-4)) all_ok = false;
    }
    out += metadata_block(cfg);
    write_atomic(dir / "norms.csv", out);
    return all_ok ? kOk : kNumerics;
}

int cmd_iterate(const ExperimentConfig& cfg, int K) {
    cfg.validate();
    const auto ctx = plap::validate_context(cfg.n, cfg.p, cfg.q);
    if (ctx.regime == plap::Regime::Supercritical)
        throw plap::validation_error("iteration requires q <= n/p (no supercritical regime)");
    const auto dir = prepare_output_dir(cfg);

    const auto beta_grid = log_spaced(0.1, 1e3, cfg.beta_nodes);
    const bool subcritical = ctx.regime == plap::Regime::Subcritical;
    const auto st = subcritical ? plap::iterate_subcritical(ctx, beta_grid, K)
                                : plap::iterate_critical(ctx, beta_grid, K);

    for (int k = 1; k <= K; ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "iteration_k%02d.csv", k);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < beta_grid.size(); ++i)
            rows.push_back({beta_grid[i], st.log_lambda[static_cast<std::size_t>(k)][i],
                            st.alpha_opt[static_cast<std::size_t>(k) - 1][i],
                            st.log_half_eval[static_cast<std::size_t>(k) - 1][i]});
        write_csv(dir / name, "beta,log_lambda,alpha_opt,log_half_eval", rows, cfg);
    }

    json summary{{"regime", plap::to_string(ctx.regime)}, {"K", K}};
    if (subcritical) {
        // sandwich per level: infimum <= alpha = beta/2 evaluation <= (2/beta)^{e_k}
        constexpr double kLogTol = 1e-9;
        long violations = 0;
        for (int k = 1; k <= K; ++k) {
            const double ek = plap::subcritical_closed_form_exponent(ctx, k);
            for (std::size_t i = 0; i < beta_grid.size(); ++i) {
                const double inf_v = st.log_lambda[static_cast<std::size_t>(k)][i];
                const double half_v = st.log_half_eval[static_cast<std::size_t>(k) - 1][i];
                const double closed = ek * std::log(2.0 / beta_grid[i]);
                if (inf_v > half_v + kLogTol) ++violations;
                if (half_v > closed + kLogTol) ++violations;
            }
        }
        summary["sandwich_violations"] = violations;
        // fitted decay exponent of the final level over the upper decade
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = 0;
        for (std::size_t i = 0; i < beta_grid.size(); ++i) {
            if (beta_grid[i] < 100.0) continue;
            const double x = std::log(beta_grid[i]);
            const double y = st.log_lambda[static_cast<std::size_t>(K)][i];
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++m;
        }
        const double slope = (static_cast<double>(m) * sxy - sx * sy) /
                             (static_cast<double>(m) * sxx - sx * sx);
        summary["fitted_exponent"] = -slope;
        summary["closed_form_exponent"] = plap::subcritical_closed_form_exponent(ctx, K);
        summary["limit_exponent"] = ctx.sharp_exponent;
    } else {
        summary["sandwich_violations"] = nullptr;
        const auto series = plap::critical_series(ctx, 1.0, 200);
        summary["series_r1_sum"] = series.partial_sums.back();
        summary["series_converged"] = series.converged;
        summary["interval_length_k100"] = plap::critical_interval(100).length;
    }
    write_json_file(dir / "summary.json", summary, cfg);
    return kOk;
}

int cmd_sharpness(const ExperimentConfig& cfg, double epsilon,
                  std::vector<double> r_grid) {
    cfg.validate();
    const auto ctx = plap::validate_context(cfg.n, cfg.p, cfg.q);
    const auto dir = prepare_output_dir(cfg);

    if (r_grid.empty()) {
        // bracket the threshold by construction
        const auto probe = plap::build_example(ctx, epsilon);
        const double t = probe.threshold;
        r_grid = {0.7 * t, 0.85 * t, 0.95 * t, 0.99 * t, t, 1.1 * t};
    }
    const auto sweep = plap::exponent_sweep(ctx, epsilon, r_grid, cfg.quad);

    std::string out = "r_exp,classification,norm\n";
    for (const auto& row : sweep.rows) {
        out += fmt(row.r_exp) + "," + plap::to_string(row.kind) + ",";
        out += (row.kind == plap::DivergenceKind::Convergent) ? fmt(row.norm) : "nan";
        out += '\n';
    }
    out += metadata_block(cfg);
    write_atomic(dir / "sweep.csv", out);

    std::vector<double> radii;
    for (int i = 0; i < 30; ++i) radii.push_back(0.01 + 0.98 * i / 29.0);
    const auto pde = plap::verify_example_pde(sweep.example, radii, cfg.quad);

    double resolution = 0.0;
    for (std::size_t i = 1; i < r_grid.size(); ++i)
        resolution = std::max(resolution, r_grid[i] - r_grid[i - 1]);
    json verdict{{"epsilon", epsilon},
                 {"residual_max", pde.residual_max},
                 {"solver_gap_max", pde.solver_gap_max},
                 {"threshold", sweep.example.threshold},
                 {"sharp_exponent", ctx.sharp_exponent},
                 {"ell", sweep.example.ell_sharp},
                 {"u_exponent", sweep.example.u_exponent},
                 {"source_norm_q", sweep.example.source_norm_q()},
                 {"has_cutoff", sweep.has_cutoff}};
    if (sweep.has_cutoff) {
        verdict["empirical_cutoff"] = sweep.empirical_cutoff;
        verdict["within_resolution"] =
            std::abs(sweep.empirical_cutoff - sweep.example.threshold) <= resolution;
    } else {
        verdict["empirical_cutoff"] = nullptr;
        verdict["within_resolution"] = nullptr;
    }
    write_json_file(dir / "verdict.json", verdict, cfg);
    return kOk;
}

int cmd_report(const ExperimentConfig& cfg) {
    const fs::path dir(cfg.output_dir);
    if (!fs::is_directory(dir)) throw io_error("output_dir " + dir.string() + " not found");

    json report{{"config", cfg.to_json()}};
    auto attach = [&](const std::string& name) {
        const fs::path p = dir / name;
        if (!fs::exists(p)) return;
        std::ifstream in(p, std::ios::binary);
        if (!in) throw io_error("cannot read " + p.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        if (p.extension() == ".json")
            report["outputs"][name] = json::parse(ss.str());
        else
            report["outputs"][name] = ss.str();
    };
    attach("solution.csv");
    attach("residual.json");
    attach("distribution.csv");
    attach("norms.csv");
    attach("summary.json");
    attach("sweep.csv");
    attach("verdict.json");
    std::vector<std::string> iter_files;
    for (const auto& e : fs::directory_iterator(dir)) {
        const std::string name = e.path().filename().string();
        if (name.rfind("iteration_k", 0) == 0 && e.path().extension() == ".csv")
            iter_files.push_back(name);
    }
    std::sort(iter_files.begin(), iter_files.end());
    for (const auto& name : iter_files) attach(name);

    write_atomic(dir / "report.json", report.dump(2) + "\n");
    std::printf("%s\n", (dir / "report.json").string().c_str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for radial p-Laplacian level-set estimates"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path;

    // shared config flags; a JSON config file is merged first, flags override
    struct Flags {
        int n = -1;
        double p = -1, q = -1;
        std::vector<double> source_power;  // coefficient, exponent
        double source_constant = std::nan("");
        std::string source_file;
        double abs_tol = -1, rel_tol = -1, origin_cutoff = -1;
        int max_subdivisions = -1;
        int r_nodes = -1, beta_nodes = -1, height_nodes = -1;
        std::string output_dir;
        long long seed = std::numeric_limits<long long>::min();
    } fl;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("-n,--dimension", fl.n, "space dimension n >= 3");
        sub->add_option("-p,--p-exponent", fl.p, "p-Laplacian exponent, 1 < p < n");
        sub->add_option("-q,--q-exponent", fl.q, "source Lebesgue exponent, q > 1");
        sub->add_option("--source-power", fl.source_power,
                        "power-law source: coefficient exponent")
            ->expected(2);
        sub->add_option("--source-constant", fl.source_constant, "constant source value");
        sub->add_option("--source-file", fl.source_file, "CSV source file (r,value)");
        sub->add_option("--abs-tol", fl.abs_tol, "quadrature absolute tolerance");
        sub->add_option("--rel-tol", fl.rel_tol, "quadrature relative tolerance");
        sub->add_option("--max-subdivisions", fl.max_subdivisions,
                        "quadrature subdivision budget");
        sub->add_option("--origin-cutoff", fl.origin_cutoff, "smallest sampled radius");
        sub->add_option("--r-nodes", fl.r_nodes, "radial grid nodes (>= 64)");
        sub->add_option("--beta-nodes", fl.beta_nodes, "height grid nodes (>= 64)");
        sub->add_option("--height-nodes", fl.height_nodes,
                        "distribution grid nodes (>= 64)");
        sub->add_option("-o,--output-dir", fl.output_dir, "output directory");
        sub->add_option("--seed", fl.seed, "seed recorded with every artifact");
    };

    auto* c_context = app.add_subcommand("context", "validate (n, p, q) and print exponents");
    add_common(c_context);

    double residual_bound = 1e-6;
    std::vector<double> reference_power;
    auto* c_solve = app.add_subcommand("solve", "solve the radial Dirichlet problem");
    add_common(c_solve);
    c_solve->add_option("--residual-bound", residual_bound,
                        "max admissible relative residual");
    c_solve->add_option("--reference-power", reference_power,
                        "closed-form reference: coefficient exponent offset")
        ->expected(3);

    std::vector<double> r_exps{1.0, 2.0, 5.0};
    auto* c_analyze = app.add_subcommand("analyze", "distribution function and norms");
    add_common(c_analyze);
    c_analyze->add_option("--r-exps", r_exps, "Lebesgue exponents for the norm table");

    int K = 20;
    auto* c_iterate = app.add_subcommand("iterate", "recursive level-set bounds");
    add_common(c_iterate);
    c_iterate->add_option("-K,--levels", K, "iteration depth");

    double epsilon = 1.0;
    std::vector<double> r_grid;
    auto* c_sharp = app.add_subcommand("sharpness", "sharpness example and divergence sweep");
    add_common(c_sharp);
    c_sharp->add_option("--epsilon", epsilon, "threshold offset r* + epsilon");
    c_sharp->add_option("--r-grid", r_grid, "Lebesgue exponents to probe");

    auto* c_report = app.add_subcommand("report", "bundle prior outputs into report.json");
    add_common(c_report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw io_error("cannot open config file " + config_path);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::parse_error& e) {
                throw io_error("config file " + config_path + ": " + e.what());
            }
            cfg.merge_json(j);
        }
        if (fl.n >= 0) cfg.n = fl.n;
        if (fl.p >= 0) cfg.p = fl.p;
        if (fl.q >= 0) cfg.q = fl.q;
        if (fl.source_power.size() == 2) {
            cfg.source_kind = ExperimentConfig::SourceKind::Power;
            cfg.power_coefficient = fl.source_power[0];
            cfg.power_exponent = fl.source_power[1];
        } else if (!std::isnan(fl.source_constant)) {
            cfg.source_kind = ExperimentConfig::SourceKind::Constant;
            cfg.constant_value = fl.source_constant;
        } else if (!fl.source_file.empty()) {
            cfg.source_kind = ExperimentConfig::SourceKind::File;
            cfg.source_file = fl.source_file;
        }
        if (fl.abs_tol > 0) cfg.quad.abs_tol = fl.abs_tol;
        if (fl.rel_tol > 0) cfg.quad.rel_tol = fl.rel_tol;
        if (fl.max_subdivisions > 0) cfg.quad.max_subdivisions = fl.max_subdivisions;
        if (fl.origin_cutoff > 0) cfg.quad.origin_cutoff = fl.origin_cutoff;
        if (fl.r_nodes > 0) cfg.r_nodes = fl.r_nodes;
        if (fl.beta_nodes > 0) cfg.beta_nodes = fl.beta_nodes;
        if (fl.height_nodes > 0) cfg.height_nodes = fl.height_nodes;
        if (!fl.output_dir.empty()) cfg.output_dir = fl.output_dir;
        if (fl.seed != std::numeric_limits<long long>::min()) cfg.seed = fl.seed;

        if (c_context->parsed()) return cmd_context(cfg);
        if (c_solve->parsed()) return cmd_solve(cfg, residual_bound, reference_power);
        if (c_analyze->parsed()) return cmd_analyze(cfg, r_exps);
        if (c_iterate->parsed()) return cmd_iterate(cfg, K);
        if (c_sharp->parsed()) return cmd_sharpness(cfg, epsilon, r_grid);
        if (c_report->parsed()) return cmd_report(cfg);
        return kValidation;
    } catch (const io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIo;
    } catch (const fs::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIo;
    } catch (const plap::validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kValidation;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kValidation;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kValidation;
    } catch (const plap::quadrature_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kNumerics;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kNumerics;
    }
}
