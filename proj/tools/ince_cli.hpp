#pragma once

// Command-line front end. Everything lives here so the test suite can run
// commands in-process through run().

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ince/ince.hpp"

namespace ince::cli {

inline constexpr const char* artifact_version = "0.1.0";

enum ExitCode : int { ok = 0, verification_failure = 1, usage_error = 2, io_error = 3 };

using Json = nlohmann::ordered_json;

class io_failure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "json";
    std::string out;
    std::string tier = "double";
    bool seedless = false;
    int precision = 17;
};

struct SpectrumArgs {
    std::string parity = "even";
    int n = 1;
    double a = 0.0;
};

struct WavefunctionArgs {
    std::string parity = "even";
    int n = 1;
    double a = 0.0;
    double eta = 0.0;
    std::string branch = "plus";
    double xi_min = -2.0 * std::numbers::pi;
    double xi_max = 2.0 * std::numbers::pi;
    int points = 1024;
    bool with_prefactor = false;
    std::string strengths_out;
};

struct PhysicsArgs {
    double photon_ev = 0.0;
    std::vector<double> plasma_ev;   // zero or one value
    std::vector<double> density_cm3; // zero or one value
    double intensity_wcm2 = 0.0;
};

struct ScanArgs {
    std::string parity = "even";
    int n_min = 1;
    int n_max = 1;
    std::vector<double> a_list;
    double pz = 0.0;
    double kappa = 0.0;
};

struct VerifyArgs {
    std::string parity = "even";
    int n = 1;
    double a = 0.0;
    double corrupt_eigenvalue = 0.0; // test hook: added to the top eigenvalue
};

namespace detail {

inline Parity parse_parity(const std::string& s) {
    if (s == "even")
        return Parity::Even;
    if (s == "odd")
        return Parity::Odd;
    throw invalid_argument("parity must be even or odd, got '" + s + "'");
}

inline PrecisionTier parse_tier(const std::string& s) {
    if (s == "double")
        return PrecisionTier::Double;
    if (s == "extended")
        return PrecisionTier::Extended;
    throw invalid_argument("tier must be double or extended, got '" + s + "'");
}

inline Branch parse_branch(const std::string& s) {
    if (s == "plus")
        return Branch::Plus;
    if (s == "minus")
        return Branch::Minus;
    throw invalid_argument("branch must be plus or minus, got '" + s + "'");
}

inline std::string number(double x, int precision) {
    if (!std::isfinite(x))
        return "";
    std::ostringstream os;
    os << std::setprecision(precision) << x;
    return os.str();
}

class Csv {
  public:
    explicit Csv(int precision) : precision_(precision) {}

    Csv& header(std::initializer_list<std::string_view> cols) {
        row_begin();
        for (auto c : cols)
            cell(std::string(c));
        return end();
    }
    Csv& cell(const std::string& s) {
        if (!first_)
            os_ << ',';
        os_ << s;
        first_ = false;
        return *this;
    }
    Csv& cell(double x) { return cell(number(x, precision_)); }
    Csv& cell(int x) { return cell(std::to_string(x)); }
    Csv& cell(bool b) { return cell(std::string(b ? "true" : "false")); }
    Csv& end() {
        os_ << '\n';
        first_ = true;
        return *this;
    }
    Csv& row_begin() {
        first_ = true;
        return *this;
    }
    std::string str() const { return os_.str(); }

  private:
    std::ostringstream os_;
    int precision_;
    bool first_ = true;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw io_failure("cannot open '" + path.string() + "' for writing");
    f << text;
    f.flush();
    if (!f)
        throw io_failure("write to '" + path.string() + "' failed");
}

inline std::filesystem::path sidecar_path(const std::string& out) {
    std::filesystem::path p(out);
    return p.replace_extension(".manifest.json");
}

class Run {
  public:
    Run(std::string command, const Common& common, std::ostream& out)
        : command_(std::move(command)), common_(common), out_(out), start_(std::chrono::steady_clock::now()) {}

    Json& parameters() { return parameters_; }
    void add_output(const std::string& path) { outputs_.push_back(path); }

    Json manifest() const {
        Json m;
        m["command"] = command_;
        m["parameters"] = parameters_;
        m["artifact_version"] = artifact_version;
        m["tier"] = common_.tier;
        m["format"] = common_.format;
        m["outputs"] = outputs_;
        m["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return m;
    }

    // JSON documents carry the manifest under "manifest"; CSV files get a sidecar.
    void emit_json(Json data) {
        if (!common_.out.empty())
            add_output(common_.out);
        Json doc = std::move(data);
        doc["manifest"] = manifest();
        const std::string text = doc.dump(2) + "\n";
        if (common_.out.empty())
            out_ << text;
        else
            write_file(common_.out, text);
    }

    void emit_csv(const std::string& text) {
        if (common_.out.empty()) {
            out_ << text;
            return;
        }
        add_output(common_.out);
        const auto side = sidecar_path(common_.out);
        add_output(side.string());
        write_file(common_.out, text);
        write_file(side, manifest().dump(2) + "\n");
    }

    void emit_extra_csv(const std::string& path, const std::string& text) {
        add_output(path);
        write_file(path, text);
    }

  private:
    std::string command_;
    const Common& common_;
    std::ostream& out_;
    std::chrono::steady_clock::time_point start_;
    Json parameters_ = Json::object();
    std::vector<std::string> outputs_;
};

inline Json spectrum_json(const SpectralSolution& s) {
    Json j;
    j["parity"] = to_string(s.parity);
    j["n"] = s.n;
    j["a"] = s.a;
    j["tier"] = to_string(s.tier);
    j["row_lo"] = s.row_lo;
    j["row_hi"] = s.row_hi();
    j["eigenvalues"] = s.eigenvalues;
    if (s.tier == PrecisionTier::Extended) {
        Json ext = Json::array();
        for (const auto& e : s.eigenvalues_extended)
            ext.push_back(e.str(30));
        j["eigenvalues_extended"] = ext;
    }
    j["eigenvectors"] = s.eigenvectors;
    return j;
}

// Label of the eigenvalue within 1e-3 max(1, |eta|) of the selector.
inline int select_label(const SpectralSolution& s, double eta) {
    const int k = s.nearest_label(eta);
    const double tol = 1e-3 * std::max(1.0, std::abs(eta));
    if (std::abs(s.eigenvalue(k) - eta) <= tol)
        return k;
    std::vector<double> sorted = s.eigenvalues;
    std::sort(sorted.begin(), sorted.end(),
              [eta](double x, double y) { return std::abs(x - eta) < std::abs(y - eta); });
    std::ostringstream msg;
    msg << std::setprecision(15) << "no eigenvalue within " << tol << " of eta=" << eta << "; nearest:";
    for (std::size_t j = 0; j < std::min<std::size_t>(3, sorted.size()); ++j)
        msg << ' ' << sorted[j];
    throw invalid_argument(msg.str());
}

} // namespace detail

inline int cmd_spectrum(const SpectrumArgs& args, const Common& common, std::ostream& out) {
    detail::Run run("spectrum", common, out);
    run.parameters() = {{"parity", args.parity}, {"n", args.n}, {"a", args.a}};
    const auto m = build_matrix(detail::parse_parity(args.parity), args.n, args.a);
    const auto s = eigen_decompose(m, detail::parse_tier(common.tier));
    if (common.format == "json") {
        run.emit_json(detail::spectrum_json(s));
    } else {
        detail::Csv csv(common.precision);
        csv.header({"k", "eta", "r", "D"});
        for (std::size_t k = 1; k <= s.dimension(); ++k)
            for (int r = s.row_lo; r <= s.row_hi(); ++r)
                csv.cell(static_cast<int>(k))
                    .cell(s.eigenvalue(static_cast<int>(k)))
                    .cell(r)
                    .cell(s.coefficient(static_cast<int>(k), r))
                    .end();
        run.emit_csv(csv.str());
    }
    return ok;
}

inline int cmd_wavefunction(const WavefunctionArgs& args, const Common& common, std::ostream& out) {
    detail::Run run("wavefunction", common, out);
    run.parameters() = {{"parity", args.parity},     {"n", args.n},
                        {"a", args.a},               {"eta", args.eta},
                        {"branch", args.branch},     {"xi_min", args.xi_min},
                        {"xi_max", args.xi_max},     {"points", args.points},
                        {"with_prefactor", args.with_prefactor}};
    if (args.points < 2)
        throw invalid_argument("--points must be at least 2");
    if (!(args.xi_max > args.xi_min))
        throw invalid_argument("--xi-max must exceed --xi-min");
    const auto m = build_matrix(detail::parse_parity(args.parity), args.n, args.a);
    const auto s = eigen_decompose(m, detail::parse_tier(common.tier));
    const int k = detail::select_label(s, args.eta);
    const auto p = make_polynomial(s, k, detail::parse_branch(args.branch));

    std::vector<double> xs(static_cast<std::size_t>(args.points));
    std::vector<Complex> vs(xs.size());
    for (int j = 0; j < args.points; ++j) {
        const double xi = args.xi_min + (args.xi_max - args.xi_min) * j / (args.points - 1);
        xs[j] = xi;
        vs[j] = p(xi) * (args.with_prefactor ? prefactor(args.a, xi) : 1.0);
    }
    const auto strengths = harmonic_strengths(p);

    detail::Csv sc(common.precision);
    sc.header({"r", "strength"});
    for (const auto& h : strengths)
        sc.cell(h.r).cell(h.strength).end();
    if (!args.strengths_out.empty())
        run.emit_extra_csv(args.strengths_out, sc.str());

    if (common.format == "json") {
        Json j;
        j["parity"] = args.parity;
        j["n"] = args.n;
        j["a"] = args.a;
        j["k"] = k;
        j["eta"] = p.eta();
        j["branch"] = args.branch;
        j["with_prefactor"] = args.with_prefactor;
        Json st = Json::array();
        for (const auto& h : strengths)
            st.push_back({{"r", h.r}, {"strength", h.strength}});
        j["strengths"] = st;
        Json tr = Json::array();
        for (std::size_t i = 0; i < xs.size(); ++i)
            tr.push_back({{"xi", xs[i]}, {"re", vs[i].real()}, {"im", vs[i].imag()}, {"abs", std::abs(vs[i])}});
        j["trace"] = tr;
        run.emit_json(std::move(j));
    } else {
        detail::Csv csv(common.precision);
        csv.header({"xi", "re", "im", "abs"});
        for (std::size_t i = 0; i < xs.size(); ++i)
            csv.cell(xs[i]).cell(vs[i].real()).cell(vs[i].imag()).cell(std::abs(vs[i])).end();
        run.emit_csv(csv.str());
    }
    return ok;
}

inline Json physics_json(const PhysicalConfig& c) {
    Json j;
    j["photon_energy_ev"] = c.photon_energy_ev;
    j["plasma_energy_ev"] = c.plasma_energy_ev;
    j["electron_density_cm3"] = c.electron_density_cm3;
    j["intensity_wcm2"] = c.intensity_wcm2;
    j["n_m"] = c.n_m;
    j["k0_cm"] = c.k0;
    j["kp_cm"] = c.kp;
    j["plasma_wavelength_nm"] = c.plasma_wavelength_nm;
    j["mu0"] = c.mu0;
    j["photon_density_cm3"] = c.photon_density_cm3;
    j["a"] = c.a;
    j["mass_shift_ratio"] = c.mass_shift_ratio;
    j["scaled_kappa"] = c.scaled_kappa();
    const auto& fp = c.first_principles;
    j["first_principles"] = {{"field_amplitude_statv_cm", fp.field_amplitude},
                             {"mu0", fp.mu0},
                             {"photon_density_cm3", fp.photon_density_cm3},
                             {"a_work", fp.a_work},
                             {"a_density_ratio", fp.a_density_ratio},
                             {"a_mu0", fp.a_mu0},
                             {"a_vector_potential", fp.a_vector_potential}};
    j["a_discrepancy"] = c.a_discrepancy;
    return j;
}

inline int cmd_physics(const PhysicsArgs& args, const Common& common, std::ostream& out) {
    detail::Run run("physics", common, out);
    PhysicalInputs in;
    in.photon_energy_ev = args.photon_ev;
    in.intensity_wcm2 = args.intensity_wcm2;
    run.parameters() = {{"photon_ev", args.photon_ev}, {"intensity_wcm2", args.intensity_wcm2}};
    if (!args.plasma_ev.empty()) {
        in.plasma_energy_ev = args.plasma_ev.front();
        run.parameters()["plasma_ev"] = args.plasma_ev.front();
    }
    if (!args.density_cm3.empty()) {
        in.electron_density_cm3 = args.density_cm3.front();
        run.parameters()["density_cm3"] = args.density_cm3.front();
    }
    const auto cfg = derive_config(in);
    const Json j = physics_json(cfg);
    if (common.format == "json") {
        run.emit_json(j);
    } else {
        detail::Csv csv(common.precision);
        csv.header({"quantity", "value"});
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                for (const auto& [sub, v] : value.items())
                    csv.cell(key + "." + sub).cell(v.get<double>()).end();
            } else {
                csv.cell(key).cell(value.get<double>()).end();
            }
        }
        run.emit_csv(csv.str());
    }
    return ok;
}

struct ScanRow {
    int n;
    double a;
    int k;
    double eta;
    bool gap;
    double p_xi_scaled; // NaN for gap states
    double radicand;
    bool evanescent;
};

inline std::vector<ScanRow> scan_rows(Parity parity, int n_min, int n_max, const std::vector<double>& a_list,
                                      PrecisionTier tier, double pz, double kappa) {
    struct Cell {
        int n;
        double a;
    };
    std::vector<Cell> grid;
    for (int n = n_min; n <= n_max; ++n)
        for (double a : a_list)
            grid.push_back({n, a});
    if (grid.empty())
        throw invalid_argument("scan grid is empty");
    // Validate up front so a bad cell is a usage error, not a worker exception.
    for (const auto& c : grid)
        (void)build_matrix(parity, c.n, c.a);

    std::vector<std::future<std::vector<ScanRow>>> jobs;
    jobs.reserve(grid.size());
    for (const auto& c : grid) {
        jobs.push_back(std::async(std::launch::async, [=] {
            const auto s = eigen_decompose(build_matrix(parity, c.n, c.a), tier);
            std::vector<ScanRow> rows;
            for (const auto& rec : momentum_spectrum(s, pz, kappa)) {
                if (rec.sign != 1)
                    continue;
                rows.push_back({c.n, c.a, rec.k, rec.eta, rec.gap,
                                rec.p_xi_scaled ? *rec.p_xi_scaled : std::numeric_limits<double>::quiet_NaN(),
                                rec.radicand, rec.evanescent});
            }
            return rows;
        }));
    }
    std::vector<ScanRow> out;
    for (auto& j : jobs) {
        auto rows = j.get();
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

inline int cmd_scan(const ScanArgs& args, const Common& common, std::ostream& out) {
    detail::Run run("scan", common, out);
    run.parameters() = {{"parity", args.parity}, {"n_min", args.n_min}, {"n_max", args.n_max},
                        {"a", args.a_list},      {"pz", args.pz},       {"kappa", args.kappa}};
    const auto rows = scan_rows(detail::parse_parity(args.parity), args.n_min, args.n_max, args.a_list,
                                detail::parse_tier(common.tier), args.pz, args.kappa);
    if (common.format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json row = {{"n", r.n}, {"a", r.a}, {"k", r.k}, {"eta", r.eta}, {"gap", r.gap}};
            row["p_xi_scaled"] = r.gap ? Json(nullptr) : Json(r.p_xi_scaled);
            row["radicand"] = r.radicand;
            row["evanescent"] = r.evanescent;
            arr.push_back(std::move(row));
        }
        Json j;
        j["parity"] = args.parity;
        j["rows"] = std::move(arr);
        run.emit_json(std::move(j));
    } else {
        detail::Csv csv(common.precision);
        csv.header({"n", "a", "k", "eta", "gap", "p_xi_scaled", "radicand", "evanescent"});
        for (const auto& r : rows)
            csv.cell(r.n).cell(r.a).cell(r.k).cell(r.eta).cell(r.gap).cell(r.p_xi_scaled).cell(r.radicand)
                .cell(r.evanescent).end();
        run.emit_csv(csv.str());
    }
    return ok;
}

struct Check {
    std::string name;
    double value;
    double threshold;
    bool pass;
};

/// Invariant suite for one configuration.
inline std::vector<Check> verify_checks(const TridiagonalMatrix& m, SpectralSolution s, double corrupt,
                                        Json* info = nullptr) {
    std::vector<Check> checks;
    auto add = [&](std::string name, double value, double threshold) {
        checks.push_back({std::move(name), value, threshold, value <= threshold});
    };
    s.eigenvalues.front() += corrupt;
    const std::size_t dim = s.dimension();
    const double two_na = 2.0 * m.n() * m.a();

    double ode = 0.0;
    for (std::size_t k = 1; k <= dim; ++k) {
        for (Branch b : {Branch::Plus, Branch::Minus}) {
            const auto p = make_polynomial(s, static_cast<int>(k), b);
            double worst = 0.0, fmax = 0.0;
            for (int j = 0; j < 64; ++j) {
                const double z = std::numbers::pi * j / 64.0 * (m.parity() == Parity::Even ? 1.0 : 2.0);
                worst = std::max(worst, std::abs(ode_residual(p, z)));
                fmax = std::max(fmax, std::abs(p(2.0 * z)));
            }
            ode = std::max(ode, worst / ((std::abs(p.eta()) + two_na) * fmax));
        }
    }
    add("ode_residual", ode, 1e-8);

    double matrix_residual = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        const auto& d = s.eigenvectors[k];
        const double eta = s.eigenvalues[k];
        double worst = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            double r = (m.diag()[j] - eta) * d[j];
            if (j + 1 < dim)
                r += m.super()[j] * d[j + 1];
            if (j > 0)
                r += m.sub()[j - 1] * d[j - 1];
            worst = std::max(worst, std::abs(r));
        }
        matrix_residual = std::max(matrix_residual, worst / (std::abs(eta) + m.a() * dim));
    }
    add("matrix_residual", matrix_residual, 1e-10);

    double norm_dev = 0.0;
    for (std::size_t k = 1; k <= dim; ++k) {
        const auto p = make_polynomial(s, static_cast<int>(k), Branch::Plus);
        double sum = 0.0;
        for (double d : p.coeffs())
            sum += d * d;
        norm_dev = std::max({norm_dev, std::abs(sum - 1.0), std::abs(normalization_check(p) - 1.0)});
    }
    add("normalization", norm_dev, 1e-12);

    const auto bio = gram_matrix(s, GramKind::Biorthogonal);
    add("gram_off_diagonal", bio.off_diagonal_relative, 1e-9);
    add("gram_route_agreement", bio.route_discrepancy_relative, 1e-9);

    double trace_sum = 0.0;
    for (double e : s.eigenvalues)
        trace_sum += e;
    add("trace", std::abs(trace_sum - m.trace()) / std::max(1.0, std::abs(m.trace())), 1e-9);

    if (dim <= 8 && m.a() > 0.0) {
        const auto oracle = oracle_eigenvalues(m);
        double delta = 0.0;
        for (std::size_t k = 0; k < dim; ++k)
            delta = std::max(delta, std::abs(oracle[k] - s.eigenvalues[k]));
        add("oracle_delta", delta, 1e-10);
    }

    if (info) {
        const auto herm = gram_matrix(s, GramKind::Hermitian);
        (*info)["hermitian_gram_off_diagonal_relative"] = herm.off_diagonal_relative;
        (*info)["biorthogonal_gram_min_diagonal"] = bio.min_diagonal;
    }
    return checks;
}

inline int cmd_verify(const VerifyArgs& args, const Common& common, std::ostream& out, std::ostream& err) {
    detail::Run run("verify", common, out);
    run.parameters() = {{"parity", args.parity}, {"n", args.n}, {"a", args.a}};
    if (args.corrupt_eigenvalue != 0.0)
        run.parameters()["corrupt_eigenvalue"] = args.corrupt_eigenvalue;
    const auto m = build_matrix(detail::parse_parity(args.parity), args.n, args.a);
    const auto s = eigen_decompose(m, detail::parse_tier(common.tier));
    Json info = Json::object();
    const auto checks = verify_checks(m, s, args.corrupt_eigenvalue, &info);
    bool pass = true;
    std::vector<std::string> failed;
    for (const auto& c : checks)
        if (!c.pass) {
            pass = false;
            failed.push_back(c.name);
        }
    if (common.format == "json") {
        Json j;
        j["parity"] = args.parity;
        j["n"] = args.n;
        j["a"] = args.a;
        j["pass"] = pass;
        j["failed"] = failed;
        Json arr = Json::array();
        for (const auto& c : checks)
            arr.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}});
        j["checks"] = arr;
        j["informational"] = info;
        run.emit_json(std::move(j));
    } else {
        detail::Csv csv(common.precision);
        csv.header({"check", "value", "threshold", "pass"});
        for (const auto& c : checks)
            csv.cell(c.name).cell(c.value).cell(c.threshold).cell(c.pass).end();
        run.emit_csv(csv.str());
    }
    for (const auto& f : failed)
        err << "verification failed: " << f << '\n';
    return pass ? ok : verification_failure;
}

namespace detail {

inline const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const not_underdense*>(&e))
        return "not-underdense";
    if (dynamic_cast<const ambiguous_input*>(&e))
        return "ambiguous-input";
    if (dynamic_cast<const invalid_config*>(&e))
        return "invalid-config";
    return "invalid-argument";
}

inline void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out, "Output path (default: stdout)");
    sub->add_option("--tier", c.tier, "Precision tier")->check(CLI::IsMember({"double", "extended"}));
    sub->add_flag("--seedless", c.seedless, "No randomness is used; accepted for reproducible pipelines");
    sub->add_option("--precision", c.precision, "Significant digits in CSV columns")->check(CLI::Range(1, 17));
}

} // namespace detail

/// Parse and run one command; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg(argv[i]);
        if (arg.starts_with("--seedless=")) {
            err << "--seedless takes no value\n";
            return usage_error;
        }
    }

    CLI::App app{"Polynomial solutions of the Dirac equation in a plane wave in an underdense medium", "ince"};
    app.require_subcommand(1);
    app.set_version_flag("--version", artifact_version);

    Common common;
    SpectrumArgs sp;
    WavefunctionArgs wf;
    PhysicsArgs ph;
    ScanArgs sc;
    VerifyArgs vf;

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and coefficient vectors");
    detail::add_common(spectrum, common);
    spectrum->add_option("--parity", sp.parity)->required()->check(CLI::IsMember({"even", "odd"}));
    spectrum->add_option("--n", sp.n)->required();
    spectrum->add_option("--a", sp.a)->required();

    auto* wave = app.add_subcommand("wavefunction", "Polynomial trace over a xi window");
    detail::add_common(wave, common);
    wave->add_option("--parity", wf.parity)->required()->check(CLI::IsMember({"even", "odd"}));
    wave->add_option("--n", wf.n)->required();
    wave->add_option("--a", wf.a)->required();
    wave->add_option("--eta", wf.eta, "Select the eigenvalue nearest to this value")->required();
    wave->add_option("--branch", wf.branch)->check(CLI::IsMember({"plus", "minus"}));
    wave->add_option("--xi-min", wf.xi_min);
    wave->add_option("--xi-max", wf.xi_max);
    wave->add_option("--points", wf.points);
    wave->add_flag("--with-prefactor", wf.with_prefactor, "Multiply by exp(-(a/4) cos xi)");
    wave->add_option("--strengths-out", wf.strengths_out, "Also write (r, D_r^2) as CSV");

    auto* physics = app.add_subcommand("physics", "Laser/plasma parameter report");
    detail::add_common(physics, common);
    physics->add_option("--photon-ev", ph.photon_ev)->required();
    auto* plasma = physics->add_option("--plasma-ev", ph.plasma_ev)->expected(1);
    auto* density = physics->add_option("--density-cm3", ph.density_cm3)->expected(1);
    physics->add_option("--intensity-wcm2", ph.intensity_wcm2)->required();
    (void)plasma;
    (void)density;

    auto* scan = app.add_subcommand("scan", "Eigenvalue and gap table over an (n, a) grid");
    detail::add_common(scan, common);
    scan->add_option("--parity", sc.parity)->required()->check(CLI::IsMember({"even", "odd"}));
    scan->add_option("--n-min", sc.n_min)->required();
    scan->add_option("--n-max", sc.n_max)->required();
    scan->add_option("--a", sc.a_list, "Coupling values (comma separated)")->delimiter(',')->required();
    scan->add_option("--pz", sc.pz, "P_z = 2 p_z / k_p");
    scan->add_option("--kappa", sc.kappa, "K = 2 kappa / k_p");

    auto* verify = app.add_subcommand("verify", "Invariant suite for one configuration");
    detail::add_common(verify, common);
    verify->add_option("--parity", vf.parity)->required()->check(CLI::IsMember({"even", "odd"}));
    verify->add_option("--n", vf.n)->required();
    verify->add_option("--a", vf.a)->required();
    verify->add_option("--corrupt-eigenvalue", vf.corrupt_eigenvalue)->group("");

    // Per-command format defaults; an explicit --format overrides them.
    common.format = "";
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }
    if (common.format.empty())
        common.format = (wave->parsed() || scan->parsed()) ? "csv" : "json";

    try {
        if (spectrum->parsed())
            return cmd_spectrum(sp, common, out);
        if (wave->parsed())
            return cmd_wavefunction(wf, common, out);
        if (physics->parsed())
            return cmd_physics(ph, common, out);
        if (scan->parsed())
            return cmd_scan(sc, common, out);
        return cmd_verify(vf, common, out, err);
    } catch (const io_failure& e) {
        err << "error: " << e.what() << '\n';
        return io_error;
    } catch (const std::invalid_argument& e) {
        err << "error (" << detail::error_kind(e) << "): " << e.what() << '\n';
        return usage_error;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
}

} // namespace ince::cli
