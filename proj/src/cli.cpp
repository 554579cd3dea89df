#include "fhs/cli.hpp"

#include <CLI11.hpp>
#include <boost/version.hpp>
#include <mpfr.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#ifndef FHS_VERSION
#define FHS_VERSION "0.0.0"
#endif

namespace fhs::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json complex_json(const cplx& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json vector_json(const VecC& v) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    return json{{"re", re}, {"im", im}};
}

json real_vector_json(const VecR& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json versions_json() {
    return json{{"fhs", FHS_VERSION},
                {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION)},
                {"boost", BOOST_LIB_VERSION},
                {"mpfr", MPFR_VERSION_STRING}};
}

// Doubles are written in shortest round-trip form.
std::string dump(const json& j) { return j.dump(2) + "\n"; }

double kappa_max_of(const RunConfig& cfg, const Spectrum& sp) {
    return cfg.kappa_max ? *cfg.kappa_max : cfg.kappa_min + (cfg.n_max + 2) * sp.period();
}

struct CsvTable {
    std::string header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const fs::path& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) {
        throw MissingInput(what + " file missing");
    }
    CsvTable t;
    std::getline(in, t.header);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            row.push_back(cell == "nan" ? kNaN : std::stod(cell));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_file(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path.string());
    }
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kEigsHeader = "n,kappa_approx,lambda_approx,two_lambda,divisor_residual";
const char* kOracleHeader = "n,kappa_exact,lambda_exact,gap_to_next";
const char* kFunctionHeader = "z,f_asym,h_asym,f_oracle_interp";

}  // namespace

std::string format_value(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::vector<double> parse_endpoints(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            if (used != cell.size() && cell.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(cell);
            }
        } catch (const std::exception&) {
            throw ValidationError("endpoint '" + cell + "' is not a real number");
        }
    }
    return out;
}

void validate(const RunConfig& cfg) {
    IntervalSystem sys(cfg.endpoints);  // endpoint rules live in the constructor
    if (cfg.n_max < 1) {
        throw ValidationError("n_max must be at least 1");
    }
    if (!(cfg.theta_eps > 1e-14 && cfg.theta_eps < 1e-4)) {
        throw ValidationError("theta_eps must lie in (1e-14, 1e-4)");
    }
    if (cfg.quad_order < 4 * cfg.n_max) {
        throw ValidationError("quad_order must be at least 4 n_max");
    }
    if (cfg.kappa_min < 1.0) {
        throw ValidationError("kappa_min must be at least 1");
    }
    if (cfg.kappa_max && *cfg.kappa_max <= cfg.kappa_min) {
        throw ValidationError("kappa_max must exceed kappa_min");
    }
    if (cfg.samples < 2) {
        throw ValidationError("samples must be at least 2");
    }
    if (!(cfg.margin >= 0.0 && cfg.margin < 0.5)) {
        throw ValidationError("margin must lie in [0, 0.5)");
    }
    if (cfg.n < 0) {
        throw ValidationError("n must be non-negative");
    }
}

Report periods_report(const RunConfig& cfg) {
    const Model m(cfg.endpoints, cfg.theta_eps);
    const JumpData& jd = m.gf.jumps();
    const AbelData ad = m.abel.data();
    json j = period_data_json(m.pd);
    j["Omega"] = real_vector_json(jd.Omega);
    j["delta"] = real_vector_json(jd.delta);
    j["g_inf"] = jd.g_inf;
    j["d_inf"] = complex_json(jd.d_inf);
    j["C0"] = complex_json(jd.C0);
    j["u_infinity"] = real_vector_json(ad.u_infinity);
    j["W0"] = vector_json(ad.W0);
    j["K_riemann"] = vector_json(ad.riemann_constants);
    return {dump(j), false};
}

Report eigs_report(const RunConfig& cfg) {
    const Model m(cfg.endpoints, cfg.theta_eps);
    const Spectrum& sp = m.spectrum;
    const std::vector<double> ks = sp.find_eigenvalues(cfg.kappa_min, kappa_max_of(cfg, sp));
    Report r;
    std::ostringstream os;
    os << kEigsHeader << "\n";
    std::optional<DivisorSolution> prev;
    for (int n = 1; n <= cfg.n_max; ++n) {
        double kappa = kNaN, residual = kNaN;
        if (n <= static_cast<int>(ks.size())) {
            kappa = ks[n - 1];
            try {
                DivisorSolution d = sp.solve_divisor(kappa, prev ? &*prev : nullptr);
                residual = d.residual;
                prev = std::move(d);
            } catch (const NumericalError&) {
                prev.reset();
            }
        }
        const double lambda = std::exp(-kappa);
        r.partial = r.partial || std::isnan(kappa) || std::isnan(residual);
        os << n << "," << format_value(kappa) << "," << format_value(lambda) << "," << format_value(2.0 * lambda)
           << "," << format_value(residual) << "\n";
    }
    r.text = os.str();
    return r;
}

Report oracle_report(const RunConfig& cfg) {
    const Oracle orc(IntervalSystem(cfg.endpoints), cfg.quad_order);
    const ExactSpectrum& ex = orc.exact_spectrum(cfg.n_max);
    Report r;
    std::ostringstream os;
    os << kOracleHeader << "\n";
    auto kappa_at = [&](int n) {
        return n < static_cast<int>(ex.modes.size()) && n < ex.trusted ? ex.modes[n].kappa : kNaN;
    };
    for (int n = 0; n < cfg.n_max; ++n) {
        const double k = kappa_at(n);
        r.partial = r.partial || std::isnan(k);
        os << n << "," << format_value(k) << "," << format_value(std::exp(-k)) << ","
           << format_value(kappa_at(n + 1) - k) << "\n";
    }
    r.text = os.str();
    return r;
}

Report compare_report(const RunConfig& cfg) {
    const fs::path dir(cfg.out);
    const CsvTable eigs = read_csv(dir / "eigs.csv", "eigs");
    const CsvTable orc = read_csv(dir / "oracle.csv", "oracle");
    if (eigs.header != kEigsHeader || orc.header != kOracleHeader) {
        throw ValidationError("unexpected CSV header");
    }
    if (eigs.rows.size() != orc.rows.size()) {
        throw ValidationError("n_max differs between eigs.csv and oracle.csv");
    }
    const PeriodData pd = build_period_data(IntervalSystem(cfg.endpoints));
    const double tau11_im = pd.tau(0, 0).imag();

    std::vector<double> approx, exact;
    for (const auto& row : eigs.rows) {
        approx.push_back(row.at(1));
    }
    for (const auto& row : orc.rows) {
        exact.push_back(row.at(1));
    }
    // shift on 0-based lists; eigs row n carries list index n - 1
    const int s0 = optimal_index_shift(approx, exact);
    const int shift = s0 - 1;

    std::vector<double> ns, ys;
    for (std::size_t n = 5; n <= 22 && n < exact.size(); ++n) {
        if (std::isfinite(exact[n])) {
            ns.push_back(static_cast<double>(n));
            ys.push_back(-exact[n]);
        }
    }
    Report r;
    json j;
    const double predicted = -std::numbers::pi / tau11_im;
    if (ns.size() >= 2) {
        const LineFit fit = fit_line(ns, ys);
        j["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"n_first", ns.front()}, {"n_last", ns.back()}};
        j["relative_slope_error"] = std::abs(fit.slope - predicted) / std::abs(predicted);
    } else {
        j["fit"] = nullptr;
        j["relative_slope_error"] = nullptr;
        r.partial = true;
    }
    j["predicted_slope"] = predicted;
    j["index_shift"] = shift;

    json rows = json::array();
    for (std::size_t i = 0; i < eigs.rows.size(); ++i) {
        const auto& e = eigs.rows[i];
        const int n = static_cast<int>(e.at(0));
        const int m = n + shift;
        const bool have = m >= 0 && m < static_cast<int>(exact.size());
        const double ke = have ? exact[m] : kNaN;
        const double gap = std::abs(ke - e.at(1));
        auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
        rows.push_back({{"n", n},
                        {"oracle_label", have ? json(m) : json(nullptr)},
                        {"kappa_approx", num(e.at(1))},
                        {"lambda_approx", num(e.at(2))},
                        {"two_lambda", num(e.at(3))},
                        {"kappa_exact", num(ke)},
                        {"lambda_exact", num(std::exp(-ke))},
                        {"abs_gap", num(gap)},
                        {"divisor_residual", num(e.at(4))}});
        r.partial = r.partial || !std::isfinite(gap);
    }
    j["rows"] = rows;
    j["metadata"] = {{"endpoints", cfg.endpoints},
                     {"tau11_im", tau11_im},
                     {"slope", j["fit"].is_null() ? json(nullptr) : j["fit"]["slope"]},
                     {"intercept_fit", j["fit"].is_null() ? json(nullptr) : j["fit"]["intercept"]},
                     {"quad_order", cfg.quad_order},
                     {"theta_eps", cfg.theta_eps},
                     {"versions", versions_json()},
                     {"timestamp", iso_timestamp()}};
    r.text = dump(j);
    return r;
}

Report eigenfunction_report(const RunConfig& cfg) {
    const Model m(cfg.endpoints, cfg.theta_eps);
    const Spectrum& sp = m.spectrum;
    const int n_max = std::max(cfg.n_max, cfg.n + 4);
    if (cfg.quad_order < 4 * n_max) {
        throw ValidationError("quad_order must be at least 4 (n + 4) for eigenfunctions");
    }
    const Oracle orc(m.sys, cfg.quad_order);
    const ExactSpectrum& ex = orc.exact_spectrum(n_max);
    const std::vector<double> ks = sp.find_eigenvalues(cfg.kappa_min, cfg.kappa_min + (n_max + 2) * sp.period());
    std::vector<double> exact;
    for (const ExactMode& md : ex.modes) {
        exact.push_back(md.kappa);
    }
    const int a = cfg.n - optimal_index_shift(ks, exact);
    if (a < 0 || a >= static_cast<int>(ks.size())) {
        throw ValidationError("no approximate eigenvalue matches n = " + std::to_string(cfg.n));
    }
    // samples spread over the main arcs in proportion to length, each arc trimmed by the margin
    const IntervalSystem& sys = m.sys;
    double total = 0.0;
    for (int j = 1; j <= sys.genus() + 1; ++j) {
        total += sys.arc(j).hi - sys.arc(j).lo;
    }
    std::vector<double> zi, ze;
    for (int j = 1; j <= sys.genus() + 1; ++j) {
        const Segment s = sys.arc(j);
        const double len = s.hi - s.lo;
        const int count = std::max(2, static_cast<int>(std::lround(cfg.samples * len / total)));
        const double lo = s.lo + cfg.margin * len, hi = s.hi - cfg.margin * len;
        for (int i = 0; i < count; ++i) {
            const double z = lo + (hi - lo) * (i + 0.5) / count;
            (j == 1 || j == sys.genus() + 1 ? ze : zi).push_back(z);
        }
    }
    const auto fa = sp.asymptotic_singular_functions(ks[a], zi, cfg.margin);
    const auto ha = sp.asymptotic_singular_functions(ks[a], ze, cfg.margin);
    std::vector<double> fo = orc.singular_f(cfg.n, zi);
    // align the oracle's sign with the asymptotic side for plotting
    double dot = 0.0;
    for (std::size_t i = 0; i < zi.size(); ++i) {
        dot += fa[i].f * fo[i];
    }
    const double sign = dot < 0.0 ? -1.0 : 1.0;

    std::vector<std::array<double, 4>> rows;
    for (std::size_t i = 0; i < zi.size(); ++i) {
        rows.push_back({zi[i], fa[i].f, kNaN, sign * fo[i]});
    }
    for (std::size_t i = 0; i < ze.size(); ++i) {
        rows.push_back({ze[i], kNaN, ha[i].h, kNaN});
    }
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x[0] < y[0]; });
    std::ostringstream os;
    os << kFunctionHeader << "\n";
    for (const auto& row : rows) {
        os << format_value(row[0]) << "," << format_value(row[1]) << "," << format_value(row[2]) << ","
           << format_value(row[3]) << "\n";
    }
    return {os.str(), false};
}

std::string strip_timestamp(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("\"timestamp\"") == std::string::npos) {
            out << line << "\n";
        }
    }
    return out.str();
}

CheckResult determinism_check(const RunConfig& cfg) {
    CheckResult r{10, "determinism", false, ""};
    try {
        std::vector<std::string> runs[2];
        for (int k = 0; k < 2; ++k) {
            RunConfig c = cfg;
            c.out = (fs::path(cfg.out) / ("run" + std::to_string(k))).string();
            write_file(fs::path(c.out) / "eigs.csv", eigs_report(c).text);
            write_file(fs::path(c.out) / "oracle.csv", oracle_report(c).text);
            write_file(fs::path(c.out) / "report.json", compare_report(c).text);
            for (const char* f : {"eigs.csv", "oracle.csv", "report.json"}) {
                runs[k].push_back(strip_timestamp(read_file(fs::path(c.out) / f)));
            }
        }
        int same = 0;
        for (std::size_t i = 0; i < runs[0].size(); ++i) {
            same += runs[0][i] == runs[1][i];
        }
        r.passed = same == 3;
        r.detail = std::to_string(same) + "/3 outputs byte-identical modulo timestamp";
    } catch (const std::exception& e) {
        r.detail = std::string("exception: ") + e.what();
    }
    return r;
}

namespace {

int emit(const RunConfig& cfg, const std::string& file, const Report& rep) {
    write_file(fs::path(cfg.out) / file, rep.text);
    std::cout << (fs::path(cfg.out) / file).string() << "\n";
    return rep.partial ? ExitCode::partial : ExitCode::ok;
}

int selftest(const RunConfig& cfg) {
    CheckConfig cc;
    cc.endpoints = cfg.endpoints;
    cc.quad_order = cfg.quad_order;
    cc.theta_eps = cfg.theta_eps;
    cc.n_max = cfg.n_max;
    CheckSuite suite(cc);
    bool all = true;
    auto line = [&](const CheckResult& r) {
        std::cout << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << std::endl;
        all = all && r.passed;
    };
    for (int id = 3; id <= 8; ++id) {
        line(suite.run(id));
    }
    RunConfig dc = cfg;
    dc.out = (fs::path(cfg.out) / "selftest").string();
    line(determinism_check(dc));
    return all ? ExitCode::ok : ExitCode::partial;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymptotic and exact singular values of the interior problem for the finite Hilbert transform"};
    app.set_config("--config", "", "TOML or INI file with option values; flags override it");
    app.require_subcommand(1);

    RunConfig cfg;
    std::string endpoints;
    double kmax = 0.0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--endpoints", endpoints, "Comma-separated a_1 < ... < a_{2g+2}");
        sub->add_option("--n-max", cfg.n_max, "Number of indices")->capture_default_str();
        sub->add_option("--quad-order", cfg.quad_order, "Oracle nodes per inner arc")->capture_default_str();
        sub->add_option("--theta-eps", cfg.theta_eps, "Theta truncation accuracy")->capture_default_str();
        sub->add_option("--kappa-min", cfg.kappa_min, "Lower end of the root scan")->capture_default_str();
        sub->add_option("--kappa-max", kmax, "Upper end of the root scan");
        sub->add_option("--out", cfg.out, "Output directory")->capture_default_str();
        sub->add_option("--samples", cfg.samples, "Eigenfunction grid size")->capture_default_str();
        sub->add_option("--margin", cfg.margin, "Endpoint exclusion fraction")->capture_default_str();
    };
    CLI::App* periods = app.add_subcommand("periods", "Period matrix, jump constants and Abel data");
    CLI::App* eigs = app.add_subcommand("eigs", "Approximate eigenvalues from the theta divisor");
    CLI::App* oracle = app.add_subcommand("oracle", "Exact eigenvalues by Nystrom discretization");
    CLI::App* compare = app.add_subcommand("compare", "Compare eigs.csv with oracle.csv");
    CLI::App* fn = app.add_subcommand("eigenfunctions", "Asymptotic and exact singular functions");
    CLI::App* self = app.add_subcommand("selftest", "Suites 3-8 and the determinism check");
    for (CLI::App* sub : {periods, eigs, oracle, compare, fn, self}) {
        add_common(sub);
    }
    fn->add_option("--n", cfg.n, "Sign-change label of the eigenfunction")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ExitCode::ok : ExitCode::validation;
    }

    try {
        if (!endpoints.empty()) {
            cfg.endpoints = parse_endpoints(endpoints);
        }
        for (CLI::App* sub : app.get_subcommands()) {
            if (sub->count("--kappa-max") > 0) {
                cfg.kappa_max = kmax;
            }
        }
        validate(cfg);
        if (periods->parsed()) {
            return emit(cfg, "periods.json", periods_report(cfg));
        }
        if (eigs->parsed()) {
            return emit(cfg, "eigs.csv", eigs_report(cfg));
        }
        if (oracle->parsed()) {
            return emit(cfg, "oracle.csv", oracle_report(cfg));
        }
        if (compare->parsed()) {
            return emit(cfg, "report.json", compare_report(cfg));
        }
        if (fn->parsed()) {
            return emit(cfg, "fn_" + std::to_string(cfg.n) + ".csv", eigenfunction_report(cfg));
        }
        return selftest(cfg);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ExitCode::validation;
    } catch (const MissingInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ExitCode::missing_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ExitCode::partial;
    }
}

}  // namespace fhs::cli
