#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "relaxlab/analysis.hpp"
#include "relaxlab/checks.hpp"
#include "relaxlab/config.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/model.hpp"
#include "relaxlab/rates.hpp"
#include "relaxlab/snapshot_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace relaxlab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("not a number in list: '" + item + "'");
        }
    }
    return out;
}

json verdict_json(const Verdict& v) {
    json j;
    j["claim"] = v.claim;
    j["anchor"] = v.anchor;
    j["status"] = to_string(v.status);
    j["target"] = v.target;
    j["measured"] = v.measured;
    j["tolerance"] = v.tolerance;
    j["window"] = {v.t_min, v.t_max};
    j["residual"] = v.residual;
    json m = json::object();
    for (const auto& [k, x] : v.metrics) m[k] = std::isfinite(x) ? json(x) : json(format_double(x));
    j["metrics"] = m;
    j["notes"] = v.notes;
    return j;
}

void write_norms_csv(const fs::path& path, const NormSeries& s) {
    std::ofstream os(path);
    os << "t,l1,l2,linf\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        os << format_double(s.times[i]) << ',' << format_double(s.l1[i]) << ','
           << format_double(s.l2[i]) << ',' << format_double(s.linf[i]) << '\n';
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream os(path);
    os << j.dump(2) << '\n';
}

ExperimentConfig load(const std::string& path, const std::string& out) {
    ExperimentConfig cfg = path.empty() ? ExperimentConfig{} : load_config(path);
    if (!out.empty()) cfg.output = out;
    cfg.validate();
    return cfg;
}

json manifest(Campaign& c) {
    const auto& cfg = c.config();
    const auto& ps = c.profiles();
    const auto& g = c.trajectory().grid;
    json j;
    j["config"] = to_text(cfg);
    j["M"] = cfg.mass;
    j["mu"] = c.params().mu;
    j["kappa"] = c.params().kappa;
    j["d"] = ps.d();
    j["K"] = ps.K();
    j["gamma"] = c.tail().gamma;
    const auto nu = nu_tilde(ps, c.tail());
    j["nu0_tilde"] = nu.nu0_tilde ? json(*nu.nu0_tilde) : json(nullptr);
    j["nu1_tilde"] = nu.nu1_tilde ? json(*nu.nu1_tilde) : json(nullptr);
    j["L"] = g.space.L;
    j["N"] = g.space.N;
    j["dt"] = g.dt;
    j["T"] = g.T;
    const double e0 = smallness(c.data(), g.space, 2, 2.0);
    j["smallness_E0_2_2"] = e0;
    j["smallness_gate"] = kSmallnessGate;
    const auto z0 = z0_profile(c.data(), ps, g.space);
    const auto te = tail_limits(z0, c.tail().gamma, g.space);
    j["tail_estimate"] = {{"c_plus", te.c_plus},
                          {"c_minus", te.c_minus},
                          {"rsd_plus", te.rsd_plus},
                          {"rsd_minus", te.rsd_minus},
                          {"conclusive", te.conclusive}};
    j["max_boundary_ratio"] = c.trajectory().max_boundary_ratio;
    auto warnings = c.trajectory().warnings;
    if (!(e0 < kSmallnessGate))
        warnings.push_back("E0^(2,2) = " + format_double(e0) + " is not below the smallness gate " +
                           format_double(kSmallnessGate));
    j["warnings"] = warnings;
    return j;
}

int cmd_run(const std::string& config_path, const std::string& out) {
    Campaign c(load(config_path, out));
    const fs::path dir = c.config().output;
    fs::create_directories(dir);
    const Trajectory& traj = c.trajectory();
    write_snapshots((dir / "snapshots.bin").string(), traj, c.tail());
    write_norms_csv(dir / "norms_chi.csv",
                    difference_norms(traj, ProfileCombo::Chi, c.profiles(), c.tail()));
    const json m = manifest(c);
    write_json(dir / "manifest.json", m);
    std::cout << "wrote " << traj.snapshots.size() << " snapshots to " << dir.string() << '\n';
    for (const auto& w : m["warnings"]) std::cout << "warning: " << w.get<std::string>() << '\n';
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& out,
               const std::string& checks) {
    ExperimentConfig cfg = load(config_path, out);
    if (!checks.empty()) cfg.checks = parse_claim_list(checks);
    if (cfg.checks.empty()) throw UsageError("no checks requested (use --checks or 'checks =')");
    Campaign c(cfg);
    json report = json::array();
    bool failed = false;
    for (ClaimId id : cfg.checks) {
        std::vector<Verdict> vs;
        try {
            vs = c.run(id);
        } catch (const Error& e) {
            Verdict v;
            v.claim = to_string(id);
            v.status = Status::Fail;
            v.notes.push_back(std::string("error: ") + e.what());
            vs.push_back(std::move(v));
        }
        for (const auto& v : vs) {
            report.push_back(verdict_json(v));
            failed = failed || v.status == Status::Fail;
            std::cout << v.claim << ": " << to_string(v.status) << "  measured "
                      << format_double(v.measured) << " target " << format_double(v.target)
                      << " tol " << format_double(v.tolerance) << '\n';
            for (const auto& n : v.notes) std::cout << "    " << n << '\n';
        }
    }
    const fs::path dir = cfg.output;
    fs::create_directories(dir);
    write_json(dir / "verdicts.json", report);
    return failed ? kExitFail : 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out,
              const std::string& gammas, int jobs) {
    const ExperimentConfig base = load(config_path, out);
    const auto gs = parse_list(gammas);
    if (gs.size() < 2) throw UsageError("a sweep needs at least two gamma values");
    for (double g : gs) base.with_gamma(g).validate();
    if (jobs < 1) throw UsageError("--jobs must be >= 1");

    struct Row {
        double gamma = 0.0;
        double e1 = 0.0, e2 = 0.0, einf = 0.0;
        bool log_flag = false;
        std::string error;
    };
    std::vector<Row> rows(gs.size());
    std::atomic<std::size_t> next{0};
    std::mutex io;
    auto worker = [&] {
        for (std::size_t i = next++; i < gs.size(); i = next++) {
            Row& r = rows[i];
            r.gamma = gs[i];
            try {
                ExperimentConfig cfg = base.with_gamma(gs[i]);
                cfg.output = (fs::path(base.output) / ("gamma_" + format_double(gs[i]))).string();
                Campaign c(cfg);
                const auto series =
                    difference_norms(c.trajectory(), ProfileCombo::Chi, c.profiles(), c.tail());
                fs::create_directories(cfg.output);
                write_norms_csv(fs::path(cfg.output) / "norms_chi.csv", series);
                const double T = cfg.T;
                const double t0 = T / c.analysis.window_divisor;
                r.e1 = fit_rate(series, NormKind::L1, t0, T).exponent;
                r.e2 = fit_rate(series, NormKind::L2, t0, T).exponent;
                const RateFit f = fit_rate(series, NormKind::Linf, t0, T);
                r.einf = f.exponent;
                r.log_flag = f.log_flag;
            } catch (const std::exception& e) {
                r.error = e.what();
            }
            std::lock_guard lock(io);
            std::cout << "gamma " << format_double(r.gamma)
                      << (r.error.empty() ? " done" : " failed: " + r.error) << '\n';
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(jobs, static_cast<int>(gs.size()));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    fs::create_directories(base.output);
    std::ofstream os(fs::path(base.output) / "sweep.csv");
    os << "gamma,exponent_l1,exponent_l2,exponent_linf,log_flag,error\n";
    bool any_error = false;
    for (const auto& r : rows) {
        std::string err = r.error;
        for (char& ch : err)
            if (ch == '"') ch = '\'';
        os << format_double(r.gamma) << ',' << format_double(r.e1) << ',' << format_double(r.e2)
           << ',' << format_double(r.einf) << ',' << (r.log_flag ? "true" : "false") << ",\""
           << err << "\"\n";
        any_error = any_error || !r.error.empty();
    }
    return any_error ? kExitFail : 0;
}

int cmd_profiles(const std::string& config_path, const std::string& out,
                 const std::string& times_csv) {
    ExperimentConfig cfg = load(config_path, out);
    auto times = parse_list(times_csv);
    if (times.empty()) throw UsageError("--times is required");
    for (double t : times)
        if (!(t >= 0.0) || t > cfg.T) throw UsageError("profile times must lie in [0, T]");
    Campaign c(cfg);
    const double horizon = std::max(cfg.dt, *std::max_element(times.begin(), times.end()));
    const GridSpec g = GridSpec::make(cfg.half_width(), cfg.N, cfg.dt,
                                      std::ceil(horizon / cfg.dt - 1e-9) * cfg.dt, times);
    const Trajectory traj = run_damped_wave(c.params(), c.data(), g);
    const auto& sg = g.space;
    const auto& ps = c.profiles();
    fs::create_directories(cfg.output);
    for (const auto& s : traj.snapshots) {
        std::vector<double> Z(sg.N, std::numeric_limits<double>::quiet_NaN());
        if (s.t > 0.0) Z = Z_on_grid(sg, s.t, ps, c.tail());
        std::ofstream os(fs::path(cfg.output) / ("profiles_t" + format_double(s.t) + ".csv"));
        os << "x,chi,eta,V,Z,u_minus_chi\n";
        for (int j = 0; j < sg.N; ++j) {
            const double x = sg.x(j);
            const double chi = ps.chi(x, s.t);
            os << format_double(x) << ',' << format_double(chi) << ','
               << format_double(ps.eta(x, s.t)) << ',' << format_double(ps.V(x, s.t)) << ','
               << format_double(Z[j]) << ',' << format_double(s.u[j] - chi) << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Long-time asymptotics of a damped wave equation with nonlinear convection"};
    app.require_subcommand(1);
    std::string config, out, checks, gammas, times;
    int jobs = 1;

    auto* run = app.add_subcommand("run", "solve and write snapshots, norms and a manifest");
    auto* verify = app.add_subcommand("verify", "run claim checks and write verdicts.json");
    auto* sweep = app.add_subcommand("sweep", "fit decay exponents for several gamma values");
    auto* profiles = app.add_subcommand("profiles", "dump chi, eta, V, Z and u - chi");
    for (auto* sc : {run, verify, sweep, profiles}) {
        sc->add_option("--config", config, "config file (relaxlab-config/1)");
        sc->add_option("--out", out, "output directory (overrides 'output')");
    }
    verify->add_option("--checks", checks, "comma separated claim ids");
    sweep->add_option("--gamma", gammas, "comma separated gamma values")->required();
    sweep->add_option("--jobs", jobs, "concurrent sweep points");
    profiles->add_option("--times", times, "comma separated times")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*run) return cmd_run(config, out);
        if (*verify) return cmd_verify(config, out, checks);
        if (*sweep) return cmd_sweep(config, out, gammas, jobs);
        if (*profiles) return cmd_profiles(config, out, times);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
