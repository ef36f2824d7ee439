#include "relaxlab/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "relaxlab/errors.hpp"
#include "relaxlab/snapshot_io.hpp"

namespace relaxlab {

namespace {

constexpr std::array<std::pair<ClaimId, const char*>, 15> kClaimNames{{
    {ClaimId::THM11_RATE_L1, "THM11_RATE_L1"},
    {ClaimId::THM11_RATE_L2, "THM11_RATE_L2"},
    {ClaimId::THM11_RATE_LINF, "THM11_RATE_LINF"},
    {ClaimId::THM12_Z, "THM12_Z"},
    {ClaimId::THM12_ZV, "THM12_ZV"},
    {ClaimId::COR13_SHARP, "COR13_SHARP"},
    {ClaimId::LEM21_KERNEL, "LEM21_KERNEL"},
    {ClaimId::LEM24_MOMENT, "LEM24_MOMENT"},
    {ClaimId::LEM26_REPR, "LEM26_REPR"},
    {ClaimId::LEM27_UBOUND, "LEM27_UBOUND"},
    {ClaimId::PROP51_V, "PROP51_V"},
    {ClaimId::SANDWICH_123, "SANDWICH_123"},
    {ClaimId::SANDWICH_124, "SANDWICH_124"},
    {ClaimId::BURGERS_RESID, "BURGERS_RESID"},
    {ClaimId::JINXIN_XCHECK, "JINXIN_XCHECK"},
}};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        throw ConfigError("key '" + key + "': not a number: '" + v + "'");
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    int out = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
    return out;
}

}  // namespace

const char* to_string(ClaimId id) {
    for (const auto& [k, name] : kClaimNames)
        if (k == id) return name;
    return "?";
}

ClaimId parse_claim(const std::string& s) {
    for (const auto& [k, name] : kClaimNames)
        if (s == name) return k;
    throw ConfigError("unknown claim id '" + s + "'");
}

const std::vector<ClaimId>& all_claims() {
    static const std::vector<ClaimId> ids = [] {
        std::vector<ClaimId> v;
        for (const auto& [k, name] : kClaimNames) v.push_back(k);
        return v;
    }();
    return ids;
}

std::vector<ClaimId> parse_claim_list(const std::string& csv) {
    std::vector<ClaimId> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_claim(item));
    }
    return out;
}

ModelParams ExperimentConfig::params() const { return ModelParams::make(a, b, c); }

double ExperimentConfig::resolved_c_minus() const {
    if (c_minus) return *c_minus;
    return gamma() >= 2.0 ? c_plus : 0.0;
}

TailSpec ExperimentConfig::tail() const {
    return TailSpec::make(alpha, beta, c_plus, resolved_c_minus());
}

double ExperimentConfig::half_width() const {
    return L ? *L : GridSpec::default_half_width(T, gamma());
}

GridSpec ExperimentConfig::grid() const {
    return GridSpec::make(half_width(), N, dt, T,
                          GridSpec::geometric_times(T, dt, snapshots_per_octave));
}

void ExperimentConfig::validate() const {
    params();
    tail();
    if (!std::isfinite(mass)) throw DomainError("mass must be finite");
    if (!std::isfinite(epsilon) || epsilon <= 0.0) throw DomainError("epsilon must be positive");
    if (L && !(*L > 0.0)) throw DomainError("L must be positive");
    grid();
    if (output.empty()) throw ConfigError("output directory must not be empty");
}

ExperimentConfig ExperimentConfig::with_gamma(double g) const {
    ExperimentConfig c = *this;
    c.alpha = g;
    c.beta = g;
    return c;
}

ExperimentConfig parse_config(std::istream& is) {
    ExperimentConfig cfg;
    std::string line;
    bool have_format = false;
    int lineno = 0;
    std::map<std::string, int> seen;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(s).substr(0, eq));
        const std::string val = trim(std::string_view(s).substr(eq + 1));
        if (!have_format) {
            if (key != "format") throw ConfigError("first entry must be 'format = relaxlab-config/1'");
            if (val != kConfigFormat) throw ConfigError("unsupported config format '" + val + "'");
            have_format = true;
            continue;
        }
        if (seen[key]++) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        if (key == "a") cfg.a = to_double(key, val);
        else if (key == "b") cfg.b = to_double(key, val);
        else if (key == "c") cfg.c = to_double(key, val);
        else if (key == "mass") cfg.mass = to_double(key, val);
        else if (key == "alpha") cfg.alpha = to_double(key, val);
        else if (key == "beta") cfg.beta = to_double(key, val);
        else if (key == "c_plus") cfg.c_plus = to_double(key, val);
        else if (key == "c_minus") cfg.c_minus = val == "auto" ? std::nullopt : std::optional(to_double(key, val));
        else if (key == "epsilon") cfg.epsilon = to_double(key, val);
        else if (key == "L") cfg.L = val == "auto" ? std::nullopt : std::optional(to_double(key, val));
        else if (key == "N") cfg.N = to_int(key, val);
        else if (key == "dt") cfg.dt = to_double(key, val);
        else if (key == "T") cfg.T = to_double(key, val);
        else if (key == "snapshots_per_octave") cfg.snapshots_per_octave = to_int(key, val);
        else if (key == "checks") cfg.checks = parse_claim_list(val);
        else if (key == "output") cfg.output = val;
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (!have_format) throw ConfigError("missing 'format = relaxlab-config/1'");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config " + path);
    return parse_config(is);
}

std::string to_text(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "format = " << kConfigFormat << '\n'
       << "a = " << format_double(cfg.a) << '\n'
       << "b = " << format_double(cfg.b) << '\n'
       << "c = " << format_double(cfg.c) << '\n'
       << "mass = " << format_double(cfg.mass) << '\n'
       << "alpha = " << format_double(cfg.alpha) << '\n'
       << "beta = " << format_double(cfg.beta) << '\n'
       << "c_plus = " << format_double(cfg.c_plus) << '\n'
       << "c_minus = " << (cfg.c_minus ? format_double(*cfg.c_minus) : std::string("auto")) << '\n'
       << "epsilon = " << format_double(cfg.epsilon) << '\n'
       << "L = " << (cfg.L ? format_double(*cfg.L) : std::string("auto")) << '\n'
       << "N = " << cfg.N << '\n'
       << "dt = " << format_double(cfg.dt) << '\n'
       << "T = " << format_double(cfg.T) << '\n'
       << "snapshots_per_octave = " << cfg.snapshots_per_octave << '\n'
       << "checks = ";
    for (std::size_t i = 0; i < cfg.checks.size(); ++i)
        os << (i ? "," : "") << to_string(cfg.checks[i]);
    os << '\n' << "output = " << cfg.output << '\n';
    return os.str();
}

}  // namespace relaxlab
