#include "nlse/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nlse/errors.hpp"
#include "nlse/study.hpp"

namespace nlse {

double ReferenceSpec::h() const { return std::pow(2.0, -k_e); }
int ReferenceSpec::grid_n() const { return 32 << k_e; }

int ExperimentConfig::oversample_for(const std::string& potential_key) const {
    if (oversample > 0) return oversample;
    return potential_key == "box4" ? 16 : 8;
}

double snap_tau(double tau_req, double T) {
    if (!(tau_req > 0.0)) throw InvalidInputError("snap_tau: tau must be positive");
    if (!(T > 0.0)) throw InvalidInputError("snap_tau: T must be positive");
    return T / std::ceil(T / tau_req);
}

namespace {

struct Cursor {
    std::string origin;
    int line = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
    }
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

double to_double(const std::string& v, const Cursor& c) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) c.fail("trailing characters in number: " + v);
        return x;
    } catch (const std::logic_error&) {
        c.fail("not a number: " + v);
    }
}

long to_long(const std::string& v, const Cursor& c) {
    try {
        std::size_t used = 0;
        const long x = std::stol(v, &used);
        if (used != v.size()) c.fail("trailing characters in integer: " + v);
        return x;
    } catch (const std::logic_error&) {
        c.fail("not an integer: " + v);
    }
}

bool to_bool(const std::string& v, const Cursor& c) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    c.fail("not a boolean (true/false): " + v);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    Cursor cur{origin, 0};
    std::string section;
    std::set<std::string> seen;

    std::stringstream ss(text);
    std::string raw;
    while (std::getline(ss, raw)) {
        ++cur.line;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') cur.fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "experiment" && section != "reference" && section != "output")
                cur.fail("unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) cur.fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = unquote(trim(line.substr(eq + 1)));
        if (key.empty()) cur.fail("empty key");
        if (section.empty()) cur.fail("key outside any section: " + key);
        if (!seen.insert(section + "." + key).second)
            cur.fail("duplicate key: " + key);

        if (section == "experiment") {
            if (key == "schemes" || key == "scheme") {
                cfg.schemes.clear();
                for (const auto& name : split_list(val)) {
                    try {
                        cfg.schemes.push_back(parse_scheme(name));
                    } catch (const InvalidInputError& e) {
                        cur.fail(e.what());
                    }
                }
                if (cfg.schemes.empty()) cur.fail("empty scheme list");
            } else if (key == "potential") {
                cfg.potential = val;
            } else if (key == "initial") {
                cfg.initial = val;
            } else if (key == "beta") {
                cfg.beta = to_double(val, cur);
            } else if (key == "sigmas" || key == "sigma") {
                cfg.sigmas.clear();
                for (const auto& s : split_list(val)) cfg.sigmas.push_back(to_double(s, cur));
                if (cfg.sigmas.empty()) cur.fail("empty sigma list");
            } else if (key == "norm") {
                if (val == "l2") cfg.norm = NormSel::l2;
                else if (val == "h1") cfg.norm = NormSel::h1;
                else if (val == "both") cfg.norm = NormSel::both;
                else cur.fail("norm must be l2, h1, or both");
            } else if (key == "T") {
                cfg.T = to_double(val, cur);
            } else if (key == "a") {
                cfg.a = to_double(val, cur);
            } else if (key == "b") {
                cfg.b = to_double(val, cur);
            } else if (key == "mode") {
                if (val == "cfl-diagonal") cfg.mode = SweepMode::cfl_diagonal;
                else if (val == "marker-diagonal") cfg.mode = SweepMode::marker_diagonal;
                else if (val == "fixed-h") cfg.mode = SweepMode::fixed_h;
                else cur.fail("mode must be cfl-diagonal, marker-diagonal, or fixed-h");
            } else if (key == "ks") {
                cfg.ks.clear();
                for (const auto& s : split_list(val))
                    cfg.ks.push_back(static_cast<int>(to_long(s, cur)));
                if (cfg.ks.empty()) cur.fail("empty ks list");
            } else if (key == "cfl_fraction") {
                cfg.cfl_fraction = to_double(val, cur);
            } else if (key == "tau0") {
                cfg.tau0 = to_double(val, cur);
            } else if (key == "fixed_k") {
                cfg.fixed_k = static_cast<int>(to_long(val, cur));
            } else if (key == "taus") {
                cfg.taus.clear();
                for (const auto& s : split_list(val)) cfg.taus.push_back(to_double(s, cur));
                if (cfg.taus.empty()) cur.fail("empty tau list");
            } else if (key == "oversample") {
                cfg.oversample = static_cast<int>(to_long(val, cur));
            } else if (key == "seed") {
                cfg.seed = static_cast<unsigned long>(to_long(val, cur));
            } else {
                cur.fail("unknown key in [experiment]: " + key);
            }
        } else if (section == "reference") {
            if (key == "k_e") cfg.reference.k_e = static_cast<int>(to_long(val, cur));
            else if (key == "tau_e") cfg.reference.tau_e = to_double(val, cur);
            else cur.fail("unknown key in [reference]: " + key);
        } else {  // output
            if (key == "csv") cfg.csv_path = val;
            else if (key == "svg") cfg.svg_path = val;
            else if (key == "zero_wall_seconds") cfg.zero_wall_seconds = to_bool(val, cur);
            else cur.fail("unknown key in [output]: " + key);
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

void validate_config(const ExperimentConfig& cfg) {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };

    if (!(cfg.b > cfg.a)) fail("interval requires a < b");
    if (!(cfg.T > 0.0)) fail("T must be positive");
    if (cfg.schemes.empty()) fail("at least one scheme required");
    if (cfg.sigmas.empty()) fail("at least one sigma required");
    for (double s : cfg.sigmas)
        if (!(s > 0.0)) fail("sigma must be positive");
    if (cfg.oversample < 0) fail("oversample must be >= 1 (or 0 for automatic)");

    try {
        (void)make_potential(cfg.potential);
    } catch (const InvalidInputError& e) {
        fail(e.what());
    }
    try {
        (void)make_initial_data(cfg.initial);
    } catch (const InvalidInputError& e) {
        fail(e.what());
    }

    if (cfg.mode != SweepMode::fixed_h && cfg.ks.empty()) fail("diagonal sweep needs ks");
    for (int k : cfg.ks)
        if (k < 0) fail("ks entries must be >= 0");
    if (cfg.mode == SweepMode::cfl_diagonal && !(cfg.cfl_fraction > 0.0))
        fail("cfl_fraction must be positive");
    if (cfg.mode == SweepMode::marker_diagonal && !(cfg.tau0 > 0.0))
        fail("tau0 must be positive");
    if (cfg.mode == SweepMode::fixed_h) {
        if (cfg.fixed_k < 0) fail("fixed_k must be >= 0");
        if (cfg.taus.empty()) fail("fixed-h sweep needs taus");
        for (double t : cfg.taus)
            if (!(t > 0.0)) fail("taus entries must be positive");
    }

    if (cfg.reference.k_e < 0) fail("k_e must be >= 0");
    if (!(cfg.reference.tau_e > 0.0)) fail("tau_e must be positive");

    // grid sizes must resolve to even integers on the requested interval
    auto grid_n_for = [&](int k) {
        const double h = std::pow(2.0, -k);
        const double n_real = (cfg.b - cfg.a) / h;
        const long n = std::lround(n_real);
        if (n < 4 || n % 2 != 0 || std::abs(n - n_real) > 1e-9)
            fail("h = 2^-" + std::to_string(k) + " does not give an even grid on [a,b]");
        return static_cast<int>(n);
    };
    for (int k : cfg.ks) (void)grid_n_for(k);
    if (cfg.mode == SweepMode::fixed_h) (void)grid_n_for(cfg.fixed_k);
    (void)grid_n_for(cfg.reference.k_e);

    // sweep cells are valid by construction from here on; check the strict
    // step-size gate and that the reference dominates what it will judge
    const auto cells = expand_cells(cfg);
    if (cells.empty()) fail("sweep expands to no cells");

    double min_h = cells.front().h, min_tau = cells.front().tau;
    for (const auto& c : cells) {
        min_h = std::min(min_h, c.h);
        min_tau = std::min(min_tau, c.tau);
        if (cfg.mode == SweepMode::cfl_diagonal && !(c.tau < c.h * c.h / M_PI))
            fail("cfl-diagonal cell violates tau < h^2/pi at h = " + std::to_string(c.h));
    }

    const double h_e = cfg.reference.h();
    if (cfg.mode == SweepMode::fixed_h) {
        // semi-discrete comparison: reference grid at least as fine as the run grid
        if (!(h_e <= min_h + 1e-15)) fail("reference h_e must satisfy h_e <= h");
    } else {
        if (!(h_e <= min_h / 2 + 1e-15)) fail("reference h_e must satisfy h_e <= min h / 2");
    }
    if (!(cfg.reference.tau_e <= min_tau / 10 + 1e-15))
        fail("reference tau_e must satisfy tau_e <= min tau / 10");
}

}  // namespace nlse
