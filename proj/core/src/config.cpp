#include "chdbc/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace chdbc {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

class KeyMap {
public:
    KeyMap(std::map<std::string, std::string> kv, std::string origin)
        : kv_(std::move(kv)), origin_(std::move(origin)) {}

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string take(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) fail(key, "missing required key");
        std::string v = it->second;
        kv_.erase(it);
        return v;
    }

    std::string take_or(const std::string& key, const std::string& fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        std::string v = it->second;
        kv_.erase(it);
        return v;
    }

    double take_double(const std::string& key) { return to_double(key, take(key)); }
    double take_double_or(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        return to_double(key, take(key));
    }
    long take_long(const std::string& key) { return to_long(key, take(key)); }
    long take_long_or(const std::string& key, long fallback) {
        if (!has(key)) return fallback;
        return to_long(key, take(key));
    }

    void expect_empty() const {
        if (kv_.empty()) return;
        std::ostringstream os;
        os << origin_ << ": unknown key";
        if (kv_.size() > 1) os << 's';
        for (const auto& [k, v] : kv_) os << " '" << k << "'";
        throw ConfigError(os.str());
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError(origin_ + ": " + what + " '" + key + "'");
    }
    [[noreturn]] void bad_value(const std::string& key, const std::string& what) const {
        throw ConfigError(origin_ + ": key '" + key + "': " + what);
    }

private:
    double to_double(const std::string& key, const std::string& v) const {
        char* end = nullptr;
        const double x = std::strtod(v.c_str(), &end);
        if (end == v.c_str() || *end != '\0') bad_value(key, "expected a number, got '" + v + "'");
        return x;
    }
    long to_long(const std::string& key, const std::string& v) const {
        char* end = nullptr;
        const long x = std::strtol(v.c_str(), &end, 10);
        if (end == v.c_str() || *end != '\0') bad_value(key, "expected an integer, got '" + v + "'");
        return x;
    }

    std::map<std::string, std::string> kv_;
    std::string origin_;
};

ExperimentConfig build(KeyMap& m) {
    ExperimentConfig c;
    c.grid.lx = m.take_double("domain.lx");
    c.grid.ly = m.take_double("domain.ly");
    c.grid.nx = static_cast<int>(m.take_long("grid.nx"));
    c.grid.ny = static_cast<int>(m.take_long("grid.ny"));
    if (c.grid.nx < 4) m.bad_value("grid.nx", "must be >= 4");
    if (c.grid.ny < 4) m.bad_value("grid.ny", "must be >= 4");

    c.params.epsilon = m.take_double("model.epsilon");
    c.params.delta = m.take_double("model.delta");
    c.params.kappa = m.take_double("model.kappa");
    if (!(c.params.epsilon > 0.0)) m.bad_value("model.epsilon", "must be > 0");
    if (!(c.params.delta > 0.0)) m.bad_value("model.delta", "must be > 0");
    if (!(c.params.kappa >= 0.0)) m.bad_value("model.kappa", "must be >= 0");

    const std::string coupling = m.take("model.coupling");
    if (coupling == "gms") {
        c.params.coupling = Coupling::gms();
    } else if (coupling == "liuwu") {
        c.params.coupling = Coupling::liu_wu();
    } else {
        char* end = nullptr;
        const double K = std::strtod(coupling.c_str(), &end);
        if (end == coupling.c_str() || *end != '\0')
            m.bad_value("model.coupling", "expected a positive number, 'gms' or 'liuwu'");
        if (!(K > 0.0)) m.bad_value("model.coupling", "finite K must be > 0");
        c.params.coupling = Coupling::finite(K);
    }

    c.params.s1 = m.take_double("model.s1");
    c.params.s2 = m.take_double("model.s2");
    if (!(c.params.s1 >= 0.0)) m.bad_value("model.s1", "must be >= 0");
    if (!(c.params.s2 >= 0.0)) m.bad_value("model.s2", "must be >= 0");

    const std::string pk = m.take("potential.kind");
    if (pk == "double_well") {
        c.params.potential = PotentialSpec::double_well();
    } else if (pk == "flory_huggins") {
        const double theta = m.take_double("potential.theta");
        const double zeta = m.take_double("potential.zeta");
        if (!(theta > 1.0)) m.bad_value("potential.theta", "must be > 1");
        if (!(zeta > 0.0 && zeta < 0.5)) m.bad_value("potential.zeta", "must lie in (0, 0.5)");
        c.params.potential = PotentialSpec::flory_huggins(theta, zeta);
    } else {
        m.bad_value("potential.kind", "expected 'double_well' or 'flory_huggins'");
    }

    c.tau = m.take_double("time.tau");
    c.t_end = m.take_double("time.t_end");
    if (!(c.tau > 0.0)) m.bad_value("time.tau", "must be > 0");
    if (!(c.t_end >= c.tau)) m.bad_value("time.t_end", "must be >= time.tau");

    const std::string ik = m.take("init.kind");
    if (ik == "random_uniform") {
        c.init.kind = InitSpec::Kind::RandomUniform;
        c.init.lo = m.take_double_or("init.lo", 0.4);
        c.init.hi = m.take_double_or("init.hi", 0.6);
        if (!(c.init.lo < c.init.hi)) m.bad_value("init.lo", "must be < init.hi");
    } else if (ik == "square_droplet") {
        c.init.kind = InitSpec::Kind::SquareDroplet;
        c.init.center_x = m.take_double_or("init.center_x", 0.5);
        c.init.center_y = m.take_double_or("init.center_y", 0.25);
        c.init.side = m.take_double_or("init.side", 0.5);
        c.init.inside = m.take_double_or("init.inside", 1.0);
        c.init.outside = m.take_double_or("init.outside", -1.0);
        if (!(c.init.side > 0.0)) m.bad_value("init.side", "must be > 0");
    } else if (ik == "tanh_circle") {
        c.init.kind = InitSpec::Kind::TanhCircle;
        c.init.center_x = m.take_double_or("init.center_x", 0.5);
        c.init.center_y = m.take_double_or("init.center_y", 0.5);
        c.init.radius = m.take_double_or("init.radius", 0.5);
        c.init.width = m.take_double_or("init.width", 0.02);
        if (!(c.init.radius > 0.0)) m.bad_value("init.radius", "must be > 0");
        if (!(c.init.width > 0.0)) m.bad_value("init.width", "must be > 0");
    } else {
        m.bad_value("init.kind", "expected 'random_uniform', 'square_droplet' or 'tanh_circle'");
    }

    c.seed = static_cast<std::uint64_t>(m.take_long_or("seed", 1));
    c.output_dir = m.take_or("output.dir", "out");

    c.solver.rel_tol = m.take_double_or("solver.rel_tol", c.solver.rel_tol);
    c.solver.restart = static_cast<int>(m.take_long_or("solver.restart", c.solver.restart));
    c.solver.max_outer = static_cast<int>(m.take_long_or("solver.max_outer", c.solver.max_outer));
    if (!(c.solver.rel_tol > 0.0)) m.bad_value("solver.rel_tol", "must be > 0");
    if (c.solver.restart < 2) m.bad_value("solver.restart", "must be >= 2");

    const std::string prec = m.take_or("solver.preconditioner", "jacobi");
    if (prec == "jacobi")
        c.solver.preconditioner = SolverConfig::Precond::Jacobi;
    else if (prec == "none")
        c.solver.preconditioner = SolverConfig::Precond::None;
    else
        m.bad_value("solver.preconditioner", "expected 'jacobi' or 'none'");

    const std::string method = m.take_or("solver.method", "gmres");
    if (method == "gmres")
        c.method = LinearSolver::Method::Gmres;
    else if (method == "direct")
        c.method = LinearSolver::Method::Direct;
    else
        m.bad_value("solver.method", "expected 'gmres' or 'direct'");

    m.expect_empty();
    c.validate();
    return c;
}

ExperimentConfig parse_stream(std::istream& in, const std::string& origin) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (kv.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = value;
    }
    KeyMap m(std::move(kv), origin);
    return build(m);
}

}  // namespace

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_stream(in, path);
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    return parse_stream(in, origin);
}

}  // namespace chdbc
