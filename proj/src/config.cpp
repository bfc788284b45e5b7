#include "dflux/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dflux/csv.hpp"

namespace dflux {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

ConfigFile ConfigFile::parse_string(const std::string& text) {
    ConfigFile config;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("bad section header at line " + std::to_string(line_no));
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected key = value at line " + std::to_string(line_no));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("empty key at line " + std::to_string(line_no));
        }
        const std::string full = section.empty() ? key : section + "." + key;
        config.entries_[full] = value;
    }
    return config;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

const std::string& ConfigFile::get(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

std::string ConfigFile::get_or(const std::string& key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double ConfigFile::get_double(const std::string& key) const { return parse_double(get(key)); }

double ConfigFile::get_double_or(const std::string& key, double fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : parse_double(it->second);
}

long ConfigFile::get_long_or(const std::string& key, long fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : parse_long(it->second);
}

std::vector<double> ConfigFile::get_list(const std::string& key) const {
    return parse_number_list(get(key));
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(item));
    }
    return out;
}

namespace {

struct FluxFamily {
    FluxSpec flux;
    // entropy with S = f, valid when the flux is uniformly convex in u
    EntropyPairSpec self_entropy;
    bool self_entropy_valid = false;
};

FluxFamily make_flux(const std::string& name, double scale) {
    FluxFamily fam;
    if (name == "burgers") {
        fam.flux.f = [scale](double, double u) { return scale * 0.5 * u * u; };
        fam.flux.df_du = [scale](double, double u) { return scale * u; };
        fam.flux.df_dk = [](double, double) { return 0.0; };
        fam.self_entropy.S = fam.flux.f;
        fam.self_entropy.dS_du = fam.flux.df_du;
        fam.self_entropy.dS_dk = fam.flux.df_dk;
        fam.self_entropy.d2S_duu = [scale](double, double) { return scale; };
        fam.self_entropy.d2S_duu_lower = scale;
        fam.self_entropy.Q = [scale](double, double u) {
            return scale * scale * u * u * u / 3.0;
        };
        fam.self_entropy.dQ_dk = [](double, double) { return 0.0; };
        fam.self_entropy_valid = scale > 0.0;
    } else if (name == "quadratic") {
        fam.flux.f = [scale](double k, double u) { return scale * k * u * (u - 1.0); };
        fam.flux.df_du = [scale](double k, double u) { return scale * k * (2.0 * u - 1.0); };
        fam.flux.df_dk = [scale](double, double u) { return scale * u * (u - 1.0); };
        fam.flux.zero_at_ends = true;
        fam.self_entropy.S = fam.flux.f;
        fam.self_entropy.dS_du = fam.flux.df_du;
        fam.self_entropy.dS_dk = fam.flux.df_dk;
        fam.self_entropy.d2S_duu = [scale](double k, double) { return 2.0 * scale * k; };
        fam.self_entropy.Q = [scale](double k, double u) {
            const double w = 2.0 * u - 1.0;
            return scale * scale * k * k * (w * w * w + 1.0) / 6.0;
        };
        fam.self_entropy.dQ_dk = [scale](double k, double u) {
            const double w = 2.0 * u - 1.0;
            return scale * scale * k * (w * w * w + 1.0) / 3.0;
        };
        fam.self_entropy_valid = scale > 0.0;
    } else if (name == "traffic") {
        fam.flux.f = [scale](double k, double u) { return scale * k * u * (1.0 - u); };
        fam.flux.df_du = [scale](double k, double u) { return scale * k * (1.0 - 2.0 * u); };
        fam.flux.df_dk = [scale](double, double u) { return scale * u * (1.0 - u); };
        fam.flux.zero_at_ends = true;
        fam.self_entropy_valid = false;
    } else {
        throw ConfigError("unknown flux.name '" + name + "' (burgers, quadratic, traffic)");
    }
    return fam;
}

EntropyPairSpec make_quadratic_entropy(const FluxSpec& flux, int quadrature_panels, double a,
                                       double b) {
    EntropyPairSpec entropy;
    entropy.S = [](double, double u) { return 0.5 * u * u; };
    entropy.dS_du = [](double, double u) { return u; };
    entropy.dS_dk = [](double, double) { return 0.0; };
    entropy.d2S_duu = [](double, double) { return 1.0; };
    entropy.d2S_duu_lower = 1.0;
    return entropy_flux_from_entropy(entropy, flux, quadrature_panels, a, b);
}

} // namespace

ProblemSpec problem_from_config(const ConfigFile& config) {
    ProblemSpec p;
    p.name = config.get_or("problem.name", "config-problem");
    p.a = config.get_double("bounds.a");
    p.b = config.get_double("bounds.b");
    p.alpha = config.get_double("bounds.alpha");
    p.beta = config.get_double("bounds.beta");
    if (!(p.b > p.a)) throw ConfigError("bounds require b > a");
    if (!(p.beta >= p.alpha)) throw ConfigError("bounds require beta >= alpha");

    double scale = 1.0;
    if (config.has("flux.params")) {
        const auto params = config.get_list("flux.params");
        if (params.size() > 1) throw ConfigError("flux.params takes at most one value (scale)");
        if (!params.empty()) scale = params[0];
    }
    FluxFamily fam = make_flux(config.get("flux.name"), scale);
    p.flux = fam.flux;

    const std::string entropy_name = config.get_or("entropy.name", "same-as-flux");
    const int panels = static_cast<int>(config.get_long_or("entropy.quadrature_panels", 64));
    if (entropy_name == "same-as-flux") {
        if (!fam.self_entropy_valid) {
            throw ConfigError("entropy same-as-flux requires a uniformly convex flux");
        }
        p.entropy = fam.self_entropy;
        if (config.get("flux.name") == "quadratic") {
            p.entropy.d2S_duu_lower = 2.0 * scale * p.alpha;
        }
    } else if (entropy_name == "quadratic") {
        p.entropy = make_quadratic_entropy(p.flux, panels, p.a, p.b);
    } else {
        throw ConfigError("unknown entropy.name '" + entropy_name + "'");
    }
    if (config.has("entropy.gamma")) {
        p.entropy.d2S_duu_lower = config.get_double("entropy.gamma");
    }

    const std::string ckind = config.get_or("coefficient.kind", "constant");
    if (ckind == "constant") {
        p.coefficient = CoefficientSpec::constant(config.get_double_or("coefficient.value", 1.0));
    } else if (ckind == "piecewise-x") {
        p.coefficient = CoefficientSpec::piecewise_x(config.get_list("coefficient.breakpoints"),
                                                     config.get_list("coefficient.values"));
    } else if (ckind == "jump-line") {
        p.coefficient = CoefficientSpec::jump_line(
            config.get_double_or("coefficient.x0", 0.0), config.get_double("coefficient.speed"),
            config.get_double("coefficient.left"), config.get_double("coefficient.right"));
    } else if (ckind == "tabulated") {
        p.coefficient = CoefficientSpec::tabulated(config.get_list("coefficient.xs"),
                                                   config.get_list("coefficient.values"));
    } else {
        throw ConfigError("unknown coefficient.kind '" + ckind + "'");
    }

    const std::string ikind = config.get("init.kind");
    if (ikind == "constant") {
        const auto params = config.get_list("init.params");
        if (params.size() != 1) throw ConfigError("init.params for constant: c");
        p.init = InitialDataSpec::constant(params[0]);
    } else if (ikind == "riemann") {
        const auto params = config.get_list("init.params");
        if (params.size() != 3) throw ConfigError("init.params for riemann: uL,uR,x0");
        p.init = InitialDataSpec::riemann(params[0], params[1], params[2]);
    } else if (ikind == "steps") {
        p.init = InitialDataSpec::steps(config.get_list("init.breakpoints"),
                                        config.get_list("init.values"));
    } else {
        throw ConfigError("unknown init.kind '" + ikind + "'");
    }

    if (config.has("nonlinearity.Cf")) {
        p.entropy.nonlinearity.asserted = true;
        p.entropy.nonlinearity.C_f = config.get_double("nonlinearity.Cf");
        p.entropy.nonlinearity.p_f = config.get_double_or("nonlinearity.pf", 1.0);
        p.entropy.nonlinearity.C_S = config.get_double("nonlinearity.CS");
        p.entropy.nonlinearity.p_S = config.get_double_or("nonlinearity.pS", 1.0);
    }

    p.norms = compute_sup_norms(p.flux, p.entropy, p.alpha, p.beta, p.a, p.b);
    p.flux.du_lipschitz = p.norms.df_du;
    p.flux.dk_lipschitz = p.norms.df_dk;
    return p;
}

} // namespace dflux
