// pad-sim: command-line driver for the conditional photon-number detection
// simulator.  Each figure command sweeps the detector over a grid and emits
// a machine-readable table (CSV or JSON); point-query evaluates one
// configuration.  Only the public C interface of the library is used.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "padsim/padsim.h"

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* out_dir_env = "PAD_SIM_OUT_DIR";

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal form of a double.
std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

double parse_number(const std::string& text) {
    try {
        size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw usage_error("trailing characters in number: " + text);
        return v;
    } catch (const usage_error&) {
        throw;
    } catch (const std::exception&) {
        throw usage_error("not a number: " + text);
    }
}

int parse_integer(double v, const std::string& what) {
    if (!(std::abs(v) < 1e9) || v != std::floor(v))
        throw usage_error(what + " must be an integer, got " + format_double(v));
    return static_cast<int>(v);
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(part);
    return out;
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
    return v;
}

// ---- grid specs: "n=0,1,2;x=-8:8:321;delta=log:0.01:1.5:30" --------------

using grid_axes = std::map<std::string, std::vector<double>>;

std::vector<double> parse_axis(const std::string& desc) {
    bool log_spaced = desc.rfind("log:", 0) == 0;
    std::string body = log_spaced ? desc.substr(4) : desc;
    auto parts = split(body, ':');
    if (parts.size() == 3) {
        double lo = parse_number(parts[0]);
        double hi = parse_number(parts[1]);
        int count = parse_integer(parse_number(parts[2]), "grid point count");
        if (count < 2) throw usage_error("grid ranges need at least 2 points: " + desc);
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw usage_error("grid range must be finite");
        if (log_spaced) {
            if (lo <= 0 || hi <= 0) throw usage_error("log grid endpoints must be > 0: " + desc);
            auto v = linspace(std::log(lo), std::log(hi), count);
            for (double& x : v) x = std::exp(x);
            return v;
        }
        return linspace(lo, hi, count);
    }
    if (parts.size() != 1) throw usage_error("bad grid axis (want lo:hi:n or v1,v2,...): " + desc);
    if (log_spaced) throw usage_error("log: prefix requires lo:hi:n form: " + desc);
    std::vector<double> v;
    for (const auto& item : split(body, ',')) v.push_back(parse_number(trim(item)));
    if (v.empty()) throw usage_error("empty grid axis: " + desc);
    return v;
}

grid_axes parse_grid(const std::string& spec) {
    grid_axes axes;
    if (trim(spec).empty()) return axes;
    for (const auto& part : split(spec, ';')) {
        auto eq = part.find('=');
        if (eq == std::string::npos) throw usage_error("grid axis needs key=...: " + part);
        std::string key = trim(part.substr(0, eq));
        if (key.empty()) throw usage_error("grid axis needs a name: " + part);
        axes[key] = parse_axis(trim(part.substr(eq + 1)));
    }
    return axes;
}

// ---- config files: "key = value" per line, '#' comments ------------------

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw usage_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw usage_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        kv[key] = value;
    }
    return kv;
}

// ---- resolved parameters --------------------------------------------------

struct run_params {
    int p = 1;
    int w = 2;
    double omega = 0.0;   // filled from library defaults
    double lambda = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double delta = 0.1;
    double eta = 1.0;
    int max_total_photons = 24;
    std::string format = "csv";
    std::string grid_spec;
    std::string out_path;
};

padsim_params to_library_params(const run_params& pr) {
    padsim_params lp;
    padsim_params_init(&lp);
    lp.p = pr.p;
    lp.w = pr.w;
    lp.omega = pr.omega;
    lp.lambda = pr.lambda;
    lp.theta = pr.theta;
    lp.phi = pr.phi;
    lp.delta = pr.delta;
    lp.eta = pr.eta;
    lp.max_total_photons = pr.max_total_photons;
    return lp;
}

// RAII wrapper so every exit path releases the handle.
struct detector {
    padsim_detector* handle = nullptr;

    explicit detector(const padsim_params& lp) {
        padsim_status st = padsim_detector_create(&lp, &handle);
        if (st != PADSIM_OK)
            throw usage_error(std::string("cannot configure detector: ") + padsim_status_name(st));
    }
    detector(const detector&) = delete;
    detector& operator=(const detector&) = delete;
    ~detector() { padsim_detector_destroy(handle); }
};

void check(padsim_status st, padsim_detector* handle = nullptr) {
    if (st == PADSIM_OK) return;
    std::string msg = padsim_status_name(st);
    if (handle) {
        const char* detail = padsim_last_error(handle);
        if (detail && *detail) msg += std::string(": ") + detail;
    }
    if (st == PADSIM_ERR_INVALID_ARGUMENT || st == PADSIM_ERR_BUFFER_TOO_SMALL)
        throw usage_error(msg);
    throw numeric_error(msg);
}

// ---- tables ----------------------------------------------------------------

struct table {
    std::vector<std::string> columns;
    std::vector<ordered_json> rows;
};

void write_table(const table& t, const run_params& pr, const std::string& figure) {
    std::string text;
    if (pr.format == "csv") {
        std::string line;
        for (size_t c = 0; c < t.columns.size(); ++c) {
            if (c) line += ',';
            line += t.columns[c];
        }
        text = line + "\n";
        for (const auto& row : t.rows) {
            line.clear();
            for (size_t c = 0; c < t.columns.size(); ++c) {
                if (c) line += ',';
                const auto& cell = row.at(t.columns[c]);
                if (cell.is_number_integer())
                    line += std::to_string(cell.get<long long>());
                else if (cell.is_number_float())
                    line += format_double(cell.get<double>());
                else
                    line += cell.get<std::string>();
            }
            text += line + "\n";
        }
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& row : t.rows) arr.push_back(row);
        text = arr.dump(2) + "\n";
    }

    std::string path = pr.out_path;
    if (path.empty()) {
        if (const char* dir = std::getenv(out_dir_env); dir && *dir)
            path = std::string(dir) + "/" + figure + (pr.format == "csv" ? ".csv" : ".json");
    }
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot open output file: " + path);
    out << text;
    if (!out) throw usage_error("failed while writing output file: " + path);
}

std::vector<double> axis_or(const grid_axes& axes, const std::string& key,
                            std::vector<double> fallback) {
    auto it = axes.find(key);
    return it == axes.end() ? std::move(fallback) : it->second;
}

void reject_unknown_axes(const grid_axes& axes, std::initializer_list<const char*> known,
                         const std::string& figure) {
    for (const auto& [key, values] : axes) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw usage_error("unknown grid axis '" + key + "' for figure " + figure);
    }
}

// ---- figure runners ---------------------------------------------------------

table run_pxn(const run_params&, const grid_axes& axes) {
    reject_unknown_axes(axes, {"n", "x"}, "pxn");
    auto n_axis = axis_or(axes, "n", {0, 1, 2, 3, 4, 5, 6});
    auto x_axis = axis_or(axes, "x", linspace(-8.0, 8.0, 321));
    table t;
    t.columns = {"n", "x", "density"};
    for (double nv : n_axis) {
        int n = parse_integer(nv, "photon number n");
        for (double x : x_axis) {
            double d = 0.0;
            check(padsim_quadrature_density(n, x, &d));
            t.rows.push_back({{"n", n}, {"x", x}, {"density", d}});
        }
    }
    return t;
}

table run_density(const run_params& pr, const grid_axes& axes) {
    reject_unknown_axes(axes, {"n", "x"}, "density");
    detector det(to_library_params(pr));

    double probe = 0.0;
    check(padsim_symmetry_probe(det.handle, &probe), det.handle);
    if (probe >= 1e-8)
        std::cerr << "warning: outcome density is not rotationally symmetric "
                  << "(relative variation " << format_double(probe)
                  << "); acceptance integrals use 2-D quadrature\n";

    std::vector<double> default_n;
    {
        int count = 0;
        check(padsim_label_count(det.handle, &count));
        std::vector<int> labels(count);
        check(padsim_labels(det.handle, labels.data(), count));
        for (int n : labels) default_n.push_back(n);
    }
    auto n_axis = axis_or(axes, "n", default_n);
    auto x_axis = axis_or(axes, "x", linspace(-6.0, 6.0, 241));
    table t;
    t.columns = {"n", "x", "density"};
    for (double nv : n_axis) {
        int n = parse_integer(nv, "photon number n");
        for (double x : x_axis) {
            double d = 0.0;
            check(padsim_joint_density(det.handle, n, x, 0.0, &d), det.handle);
            t.rows.push_back({{"n", n}, {"x", x}, {"density", d}});
        }
    }
    return t;
}

table run_window_convergence(const run_params& pr, const grid_axes& axes) {
    reject_unknown_axes(axes, {"p", "wmax"}, "window-convergence");
    auto p_axis = axis_or(axes, "p", {0, 1, 2, 3, 4, 5});
    auto wmax_axis = axis_or(axes, "wmax", {5});
    if (wmax_axis.size() != 1) throw usage_error("wmax must be a single value");
    int w_max = parse_integer(wmax_axis[0], "wmax");
    if (w_max < 1) throw usage_error("wmax must be >= 1");

    table t;
    t.columns = {"p", "w", "delta_fidelity"};
    for (double pv : p_axis) {
        int p = parse_integer(pv, "target p");
        run_params cell = pr;
        cell.p = p;
        detector det(to_library_params(cell));
        std::vector<double> diffs(w_max);
        check(padsim_window_convergence(det.handle, w_max, diffs.data(), w_max), det.handle);
        for (int w = 0; w < w_max; ++w)
            t.rows.push_back({{"p", p}, {"w", w}, {"delta_fidelity", diffs[w]}});
    }
    return t;
}

table run_rates(const run_params& pr, const grid_axes& axes) {
    reject_unknown_axes(axes, {"r", "p"}, "rates");
    auto r_axis = axis_or(axes, "r", {0.1, 0.25, 0.5});
    auto p_axis = axis_or(axes, "p", {0, 1, 2, 3, 4, 5, 6});
    table t;
    t.columns = {"R", "p", "delta", "fidelity"};
    for (double r : r_axis) {
        for (double pv : p_axis) {
            int p = parse_integer(pv, "target p");
            run_params cell = pr;
            cell.p = p;
            detector det(to_library_params(cell));
            double delta = 0.0, fidelity = 0.0;
            check(padsim_rate_constrained_fidelity(det.handle, r, &delta, &fidelity), det.handle);
            t.rows.push_back({{"R", r}, {"p", p}, {"delta", delta}, {"fidelity", fidelity}});
        }
    }
    return t;
}

table run_equiv_efficiency(const run_params& pr, const grid_axes& axes) {
    reject_unknown_axes(axes, {"delta", "eta"}, "equiv-efficiency");
    auto delta_axis = axis_or(axes, "delta", parse_axis("log:0.01:1.5:30"));
    auto eta_axis = axis_or(axes, "eta", linspace(0.9, 1.0, 21));
    table t;
    t.columns = {"delta", "eta", "eta_ideal"};
    for (double delta : delta_axis) {
        for (double eta : eta_axis) {
            run_params cell = pr;
            cell.delta = delta;
            cell.eta = eta;
            detector det(to_library_params(cell));
            double eta_ideal = 0.0;
            check(padsim_equivalent_efficiency(det.handle, &eta_ideal), det.handle);
            t.rows.push_back({{"delta", delta}, {"eta", eta}, {"eta_ideal", eta_ideal}});
        }
    }
    return t;
}

table run_point_query(const run_params& pr, const grid_axes& axes) {
    if (!axes.empty()) throw usage_error("point-query takes no grid");
    detector det(to_library_params(pr));
    padsim_result res{};
    check(padsim_conditional_result(det.handle, &res, nullptr, 0), det.handle);
    table t;
    t.columns = {"p",     "w",   "omega",   "lambda",   "theta",  "phi",
                 "delta", "eta", "p_delta", "fidelity", "rate",   "p_ideal",
                 "symmetric_fast_path"};
    t.rows.push_back({{"p", pr.p},
                      {"w", pr.w},
                      {"omega", pr.omega},
                      {"lambda", pr.lambda},
                      {"theta", pr.theta},
                      {"phi", pr.phi},
                      {"delta", pr.delta},
                      {"eta", pr.eta},
                      {"p_delta", res.p_delta},
                      {"fidelity", res.fidelity},
                      {"rate", res.rate},
                      {"p_ideal", res.p_ideal},
                      {"symmetric_fast_path", res.symmetric_fast_path}});
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "pad-sim: conditional photon-number detection simulator.\n"
        "Sweeps a post-selected dual-homodyne detector over parameter grids and\n"
        "emits the table behind each figure."};
    app.footer(
        "Figures:\n"
        "  pxn                 |<x|n>|^2 homodyne densities of bare Fock states\n"
        "                      (axes: n, x)\n"
        "  density             per-component joint outcome density along y=0\n"
        "                      (axes: n, x)\n"
        "  window-convergence  |F(w+1)-F(w)| fidelity steps vs window size\n"
        "                      (axes: p, wmax)\n"
        "  rates               fidelity at fixed acceptance rates (axes: r, p)\n"
        "  equiv-efficiency    matching ideal-counter efficiency (axes: delta, eta)\n"
        "  point-query         one full post-selection evaluation (no grid)\n"
        "\n"
        "Grid axes are key=spec pairs joined by ';', where spec is lo:hi:count,\n"
        "log:lo:hi:count, or v1,v2,v3 (example: --grid 'n=0,2,4;x=-6:6:241').\n"
        "Config files hold key=value lines ('#' comments); recognized keys are\n"
        "p, w, delta, eta, omega, lambda, theta, phi, max_total_photons, format,\n"
        "grid, out.  Command-line flags win over the config file, which wins over\n"
        "built-in defaults.  Without --out, tables go to $" +
        std::string(out_dir_env) + "/<figure>.<ext>\nif that variable is set, otherwise to stdout.");

    std::string figure;
    app.add_option("figure", figure, "which table to emit")
        ->required()
        ->check(CLI::IsMember({"pxn", "density", "window-convergence", "rates",
                               "equiv-efficiency", "point-query"}));

    int p_flag = 0, w_flag = 0;
    double delta_flag = 0.0, eta_flag = 0.0;
    std::string grid_flag, format_flag, out_flag, config_flag;
    app.add_option("--p", p_flag, "target / auxiliary photon number");
    app.add_option("--w", w_flag, "input-window half-width");
    app.add_option("--delta", delta_flag, "acceptance radius");
    app.add_option("--eta", eta_flag, "homodyne efficiency in (0, 1]");
    app.add_option("--grid", grid_flag, "grid spec, see footer");
    app.add_option("--format", format_flag, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_flag, "output file path");
    app.add_option("--config", config_flag, "config file (key=value lines)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::map<std::string, std::string> config;
        if (!config_flag.empty()) config = read_config(config_flag);
        for (const auto& [key, value] : config) {
            static const std::vector<std::string> known = {
                "p",   "w",   "delta", "eta",  "omega", "lambda",
                "theta", "phi", "max_total_photons", "format", "grid", "out"};
            bool ok = false;
            for (const auto& k : known) ok = ok || key == k;
            if (!ok) throw usage_error("unknown config key: " + key);
        }

        run_params pr;
        {
            padsim_params defaults;
            padsim_params_init(&defaults);
            pr.omega = defaults.omega;
            pr.lambda = defaults.lambda;
            pr.theta = defaults.theta;
            pr.phi = defaults.phi;
            pr.delta = defaults.delta;
            pr.eta = defaults.eta;
            pr.p = defaults.p;
            pr.w = defaults.w;
            pr.max_total_photons = defaults.max_total_photons;
        }
        // the bundled counter-comparison case spans five components around p=1
        if (figure == "equiv-efficiency") pr.w = 3;

        auto from_config = [&](const char* key) -> const std::string* {
            auto it = config.find(key);
            return it == config.end() ? nullptr : &it->second;
        };
        if (const auto* v = from_config("p")) pr.p = parse_integer(parse_number(*v), "p");
        if (const auto* v = from_config("w")) pr.w = parse_integer(parse_number(*v), "w");
        if (const auto* v = from_config("delta")) pr.delta = parse_number(*v);
        if (const auto* v = from_config("eta")) pr.eta = parse_number(*v);
        if (const auto* v = from_config("omega")) pr.omega = parse_number(*v);
        if (const auto* v = from_config("lambda")) pr.lambda = parse_number(*v);
        if (const auto* v = from_config("theta")) pr.theta = parse_number(*v);
        if (const auto* v = from_config("phi")) pr.phi = parse_number(*v);
        if (const auto* v = from_config("max_total_photons"))
            pr.max_total_photons = parse_integer(parse_number(*v), "max_total_photons");
        if (const auto* v = from_config("format")) pr.format = *v;
        if (const auto* v = from_config("grid")) pr.grid_spec = *v;
        if (const auto* v = from_config("out")) pr.out_path = *v;

        if (app.count("--p")) pr.p = p_flag;
        if (app.count("--w")) pr.w = w_flag;
        if (app.count("--delta")) pr.delta = delta_flag;
        if (app.count("--eta")) pr.eta = eta_flag;
        if (app.count("--format")) pr.format = format_flag;
        if (app.count("--grid")) pr.grid_spec = grid_flag;
        if (app.count("--out")) pr.out_path = out_flag;

        if (pr.format != "csv" && pr.format != "json")
            throw usage_error("format must be csv or json, got " + pr.format);
        if (pr.p < 0) throw usage_error("p must be >= 0");
        if (pr.w < 0) throw usage_error("w must be >= 0");
        if (!(pr.delta >= 0)) throw usage_error("delta must be >= 0");
        if (!(pr.eta > 0 && pr.eta <= 1)) throw usage_error("eta must lie in (0, 1]");

        grid_axes axes = parse_grid(pr.grid_spec);

        table t;
        if (figure == "pxn")
            t = run_pxn(pr, axes);
        else if (figure == "density")
            t = run_density(pr, axes);
        else if (figure == "window-convergence")
            t = run_window_convergence(pr, axes);
        else if (figure == "rates")
            t = run_rates(pr, axes);
        else if (figure == "equiv-efficiency")
            t = run_equiv_efficiency(pr, axes);
        else
            t = run_point_query(pr, axes);

        write_table(t, pr, figure);
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "pad-sim: " << e.what() << "\n";
        return 1;
    } catch (const numeric_error& e) {
        std::cerr << "pad-sim: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "pad-sim: internal error: " << e.what() << "\n";
        return 2;
    }
}
