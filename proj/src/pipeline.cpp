#include "bsq/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "bsq/errors.hpp"

namespace bsq {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt_time_tag(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", t);
    return std::string(buf);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) { ok = true; break; }
        if (!ok)
            throw ValidationError(std::string("config: unknown key \"") + it.key()
                                  + "\" in " + where);
    }
}

Exec parse_exec(const json& j, const char* where) {
    std::string s = j.get<std::string>();
    if (s == "serial") return Exec::serial;
    if (s == "openmp") return Exec::openmp;
    throw ValidationError(std::string("config: ") + where
                          + " must be \"serial\" or \"openmp\", got \"" + s + "\"");
}

std::vector<double> parse_list(const json& j, const char* where) {
    if (!j.is_array() || j.empty())
        throw ValidationError(std::string("config: ") + where
                              + " must be a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number())
            throw ValidationError(std::string("config: ") + where
                                  + " must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

std::string out_path(const PipelineConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
}

json load_manifest(const PipelineConfig& cfg) {
    std::string path = out_path(cfg, "manifest.json");
    if (fs::exists(path)) {
        json m = read_json_file(path);
        if (!m.contains("stages") || !m["stages"].is_object()) m["stages"] = json::object();
        return m;
    }
    json m;
    m["tool"] = kToolVersion;
    m["stages"] = json::object();
    return m;
}

void save_manifest(const PipelineConfig& cfg, json& m) {
    m["tool"] = kToolVersion;
    m["config"] = cfg.raw;
    m["config_digest"] = text_digest(cfg.raw.dump());
    write_json_file(out_path(cfg, "manifest.json"), m);
}

/// True when the stage's recorded input digest matches and every listed
/// output file still exists with its recorded content digest.
bool cache_valid(const json& manifest, const PipelineConfig& cfg,
                 const std::string& stage, const std::string& inputs) {
    if (!manifest["stages"].contains(stage)) return false;
    const json& st = manifest["stages"][stage];
    if (!st.contains("inputs") || st["inputs"].get<std::string>() != inputs) return false;
    if (!st.contains("outputs") || !st["outputs"].is_object()) return false;
    for (auto it = st["outputs"].begin(); it != st["outputs"].end(); ++it) {
        std::string path = out_path(cfg, it.key());
        if (!fs::exists(path)) return false;
        if (file_digest(path) != it.value().get<std::string>()) return false;
    }
    return true;
}

void record_stage(json& manifest, const PipelineConfig& cfg, const std::string& stage,
                  const std::string& inputs, double seconds,
                  const std::vector<std::string>& files, json extras) {
    json st = std::move(extras);
    st["inputs"] = inputs;
    st["seconds"] = seconds;
    json outs = json::object();
    for (const std::string& f : files) outs[f] = file_digest(out_path(cfg, f));
    st["outputs"] = std::move(outs);
    manifest["stages"][stage] = std::move(st);
}

std::string scatter_inputs_digest(const PipelineConfig& cfg) {
    json j;
    j["profile"] = cfg.raw.contains("profile") ? cfg.raw["profile"] : json();
    j["kgrid"] = {{"min", cfg.k_min}, {"max", cfg.k_max}, {"n", cfg.k_n}};
    j["tol"] = cfg.tol;
    return text_digest(j.dump());
}

std::string asym_inputs_digest(const PipelineConfig& cfg) {
    json j;
    j["scatter"] = scatter_inputs_digest(cfg);
    j["zeta"] = cfg.zetas;
    j["margin"] = cfg.margin;
    return text_digest(j.dump());
}

std::string pde_inputs_digest(const PipelineConfig& cfg) {
    json j;
    j["profile"] = cfg.raw.contains("profile") ? cfg.raw["profile"] : json();
    j["pde"] = cfg.raw.contains("pde") ? cfg.raw["pde"] : json();
    j["t"] = cfg.ts;
    j["zeta"] = cfg.zetas; // x_observation depends on the rays
    return text_digest(j.dump());
}

SolverConfig build_solver_config(const PipelineConfig& cfg) {
    SolverConfig sc = cfg.pde;
    sc.sample_times = cfg.ts;
    sc.t_end = *std::max_element(cfg.ts.begin(), cfg.ts.end());
    double zmax = *std::max_element(cfg.zetas.begin(), cfg.zetas.end());
    sc.x_observation = zmax * sc.t_end;
    sc.exec = cfg.exec;
    return sc;
}

std::vector<std::string> field_file_names(const PipelineConfig& cfg) {
    std::vector<std::string> names;
    names.reserve(cfg.ts.size());
    for (double t : cfg.ts) names.push_back("fields_t" + fmt_time_tag(t) + ".csv");
    return names;
}

/// Compute (or reuse) the PDE fields at the sample times.
std::vector<WaveField> ensure_pde_fields(const PipelineConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    json manifest = load_manifest(cfg);
    std::string inputs = pde_inputs_digest(cfg);
    std::vector<std::string> names = field_file_names(cfg);

    if (cache_valid(manifest, cfg, "pde", inputs)) {
        std::vector<WaveField> fields;
        fields.reserve(names.size());
        for (const std::string& n : names) fields.push_back(read_field_csv(out_path(cfg, n)));
        std::printf("[pde] reusing %zu cached field snapshots\n", fields.size());
        return fields;
    }

    SolverConfig sc = build_solver_config(cfg);
    double t0 = now_seconds();
    RunResult run = pde_run(cfg.profile, sc);
    double secs = now_seconds() - t0;

    json conserved = json::array();
    for (const ConservedSample& c : run.conserved) {
        conserved.push_back({{"t", c.t},
                             {"mass_u", c.mass_u},
                             {"mass_v", c.mass_v},
                             {"sup_u", c.sup_u},
                             {"spectrum_gate", c.spectrum_gate}});
    }
    double drift = 0.0;
    for (const ConservedSample& c : run.conserved)
        drift = std::max(drift, std::abs(c.mass_u - run.conserved.front().mass_u));
    double rel_drift = drift / std::max(std::abs(run.conserved.front().mass_u), 1e-300);

    std::vector<WaveField> fields;
    for (std::size_t i = 0; i < run.fields.size() && i < names.size(); ++i) {
        write_field_csv(out_path(cfg, names[i]), run.fields[i]);
        fields.push_back(run.fields[i]);
    }

    json extras;
    extras["conserved"] = std::move(conserved);
    extras["mass_u_rel_drift"] = rel_drift;
    extras["dt"] = run.dt;
    extras["n_steps"] = run.n_steps;
    extras["wrap_L_required"] = run.wrap_L_required;
    extras["wrap_ok"] = run.wrap_ok;
    record_stage(manifest, cfg, "pde", inputs, secs, names, std::move(extras));
    save_manifest(cfg, manifest);
    std::printf("[pde] %zu steps (dt = %.3e) in %.1f s; mass_u rel drift %.2e; wrap %s\n",
                run.n_steps, run.dt, secs, rel_drift,
                run.wrap_ok ? "ok" : "OVERRIDDEN (periodic images accepted)");
    return fields;
}

json params_to_json(const AsymptoticParams& p) {
    json j;
    j["zeta"] = p.zeta;
    j["k0"] = p.k0;
    j["nu"] = p.nu;
    j["q"] = {p.q.real(), p.q.imag()};
    j["arg_q"] = p.arg_q;
    j["gamma_arg"] = p.gamma_arg;
    j["tail"] = p.tail;
    j["zeta0"] = p.zeta0;
    j["valid"] = p.valid;
    return j;
}

} // namespace

nlohmann::json default_config_json() {
    json j;
    j["profile"] = {{"u0", json::array({{{"family", "gaussian"},
                                         {"amplitude", -0.1},
                                         {"width", 1.0},
                                         {"center", 0.0}}})},
                    {"v0", json::array()}};
    j["kgrid"] = {{"min", 1e-3}, {"max", 6.5}, {"n", 1301}};
    j["zeta"] = {0.6, 1.0, 1.4};
    j["t"] = {40.0, 80.0, 160.0};
    j["tol"] = 1e-10;
    j["margin"] = 0.05;
    j["pde"] = {{"L", 600.0},  {"N", 8192},          {"dt", 0.0},
                {"dealias", true}, {"c_cfl", 0.5},   {"wrap_override", true},
                {"growth_cap", 25.0}};
    j["threads"] = 0;
    j["out"] = "out";
    j["exec"] = "openmp";
    return j;
}

PipelineConfig parse_config(const nlohmann::json& raw) {
    if (!raw.is_object())
        throw ValidationError("config: top level must be a JSON object");
    reject_unknown_keys(raw, {"profile", "kgrid", "zeta", "t", "tol", "margin",
                              "pde", "threads", "out", "exec"},
                        "the top level");

    PipelineConfig cfg;
    cfg.raw = raw;
    json defaults = default_config_json();
    json merged = defaults;
    for (auto it = raw.begin(); it != raw.end(); ++it) {
        if (it.value().is_object() && merged.contains(it.key()) && merged[it.key()].is_object()) {
            for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
                merged[it.key()][jt.key()] = jt.value();
        } else {
            merged[it.key()] = it.value();
        }
    }
    cfg.raw = merged;

    cfg.profile = make_profile(merged["profile"]);

    const json& kg = merged["kgrid"];
    reject_unknown_keys(kg, {"min", "max", "n"}, "\"kgrid\"");
    cfg.k_min = kg["min"].get<double>();
    cfg.k_max = kg["max"].get<double>();
    cfg.k_n = kg["n"].get<std::size_t>();
    if (!(cfg.k_min > 0.0) || !(cfg.k_max > cfg.k_min) || cfg.k_n < 5)
        throw ValidationError("config: kgrid needs 0 < min < max and n >= 5");

    cfg.zetas = parse_list(merged["zeta"], "\"zeta\"");
    cfg.ts = parse_list(merged["t"], "\"t\"");
    for (std::size_t i = 1; i < cfg.ts.size(); ++i)
        if (cfg.ts[i] <= cfg.ts[i - 1])
            throw ValidationError("config: \"t\" must be strictly increasing");
    for (double z : cfg.zetas)
        if (!(z > 0.0))
            throw ValidationError("config: ray speeds \"zeta\" must be positive");

    cfg.tol = merged["tol"].get<double>();
    cfg.margin = merged["margin"].get<double>();
    if (!(cfg.tol > 0.0) || !(cfg.margin >= 0.0))
        throw ValidationError("config: need tol > 0 and margin >= 0");

    const json& pj = merged["pde"];
    reject_unknown_keys(pj, {"L", "N", "dt", "dealias", "c_cfl", "wrap_override",
                             "growth_cap"},
                        "\"pde\"");
    cfg.pde.L = pj["L"].get<double>();
    cfg.pde.N = pj["N"].get<std::size_t>();
    cfg.pde.dt = pj["dt"].get<double>();
    cfg.pde.dealias = pj["dealias"].get<bool>();
    cfg.pde.c_cfl = pj["c_cfl"].get<double>();
    cfg.pde.wrap_override = pj["wrap_override"].get<bool>();
    cfg.pde.growth_cap = pj["growth_cap"].get<double>();

    cfg.threads = merged["threads"].get<int>();
    cfg.out_dir = merged["out"].get<std::string>();
    cfg.exec = parse_exec(merged["exec"], "\"exec\"");
    if (cfg.threads > 0) set_threads(cfg.threads);
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    if (path.empty()) return parse_config(default_config_json());
    return parse_config(read_json_file(path));
}

void apply_override(nlohmann::json& raw, const std::string& key_eq_value) {
    auto eq = key_eq_value.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ValidationError("override: expected key=value, got \"" + key_eq_value + "\"");
    std::string key = key_eq_value.substr(0, eq);
    std::string val = key_eq_value.substr(eq + 1);

    // Convenience aliases for common scalar knobs.
    if (key == "k_min" || key == "kmin") key = "kgrid.min";
    if (key == "k_max" || key == "kmax") key = "kgrid.max";
    if (key == "k_n") key = "kgrid.n";

    // Parse the value: bool, comma list, number, or string.  The list-valued
    // config keys stay lists even when a single number is given.
    bool as_list = (key == "zeta" || key == "t");
    json jval;
    if (!as_list && (val == "true" || val == "false")) {
        jval = (val == "true");
    } else if (as_list || val.find(',') != std::string::npos) {
        json arr = json::array();
        std::istringstream ss(val);
        std::string item;
        while (std::getline(ss, item, ',')) {
            char* end = nullptr;
            double d = std::strtod(item.c_str(), &end);
            if (end == item.c_str() || *end != '\0')
                throw ValidationError("override: list items must be numbers in \"" + val + "\"");
            arr.push_back(d);
        }
        jval = std::move(arr);
    } else {
        char* end = nullptr;
        double d = std::strtod(val.c_str(), &end);
        if (end != val.c_str() && *end == '\0') {
            if (d == std::floor(d) && std::abs(d) < 9e15 &&
                val.find('.') == std::string::npos && val.find('e') == std::string::npos &&
                val.find('E') == std::string::npos)
                jval = static_cast<long long>(d);
            else
                jval = d;
        } else {
            jval = val;
        }
    }

    // Walk the dotted path, creating intermediate objects as needed.
    json* node = &raw;
    std::size_t pos = 0;
    while (true) {
        auto dot = key.find('.', pos);
        std::string part = key.substr(pos, dot == std::string::npos ? std::string::npos
                                                                     : dot - pos);
        if (part.empty())
            throw ValidationError("override: malformed key \"" + key + "\"");
        if (dot == std::string::npos) {
            (*node)[part] = std::move(jval);
            break;
        }
        if (!node->contains(part) || !(*node)[part].is_object())
            (*node)[part] = json::object();
        node = &(*node)[part];
        pos = dot + 1;
    }
}

FitResult fit_loglog(const std::vector<double>& t, const std::vector<double>& abs_residual) {
    FitResult fit;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < t.size() && i < abs_residual.size(); ++i) {
        if (abs_residual[i] > 0.0 && t[i] > 0.0) {
            xs.push_back(std::log(t[i]));
            ys.push_back(std::log(abs_residual[i]));
        }
    }
    fit.n = xs.size();
    if (xs.size() < 2) return fit; // degenerate (e.g. exact zero residuals)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double n = static_cast<double>(xs.size());
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.degenerate = false;
    return fit;
}

std::vector<double> make_k_grid(double k_min, double k_max, std::size_t n) {
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = k_min + (k_max - k_min) * static_cast<double>(i)
                / static_cast<double>(n - 1);
    grid.back() = k_max; // pin: the arithmetic form can miss by one ulp
    return grid;
}

SpectralLine ensure_spectral_line(const PipelineConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    json manifest = load_manifest(cfg);
    std::string inputs = scatter_inputs_digest(cfg);

    if (cache_valid(manifest, cfg, "scatter", inputs)) {
        std::printf("[scatter] reusing cached spectral_line.csv\n");
        return read_spectral_line_csv(out_path(cfg, "spectral_line.csv"));
    }

    LineConfig lc;
    lc.tol = cfg.tol;
    lc.k_min = cfg.k_min;
    lc.exec = cfg.exec;
    double t0 = now_seconds();
    SpectralLine line = spectral_line(cfg.profile, make_k_grid(cfg.k_min, cfg.k_max, cfg.k_n), lc);
    double secs = now_seconds() - t0;
    write_spectral_line_csv(out_path(cfg, "spectral_line.csv"), line);

    double max_err = 0.0, max_abs = 0.0;
    for (std::size_t i = 0; i < line.k.size(); ++i) {
        max_err = std::max(max_err, line.est_error[i]);
        max_abs = std::max(max_abs, std::sqrt(line.abs2[i]));
    }
    json extras;
    extras["max_est_error"] = max_err;
    extras["max_abs_r1"] = max_abs;
    extras["origin_gap"] = line.origin_gap;
    extras["k_max"] = line.k_max;
    record_stage(manifest, cfg, "scatter", inputs, secs, {"spectral_line.csv"},
                 std::move(extras));
    save_manifest(cfg, manifest);
    std::printf("[scatter] %zu nodes in %.1f s; max|r1| = %.6f; origin gap %.2e; "
                "max est_error %.2e\n",
                line.k.size(), secs, max_abs, line.origin_gap, max_err);
    return line;
}

void cmd_scatter(const PipelineConfig& cfg) { (void)ensure_spectral_line(cfg); }

void cmd_asym(const PipelineConfig& cfg) {
    SpectralLine line = ensure_spectral_line(cfg);
    json manifest = load_manifest(cfg);
    std::string inputs = asym_inputs_digest(cfg);

    double t0 = now_seconds();
    AsymConfig ac;
    ac.margin = cfg.margin;
    json rays = json::array();
    for (double z : cfg.zetas) {
        AsymptoticParams p = asym_params(line, z, ac);
        rays.push_back(params_to_json(p));
        std::printf("[asym] zeta = %-6g k0 = %-6g nu = %.6e |q| = %.6f tail = %+.6e\n",
                    z, p.k0, p.nu, std::abs(p.q), p.tail);
    }
    double secs = now_seconds() - t0;
    write_json_file(out_path(cfg, "rays.json"), rays);
    json extras;
    extras["zeta0"] = rays.empty() ? 0.0 : rays[0]["zeta0"].get<double>();
    record_stage(manifest, cfg, "asym", inputs, secs, {"rays.json"}, std::move(extras));
    save_manifest(cfg, manifest);
}

void cmd_pde(const PipelineConfig& cfg) { (void)ensure_pde_fields(cfg); }

void cmd_compare(const PipelineConfig& cfg) {
    for (double t : cfg.ts)
        if (t < 20.0)
            throw ValidationError("compare: sample times below t = 20 sit outside the "
                                  "long-time regime this comparison is built for");

    SpectralLine line = ensure_spectral_line(cfg);

    // Sector screening for every requested ray before any heavy compute.
    double zeta0 = compute_zeta0(line);
    for (double z : cfg.zetas) {
        if (z <= zeta0 + cfg.margin) {
            std::ostringstream os;
            os << "compare: sector violation, zeta = " << z
               << " is not above zeta0 + margin = " << zeta0 << " + " << cfg.margin;
            throw AssumptionError(os.str());
        }
    }

    AsymConfig ac;
    ac.margin = cfg.margin;
    std::vector<AsymptoticParams> params;
    params.reserve(cfg.zetas.size());
    for (double z : cfg.zetas) params.push_back(asym_params(line, z, ac));

    std::vector<WaveField> fields = ensure_pde_fields(cfg);
    if (fields.size() < cfg.ts.size())
        throw StabilityError("compare: PDE stage returned fewer snapshots than sample times");

    json manifest = load_manifest(cfg);
    double t0 = now_seconds();
    std::vector<ComparisonRow> rows;
    for (std::size_t zi = 0; zi < cfg.zetas.size(); ++zi) {
        for (std::size_t ti = 0; ti < cfg.ts.size(); ++ti) {
            double z = cfg.zetas[zi];
            double t = cfg.ts[ti];
            double x = z * t;
            ComparisonRow r;
            r.zeta = z;
            r.t = t;
            r.u_num = sample_ray(fields[ti], x);
            UAsymValue ua = u_asym(params[zi], x, t);
            r.u_asym = ua.u;
            r.envelope = ua.envelope;
            r.residual = r.u_num - r.u_asym;
            r.residual_over_envelope =
                (ua.envelope > 0.0) ? std::abs(r.residual) / ua.envelope : 0.0;
            rows.push_back(r);
        }
    }
    write_comparison_csv(out_path(cfg, "comparison.csv"), rows);

    // Per-ray and pooled least-squares decay of log|residual| vs log t.
    json fits = json::array();
    std::vector<double> pool_t, pool_r;
    std::printf("[compare] %-8s %-10s %-12s %-14s\n", "zeta", "slope", "resid/env", "(largest t)");
    for (std::size_t zi = 0; zi < cfg.zetas.size(); ++zi) {
        std::vector<double> tv, rv;
        double roe_last = 0.0;
        for (const ComparisonRow& r : rows) {
            if (r.zeta == cfg.zetas[zi]) {
                tv.push_back(r.t);
                rv.push_back(std::abs(r.residual));
                roe_last = r.residual_over_envelope;
            }
        }
        pool_t.insert(pool_t.end(), tv.begin(), tv.end());
        pool_r.insert(pool_r.end(), rv.begin(), rv.end());
        FitResult f = fit_loglog(tv, rv);
        json jf;
        jf["zeta"] = cfg.zetas[zi];
        jf["slope"] = f.slope;
        jf["degenerate"] = f.degenerate;
        jf["resid_over_env_last"] = roe_last;
        fits.push_back(jf);
        if (f.degenerate)
            std::printf("[compare] %-8g %-10s %-12.3e (fit skipped: degenerate)\n",
                        cfg.zetas[zi], "-", roe_last);
        else
            std::printf("[compare] %-8g %-10.3f %-12.3e\n", cfg.zetas[zi], f.slope, roe_last);
    }
    FitResult pooled = fit_loglog(pool_t, pool_r);
    if (!pooled.degenerate)
        std::printf("[compare] pooled slope over all rays: %.3f\n", pooled.slope);
    double secs = now_seconds() - t0;

    json extras;
    extras["fits"] = std::move(fits);
    extras["pooled_slope"] = pooled.slope;
    extras["pooled_degenerate"] = pooled.degenerate;
    record_stage(manifest, cfg, "compare", text_digest(asym_inputs_digest(cfg)
                 + pde_inputs_digest(cfg)), secs, {"comparison.csv"}, std::move(extras));
    save_manifest(cfg, manifest);
}

void cmd_report(const PipelineConfig& cfg) {
    std::vector<ComparisonRow> rows = read_comparison_csv(out_path(cfg, "comparison.csv"));
    std::printf("%-8s %-8s %-14s %-14s %-12s %-12s %-10s\n", "zeta", "t", "u_num",
                "u_asym", "envelope", "residual", "resid/env");
    for (const ComparisonRow& r : rows) {
        std::printf("%-8g %-8g %+.6e %+.6e %.4e  %+.4e  %.4f\n", r.zeta, r.t, r.u_num,
                    r.u_asym, r.envelope, r.residual, r.residual_over_envelope);
    }
    // Recompute fits from the rows so report stands alone.
    std::vector<double> zetas;
    for (const ComparisonRow& r : rows)
        if (std::find(zetas.begin(), zetas.end(), r.zeta) == zetas.end())
            zetas.push_back(r.zeta);
    for (double z : zetas) {
        std::vector<double> tv, rv;
        for (const ComparisonRow& r : rows)
            if (r.zeta == z) {
                tv.push_back(r.t);
                rv.push_back(std::abs(r.residual));
            }
        FitResult f = fit_loglog(tv, rv);
        if (f.degenerate)
            std::printf("ray zeta = %-6g : fit skipped (degenerate)\n", z);
        else
            std::printf("ray zeta = %-6g : log-residual slope %.3f\n", z, f.slope);
    }
}

int cmd_check_assumptions(const PipelineConfig& cfg) {
    AssumptionConfig ac;
    ac.k_min = cfg.k_min;
    ac.tol = cfg.tol;
    ac.exec = cfg.exec;
    double t0 = now_seconds();
    AssumptionReport rep = assumption_checks(cfg.profile, ac);
    double secs = now_seconds() - t0;

    std::printf("assumption 1 (no zeros of s11/sA11 in the closed sectors): %s\n",
                verdict_name(rep.assumption1));
    std::printf("  min |s11|  over sector D1 = %.6e at k = (%.4f, %.4f)\n",
                rep.min_abs_s11_D1, rep.argmin_k_D1.real(), rep.argmin_k_D1.imag());
    std::printf("  min |sA11| over sector D4 = %.6e at k = (%.4f, %.4f)\n",
                rep.min_abs_sA11_D4, rep.argmin_k_D4.real(), rep.argmin_k_D4.imag());
    std::printf("assumption 2 (nonzero origin limit of k^2 s11): %s\n",
                verdict_name(rep.assumption2));
    std::printf("  k^2 s11 -> (%.6e, %.6e), ladder consistency %.3f\n",
                rep.origin_limit_s.real(), rep.origin_limit_s.imag(),
                rep.origin_consistency);
    if (!rep.diagnostic.empty()) std::printf("  note: %s\n", rep.diagnostic.c_str());

    fs::create_directories(cfg.out_dir);
    json manifest = load_manifest(cfg);
    json rj;
    rj["assumption1"] = verdict_name(rep.assumption1);
    rj["assumption2"] = verdict_name(rep.assumption2);
    rj["min_abs_s11_D1"] = rep.min_abs_s11_D1;
    rj["min_abs_sA11_D4"] = rep.min_abs_sA11_D4;
    rj["origin_limit_s"] = {rep.origin_limit_s.real(), rep.origin_limit_s.imag()};
    rj["origin_limit_sA"] = {rep.origin_limit_sA.real(), rep.origin_limit_sA.imag()};
    rj["origin_consistency"] = rep.origin_consistency;
    rj["diagnostic"] = rep.diagnostic;
    write_json_file(out_path(cfg, "assumptions.json"), rj);
    record_stage(manifest, cfg, "check-assumptions",
                 text_digest(cfg.raw.contains("profile") ? cfg.raw["profile"].dump() : ""),
                 secs, {"assumptions.json"}, json::object());
    save_manifest(cfg, manifest);

    bool failed = (rep.assumption1 == Verdict::fail) || (rep.assumption2 == Verdict::fail);
    return failed ? 4 : 0;
}

} // namespace bsq
