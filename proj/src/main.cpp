// bsqlab: scattering analysis, long-time wave asymptotics, and a
// pseudo-spectral reference solver for the good Boussinesq system, with a
// staged pipeline comparing the explicit asymptotic formula against the
// direct numerical solution along rays x/t = const.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bsq/csvio.hpp"
#include "bsq/errors.hpp"
#include "bsq/pipeline.hpp"

namespace {

nlohmann::json parse_number_list(const std::string& text, const char* flag) {
    nlohmann::json arr = nlohmann::json::array();
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        double d = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw bsq::ValidationError(std::string(flag) + ": expected comma-separated "
                                       "numbers, got \"" + text + "\"");
        arr.push_back(d);
    }
    if (arr.empty())
        throw bsq::ValidationError(std::string(flag) + ": empty list");
    return arr;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scattering data, long-time asymptotics, and a pseudo-spectral "
                 "reference solution for the good Boussinesq system"};
    app.set_version_flag("--version", bsq::kToolVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir, zeta_list, t_list;
    double kmax = 0.0;
    int threads = 0;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "JSON config file (built-in defaults when omitted)");
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    app.add_option("--zeta", zeta_list, "comma-separated ray speeds x/t");
    app.add_option("--t", t_list, "comma-separated sample times");
    app.add_option("--kmax", kmax, "upper end of the spectral k-grid");
    app.add_option("--threads", threads, "worker threads (0 = library default)");
    app.add_option("--override", overrides,
                   "dotted key=value config override, repeatable (e.g. kgrid.min=1e-3)");

    CLI::App* c_scatter = app.add_subcommand(
        "scatter", "sample the reflection coefficient r1 on the k-grid");
    CLI::App* c_asym = app.add_subcommand(
        "asym", "evaluate the asymptotic parameters per ray (rays.json)");
    CLI::App* c_pde = app.add_subcommand(
        "pde", "run the pseudo-spectral reference solver to the sample times");
    CLI::App* c_compare = app.add_subcommand(
        "compare", "compare the asymptotic formula against the reference solution");
    CLI::App* c_report = app.add_subcommand(
        "report", "print the comparison table and residual-decay fits");
    CLI::App* c_check = app.add_subcommand(
        "check-assumptions", "scan for zeros of s11/sA11 and the origin limit");

    CLI11_PARSE(app, argc, argv);

    try {
        nlohmann::json raw = config_path.empty() ? bsq::default_config_json()
                                                 : bsq::read_json_file(config_path);
        if (!out_dir.empty()) raw["out"] = out_dir;
        if (!zeta_list.empty()) raw["zeta"] = parse_number_list(zeta_list, "--zeta");
        if (!t_list.empty()) raw["t"] = parse_number_list(t_list, "--t");
        if (kmax > 0.0) bsq::apply_override(raw, "kgrid.max=" + bsq::fmt_g17(kmax));
        if (threads > 0) raw["threads"] = threads;
        for (const std::string& o : overrides) bsq::apply_override(raw, o);

        bsq::PipelineConfig cfg = bsq::parse_config(raw);
        if (c_scatter->parsed()) bsq::cmd_scatter(cfg);
        if (c_asym->parsed()) bsq::cmd_asym(cfg);
        if (c_pde->parsed()) bsq::cmd_pde(cfg);
        if (c_compare->parsed()) bsq::cmd_compare(cfg);
        if (c_report->parsed()) bsq::cmd_report(cfg);
        if (c_check->parsed()) return bsq::cmd_check_assumptions(cfg);
        return 0;
    } catch (const bsq::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
}
