/// Pipeline harness: config parsing with unknown-key rejection, CLI
/// overrides, log-log fits, CSV round-trips, content digests, and
/// digest-matched caching of the spectral-line stage.

#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "bsq/csvio.hpp"
#include "bsq/errors.hpp"
#include "bsq/pipeline.hpp"
#include "json.hpp"

using namespace bsq;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* leaf) {
    const fs::path d = fs::temp_directory_path() / leaf;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

SpectralLine small_line() {
    SpectralLine line;
    const int n = 7;
    for (int i = 0; i < n; ++i) {
        const double k = 0.5 + 0.25 * i;
        line.k.push_back(k);
        line.r1.push_back(cplx(0.3 / (1.0 + k), -0.1 * k));
        line.abs2.push_back(std::norm(line.r1.back()));
        line.ell_prime.push_back(0.01 * k - 0.003);
        line.est_error.push_back(1e-9 * (i + 1));
    }
    line.k_max = line.k.back();
    line.r1_origin = cplx(-0.5, 0.8660254);
    line.origin_gap = 3.7e-8;
    return line;
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("default config parses to the documented defaults") {
    const PipelineConfig cfg = parse_config(default_config_json());
    CHECK(cfg.k_min == 1e-3);
    CHECK(cfg.k_max == 6.5);
    CHECK(cfg.k_n == 1301);
    CHECK(cfg.zetas == std::vector<double>{0.6, 1.0, 1.4});
    CHECK(cfg.ts == std::vector<double>{40.0, 80.0, 160.0});
    CHECK(cfg.tol == 1e-10);
    CHECK(cfg.pde.L == 600.0);
    CHECK(cfg.pde.N == 8192);
    CHECK(cfg.pde.wrap_override == true);
    CHECK(cfg.out_dir == "out");
    // The default datum: negative gaussian, zero v0.
    CHECK(cfg.profile.u0(0.0) == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(cfg.profile.v0(0.0) == 0.0);

    const PipelineConfig same = load_config("");
    CHECK(same.k_n == cfg.k_n);
}

TEST_CASE("unknown keys are rejected") {
    nlohmann::json raw = default_config_json();
    raw["bogus"] = 1;
    CHECK_THROWS_AS(parse_config(raw), ValidationError);
    try {
        parse_config(raw);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }

    nlohmann::json raw2 = default_config_json();
    raw2["pde"]["cfl"] = 0.3; // typo for c_cfl
    CHECK_THROWS_AS(parse_config(raw2), ValidationError);
}

TEST_CASE("config validation") {
    nlohmann::json raw = default_config_json();
    raw["kgrid"]["min"] = -1.0;
    CHECK_THROWS_AS(parse_config(raw), ValidationError);

    raw = default_config_json();
    raw["kgrid"]["n"] = 3;
    CHECK_THROWS_AS(parse_config(raw), ValidationError);

    raw = default_config_json();
    raw["t"] = {80.0, 40.0};
    CHECK_THROWS_AS(parse_config(raw), ValidationError);

    raw = default_config_json();
    raw["zeta"] = {-0.5};
    CHECK_THROWS_AS(parse_config(raw), ValidationError);

    raw = default_config_json();
    raw["tol"] = 0.0;
    CHECK_THROWS_AS(parse_config(raw), ValidationError);
}

TEST_CASE("overrides: aliases, dotted paths, lists, booleans") {
    nlohmann::json raw = default_config_json();
    apply_override(raw, "k_max=4.5");
    CHECK(raw["kgrid"]["max"] == 4.5);
    apply_override(raw, "kgrid.min=0.002");
    CHECK(raw["kgrid"]["min"] == 0.002);
    apply_override(raw, "k_n=301");
    CHECK(raw["kgrid"]["n"] == 301);
    apply_override(raw, "zeta=0.8,1.2");
    apply_override(raw, "t=30,60,120");
    apply_override(raw, "pde.N=1024");
    apply_override(raw, "pde.wrap_override=false");
    apply_override(raw, "out=elsewhere");

    const PipelineConfig cfg = parse_config(raw);
    CHECK(cfg.k_max == 4.5);
    CHECK(cfg.k_min == 0.002);
    CHECK(cfg.k_n == 301);
    CHECK(cfg.zetas == std::vector<double>{0.8, 1.2});
    CHECK(cfg.ts == std::vector<double>{30.0, 60.0, 120.0});
    CHECK(cfg.pde.N == 1024);
    CHECK(cfg.pde.wrap_override == false);
    CHECK(cfg.out_dir == "elsewhere");

    // A single value for a list key still yields a one-element array.
    nlohmann::json raw2 = default_config_json();
    apply_override(raw2, "zeta=1.0");
    const PipelineConfig cfg2 = parse_config(raw2);
    CHECK(cfg2.zetas == std::vector<double>{1.0});

    CHECK_THROWS_AS(apply_override(raw, "noequalsign"), ValidationError);
}

TEST_CASE("log-log fit recovers exact power laws") {
    std::vector<double> t, r;
    for (const double tt : {20.0, 40.0, 80.0, 160.0}) {
        t.push_back(tt);
        r.push_back(2.5 * std::pow(tt, -1.3));
    }
    const FitResult fit = fit_loglog(t, r);
    CHECK(!fit.degenerate);
    CHECK(fit.n == 4);
    CHECK(fit.slope == doctest::Approx(-1.3).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(2.5)).epsilon(1e-10));

    // Nonpositive residuals are dropped; too few points degenerate.
    const FitResult d1 = fit_loglog({10.0, 20.0}, {0.0, 0.0});
    CHECK(d1.degenerate);
    const FitResult d2 = fit_loglog({10.0}, {1.0});
    CHECK(d2.degenerate);
    const FitResult d3 = fit_loglog({10.0, 10.0}, {1.0, 2.0});
    CHECK(d3.degenerate); // zero spread in t
}

TEST_CASE("k-grid construction") {
    const std::vector<double> g = make_k_grid(1e-3, 6.5, 1301);
    CHECK(g.size() == 1301);
    CHECK(g.front() == 1e-3);
    CHECK(g.back() == 6.5);
    CHECK(g[1] > g[0]);
}

TEST_CASE("fmt_g17 round-trips doubles") {
    for (const double x : {1.0 / 3.0, -0.1, 1e-300, 6.5, 0.0, -2.718281828459045}) {
        const std::string s = fmt_g17(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
}

TEST_CASE("spectral line CSV round-trip") {
    const fs::path dir = temp_dir("bsq_csv_test");
    const std::string path = (dir / "line.csv").string();
    const SpectralLine line = small_line();
    write_spectral_line_csv(path, line);
    const SpectralLine back = read_spectral_line_csv(path);
    REQUIRE(back.k.size() == line.k.size());
    for (std::size_t i = 0; i < line.k.size(); ++i) {
        CHECK(back.k[i] == line.k[i]);
        CHECK(back.r1[i] == line.r1[i]);
        CHECK(back.abs2[i] == line.abs2[i]); // reconstructed as norm(r1)
        CHECK(back.ell_prime[i] == line.ell_prime[i]);
        CHECK(back.est_error[i] == line.est_error[i]);
    }
    CHECK(back.k_max == line.k_max);
    CHECK(back.r1_origin == line.r1_origin);
    CHECK(back.origin_gap == line.origin_gap);

    // Deterministic bytes: writing the same line twice gives equal digests.
    const std::string path2 = (dir / "line2.csv").string();
    write_spectral_line_csv(path2, line);
    CHECK(file_digest(path) == file_digest(path2));
}

TEST_CASE("field and comparison CSV round-trips") {
    const fs::path dir = temp_dir("bsq_csv_test2");
    WaveField f;
    f.L = 12.0;
    f.N = 16;
    f.t = 3.25;
    for (std::size_t j = 0; j < f.N; ++j) {
        f.u.push_back(std::sin(0.1 * double(j)) * 1e-3);
        f.v.push_back(std::cos(0.2 * double(j)) * 1e-4);
    }
    const std::string fpath = (dir / "field.csv").string();
    write_field_csv(fpath, f);
    const WaveField g = read_field_csv(fpath);
    CHECK(g.L == f.L);
    CHECK(g.N == f.N);
    CHECK(g.t == f.t);
    CHECK(g.u == f.u);
    CHECK(g.v == f.v);

    std::vector<ComparisonRow> rows(2);
    rows[0] = {0.6, 40.0, 1.25e-3, 1.3e-3, 2.0e-3, -5e-5, 0.025};
    rows[1] = {1.0, 160.0, -3.2e-4, -3.1e-4, 9.0e-4, -1e-5, 0.0111};
    const std::string cpath = (dir / "cmp.csv").string();
    write_comparison_csv(cpath, rows);
    const std::vector<ComparisonRow> back = read_comparison_csv(cpath);
    REQUIRE(back.size() == 2);
    CHECK(back[1].t == 160.0);
    CHECK(back[1].residual == rows[1].residual);
    CHECK(back[0].residual_over_envelope == rows[0].residual_over_envelope);
}

TEST_CASE("digests are stable and content-sensitive") {
    CHECK(text_digest("") == "cbf29ce484222325"); // FNV-1a offset basis
    CHECK(text_digest("a") != text_digest("b"));
    CHECK(text_digest("stable") == text_digest("stable"));

    const fs::path dir = temp_dir("bsq_digest_test");
    const std::string p = (dir / "t.txt").string();
    write_text_file(p, "some content");
    CHECK(file_digest(p) == text_digest("some content"));
}

TEST_CASE("json file errors carry context") {
    const fs::path dir = temp_dir("bsq_json_test");
    const std::string p = (dir / "bad.json").string();
    write_text_file(p, "{not json");
    CHECK_THROWS_AS(read_json_file(p), ValidationError);
    CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), ValidationError);
}

TEST_CASE("spectral-line stage caches by digest") {
    const fs::path dir = temp_dir("bsq_cache_test");

    nlohmann::json raw = default_config_json();
    raw["kgrid"] = {{"min", 0.4}, {"max", 1.2}, {"n", 5}};
    raw["tol"] = 1e-8;
    raw["out"] = dir.string();
    const PipelineConfig cfg = parse_config(raw);

    const SpectralLine first = ensure_spectral_line(cfg);
    const std::string line_path = (dir / "spectral_line.csv").string();
    REQUIRE(fs::exists(line_path));
    const std::string digest1 = file_digest(line_path);
    const auto mtime1 = fs::last_write_time(line_path);

    // Second call must reuse the cached file rather than recompute it.
    const SpectralLine second = ensure_spectral_line(cfg);
    CHECK(fs::last_write_time(line_path) == mtime1);
    CHECK(second.r1 == first.r1);

    // Corrupting the artifact invalidates the cache: the stage recomputes
    // and the digest returns to the original value.
    write_text_file(line_path, "garbage");
    const SpectralLine third = ensure_spectral_line(cfg);
    CHECK(file_digest(line_path) == digest1);
    CHECK(third.r1 == first.r1);

    // A manifest exists and records the stage.
    const nlohmann::json manifest = read_json_file((dir / "manifest.json").string());
    CHECK(manifest.contains("stages"));
    CHECK(manifest.at("stages").contains("scatter"));
}

TEST_CASE("comparison pipeline on a tiny configuration") {
    const fs::path dir = temp_dir("bsq_pipeline_test");

    nlohmann::json raw = default_config_json();
    raw["profile"] = nlohmann::json::parse(R"({
        "u0": [{"family": "gaussian", "amplitude": -0.05, "width": 1.0, "center": 0.0}],
        "v0": []
    })");
    raw["kgrid"] = nlohmann::json::parse(R"({"min": 1e-3, "max": 3.0, "n": 61})");
    raw["zeta"] = {1.0};
    raw["t"] = {20.0, 40.0};
    raw["tol"] = 1e-8;
    raw["out"] = dir.string();
    raw["pde"] = nlohmann::json::parse(
        R"({"L": 160.0, "N": 2048, "wrap_override": true})");
    const PipelineConfig cfg = parse_config(raw);

    cmd_compare(cfg);
    const std::string cmp_path = (dir / "comparison.csv").string();
    REQUIRE(fs::exists(cmp_path));
    const std::vector<ComparisonRow> rows = read_comparison_csv(cmp_path);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].zeta == 1.0);
    CHECK(rows[0].t == 20.0);
    CHECK(rows[1].t == 40.0);
    // The asymptotic envelope is positive on a valid ray and the numerical
    // solution lands within a modest multiple of it this early in time.
    for (const ComparisonRow& r : rows) {
        CHECK(r.envelope > 0.0);
        CHECK(std::abs(r.residual) <= 0.5 * r.envelope);
        CHECK(r.residual == r.u_num - r.u_asym);
    }

    // Determinism: recomputing the comparison yields byte-identical output.
    const std::string d1 = file_digest(cmp_path);
    fs::remove(cmp_path);
    cmd_compare(cfg);
    CHECK(file_digest(cmp_path) == d1);

    // cmd_report reads the comparison back without touching the inputs.
    cmd_report(cfg);
}

} // TEST_SUITE
