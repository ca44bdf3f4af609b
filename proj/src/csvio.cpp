#include "bsq/csvio.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bsq/errors.hpp"

namespace bsq {
namespace {

std::uint64_t fnv1a(const char* data, std::size_t n, std::uint64_t h = 14695981039346656037ULL) {
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::ifstream open_in(const std::string& path, const char* who) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError(std::string(who) + ": cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path, const char* who) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError(std::string(who) + ": cannot write " + path);
    return out;
}

/// Split a CSV data line into doubles; returns false on comment/blank lines.
bool parse_row(const std::string& line, std::vector<double>& out) {
    if (line.empty() || line[0] == '#') return false;
    out.clear();
    const char* s = line.c_str();
    char* end = nullptr;
    while (*s != '\0') {
        double v = std::strtod(s, &end);
        if (end == s) break;
        out.push_back(v);
        s = end;
        while (*s == ',' || *s == ' ' || *s == '\t') ++s;
    }
    return !out.empty();
}

/// Pull "key=value" out of a metadata comment "# key=value".
bool meta_value(const std::string& line, const std::string& key, std::string& val) {
    std::string prefix = "# " + key + "=";
    if (line.rfind(prefix, 0) != 0) return false;
    val = line.substr(prefix.size());
    return true;
}

} // namespace

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

void write_spectral_line_csv(const std::string& path, const SpectralLine& line) {
    std::ofstream out = open_out(path, "write_spectral_line_csv");
    out << kSchemaLine << "\n# tool=" << kToolVersion << "\n";
    out << "# k_max=" << fmt_g17(line.k_max) << "\n";
    out << "# r1_origin=" << fmt_g17(line.r1_origin.real()) << ","
        << fmt_g17(line.r1_origin.imag()) << "\n";
    out << "# origin_gap=" << fmt_g17(line.origin_gap) << "\n";
    out << "k,re_r1,im_r1,abs_r1,ell_prime,est_error\n";
    for (std::size_t i = 0; i < line.k.size(); ++i) {
        out << fmt_g17(line.k[i]) << ',' << fmt_g17(line.r1[i].real()) << ','
            << fmt_g17(line.r1[i].imag()) << ',' << fmt_g17(std::sqrt(line.abs2[i]))
            << ',' << fmt_g17(line.ell_prime[i]) << ',' << fmt_g17(line.est_error[i])
            << '\n';
    }
}

SpectralLine read_spectral_line_csv(const std::string& path) {
    std::ifstream in = open_in(path, "read_spectral_line_csv");
    SpectralLine line;
    std::string row, val;
    std::vector<double> vals;
    bool schema_seen = false;
    while (std::getline(in, row)) {
        if (!row.empty() && row.back() == '\r') row.pop_back();
        if (row.rfind(kSchemaLine, 0) == 0) schema_seen = true;
        if (meta_value(row, "k_max", val)) line.k_max = std::strtod(val.c_str(), nullptr);
        if (meta_value(row, "r1_origin", val)) {
            char* end = nullptr;
            double re = std::strtod(val.c_str(), &end);
            double im = (end != nullptr && *end == ',') ? std::strtod(end + 1, nullptr) : 0.0;
            line.r1_origin = cplx(re, im);
        }
        if (meta_value(row, "origin_gap", val))
            line.origin_gap = std::strtod(val.c_str(), nullptr);
        if (!parse_row(row, vals)) continue;
        if (vals.size() != 6)
            throw ValidationError("read_spectral_line_csv: expected 6 columns in " + path);
        line.k.push_back(vals[0]);
        line.r1.push_back(cplx(vals[1], vals[2]));
        line.abs2.push_back(vals[1] * vals[1] + vals[2] * vals[2]);
        line.ell_prime.push_back(vals[4]);
        line.est_error.push_back(vals[5]);
    }
    if (!schema_seen)
        throw ValidationError("read_spectral_line_csv: missing '# schema=1' header in " + path);
    if (line.k.size() < 5)
        throw ValidationError("read_spectral_line_csv: fewer than 5 data rows in " + path);
    if (line.k_max == 0.0) line.k_max = line.k.back();
    return line;
}

void write_field_csv(const std::string& path, const WaveField& f) {
    std::ofstream out = open_out(path, "write_field_csv");
    out << kSchemaLine << "\n# tool=" << kToolVersion << "\n";
    out << "# t=" << fmt_g17(f.t) << "\n# L=" << fmt_g17(f.L) << "\n# N=" << f.N << "\n";
    out << "x,u,v\n";
    for (std::size_t j = 0; j < f.N; ++j) {
        double x = -f.L + 2.0 * f.L * static_cast<double>(j) / static_cast<double>(f.N);
        out << fmt_g17(x) << ',' << fmt_g17(f.u[j]) << ',' << fmt_g17(f.v[j]) << '\n';
    }
}

WaveField read_field_csv(const std::string& path) {
    std::ifstream in = open_in(path, "read_field_csv");
    WaveField f;
    std::string row, val;
    std::vector<double> vals;
    while (std::getline(in, row)) {
        if (!row.empty() && row.back() == '\r') row.pop_back();
        if (meta_value(row, "t", val)) f.t = std::strtod(val.c_str(), nullptr);
        if (meta_value(row, "L", val)) f.L = std::strtod(val.c_str(), nullptr);
        if (meta_value(row, "N", val))
            f.N = static_cast<std::size_t>(std::strtoull(val.c_str(), nullptr, 10));
        if (!parse_row(row, vals)) continue;
        if (vals.size() != 3)
            throw ValidationError("read_field_csv: expected 3 columns in " + path);
        f.u.push_back(vals[1]);
        f.v.push_back(vals[2]);
    }
    if (f.N == 0 || f.u.size() != f.N)
        throw ValidationError("read_field_csv: row count does not match N in " + path);
    return f;
}

void write_comparison_csv(const std::string& path, const std::vector<ComparisonRow>& rows) {
    std::ofstream out = open_out(path, "write_comparison_csv");
    out << kSchemaLine << "\n# tool=" << kToolVersion << "\n";
    out << "zeta,t,u_num,u_asym,envelope,residual,residual_over_envelope\n";
    for (const ComparisonRow& r : rows) {
        out << fmt_g17(r.zeta) << ',' << fmt_g17(r.t) << ',' << fmt_g17(r.u_num) << ','
            << fmt_g17(r.u_asym) << ',' << fmt_g17(r.envelope) << ','
            << fmt_g17(r.residual) << ',' << fmt_g17(r.residual_over_envelope) << '\n';
    }
}

std::vector<ComparisonRow> read_comparison_csv(const std::string& path) {
    std::ifstream in = open_in(path, "read_comparison_csv");
    std::vector<ComparisonRow> rows;
    std::string row;
    std::vector<double> vals;
    while (std::getline(in, row)) {
        if (!row.empty() && row.back() == '\r') row.pop_back();
        if (!parse_row(row, vals)) continue;
        if (vals.size() != 7)
            throw ValidationError("read_comparison_csv: expected 7 columns in " + path);
        ComparisonRow r;
        r.zeta = vals[0];
        r.t = vals[1];
        r.u_num = vals[2];
        r.u_asym = vals[3];
        r.envelope = vals[4];
        r.residual = vals[5];
        r.residual_over_envelope = vals[6];
        rows.push_back(r);
    }
    if (rows.empty())
        throw ValidationError("read_comparison_csv: no data rows in " + path);
    return rows;
}

std::string file_digest(const std::string& path) {
    std::ifstream in = open_in(path, "file_digest");
    std::uint64_t h = 14695981039346656037ULL;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
        h = fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
    return hex64(h);
}

std::string text_digest(const std::string& text) {
    return hex64(fnv1a(text.data(), text.size()));
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out = open_out(path, "write_text_file");
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in = open_in(path, "read_text_file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out = open_out(path, "write_json_file");
    out << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in = open_in(path, "read_json_file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ValidationError("read_json_file: " + path + " is not valid JSON: " + e.what());
    }
    return j;
}

} // namespace bsq
