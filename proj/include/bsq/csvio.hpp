#pragma once

/// Versioned CSV readers/writers for the pipeline artifacts, content
/// digests for the run manifest, and small text-file helpers.  All numeric
/// output uses %.17g so files round-trip doubles exactly and re-runs are
/// byte-identical.

#include <string>
#include <vector>

#include "json.hpp"

#include "bsq/pde.hpp"
#include "bsq/scatter.hpp"

namespace bsq {

inline constexpr const char* kToolVersion = "bsqlab 1.0.0";
inline constexpr const char* kSchemaLine = "# schema=1";

struct ComparisonRow {
    double zeta = 0.0;
    double t = 0.0;
    double u_num = 0.0;
    double u_asym = 0.0;
    double envelope = 0.0;
    double residual = 0.0; ///< u_num - u_asym exactly as stored
    double residual_over_envelope = 0.0;
};

/// Format one double as %.17g (round-trip safe).
std::string fmt_g17(double x);

void write_spectral_line_csv(const std::string& path, const SpectralLine& line);
SpectralLine read_spectral_line_csv(const std::string& path);

void write_field_csv(const std::string& path, const WaveField& f);
WaveField read_field_csv(const std::string& path);

void write_comparison_csv(const std::string& path, const std::vector<ComparisonRow>& rows);
std::vector<ComparisonRow> read_comparison_csv(const std::string& path);

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

/// FNV-1a 64-bit digest of a string.
std::string text_digest(const std::string& text);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

} // namespace bsq
