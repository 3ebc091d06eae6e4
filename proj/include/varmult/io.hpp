#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "varmult/decompose.hpp"
#include "varmult/grid.hpp"
#include "varmult/maximal.hpp"
#include "varmult/squarefun.hpp"

namespace varmult::io {

using Json = nlohmann::json;

/// Reads and parses a JSON file; IO and syntax errors become ParseError.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// {"n": N, "re": [...], "im": [...]}
Json to_json(const GridFunction& f);
Json to_json(const Spectrum& spectrum);
GridFunction grid_function_from_json(const Json& j);
Spectrum spectrum_from_json(const Json& j);

/// {"n": N, "values": [...]}
Json to_json(const Multiplier& m);
/// Accepts {"n", "values"}, {"n", "pieces": [{"lo","hi","value"}...]} or a bare
/// piece array (which needs `n`). Uncovered frequencies are zero; overlapping pieces are rejected.
Multiplier multiplier_from_json(const Json& j, std::optional<std::size_t> n = std::nullopt);

/// {"r", "rho", "residual_sup", "levels": [[{"lo","hi","b"}...]...]}
Json to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j, std::size_t n);
Json to_json(const LemmaReport& report);

Json to_json(const BoundReport& report);

/// Shortest round-trippable decimal form, identical across runs.
std::string format_double(double v);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// "lo:hi;lo:hi;..."
std::string format_collection(const IntervalCollection& collection);

}  // namespace varmult::io
