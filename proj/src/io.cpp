#include "varmult/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace varmult::io {

namespace {

template <typename T>
T get_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("field \"") + key + "\": " + e.what());
    }
}

std::vector<Complex> complex_from_json(const Json& j) {
    const auto n = get_field<std::size_t>(j, "n");
    const auto re = get_field<std::vector<double>>(j, "re");
    const auto im = j.contains("im") ? get_field<std::vector<double>>(j, "im") : std::vector<double>(n, 0.0);
    if (re.size() != n || im.size() != n) throw ParseError("\"re\"/\"im\" arrays must have length n");
    std::vector<Complex> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = {re[i], im[i]};
    return values;
}

Json complex_to_json(std::span<const Complex> values) {
    std::vector<double> re, im;
    for (const auto& v : values) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    return Json{{"n", values.size()}, {"re", re}, {"im", im}};
}

Multiplier expand_pieces(const Json& pieces, std::size_t n) {
    if (!pieces.is_array()) throw ParseError("\"pieces\" must be an array");
    std::vector<double> values(n, 0.0);
    std::vector<bool> covered(n, false);
    for (const auto& piece : pieces) {
        FreqInterval interval{get_field<std::ptrdiff_t>(piece, "lo"), get_field<std::ptrdiff_t>(piece, "hi")};
        interval.check_range(n);
        const double value = get_field<double>(piece, "value");
        for (auto k = interval.lo; k <= interval.hi; ++k) {
            const auto i = static_cast<std::size_t>(k + freq_offset(n));
            if (covered[i]) throw ParseError("overlapping multiplier pieces at frequency " + std::to_string(k));
            covered[i] = true;
            values[i] = value;
        }
    }
    return Multiplier(std::move(values));
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << text;
    if (!out) throw ParseError("write failed for " + path.string());
}

Json to_json(const GridFunction& f) { return complex_to_json(f.values()); }
Json to_json(const Spectrum& spectrum) { return complex_to_json(spectrum.coeffs()); }

GridFunction grid_function_from_json(const Json& j) {
    try {
        return GridFunction(complex_from_json(j));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

Spectrum spectrum_from_json(const Json& j) {
    try {
        return Spectrum(complex_from_json(j));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

Json to_json(const Multiplier& m) {
    return Json{{"n", m.size()}, {"values", std::vector<double>(m.values().begin(), m.values().end())}};
}

Multiplier multiplier_from_json(const Json& j, std::optional<std::size_t> n) {
    try {
        if (j.is_array()) {
            if (!n) throw ParseError("piecewise multiplier array needs an explicit size");
            return expand_pieces(j, *n);
        }
        const auto size = j.contains("n") ? get_field<std::size_t>(j, "n") : n.value_or(0);
        if (j.contains("values")) {
            auto values = get_field<std::vector<double>>(j, "values");
            if (values.size() != size) throw ParseError("\"values\" must have length n");
            return Multiplier(std::move(values));
        }
        if (j.contains("pieces")) return expand_pieces(j.at("pieces"), size);
        throw ParseError("multiplier needs \"values\" or \"pieces\"");
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

Json to_json(const Decomposition& d) {
    Json levels = Json::array();
    for (const auto& level : d.levels) {
        Json pieces = Json::array();
        for (const auto& piece : level) {
            pieces.push_back({{"lo", piece.interval.lo}, {"hi", piece.interval.hi}, {"b", piece.coeff}});
        }
        levels.push_back(std::move(pieces));
    }
    return Json{{"r", d.r}, {"rho", d.rho}, {"residual_sup", d.residual_sup}, {"levels", std::move(levels)}};
}

Decomposition decomposition_from_json(const Json& j, std::size_t n) {
    Decomposition d;
    d.size = n;
    d.r = get_field<double>(j, "r");
    d.rho = get_field<double>(j, "rho");
    d.residual_sup = j.contains("residual_sup") ? get_field<double>(j, "residual_sup") : 0.0;
    d.residual.assign(n, 0.0);
    for (const auto& level : get_field<Json>(j, "levels")) {
        std::vector<LevelPiece> pieces;
        for (const auto& piece : level) {
            LevelPiece lp{{get_field<std::ptrdiff_t>(piece, "lo"), get_field<std::ptrdiff_t>(piece, "hi")},
                          get_field<double>(piece, "b")};
            try {
                lp.interval.check_range(n);
            } catch (const InvalidArgument& e) {
                throw ParseError(e.what());
            }
            pieces.push_back(lp);
        }
        d.levels.push_back(std::move(pieces));
    }
    return d;
}

Json to_json(const LemmaReport& report) {
    Json levels = Json::array();
    for (std::size_t j = 0; j < report.levels.size(); ++j) {
        const auto& l = report.levels[j];
        levels.push_back({{"level", j},
                          {"count", l.count},
                          {"count_bound", l.count_bound},
                          {"max_coeff", l.max_coeff},
                          {"coeff_bound", l.coeff_bound},
                          {"pass", l.pass},
                          {"shifted_pass", l.shifted_pass}});
    }
    return Json{{"pass", report.pass},
                {"disjoint", report.disjoint},
                {"shifted_pass", report.shifted_pass},
                {"count_constant", kCountConstant},
                {"coeff_constant", kCoefConstant},
                {"level_shift", kLevelShift},
                {"levels", std::move(levels)}};
}

Json to_json(const BoundReport& report) {
    Json families = Json::array();
    for (auto f : report.family) families.push_back(std::string(family_name(f)));
    Json witnesses = Json::object();
    for (const auto& [x, m] : report.witnesses) witnesses[std::to_string(x)] = to_json(m);
    Json lp = Json::array();
    for (const auto& [p, s] : report.lp_summary) {
        lp.push_back({{"p", p},
                      {"lower_norm", s.lower_norm},
                      {"upper_norm", s.upper_norm},
                      {"f_norm", s.f_norm},
                      {"lower_ratio", s.lower_ratio},
                      {"upper_ratio", s.upper_ratio}});
    }
    return Json{{"n", report.size},
                {"r", report.r},
                {"s_grid", report.s_grid},
                {"chain_constants", report.constants},
                {"certified", report.certified},
                {"sandwich_violations", report.sandwich_violations},
                {"lower", report.lower},
                {"upper", report.upper},
                {"s_used", report.s_used},
                {"family", std::move(families)},
                {"witnesses", std::move(witnesses)},
                {"lp_summary", std::move(lp)}};
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out << ',';
        out << csv_field(fields[i]);
    }
    out << "\r\n";
}

std::string format_collection(const IntervalCollection& collection) {
    std::ostringstream out;
    bool first = true;
    for (const auto& item : collection.items()) {
        if (!first) out << ';';
        first = false;
        out << item.lo << ':' << item.hi;
    }
    return out.str();
}

}  // namespace varmult::io
