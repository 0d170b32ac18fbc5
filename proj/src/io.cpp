#include "alloymsa/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "alloymsa/error.hpp"

namespace alloymsa {

namespace {

template <class T>
T get_field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        fail(ErrorKind::schema, std::string(what) + " is missing \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::schema, std::string(what) + " field \"" + key + "\": " + e.what());
    }
}

}  // namespace

Json point_to_json(const LatticePoint& x) {
    Json a = Json::array();
    for (int r = 0; r < x.dim(); ++r) a.push_back(x[r]);
    return a;
}

LatticePoint point_from_json(const Json& j, int d) {
    if (!j.is_array() || static_cast<int>(j.size()) != d)
        fail(ErrorKind::schema, "lattice point must be an array of " + std::to_string(d) + " integers");
    LatticePoint x(d);
    for (int r = 0; r < d; ++r) {
        if (!j[r].is_number_integer()) fail(ErrorKind::schema, "lattice point entries must be integers");
        x[r] = j[r].get<int>();
    }
    return x;
}

Json potential_to_json(const SingleSitePotential& u) {
    Json values = Json::array();
    for (const auto& e : u.entries()) values.push_back(Json::array({point_to_json(e.k), e.value}));
    Json j{{"d", u.dim()}, {"values", values}, {"C", u.C()}, {"alpha", u.alpha()}};
    if (!u.exact_support()) {
        j["exact_support"] = false;
        j["truncation_residual"] = u.truncation_residual();
        j["truncation_radius"] = u.truncation_radius();
    }
    return j;
}

SingleSitePotential potential_from_json(const Json& j) {
    const int d = get_field<int>(j, "d", "potential");
    if (d < 1 || d > 4) fail(ErrorKind::schema, "potential dimension must lie in 1..4");
    const Json values = get_field<Json>(j, "values", "potential");
    if (!values.is_array() || values.empty())
        fail(ErrorKind::schema, "potential \"values\" must be a non-empty array");
    std::vector<PotentialEntry> entries;
    for (const Json& e : values) {
        if (!e.is_array() || e.size() != 2 || !e[1].is_number())
            fail(ErrorKind::schema, "potential value entries are [[k...], v]");
        entries.push_back({point_from_json(e[0], d), e[1].get<double>()});
    }
    const double C = get_field<double>(j, "C", "potential");
    const double alpha = get_field<double>(j, "alpha", "potential");
    const bool exact = j.value("exact_support", true);
    const double residual = j.value("truncation_residual", 0.0);
    const int radius = j.value("truncation_radius", -1);
    try {
        return SingleSitePotential(d, std::move(entries), C, alpha, exact, residual, radius);
    } catch (const Error& e) {
        fail(ErrorKind::schema, std::string("invalid potential: ") + e.what());
    }
}

Json density_to_json(const DisorderModel& model) {
    Json pieces = Json::array();
    for (const auto& p : model.pieces())
        pieces.push_back(Json{{"interval", {p.a, p.b}}, {"coeffs", p.coeffs}});
    return Json{{"pieces", pieces}};
}

DisorderModel density_from_json(const Json& j) {
    const Json pieces = get_field<Json>(j, "pieces", "density");
    if (!pieces.is_array() || pieces.empty())
        fail(ErrorKind::schema, "density \"pieces\" must be a non-empty array");
    std::vector<DensityPiece> out;
    for (const Json& p : pieces) {
        const auto iv = get_field<std::vector<double>>(p, "interval", "density piece");
        if (iv.size() != 2) fail(ErrorKind::schema, "density interval must be [a, b]");
        DensityPiece piece;
        piece.a = iv[0];
        piece.b = iv[1];
        piece.coeffs = get_field<std::vector<double>>(p, "coeffs", "density piece");
        out.push_back(std::move(piece));
    }
    try {
        return DisorderModel(std::move(out));
    } catch (const Error& e) {
        fail(ErrorKind::schema, std::string("invalid density: ") + e.what());
    }
}

Json leading_to_json(const LeadingIndexData& lead) {
    Json table = Json::array();
    for (const auto& rec : lead.derivative_table)
        table.push_back(Json{{"I", rec.index.entries},
                             {"value", rec.derivative.value},
                             {"error_bound", rec.derivative.error_bound}});
    return Json{{"I0", lead.leading.entries},
                {"c_u", lead.c_u},
                {"N", lead.order()},
                {"zero_tolerance", lead.zero_tolerance},
                {"table", table}};
}

Json schedule_to_json(const ScaleSchedule& s, double l_star) {
    return Json{{"l", s.l},
                {"log_l", s.log_l},
                {"m", s.m},
                {"m_inf", s.m_inf},
                {"l_bar", s.l_bar},
                {"l_star", l_star},
                {"geometric_bound", s.geometric_bound},
                {"exact_series", s.exact_series},
                {"mass_loss", s.mass_loss}};
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + header[i];
    text_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    require(cells.size() == columns_, ErrorKind::parameter, "csv row width differs from header");
    for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
    text_ += "\n";
}

void CsvWriter::row(const std::vector<double>& cells) {
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (double x : cells) s.push_back(format_number(x));
    row(s);
}

void CsvWriter::write(const std::filesystem::path& path) const { write_text(path, text_); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(f), ErrorKind::parameter, "cannot open " + path.string());
    f << text;
    require(static_cast<bool>(f), ErrorKind::parameter, "failed writing " + path.string());
}

void write_spectrum_csv(const std::filesystem::path& path, const std::vector<double>& eigenvalues) {
    CsvWriter w({"index", "eigenvalue"});
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        w.row(std::vector<double>{static_cast<double>(i), eigenvalues[i]});
    w.write(path);
}

}  // namespace alloymsa
