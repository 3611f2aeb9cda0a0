#include "bezout/io.hpp"

#include <fstream>

namespace bezout::io {

namespace {

using nlohmann::json;

json entriesToJson(const Matrix& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            a.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    return a;
}

Matrix entriesFromJson(const json& a, int rows, int cols) {
    if (!a.is_array() || static_cast<Eigen::Index>(a.size()) !=
                             static_cast<Eigen::Index>(rows) * cols)
        throw ShapeError("matrix entry list has the wrong length");
    Matrix m(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j, ++idx) {
            const json& e = a[idx];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ShapeError("matrix entries must be [re, im] pairs");
            m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

int intField(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ShapeError(std::string("missing or non-integer field '") + key + "'");
    return j[key].get<int>();
}

double numberField(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ShapeError(std::string("missing or non-numeric field '") + key + "'");
    return j[key].get<double>();
}

const json& objectField(const json& j, const char* key) {
    if (!j.contains(key))
        throw ShapeError(std::string("missing field '") + key + "'");
    return j[key];
}

}  // namespace

json toJson(const Matrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entriesToJson(m)}};
}

Matrix matrixFromJson(const json& j) {
    int rows = intField(j, "rows");
    int cols = intField(j, "cols");
    if (rows < 0 || cols < 0) throw ShapeError("negative matrix dimensions");
    return entriesFromJson(objectField(j, "entries"), rows, cols);
}

json toJson(const CoeffSeries& f) {
    json coeffs = json::array();
    for (const Matrix& c : f.coeffs) coeffs.push_back(entriesToJson(c));
    return json{{"rows", f.rows}, {"cols", f.cols}, {"lo", f.lo}, {"coeffs", coeffs}};
}

CoeffSeries seriesFromJson(const json& j) {
    int rows = intField(j, "rows");
    int cols = intField(j, "cols");
    int lo = intField(j, "lo");
    const json& coeffs = objectField(j, "coeffs");
    if (!coeffs.is_array() || coeffs.empty())
        throw ShapeError("'coeffs' must be a non-empty list");
    if (rows < 0 || cols < 0) throw ShapeError("negative series dimensions");
    CoeffSeries f(rows, cols, lo, static_cast<int>(coeffs.size()));
    for (size_t k = 0; k < coeffs.size(); ++k)
        f.coeffs[k] = entriesFromJson(coeffs[k], rows, cols);
    f.validate();
    return f;
}

json toJson(const SpectralFactor& f) {
    return json{{"r_plus", toJson(f.r_plus)},
                {"residual", f.residual},
                {"section_used", f.section_used}};
}

SpectralFactor factorFromJson(const json& j) {
    SpectralFactor f;
    f.r_plus = seriesFromJson(objectField(j, "r_plus"));
    f.residual = numberField(j, "residual");
    f.section_used = j.contains("section_used") ? intField(j, "section_used") : 0;
    return f;
}

json toJson(const BezoutData& d) {
    return json{{"xi0", toJson(d.xi0)},
                {"theta0", toJson(d.theta0)},
                {"h0", toJson(d.h0)},
                {"y", toJson(d.y)},
                {"y_inv", toJson(d.y_inv)},
                {"xi", toJson(d.xi)},
                {"theta", toJson(d.theta)},
                {"h", toJson(d.h)},
                {"margin", d.margin},
                {"diagnostics",
                 json{{"tail_y", d.diagnostics.tail_y},
                      {"tail_y_inv", d.diagnostics.tail_y_inv},
                      {"rank_gap", d.diagnostics.rank_gap},
                      {"h0_identity", d.diagnostics.h0_identity}}}};
}

BezoutData bezoutDataFromJson(const json& j) {
    BezoutData d;
    d.xi0 = matrixFromJson(objectField(j, "xi0"));
    d.theta0 = matrixFromJson(objectField(j, "theta0"));
    d.h0 = matrixFromJson(objectField(j, "h0"));
    d.y = seriesFromJson(objectField(j, "y"));
    d.y_inv = seriesFromJson(objectField(j, "y_inv"));
    d.xi = seriesFromJson(objectField(j, "xi"));
    d.theta = seriesFromJson(objectField(j, "theta"));
    d.h = seriesFromJson(objectField(j, "h"));
    d.margin = numberField(j, "margin");
    if (j.contains("diagnostics")) {
        const json& diag = j["diagnostics"];
        d.diagnostics.tail_y = numberField(diag, "tail_y");
        d.diagnostics.tail_y_inv = numberField(diag, "tail_y_inv");
        d.diagnostics.rank_gap = numberField(diag, "rank_gap");
        d.diagnostics.h0_identity = numberField(diag, "h0_identity");
    }
    if (d.xi0.rows() != d.y.rows || d.xi0.rows() != static_cast<Eigen::Index>(d.theta0.rows()))
        throw ShapeError("inconsistent shapes across solution fields");
    return d;
}

json toJson(const VerifyReport& r) {
    json checks = json::array();
    for (const CheckResult& c : r.checks)
        checks.push_back(json{{"name", c.name},
                              {"residual", c.residual},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass},
                              {"note", c.note}});
    return json{{"degree", r.degree},
                {"seed", r.seed},
                {"grid",
                 json{{"boundary_points", r.grid.boundary.size()},
                      {"interior_points", r.grid.interior.size()}}},
                {"checks", checks},
                {"all_pass", r.allPass()}};
}

namespace {

json parseFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DomainError("malformed JSON in '" + path + "': " + e.what());
    }
}

}  // namespace

CoeffSeries readSeriesFile(const std::string& path) {
    json j = parseFile(path);
    try {
        return seriesFromJson(j);
    } catch (const Error& e) {
        throw ShapeError(path + ": " + e.what());
    }
}

BezoutData readBezoutDataFile(const std::string& path) {
    json j = parseFile(path);
    try {
        return bezoutDataFromJson(j);
    } catch (const Error& e) {
        throw ShapeError(path + ": " + e.what());
    }
}

void writeJsonFile(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
    if (!out.good()) throw DomainError("write failed for '" + path + "'");
}

}  // namespace bezout::io
