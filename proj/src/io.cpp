#include "jetgeo/io.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace jetgeo {

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

void put_value(std::ostream& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

} // namespace

nlohmann::json to_json(const GeometryReport& r) {
    nlohmann::json torsion = nlohmann::json::array();
    for (const auto& Rk : r.torsion) torsion.push_back(matrix_json(Rk));
    return nlohmann::json{
        {"point", vector_json(r.point)},
        {"jacobian", matrix_json(r.jacobian)},
        {"connection", matrix_json(r.connection)},
        {"temporal_connection", r.temporal_connection},
        {"torsion", std::move(torsion)},
        {"em", matrix_json(r.em)},
        {"eym", r.eym},
        {"maxwell_residual", r.maxwell_residual},
        {"cartan_coefficients", "identically zero"},
        {"curvature", "identically zero"},
    };
}

nlohmann::json to_json(const LevelSetClass& cls) {
    nlohmann::json j{
        {"free_coordinates", {"x2", "x4"}},
        {"tolerance", cls.tolerance},
    };
    switch (cls.kind) {
    case LevelSetClass::Case::Empty:
        j["case"] = "empty";
        break;
    case LevelSetClass::Case::Line:
        j["case"] = "line";
        j["constraints"] = cls.constraints;
        j["direction"] = {cls.direction(0), cls.direction(1), cls.direction(2)};
        break;
    case LevelSetClass::Case::Cylinder:
        j["case"] = "cylinder";
        j["radius"] = cls.radius;
        j["rotation"] = matrix_json(cls.rotation);
        j["axis_constraints"] = cls.constraints;
        j["axis_direction"] = {cls.direction(0), cls.direction(1), cls.direction(2)};
        break;
    }
    return j;
}

void write_csv(std::ostream& out, const Trajectory& traj,
               const VectorField* observables_field) {
    const int n = static_cast<int>(traj.xs.front().size());
    out << 't';
    for (int i = 1; i <= n; ++i) out << ",x" << i;
    if (traj.has_velocities())
        for (int i = 1; i <= n; ++i) out << ",v" << i;
    std::vector<Eigen::VectorXd> vs;
    if (observables_field) {
        out << ",eym,jls";
        vs = traj.has_velocities() ? traj.vs : fd_velocities(traj);
    }
    out << '\n';
    for (int s = 0; s < traj.samples(); ++s) {
        put_value(out, traj.ts[s]);
        for (int i = 0; i < n; ++i) {
            out << ',';
            put_value(out, traj.xs[s](i));
        }
        if (traj.has_velocities())
            for (int i = 0; i < n; ++i) {
                out << ',';
                put_value(out, traj.vs[s](i));
            }
        if (observables_field) {
            out << ',';
            put_value(out, yang_mills_energy(*observables_field, traj.xs[s]));
            out << ',';
            put_value(out, jls(*observables_field, traj.xs[s], vs[s]));
        }
        out << '\n';
    }
}

Trajectory read_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty trajectory CSV");

    std::vector<std::string> cols;
    {
        std::stringstream ss(header);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
    }
    if (cols.empty() || cols[0] != "t")
        throw std::runtime_error("trajectory CSV must start with a 't' column");
    int n = 0;
    while (n + 1 < static_cast<int>(cols.size()) &&
           cols[n + 1] == "x" + std::to_string(n + 1))
        ++n;
    if (n == 0) throw std::runtime_error("trajectory CSV has no x columns");
    int nv = 0;
    while (1 + n + nv < static_cast<int>(cols.size()) &&
           cols[1 + n + nv] == "v" + std::to_string(nv + 1))
        ++nv;
    if (nv != 0 && nv != n)
        throw std::runtime_error("trajectory CSV has a partial velocity block");

    Trajectory traj;
    std::string line;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) {
            try {
                size_t used = 0;
                vals.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw std::runtime_error("malformed number '" + cell + "' at CSV line " +
                                         std::to_string(lineno));
            }
        }
        if (static_cast<int>(vals.size()) < 1 + n + nv)
            throw std::runtime_error("short row at CSV line " + std::to_string(lineno));
        traj.ts.push_back(vals[0]);
        traj.xs.push_back(Eigen::Map<Eigen::VectorXd>(vals.data() + 1, n));
        if (nv > 0)
            traj.vs.push_back(Eigen::Map<Eigen::VectorXd>(vals.data() + 1 + n, n));
    }
    if (traj.samples() < 2)
        throw std::runtime_error("trajectory CSV needs at least 2 samples");
    return traj;
}

} // namespace jetgeo
