#pragma once

#include <iosfwd>

#include <json.hpp>

#include "jetgeo/geometry.hpp"
#include "jetgeo/jetdynamics.hpp"
#include "jetgeo/lorenz5.hpp"

namespace jetgeo {

nlohmann::json to_json(const GeometryReport& report);
nlohmann::json to_json(const LevelSetClass& cls);

/// CSV with header t,x1..xn[,v1..vn]; 17 significant digits per value.
/// With `field` set, two extra columns eym and jls are appended per sample.
void write_csv(std::ostream& out, const Trajectory& traj,
               const VectorField* observables_field = nullptr);

/// Reads the format written by write_csv; extra observable columns are
/// ignored. Throws std::runtime_error on malformed input.
Trajectory read_csv(std::istream& in);

} // namespace jetgeo
