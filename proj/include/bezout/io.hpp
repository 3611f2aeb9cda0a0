//
// io.hpp
//
// JSON serialization of every artifact type. Complex entries are [re, im]
// pairs; matrices are flat row-major entry lists; doubles round-trip
// bit-exactly (shortest-representation printing).
//

#pragma once

#include <string>

#include <json.hpp>

#include "bezout/series.hpp"
#include "bezout/solver.hpp"
#include "bezout/spectral.hpp"
#include "bezout/verify.hpp"

namespace bezout::io {

nlohmann::json toJson(const Matrix& m);
Matrix matrixFromJson(const nlohmann::json& j);

nlohmann::json toJson(const CoeffSeries& f);
CoeffSeries seriesFromJson(const nlohmann::json& j);

nlohmann::json toJson(const SpectralFactor& f);
SpectralFactor factorFromJson(const nlohmann::json& j);

nlohmann::json toJson(const BezoutData& d);
BezoutData bezoutDataFromJson(const nlohmann::json& j);

nlohmann::json toJson(const VerifyReport& r);

/// File helpers; read errors and malformed content raise ShapeError /
/// DomainError with the offending path in the message.
CoeffSeries readSeriesFile(const std::string& path);
BezoutData readBezoutDataFile(const std::string& path);
void writeJsonFile(const std::string& path, const nlohmann::json& j);

}  // namespace bezout::io
