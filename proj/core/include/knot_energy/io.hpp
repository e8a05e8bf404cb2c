#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "knot_energy/continuum_energy.hpp"
#include "knot_energy/discrete_energy.hpp"
#include "knot_energy/harness.hpp"
#include "knot_energy/polygon.hpp"

namespace knot_energy {

enum class Format { csv, json };

Format parse_format(std::string_view text);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Whole-string parse; ParseError on trailing garbage or non-finite input.
double parse_double(std::string_view text, std::size_t line = 0);

// Polygon files. CSV: a header line `dim,<n>` followed by one vertex per line.
// JSON: {"dim": n, "vertices": [[x, y, ...], ...]}.
void write_polygon(std::ostream& out, const ClosedPolygon& polygon, Format format);
ClosedPolygon read_polygon(std::istream& in);  // format detected from the first character
ClosedPolygon read_polygon_file(const std::filesystem::path& path);
nlohmann::json to_json(const ClosedPolygon& polygon);
ClosedPolygon polygon_from_json(const nlohmann::json& json);

struct EnergyReport {
  std::size_t m = 0;
  EnergyBreakdown energy;
  double equilateral_spread = 0.0;
};

EnergyReport energy_report(const ClosedPolygon& polygon);
nlohmann::json to_json(const EnergyReport& report);
void write_energy_report(std::ostream& out, const EnergyReport& report, Format format);

void write_continuum_report(std::ostream& out, const ContinuumReport& report, Format format);

inline constexpr std::string_view sweep_csv_header = "m,E,E1,E2,E_ref,E1_ref,E2_ref,err_E,err_E1,err_E2,spread";
inline constexpr std::string_view invariance_csv_header = "seed,map_kind,rel_dev_E,rel_dev_E1,rel_dev_E2";
inline constexpr std::string_view control_csv_header = "m,E2_unmodified,E_unmodified,E2,E,correction";

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows, Format format);

/// Reads a sweep CSV and re-checks err_X = |X - X_ref| on every row
/// (ParseError on mismatch beyond rounding of the stored values).
std::vector<SweepRow> read_sweep_csv(std::istream& in);

void write_invariance(std::ostream& out, const InvarianceResult& result, Format format);
void write_control(std::ostream& out, const ControlResult& result, Format format);

}  // namespace knot_energy
