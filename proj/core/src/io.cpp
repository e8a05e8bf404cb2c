#include "knot_energy/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "knot_energy/errors.hpp"

namespace knot_energy {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = line.find(sep);
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class... Values>
void csv_line(std::ostream& out, const Values&... values) {
  bool first = true;
  const auto put = [&](const auto& v) {
    if (!first) out << ',';
    first = false;
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
      out << format_double(v);
    } else {
      out << v;
    }
  };
  (put(values), ...);
  out << '\n';
}

std::size_t parse_size(std::string_view text, std::size_t line) {
  text = trim(text);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("expected a non-negative integer, got '" + std::string(text) + "'", line);
  }
  return value;
}

nlohmann::json to_json(const SweepRow& r) {
  return {{"m", r.m},           {"E", r.E},           {"E1", r.E1},         {"E2", r.E2},
          {"E_ref", r.E_ref},   {"E1_ref", r.E1_ref}, {"E2_ref", r.E2_ref}, {"err_E", r.err_E},
          {"err_E1", r.err_E1}, {"err_E2", r.err_E2}, {"spread", r.spread}};
}

void check_error_column(double value, double reference, double error, std::string_view name, std::size_t line) {
  const double expected = std::abs(value - reference);
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(value), std::abs(reference));
  if (!(std::abs(error - expected) <= slack)) {
    throw ParseError("err_" + std::string(name) + " does not equal |" + std::string(name) + " - " + std::string(name) +
                         "_ref|",
                     line);
  }
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw InvalidArgument("unknown format '" + std::string(text) + "' (expected csv or json)");
}

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

double parse_double(std::string_view text, std::size_t line) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value)) {
    throw ParseError("expected a finite number, got '" + std::string(text) + "'", line);
  }
  return value;
}

nlohmann::json to_json(const ClosedPolygon& polygon) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const VecN& v : polygon.vertices()) vertices.push_back(std::vector<double>(v.coords().begin(), v.coords().end()));
  return {{"dim", polygon.dim()}, {"vertices", std::move(vertices)}};
}

ClosedPolygon polygon_from_json(const nlohmann::json& json) {
  std::vector<VecN> vertices;
  try {
    const auto dim = json.at("dim").get<std::size_t>();
    for (const auto& row : json.at("vertices")) {
      auto coords = row.get<std::vector<double>>();
      if (coords.size() != dim) throw ParseError("vertex has " + std::to_string(coords.size()) + " coordinates, expected " + std::to_string(dim));
      vertices.emplace_back(std::move(coords));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed polygon JSON: ") + e.what());
  }
  return ClosedPolygon(std::move(vertices));
}

void write_polygon(std::ostream& out, const ClosedPolygon& polygon, Format format) {
  if (format == Format::json) {
    out << to_json(polygon).dump() << '\n';
    return;
  }
  out << "dim," << polygon.dim() << '\n';
  for (const VecN& v : polygon.vertices()) {
    for (std::size_t k = 0; k < v.dim(); ++k) out << (k ? "," : "") << format_double(v[k]);
    out << '\n';
  }
}

ClosedPolygon read_polygon(std::istream& in) {
  in >> std::ws;
  if (in.peek() == '{') {
    try {
      return polygon_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed polygon JSON: ") + e.what());
    }
  }

  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  std::vector<VecN> vertices;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto fields = split(text, ',');
    if (dim == 0) {
      if (fields.size() != 2 || trim(fields[0]) != "dim") throw ParseError("polygon CSV must start with 'dim,<n>'", line_no);
      dim = parse_size(fields[1], line_no);
      if (dim < 2) throw ParseError("dimension must be at least 2", line_no);
      continue;
    }
    if (fields.size() != dim) {
      throw ParseError("expected " + std::to_string(dim) + " coordinates, got " + std::to_string(fields.size()), line_no);
    }
    std::vector<double> coords;
    coords.reserve(dim);
    for (auto f : fields) coords.push_back(parse_double(f, line_no));
    vertices.emplace_back(std::move(coords));
  }
  if (dim == 0) throw ParseError("empty polygon file");
  return ClosedPolygon(std::move(vertices));
}

ClosedPolygon read_polygon_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return read_polygon(in);
  } catch (Error& e) {
    e.add_context(path.string());
    throw;
  }
}

EnergyReport energy_report(const ClosedPolygon& polygon) {
  return {polygon.size(), discrete_energy(polygon), polygon.equilateral_spread()};
}

nlohmann::json to_json(const EnergyReport& r) {
  return {{"m", r.m},
          {"E", r.energy.total},
          {"E1", r.energy.part1},
          {"E2", r.energy.part2},
          {"equilateral_spread", r.equilateral_spread}};
}

void write_energy_report(std::ostream& out, const EnergyReport& r, Format format) {
  if (format == Format::json) {
    out << to_json(r).dump() << '\n';
    return;
  }
  out << "m,E,E1,E2,equilateral_spread\n";
  csv_line(out, r.m, r.energy.total, r.energy.part1, r.energy.part2, r.equilateral_spread);
}

void write_continuum_report(std::ostream& out, const ContinuumReport& r, Format format) {
  if (format == Format::json) {
    out << to_json(r).dump() << '\n';
    return;
  }
  out << "N,E,E1,E2,hatE1,hatE2,E_ohara\n";
  csv_line(out, r.N, r.E, r.E1, r.E2, r.hatE1, r.hatE2, r.E_ohara);
}

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows, Format format) {
  if (format == Format::json) {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& r : rows) array.push_back(to_json(r));
    out << array.dump() << '\n';
    return;
  }
  out << sweep_csv_header << '\n';
  for (const auto& r : rows) {
    csv_line(out, r.m, r.E, r.E1, r.E2, r.E_ref, r.E1_ref, r.E2_ref, r.err_E, r.err_E1, r.err_E2, r.spread);
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<SweepRow> rows;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (!header) {
      if (text != sweep_csv_header) throw ParseError("unexpected sweep header", line_no);
      header = true;
      continue;
    }
    const auto f = split(text, ',');
    if (f.size() != 11) throw ParseError("sweep row needs 11 fields", line_no);
    SweepRow r;
    r.m = parse_size(f[0], line_no);
    double* targets[] = {&r.E, &r.E1, &r.E2, &r.E_ref, &r.E1_ref, &r.E2_ref, &r.err_E, &r.err_E1, &r.err_E2, &r.spread};
    for (std::size_t k = 0; k < 10; ++k) *targets[k] = parse_double(f[k + 1], line_no);
    check_error_column(r.E, r.E_ref, r.err_E, "E", line_no);
    check_error_column(r.E1, r.E1_ref, r.err_E1, "E1", line_no);
    check_error_column(r.E2, r.E2_ref, r.err_E2, "E2", line_no);
    rows.push_back(r);
  }
  if (!header) throw ParseError("empty sweep file");
  return rows;
}

void write_invariance(std::ostream& out, const InvarianceResult& result, Format format) {
  if (format == Format::json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.rows) {
      rows.push_back({{"seed", r.seed},
                      {"map_kind", r.map_kind},
                      {"rel_dev_E", r.rel_dev_E},
                      {"rel_dev_E1", r.rel_dev_E1},
                      {"rel_dev_E2", r.rel_dev_E2}});
    }
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& s : result.skipped) skipped.push_back({{"seed", s.seed}, {"reason", s.reason}});
    out << nlohmann::json{{"rows", rows}, {"skipped", skipped}, {"max_rel_dev", result.max_deviation()}}.dump() << '\n';
    return;
  }
  out << invariance_csv_header << '\n';
  for (const auto& r : result.rows) csv_line(out, r.seed, r.map_kind, r.rel_dev_E, r.rel_dev_E1, r.rel_dev_E2);
}

void write_control(std::ostream& out, const ControlResult& result, Format format) {
  if (format == Format::json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.rows) {
      rows.push_back({{"m", r.m},
                      {"E2_unmodified", r.E2_unmodified},
                      {"E_unmodified", r.E_unmodified},
                      {"E2", r.E2},
                      {"E", r.E},
                      {"correction", r.correction}});
    }
    out << nlohmann::json{{"rows", rows},
                          {"unmodified_growing", result.unmodified_growing},
                          {"modified_bounded", result.modified_bounded}}
               .dump()
        << '\n';
    return;
  }
  out << control_csv_header << '\n';
  for (const auto& r : result.rows) csv_line(out, r.m, r.E2_unmodified, r.E_unmodified, r.E2, r.E, r.correction);
}

}  // namespace knot_energy
