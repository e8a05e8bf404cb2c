#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "knot_energy/errors.hpp"
#include "knot_energy/io.hpp"
#include "knot_energy/sampling.hpp"
#include "support/generators.hpp"

using namespace knot_energy;

namespace {

ClosedPolygon round_trip(const ClosedPolygon& polygon, Format format) {
  std::stringstream buffer;
  write_polygon(buffer, polygon, format);
  return read_polygon(buffer);
}

SweepRow make_row(std::size_t m, double E, double E_ref) {
  SweepRow r;
  r.m = m;
  r.E = E;
  r.E1 = E * 3.0;
  r.E2 = 4.0 - E * 2.0;
  r.E_ref = E_ref;
  r.E1_ref = E_ref * 3.0;
  r.E2_ref = 4.0 - E_ref * 2.0;
  r.err_E = std::abs(r.E - r.E_ref);
  r.err_E1 = std::abs(r.E1 - r.E1_ref);
  r.err_E2 = std::abs(r.E2 - r.E2_ref);
  r.spread = 1e-12;
  return r;
}

}  // namespace

TEST_CASE("number formatting round-trips bit-exactly") {
  gen::Rng rng(61);
  for (int k = 0; k < 2000; ++k) {
    const double x = rng.normal() * std::pow(10.0, rng.uniform(-30.0, 30.0));
    REQUIRE(parse_double(format_double(x)) == x);
  }
  CHECK(parse_double(format_double(std::numeric_limits<double>::denorm_min())) ==
        std::numeric_limits<double>::denorm_min());
  CHECK(format_double(0.5) == "0.5");
  CHECK_THROWS_AS(parse_double("1.0x"), ParseError);
  CHECK_THROWS_AS(parse_double(""), ParseError);
  CHECK_THROWS_AS(parse_double("nan"), ParseError);
  CHECK_THROWS_AS(parse_double("inf"), ParseError);
}

TEST_CASE("formats") {
  CHECK(parse_format("csv") == Format::csv);
  CHECK(parse_format("json") == Format::json);
  CHECK_THROWS_AS(parse_format("xml"), InvalidArgument);
}

TEST_CASE("polygon files round-trip bit-exactly") {
  gen::Rng rng(62);
  for (std::size_t dim : {2, 3, 5}) {
    const ClosedPolygon polygon = rng.wobbly_polygon(37, dim);
    CHECK(round_trip(polygon, Format::csv) == polygon);
    CHECK(round_trip(polygon, Format::json) == polygon);
    CHECK(polygon_from_json(to_json(polygon)) == polygon);
  }
}

TEST_CASE("polygon CSV layout") {
  std::stringstream buffer;
  write_polygon(buffer, ClosedPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}), Format::csv);
  CHECK(buffer.str() == "dim,2\n0,0\n1,0\n1,1\n0,1\n");
}

TEST_CASE("malformed polygon input") {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_polygon(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("0,0\n1,0\n"), ParseError);
  CHECK_THROWS_AS(parse("dim,2\n0,0\n1\n"), ParseError);
  CHECK_THROWS_AS(parse("dim,2\n0,0\n1,a\n"), ParseError);
  CHECK_THROWS_AS(parse("{\"dim\": 2, \"vertices\": [[0, 0], [1]]}"), ParseError);
  CHECK_THROWS_AS(parse("{\"dim\": 2"), ParseError);
  CHECK_THROWS_AS(parse("dim,2\n0,0\n1,0\n1,1\n"), InvalidArgument);

  try {
    (void)parse("dim,2\n0,0\n1,0\n1,x\n0,1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find('4') != std::string::npos);
  }
}

TEST_CASE("polygon files on disk") {
  const auto path = std::filesystem::temp_directory_path() / "knot_energy_io_test.json";
  const ClosedPolygon polygon = regular_polygon(12);
  {
    std::ofstream file(path);
    write_polygon(file, polygon, Format::json);
  }
  CHECK(read_polygon_file(path) == polygon);
  std::filesystem::remove(path);
  try {
    (void)read_polygon_file(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(path.string()) != std::string::npos);
  }
}

TEST_CASE("energy report") {
  const ClosedPolygon polygon = regular_polygon(16);
  const EnergyReport report = energy_report(polygon);
  CHECK(report.m == 16);
  CHECK(report.equilateral_spread < 1e-14);
  std::stringstream csv;
  write_energy_report(csv, report, Format::csv);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "m,E,E1,E2,equilateral_spread");
  const auto json = to_json(report);
  CHECK(json["E"].get<double>() == report.energy.total);
  CHECK(json["m"] == 16);
}

TEST_CASE("sweep CSV round trip and re-check") {
  const std::vector<SweepRow> rows{make_row(64, 4.125, 4.0), make_row(128, 4.0311, 4.0)};
  std::stringstream buffer;
  write_sweep(buffer, rows, Format::csv);
  const std::vector<SweepRow> back = read_sweep_csv(buffer);
  REQUIRE(back.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(back[k].m == rows[k].m);
    CHECK(back[k].E == rows[k].E);
    CHECK(back[k].err_E2 == rows[k].err_E2);
    CHECK(back[k].spread == rows[k].spread);
  }

  std::vector<SweepRow> tampered = rows;
  tampered[1].err_E1 *= 1.01;
  std::stringstream bad;
  write_sweep(bad, tampered, Format::csv);
  CHECK_THROWS_AS(read_sweep_csv(bad), ParseError);

  std::istringstream wrong_header("m,E\n1,2\n");
  CHECK_THROWS_AS(read_sweep_csv(wrong_header), ParseError);
}

TEST_CASE("invariance and control writers") {
  InvarianceResult inv;
  inv.rows.push_back({0, "identity", 0.0, 0.0, 0.0});
  inv.rows.push_back({1, "inversive", 1e-13, 2e-13, 3e-13});
  inv.skipped.push_back({2, "pole"});
  std::stringstream json;
  write_invariance(json, inv, Format::json);
  const auto parsed = nlohmann::json::parse(json.str());
  CHECK(parsed["rows"].size() == 2);
  CHECK(parsed["skipped"][0]["seed"] == 2);
  CHECK(parsed["max_rel_dev"].get<double>() == 3e-13);

  std::stringstream csv;
  write_invariance(csv, inv, Format::csv);
  std::string header;
  std::getline(csv, header);
  CHECK(header == invariance_csv_header);

  ControlResult control;
  control.rows.push_back({8, -1.0, 3.0, -2.0, 4.0, 1.0});
  control.modified_bounded = true;
  std::stringstream cjson;
  write_control(cjson, control, Format::json);
  const auto c = nlohmann::json::parse(cjson.str());
  CHECK(c["modified_bounded"] == true);
  CHECK(c["unmodified_growing"] == false);
  CHECK(c["rows"][0]["correction"].get<double>() == 1.0);
}
