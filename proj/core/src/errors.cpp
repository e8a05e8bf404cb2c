#include "knot_energy/errors.hpp"

namespace knot_energy {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::parse: return "parse-error";
    case ErrorKind::numeric_failure: return "numeric-failure";
    case ErrorKind::pole: return "pole-error";
    case ErrorKind::self_intersection: return "self-intersection-error";
    case ErrorKind::embedding: return "embedding-error";
    case ErrorKind::step_too_large: return "step-too-large";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, std::string message, nlohmann::json details)
    : kind_(kind), message_(std::move(message)), details_(std::move(details)) {}

void Error::add_context(std::string_view context) {
  message_.insert(0, std::string(context) + ": ");
}

bool Error::is_numeric() const noexcept {
  return kind_ != ErrorKind::invalid_argument && kind_ != ErrorKind::parse;
}

nlohmann::json Error::to_json() const {
  nlohmann::json out = {{"error", std::string(to_string(kind_))}, {"message", message_}};
  if (!details_.empty()) out["details"] = details_;
  return out;
}

ParseError::ParseError(std::string message, std::size_t line)
    : Error(ErrorKind::parse, line ? "line " + std::to_string(line) + ": " + message : message,
            line ? nlohmann::json{{"line", line}} : nlohmann::json::object()) {}

NumericFailure::NumericFailure(std::string message, double value)
    : Error(ErrorKind::numeric_failure, std::move(message), {{"value", value}}), value_(value) {}

namespace {

nlohmann::json pole_details(std::size_t stage, double distance, std::size_t vertex) {
  nlohmann::json d = {{"stage", stage}, {"distance", distance}};
  if (vertex != PoleError::no_vertex) d["vertex"] = vertex;
  return d;
}

}  // namespace

PoleError::PoleError(std::size_t stage, double distance, std::size_t vertex)
    : Error(ErrorKind::pole,
            "point within pole tolerance of inversion center at stage " + std::to_string(stage) +
                (vertex == no_vertex ? std::string() : " (vertex " + std::to_string(vertex) + ")"),
            pole_details(stage, distance, vertex)),
      stage_(stage),
      vertex_(vertex) {}

SelfIntersectionError::SelfIntersectionError(std::size_t i, std::size_t j)
    : Error(ErrorKind::self_intersection,
            "cross-ratio entry g(" + std::to_string(i) + "," + std::to_string(j) + ") vanishes; polygon is not embedded",
            {{"i", i}, {"j", j}}),
      i_(i),
      j_(j) {}

EmbeddingError::EmbeddingError(double lower, double upper)
    : Error(ErrorKind::embedding, "bi-Lipschitz witness failed on sample grid: curve is not embedded at grid scale",
            {{"L1", lower}, {"L2", upper}}) {}

StepTooLarge::StepTooLarge(std::string message, double step)
    : Error(ErrorKind::step_too_large, std::move(message), {{"h", step}}) {}

}  // namespace knot_energy
