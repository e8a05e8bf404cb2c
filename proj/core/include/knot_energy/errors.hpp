#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace knot_energy {

enum class ErrorKind {
  invalid_argument,
  parse,
  numeric_failure,
  pole,
  self_intersection,
  embedding,
  step_too_large,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every exception thrown by the library. Carries a machine-readable
/// kind plus a JSON object of details for diagnostics.
class Error : public std::exception {
 public:
  Error(ErrorKind kind, std::string message, nlohmann::json details = nlohmann::json::object());

  const char* what() const noexcept override { return message_.c_str(); }
  ErrorKind kind() const noexcept { return kind_; }
  const nlohmann::json& details() const noexcept { return details_; }

  /// Prefixes the message with `context` ("m=64: ..."), for rethrow from drivers.
  void add_context(std::string_view context);

  /// True for pole, self-intersection, embedding, sampler and step failures.
  bool is_numeric() const noexcept;

  nlohmann::json to_json() const;

 private:
  ErrorKind kind_;
  std::string message_;
  nlohmann::json details_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(std::string message) : Error(ErrorKind::invalid_argument, std::move(message)) {}
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line = 0);
};

/// Iterative procedure did not converge; `value` is the last residual.
class NumericFailure : public Error {
 public:
  NumericFailure(std::string message, double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

class PoleError : public Error {
 public:
  static constexpr std::size_t no_vertex = static_cast<std::size_t>(-1);

  PoleError(std::size_t stage, double distance, std::size_t vertex = no_vertex);
  std::size_t stage() const noexcept { return stage_; }
  std::size_t vertex() const noexcept { return vertex_; }

 private:
  std::size_t stage_;
  std::size_t vertex_;
};

class SelfIntersectionError : public Error {
 public:
  SelfIntersectionError(std::size_t i, std::size_t j);
  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

class EmbeddingError : public Error {
 public:
  EmbeddingError(double lower, double upper);
};

class StepTooLarge : public Error {
 public:
  StepTooLarge(std::string message, double step);
};

}  // namespace knot_energy
