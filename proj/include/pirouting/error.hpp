#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pirouting {

enum class ErrorKind {
  Parse,
  Validation,
  Generation,
  Config,
  UnknownHub,
  NoPath,
  DegenerateBearing,
  AmbiguousMidpoint,
  NotOnPath,
  AlreadyAtDestination,
  EmptyCandidates,
  MismatchedScenarios,
  StallDetected,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::Generation: return "GenerationError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::UnknownHub: return "UnknownHub";
    case ErrorKind::NoPath: return "NoPath";
    case ErrorKind::DegenerateBearing: return "DegenerateBearing";
    case ErrorKind::AmbiguousMidpoint: return "AmbiguousMidpoint";
    case ErrorKind::NotOnPath: return "NotOnPath";
    case ErrorKind::AlreadyAtDestination: return "AlreadyAtDestination";
    case ErrorKind::EmptyCandidates: return "EmptyCandidates";
    case ErrorKind::MismatchedScenarios: return "MismatchedScenarios";
    case ErrorKind::StallDetected: return "StallDetected";
  }
  return "Error";
}

/// Base of every error raised by the library. `kind()` lets callers (the CLI
/// in particular) map failures onto exit codes without a catch per type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& message) : Error(K, message) {}
};

using ParseError = KindedError<ErrorKind::Parse>;
using GenerationError = KindedError<ErrorKind::Generation>;
using ConfigError = KindedError<ErrorKind::Config>;
using UnknownHub = KindedError<ErrorKind::UnknownHub>;
using NoPath = KindedError<ErrorKind::NoPath>;
using DegenerateBearing = KindedError<ErrorKind::DegenerateBearing>;
using AmbiguousMidpoint = KindedError<ErrorKind::AmbiguousMidpoint>;
using NotOnPath = KindedError<ErrorKind::NotOnPath>;
using AlreadyAtDestination = KindedError<ErrorKind::AlreadyAtDestination>;
using EmptyCandidates = KindedError<ErrorKind::EmptyCandidates>;
using MismatchedScenarios = KindedError<ErrorKind::MismatchedScenarios>;
using StallDetected = KindedError<ErrorKind::StallDetected>;

/// Carries every violation found, not just the first, so `net validate` can
/// report them all.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(ErrorKind::Validation, join(violations)),
        violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
      if (!out.empty()) out += "; ";
      out += p;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace pirouting
