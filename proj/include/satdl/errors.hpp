#pragma once

#include <stdexcept>
#include <string>

namespace satdl {

// Base type for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input data cannot be ingested (ragged CSV, NaN cells, bad class column).
struct IngestError : Error {
  using Error::Error;
};

// A MaxSAT model could not be built from the request.
struct EncodeError : Error {
  using Error::Error;
};

// Training data contains identical feature vectors with different labels,
// so no perfect model exists for any node budget.
struct InconsistentDataError : EncodeError {
  using EncodeError::EncodeError;
};

// A satisfying assignment could not be turned into a decision list.
struct DecodeError : Error {
  using Error::Error;
};

// Model document parsing or referential-integrity failure.
struct ModelIoError : Error {
  using Error::Error;
};

struct MetricsError : Error {
  using Error::Error;
};

// WCNF text that does not follow the DIMACS conventions.
struct WcnfParseError : Error {
  using Error::Error;
};

// External solver bridge failures, kept apart so callers can distinguish
// a solver that would not run from one that lied about its answer.
struct ExternalLaunchError : Error {
  using Error::Error;
};
struct ExternalOutputError : Error {
  using Error::Error;
};
struct ExternalVerificationError : Error {
  using Error::Error;
};

// The node-budget schedule was exhausted before a model was found.
struct ResourceLimitError : Error {
  int last_nodes_tried;
  ResourceLimitError(const std::string& msg, int last_n)
      : Error(msg), last_nodes_tried(last_n) {}
};

// A per-class sub-problem failed; remembers which class.
struct ClassTrainError : Error {
  int class_id;
  ClassTrainError(const std::string& msg, int cls) : Error(msg), class_id(cls) {}
};

// Solve gave up within its time budget without proving optimality.
struct SolveTimeoutError : Error {
  using Error::Error;
};

}  // namespace satdl
