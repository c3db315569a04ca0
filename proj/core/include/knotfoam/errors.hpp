#pragma once

#include <stdexcept>
#include <string>

namespace knotfoam {

enum class ErrorKind {
  NonExactDivision,
  MalformedFoam,
  NonBipartiteBinding,
  OddEuler,
  MalformedGraph,
  InvalidFace,
  ReductionStuck,
  ParseError,
  InvalidDiagram,
  InvalidBraid,
  InvalidSite,
  TooLarge,
  NotAComplex,
  RankMismatch,
  NotACycle,
  NotAKnot,
  PropositionViolated,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);
  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// Parse errors carry the byte offset where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& detail);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);

}  // namespace knotfoam
