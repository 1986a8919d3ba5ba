#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace emg {

using VertexId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

// Largest id accepted on ingest; kNoVertex stays reserved as a sentinel.
inline constexpr std::uint64_t kMaxVertexId = std::numeric_limits<VertexId>::max() - 1;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid substrate parameters or a record layout that does not match.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// Raised when a pipeline asks for more simulated memory than M allows.
class MemoryBudgetError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  IoError(std::uint64_t block, const std::string& what)
      : Error("block " + std::to_string(block) + ": " + what), block_(block) {}
  std::uint64_t block() const noexcept { return block_; }

 private:
  std::uint64_t block_;
};

}  // namespace emg
