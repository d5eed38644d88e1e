#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace antgrn {

/// Base class for all antgrn errors. Subclasses distinguish input problems
/// (rejected by the CLI with exit code 2) from undersized instances (exit 3).
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line and column when known (0 = unknown).
class ParseError : public Error {
  public:
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : Error(format(msg, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
        if (line == 0) return msg;
        std::string out = msg + " (line " + std::to_string(line);
        if (column != 0) out += ", column " + std::to_string(column);
        return out + ")";
    }

    std::size_t line_;
    std::size_t column_;
};

class LengthMismatch : public Error {
  public:
    using Error::Error;
};

/// A series on which Pearson correlation is undefined: fewer than two
/// samples, or zero variance. Carries the offending gene name when known.
class DegenerateSeries : public Error {
  public:
    explicit DegenerateSeries(const std::string& msg, std::string gene = "")
        : Error(msg), gene_(std::move(gene)) {}

    const std::string& gene() const noexcept { return gene_; }

  private:
    std::string gene_;
};

class DuplicateGene : public Error {
  public:
    explicit DuplicateGene(const std::string& gene)
        : Error("duplicate gene name \"" + gene + "\""), gene_(gene) {}

    const std::string& gene() const noexcept { return gene_; }

  private:
    std::string gene_;
};

class RaggedRows : public Error {
  public:
    using Error::Error;
};

class NotSquare : public Error {
  public:
    using Error::Error;
};

class InvariantViolation : public Error {
  public:
    using Error::Error;
};

class InvalidParameter : public Error {
  public:
    using Error::Error;
};

class EmptyAllowedSet : public Error {
  public:
    using Error::Error;
};

/// Every transition numerator underflowed to zero; the alpha/beta/pheromone
/// combination is pathological.
class ZeroMass : public Error {
  public:
    using Error::Error;
};

class TooFewGenes : public Error {
  public:
    using Error::Error;
};

class OutOfRange : public Error {
  public:
    using Error::Error;
};

class SelfLoop : public Error {
  public:
    using Error::Error;
};

class DuplicateEdge : public Error {
  public:
    using Error::Error;
};

class UnknownGene : public Error {
  public:
    using Error::Error;
};

}  // namespace antgrn
