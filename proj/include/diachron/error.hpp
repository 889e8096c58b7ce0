#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diachron {

/// Base for every error caused by bad input data. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingColumn : public DataError {
 public:
  explicit MissingColumn(std::string column)
      : DataError("missing required column '" + column + "'"), column_(std::move(column)) {}
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

/// Carries the 1-based record number (the header is record 1).
class RowError : public DataError {
 public:
  RowError(const std::string& what, std::size_t row)
      : DataError(what + " at row " + std::to_string(row)), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class MalformedRow : public RowError {
 public:
  MalformedRow(std::size_t row, const std::string& detail)
      : RowError("malformed row (" + detail + ")", row) {}
};

class BadDate : public RowError {
 public:
  explicit BadDate(std::size_t row) : RowError("bad air date", row) {}
};

/// Malformed line in a lexicon, stop-word, or word-list file (1-based line number).
class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& detail)
      : DataError(source + ":" + std::to_string(line) + ": " + detail), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyCorpus : public DataError {
 public:
  EmptyCorpus() : DataError("no lines survived cleaning and the episode join") {}
};

/// Input too small or degenerate for the requested computation.
class InvalidInput : public DataError {
 public:
  using DataError::DataError;
};

// Specific degenerate-input conditions raised by the analysis modules.
class EmptyInput : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};
/// A frequency table with no tokens.
class EmptyTable : public EmptyInput {
 public:
  using EmptyInput::EmptyInput;
};
class DegenerateFit : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};
class TooShort : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};
class TooFewDocuments : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};
class EmptyDocument : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};
class EmptyVocabulary : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};
class EmptySeries : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class IoError : public DataError {
 public:
  IoError(const std::string& path, const std::string& detail)
      : DataError(path + ": " + detail), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace diachron
