#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace synlint {

enum class ErrorCode {
  DuplicateSynsetId,
  MemberGapConflict,
  EmptySynset,
  DuplicateSense,
  UnknownLemma,
  LanguageMismatch,
  SameLanguage,
  NotNearSynonyms,
  SyntaxError,
  SchemaError,
  UnresolvedKey,
  UnresolvedSynset,
  MissingSentence,
  PremiseViolation,
  ConflictUnresolved,
  InvalidConfig,
  InsufficientLexicalization,
  Io,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this one exception type; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Positioned parse failure. line is 1-based; field is empty for syntax errors.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::string field, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ": " + message),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace synlint
