#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bisep {

enum class ErrorKind {
  DivisionByZero,
  FieldMismatch,
  DimensionMismatch,
  InvalidField,
  NotAssociative,
  BadUnit,
  NotAGroup,
  NotAnIdeal,
  InvalidExtension,
  InvalidBimodule,
  AlgebraMismatch,
  NotAutomorphism,
  BudgetExceeded,
  UnknownEntry,
  BadParams,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this type. `witness` carries the
// offending indices where a validation has one (e.g. the triple i,j,k that
// breaks associativity).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> witness_;
};

}  // namespace bisep
