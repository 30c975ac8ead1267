#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bredon {

/// Input that violates an operation's contract. The CLI maps it to exit status 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point that no cover element reaches.
class OrphanPointError : public InputError {
 public:
  explicit OrphanPointError(int index)
      : InputError("uncoverable point: index " + std::to_string(index)), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

/// A simplex that appears before one of its faces, or whose face is missing.
class FiltrationOrderError : public InputError {
 public:
  FiltrationOrderError(std::vector<int> simplex, const std::string& what)
      : InputError(what), simplex_(std::move(simplex)) {}
  const std::vector<int>& simplex() const { return simplex_; }

 private:
  std::vector<int> simplex_;
};

std::string format_simplex(const std::vector<int>& vertices);

}  // namespace bredon
