#pragma once

#include <stdexcept>
#include <string>

namespace semialg {

// Malformed or dimensionally inconsistent input. The CLI maps this to exit 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A theorem hypothesis (e.g. d >= D, N > 2p) does not hold. CLI exit 2.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller asked for a root count at an endpoint that is itself a root.
class EndpointRootError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Seeded "generic" choices turned out degenerate.
class GenericityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Declared data contradicts what was measured (e.g. declared degree).
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input is well-formed but outside what an engine supports.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Resolution / search budget exhausted.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semialg
