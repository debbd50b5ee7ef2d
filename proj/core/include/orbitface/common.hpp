#pragma once

#include <stdexcept>
#include <string>

namespace orbitface {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: unknown names, unreadable files, bad values.
class InputError : public Error {
public:
  using Error::Error;
};

/// A structural contract was violated (dimension mismatch, a vector that was
/// required to lie in a subspace does not, a point set that must be nonempty
/// is empty, ...).
class ContractError : public Error {
public:
  using Error::Error;
};

/// A desk-scale resource cap was exceeded (hull size, closure size).
class CapError : public Error {
public:
  using Error::Error;
};

/// Outcome of a tolerance-based check.  `indeterminate` means the machinery
/// could not certify either answer (an optimizer failed to converge, a
/// sampled search was inconclusive); it is never silently collapsed to pass
/// or fail.
enum class Verdict { pass, fail, indeterminate };

const char* to_string(Verdict v);

} // namespace orbitface
