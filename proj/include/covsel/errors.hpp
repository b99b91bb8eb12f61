// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace covsel {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class StructureViolation : public Error {
 public:
  using Error::Error;
};

class DegenerateSteering : public Error {
 public:
  using Error::Error;
};

/// Observed FIM cannot be inverted (TIC) or is not positive definite (BIC).
class FimSingular : public Error {
 public:
  using Error::Error;
};

class AiccDegenerate : public Error {
 public:
  using Error::Error;
};

class EvenNUnsupported : public Error {
 public:
  using Error::Error;
};

class MissingCell : public Error {
 public:
  using Error::Error;
};

/// Imaginary residue of a quantity that must be real exceeded tolerance.
class ComplexResidue : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; the message names the line or field.
class FormatError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace covsel
