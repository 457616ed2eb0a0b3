// Copyright 2026 The qnom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qnom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// decode() was asked to divide by an amplitude that is (numerically) zero.
class VanishingReferenceAmplitude : public Error {
 public:
  using Error::Error;
};

/// (I -/+ xi D)|z> collapsed to the zero vector.
class DegenerateStep : public Error {
 public:
  using Error::Error;
};

/// An LCU coefficient denominator <z|F_{alpha,i}|z> vanished.
class SingularCoefficient : public Error {
 public:
  SingularCoefficient(int alpha, int slot, const std::string& what)
      : Error(what), alpha_(alpha), slot_(slot) {}
  int alpha() const noexcept { return alpha_; }
  int slot() const noexcept { return slot_; }

 private:
  int alpha_;
  int slot_;
};

class PostSelectionFailure : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qnom
