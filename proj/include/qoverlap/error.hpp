// Copyright 2026 The qoverlap Authors
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

namespace qoverlap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates an operation's precondition (bad index, out-of-range
/// probability, zero shots, ...).
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Two operands have incompatible shapes (qubit counts, image sizes, blocks).
class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

/// An image with every pixel zero has no amplitude encoding.
class AllZeroImage : public Error {
  public:
    AllZeroImage() : Error("image has no nonzero pixel and cannot be amplitude encoded") {}
};

/// Segment-wise comparison of two images that both lack nonzero blocks.
class UndefinedScore : public Error {
  public:
    UndefinedScore()
        : Error("average overlap undefined: neither image has a nonzero block") {}
};

/// Input file could not be parsed.
class ParseError : public Error {
  public:
    using Error::Error;
};

}  // namespace qoverlap
