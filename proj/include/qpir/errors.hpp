//
// Copyright 2026 the qpir authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <stdexcept>
#include <string>

namespace qpir {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible widths or dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (database files, bit strings).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An index or qubit is outside its valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The instance exceeds a configured capacity cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Protocol steps were driven out of order, or a party touched a
/// register it does not currently hold.
class ProtocolStateError : public Error {
 public:
  using Error::Error;
};

/// A state object violates one of its construction invariants.
class StateError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpir
