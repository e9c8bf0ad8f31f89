// Copyright 2026 The Crossmesh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace crossmesh {

// Root of the library's exception hierarchy. The C API maps each subclass
// onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument: out-of-range order, time step or row index.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Operands of different order, or a batch with mixed orders.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// The simulated array reached a state the dataflow can never produce, e.g. a
// cell holding an a-operand without its b-operand, or metrics whose series do
// not add up.
class IntegrityFault : public Error {
 public:
  using Error::Error;
};

}  // namespace crossmesh
