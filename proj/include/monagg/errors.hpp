// Copyright 2026 The monagg Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace monagg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (x outside [0,1], negative
// price, empty buyer set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A closed-form utility or weight function with out-of-range parameters.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A knot list that is not a member of the concave class.
class InvalidReport : public Error {
 public:
  using Error::Error;
};

// A sharing schedule that cannot produce a valid share pair for some subset.
class ScheduleError : public Error {
 public:
  using Error::Error;
};

// Enumeration larger than the caller's budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, unsigned long long required)
      : Error(what), required_(required) {}
  unsigned long long required() const { return required_; }

 private:
  unsigned long long required_;
};

}  // namespace monagg
