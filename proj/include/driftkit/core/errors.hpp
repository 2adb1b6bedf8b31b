// Copyright 2026, The driftkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace driftkit {

// A callback raised from inside a hook. Distinct from detector errors: the
// detector's own state transition has already been committed (or not started)
// when this surfaces.
class CallbackError : public std::runtime_error {
 public:
  CallbackError(const std::string& stage, std::size_t index, const std::string& name,
                const std::string& message)
      : std::runtime_error("callback '" + name + "' (#" + std::to_string(index) + ") failed at " +
                           stage + ": " + message),
        stage_(stage),
        index_(index) {}

  const std::string& stage() const { return stage_; }
  std::size_t callback_index() const { return index_; }

 private:
  std::string stage_;
  std::size_t index_;
};

// compare/update called on a batch detector whose reference was never fitted.
class NotFittedError : public std::logic_error {
 public:
  explicit NotFittedError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace driftkit
