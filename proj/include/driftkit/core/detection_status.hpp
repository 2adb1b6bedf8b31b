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

namespace driftkit {

// Outcome of a single streaming update. Both flags are false on a freshly
// constructed or reset detector.
struct DetectionStatus {
  bool drift = false;
  bool warning = false;

  friend bool operator==(const DetectionStatus&, const DetectionStatus&) = default;
};

}  // namespace driftkit
