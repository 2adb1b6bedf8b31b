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

// Core lifecycle
#include "driftkit/core/callbacks.hpp"
#include "driftkit/core/detection_status.hpp"
#include "driftkit/core/errors.hpp"
#include "driftkit/core/prequential.hpp"
#include "driftkit/core/streaming_detector.hpp"

// Shared statistical kernels
#include "driftkit/numerics/ecdf.hpp"
#include "driftkit/numerics/histogram.hpp"
#include "driftkit/numerics/permutation.hpp"
#include "driftkit/numerics/ranks.hpp"
#include "driftkit/numerics/rng.hpp"
#include "driftkit/numerics/tails.hpp"

// Streaming concept-drift detectors
#include "driftkit/concept_drift/adwin.hpp"
#include "driftkit/concept_drift/bocd.hpp"
#include "driftkit/concept_drift/cusum.hpp"
#include "driftkit/concept_drift/ddm.hpp"
#include "driftkit/concept_drift/ecdd.hpp"
#include "driftkit/concept_drift/eddm.hpp"
#include "driftkit/concept_drift/geometric_moving_average.hpp"
#include "driftkit/concept_drift/hddm.hpp"
#include "driftkit/concept_drift/kswin.hpp"
#include "driftkit/concept_drift/page_hinkley.hpp"
#include "driftkit/concept_drift/rddm.hpp"
#include "driftkit/concept_drift/stepd.hpp"
#include "driftkit/concept_drift/stream_stats.hpp"

// Batch and streaming data-drift detectors
#include "driftkit/data_drift/batch_detector.hpp"
#include "driftkit/data_drift/categorical.hpp"
#include "driftkit/data_drift/comparison_result.hpp"
#include "driftkit/data_drift/distance_kernels.hpp"
#include "driftkit/data_drift/histogram_distance.hpp"
#include "driftkit/data_drift/incremental_ks.hpp"
#include "driftkit/data_drift/mmd.hpp"
#include "driftkit/data_drift/multivariate.hpp"
#include "driftkit/data_drift/statistical_tests.hpp"

// Synthetic drift scenarios and evaluation
#include "driftkit/streamgen/evaluate.hpp"
#include "driftkit/streamgen/scenario.hpp"
