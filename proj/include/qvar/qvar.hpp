// Copyright 2026 The qvar developers
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

#pragma once

#include "qvar/amplitude_estimation.hpp"
#include "qvar/circuit.hpp"
#include "qvar/csv.hpp"
#include "qvar/dataset.hpp"
#include "qvar/feature_selection.hpp"
#include "qvar/gate.hpp"
#include "qvar/metrics.hpp"
#include "qvar/outlier_detection.hpp"
#include "qvar/results.hpp"
#include "qvar/rng.hpp"
#include "qvar/simulator.hpp"
#include "qvar/state_vector.hpp"
#include "qvar/synthetic.hpp"
#include "qvar/variance.hpp"
#include "qvar/verification.hpp"
