// causal_filter/causal_filter.hpp
//
// Copyright 2026 The causal-filter Authors
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

// Umbrella header for the causal-filter library.

#ifndef CAUSAL_FILTER_CAUSAL_FILTER_HPP
#define CAUSAL_FILTER_CAUSAL_FILTER_HPP

#include "causal_filter/causal_states.hpp"
#include "causal_filter/distribution.hpp"
#include "causal_filter/ib_core.hpp"
#include "causal_filter/info_plane.hpp"
#include "causal_filter/info_theory.hpp"
#include "causal_filter/io.hpp"
#include "causal_filter/oce.hpp"
#include "causal_filter/parallel.hpp"
#include "causal_filter/process_models.hpp"
#include "causal_filter/rng.hpp"
#include "causal_filter/word_joint.hpp"

#endif  // CAUSAL_FILTER_CAUSAL_FILTER_HPP
