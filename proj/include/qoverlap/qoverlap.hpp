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

#include "qoverlap/associative_memory.hpp"
#include "qoverlap/error.hpp"
#include "qoverlap/image.hpp"
#include "qoverlap/image_io.hpp"
#include "qoverlap/noise.hpp"
#include "qoverlap/nv_model.hpp"
#include "qoverlap/overlap.hpp"
#include "qoverlap/pipeline.hpp"
#include "qoverlap/random.hpp"
#include "qoverlap/shapes.hpp"
#include "qoverlap/statevector.hpp"
