// Copyright 2026 The bscert Authors
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

#include "bscert/certification/certification.hpp"
#include "bscert/certification/statistics.hpp"
#include "bscert/core/haar.hpp"
#include "bscert/core/matrix.hpp"
#include "bscert/core/permanent.hpp"
#include "bscert/core/rng.hpp"
#include "bscert/distinguishability.hpp"
#include "bscert/model.hpp"
#include "bscert/photonic/distribution.hpp"
#include "bscert/photonic/pattern.hpp"
#include "bscert/photonic/probability.hpp"
#include "bscert/sampling.hpp"
