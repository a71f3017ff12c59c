/* Copyright 2026 The detassess Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include "detassess/annotate/coco.hpp"
#include "detassess/annotate/darknet.hpp"
#include "detassess/annotate/detections.hpp"
#include "detassess/annotate/image_header.hpp"
#include "detassess/annotate/native.hpp"
#include "detassess/annotate/types.hpp"
#include "detassess/annotate/validate.hpp"
#include "detassess/boxmath.hpp"
#include "detassess/collect/geometry.hpp"
#include "detassess/collect/plan.hpp"
#include "detassess/collect/projection.hpp"
#include "detassess/collect/sampling.hpp"
#include "detassess/collect/scene.hpp"
#include "detassess/error.hpp"
#include "detassess/metrics/evaluate.hpp"
#include "detassess/metrics/match.hpp"
#include "detassess/metrics/pr.hpp"
#include "detassess/metrics/report_io.hpp"
#include "detassess/recipe.hpp"
