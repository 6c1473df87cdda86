#pragma once

#include "curvlab/errors.hpp"
#include "curvlab/basis.hpp"
#include "curvlab/tensors.hpp"
#include "curvlab/curvature.hpp"
#include "curvlab/random.hpp"
#include "curvlab/models.hpp"
#include "curvlab/invariants.hpp"
#include "curvlab/weitzenbock.hpp"
#include "curvlab/model_spec.hpp"
#include "curvlab/engine/dsl.hpp"
#include "curvlab/engine/facts.hpp"
#include "curvlab/engine/bounds.hpp"
