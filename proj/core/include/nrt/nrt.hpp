#pragma once

#include "nrt/adam.hpp"
#include "nrt/baselines.hpp"
#include "nrt/classifier.hpp"
#include "nrt/config.hpp"
#include "nrt/data.hpp"
#include "nrt/dataset.hpp"
#include "nrt/errors.hpp"
#include "nrt/evaluation.hpp"
#include "nrt/inference.hpp"
#include "nrt/matrix.hpp"
#include "nrt/model_io.hpp"
#include "nrt/node_opt.hpp"
#include "nrt/rng.hpp"
#include "nrt/stats.hpp"
#include "nrt/training.hpp"
#include "nrt/tree.hpp"
