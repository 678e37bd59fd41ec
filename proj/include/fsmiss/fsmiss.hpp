#ifndef FSMISS_FSMISS_HPP
#define FSMISS_FSMISS_HPP

// Umbrella header.

#include "fsmiss/dataset.hpp"
#include "fsmiss/engine.hpp"
#include "fsmiss/error.hpp"
#include "fsmiss/evolution.hpp"
#include "fsmiss/experiment.hpp"
#include "fsmiss/feature_mask.hpp"
#include "fsmiss/knn.hpp"
#include "fsmiss/metrics.hpp"
#include "fsmiss/nsga2.hpp"
#include "fsmiss/nsga3.hpp"
#include "fsmiss/objectives.hpp"
#include "fsmiss/random_search.hpp"
#include "fsmiss/rng.hpp"

#endif  // FSMISS_FSMISS_HPP
