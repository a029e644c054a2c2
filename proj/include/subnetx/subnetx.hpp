#pragma once

// Umbrella header: discriminative sub-network extraction from labeled
// connectivity graphs via spectral entropy features and a genetic
// algorithm.

#include "subnetx/entropy.hpp"
#include "subnetx/errors.hpp"
#include "subnetx/ga.hpp"
#include "subnetx/graph.hpp"
#include "subnetx/mask.hpp"
#include "subnetx/ml.hpp"
#include "subnetx/netio.hpp"
#include "subnetx/pipeline.hpp"
#include "subnetx/rng.hpp"
#include "subnetx/run_config.hpp"
#include "subnetx/run_history.hpp"
#include "subnetx/spectra.hpp"
