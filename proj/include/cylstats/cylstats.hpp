#pragma once

// Convenience umbrella for the whole library.

#include "cylstats/dataset.hpp"
#include "cylstats/densities.hpp"
#include "cylstats/directional.hpp"
#include "cylstats/inference.hpp"
#include "cylstats/moments.hpp"
#include "cylstats/optimize.hpp"
#include "cylstats/quadrature.hpp"
#include "cylstats/regression.hpp"
#include "cylstats/sampling.hpp"
#include "cylstats/specfun.hpp"
#include "cylstats/types.hpp"
