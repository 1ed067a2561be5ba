#pragma once

// Umbrella header: the complete toolkit.

#include "rpca/bench.hpp"
#include "rpca/eb_solver.hpp"
#include "rpca/io.hpp"
#include "rpca/map_solver.hpp"
#include "rpca/matrix.hpp"
#include "rpca/metrics.hpp"
#include "rpca/objectives.hpp"
#include "rpca/pcp_solver.hpp"
#include "rpca/rng.hpp"
#include "rpca/simgen.hpp"
