#pragma once

#include "floatsim/errors.hpp"
#include "floatsim/core.hpp"
#include "floatsim/quadrature.hpp"
#include "floatsim/geometry.hpp"
#include "floatsim/exact.hpp"
#include "floatsim/nsw.hpp"
#include "floatsim/bouss.hpp"
#include "floatsim/solid.hpp"
#include "floatsim/harness/config.hpp"
#include "floatsim/harness/boundary.hpp"
#include "floatsim/harness/diagnostics.hpp"
#include "floatsim/harness/simulation.hpp"
#include "floatsim/harness/output.hpp"
#include "floatsim/harness/scenarios.hpp"
#include "floatsim/harness/convergence.hpp"
