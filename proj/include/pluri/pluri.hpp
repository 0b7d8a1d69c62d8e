// SPDX-License-Identifier: MIT
//
// Umbrella header.
#pragma once

#include "pluri/error.hpp"
#include "pluri/grid.hpp"
#include "pluri/harness.hpp"
#include "pluri/io.hpp"
#include "pluri/measures.hpp"
#include "pluri/numeric.hpp"
#include "pluri/radial/capacity.hpp"
#include "pluri/radial/checks.hpp"
#include "pluri/radial/constructions.hpp"
#include "pluri/radial/energy.hpp"
#include "pluri/radial/profile.hpp"
#include "pluri/radial/solver.hpp"
#include "pluri/toric.hpp"
#include "pluri/weights.hpp"
