#pragma once

// Umbrella header.

#include "fluidlogic/actuator.hpp"
#include "fluidlogic/circuit.hpp"
#include "fluidlogic/components.hpp"
#include "fluidlogic/logic.hpp"
#include "fluidlogic/netlist.hpp"
#include "fluidlogic/quantity.hpp"
#include "fluidlogic/solver.hpp"
