#pragma once

#include "pirouting/discovery.hpp"
#include "pirouting/error.hpp"
#include "pirouting/generator.hpp"
#include "pirouting/geo.hpp"
#include "pirouting/network.hpp"
#include "pirouting/network_io.hpp"
#include "pirouting/pathfinding.hpp"
#include "pirouting/policy.hpp"
#include "pirouting/report.hpp"
#include "pirouting/scenario.hpp"
#include "pirouting/sim.hpp"
#include "pirouting/version.hpp"
