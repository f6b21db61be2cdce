#pragma once

#include "crn/balance.hpp"
#include "crn/copies.hpp"
#include "crn/ctmc.hpp"
#include "crn/graph.hpp"
#include "crn/kinetics.hpp"
#include "crn/linalg.hpp"
#include "crn/measure.hpp"
#include "crn/network.hpp"
#include "crn/parser.hpp"
#include "crn/ssa.hpp"
