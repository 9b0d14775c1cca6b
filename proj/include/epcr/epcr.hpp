#pragma once

#include "epcr/cycle_chase.hpp"
#include "epcr/errors.hpp"
#include "epcr/families.hpp"
#include "epcr/game.hpp"
#include "epcr/graph.hpp"
#include "epcr/pca.hpp"
#include "epcr/period_string.hpp"
#include "epcr/reductions.hpp"
#include "epcr/solver.hpp"
