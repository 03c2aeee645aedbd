#pragma once

#include "anyangle/bench.hpp"
#include "anyangle/fraction.hpp"
#include "anyangle/graph.hpp"
#include "anyangle/graph_io.hpp"
#include "anyangle/grid.hpp"
#include "anyangle/hierarchy.hpp"
#include "anyangle/map_io.hpp"
#include "anyangle/mapgen.hpp"
#include "anyangle/render.hpp"
#include "anyangle/scan.hpp"
#include "anyangle/search.hpp"
