#pragma once

#include "effres/bench.hpp"
#include "effres/commute.hpp"
#include "effres/errors.hpp"
#include "effres/estimate.hpp"
#include "effres/exact.hpp"
#include "effres/generators.hpp"
#include "effres/graph.hpp"
#include "effres/graph_io.hpp"
#include "effres/median.hpp"
#include "effres/query.hpp"
#include "effres/rng.hpp"
#include "effres/spanning_tree.hpp"
#include "effres/transition.hpp"
#include "effres/walker.hpp"
