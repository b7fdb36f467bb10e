#pragma once

#include "decomp.hpp"
#include "distances.hpp"
#include "gadgets.hpp"
#include "generators.hpp"
#include "interval.hpp"
#include "intersect.hpp"
#include "io.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "order_solver.hpp"
#include "path_solver.hpp"
#include "rational.hpp"
#include "schedule.hpp"
#include "solve.hpp"
#include "tree_solver.hpp"
#include "tw_solver.hpp"
