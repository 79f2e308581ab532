#pragma once

#include "posetdim/bitset.hpp"
#include "posetdim/constructions.hpp"
#include "posetdim/errors.hpp"
#include "posetdim/gadget.hpp"
#include "posetdim/io.hpp"
#include "posetdim/pipeline.hpp"
#include "posetdim/poset.hpp"
#include "posetdim/reductions.hpp"
#include "posetdim/solver.hpp"
#include "posetdim/tree_decomposition.hpp"
