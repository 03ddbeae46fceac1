#pragma once

#include "ecw/contraction.hpp"
#include "ecw/entropy_vector.hpp"
#include "ecw/graph_state.hpp"
#include "ecw/hypergraph.hpp"
#include "ecw/inequality.hpp"
#include "ecw/rational.hpp"
#include "ecw/realization.hpp"
#include "ecw/subsets.hpp"
