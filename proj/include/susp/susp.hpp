#pragma once

#include "susp/bipartite_filter.hpp"
#include "susp/bounds.hpp"
#include "susp/error.hpp"
#include "susp/graph3d.hpp"
#include "susp/oracle.hpp"
#include "susp/puzzle.hpp"
#include "susp/search.hpp"
#include "susp/simplify.hpp"
