#pragma once

#include "lbmcf/types.hpp"
#include "lbmcf/io.hpp"
#include "lbmcf/validate.hpp"
#include "lbmcf/shortest_paths.hpp"
#include "lbmcf/fptas.hpp"
#include "lbmcf/greedy.hpp"
#include "lbmcf/lp_model.hpp"
#include "lbmcf/lp_export.hpp"
#include "lbmcf/rational.hpp"
#include "lbmcf/simplex.hpp"
#include "lbmcf/oracle.hpp"
#include "lbmcf/instgen.hpp"
