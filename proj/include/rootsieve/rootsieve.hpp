#pragma once

#include "rootsieve/expr.hpp"
#include "rootsieve/funcmodel.hpp"
#include "rootsieve/interval.hpp"
#include "rootsieve/itermaps.hpp"
#include "rootsieve/jet.hpp"
#include "rootsieve/predicates.hpp"
#include "rootsieve/pruitt.hpp"
#include "rootsieve/quasistep.hpp"
#include "rootsieve/serialize.hpp"
#include "rootsieve/sweep.hpp"
