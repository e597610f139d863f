#pragma once

#include "ewsat/boolfun.hpp"
#include "ewsat/clique.hpp"
#include "ewsat/clique_reduce.hpp"
#include "ewsat/common.hpp"
#include "ewsat/formula.hpp"
#include "ewsat/gen.hpp"
#include "ewsat/impl_reduce.hpp"
#include "ewsat/io.hpp"
#include "ewsat/solver.hpp"
#include "ewsat/wdi.hpp"
