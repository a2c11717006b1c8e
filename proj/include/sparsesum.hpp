#pragma once

#include "sparsesum/bound_check.hpp"
#include "sparsesum/common_zeros.hpp"
#include "sparsesum/distribution.hpp"
#include "sparsesum/expsums.hpp"
#include "sparsesum/intpoly.hpp"
#include "sparsesum/mahler.hpp"
#include "sparsesum/modular.hpp"
#include "sparsesum/moments.hpp"
#include "sparsesum/parallel.hpp"
#include "sparsesum/prime_context.hpp"
#include "sparsesum/random.hpp"
#include "sparsesum/serialize.hpp"
#include "sparsesum/subgroup_counts.hpp"
