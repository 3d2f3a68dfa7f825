#pragma once

#include "supercalc/algebra.hpp"
#include "supercalc/bell.hpp"
#include "supercalc/calculus.hpp"
#include "supercalc/fdb.hpp"
#include "supercalc/io.hpp"
#include "supercalc/partitions.hpp"
#include "supercalc/rational.hpp"
#include "supercalc/symbolic.hpp"
#include "supercalc/verify.hpp"
