#pragma once

#include "symint/rational.hpp"
#include "symint/checked.hpp"
#include "symint/function_table.hpp"
#include "symint/arith_core.hpp"
#include "symint/spectral.hpp"
#include "symint/integrals.hpp"
#include "symint/dk_corollary.hpp"
#include "symint/report.hpp"
#include "symint/experiments.hpp"
