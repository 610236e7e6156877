#pragma once

#include "navier4/certificate.hpp"
#include "navier4/errors.hpp"
#include "navier4/expr.hpp"
#include "navier4/grid.hpp"
#include "navier4/kernels.hpp"
#include "navier4/matrix.hpp"
#include "navier4/problem.hpp"
#include "navier4/quadrature.hpp"
#include "navier4/solver.hpp"
#include "navier4/study.hpp"
#include "navier4/svg.hpp"
