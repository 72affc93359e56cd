#pragma once

#include "error.hpp"
#include "gcd.hpp"
#include "gn_forms.hpp"
#include "hessian.hpp"
#include "linalg.hpp"
#include "linear_sol.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "rational_function.hpp"
#include "svs.hpp"
#include "text.hpp"
