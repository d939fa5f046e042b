#pragma once

// Umbrella header for the engine (JSON bindings live in folcoh/json_io.hpp).

#include "folcoh/chart.hpp"
#include "folcoh/cohomology.hpp"
#include "folcoh/decompose.hpp"
#include "folcoh/exact_matrix.hpp"
#include "folcoh/foliated_complex.hpp"
#include "folcoh/form.hpp"
#include "folcoh/kostant.hpp"
#include "folcoh/poly_io.hpp"
#include "folcoh/polynomial.hpp"
#include "folcoh/regular_homotopy.hpp"
#include "folcoh/scalar.hpp"
#include "folcoh/williamson.hpp"
