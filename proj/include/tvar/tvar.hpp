#pragma once

// Everything except the JSON layer (tvar/json_io.hpp, which needs nlohmann_json).

#include "tvar/cone.hpp"
#include "tvar/curve.hpp"
#include "tvar/errors.hpp"
#include "tvar/ideals.hpp"
#include "tvar/lattice_points.hpp"
#include "tvar/normality.hpp"
#include "tvar/normalization.hpp"
#include "tvar/poly_divisor.hpp"
#include "tvar/polyhedron.hpp"
#include "tvar/rational.hpp"
#include "tvar/report.hpp"
