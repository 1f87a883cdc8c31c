// kjplus: umbrella header
#pragma once

#include "closed_form.hpp"
#include "curve_topology.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "homotopy_scan.hpp"
#include "invariants.hpp"
#include "kepler.hpp"
#include "polyline.hpp"
#include "rational.hpp"
#include "roots.hpp"
#include "standard_curves.hpp"
#include "validation.hpp"
