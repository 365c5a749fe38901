#pragma once

// Umbrella header: constrained least-squares fitting of spherical
// polynomials, with interpolation on a selected node subset and residual
// minimization over the full sample.

#include "spherefit/diagnostics.hpp"
#include "spherefit/errors.hpp"
#include "spherefit/harmonics.hpp"
#include "spherefit/nodes.hpp"
#include "spherefit/point.hpp"
#include "spherefit/selection.hpp"
#include "spherefit/serialize.hpp"
#include "spherefit/solver.hpp"
#include "spherefit/vandermonde.hpp"
