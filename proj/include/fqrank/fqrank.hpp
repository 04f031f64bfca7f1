#pragma once

// Umbrella header.

#include "bounds.hpp"
#include "diagonalize.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "oracle.hpp"
#include "pattern.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "rng.hpp"
