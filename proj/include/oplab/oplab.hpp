#pragma once

// Umbrella header for the operator-space laboratory.

#include "oplab/cli.hpp"
#include "oplab/discover.hpp"
#include "oplab/errors.hpp"
#include "oplab/json_io.hpp"
#include "oplab/matrix.hpp"
#include "oplab/product.hpp"
#include "oplab/rng.hpp"
#include "oplab/space.hpp"
#include "oplab/symmetry.hpp"
#include "oplab/triple.hpp"
#include "oplab/verify.hpp"
