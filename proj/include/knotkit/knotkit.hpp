#pragma once

// Umbrella header for the knotkit library: discretized space curves, Mobius
// energies, Gauss-diagram functionals, projection crossing statistics, chord
// diagram combinatorics with a Conway-polynomial skein oracle, and a simple
// energy descent flow.

#include "knotkit/vec3.hpp"
#include "knotkit/errors.hpp"
#include "knotkit/rng.hpp"
#include "knotkit/parallel.hpp"
#include "knotkit/report.hpp"
#include "knotkit/curve.hpp"
#include "knotkit/diagrams.hpp"
#include "knotkit/mobius.hpp"
#include "knotkit/energies.hpp"
#include "knotkit/gauss.hpp"
#include "knotkit/projections.hpp"
#include "knotkit/zoo_codes.hpp"
#include "knotkit/relax.hpp"
