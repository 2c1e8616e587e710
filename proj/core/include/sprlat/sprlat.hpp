#pragma once

#include "sprlat/errors.hpp"
#include "sprlat/hilbert_fit.hpp"
#include "sprlat/lattice.hpp"
#include "sprlat/optimize.hpp"
#include "sprlat/phase_distance.hpp"
#include "sprlat/sampling.hpp"
#include "sprlat/spr_search.hpp"
#include "sprlat/verify.hpp"
#include "sprlat/witness.hpp"
