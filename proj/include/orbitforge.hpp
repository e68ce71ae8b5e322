#pragma once

#include "orbitforge/error.hpp"
#include "orbitforge/number_theory.hpp"
#include "orbitforge/poly.hpp"
#include "orbitforge/matrix.hpp"
#include "orbitforge/fp_poly.hpp"
#include "orbitforge/etale.hpp"
#include "orbitforge/quad_forms.hpp"
#include "orbitforge/orbit.hpp"
#include "orbitforge/descent.hpp"
#include "orbitforge/census.hpp"
#include "orbitforge/lattice.hpp"
#include "orbitforge/bqf.hpp"
#include "orbitforge/parse.hpp"
