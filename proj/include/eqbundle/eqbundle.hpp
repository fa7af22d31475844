#pragma once

// Umbrella header: exact classification of equivariant complex vector bundles
// over a circle with a finite-group action given by rho: G -> O(2).

#include "eqbundle/action_file.hpp"
#include "eqbundle/bundles.hpp"
#include "eqbundle/character_table.hpp"
#include "eqbundle/circle_action.hpp"
#include "eqbundle/corpus.hpp"
#include "eqbundle/cyclotomic.hpp"
#include "eqbundle/errors.hpp"
#include "eqbundle/finite_group.hpp"
#include "eqbundle/integer_matrix.hpp"
#include "eqbundle/k_theory.hpp"
#include "eqbundle/line_cocycles.hpp"
#include "eqbundle/orbits.hpp"
#include "eqbundle/permutation.hpp"
#include "eqbundle/rational.hpp"
#include "eqbundle/report.hpp"
