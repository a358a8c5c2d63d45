#pragma once

// Umbrella header: concept satisfiability and subsumption for ALC with
// qualified number restrictions over role composition chains (and same-length
// boolean chain combinations), plus a finite-model evaluator, a bounded
// model-enumeration oracle and the domino-tiling encoder.

#include "alcq/abox.hpp"
#include "alcq/encoder.hpp"
#include "alcq/errors.hpp"
#include "alcq/interp.hpp"
#include "alcq/normalize.hpp"
#include "alcq/syntax.hpp"
#include "alcq/tableau.hpp"
