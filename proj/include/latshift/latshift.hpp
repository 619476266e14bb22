#pragma once

// Exact-arithmetic toolkit for shifted lattice vertex operator algebras:
// integral lattices, sparse rational q-expansions, gradings and partition
// functions of V_{L,h}, type classification, and truncated Fock-space
// operator checks.

#include "latshift/errors.hpp"
#include "latshift/fock.hpp"
#include "latshift/lattice.hpp"
#include "latshift/qseries.hpp"
#include "latshift/rational.hpp"
#include "latshift/verify.hpp"
#include "latshift/voashift.hpp"
