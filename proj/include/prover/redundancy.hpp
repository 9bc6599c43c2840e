#pragma once

#include "prover/clause.hpp"

namespace prover {

/// True iff c contains literals L and ~L with syntactically identical atoms.
bool is_tautology(const Clause& c);

/// Multiset subsumption: true iff some substitution sigma maps c's literals
/// injectively (per occurrence) onto literals of d.
bool subsumes(const Clause& c, const Clause& d);

}  // namespace prover
