#pragma once

#include <iosfwd>

namespace groupalg {

/// End-to-end verification suite: twelve independent checks that exercise
/// the whole chain from unit groups and hom counting through certificates,
/// the nilpotent-algebra constructions, and the full comparison pipeline.
/// Prints one "ok"/"FAIL" line per item plus a summary and returns the
/// number of failing items.  Every check recomputes its expectations from
/// scratch; nothing is read from cached state.
int run_acceptance(std::ostream& out);

}  // namespace groupalg
