#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opineq/inequalities.hpp"

namespace opineq {

/// Named matrix attached to a regenerated instance for serialization.
struct NamedMatrix {
  std::string name;
  Matrix value;
};

struct InstanceResult {
  std::vector<IneqRecord> records;
  std::vector<NamedMatrix> matrices;
};

/// Draws one regime-valid instance of `theorem` from the stream seeded by
/// fp.seed and checks it. The same fingerprint always yields the same
/// instance; with `capture` the inputs are returned alongside the records.
///
/// Every "for all unit vectors" bound is evaluated on `vectors` random unit
/// vectors plus the eigenvectors of A and the midpoint of its extreme
/// eigenvectors.
InstanceResult evaluate_instance(TheoremId theorem, const Fingerprint& fp, double tol,
                                 int vectors = 16, bool capture = false);

}  // namespace opineq
