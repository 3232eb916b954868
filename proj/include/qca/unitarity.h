#ifndef QCA_UNITARITY_H
#define QCA_UNITARITY_H

#include <vector>

#include "qca/debruijn.h"
#include "qca/report.h"
#include "qca/rule.h"

namespace qca {

struct CheckOptions {
    /// Violations kept per condition.
    size_t max_reports = 100;
    /// Cycle and path enumeration cap; 0 means default_cycle_cap().
    size_t cycle_cap = 0;
};

/// Decides unitarity on every periodic lattice at once.
Verdict check_periodic(const RuleTable &rule, const CheckOptions &options = {});

/// Decides unitarity on the infinite lattice with deterministic ends. Throws
/// NoDeterministicSector when the rule has none.
Verdict check_infinite(const RuleTable &rule, const CheckOptions &options = {});

/// All violations of one graph condition. Surjectivity (I-v) is not a graph
/// condition and is rejected here.
std::vector<ConstraintReport> evaluate_condition(const RuleTable &rule, ConditionId condition,
                                                 const CheckOptions &options = {});

/// Surjectivity violations, accepting the rule when either it or its mirror image
/// satisfies the conditions. Violations are reported for the rule as given.
std::vector<ConstraintReport> surjectivity_reports(const RuleTable &rule, const DeterministicSector &sector,
                                                   const CheckOptions &options = {});

}  // namespace qca

#endif
