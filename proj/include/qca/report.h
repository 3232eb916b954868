#ifndef QCA_REPORT_H
#define QCA_REPORT_H

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qca/rule.h"

namespace qca {

/// P-* are the periodic conditions, I-* the infinite ones.
enum class ConditionId {
    kPeriodicCycleNorm,    // P-i
    kPeriodicMCycle,       // P-ii
    kPeriodicMPath,        // P-iii
    kInfiniteCycleNorm,    // I-i
    kInfiniteSectorPath,   // I-ii
    kInfiniteMPath,        // I-iii
    kInfiniteSectorCycle,  // I-iv
    kInfiniteSurjective,   // I-v
};

std::string_view condition_name(ConditionId id);
ConditionId parse_condition(std::string_view name);

enum class WitnessKind {
    /// Edge labels of a cycle.
    kCycle,
    /// Edge labels of a path.
    kPath,
    /// gamma=, rho=, rhoPrime= entries followed by the vanishing factors f(i|window).
    kBorderedAmplitude,
    /// gamma= entry; the value is det of the matrix with rows |gamma i>>.
    kPhiDeterminant,
};

std::string_view witness_kind_name(WitnessKind kind);
WitnessKind parse_witness_kind(std::string_view name);

struct Witness {
    WitnessKind kind;
    std::vector<std::string> labels;

    bool operator==(const Witness &) const = default;
};

struct ConstraintReport {
    ConditionId condition;
    Witness witness;
    Amplitude value;
    /// |value - target| where the target is 1 or 0 depending on the condition.
    double margin;

    bool operator==(const ConstraintReport &) const = default;
};

enum class Mode { kPeriodic, kInfinite };

struct Verdict {
    bool unitary;
    Mode mode;
    std::vector<ConstraintReport> reports;

    bool operator==(const Verdict &) const = default;
};

/// Target value a witness must reach for the condition to hold.
Amplitude condition_target(ConditionId id);
ConstraintReport make_report(ConditionId id, Witness witness, Amplitude value);

/// Sorts by condition, then witness labels.
void sort_reports(std::vector<ConstraintReport> &reports);

/// Recomputes a report's value from its witness alone.
Amplitude evaluate_witness(const RuleTable &rule, const Witness &witness);

nlohmann::json to_json(const ConstraintReport &report);
nlohmann::json to_json(const Verdict &verdict);
ConstraintReport report_from_json(const nlohmann::json &j);
Verdict verdict_from_json(const nlohmann::json &j);

std::string describe(const ConstraintReport &report);

}  // namespace qca

#endif
