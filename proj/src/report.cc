#include "qca/report.h"

#include <algorithm>
#include <array>

#include "qca/debruijn.h"
#include "qca/errors.h"
#include "qca/linalg.h"
#include "qca/rule_io.h"
#include "qca/surjectivity.h"

namespace qca {

namespace {

constexpr std::array<std::string_view, 8> kConditionNames{"P-i",  "P-ii",  "P-iii", "I-i",
                                                          "I-ii", "I-iii", "I-iv",  "I-v"};
constexpr std::array<std::string_view, 4> kWitnessNames{"cycle", "path", "amplitude", "determinant"};

std::string value_of(const Witness &w, std::string_view key) {
    std::string prefix = std::string(key) + "=";
    for (const auto &label : w.labels) {
        if (label.rfind(prefix, 0) == 0) {
            return label.substr(prefix.size());
        }
    }
    throw InputError("witness is missing its " + std::string(key) + " entry");
}

}  // namespace

std::string_view condition_name(ConditionId id) {
    return kConditionNames[static_cast<size_t>(id)];
}

ConditionId parse_condition(std::string_view name) {
    for (size_t i = 0; i < kConditionNames.size(); i++) {
        if (kConditionNames[i] == name) {
            return static_cast<ConditionId>(i);
        }
    }
    throw InputError("unknown condition \"" + std::string(name) + "\"");
}

std::string_view witness_kind_name(WitnessKind kind) {
    return kWitnessNames[static_cast<size_t>(kind)];
}

WitnessKind parse_witness_kind(std::string_view name) {
    for (size_t i = 0; i < kWitnessNames.size(); i++) {
        if (kWitnessNames[i] == name) {
            return static_cast<WitnessKind>(i);
        }
    }
    throw InputError("unknown witness kind \"" + std::string(name) + "\"");
}

Amplitude condition_target(ConditionId id) {
    switch (id) {
        case ConditionId::kPeriodicCycleNorm:
        case ConditionId::kInfiniteCycleNorm:
        case ConditionId::kInfiniteSectorPath:
            return 1.0;
        default:
            return 0.0;
    }
}

ConstraintReport make_report(ConditionId id, Witness witness, Amplitude value) {
    return {id, std::move(witness), value, std::abs(value - condition_target(id))};
}

void sort_reports(std::vector<ConstraintReport> &reports) {
    std::stable_sort(reports.begin(), reports.end(), [](const ConstraintReport &a, const ConstraintReport &b) {
        if (a.condition != b.condition) {
            return a.condition < b.condition;
        }
        return a.witness.labels < b.witness.labels;
    });
}

Amplitude evaluate_witness(const RuleTable &rule, const Witness &witness) {
    int q = rule.q();
    switch (witness.kind) {
        case WitnessKind::kCycle:
        case WitnessKind::kPath: {
            Amplitude product = 1;
            for (const auto &label : witness.labels) {
                if (!label.empty() && label.front() == '(') {
                    auto comma = label.find(',');
                    if (comma == std::string::npos || label.back() != ')') {
                        throw InputError("bad edge label \"" + label + "\"");
                    }
                    auto a = LocalConfig::parse(q, label.substr(1, comma - 1));
                    auto b = LocalConfig::parse(q, label.substr(comma + 1, label.size() - comma - 2));
                    product *= inner(rule, a, b);
                } else {
                    auto a = LocalConfig::parse(q, label);
                    product *= inner(rule, a, a);
                }
            }
            return product;
        }
        case WitnessKind::kBorderedAmplitude: {
            auto gamma = LocalConfig::parse(q, value_of(witness, "gamma"));
            auto rho = LocalConfig::parse(q, value_of(witness, "rho"));
            auto rho_prime = LocalConfig::parse(q, value_of(witness, "rhoPrime"));
            int k = rule.k();
            if (rho.size() != k || rho_prime.size() != k) {
                throw InputError("witness configurations do not match the rule");
            }
            return bordered_amplitude(rule, rho_prime.slice(0, k - 1), gamma.concat(rho.slice(0, k - 1)));
        }
        case WitnessKind::kPhiDeterminant:
            return determinant(phi_matrix(rule, LocalConfig::parse(q, value_of(witness, "gamma"))).entries);
    }
    return 0.0;
}

nlohmann::json to_json(const ConstraintReport &report) {
    return {{"condition", condition_name(report.condition)},
            {"kind", witness_kind_name(report.witness.kind)},
            {"witness", report.witness.labels},
            {"value", amplitude_to_json(report.value)},
            {"margin", report.margin}};
}

nlohmann::json to_json(const Verdict &verdict) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto &r : verdict.reports) {
        reports.push_back(to_json(r));
    }
    return {{"unitary", verdict.unitary},
            {"mode", verdict.mode == Mode::kPeriodic ? "periodic" : "infinite"},
            {"reports", std::move(reports)}};
}

ConstraintReport report_from_json(const nlohmann::json &j) {
    try {
        ConstraintReport r;
        r.condition = parse_condition(j.at("condition").get<std::string>());
        r.witness.kind = parse_witness_kind(j.at("kind").get<std::string>());
        r.witness.labels = j.at("witness").get<std::vector<std::string>>();
        r.value = amplitude_from_json(j.at("value"), "value");
        r.margin = j.at("margin").get<double>();
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("malformed report: ") + e.what());
    }
}

Verdict verdict_from_json(const nlohmann::json &j) {
    try {
        Verdict v;
        v.unitary = j.at("unitary").get<bool>();
        std::string mode = j.at("mode").get<std::string>();
        if (mode != "periodic" && mode != "infinite") {
            throw InputError("unknown mode \"" + mode + "\"");
        }
        v.mode = mode == "periodic" ? Mode::kPeriodic : Mode::kInfinite;
        for (const auto &r : j.at("reports")) {
            v.reports.push_back(report_from_json(r));
        }
        return v;
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("malformed verdict: ") + e.what());
    }
}

std::string describe(const ConstraintReport &report) {
    std::string s(condition_name(report.condition));
    s += " ";
    s += witness_kind_name(report.witness.kind);
    s += " [";
    for (size_t i = 0; i < report.witness.labels.size(); i++) {
        s += (i ? " " : "") + report.witness.labels[i];
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", report.margin);
    s += "] value " + format_amplitude(report.value) + ", margin " + buf;
    return s;
}

}  // namespace qca
