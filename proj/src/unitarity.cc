#include "qca/unitarity.h"

#include <algorithm>
#include <functional>

#include "qca/errors.h"
#include "qca/surjectivity.h"

namespace qca {

namespace {

size_t cap_of(const CheckOptions &options) {
    return options.cycle_cap == 0 ? default_cycle_cap() : options.cycle_cap;
}

Witness edge_witness(const WeightedDiGraph &g, WitnessKind kind, const std::vector<size_t> &edges) {
    Witness w{kind, {}};
    for (size_t e : edges) {
        w.labels.push_back(g.edge_label(e));
    }
    return w;
}

// Cycles of the `allowed` edges whose weight misses `target`.
std::vector<ConstraintReport> bad_cycles(const RuleTable &rule, const WeightedDiGraph &g, const EdgePredicate &allowed,
                                         ConditionId id, const CheckOptions &options) {
    std::vector<ConstraintReport> reports;
    Amplitude target = condition_target(id);
    for_each_cycle(
        g, allowed,
        [&](const std::vector<size_t> &edges) {
            Amplitude w = path_weight(g, edges);
            if (!rule.near(w, target)) {
                reports.push_back(make_report(id, edge_witness(g, WitnessKind::kCycle, edges), w));
            }
            return reports.size() < options.max_reports;
        },
        cap_of(options));
    return reports;
}

// Paths of surviving mismatched edges that leave the diagonal and come back to
// it. Breadth-first from each diagonal vertex through off-diagonal vertices, so
// each reported path is a shortest one to its final edge.
std::vector<ConstraintReport> leaking_paths(const RuleTable &rule, const WeightedDiGraph &g,
                                            ConditionId id, const CheckOptions &options) {
    std::vector<ConstraintReport> reports;
    auto survives = [&](const Edge &e) { return e.in_m && !rule.is_zero(e.weight); };
    size_t n = g.vertex_count();
    for (size_t s = 0; s < n && reports.size() < options.max_reports; s++) {
        if (!g.is_diagonal(s)) {
            continue;
        }
        std::vector<long> parent_edge(n, -1);
        std::vector<bool> seen(n, false);
        std::vector<size_t> queue{s};
        seen[s] = true;
        for (size_t head = 0; head < queue.size() && reports.size() < options.max_reports; head++) {
            size_t u = queue[head];
            for (size_t e : g.out_edges(u)) {
                const Edge &edge = g.edges()[e];
                if (!survives(edge)) {
                    continue;
                }
                if (g.is_diagonal(edge.target)) {
                    std::vector<size_t> path{e};
                    for (size_t v = u; v != s; v = g.edges()[parent_edge[v]].source) {
                        path.push_back(parent_edge[v]);
                    }
                    std::reverse(path.begin(), path.end());
                    reports.push_back(
                        make_report(id, edge_witness(g, WitnessKind::kPath, path), path_weight(g, path)));
                    if (reports.size() >= options.max_reports) {
                        break;
                    }
                } else if (!seen[edge.target]) {
                    seen[edge.target] = true;
                    parent_edge[edge.target] = static_cast<long>(e);
                    queue.push_back(edge.target);
                }
            }
        }
    }
    return reports;
}

// Simple paths of the single graph between two distinct vertices touched by the
// sector, with no sector vertex in between, whose weight is not 1.
std::vector<ConstraintReport> bad_sector_paths(const RuleTable &rule, const DeterministicSector &sector,
                                               const CheckOptions &options) {
    auto g = build_g1(rule);
    size_t n = g.vertex_count();
    std::vector<bool> terminal(n, false);
    for (const Edge &e : g.edges()) {
        if (sector.contains(e.left)) {
            terminal[e.source] = terminal[e.target] = true;
        }
    }
    std::vector<ConstraintReport> reports;
    size_t cap = cap_of(options);
    size_t steps = 0;
    std::vector<bool> on_path(n, false);
    std::vector<size_t> path;
    std::function<bool(size_t, size_t)> dfs = [&](size_t start, size_t v) {
        for (size_t e : g.out_edges(v)) {
            size_t w = g.edges()[e].target;
            if (w == start || on_path[w]) {
                continue;
            }
            if (++steps > cap) {
                throw ResourceError("path enumeration exceeded the cap of " + std::to_string(cap) +
                                    " steps (raise it with QCA_CYCLE_CAP)");
            }
            path.push_back(e);
            if (terminal[w]) {
                Amplitude weight = path_weight(g, path);
                if (!rule.near(weight, 1.0)) {
                    reports.push_back(make_report(ConditionId::kInfiniteSectorPath,
                                                  edge_witness(g, WitnessKind::kPath, path), weight));
                    if (reports.size() >= options.max_reports) {
                        return false;
                    }
                }
            } else {
                on_path[w] = true;
                bool go_on = dfs(start, w);
                on_path[w] = false;
                if (!go_on) {
                    return false;
                }
            }
            path.pop_back();
        }
        return true;
    };
    for (size_t s = 0; s < n; s++) {
        if (!terminal[s]) {
            continue;
        }
        on_path[s] = true;
        bool go_on = dfs(s, s);
        on_path[s] = false;
        path.clear();
        if (!go_on) {
            break;
        }
    }
    return reports;
}

std::vector<ConstraintReport> evaluate(const RuleTable &rule, ConditionId id, const DeterministicSector *sector,
                                       const CheckOptions &options) {
    switch (id) {
        case ConditionId::kPeriodicCycleNorm:
        case ConditionId::kInfiniteCycleNorm: {
            auto g = build_g1(rule);
            return bad_cycles(rule, g, edge_set_predicate(g, EdgeSet::kAll), id, options);
        }
        case ConditionId::kPeriodicMCycle: {
            auto g = build_g2(rule);
            auto in_m = edge_set_predicate(g, EdgeSet::kM);
            return bad_cycles(
                rule, g, [&](const Edge &e) { return in_m(e) && !rule.is_zero(e.weight); }, id, options);
        }
        case ConditionId::kPeriodicMPath:
        case ConditionId::kInfiniteMPath:
            return leaking_paths(rule, build_g2(rule), id, options);
        case ConditionId::kInfiniteSectorPath:
            return bad_sector_paths(rule, *sector, options);
        case ConditionId::kInfiniteSectorCycle: {
            auto g = subgraph_d(build_g2(rule), *sector);
            auto in_m = edge_set_predicate(g, EdgeSet::kM);
            return bad_cycles(
                rule, g, [&](const Edge &e) { return in_m(e) && !rule.is_zero(e.weight); }, id, options);
        }
        case ConditionId::kInfiniteSurjective:
            break;
    }
    throw InputError("surjectivity is not a graph condition; use check_infinite");
}

}  // namespace

std::vector<ConstraintReport> evaluate_condition(const RuleTable &rule, ConditionId condition,
                                                 const CheckOptions &options) {
    std::vector<ConstraintReport> reports;
    if (condition == ConditionId::kInfiniteSectorPath || condition == ConditionId::kInfiniteSectorCycle) {
        auto sector = deterministic_sector(rule);
        if (sector.empty()) {
            throw NoDeterministicSector();
        }
        reports = evaluate(rule, condition, &sector, options);
    } else {
        reports = evaluate(rule, condition, nullptr, options);
    }
    sort_reports(reports);
    return reports;
}

std::vector<ConstraintReport> surjectivity_reports(const RuleTable &rule, const DeterministicSector &sector,
                                                   const CheckOptions &options) {
    auto direct = check_surjectivity(rule, sector, options.max_reports);
    if (direct.empty()) {
        return direct;
    }
    // The lattice reflection maps one orientation onto the other, and the
    // conditions are only sufficient in one of them for a given rule.
    auto mirror = parity_transform(rule);
    auto mirror_sector = deterministic_sector(mirror);
    if (!mirror_sector.empty() && check_surjectivity(mirror, mirror_sector, 1).empty()) {
        return {};
    }
    sort_reports(direct);
    return direct;
}

Verdict check_periodic(const RuleTable &rule, const CheckOptions &options) {
    Verdict v{true, Mode::kPeriodic, {}};
    for (auto id : {ConditionId::kPeriodicCycleNorm, ConditionId::kPeriodicMCycle, ConditionId::kPeriodicMPath}) {
        auto r = evaluate_condition(rule, id, options);
        v.reports.insert(v.reports.end(), r.begin(), r.end());
    }
    v.unitary = v.reports.empty();
    return v;
}

Verdict check_infinite(const RuleTable &rule, const CheckOptions &options) {
    auto sector = deterministic_sector(rule);
    if (sector.empty()) {
        throw NoDeterministicSector();
    }
    Verdict v{true, Mode::kInfinite, {}};
    for (auto id : {ConditionId::kInfiniteCycleNorm, ConditionId::kInfiniteSectorPath, ConditionId::kInfiniteMPath,
                    ConditionId::kInfiniteSectorCycle}) {
        auto r = evaluate(rule, id, &sector, options);
        sort_reports(r);
        v.reports.insert(v.reports.end(), r.begin(), r.end());
    }
    auto s = surjectivity_reports(rule, sector, options);
    v.reports.insert(v.reports.end(), s.begin(), s.end());
    v.unitary = v.reports.empty();
    return v;
}

}  // namespace qca
