#ifndef QCA_DEBRUIJN_H
#define QCA_DEBRUIJN_H

#include <functional>
#include <string>
#include <vector>

#include "qca/rule.h"

namespace qca {

enum class GraphKind { kSingle, kPair };

/// For a single-config graph, `left == right == lambda`. For a pair graph the
/// edge carries the pair (left, right) and its weight is inner(left, right).
struct Edge {
    size_t source;
    size_t target;
    size_t left;
    size_t right;
    Amplitude weight;
    bool in_m = false;
    bool in_d = false;
};

/// Weighted de Bruijn graph over Q^{k-1} (single) or Q^{k-1} x Q^{k-1} (pair).
/// Pair vertex (a, b) has index a * q^{k-1} + b.
class WeightedDiGraph {
   public:
    WeightedDiGraph(GraphKind kind, int q, int k, std::vector<Edge> edges);

    GraphKind kind() const {
        return kind_;
    }
    int q() const {
        return q_;
    }
    int k() const {
        return k_;
    }
    size_t vertex_count() const {
        return vertex_count_;
    }
    const std::vector<Edge> &edges() const {
        return edges_;
    }
    const std::vector<size_t> &out_edges(size_t v) const {
        return out_[v];
    }

    /// Every vertex of a single graph; pair vertices whose two halves agree.
    bool is_diagonal(size_t v) const;
    std::string vertex_label(size_t v) const;
    /// "01" for a single graph, "(00,01)" for a pair graph.
    std::string edge_label(size_t e) const;

   private:
    GraphKind kind_;
    int q_;
    int k_;
    size_t vertex_count_;
    size_t side_;
    std::vector<Edge> edges_;
    std::vector<std::vector<size_t>> out_;
};

/// Edge i_1..i_{k-1} -> i_2..i_k for each lambda, weighted by inner(lambda, lambda).
WeightedDiGraph build_g1(const RuleTable &rule);

/// Edge (a'', a') -> (b'', b') for each pair of configurations, weighted by their
/// inner product. Pairs with different configs are flagged in_m.
WeightedDiGraph build_g2(const RuleTable &rule);

struct Cycle {
    std::vector<size_t> edges;
    Amplitude weight;
};

using EdgePredicate = std::function<bool(const Edge &)>;

enum class EdgeSet {
    kAll,
    /// Mismatched pairs joining two off-diagonal vertices.
    kM,
    kDiagonal,
    kD,
};

EdgePredicate edge_set_predicate(const WeightedDiGraph &g, EdgeSet set);

/// Cap from QCA_CYCLE_CAP, defaulting to 10^6.
size_t default_cycle_cap();

/// Calls `visit` for every vertex-simple cycle using only edges accepted by
/// `allowed`, in a deterministic order. Stops when `visit` returns false.
/// Throws ResourceError once more than `cap` cycles have been produced.
void for_each_cycle(const WeightedDiGraph &g, const EdgePredicate &allowed,
                    const std::function<bool(const std::vector<size_t> &)> &visit, size_t cap);

/// All cycles sorted by length, then by edge sequence.
std::vector<Cycle> enumerate_cycles(const WeightedDiGraph &g, EdgeSet set = EdgeSet::kAll, size_t cap = 0);
std::vector<Cycle> enumerate_cycles(const WeightedDiGraph &g, const EdgePredicate &allowed, size_t cap = 0);

Amplitude path_weight(const WeightedDiGraph &g, const std::vector<size_t> &edges);

struct DeterministicSector {
    int q = 2;
    int k = 1;
    std::vector<size_t> configs;

    bool empty() const {
        return configs.empty();
    }
    bool contains(size_t config) const;
    std::vector<std::string> labels() const;
};

/// Greatest subset of the big set whose configurations all lie on cycles inside
/// the subset and which is closed under the deterministic evolution.
DeterministicSector deterministic_sector(const RuleTable &rule);

/// Edges whose configs all lie in the sector, flagged in_d.
WeightedDiGraph subgraph_d(const WeightedDiGraph &g, const DeterministicSector &sector);

std::string to_dot(const WeightedDiGraph &g);

std::string format_amplitude(Amplitude a, int precision = 6);

}  // namespace qca

#endif
