#include "qca/debruijn.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "qca/errors.h"

namespace qca {

WeightedDiGraph::WeightedDiGraph(GraphKind kind, int q, int k, std::vector<Edge> edges)
    : kind_(kind), q_(q), k_(k), side_(ipow(q, k - 1)), edges_(std::move(edges)) {
    vertex_count_ = kind == GraphKind::kSingle ? side_ : side_ * side_;
    out_.resize(vertex_count_);
    for (size_t e = 0; e < edges_.size(); e++) {
        out_[edges_[e].source].push_back(e);
    }
}

bool WeightedDiGraph::is_diagonal(size_t v) const {
    return kind_ == GraphKind::kSingle || v / side_ == v % side_;
}

static std::string short_label(int q, int length, size_t index) {
    return length == 0 ? std::string("-") : LocalConfig::from_index(q, length, index).str();
}

std::string WeightedDiGraph::vertex_label(size_t v) const {
    if (kind_ == GraphKind::kSingle) {
        return short_label(q_, k_ - 1, v);
    }
    return "(" + short_label(q_, k_ - 1, v / side_) + "," + short_label(q_, k_ - 1, v % side_) + ")";
}

std::string WeightedDiGraph::edge_label(size_t e) const {
    const Edge &edge = edges_[e];
    if (kind_ == GraphKind::kSingle) {
        return LocalConfig::from_index(q_, k_, edge.left).str();
    }
    return "(" + LocalConfig::from_index(q_, k_, edge.left).str() + "," +
           LocalConfig::from_index(q_, k_, edge.right).str() + ")";
}

WeightedDiGraph build_g1(const RuleTable &rule) {
    size_t side = ipow(rule.q(), rule.k() - 1);
    std::vector<Edge> edges;
    edges.reserve(rule.config_count());
    for (size_t c = 0; c < rule.config_count(); c++) {
        edges.push_back({c / rule.q(), c % side, c, c, inner(rule, c, c)});
    }
    return WeightedDiGraph(GraphKind::kSingle, rule.q(), rule.k(), std::move(edges));
}

WeightedDiGraph build_g2(const RuleTable &rule) {
    size_t q = rule.q();
    size_t side = ipow(q, rule.k() - 1);
    std::vector<Edge> edges;
    edges.reserve(rule.config_count() * rule.config_count());
    for (size_t a = 0; a < side; a++) {
        for (size_t b = 0; b < side; b++) {
            for (size_t x = 0; x < q; x++) {
                for (size_t y = 0; y < q; y++) {
                    size_t left = a * q + x;
                    size_t right = b * q + y;
                    Edge e{a * side + b, (left % side) * side + right % side, left, right, inner(rule, left, right)};
                    e.in_m = left != right;
                    edges.push_back(e);
                }
            }
        }
    }
    return WeightedDiGraph(GraphKind::kPair, rule.q(), rule.k(), std::move(edges));
}

EdgePredicate edge_set_predicate(const WeightedDiGraph &g, EdgeSet set) {
    switch (set) {
        case EdgeSet::kAll:
            return [](const Edge &) { return true; };
        case EdgeSet::kM:
            return [&g](const Edge &e) {
                return e.in_m && !g.is_diagonal(e.source) && !g.is_diagonal(e.target);
            };
        case EdgeSet::kDiagonal:
            return [](const Edge &e) { return !e.in_m; };
        case EdgeSet::kD:
            return [](const Edge &e) { return e.in_d; };
    }
    return nullptr;
}

size_t default_cycle_cap() {
    if (const char *env = std::getenv("QCA_CYCLE_CAP")) {
        char *end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<size_t>(v);
        }
    }
    return 1'000'000;
}

namespace {

// Johnson's elementary circuit search, edge-indexed so parallel edges give
// distinct cycles.
class CircuitSearch {
   public:
    CircuitSearch(const WeightedDiGraph &g, const EdgePredicate &allowed,
                  const std::function<bool(const std::vector<size_t> &)> &visit, size_t cap)
        : g_(g), visit_(visit), cap_(cap) {
        size_t n = g.vertex_count();
        out_.resize(n);
        for (size_t v = 0; v < n; v++) {
            for (size_t e : g.out_edges(v)) {
                if (allowed(g.edges()[e])) {
                    out_[v].push_back(e);
                }
            }
        }
        blocked_.assign(n, false);
        blockers_.resize(n);
    }

    void run() {
        for (start_ = 0; start_ < g_.vertex_count() && !stopped_; start_++) {
            for (size_t v = start_; v < g_.vertex_count(); v++) {
                blocked_[v] = false;
                blockers_[v].clear();
            }
            circuit(start_);
        }
    }

   private:
    bool circuit(size_t v) {
        bool found = false;
        blocked_[v] = true;
        for (size_t e : out_[v]) {
            if (stopped_) {
                return found;
            }
            size_t w = g_.edges()[e].target;
            if (w < start_) {
                continue;
            }
            if (w == start_) {
                path_.push_back(e);
                emit();
                path_.pop_back();
                found = true;
            } else if (!blocked_[w]) {
                path_.push_back(e);
                if (circuit(w)) {
                    found = true;
                }
                path_.pop_back();
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (size_t e : out_[v]) {
                size_t w = g_.edges()[e].target;
                if (w >= start_) {
                    blockers_[w].insert(v);
                }
            }
        }
        return found;
    }

    void unblock(size_t v) {
        blocked_[v] = false;
        std::set<size_t> pending;
        pending.swap(blockers_[v]);
        for (size_t w : pending) {
            if (blocked_[w]) {
                unblock(w);
            }
        }
    }

    void emit() {
        if (++count_ > cap_) {
            throw ResourceError("cycle enumeration exceeded the cap of " + std::to_string(cap_) +
                                " cycles (raise it with QCA_CYCLE_CAP)");
        }
        if (!visit_(path_)) {
            stopped_ = true;
        }
    }

    const WeightedDiGraph &g_;
    const std::function<bool(const std::vector<size_t> &)> &visit_;
    size_t cap_;
    size_t start_ = 0;
    size_t count_ = 0;
    bool stopped_ = false;
    std::vector<std::vector<size_t>> out_;
    std::vector<bool> blocked_;
    std::vector<std::set<size_t>> blockers_;
    std::vector<size_t> path_;
};

}  // namespace

void for_each_cycle(const WeightedDiGraph &g, const EdgePredicate &allowed,
                    const std::function<bool(const std::vector<size_t> &)> &visit, size_t cap) {
    CircuitSearch search(g, allowed, visit, cap == 0 ? default_cycle_cap() : cap);
    search.run();
}

Amplitude path_weight(const WeightedDiGraph &g, const std::vector<size_t> &edges) {
    Amplitude w = 1;
    for (size_t e : edges) {
        w *= g.edges()[e].weight;
    }
    return w;
}

std::vector<Cycle> enumerate_cycles(const WeightedDiGraph &g, const EdgePredicate &allowed, size_t cap) {
    std::vector<Cycle> cycles;
    for_each_cycle(
        g, allowed,
        [&](const std::vector<size_t> &edges) {
            cycles.push_back({edges, path_weight(g, edges)});
            return true;
        },
        cap);
    std::sort(cycles.begin(), cycles.end(), [](const Cycle &a, const Cycle &b) {
        if (a.edges.size() != b.edges.size()) {
            return a.edges.size() < b.edges.size();
        }
        return a.edges < b.edges;
    });
    return cycles;
}

std::vector<Cycle> enumerate_cycles(const WeightedDiGraph &g, EdgeSet set, size_t cap) {
    return enumerate_cycles(g, edge_set_predicate(g, set), cap);
}

bool DeterministicSector::contains(size_t config) const {
    return std::binary_search(configs.begin(), configs.end(), config);
}

std::vector<std::string> DeterministicSector::labels() const {
    std::vector<std::string> out;
    for (size_t c : configs) {
        out.push_back(LocalConfig::from_index(q, k, c).str());
    }
    return out;
}

namespace {

// Marks configs whose edge joins two vertices of one strongly connected
// component of the graph formed by the `alive` edges.
std::vector<bool> on_cycles(size_t side, int q, const std::vector<bool> &alive) {
    size_t n = side;
    std::vector<std::vector<size_t>> adj(n);
    for (size_t c = 0; c < alive.size(); c++) {
        if (alive[c]) {
            adj[c / q].push_back(c % side);
        }
    }
    // Iterative Tarjan.
    std::vector<long> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<size_t> stack;
    long counter = 0, comps = 0;
    for (size_t root = 0; root < n; root++) {
        if (index[root] >= 0) {
            continue;
        }
        std::vector<std::pair<size_t, size_t>> work{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!work.empty()) {
            auto &[v, i] = work.back();
            if (i < adj[v].size()) {
                size_t w = adj[v][i++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    work.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = comps;
                } while (w != v);
                comps++;
            }
            size_t done = v;
            work.pop_back();
            if (!work.empty()) {
                size_t parent = work.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    std::vector<bool> result(alive.size(), false);
    for (size_t c = 0; c < alive.size(); c++) {
        result[c] = alive[c] && comp[c / q] == comp[c % side];
    }
    return result;
}

}  // namespace

DeterministicSector deterministic_sector(const RuleTable &rule) {
    int q = rule.q();
    int k = rule.k();
    size_t side = ipow(q, k - 1);
    size_t count = rule.config_count();
    std::vector<int> output(count, -1);
    std::vector<bool> alive(count, false);
    for (size_t c : big_set(rule)) {
        output[c] = rule.deterministic_output(c);
        alive[c] = true;
    }

    std::vector<size_t> walk;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<bool> cyclic = on_cycles(side, q, alive);
        if (cyclic != alive) {
            alive = cyclic;
            changed = true;
        }
        // Every k consecutive windows inside the sector must produce a window
        // that is itself in the sector. A failing walk loses all its windows.
        std::vector<bool> doomed(count, false);
        std::function<void(size_t)> extend = [&](size_t last) {
            if (static_cast<int>(walk.size()) == k) {
                size_t produced = 0;
                for (size_t c : walk) {
                    produced = produced * q + output[c];
                }
                if (!alive[produced]) {
                    for (size_t c : walk) {
                        doomed[c] = true;
                    }
                }
                return;
            }
            size_t prefix = last % side;
            for (int x = 0; x < q; x++) {
                size_t next = prefix * q + x;
                if (alive[next]) {
                    walk.push_back(next);
                    extend(next);
                    walk.pop_back();
                }
            }
        };
        for (size_t c = 0; c < count; c++) {
            if (alive[c]) {
                walk.assign(1, c);
                extend(c);
            }
        }
        for (size_t c = 0; c < count; c++) {
            if (doomed[c]) {
                alive[c] = false;
                changed = true;
            }
        }
    }

    DeterministicSector sector{q, k, {}};
    for (size_t c = 0; c < count; c++) {
        if (alive[c]) {
            sector.configs.push_back(c);
        }
    }
    return sector;
}

WeightedDiGraph subgraph_d(const WeightedDiGraph &g, const DeterministicSector &sector) {
    if (sector.q != g.q() || sector.k != g.k()) {
        throw InputError("deterministic sector does not match the graph dimensions");
    }
    std::vector<Edge> kept;
    for (const Edge &e : g.edges()) {
        if (sector.contains(e.left) && sector.contains(e.right)) {
            Edge copy = e;
            copy.in_d = true;
            kept.push_back(copy);
        }
    }
    return WeightedDiGraph(g.kind(), g.q(), g.k(), std::move(kept));
}

std::string format_amplitude(Amplitude a, int precision) {
    char buf[96];
    // Rounding noise far below the printed precision shows as 0.
    double floor = 1e-14 * std::max(1.0, std::abs(a));
    double re = std::abs(a.real()) <= floor ? 0.0 : a.real();
    double im = std::abs(a.imag()) <= floor ? 0.0 : a.imag();
    std::snprintf(buf, sizeof buf, "%.*g%+.*gi", precision, re, precision, im);
    return buf;
}

std::string to_dot(const WeightedDiGraph &g) {
    std::string out = g.kind() == GraphKind::kSingle ? "digraph G1 {\n" : "digraph G2 {\n";
    for (size_t v = 0; v < g.vertex_count(); v++) {
        out += "  v" + std::to_string(v) + " [label=\"" + g.vertex_label(v) + "\"];\n";
    }
    for (size_t e = 0; e < g.edges().size(); e++) {
        const Edge &edge = g.edges()[e];
        std::string step;
        if (g.kind() == GraphKind::kSingle) {
            step = std::string(1, digit_char(static_cast<int>(edge.left % g.q())));
        } else {
            step = "(" + std::string(1, digit_char(static_cast<int>(edge.left % g.q()))) + "," +
                   std::string(1, digit_char(static_cast<int>(edge.right % g.q()))) + ")";
        }
        out += "  v" + std::to_string(edge.source) + " -> v" + std::to_string(edge.target) + " [label=\"" + step +
               " / " + format_amplitude(edge.weight) + "\"";
        if (edge.in_m) {
            out += ", style=dashed";
        }
        out += "];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace qca
