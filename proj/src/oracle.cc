#include "qca/oracle.h"

#include <cmath>

#include "qca/errors.h"

namespace qca {

namespace {

void check_state(const RuleTable &rule, const StateVector &state) {
    if (state.q != rule.q() || state.sites < 1 ||
        static_cast<size_t>(state.amplitudes.size()) != ipow(state.q, state.sites)) {
        throw InputError("state dimension does not match q^N");
    }
}

int digit(size_t index, size_t place_value, int q) {
    return static_cast<int>((index / place_value) % q);
}

// Permutes amplitudes so that amplitude of sigma moves to rotate_left(sigma, by).
ComplexVector rotate_state(const ComplexVector &v, int q, int sites, int by) {
    if (by % sites == 0) {
        return v;
    }
    ComplexVector out(v.size());
    for (Eigen::Index s = 0; s < v.size(); s++) {
        out(rotate_left(static_cast<size_t>(s), q, sites, by)) = v(s);
    }
    return out;
}

// Site-by-site sweep for offset 0 and sites >= k. The extended register holds a
// copy of the first k-1 input cells next to the string being rewritten, so the
// windows that wrap around still see the original cells.
ComplexVector sweep(const RuleTable &rule, int sites, const ComplexVector &in, bool adjoint) {
    int q = rule.q();
    int k = rule.k();
    size_t dim = ipow(q, sites);
    size_t prefixes = ipow(q, k - 1);
    std::vector<size_t> place(sites);
    for (int x = 0; x < sites; x++) {
        place[x] = ipow(q, sites - 1 - x);
    }
    auto prefix_of = [&](size_t s) -> size_t { return k == 1 ? 0 : s / place[k - 2]; };
    std::vector<Amplitude> reg(prefixes * dim, 0.0);
    if (!adjoint) {
        for (size_t s = 0; s < dim; s++) {
            reg[prefix_of(s) * dim + s] = in(s);
        }
    } else {
        for (size_t p = 0; p < prefixes; p++) {
            for (size_t s = 0; s < dim; s++) {
                reg[p * dim + s] = in(s);
            }
        }
    }
    std::vector<Amplitude> in_cell(q), out_cell(q);
    auto step = [&](int x) {
        for (size_t p = 0; p < prefixes; p++) {
            for (size_t s = 0; s < dim; s++) {
                if (digit(s, place[x], q) != 0) {
                    continue;
                }
                size_t rest = 0;
                for (int j = 1; j < k; j++) {
                    int y = x + j;
                    int d = y < sites ? digit(s, place[y], q) : digit(p, ipow(q, k - 2 - (y - sites)), q);
                    rest = rest * q + d;
                }
                size_t base = p * dim + s;
                for (int a = 0; a < q; a++) {
                    in_cell[a] = reg[base + a * place[x]];
                    out_cell[a] = 0.0;
                }
                for (int a = 0; a < q; a++) {
                    size_t window = a * prefixes + rest;
                    for (int b = 0; b < q; b++) {
                        if (adjoint) {
                            // out[a] += conj(f(b|a..)) in[b]
                            out_cell[a] += std::conj(rule(b, window)) * in_cell[b];
                        } else {
                            out_cell[b] += rule(b, window) * in_cell[a];
                        }
                    }
                }
                for (int a = 0; a < q; a++) {
                    reg[base + a * place[x]] = out_cell[a];
                }
            }
        }
    };
    if (!adjoint) {
        for (int x = 0; x < sites; x++) {
            step(x);
        }
    } else {
        for (int x = sites - 1; x >= 0; x--) {
            step(x);
        }
    }
    ComplexVector out = ComplexVector::Zero(dim);
    if (!adjoint) {
        for (size_t p = 0; p < prefixes; p++) {
            for (size_t s = 0; s < dim; s++) {
                out(s) += reg[p * dim + s];
            }
        }
    } else {
        for (size_t s = 0; s < dim; s++) {
            out(s) = reg[prefix_of(s) * dim + s];
        }
    }
    return out;
}

}  // namespace

size_t rotate_left(size_t index, int q, int sites, int by) {
    by = ((by % sites) + sites) % sites;
    if (by == 0) {
        return index;
    }
    size_t high = ipow(q, by);
    size_t low = ipow(q, sites - by);
    return (index % low) * high + index / low;
}

GlobalMatrix global_matrix(const RuleTable &rule, int sites, Neighborhood e, size_t max_dimension) {
    int q = rule.q();
    int k = rule.k();
    if (sites < 1) {
        throw InputError("lattice needs at least one site");
    }
    if (sites > 62 || ipow(q, sites) > max_dimension) {
        throw ResourceError("global matrix for N=" + std::to_string(sites) + " exceeds the dense cap of " +
                            std::to_string(max_dimension) + " configurations");
    }
    size_t dim = ipow(q, sites);
    ComplexMatrix m(dim, dim);
    std::vector<Amplitude> column, next;
    for (size_t s = 0; s < dim; s++) {
        LocalConfig sigma = LocalConfig::from_index(q, sites, s);
        column.assign(1, 1.0);
        for (int x = 0; x < sites; x++) {
            size_t window = 0;
            for (int j = 0; j < k; j++) {
                int y = ((x + e.offset + j) % sites + sites) % sites;
                window = window * q + sigma[y];
            }
            next.assign(column.size() * q, 0.0);
            for (size_t r = 0; r < column.size(); r++) {
                for (int i = 0; i < q; i++) {
                    next[r * q + i] = column[r] * rule(i, window);
                }
            }
            column.swap(next);
        }
        for (size_t r = 0; r < dim; r++) {
            m(r, s) = column[r];
        }
    }
    return {sites, q, std::move(m)};
}

double unitarity_defect(const GlobalMatrix &f) {
    const auto &m = f.entries;
    ComplexMatrix g = m.adjoint() * m;
    g -= ComplexMatrix::Identity(m.rows(), m.cols());
    return m.size() == 0 ? 0.0 : g.cwiseAbs().maxCoeff();
}

StateVector apply_global(const RuleTable &rule, const StateVector &state, Neighborhood e) {
    check_state(rule, state);
    if (state.sites < rule.k()) {
        auto f = global_matrix(rule, state.sites, e);
        return {state.sites, state.q, f.entries * state.amplitudes};
    }
    ComplexVector shifted = rotate_state(state.amplitudes, state.q, state.sites, e.offset);
    return {state.sites, state.q, sweep(rule, state.sites, shifted, false)};
}

StateVector apply_global_adjoint(const RuleTable &rule, const StateVector &state, Neighborhood e) {
    check_state(rule, state);
    if (state.sites < rule.k()) {
        auto f = global_matrix(rule, state.sites, e);
        return {state.sites, state.q, f.entries.adjoint() * state.amplitudes};
    }
    ComplexVector back = sweep(rule, state.sites, state.amplitudes, true);
    return {state.sites, state.q, rotate_state(back, state.q, state.sites, -e.offset)};
}

StateVector evolve(const RuleTable &rule, const StateVector &state, int steps, Neighborhood e) {
    if (steps < 0) {
        throw InputError("step count must be non-negative");
    }
    check_state(rule, state);
    StateVector s = state;
    for (int t = 0; t < steps; t++) {
        s = apply_global(rule, s, e);
    }
    return s;
}

double estimated_defect(const RuleTable &rule, int sites, int samples, std::mt19937_64 &rng, Neighborhood e) {
    std::normal_distribution<double> g;
    size_t dim = ipow(rule.q(), sites);
    double worst = 0;
    for (int i = 0; i < samples; i++) {
        ComplexVector v(dim);
        for (size_t j = 0; j < dim; j++) {
            v(j) = Amplitude(g(rng), g(rng));
        }
        v.normalize();
        StateVector s{sites, rule.q(), v};
        auto back = apply_global_adjoint(rule, apply_global(rule, s, e), e);
        worst = std::max(worst, (back.amplitudes - v).norm());
    }
    return worst;
}

double norm(const StateVector &state) {
    return state.amplitudes.norm();
}

std::vector<double> probabilities(const StateVector &state, double tolerance) {
    double n2 = state.amplitudes.squaredNorm();
    if (std::abs(n2 - 1) > tolerance) {
        throw PreconditionError("state is not normalized (squared norm " + std::to_string(n2) + ")");
    }
    std::vector<double> p(state.amplitudes.size());
    for (Eigen::Index i = 0; i < state.amplitudes.size(); i++) {
        p[i] = std::norm(state.amplitudes(i));
    }
    return p;
}

StateVector basis_state(int q, const LocalConfig &config) {
    if (config.q() != q || config.size() < 1) {
        throw InputError("basis configuration does not match q");
    }
    ComplexVector v = ComplexVector::Zero(ipow(q, config.size()));
    v(config.index()) = 1.0;
    return {config.size(), q, v};
}

}  // namespace qca
