#include "qca/transfer.h"

#include <algorithm>
#include <set>

#include "qca/errors.h"

namespace qca {

namespace {

using LongC = std::complex<long double>;
using LongMatrix = std::vector<std::vector<LongC>>;

// Drops trailing coefficients that are zero up to rounding.
void trim(std::vector<Amplitude> &c) {
    double scale = 1;
    for (Amplitude x : c) {
        scale = std::max(scale, std::abs(x));
    }
    while (!c.empty() && std::abs(c.back()) <= 1e-12 * scale) {
        c.pop_back();
    }
}

std::string index_label(size_t a, size_t b) {
    if (a < 10 && b < 10) {
        return "w_{" + std::to_string(a) + std::to_string(b) + "}";
    }
    return "w_{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

}  // namespace

Amplitude WeightPolynomial::operator()(Amplitude t) const {
    Amplitude v = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        v = v * t + *it;
    }
    return v;
}

std::string WeightPolynomial::str(int precision) const {
    if (coefficients.empty()) {
        return "0";
    }
    std::string out;
    for (size_t n = 0; n < coefficients.size(); n++) {
        if (n > 0) {
            out += " ";
        }
        out += "t^" + std::to_string(n) + ": " + format_amplitude(coefficients[n], precision);
    }
    return out;
}

ComplexMatrix transfer_matrix(const WeightedDiGraph &g, Convention convention) {
    if (convention == Convention::kSimplified && g.kind() != GraphKind::kPair) {
        throw InputError("the simplified convention applies to pair graphs only");
    }
    auto n = static_cast<Eigen::Index>(g.vertex_count());
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (const Edge &e : g.edges()) {
        Amplitude w = e.weight;
        if (convention == Convention::kSimplified && e.left == e.right) {
            w = e.source == e.target ? 0.0 : 1.0;
        }
        a(static_cast<Eigen::Index>(e.source), static_cast<Eigen::Index>(e.target)) += w;
    }
    return a;
}

WeightPolynomial z_polynomial(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw InputError("z_polynomial needs a square matrix");
    }
    // Faddeev-LeVerrier: det(lambda I - A) = sum_j c_j lambda^{n-j}, so
    // det(I - tA) = sum_j c_j t^j. Carried in long double.
    size_t n = static_cast<size_t>(a.rows());
    LongMatrix am(n, std::vector<LongC>(n)), m(n, std::vector<LongC>(n, 0)), am_m(n, std::vector<LongC>(n));
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            am[r][c] = LongC(a(r, c).real(), a(r, c).imag());
        }
    }
    std::vector<LongC> coeff{1};
    for (size_t j = 1; j <= n; j++) {
        for (size_t r = 0; r < n; r++) {
            m[r][r] += coeff.back();
        }
        LongC trace = 0;
        for (size_t r = 0; r < n; r++) {
            for (size_t c = 0; c < n; c++) {
                LongC s = 0;
                for (size_t x = 0; x < n; x++) {
                    s += am[r][x] * m[x][c];
                }
                am_m[r][c] = s;
            }
            trace += am_m[r][r];
        }
        coeff.push_back(-trace / static_cast<long double>(j));
        m.swap(am_m);
    }
    WeightPolynomial z;
    for (const LongC &c : coeff) {
        z.coefficients.emplace_back(static_cast<double>(c.real()), static_cast<double>(c.imag()));
    }
    trim(z.coefficients);
    return z;
}

WeightPolynomial trace_series(const WeightPolynomial &z, int order) {
    if (order < 1) {
        throw InputError("trace series order must be at least 1");
    }
    if (std::abs(z.coefficient(0) - 1.0) > kDefaultTolerance) {
        throw InputError("trace series needs Z(0) = 1");
    }
    std::vector<Amplitude> s(order + 1, 0.0);
    for (int n = 1; n <= order; n++) {
        Amplitude v = -static_cast<double>(n) * z.coefficient(n);
        for (int j = 1; j < n; j++) {
            v -= z.coefficient(j) * s[n - j];
        }
        s[n] = v;
    }
    return {s};
}

WeightPolynomial trace_series(const ComplexMatrix &a, int order) {
    return trace_series(z_polynomial(a), order);
}

std::string WeightMonomial::str() const {
    std::string out;
    for (const auto &[a, b] : factors) {
        out += index_label(a, b);
    }
    return out.empty() ? "1" : out;
}

Amplitude WeightMonomial::evaluate(const RuleTable &rule) const {
    Amplitude v = 1;
    for (const auto &[a, b] : factors) {
        v *= inner(rule, a, b);
    }
    return v;
}

int longest_path_length(int q, int k) {
    size_t side = ipow(q, k - 1);
    return static_cast<int>(side * side - side + 1);
}

std::vector<WeightMonomial> path_monomials(int q, int k, int length) {
    if (length < 1) {
        throw InputError("path length must be at least 1");
    }
    if (q < 2 || k < 1) {
        throw InputError("path_monomials needs q >= 2 and k >= 1");
    }
    size_t side = ipow(q, k - 1);
    size_t vertices = side * side;
    auto diagonal = [&](size_t v) { return v / side == v % side; };
    size_t cap = default_cycle_cap();
    size_t steps = 0;
    std::set<WeightMonomial> found;
    std::vector<bool> seen(vertices, false);
    std::vector<std::pair<size_t, size_t>> path;
    auto dfs = [&](auto &&self, size_t v) -> void {
        size_t a = v / side, b = v % side;
        for (int x = 0; x < q; x++) {
            for (int y = 0; y < q; y++) {
                size_t left = a * q + x, right = b * q + y;
                if (left == right) {
                    continue;
                }
                if (++steps > cap) {
                    throw ResourceError("path enumeration exceeded the cap of " + std::to_string(cap) +
                                        " steps (raise it with QCA_CYCLE_CAP)");
                }
                size_t t = (left % side) * side + right % side;
                path.emplace_back(std::min(left, right), std::max(left, right));
                if (static_cast<int>(path.size()) == length) {
                    if (diagonal(t)) {
                        WeightMonomial m{path};
                        std::sort(m.factors.begin(), m.factors.end());
                        found.insert(std::move(m));
                    }
                } else if (!diagonal(t) && !seen[t]) {
                    seen[t] = true;
                    self(self, t);
                    seen[t] = false;
                }
                path.pop_back();
            }
        }
    };
    for (size_t s = 0; s < vertices; s++) {
        if (diagonal(s)) {
            dfs(dfs, s);
        }
    }
    return {found.begin(), found.end()};
}

std::vector<WeightMonomial> path_monomials(const RuleTable &rule, int length) {
    return path_monomials(rule.q(), rule.k(), length);
}

}  // namespace qca
