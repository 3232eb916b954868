#include "qca/surjectivity.h"


#include "qca/errors.h"

namespace qca {

Amplitude bordered_amplitude(const RuleTable &rule, const LocalConfig &out, const LocalConfig &in) {
    int k = rule.k();
    if (in.size() != out.size() + k - 1 || in.q() != rule.q() || out.q() != rule.q()) {
        throw InputError("bordered amplitude needs an input exactly k-1 cells longer than the output");
    }
    Amplitude product = 1;
    for (int x = 0; x < out.size(); x++) {
        size_t window = 0;
        for (int j = 0; j < k; j++) {
            window = window * rule.q() + in[x + j];
        }
        product *= rule(out[x], window);
    }
    return product;
}

PhiMatrix phi_matrix(const RuleTable &rule, const LocalConfig &gamma) {
    if (gamma.size() != rule.k() - 1 || gamma.q() != rule.q()) {
        throw InputError("gamma must have length k-1 = " + std::to_string(rule.k() - 1));
    }
    int q = rule.q();
    ComplexMatrix m(q, q);
    size_t base = gamma.index() * q;
    for (int i = 0; i < q; i++) {
        for (int j = 0; j < q; j++) {
            m(i, j) = rule(j, base + i);
        }
    }
    return {gamma, m};
}

namespace {

void require_in_sector(const RuleTable &rule, const DeterministicSector &sector, const LocalConfig &c,
                       const char *name) {
    size_t index = rule.index_of(c);
    if (!sector.contains(index)) {
        throw PreconditionError(std::string(name) + "=" + c.str() + " is not in the deterministic sector");
    }
}

void require_size(const RuleTable &rule, int n, int max_n) {
    if (n < 0 || n > max_n || ipow(rule.q(), n) > 4096) {
        throw PreconditionError("interior length n=" + std::to_string(n) + " out of range");
    }
}

void require_ends(const RuleTable &rule, const LocalConfig &lambda, const LocalConfig &rho,
                  const LocalConfig &rho_prime) {
    auto sector = deterministic_sector(rule);
    require_in_sector(rule, sector, lambda, "lambda");
    require_in_sector(rule, sector, rho, "rho");
    require_in_sector(rule, sector, rho_prime, "rhoPrime");
    if (!rule.is_one(rule(rho_prime[rule.k() - 1], rho))) {
        throw PreconditionError("f(" + std::string(1, digit_char(rho_prime[rule.k() - 1])) + "|" + rho.str() +
                                ") is not 1");
    }
}

// lambda_{n+1} .. lambda_{k-1} followed by the last k-1-(that length) cells of alpha;
// in both regimes this is the last k-1 cells of lambda_1..lambda_{k-1} alpha.
LocalConfig tail_window(const LocalConfig &lambda, const LocalConfig &alpha) {
    int k = lambda.size();
    LocalConfig joined = lambda.slice(1, k).concat(alpha);
    return joined.slice(joined.size() - (k - 1), joined.size());
}

Amplitude ipow_amplitude(Amplitude a, size_t e) {
    Amplitude r = 1;
    while (e--) {
        r *= a;
    }
    return r;
}

}  // namespace

RestrictedOperator restricted_f(const RuleTable &rule, const LocalConfig &lambda, const LocalConfig &rho,
                                const LocalConfig &rho_prime, int n) {
    require_size(rule, n, 12);
    require_ends(rule, lambda, rho, rho_prime);
    int q = rule.q();
    int k = rule.k();
    size_t dim = ipow(q, n);
    LocalConfig left = lambda.slice(1, k);
    LocalConfig right_in = rho.slice(0, k - 1);
    LocalConfig right_out = rho_prime.slice(0, k - 1);
    ComplexMatrix m(dim, dim);
    for (size_t a = 0; a < dim; a++) {
        LocalConfig in = left.concat(LocalConfig::from_index(q, n, a)).concat(right_in);
        for (size_t b = 0; b < dim; b++) {
            m(b, a) = bordered_amplitude(rule, LocalConfig::from_index(q, n, b).concat(right_out), in);
        }
    }
    return {lambda, rho, rho_prime, n, m};
}

ReducedMatrix reduced_f(const RuleTable &rule, const LocalConfig &lambda, int n) {
    require_size(rule, n, 12);
    auto sector = deterministic_sector(rule);
    require_in_sector(rule, sector, lambda, "lambda");
    int q = rule.q();
    ComplexMatrix m = ComplexMatrix::Ones(1, 1);
    for (int step = 0; step < n; step++) {
        size_t dim = m.rows();
        ComplexMatrix next(dim * q, dim * q);
        for (size_t a = 0; a < dim; a++) {
            ComplexMatrix phi = phi_matrix(rule, tail_window(lambda, LocalConfig::from_index(q, step, a))).entries;
            for (size_t b = 0; b < dim; b++) {
                for (int i = 0; i < q; i++) {
                    for (int j = 0; j < q; j++) {
                        next(b * q + j, a * q + i) = m(b, a) * phi(i, j);
                    }
                }
            }
        }
        m = std::move(next);
    }
    return {lambda, n, m};
}

Amplitude column_factor_product(const RuleTable &rule, const LocalConfig &lambda, const LocalConfig &rho,
                                const LocalConfig &rho_prime, int n) {
    int q = rule.q();
    int k = rule.k();
    LocalConfig right_in = rho.slice(0, k - 1);
    LocalConfig right_out = rho_prime.slice(0, k - 1);
    Amplitude product = 1;
    if (n >= k - 1) {
        size_t reps = ipow(q, n - k + 1);
        for (size_t g = 0; g < ipow(q, k - 1); g++) {
            LocalConfig gamma = LocalConfig::from_index(q, k - 1, g);
            product *= ipow_amplitude(bordered_amplitude(rule, right_out, gamma.concat(right_in)), reps);
        }
    } else {
        for (size_t a = 0; a < ipow(q, n); a++) {
            LocalConfig in = lambda.slice(n + 1, k).concat(LocalConfig::from_index(q, n, a)).concat(right_in);
            product *= bordered_amplitude(rule, right_out, in);
        }
    }
    return product;
}

Amplitude tensor_factor_product(const RuleTable &rule, const LocalConfig &lambda, int n) {
    int q = rule.q();
    int k = rule.k();
    Amplitude product = 1;
    if (n >= k - 1) {
        size_t reps = ipow(q, n - k + 1);
        for (size_t g = 0; g < ipow(q, k - 1); g++) {
            auto phi = phi_matrix(rule, LocalConfig::from_index(q, k - 1, g));
            product *= ipow_amplitude(determinant(phi.entries), reps);
        }
    } else {
        for (size_t a = 0; a < ipow(q, n); a++) {
            LocalConfig gamma = lambda.slice(n + 1, k).concat(LocalConfig::from_index(q, n, a));
            product *= determinant(phi_matrix(rule, gamma).entries);
        }
    }
    return product;
}

bool det_factorization_check(const RuleTable &rule, const LocalConfig &lambda, const LocalConfig &rho,
                             const LocalConfig &rho_prime, int n, int max_n) {
    require_size(rule, n, max_n);
    auto restricted = restricted_f(rule, lambda, rho, rho_prime, n);
    auto dim = restricted.matrix.rows();
    double tol = rule.tolerance() * static_cast<double>(dim);
    Amplitude direct = determinant(restricted.matrix);
    Amplitude reduced = determinant(reduced_f(rule, lambda, n).matrix);
    Amplitude factored = column_factor_product(rule, lambda, rho, rho_prime, n) * reduced;
    if (std::abs(direct - factored) > tol) {
        return false;
    }
    Amplitude previous = 1;
    for (int m = 0; m < n; m++) {
        Amplitude next = determinant(reduced_f(rule, lambda, m + 1).matrix);
        Amplitude predicted = tensor_factor_product(rule, lambda, m) * ipow_amplitude(previous, rule.q());
        double t = rule.tolerance() * static_cast<double>(ipow(rule.q(), m + 1));
        if (std::abs(next - predicted) > t) {
            return false;
        }
        previous = next;
    }
    return true;
}

std::vector<ConstraintReport> check_surjectivity(const RuleTable &rule, const DeterministicSector &sector,
                                                 size_t max_reports) {
    if (sector.empty()) {
        throw NoDeterministicSector();
    }
    if (sector.q != rule.q() || sector.k != rule.k()) {
        throw InputError("deterministic sector does not match the rule dimensions");
    }
    int q = rule.q();
    int k = rule.k();
    size_t gammas = ipow(q, k - 1);
    std::vector<ConstraintReport> reports;

    for (size_t g = 0; g < gammas && reports.size() < max_reports; g++) {
        LocalConfig gamma = LocalConfig::from_index(q, k - 1, g);
        Amplitude det = determinant(phi_matrix(rule, gamma).entries);
        if (is_singular(det, rule.tolerance(), q)) {
            reports.push_back(make_report(ConditionId::kInfiniteSurjective,
                                          {WitnessKind::kPhiDeterminant, {"gamma=" + gamma.str()}}, det));
        }
    }

    // An output end rho' paired with an input end rho whose scalars vanish for
    // every gamma never arises from that rho; such pairs only count against the
    // rule when no rho at all produces rho'.
    auto witness = [&](const LocalConfig &gamma, const LocalConfig &rho, const LocalConfig &rho_prime,
                       Amplitude value) {
        LocalConfig out = rho_prime.slice(0, k - 1);
        LocalConfig in = gamma.concat(rho.slice(0, k - 1));
        std::vector<std::string> labels{"gamma=" + gamma.str(), "rho=" + rho.str(), "rhoPrime=" + rho_prime.str()};
        for (int x = 0; x < out.size(); x++) {
            LocalConfig window = in.slice(x, x + k);
            if (rule.is_zero(rule(out[x], window))) {
                labels.push_back("f(" + std::string(1, digit_char(out[x])) + "|" + window.str() + ")");
            }
        }
        return make_report(ConditionId::kInfiniteSurjective, {WitnessKind::kBorderedAmplitude, labels}, value);
    };
    for (size_t rp : sector.configs) {
        LocalConfig rho_prime = rule.config(rp);
        LocalConfig out = rho_prime.slice(0, k - 1);
        bool produced = false;
        std::vector<ConstraintReport> unproduced;
        for (size_t r : sector.configs) {
            LocalConfig rho = rule.config(r);
            if (!rule.is_one(rule(rho_prime[k - 1], r))) {
                continue;
            }
            std::vector<ConstraintReport> zeros;
            bool any_nonzero = false;
            for (size_t g = 0; g < gammas; g++) {
                LocalConfig gamma = LocalConfig::from_index(q, k - 1, g);
                Amplitude value = bordered_amplitude(rule, out, gamma.concat(rho.slice(0, k - 1)));
                if (rule.is_zero(value)) {
                    zeros.push_back(witness(gamma, rho, rho_prime, value));
                } else {
                    any_nonzero = true;
                }
            }
            if (any_nonzero) {
                produced = true;
                reports.insert(reports.end(), zeros.begin(), zeros.end());
            } else {
                unproduced.insert(unproduced.end(), zeros.begin(), zeros.end());
            }
        }
        if (!produced) {
            reports.insert(reports.end(), unproduced.begin(), unproduced.end());
        }
        if (reports.size() >= max_reports) {
            reports.resize(max_reports);
            break;
        }
    }
    return reports;
}

}  // namespace qca
