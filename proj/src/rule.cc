#include "qca/rule.h"

#include <cmath>

#include "qca/errors.h"

namespace qca {

size_t ipow(size_t q, size_t n) {
    size_t r = 1;
    while (n--) {
        r *= q;
    }
    return r;
}

char digit_char(int d) {
    return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10);
}

static void check_q(int q) {
    if (q < 2 || q > 36) {
        throw InputError("state count q must be in [2, 36], got " + std::to_string(q));
    }
}

LocalConfig::LocalConfig(int q, std::vector<int> cells) : q_(q), cells_(std::move(cells)) {
    check_q(q);
    for (int c : cells_) {
        if (c < 0 || c >= q) {
            throw InputError("cell value " + std::to_string(c) + " out of range for q=" + std::to_string(q));
        }
    }
}

LocalConfig LocalConfig::from_index(int q, int length, size_t index) {
    check_q(q);
    if (length < 0 || index >= ipow(q, length)) {
        throw InputError("configuration index " + std::to_string(index) + " out of range");
    }
    std::vector<int> cells(length);
    for (int j = length - 1; j >= 0; j--) {
        cells[j] = static_cast<int>(index % q);
        index /= q;
    }
    LocalConfig result;
    result.q_ = q;
    result.cells_ = std::move(cells);
    return result;
}

LocalConfig LocalConfig::parse(int q, std::string_view text) {
    check_q(q);
    std::vector<int> cells;
    for (char ch : text) {
        int d;
        if (ch >= '0' && ch <= '9') {
            d = ch - '0';
        } else if (ch >= 'a' && ch <= 'z') {
            d = ch - 'a' + 10;
        } else {
            throw InputError("bad character '" + std::string(1, ch) + "' in configuration \"" + std::string(text) + "\"");
        }
        if (d >= q) {
            throw InputError("state " + std::string(1, ch) + " out of range for q=" + std::to_string(q) +
                             " in configuration \"" + std::string(text) + "\"");
        }
        cells.push_back(d);
    }
    return LocalConfig(q, std::move(cells));
}

size_t LocalConfig::index() const {
    size_t r = 0;
    for (int c : cells_) {
        r = r * q_ + c;
    }
    return r;
}

std::string LocalConfig::str() const {
    std::string s;
    for (int c : cells_) {
        s += digit_char(c);
    }
    return s;
}

LocalConfig LocalConfig::reversed() const {
    return LocalConfig(q_, std::vector<int>(cells_.rbegin(), cells_.rend()));
}

LocalConfig LocalConfig::slice(int begin, int end) const {
    return LocalConfig(q_, std::vector<int>(cells_.begin() + begin, cells_.begin() + end));
}

LocalConfig LocalConfig::concat(const LocalConfig &other) const {
    if (other.q_ != q_) {
        throw InputError("cannot concatenate configurations over different state sets");
    }
    std::vector<int> cells = cells_;
    cells.insert(cells.end(), other.cells_.begin(), other.cells_.end());
    return LocalConfig(q_, std::move(cells));
}

RuleTable::RuleTable(int q, int k, std::vector<Amplitude> amplitudes, double tolerance)
    : q_(q), k_(k), tolerance_(tolerance), amplitudes_(std::move(amplitudes)) {
    check_q(q);
    if (k < 1) {
        throw InputError("neighborhood size k must be at least 1");
    }
    if (!(tolerance > 0) || !std::isfinite(tolerance)) {
        throw InputError("tolerance must be a positive finite number");
    }
    config_count_ = ipow(q, k);
    if (amplitudes_.size() != config_count_ * q) {
        throw InputError("rule table needs " + std::to_string(config_count_ * q) + " amplitudes, got " +
                         std::to_string(amplitudes_.size()));
    }
    for (size_t j = 0; j < amplitudes_.size(); j++) {
        if (!std::isfinite(amplitudes_[j].real()) || !std::isfinite(amplitudes_[j].imag())) {
            throw InputError("amplitude f(" + std::to_string(j % q) + "|" + config(j / q).str() + ") is not finite");
        }
    }
}

size_t RuleTable::index_of(const LocalConfig &config) const {
    if (config.q() != q_ || config.size() != k_) {
        throw InputError("configuration \"" + config.str() + "\" does not match rule dimensions q=" +
                         std::to_string(q_) + ", k=" + std::to_string(k_));
    }
    return config.index();
}

Amplitude RuleTable::operator()(int out, const LocalConfig &config) const {
    if (out < 0 || out >= q_) {
        throw InputError("output state " + std::to_string(out) + " out of range");
    }
    return (*this)(out, index_of(config));
}

bool RuleTable::near(Amplitude a, Amplitude b) const {
    return std::abs(a.real() - b.real()) <= tolerance_ && std::abs(a.imag() - b.imag()) <= tolerance_;
}

int RuleTable::deterministic_output(size_t config) const {
    for (int i = 0; i < q_; i++) {
        if (is_one((*this)(i, config))) {
            return i;
        }
    }
    return -1;
}

RuleTable RuleTable::with_tolerance(double tolerance) const {
    return RuleTable(q_, k_, amplitudes_, tolerance);
}

Amplitude inner(const RuleTable &rule, size_t a, size_t b) {
    Amplitude total = 0;
    for (int i = 0; i < rule.q(); i++) {
        total += std::conj(rule(i, a)) * rule(i, b);
    }
    return total;
}

Amplitude inner(const RuleTable &rule, const LocalConfig &a, const LocalConfig &b) {
    return inner(rule, rule.index_of(a), rule.index_of(b));
}

RuleTable parity_transform(const RuleTable &rule) {
    std::vector<Amplitude> out(rule.data().size());
    int q = rule.q();
    for (size_t c = 0; c < rule.config_count(); c++) {
        size_t src = rule.config(c).reversed().index();
        for (int i = 0; i < q; i++) {
            out[c * q + i] = rule(i, src);
        }
    }
    return RuleTable(q, rule.k(), std::move(out), rule.tolerance());
}

RuleTable state_transpose(const RuleTable &rule, TransposeSide side, std::span<const int> perm) {
    int q = rule.q();
    if (static_cast<int>(perm.size()) != q) {
        throw InputError("permutation must have exactly q entries");
    }
    std::vector<bool> seen(q, false);
    for (int p : perm) {
        if (p < 0 || p >= q || seen[p]) {
            throw InputError("state permutation is not a bijection");
        }
        seen[p] = true;
    }
    bool in = side != TransposeSide::kOutput;
    bool out = side != TransposeSide::kInput;
    std::vector<Amplitude> result(rule.data().size());
    for (size_t c = 0; c < rule.config_count(); c++) {
        size_t src = c;
        if (in) {
            std::vector<int> cells = rule.config(c).cells();
            for (int &x : cells) {
                x = perm[x];
            }
            src = LocalConfig(q, std::move(cells)).index();
        }
        for (int i = 0; i < q; i++) {
            result[c * q + i] = rule(out ? perm[i] : i, src);
        }
    }
    return RuleTable(q, rule.k(), std::move(result), rule.tolerance());
}

std::vector<size_t> big_set(const RuleTable &rule) {
    std::vector<size_t> result;
    for (size_t c = 0; c < rule.config_count(); c++) {
        if (rule.deterministic_output(c) >= 0) {
            result.push_back(c);
        }
    }
    return result;
}

bool is_deterministic(const RuleTable &rule) {
    for (size_t c = 0; c < rule.config_count(); c++) {
        int d = rule.deterministic_output(c);
        if (d < 0) {
            return false;
        }
        for (int i = 0; i < rule.q(); i++) {
            if (i != d && !rule.is_zero(rule(i, c))) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace qca
