#ifndef QCA_RULE_H
#define QCA_RULE_H

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qca {

using Amplitude = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;

/// q^n for small non-negative n.
size_t ipow(size_t q, size_t n);

/// A string of cells over {0,...,q-1}. The leftmost cell is the most significant
/// digit of the index, so for q=2 the string 101 has index 5.
class LocalConfig {
   public:
    LocalConfig() = default;
    LocalConfig(int q, std::vector<int> cells);

    static LocalConfig from_index(int q, int length, size_t index);
    /// Parses digits 0-9 then a-z; the length is whatever the string holds.
    static LocalConfig parse(int q, std::string_view text);

    int q() const {
        return q_;
    }
    int size() const {
        return static_cast<int>(cells_.size());
    }
    int operator[](int i) const {
        return cells_[i];
    }
    const std::vector<int> &cells() const {
        return cells_;
    }
    size_t index() const;
    std::string str() const;

    LocalConfig reversed() const;
    LocalConfig slice(int begin, int end) const;
    LocalConfig concat(const LocalConfig &other) const;

    bool operator==(const LocalConfig &other) const = default;
    auto operator<=>(const LocalConfig &other) const = default;

   private:
    int q_ = 2;
    std::vector<int> cells_;
};

char digit_char(int d);

/// The local rule f(i|lambda) of a one dimensional automaton with q states and
/// neighborhood size k. Immutable once built.
class RuleTable {
   public:
    /// `amplitudes[c * q + i]` is f(i | config with index c).
    RuleTable(int q, int k, std::vector<Amplitude> amplitudes, double tolerance = kDefaultTolerance);

    int q() const {
        return q_;
    }
    int k() const {
        return k_;
    }
    double tolerance() const {
        return tolerance_;
    }
    size_t config_count() const {
        return config_count_;
    }

    Amplitude operator()(int out, size_t config) const {
        return amplitudes_[config * q_ + out];
    }
    Amplitude operator()(int out, const LocalConfig &config) const;
    std::span<const Amplitude> vector(size_t config) const {
        return {amplitudes_.data() + config * q_, static_cast<size_t>(q_)};
    }
    const std::vector<Amplitude> &data() const {
        return amplitudes_;
    }

    LocalConfig config(size_t index) const {
        return LocalConfig::from_index(q_, k_, index);
    }
    /// Checks q and length against the rule and returns the index.
    size_t index_of(const LocalConfig &config) const;

    bool near(Amplitude a, Amplitude b) const;
    bool is_zero(Amplitude a) const {
        return near(a, 0.0);
    }
    bool is_one(Amplitude a) const {
        return near(a, 1.0);
    }

    /// First output with amplitude 1, or -1 when there is none.
    int deterministic_output(size_t config) const;

    RuleTable with_tolerance(double tolerance) const;

   private:
    int q_;
    int k_;
    size_t config_count_;
    double tolerance_;
    std::vector<Amplitude> amplitudes_;
};

/// sum_i conj(f(i|a)) f(i|b)
Amplitude inner(const RuleTable &rule, size_t a, size_t b);
Amplitude inner(const RuleTable &rule, const LocalConfig &a, const LocalConfig &b);

/// (Pf)(i|lambda) = f(i|reversed lambda)
RuleTable parity_transform(const RuleTable &rule);

enum class TransposeSide { kInput, kOutput, kBoth };

/// Relabels states by `perm`: on the input side every cell of lambda is mapped,
/// on the output side the components of every amplitude vector are.
RuleTable state_transpose(const RuleTable &rule, TransposeSide side, std::span<const int> perm);

/// Indices of configurations with some component equal to 1 (within tolerance), ascending.
std::vector<size_t> big_set(const RuleTable &rule);

/// True when every amplitude vector is a standard basis vector.
bool is_deterministic(const RuleTable &rule);

}  // namespace qca

#endif
