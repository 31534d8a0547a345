#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rspin {

/// Integer power series truncated at degree `cutoff` (inclusive). All
/// arithmetic is exact; coefficient overflow throws std::overflow_error.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int cutoff);
    TruncatedSeries(int cutoff, std::vector<std::int64_t> coeffs);

    static TruncatedSeries one(int cutoff) { return monomial(cutoff, 0); }
    static TruncatedSeries monomial(int cutoff, int degree, std::int64_t coeff = 1);
    /// A polynomial given lowest degree first; terms above the cutoff are dropped.
    static TruncatedSeries polynomial(int cutoff, std::span<const std::int64_t> coeffs);

    int cutoff() const { return cutoff_; }
    std::int64_t operator[](int degree) const;
    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

    void add_at(int degree, std::int64_t value);

    TruncatedSeries& operator+=(const TruncatedSeries& other);
    TruncatedSeries& operator-=(const TruncatedSeries& other);
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries scaled(std::int64_t c) const;

    /// Multiply by t^k, dropping everything pushed past the cutoff.
    TruncatedSeries shifted(int k) const;
    /// Multiply by 1/(1 - t^d).
    TruncatedSeries divided_by_one_minus(int d) const;

    std::optional<int> first_nonzero() const;
    bool is_zero() const { return !first_nonzero().has_value(); }
    /// Same coefficients through min(cutoffs).
    bool agrees_with(const TruncatedSeries& other) const;
    TruncatedSeries truncated(int new_cutoff) const;

    bool operator==(const TruncatedSeries&) const = default;

private:
    int cutoff_;
    std::vector<std::int64_t> coeffs_;
};

enum class SeriesOp { add, sub, mul, shift_by_t };

SeriesOp parse_series_op(std::string_view name);

/// Truncated ring operation; `b` is ignored for shift_by_t. Cutoffs must match.
TruncatedSeries arith(const TruncatedSeries& a, const TruncatedSeries& b, SeriesOp op);

/// Product of 1/(1 - t^d) over the multiset `degrees`. Degrees above the
/// cutoff contribute nothing, so the truncation is exact.
TruncatedSeries from_denominators(std::span<const int> degrees, int cutoff);

/// Degrees 2^k - 1 for k >= first_k that do not exceed the cutoff.
std::vector<int> milnor_degrees(int first_k, int cutoff);

enum class NamedSeries { A, A1, E1, A_mod_A1, A_mod_E1, G, E2ku, BC2, EM_wedge };

NamedSeries parse_named_series(std::string_view name);
std::string to_string(NamedSeries name);
const std::vector<NamedSeries>& all_named_series();

/// Poincare series of the Steenrod algebra, its subalgebras A(1) and E(1),
/// their quotients, the wedge G = sum_k Sigma^{4k} A, the E_2 page of the
/// Borel spectral sequence for Real connective K-theory, and H^*(BC_2).
TruncatedSeries named_series(NamedSeries name, int cutoff);

struct IdentityCheck {
    std::string name;
    TruncatedSeries difference;  // lhs - rhs
    std::optional<int> first_offending_degree;

    bool holds() const { return !first_offending_degree.has_value(); }
};

struct PoincareIdentityReport {
    int cutoff;
    IdentityCheck main;  // P_G - P_ko - t P_E2
    std::vector<IdentityCheck> consistency;

    bool holds() const;
};

/// Checks P_G - P_ko - t*P_E2 = 0 and the quotient consistency relations
/// P_ko*P_A(1) = P_A, P_A//E(1)*P_E(1) = P_A, P_E2 = P_BC2*P_A//E(1).
PoincareIdentityReport verify_poincare_identity(int cutoff);

/// Same check with a caller-supplied replacement for P_ko in the main identity.
PoincareIdentityReport verify_poincare_identity(int cutoff, const TruncatedSeries& ko_override);

}  // namespace rspin
