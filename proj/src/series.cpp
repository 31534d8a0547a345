#include "rspin/series.hpp"

#include <stdexcept>

#include "rspin/errors.hpp"

namespace rspin {

using detail::checked_add;
using detail::checked_mul;
using detail::checked_sub;

namespace {

void require_same_cutoff(const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (a.cutoff() != b.cutoff())
        throw std::invalid_argument("series cutoff mismatch: " + std::to_string(a.cutoff()) + " vs " +
                                    std::to_string(b.cutoff()));
}

}  // namespace

TruncatedSeries::TruncatedSeries(int cutoff) : cutoff_(cutoff)
{
    if (cutoff < 0)
        throw std::invalid_argument("series cutoff must be nonnegative");
    coeffs_.assign(static_cast<std::size_t>(cutoff) + 1, 0);
}

TruncatedSeries::TruncatedSeries(int cutoff, std::vector<std::int64_t> coeffs) : cutoff_(cutoff), coeffs_(std::move(coeffs))
{
    if (cutoff < 0)
        throw std::invalid_argument("series cutoff must be nonnegative");
    if (coeffs_.size() != static_cast<std::size_t>(cutoff) + 1)
        throw std::invalid_argument("series with cutoff " + std::to_string(cutoff) + " needs " +
                                    std::to_string(cutoff + 1) + " coefficients, got " +
                                    std::to_string(coeffs_.size()));
}

TruncatedSeries TruncatedSeries::monomial(int cutoff, int degree, std::int64_t coeff)
{
    if (degree < 0)
        throw std::invalid_argument("monomial degree must be nonnegative");
    TruncatedSeries s(cutoff);
    if (degree <= cutoff)
        s.coeffs_[degree] = coeff;
    return s;
}

TruncatedSeries TruncatedSeries::polynomial(int cutoff, std::span<const std::int64_t> coeffs)
{
    TruncatedSeries s(cutoff);
    for (std::size_t i = 0; i < coeffs.size() && i <= static_cast<std::size_t>(cutoff); ++i)
        s.coeffs_[i] = coeffs[i];
    return s;
}

std::int64_t TruncatedSeries::operator[](int degree) const
{
    if (degree < 0 || degree > cutoff_)
        throw std::out_of_range("degree " + std::to_string(degree) + " outside series cutoff " +
                                std::to_string(cutoff_));
    return coeffs_[degree];
}

void TruncatedSeries::add_at(int degree, std::int64_t value)
{
    if (degree < 0 || degree > cutoff_)
        throw std::out_of_range("degree " + std::to_string(degree) + " outside series cutoff " +
                                std::to_string(cutoff_));
    coeffs_[degree] = checked_add(coeffs_[degree], value);
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other)
{
    require_same_cutoff(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] = checked_add(coeffs_[i], other.coeffs_[i]);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other)
{
    require_same_cutoff(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] = checked_sub(coeffs_[i], other.coeffs_[i]);
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
{
    require_same_cutoff(a, b);
    TruncatedSeries r(a.cutoff());
    const int n = a.cutoff();
    for (int i = 0; i <= n; ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b.coeffs_[j] != 0)
                r.coeffs_[i + j] = checked_add(r.coeffs_[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::scaled(std::int64_t c) const
{
    TruncatedSeries r = *this;
    for (auto& x : r.coeffs_)
        x = checked_mul(x, c);
    return r;
}

TruncatedSeries TruncatedSeries::shifted(int k) const
{
    if (k < 0)
        throw std::invalid_argument("shift must be nonnegative");
    TruncatedSeries r(cutoff_);
    for (int i = 0; i + k <= cutoff_; ++i)
        r.coeffs_[i + k] = coeffs_[i];
    return r;
}

TruncatedSeries TruncatedSeries::divided_by_one_minus(int d) const
{
    if (d <= 0)
        throw std::invalid_argument("factor 1/(1 - t^" + std::to_string(d) + ") is not invertible");
    TruncatedSeries r = *this;
    for (int i = d; i <= cutoff_; ++i)
        r.coeffs_[i] = checked_add(r.coeffs_[i], r.coeffs_[i - d]);
    return r;
}

std::optional<int> TruncatedSeries::first_nonzero() const
{
    for (int i = 0; i <= cutoff_; ++i)
        if (coeffs_[i] != 0)
            return i;
    return std::nullopt;
}

bool TruncatedSeries::agrees_with(const TruncatedSeries& other) const
{
    const int n = std::min(cutoff_, other.cutoff_);
    for (int i = 0; i <= n; ++i)
        if (coeffs_[i] != other.coeffs_[i])
            return false;
    return true;
}

TruncatedSeries TruncatedSeries::truncated(int new_cutoff) const
{
    if (new_cutoff > cutoff_)
        throw std::invalid_argument("cannot extend a truncated series past its cutoff");
    return TruncatedSeries(new_cutoff, std::vector<std::int64_t>(coeffs_.begin(), coeffs_.begin() + new_cutoff + 1));
}

SeriesOp parse_series_op(std::string_view name)
{
    if (name == "add")
        return SeriesOp::add;
    if (name == "sub")
        return SeriesOp::sub;
    if (name == "mul")
        return SeriesOp::mul;
    if (name == "shift_by_t")
        return SeriesOp::shift_by_t;
    throw std::invalid_argument("unknown series operation '" + std::string(name) + "'");
}

TruncatedSeries arith(const TruncatedSeries& a, const TruncatedSeries& b, SeriesOp op)
{
    require_same_cutoff(a, b);
    switch (op) {
    case SeriesOp::add:
        return a + b;
    case SeriesOp::sub:
        return a - b;
    case SeriesOp::mul:
        return a * b;
    case SeriesOp::shift_by_t:
        return a.shifted(1);
    }
    throw std::logic_error("unreachable");
}

TruncatedSeries from_denominators(std::span<const int> degrees, int cutoff)
{
    TruncatedSeries r = TruncatedSeries::one(cutoff);
    for (int d : degrees) {
        if (d <= 0)
            throw std::invalid_argument("factor 1/(1 - t^" + std::to_string(d) + ") is not invertible");
        if (d <= cutoff)
            r = r.divided_by_one_minus(d);
    }
    return r;
}

std::vector<int> milnor_degrees(int first_k, int cutoff)
{
    std::vector<int> out;
    for (int k = first_k; k < 31; ++k) {
        int d = (1 << k) - 1;
        if (d > cutoff)
            break;
        out.push_back(d);
    }
    return out;
}

namespace {

struct NamedEntry {
    NamedSeries name;
    const char* text;
};

constexpr NamedEntry kNames[] = {
    {NamedSeries::A, "A"},
    {NamedSeries::A1, "A1"},
    {NamedSeries::E1, "E1"},
    {NamedSeries::A_mod_A1, "A_mod_A1"},
    {NamedSeries::A_mod_E1, "A_mod_E1"},
    {NamedSeries::G, "G"},
    {NamedSeries::E2ku, "E2ku"},
    {NamedSeries::BC2, "BC2"},
    {NamedSeries::EM_wedge, "EM_wedge"},
};

std::vector<int> with_milnor_tail(std::vector<int> head, int first_k, int cutoff)
{
    for (int d : milnor_degrees(first_k, cutoff))
        head.push_back(d);
    return head;
}

}  // namespace

NamedSeries parse_named_series(std::string_view name)
{
    for (const auto& e : kNames)
        if (name == e.text)
            return e.name;
    throw std::invalid_argument("unknown named series '" + std::string(name) + "'");
}

std::string to_string(NamedSeries name)
{
    for (const auto& e : kNames)
        if (e.name == name)
            return e.text;
    throw std::logic_error("unreachable");
}

const std::vector<NamedSeries>& all_named_series()
{
    static const std::vector<NamedSeries> names = [] {
        std::vector<NamedSeries> v;
        for (const auto& e : kNames)
            v.push_back(e.name);
        return v;
    }();
    return names;
}

TruncatedSeries named_series(NamedSeries name, int cutoff)
{
    switch (name) {
    case NamedSeries::A:
        return from_denominators(milnor_degrees(1, cutoff), cutoff);
    case NamedSeries::A1: {
        // (1+t)(1+t^2)(1+t^3): eight basis elements, top class in degree 6.
        const std::int64_t p[] = {1, 1, 1, 2, 1, 1, 1};
        return TruncatedSeries::polynomial(cutoff, p);
    }
    case NamedSeries::E1: {
        const std::int64_t p[] = {1, 1, 0, 1, 1};
        return TruncatedSeries::polynomial(cutoff, p);
    }
    case NamedSeries::A_mod_A1:
        return from_denominators(with_milnor_tail({6, 4}, 3, cutoff), cutoff);
    case NamedSeries::A_mod_E1:
        return from_denominators(with_milnor_tail({2, 6}, 3, cutoff), cutoff);
    case NamedSeries::G:
    case NamedSeries::EM_wedge:
        return from_denominators(with_milnor_tail({4}, 1, cutoff), cutoff);
    case NamedSeries::E2ku:
        return from_denominators(with_milnor_tail({6, 2, 1}, 3, cutoff), cutoff);
    case NamedSeries::BC2: {
        const int d[] = {1};
        return from_denominators(d, cutoff);
    }
    }
    throw std::invalid_argument("unknown named series");
}

bool PoincareIdentityReport::holds() const
{
    if (!main.holds())
        return false;
    for (const auto& c : consistency)
        if (!c.holds())
            return false;
    return true;
}

namespace {

IdentityCheck make_check(std::string name, TruncatedSeries lhs, const TruncatedSeries& rhs)
{
    lhs -= rhs;
    auto first = lhs.first_nonzero();
    return IdentityCheck{std::move(name), std::move(lhs), first};
}

}  // namespace

PoincareIdentityReport verify_poincare_identity(int cutoff, const TruncatedSeries& ko_override)
{
    if (ko_override.cutoff() != cutoff)
        throw std::invalid_argument("P_ko override has cutoff " + std::to_string(ko_override.cutoff()) +
                                    ", expected " + std::to_string(cutoff));
    const auto A = named_series(NamedSeries::A, cutoff);
    const auto A1 = named_series(NamedSeries::A1, cutoff);
    const auto E1 = named_series(NamedSeries::E1, cutoff);
    const auto ko = named_series(NamedSeries::A_mod_A1, cutoff);
    const auto AmodE1 = named_series(NamedSeries::A_mod_E1, cutoff);
    const auto G = named_series(NamedSeries::G, cutoff);
    const auto E2 = named_series(NamedSeries::E2ku, cutoff);
    const auto BC2 = named_series(NamedSeries::BC2, cutoff);

    PoincareIdentityReport report{cutoff, make_check("P_G - P_ko - t*P_E2", G - ko_override, E2.shifted(1)), {}};
    report.consistency.push_back(make_check("P_ko*P_A1 - P_A", ko * A1, A));
    report.consistency.push_back(make_check("P_A_mod_E1*P_E1 - P_A", AmodE1 * E1, A));
    report.consistency.push_back(make_check("P_E2 - P_BC2*P_A_mod_E1", E2, BC2 * AmodE1));
    return report;
}

PoincareIdentityReport verify_poincare_identity(int cutoff)
{
    return verify_poincare_identity(cutoff, named_series(NamedSeries::A_mod_A1, cutoff));
}

}  // namespace rspin
