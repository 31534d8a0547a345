#include "rspin/graded.hpp"

#include <sstream>
#include <stdexcept>

#include "rspin/errors.hpp"

namespace rspin {

ElementaryGroup ElementaryGroup::make(std::int64_t free_rank, std::int64_t two_rank)
{
    if (free_rank < 0 || two_rank < 0)
        throw std::invalid_argument("group ranks must be nonnegative");
    return ElementaryGroup{free_rank, two_rank};
}

std::string ElementaryGroup::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1)
            os << "^" << free_rank;
    }
    if (two_rank > 0) {
        if (free_rank > 0)
            os << " + ";
        if (two_rank > 1)
            os << "(Z/2)^" << two_rank;
        else
            os << "Z/2";
    }
    return os.str();
}

ElementaryGroup& ElementaryGroup::operator+=(const ElementaryGroup& other)
{
    free_rank = detail::checked_add(free_rank, other.free_rank);
    two_rank = detail::checked_add(two_rank, other.two_rank);
    return *this;
}

ElementaryGroup ElementaryGroup::scaled(std::int64_t multiplicity) const
{
    if (multiplicity < 0)
        throw std::invalid_argument("multiplicity must be nonnegative");
    return {detail::checked_mul(free_rank, multiplicity), detail::checked_mul(two_rank, multiplicity)};
}

std::string to_string(Growth g)
{
    return g == Growth::stable ? "stable" : "grows_with_cutoff";
}

Growth parse_growth(const std::string& s)
{
    if (s == "stable")
        return Growth::stable;
    if (s == "grows_with_cutoff")
        return Growth::grows_with_cutoff;
    throw std::invalid_argument("unknown growth flag '" + s + "'");
}

DegreeWindow::DegreeWindow(int lo_, int hi_) : lo(lo_), hi(hi_)
{
    if (lo > hi)
        throw std::invalid_argument("degree window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is empty");
}

std::string DegreeWindow::to_string() const
{
    return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

GradedAbelianGroup::GradedAbelianGroup(DegreeWindow window)
    : window_(window), groups_(window.size()), growth_(window.size(), Growth::stable)
{
}

std::size_t GradedAbelianGroup::index(int degree) const
{
    if (!window_.contains(degree))
        throw std::out_of_range("degree " + std::to_string(degree) + " outside window " + window_.to_string());
    return static_cast<std::size_t>(degree - window_.lo);
}

const ElementaryGroup& GradedAbelianGroup::at(int degree) const
{
    return groups_[index(degree)];
}

Growth GradedAbelianGroup::growth(int degree) const
{
    return growth_[index(degree)];
}

void GradedAbelianGroup::set(int degree, ElementaryGroup g, Growth growth)
{
    auto i = index(degree);
    groups_[i] = ElementaryGroup::make(g.free_rank, g.two_rank);
    growth_[i] = growth;
}

void GradedAbelianGroup::add(int degree, const ElementaryGroup& g)
{
    groups_[index(degree)] += g;
}

void GradedAbelianGroup::set_growth(int degree, Growth growth)
{
    growth_[index(degree)] = growth;
}

bool GradedAbelianGroup::is_zero() const
{
    for (std::size_t i = 0; i < groups_.size(); ++i)
        if (!groups_[i].is_zero() || growth_[i] != Growth::stable)
            return false;
    return true;
}

GradedAbelianGroup direct_sum(const GradedAbelianGroup& a, const GradedAbelianGroup& b)
{
    if (a.window() != b.window())
        throw std::invalid_argument("direct_sum: window mismatch " + a.window().to_string() + " vs " +
                                    b.window().to_string());
    GradedAbelianGroup result(a.window());
    for (int d = a.window().lo; d <= a.window().hi; ++d) {
        auto growth = (a.growth(d) == Growth::grows_with_cutoff || b.growth(d) == Growth::grows_with_cutoff)
                          ? Growth::grows_with_cutoff
                          : Growth::stable;
        result.set(d, a.at(d) + b.at(d), growth);
    }
    return result;
}

GradedAbelianGroup shift(const GradedAbelianGroup& a, int d)
{
    GradedAbelianGroup result(DegreeWindow(a.window().lo + d, a.window().hi + d));
    for (int n = a.window().lo; n <= a.window().hi; ++n)
        result.set(n + d, a.at(n), a.growth(n));
    return result;
}

GradedAbelianGroup truncate_below(const GradedAbelianGroup& a, int n)
{
    GradedAbelianGroup result = a;
    if (n == kNoTruncation)
        return result;
    for (int d = a.window().lo; d <= a.window().hi && d < n; ++d)
        result.set(d, ElementaryGroup{}, Growth::stable);
    return result;
}

}  // namespace rspin
