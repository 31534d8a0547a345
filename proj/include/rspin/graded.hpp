#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace rspin {

/// A group of the shape Z^a + (Z/2)^b. Every group in scope is 2-local with
/// torsion of exponent 2, so two ranks describe it completely.
struct ElementaryGroup {
    std::int64_t free_rank = 0;
    std::int64_t two_rank = 0;

    static ElementaryGroup make(std::int64_t free_rank, std::int64_t two_rank);
    static ElementaryGroup integers(std::int64_t n = 1) { return make(n, 0); }
    static ElementaryGroup twos(std::int64_t n = 1) { return make(0, n); }

    bool is_zero() const { return free_rank == 0 && two_rank == 0; }
    std::string to_string() const;

    ElementaryGroup& operator+=(const ElementaryGroup& other);
    friend ElementaryGroup operator+(ElementaryGroup a, const ElementaryGroup& b) { return a += b; }
    ElementaryGroup scaled(std::int64_t multiplicity) const;

    auto operator<=>(const ElementaryGroup&) const = default;
};

enum class Growth { stable, grows_with_cutoff };

std::string to_string(Growth g);
Growth parse_growth(const std::string& s);

/// Closed degree interval [lo, hi].
struct DegreeWindow {
    int lo = 0;
    int hi = 0;

    DegreeWindow() = default;
    DegreeWindow(int lo, int hi);

    bool contains(int d) const { return lo <= d && d <= hi; }
    int size() const { return hi - lo + 1; }
    std::string to_string() const;

    auto operator<=>(const DegreeWindow&) const = default;
};

/// Groups indexed by the degrees of an explicit window. Degrees outside the
/// window are undefined: reading them throws rather than returning zero.
class GradedAbelianGroup {
public:
    explicit GradedAbelianGroup(DegreeWindow window);

    const DegreeWindow& window() const { return window_; }
    const ElementaryGroup& at(int degree) const;
    Growth growth(int degree) const;

    void set(int degree, ElementaryGroup g, Growth growth = Growth::stable);
    void add(int degree, const ElementaryGroup& g);
    void set_growth(int degree, Growth growth);

    /// True when every degree is zero and stable.
    bool is_zero() const;

    bool operator==(const GradedAbelianGroup&) const = default;

private:
    std::size_t index(int degree) const;

    DegreeWindow window_;
    std::vector<ElementaryGroup> groups_;
    std::vector<Growth> growth_;
};

inline constexpr int kNoTruncation = std::numeric_limits<int>::min();

/// Degreewise sum; windows must match exactly.
GradedAbelianGroup direct_sum(const GradedAbelianGroup& a, const GradedAbelianGroup& b);

/// Suspension by d: the output at n is the input at n - d.
GradedAbelianGroup shift(const GradedAbelianGroup& a, int d);

/// Zero out every degree strictly below n. kNoTruncation leaves a unchanged.
GradedAbelianGroup truncate_below(const GradedAbelianGroup& a, int n);

}  // namespace rspin
