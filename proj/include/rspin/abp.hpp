#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rspin/errors.hpp"
#include "rspin/graded.hpp"
#include "rspin/ktheory.hpp"
#include "rspin/series.hpp"

namespace rspin {

struct Partition {
    std::vector<int> parts;  // weakly decreasing, positive

    Partition() = default;
    explicit Partition(std::vector<int> parts);

    int weight() const;
    std::string to_string() const;
    bool operator==(const Partition&) const = default;
};

enum class PartitionFamily { P, P1 };  // P1: no part equal to 1

/// All partitions of weight <= weight_cutoff in the family, ordered by weight
/// and then by decreasing parts: (), (1), (2), (1,1), (3), (2,1), (1,1,1), ...
std::vector<Partition> partitions(int weight_cutoff, PartitionFamily family);

/// 4|I| for even weight, 4|I| - 2 for odd weight.
int n_I(const Partition& I);

enum class SplitObject { mspin, mspinc, mspinc_hfp };
enum class DeltaIndexBase { paper_m_ge_1, engine };

std::string to_string(SplitObject o);
SplitObject parse_split_object(std::string_view name);
std::string to_string(DeltaIndexBase b);
DeltaIndexBase parse_delta_index_base(std::string_view name);

/// Degrees of free A-module generators z with their multiplicities. When
/// `complete_through` is set the multiset is only known to be complete up to
/// that degree (e.g. it was extracted from a truncated series).
struct ZDegreeMultiset {
    std::map<int, std::int64_t> multiplicity;
    std::optional<int> complete_through;

    void add(int degree, std::int64_t count = 1);
    std::int64_t size() const;
    bool operator==(const ZDegreeMultiset&) const = default;
};

struct SummandDescriptor {
    enum class Kind { k_cover, em_shift, delta, borel_em };

    Kind kind = Kind::k_cover;
    SplitObject object = SplitObject::mspin;
    CoverSpec cover;              // k_cover
    Partition partition;          // k_cover, delta
    int z_degree = 0;             // em_shift, borel_em
    int index = 0;                // delta: m; borel_em: n
    std::int64_t multiplicity = 1;
    int degree = 0;               // stored degree; the cover level for k_cover

    /// The degree recomputed from the defining formula.
    int recomputed_degree() const;
    std::string formula() const;
    std::string kind_name() const;
    std::string to_string() const;
};

/// Every summand of the splitting of `object` that has nonzero homotopy in the
/// window, from partitions of weight <= weight_cutoff and the given z-degrees.
std::vector<SummandDescriptor> summand_inventory(SplitObject object, int weight_cutoff, const ZDegreeMultiset& z,
                                                 DegreeWindow window, DeltaIndexBase base = DeltaIndexBase::engine);

struct Contribution {
    int degree = 0;
    SummandDescriptor source;
    ElementaryGroup group;
};

struct ObjectHomotopy {
    GradedAbelianGroup groups;
    std::vector<Contribution> contributions;  // ordered by degree, then inventory order
};

/// Degreewise sum over the inventory. Degrees to which partitions of weight
/// above the cutoff (or z-degrees beyond a known-complete range) would add
/// are flagged grows_with_cutoff.
ObjectHomotopy homotopy_of_object(SplitObject object, int weight_cutoff, const ZDegreeMultiset& z,
                                  DegreeWindow window, DeltaIndexBase base = DeltaIndexBase::engine);

/// Degrees n_I - 4m in the window, for m >= 1; the engine base also admits the
/// m = 0 class when the cover 4|I| is 4 mod 8.
std::vector<int> delta_degrees(const Partition& I, DegreeWindow window,
                               DeltaIndexBase base = DeltaIndexBase::paper_m_ge_1);

/// Whether contributions at degree d come from unboundedly many partition
/// weights (or, for an open-ended z multiset, from unknown generators).
Growth contribution_growth(SplitObject object, int degree, const ZDegreeMultiset& z = {});

/// Raised when the series is inconsistent with the claimed decomposition.
class ExtractionError : public ValidationError {
public:
    ExtractionError(int degree, std::int64_t value);
    int degree() const { return degree_; }

private:
    int degree_;
};

/// Inverts total = sum_g t^g * cyclic + sum_z t^|z| * free by greedy
/// lowest-degree extraction.
ZDegreeMultiset extract_z_degrees(const TruncatedSeries& total, std::span<const int> generator_degrees,
                                  const TruncatedSeries& free_module_series,
                                  const TruncatedSeries& cyclic_summand_series);

/// The forward map of extract_z_degrees.
TruncatedSeries synthesize_series(std::span<const int> generator_degrees, const ZDegreeMultiset& z,
                                  const TruncatedSeries& free_module_series,
                                  const TruncatedSeries& cyclic_summand_series);

/// 4|I| for each partition in P of weight <= weight_cutoff.
std::vector<int> kcover_generator_degrees(int weight_cutoff);

struct CohomologySeries {
    TruncatedSeries series;
    bool cutoff_stable = false;  // no partition above the cutoff reaches degree <= N
};

/// Mod-2 cohomology series of the spin^c splitting: one A//E(1) generator in
/// degree 4|I| per partition plus one free A generator per z. The Borel
/// variant multiplies by P_BC2.
CohomologySeries mspinc_cohomology_series(const ZDegreeMultiset& z, int weight_cutoff, int cutoff,
                                          bool borel = false);

}  // namespace rspin
