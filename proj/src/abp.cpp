#include "rspin/abp.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "rspin/hfpss.hpp"

namespace rspin {

Partition::Partition(std::vector<int> p) : parts(std::move(p))
{
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0)
            throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

int Partition::weight() const
{
    int w = 0;
    for (int p : parts)
        w += p;
    return w;
}

std::string Partition::to_string() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0)
            s += ",";
        s += std::to_string(parts[i]);
    }
    return s + ")";
}

std::vector<Partition> partitions(int weight_cutoff, PartitionFamily family)
{
    if (weight_cutoff < 0)
        throw std::invalid_argument("weight cutoff must be nonnegative");
    const int min_part = family == PartitionFamily::P1 ? 2 : 1;
    std::vector<Partition> out;
    std::vector<int> current;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= min_part; --p) {
            current.push_back(p);
            rec(remaining - p, p);
            current.pop_back();
        }
    };
    for (int w = 0; w <= weight_cutoff; ++w)
        rec(w, w);
    return out;
}

namespace {

int n_for_weight(int w)
{
    return w % 2 == 0 ? 4 * w : 4 * w - 2;
}

bool family_has_weight(PartitionFamily family, int w)
{
    return !(family == PartitionFamily::P1 && w == 1);
}

PartitionFamily family_of(SplitObject o)
{
    return o == SplitObject::mspin ? PartitionFamily::P1 : PartitionFamily::P;
}

CoverSpec cover_for_weight(SplitObject o, int w)
{
    switch (o) {
    case SplitObject::mspin:
        return CoverSpec(KFlavor::KO, n_for_weight(w));
    case SplitObject::mspinc:
        return CoverSpec(KFlavor::KU, 4 * w);
    case SplitObject::mspinc_hfp:
        return CoverSpec(KFlavor::KO, 4 * w);
    }
    throw std::logic_error("unreachable");
}

// Lowest delta index m for partitions of weight w.
int min_delta_index(int w, DeltaIndexBase base)
{
    if (base == DeltaIndexBase::paper_m_ge_1)
        return 1;
    // The engine finds an extra survivor on the t = 4|I| line when 4|I| = 4 mod 8.
    return (4 * w) % 8 == 4 ? 0 : 1;
}

bool window_has_homotopy(const CoverSpec& cover, DegreeWindow window)
{
    for (int d = std::max(window.lo, cover.level); d <= window.hi; ++d)
        if (!homotopy_k(cover, d).is_zero())
            return true;
    return false;
}

bool weight_contributes(SplitObject o, int w, int d, DeltaIndexBase base)
{
    if (!family_has_weight(family_of(o), w))
        return false;
    if (!homotopy_k(cover_for_weight(o, w), d).is_zero())
        return true;
    if (o == SplitObject::mspinc_hfp) {
        const int gap = n_for_weight(w) - d;
        return gap >= 4 * min_delta_index(w, base) && gap % 4 == 0;
    }
    return false;
}

// Beyond this weight no k-cover reaches degree d, and delta contributions,
// once present, recur at every second weight.
int weight_scan_bound(int d, int weight_cutoff)
{
    return std::max(weight_cutoff, (std::abs(d) + 2) / 4 + 2) + 2;
}

Growth partition_growth(SplitObject o, int weight_cutoff, int d, DeltaIndexBase base)
{
    for (int w = weight_cutoff + 1; w <= weight_scan_bound(d, weight_cutoff); ++w)
        if (weight_contributes(o, w, d, base))
            return Growth::grows_with_cutoff;
    return Growth::stable;
}

Growth z_growth(SplitObject o, int d, const ZDegreeMultiset& z)
{
    if (!z.complete_through)
        return Growth::stable;
    // An unseen generator above complete_through adds a Z/2 at its own degree,
    // and for the fixed points a whole w-tower below it.
    if (o == SplitObject::mspinc_hfp || d > *z.complete_through)
        return Growth::grows_with_cutoff;
    return Growth::stable;
}

}  // namespace

int n_I(const Partition& I)
{
    return n_for_weight(I.weight());
}

std::string to_string(SplitObject o)
{
    switch (o) {
    case SplitObject::mspin:
        return "mspin";
    case SplitObject::mspinc:
        return "mspinc";
    case SplitObject::mspinc_hfp:
        return "mspinc_hfp";
    }
    throw std::logic_error("unreachable");
}

SplitObject parse_split_object(std::string_view name)
{
    if (name == "mspin")
        return SplitObject::mspin;
    if (name == "mspinc")
        return SplitObject::mspinc;
    if (name == "mspinc_hfp")
        return SplitObject::mspinc_hfp;
    throw std::invalid_argument("unknown object '" + std::string(name) + "' (expected mspin, mspinc, mspinc_hfp)");
}

std::string to_string(DeltaIndexBase b)
{
    return b == DeltaIndexBase::engine ? "engine" : "paper_m_ge_1";
}

DeltaIndexBase parse_delta_index_base(std::string_view name)
{
    if (name == "engine")
        return DeltaIndexBase::engine;
    if (name == "paper_m_ge_1" || name == "paper")
        return DeltaIndexBase::paper_m_ge_1;
    throw std::invalid_argument("unknown delta index base '" + std::string(name) + "' (expected engine, paper_m_ge_1)");
}

void ZDegreeMultiset::add(int degree, std::int64_t count)
{
    if (degree < 0)
        throw std::invalid_argument("z-degrees must be nonnegative");
    if (count < 0)
        throw std::invalid_argument("z-degree multiplicities must be nonnegative");
    if (count == 0)
        return;
    multiplicity[degree] = detail::checked_add(multiplicity[degree], count);
}

std::int64_t ZDegreeMultiset::size() const
{
    std::int64_t n = 0;
    for (const auto& [d, m] : multiplicity)
        n = detail::checked_add(n, m);
    return n;
}

int SummandDescriptor::recomputed_degree() const
{
    switch (kind) {
    case Kind::k_cover:
        return cover_for_weight(object, partition.weight()).level;
    case Kind::em_shift:
        return z_degree;
    case Kind::delta:
        return n_I(partition) - 4 * index;
    case Kind::borel_em:
        return z_degree - index;
    }
    throw std::logic_error("unreachable");
}

std::string SummandDescriptor::formula() const
{
    switch (kind) {
    case Kind::k_cover:
        if (object == SplitObject::mspin)
            return partition.weight() % 2 == 0 ? "level=4|I|" : "level=4|I|-2";
        return "level=4|I|";
    case Kind::em_shift:
        return "degree=|z|";
    case Kind::delta:
        return partition.weight() % 2 == 0 ? "degree=4|I|-4m" : "degree=4|I|-2-4m";
    case Kind::borel_em:
        return "degree=|z|-n";
    }
    throw std::logic_error("unreachable");
}

std::string SummandDescriptor::kind_name() const
{
    switch (kind) {
    case Kind::k_cover:
        return "k_cover";
    case Kind::em_shift:
        return "em_shift";
    case Kind::delta:
        return "delta";
    case Kind::borel_em:
        return "borel_em";
    }
    throw std::logic_error("unreachable");
}

std::string SummandDescriptor::to_string() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::k_cover:
        os << cover.to_string() << " from " << partition.to_string();
        break;
    case Kind::em_shift:
        os << "Sigma^" << z_degree << " HZ/2";
        break;
    case Kind::delta:
        os << "delta^" << index << "_" << partition.to_string();
        break;
    case Kind::borel_em:
        os << "w^" << index << "_z (|z|=" << z_degree << ")";
        break;
    }
    if (multiplicity != 1)
        os << " x" << multiplicity;
    return os.str();
}

std::vector<int> delta_degrees(const Partition& I, DegreeWindow window, DeltaIndexBase base)
{
    const int top = n_I(I);
    std::vector<int> out;
    for (int m = min_delta_index(I.weight(), base);; ++m) {
        const int d = top - 4 * m;
        if (d < window.lo)
            break;
        if (d <= window.hi)
            out.push_back(d);
    }
    return out;
}

std::vector<SummandDescriptor> summand_inventory(SplitObject object, int weight_cutoff, const ZDegreeMultiset& z,
                                                 DegreeWindow window, DeltaIndexBase base)
{
    using Kind = SummandDescriptor::Kind;
    std::vector<SummandDescriptor> out;
    for (const auto& I : partitions(weight_cutoff, family_of(object))) {
        const auto cover = cover_for_weight(object, I.weight());
        if (window_has_homotopy(cover, window)) {
            SummandDescriptor k;
            k.kind = Kind::k_cover;
            k.object = object;
            k.cover = cover;
            k.partition = I;
            k.degree = cover.level;
            out.push_back(k);
        }
        if (object != SplitObject::mspinc_hfp)
            continue;
        const int m0 = min_delta_index(I.weight(), base);
        for (int d : delta_degrees(I, window, base)) {
            SummandDescriptor delta;
            delta.kind = Kind::delta;
            delta.object = object;
            delta.partition = I;
            delta.index = (n_I(I) - d) / 4;
            delta.degree = d;
            if (delta.index < m0)
                throw std::logic_error("delta index below range");
            out.push_back(delta);
        }
    }
    for (const auto& [zd, mult] : z.multiplicity) {
        if (object != SplitObject::mspinc_hfp) {
            if (!window.contains(zd))
                continue;
            SummandDescriptor e;
            e.kind = Kind::em_shift;
            e.object = object;
            e.z_degree = zd;
            e.multiplicity = mult;
            e.degree = zd;
            out.push_back(e);
            continue;
        }
        for (int d = std::min(zd, window.hi); d >= window.lo; --d) {
            SummandDescriptor w;
            w.kind = Kind::borel_em;
            w.object = object;
            w.z_degree = zd;
            w.index = zd - d;
            w.multiplicity = mult;
            w.degree = d;
            out.push_back(w);
        }
    }
    return out;
}

ObjectHomotopy homotopy_of_object(SplitObject object, int weight_cutoff, const ZDegreeMultiset& z,
                                  DegreeWindow window, DeltaIndexBase base)
{
    using Kind = SummandDescriptor::Kind;
    ObjectHomotopy result{GradedAbelianGroup(window), {}};
    for (const auto& desc : summand_inventory(object, weight_cutoff, z, window, base)) {
        switch (desc.kind) {
        case Kind::k_cover:
            for (int d = std::max(window.lo, desc.cover.level); d <= window.hi; ++d) {
                auto g = homotopy_k(desc.cover, d);
                if (!g.is_zero())
                    result.contributions.push_back({d, desc, g});
            }
            break;
        case Kind::em_shift:
            result.contributions.push_back({desc.degree, desc, ElementaryGroup::twos(desc.multiplicity)});
            break;
        case Kind::delta:
            result.contributions.push_back({desc.degree, desc, ElementaryGroup::twos()});
            break;
        case Kind::borel_em:
            result.contributions.push_back(
                {desc.degree, desc, hfp_em_f2(desc.degree - desc.z_degree).scaled(desc.multiplicity)});
            break;
        }
    }
    std::stable_sort(result.contributions.begin(), result.contributions.end(),
                     [](const Contribution& a, const Contribution& b) { return a.degree < b.degree; });
    for (const auto& c : result.contributions)
        result.groups.add(c.degree, c.group);
    for (int d = window.lo; d <= window.hi; ++d) {
        const bool grows = partition_growth(object, weight_cutoff, d, base) == Growth::grows_with_cutoff ||
                           z_growth(object, d, z) == Growth::grows_with_cutoff;
        result.groups.set_growth(d, grows ? Growth::grows_with_cutoff : Growth::stable);
    }
    return result;
}

Growth contribution_growth(SplitObject object, int degree, const ZDegreeMultiset& z)
{
    // Past the scan bound only unboundedly recurring contributions remain.
    const int beyond = (std::abs(degree) + 2) / 4 + 2;
    if (partition_growth(object, beyond, degree, DeltaIndexBase::engine) == Growth::grows_with_cutoff)
        return Growth::grows_with_cutoff;
    return z_growth(object, degree, z);
}

ExtractionError::ExtractionError(int degree, std::int64_t value)
    : ValidationError("series is inconsistent with the claimed decomposition: coefficient " + std::to_string(value) +
                      " at degree " + std::to_string(degree) + " after subtraction"),
      degree_(degree)
{
}

namespace {

void require_cutoffs(const TruncatedSeries& a, const TruncatedSeries& b, const TruncatedSeries& c)
{
    if (a.cutoff() != b.cutoff() || a.cutoff() != c.cutoff())
        throw std::invalid_argument("series must share one cutoff");
}

}  // namespace

ZDegreeMultiset extract_z_degrees(const TruncatedSeries& total, std::span<const int> generator_degrees,
                                  const TruncatedSeries& free_module_series,
                                  const TruncatedSeries& cyclic_summand_series)
{
    require_cutoffs(total, free_module_series, cyclic_summand_series);
    if (free_module_series[0] != 1)
        throw std::invalid_argument("free module series must have constant term 1");

    TruncatedSeries residual = total;
    for (int g : generator_degrees) {
        if (g < 0)
            throw std::invalid_argument("generator degrees must be nonnegative");
        if (g <= total.cutoff())
            residual -= cyclic_summand_series.shifted(g);
    }

    ZDegreeMultiset z;
    z.complete_through = total.cutoff();
    for (int d = 0; d <= total.cutoff(); ++d) {
        const auto c = residual[d];
        if (c < 0)
            throw ExtractionError(d, c);
        if (c == 0)
            continue;
        z.add(d, c);
        residual -= free_module_series.shifted(d).scaled(c);
    }
    return z;
}

TruncatedSeries synthesize_series(std::span<const int> generator_degrees, const ZDegreeMultiset& z,
                                  const TruncatedSeries& free_module_series,
                                  const TruncatedSeries& cyclic_summand_series)
{
    if (free_module_series.cutoff() != cyclic_summand_series.cutoff())
        throw std::invalid_argument("series must share one cutoff");
    const int n = free_module_series.cutoff();
    TruncatedSeries total(n);
    for (int g : generator_degrees)
        if (g <= n)
            total += cyclic_summand_series.shifted(g);
    for (const auto& [d, m] : z.multiplicity)
        if (d <= n)
            total += free_module_series.shifted(d).scaled(m);
    return total;
}

std::vector<int> kcover_generator_degrees(int weight_cutoff)
{
    std::vector<int> out;
    for (const auto& I : partitions(weight_cutoff, PartitionFamily::P))
        out.push_back(4 * I.weight());
    return out;
}

CohomologySeries mspinc_cohomology_series(const ZDegreeMultiset& z, int weight_cutoff, int cutoff, bool borel)
{
    const auto gens = kcover_generator_degrees(weight_cutoff);
    auto series = synthesize_series(gens, z, named_series(NamedSeries::A, cutoff),
                                    named_series(NamedSeries::A_mod_E1, cutoff));
    if (borel)
        series = series * named_series(NamedSeries::BC2, cutoff);
    return CohomologySeries{series, 4 * (weight_cutoff + 1) > cutoff};
}

}  // namespace rspin
