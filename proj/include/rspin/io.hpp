#pragma once

#include <string>

#include <json.hpp>

#include "rspin/abp.hpp"
#include "rspin/c2_linear.hpp"
#include "rspin/graded.hpp"
#include "rspin/hfpss.hpp"
#include "rspin/series.hpp"

namespace rspin {

using Json = nlohmann::ordered_json;

// Graded group: {"window": [lo, hi], "groups": [{degree, free_rank, two_rank,
// growth}, ...]}. Degrees inside the window that are not listed are zero and
// stable.
Json graded_to_json(const GradedAbelianGroup& g);
GradedAbelianGroup graded_from_json(const Json& j);

// Series: {"cutoff": N, "coeffs": [c_0, ..., c_N]}.
Json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const Json& j);

// z-degrees: {"degrees": [{degree, multiplicity}, ...], "complete_through": N}
// or a bare array of records. complete_through is optional.
Json zdegrees_to_json(const ZDegreeMultiset& z);
ZDegreeMultiset zdegrees_from_json(const Json& j);

// C_2-module: {"name": ..., "integral_action": [[...]], "torsion_action": [[...]]}.
C2Module module_from_json(const Json& j);

Json page_class_to_json(const PageClass& c);
/// One record {s, t, label, free_rank, two_rank, fate} per class.
Json page_to_json(const SpectralPage& page);

Json descriptor_to_json(const SummandDescriptor& d);

Json read_json_file(const std::string& path);

}  // namespace rspin
