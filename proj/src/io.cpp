#include "rspin/io.hpp"

#include <fstream>
#include <stdexcept>

namespace rspin {

namespace {

template <typename T>
T get_field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw std::invalid_argument(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

Json graded_to_json(const GradedAbelianGroup& g)
{
    Json records = Json::array();
    for (int d = g.window().lo; d <= g.window().hi; ++d) {
        const auto& e = g.at(d);
        if (e.is_zero() && g.growth(d) == Growth::stable)
            continue;
        records.push_back(Json{{"degree", d},
                               {"free_rank", e.free_rank},
                               {"two_rank", e.two_rank},
                               {"growth", to_string(g.growth(d))}});
    }
    return Json{{"window", {g.window().lo, g.window().hi}}, {"groups", records}};
}

GradedAbelianGroup graded_from_json(const Json& j)
{
    const auto window = get_field<std::vector<int>>(j, "window");
    if (window.size() != 2)
        throw std::invalid_argument("window must be [lo, hi]");
    GradedAbelianGroup g(DegreeWindow(window[0], window[1]));
    for (const auto& r : j.at("groups")) {
        const int d = get_field<int>(r, "degree");
        if (!g.window().contains(d))
            throw std::invalid_argument("record degree " + std::to_string(d) + " outside window " +
                                        g.window().to_string());
        const auto growth = r.contains("growth") ? parse_growth(r.at("growth").get<std::string>()) : Growth::stable;
        g.set(d,
              ElementaryGroup::make(get_field<std::int64_t>(r, "free_rank"), get_field<std::int64_t>(r, "two_rank")),
              growth);
    }
    return g;
}

Json series_to_json(const TruncatedSeries& s)
{
    return Json{{"cutoff", s.cutoff()}, {"coeffs", s.coeffs()}};
}

TruncatedSeries series_from_json(const Json& j)
{
    return TruncatedSeries(get_field<int>(j, "cutoff"), get_field<std::vector<std::int64_t>>(j, "coeffs"));
}

Json zdegrees_to_json(const ZDegreeMultiset& z)
{
    Json records = Json::array();
    for (const auto& [d, m] : z.multiplicity)
        records.push_back(Json{{"degree", d}, {"multiplicity", m}});
    Json out{{"degrees", records}};
    if (z.complete_through)
        out["complete_through"] = *z.complete_through;
    return out;
}

ZDegreeMultiset zdegrees_from_json(const Json& j)
{
    ZDegreeMultiset z;
    const Json* records = &j;
    if (j.is_object()) {
        if (!j.contains("degrees"))
            throw std::invalid_argument("z-degree file needs a 'degrees' array");
        records = &j.at("degrees");
        if (j.contains("complete_through"))
            z.complete_through = j.at("complete_through").get<int>();
    }
    if (!records->is_array())
        throw std::invalid_argument("z-degree records must be an array");
    for (const auto& r : *records)
        z.add(get_field<int>(r, "degree"), get_field<std::int64_t>(r, "multiplicity"));
    return z;
}

C2Module module_from_json(const Json& j)
{
    const auto name = j.contains("name") ? j.at("name").get<std::string>() : std::string("module");
    auto matrix = [&](const char* key) {
        if (!j.contains(key))
            return IntMatrix(0, 0);
        return IntMatrix::from_rows(j.at(key).get<std::vector<std::vector<std::int64_t>>>());
    };
    return C2Module(name, matrix("integral_action"), matrix("torsion_action"));
}

Json page_class_to_json(const PageClass& c)
{
    return Json{{"s", c.s},
                {"t", c.t},
                {"label", c.label.to_string()},
                {"free_rank", c.group.free_rank},
                {"two_rank", c.group.two_rank},
                {"fate", to_string(c.fate)}};
}

Json page_to_json(const SpectralPage& page)
{
    Json out = Json::array();
    for (const auto& c : page.classes)
        out.push_back(page_class_to_json(c));
    return out;
}

Json descriptor_to_json(const SummandDescriptor& d)
{
    Json j{{"kind", d.kind_name()}, {"summand", d.to_string()}, {"formula", d.formula()}, {"degree", d.degree}};
    switch (d.kind) {
    case SummandDescriptor::Kind::k_cover:
        j["cover"] = d.cover.to_string();
        j["partition"] = d.partition.to_string();
        break;
    case SummandDescriptor::Kind::delta:
        j["partition"] = d.partition.to_string();
        j["m"] = d.index;
        break;
    case SummandDescriptor::Kind::em_shift:
        j["z_degree"] = d.z_degree;
        j["multiplicity"] = d.multiplicity;
        break;
    case SummandDescriptor::Kind::borel_em:
        j["z_degree"] = d.z_degree;
        j["n"] = d.index;
        j["multiplicity"] = d.multiplicity;
        break;
    }
    return j;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("'" + path + "': " + e.what());
    }
}

}  // namespace rspin
