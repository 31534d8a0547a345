#include "rspin/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rspin/abp.hpp"
#include "rspin/c2_linear.hpp"
#include "rspin/errors.hpp"
#include "rspin/hfpss.hpp"
#include "rspin/ktheory.hpp"
#include "rspin/series.hpp"

namespace rspin::cli {

namespace {

struct RunConfig {
    int lo = -20;
    int hi = 40;
    int weight_cutoff = 8;
    int series_cutoff = 200;
    std::string z_degrees_path;
    std::string delta_index_base = "engine";
    std::string output_format = "json";
    std::string output_path;
};

Json group_fields(const ElementaryGroup& g)
{
    return Json{{"free_rank", g.free_rank}, {"two_rank", g.two_rank}, {"group", g.to_string()}};
}

void merge(Json& dst, const Json& src)
{
    for (auto it = src.begin(); it != src.end(); ++it)
        dst[it.key()] = it.value();
}

Json with_kind(const char* kind, Json body)
{
    Json j{{"kind", kind}};
    for (auto& [k, v] : body.items())
        j[k] = v;
    return j;
}

DegreeWindow window_of(const RunConfig& c)
{
    if (c.lo > c.hi)
        throw std::invalid_argument("--min must not exceed --max");
    return DegreeWindow(c.lo, c.hi);
}

void require_nonnegative(int v, const char* name)
{
    if (v < 0)
        throw std::invalid_argument(std::string(name) + " must be nonnegative");
}

ZDegreeMultiset load_z(const RunConfig& c)
{
    if (c.z_degrees_path.empty())
        return {};
    return zdegrees_from_json(read_json_file(c.z_degrees_path));
}

void write_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

Json class_ref(const PageClass& c)
{
    return Json{{"s", c.s}, {"t", c.t}, {"label", c.label.to_string()}, {"group", c.group.to_string()}};
}

// ---- homotopy --------------------------------------------------------------

struct HomotopyOptions {
    std::string object = "mspinc";
    bool inventory = false;
};

std::vector<Json> cmd_homotopy(const RunConfig& c, const HomotopyOptions& o)
{
    require_nonnegative(c.weight_cutoff, "--weight-cutoff");
    const auto object = parse_split_object(o.object);
    const auto base = parse_delta_index_base(c.delta_index_base);
    const auto window = window_of(c);
    const auto z = load_z(c);

    std::vector<Json> records;
    Json config{{"command", "homotopy"},
                {"object", to_string(object)},
                {"window", {window.lo, window.hi}},
                {"weight_cutoff", c.weight_cutoff},
                {"delta_index_base", to_string(base)},
                {"z_degrees", z.size()}};
    if (z.complete_through)
        config["z_complete_through"] = *z.complete_through;
    records.push_back(with_kind("config", config));

    if (o.inventory)
        for (const auto& d : summand_inventory(object, c.weight_cutoff, z, window, base))
            records.push_back(with_kind("summand", descriptor_to_json(d)));

    const auto result = homotopy_of_object(object, c.weight_cutoff, z, window, base);
    for (int d = window.lo; d <= window.hi; ++d) {
        Json sources = Json::array();
        for (const auto& contrib : result.contributions) {
            if (contrib.degree != d)
                continue;
            Json s = descriptor_to_json(contrib.source);
            s["contributes"] = contrib.group.to_string();
            sources.push_back(s);
        }
        Json rec{{"object", to_string(object)}, {"degree", d}};
        merge(rec, group_fields(result.groups.at(d)));
        rec["growth"] = to_string(result.groups.growth(d));
        rec["sources"] = sources;
        records.push_back(with_kind("homotopy", rec));
    }

    if (object == SplitObject::mspinc_hfp) {
        const auto other_base =
            base == DeltaIndexBase::engine ? DeltaIndexBase::paper_m_ge_1 : DeltaIndexBase::engine;
        const auto other = homotopy_of_object(object, c.weight_cutoff, z, window, other_base);
        for (int d = window.lo; d <= window.hi; ++d) {
            if (other.groups.at(d) == result.groups.at(d))
                continue;
            records.push_back(with_kind("delta_base_diff", Json{{"degree", d},
                                                                {to_string(base), result.groups.at(d).to_string()},
                                                                {to_string(other_base), other.groups.at(d).to_string()}}));
        }
    }
    return records;
}

// ---- hfpss -----------------------------------------------------------------

struct HfpssOptions {
    int cover = 0;
    std::string page;
    bool compare = false;
    int em_sigma = 0;
    bool em_f2 = false;
};

PageIndex parse_page(const std::string& p)
{
    if (p == "e2" || p == "E2")
        return PageIndex::E2;
    if (p == "e4" || p == "E4")
        return PageIndex::E4;
    if (p == "einf" || p == "Einf")
        return PageIndex::Einf;
    throw std::invalid_argument("unknown page '" + p + "' (expected e2, e4, einf)");
}

std::vector<Json> cmd_hfpss(const RunConfig& c, const HfpssOptions& o)
{
    const auto window = window_of(c);
    std::vector<Json> records;

    if (o.em_sigma != 0 || o.em_f2) {
        if (o.em_sigma != 0) {
            const auto table = hfp_em_sigma(o.em_sigma, window);
            for (int d = window.lo; d <= window.hi; ++d) {
                Json rec{{"shift", o.em_sigma}, {"degree", d}};
                merge(rec, group_fields(table.at(d)));
                if (d - o.em_sigma <= 0)
                    rec["source"] = "H^" + std::to_string(o.em_sigma - d) + "(C2; Z_sgn) at t=" +
                                    std::to_string(o.em_sigma);
                records.push_back(with_kind("hfp_em_sigma", rec));
            }
        }
        if (o.em_f2) {
            for (int d = window.lo; d <= window.hi; ++d) {
                Json rec{{"degree", d}};
                merge(rec, group_fields(hfp_em_f2(d)));
                if (d <= 0)
                    rec["source"] = "w^" + std::to_string(-d);
                records.push_back(with_kind("hfp_em_f2", rec));
            }
        }
        return records;
    }

    records.push_back(with_kind("config", Json{{"command", "hfpss"},
                                              {"cover", o.cover},
                                              {"window", {window.lo, window.hi}}}));

    const auto e2 = build_e2(o.cover, window);
    const auto e4 = apply_d3(e2);
    const auto einf = e_infinity(e4);

    if (!o.page.empty()) {
        const auto which = parse_page(o.page);
        const SpectralPage& page = which == PageIndex::E2 ? resolve_d3(e2) : which == PageIndex::E4 ? e4 : einf;
        for (const auto& cls : page.classes) {
            Json rec{{"page", to_string(page.index)}, {"cover", o.cover}};
            merge(rec, page_class_to_json(cls));
            records.push_back(with_kind("page_class", rec));
        }
    }

    const auto pi = hfpss_homotopy(o.cover, window);
    for (int d = window.lo; d <= window.hi; ++d) {
        Json classes = Json::array();
        for (const auto& cls : classes_in_degree(einf, d))
            classes.push_back(class_ref(cls));
        Json rec{{"cover", o.cover}, {"degree", d}};
        merge(rec, group_fields(pi.at(d)));
        rec["classes"] = classes;
        records.push_back(with_kind("hfpss_homotopy", rec));
    }

    if (o.compare) {
        const auto diffs = compare_engine_vs_closed_form(o.cover, window);
        for (const auto& e : diffs) {
            Json classes = Json::array();
            for (const auto& cls : e.engine_classes)
                classes.push_back(class_ref(cls));
            records.push_back(with_kind("diff", Json{{"cover", o.cover},
                                                     {"degree", e.degree},
                                                     {"engine", e.engine.to_string()},
                                                     {"closed_form", e.closed_form.to_string()},
                                                     {"annotation", e.annotation},
                                                     {"classes", classes}}));
        }
        records.push_back(with_kind("compare_summary", Json{{"cover", o.cover},
                                                            {"window", {window.lo, window.hi}},
                                                            {"entries", diffs.size()}}));
    }
    return records;
}

// ---- series ----------------------------------------------------------------

struct SeriesOptions {
    std::string name = "A";
    std::string degrees;
    std::string op = "add";
    std::string a_path;
    std::string b_path;
    bool perturb_ko = false;
};

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stoi(item, &pos));
            if (pos != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("not an integer list: '" + text + "'");
        }
    }
    return out;
}

Json series_record(const std::string& name, const TruncatedSeries& s)
{
    Json j{{"name", name}};
    merge(j, series_to_json(s));
    return with_kind("series", j);
}

Json check_record(const IdentityCheck& c)
{
    Json j{{"identity", c.name}, {"holds", c.holds()}};
    j["first_offending_degree"] = c.first_offending_degree ? Json(*c.first_offending_degree) : Json(nullptr);
    if (c.first_offending_degree)
        j["offending_coefficient"] = c.difference[*c.first_offending_degree];
    return with_kind("identity", j);
}

struct CommandResult {
    std::vector<Json> records;
    std::string failure;  // nonempty: validation failure after emitting records
};

CommandResult cmd_series_verify(const RunConfig& c, const SeriesOptions& o)
{
    require_nonnegative(c.series_cutoff, "--cutoff");
    const int n = c.series_cutoff;
    PoincareIdentityReport report = [&] {
        if (!o.perturb_ko)
            return verify_poincare_identity(n);
        // P_ko with the 1/(1 - t^6) factor dropped.
        std::vector<int> degrees{4};
        for (int d : milnor_degrees(3, n))
            degrees.push_back(d);
        return verify_poincare_identity(n, from_denominators(degrees, n));
    }();

    CommandResult r;
    r.records.push_back(with_kind("config", Json{{"command", "series verify"}, {"cutoff", n}, {"perturbed_ko", o.perturb_ko}}));
    r.records.push_back(check_record(report.main));
    for (const auto& chk : report.consistency)
        r.records.push_back(check_record(chk));
    r.records.push_back(with_kind("verdict", Json{{"result", report.holds() ? "holds" : "fails"}}));
    if (!report.holds()) {
        const IdentityCheck* bad = &report.main;
        if (report.main.holds())
            for (const auto& chk : report.consistency)
                if (!chk.holds()) {
                    bad = &chk;
                    break;
                }
        r.failure = "identity '" + bad->name + "' fails at degree " + std::to_string(*bad->first_offending_degree);
    }
    return r;
}

// ---- zdegrees --------------------------------------------------------------

struct ZOptions {
    std::string series_path;
    std::string generators;
    bool borel = false;
};

std::vector<Json> cmd_z_extract(const RunConfig& c, const ZOptions& o)
{
    if (o.series_path.empty())
        throw std::invalid_argument("zdegrees extract needs --series");
    const auto total = series_from_json(read_json_file(o.series_path));
    const int n = total.cutoff();
    const auto gens = o.generators.empty() ? kcover_generator_degrees(c.weight_cutoff) : parse_int_list(o.generators);
    const auto z = extract_z_degrees(total, gens, named_series(NamedSeries::A, n), named_series(NamedSeries::A_mod_E1, n));

    std::vector<Json> records;
    records.push_back(with_kind("config", Json{{"command", "zdegrees extract"},
                                              {"cutoff", n},
                                              {"generator_degrees", gens},
                                              {"free_series", "A"},
                                              {"cyclic_series", "A_mod_E1"}}));
    for (const auto& [d, m] : z.multiplicity)
        records.push_back(with_kind("z_degree", Json{{"degree", d}, {"multiplicity", m}}));
    records.push_back(with_kind("z_summary", Json{{"generators", z.size()}, {"complete_through", n}}));
    if (!c.output_path.empty())
        write_file(c.output_path, zdegrees_to_json(z));
    return records;
}

std::vector<Json> cmd_z_synthesize(const RunConfig& c, const ZOptions& o)
{
    require_nonnegative(c.weight_cutoff, "--weight-cutoff");
    require_nonnegative(c.series_cutoff, "--cutoff");
    const auto z = load_z(c);
    const auto result = mspinc_cohomology_series(z, c.weight_cutoff, c.series_cutoff, o.borel);
    std::vector<Json> records;
    records.push_back(with_kind("config", Json{{"command", "zdegrees synthesize"},
                                              {"weight_cutoff", c.weight_cutoff},
                                              {"cutoff", c.series_cutoff},
                                              {"borel", o.borel},
                                              {"z_degrees", z.size()}}));
    auto rec = series_record(o.borel ? "mspinc_borel_cohomology" : "mspinc_cohomology", result.series);
    rec["cutoff_stable"] = result.cutoff_stable;
    records.push_back(rec);
    if (!c.output_path.empty())
        write_file(c.output_path, series_to_json(result.series));
    return records;
}

// ---- cohomology ------------------------------------------------------------

struct CohomologyOptions {
    std::string coeff = "Z_triv";
    std::string module_path;
    int s = -1;
    int s_max = 10;
};

CommandResult cmd_cohomology(const CohomologyOptions& o)
{
    CommandResult r;
    int lo = 0, hi = o.s_max;
    if (o.s >= 0)
        lo = hi = o.s;
    require_nonnegative(hi, "--s-max");

    if (!o.module_path.empty()) {
        const auto m = module_from_json(read_json_file(o.module_path));
        for (int s = lo; s <= hi; ++s) {
            Json rec{{"module", m.name()}, {"s", s}, {"method", "resolution"}};
            merge(rec, group_fields(cohomology_resolution(m, s)));
            r.records.push_back(with_kind("cohomology", rec));
        }
        return r;
    }

    const auto coeff = parse_coefficients(o.coeff);
    const auto module = standard_module(coeff);
    for (int s = lo; s <= hi; ++s) {
        const auto closed = cohomology_closed_form(coeff, s);
        const auto oracle = cohomology_resolution(module, s);
        Json rec{{"module", to_string(coeff)}, {"s", s}};
        merge(rec, group_fields(closed));
        rec["resolution"] = oracle.to_string();
        rec["agree"] = closed == oracle;
        r.records.push_back(with_kind("cohomology", rec));
        if (closed != oracle && r.failure.empty())
            r.failure = "closed form and resolution disagree for " + to_string(coeff) + " at s=" + std::to_string(s);
    }
    return r;
}

// ---- genuine ---------------------------------------------------------------

std::vector<Json> cmd_genuine(const RunConfig& c, int n)
{
    const auto window = window_of(c);
    const auto tables = genuine_descriptor(n, window);
    std::vector<Json> records;
    records.push_back(with_kind("config", Json{{"command", "genuine"},
                                              {"n", n},
                                              {"underlying", CoverSpec(KFlavor::KU, 4 * n).to_string()},
                                              {"fixed", CoverSpec(KFlavor::KO, 4 * n - 2).to_string()}}));
    for (int d = window.lo; d <= window.hi; ++d)
        records.push_back(with_kind("genuine", Json{{"n", n},
                                                    {"degree", d},
                                                    {"underlying", tables.underlying.at(d).to_string()},
                                                    {"fixed", tables.fixed.at(d).to_string()}}));
    return records;
}

std::string cell(const Json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

}  // namespace

void emit(const std::vector<Json>& records, OutputFormat format, std::ostream& out)
{
    if (format == OutputFormat::json) {
        for (const auto& r : records)
            out << r.dump() << "\n";
        return;
    }
    std::string current_kind;
    std::vector<std::string> columns;
    for (const auto& r : records) {
        const auto kind = r.value("kind", std::string("record"));
        std::vector<std::string> keys;
        for (auto& [k, v] : r.items())
            if (k != "kind")
                keys.push_back(k);
        if (kind != current_kind || keys != columns) {
            out << "# " << kind << "\n";
            for (std::size_t i = 0; i < keys.size(); ++i)
                out << (i ? "\t" : "") << keys[i];
            out << "\n";
            current_kind = kind;
            columns = keys;
        }
        for (std::size_t i = 0; i < keys.size(); ++i)
            out << (i ? "\t" : "") << cell(r.at(keys[i]));
        out << "\n";
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact calculator for the 2-local splitting of (Real) spin bordism", "rspin"};
    app.require_subcommand(1);

    RunConfig config;
    auto add_window = [&](CLI::App* sub) {
        sub->add_option("--min", config.lo, "Lowest degree of the window")->capture_default_str();
        sub->add_option("--max", config.hi, "Highest degree of the window")->capture_default_str();
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", config.output_format, "json or table")
            ->check(CLI::IsMember({"json", "table"}))
            ->capture_default_str();
    };

    HomotopyOptions hopt;
    auto* homotopy = app.add_subcommand("homotopy", "Homotopy groups of MSpin, MSpin^c, (MSpin^c_R)^{hC2} from their splittings");
    homotopy->add_option("--object", hopt.object, "mspin, mspinc or mspinc_hfp")->capture_default_str();
    homotopy->add_option("--weight-cutoff", config.weight_cutoff, "Largest partition weight")->capture_default_str();
    homotopy->add_option("--z-file", config.z_degrees_path, "z-degree file");
    homotopy->add_option("--delta-base", config.delta_index_base, "engine or paper_m_ge_1")->capture_default_str();
    homotopy->add_flag("--inventory", hopt.inventory, "Also list the contributing summands");
    add_window(homotopy);
    add_format(homotopy);

    HfpssOptions fopt;
    auto* hfpss = app.add_subcommand("hfpss", "Homotopy fixed point spectral sequence of ku_R<2n>");
    hfpss->add_option("--cover", fopt.cover, "Even cover level 2n")->capture_default_str();
    hfpss->add_option("--page", fopt.page, "Dump a page: e2, e4 or einf");
    hfpss->add_flag("--compare", fopt.compare, "Diff the engine against the closed form");
    hfpss->add_option("--em-sigma", fopt.em_sigma, "Table for (Sigma^d HZ_sigma)^{hC2}");
    hfpss->add_flag("--em-f2", fopt.em_f2, "Table for (HZ/2)^{hC2}");
    add_window(hfpss);
    add_format(hfpss);

    SeriesOptions sopt;
    auto* series = app.add_subcommand("series", "Poincare series");
    series->require_subcommand(1);
    auto* named = series->add_subcommand("named", "Emit a named series");
    named->add_option("--name", sopt.name, "A, A1, E1, A_mod_A1, A_mod_E1, G, E2ku, BC2, EM_wedge")->capture_default_str();
    auto* verify = series->add_subcommand("verify", "Check the Poincare series identities");
    verify->add_flag("--perturb-ko", sopt.perturb_ko, "Drop the (1-t^6) factor from P_ko");
    auto* product = series->add_subcommand("product", "Product of 1/(1-t^d) over a degree list");
    product->add_option("--degrees", sopt.degrees, "Comma-separated degrees")->required();
    auto* arith_cmd = series->add_subcommand("arith", "Arithmetic on series files");
    arith_cmd->add_option("--op", sopt.op, "add, sub, mul, shift_by_t")->capture_default_str();
    arith_cmd->add_option("--a", sopt.a_path, "First series file")->required();
    arith_cmd->add_option("--b", sopt.b_path, "Second series file");
    for (auto* sub : {named, verify, product}) {
        sub->add_option("--cutoff", config.series_cutoff, "Series cutoff")->capture_default_str();
        add_format(sub);
    }
    add_format(arith_cmd);
    arith_cmd->add_option("--output", config.output_path, "Write the result series file");

    ZOptions zopt;
    auto* zdeg = app.add_subcommand("zdegrees", "Free-generator degrees of the spin^c splitting");
    zdeg->require_subcommand(1);
    auto* extract = zdeg->add_subcommand("extract", "Extract z-degrees from a cohomology series");
    extract->add_option("--series", zopt.series_path, "Series file")->required();
    extract->add_option("--generators", zopt.generators, "Comma-separated cyclic generator degrees");
    extract->add_option("--weight-cutoff", config.weight_cutoff, "Generators 4|I| for |I| <= cutoff")->capture_default_str();
    extract->add_option("--output", config.output_path, "Write the z-degree file");
    add_format(extract);
    auto* synth = zdeg->add_subcommand("synthesize", "Cohomology series from z-degrees");
    synth->add_option("--z-file", config.z_degrees_path, "z-degree file");
    synth->add_option("--weight-cutoff", config.weight_cutoff, "Largest partition weight")->capture_default_str();
    synth->add_option("--cutoff", config.series_cutoff, "Series cutoff")->capture_default_str();
    synth->add_flag("--borel", zopt.borel, "Multiply by P_BC2");
    synth->add_option("--output", config.output_path, "Write the series file");
    add_format(synth);

    CohomologyOptions copt;
    auto* cohom = app.add_subcommand("cohomology", "Group cohomology of C2");
    cohom->add_option("--coeff", copt.coeff, "Z_triv, Z_sgn or F2")->capture_default_str();
    cohom->add_option("--module", copt.module_path, "C2-module file (resolution only)");
    cohom->add_option("--s", copt.s, "Single cohomological degree");
    cohom->add_option("--s-max", copt.s_max, "Degrees 0..s-max")->capture_default_str();
    add_format(cohom);

    int genuine_n = 1;
    auto* genuine = app.add_subcommand("genuine", "Underlying and fixed-point tables of ku_R<4n,2>");
    genuine->add_option("--n", genuine_n, "Odd n")->capture_default_str();
    add_format(genuine);
    add_window(genuine);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "rspin: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    const auto format = config.output_format == "table" ? OutputFormat::table : OutputFormat::json;
    try {
        CommandResult result;
        if (*homotopy) {
            result.records = cmd_homotopy(config, hopt);
        } else if (*hfpss) {
            result.records = cmd_hfpss(config, fopt);
        } else if (*named) {
            result.records.push_back(series_record(sopt.name, named_series(parse_named_series(sopt.name), config.series_cutoff)));
        } else if (*verify) {
            result = cmd_series_verify(config, sopt);
        } else if (*product) {
            result.records.push_back(series_record("product", from_denominators(parse_int_list(sopt.degrees), config.series_cutoff)));
        } else if (*arith_cmd) {
            const auto op = parse_series_op(sopt.op);
            const auto a = series_from_json(read_json_file(sopt.a_path));
            if (op != SeriesOp::shift_by_t && sopt.b_path.empty())
                throw std::invalid_argument("--b is required for " + sopt.op);
            const auto b = sopt.b_path.empty() ? a : series_from_json(read_json_file(sopt.b_path));
            const auto s = arith(a, b, op);
            result.records.push_back(series_record(sopt.op, s));
            if (!config.output_path.empty())
                write_file(config.output_path, series_to_json(s));
        } else if (*extract) {
            result.records = cmd_z_extract(config, zopt);
        } else if (*synth) {
            result.records = cmd_z_synthesize(config, zopt);
        } else if (*cohom) {
            result = cmd_cohomology(copt);
        } else if (*genuine) {
            result.records = cmd_genuine(config, genuine_n);
        }
        emit(result.records, format, out);
        if (!result.failure.empty()) {
            err << "rspin: validation failure: " << result.failure << "\n";
            return kExitValidation;
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << "rspin: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "rspin: validation failure: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "rspin: validation failure: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace rspin::cli
