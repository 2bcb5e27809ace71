#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "typdiv/audit.hpp"
#include "typdiv/cldf.hpp"
#include "typdiv/core.hpp"
#include "typdiv/csv.hpp"
#include "typdiv/distances.hpp"
#include "typdiv/error.hpp"
#include "typdiv/langmeta.hpp"
#include "typdiv/metrics.hpp"
#include "typdiv/pca.hpp"
#include "typdiv/report.hpp"
#include "typdiv/survey.hpp"
#include "typdiv/svg.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace typdiv;

namespace {

// Relative paths fall back to $TYPDIV_DATA_DIR when not found in place.
fs::path resolve_path(const std::string& p) {
    fs::path path(p);
    if (fs::exists(path) || !path.is_relative()) return path;
    if (const char* root = std::getenv("TYPDIV_DATA_DIR")) {
        fs::path alt = fs::path(root) / path;
        if (fs::exists(alt)) return alt;
    }
    return path;
}

struct Context {
    std::string registry_path;
    std::string codemap_path;
    bool strict = false;

    std::optional<langmeta::Registry> registry;
    std::optional<langmeta::CodeMap> codemap;

    void load() {
        if (!registry_path.empty()) registry = langmeta::Registry::load(resolve_path(registry_path));
        if (!codemap_path.empty()) codemap = langmeta::CodeMap::load(resolve_path(codemap_path));
    }
    const langmeta::Registry* registry_ptr() const { return registry ? &*registry : nullptr; }
};

void add_context_options(CLI::App* cmd, Context& ctx) {
    cmd->add_option("--registry", ctx.registry_path, "language registry CSV");
    cmd->add_option("--codemap", ctx.codemap_path, "ISO code map CSV");
    cmd->add_flag("--strict", ctx.strict, "treat unknown or ambiguous codes as errors");
}

// Canonicalizes sample codes through the code map where possible. In
// strict mode unknown or ambiguous codes abort; otherwise they pass
// through with a warning and are excluded downstream as absent.
LanguageSample prepare_sample(const fs::path& path, const Context& ctx) {
    LanguageSample sample = metrics::load_sample(path);
    if (!ctx.registry) return sample;

    std::vector<std::string> ids;
    for (const auto& raw : sample.ids) {
        std::string use = raw;
        if (ctx.codemap) {
            try {
                auto norm = langmeta::normalize_code(raw, *ctx.codemap, *ctx.registry);
                if (norm.ambiguous) {
                    std::string members;
                    for (const auto& m : norm.members) members += " " + m;
                    if (ctx.strict)
                        throw SampleError("ambiguous macrolanguage code '" + raw +
                                          "' (members:" + members + ")");
                    std::cerr << "warning: '" << raw << "' is a macrolanguage code (members:"
                              << members << ")\n";
                }
                use = norm.canonical;
            } catch (const UnknownCodeError& e) {
                if (ctx.strict) throw;
                std::cerr << "warning: " << e.what() << "\n";
            }
        } else if (!ctx.registry->find(raw)) {
            if (ctx.strict)
                throw UnknownCodeError(raw, "not in the registry");
            std::cerr << "warning: unknown language code '" << raw << "'\n";
        }
        ids.push_back(std::move(use));
    }
    return LanguageSample::from_ids(std::move(ids), sample.label);
}

json exclusions_json(const std::vector<Exclusion>& excluded) {
    json arr = json::array();
    for (const auto& e : excluded) {
        json item;
        item["language"] = e.language;
        item["reason"] = e.reason;
        if (e.ratio) item["ratio"] = *e.ratio;
        arr.push_back(std::move(item));
    }
    return arr;
}

void print_metric(const std::string& name, const metrics::MetricResult& result) {
    json doc;
    doc["metric"] = name;
    doc["value"] = result.value;
    doc["n_used"] = result.used.ids.size();
    if (result.feature_count > 0) {
        doc["feature_count"] = result.feature_count;
    } else {
        doc["pair_count"] = result.pair_count;
        doc["skipped_pairs"] = result.skipped_pairs;
    }
    doc["used"] = result.used.ids;
    doc["excluded"] = exclusions_json(result.excluded);
    std::cout << doc.dump(2) << "\n";
}

void write_output(const std::string& out_path, const std::string& contents) {
    if (out_path.empty() || out_path == "-") {
        std::cout << contents;
    } else {
        svg::write_file(out_path, contents);
    }
}

// ---------------------------------------------------------------- mpd/mpsd

struct MpdConfig {
    Context ctx;
    std::string sample_path;
    std::string distances_path;
    std::string vectors_path;
    std::string grambank_dir;
    bool geo = false;
    bool genetic = false;
    bool raw_euclidean = false;
};

int run_mpd(MpdConfig& cfg) {
    const int sources = !cfg.distances_path.empty() + !cfg.vectors_path.empty() +
                        !cfg.grambank_dir.empty() + cfg.geo + cfg.genetic;
    if (sources != 1)
        throw UsageError("choose exactly one source: --distances, --vectors, --grambank, "
                         "--geo or --genetic");
    if ((cfg.geo || cfg.genetic) && cfg.ctx.registry_path.empty())
        throw UsageError("--geo and --genetic require --registry");

    cfg.ctx.load();
    LanguageSample sample = prepare_sample(resolve_path(cfg.sample_path), cfg.ctx);
    const auto norm = cfg.raw_euclidean ? distances::PairNorm::raw
                                        : distances::PairNorm::shared_dims;

    auto compute_from_matrix = [&](const DistanceMatrix& dm, const char* name) {
        auto aligned = report::align_sample(
            sample, [&](const std::string& id) { return dm.index_of(id).has_value(); },
            cfg.ctx.registry_ptr());
        if (cfg.ctx.strict && !aligned.excluded.empty())
            throw SampleError("language '" + aligned.excluded.front().language +
                              "' is absent from the source");
        auto result = report::translate_result(metrics::mpd(aligned.mapped, dm), aligned);
        print_metric(name, result);
    };

    if (!cfg.distances_path.empty()) {
        DistanceMatrix dm = vectors::load_distance_matrix(resolve_path(cfg.distances_path));
        compute_from_matrix(dm, "mpd");
    } else if (!cfg.vectors_path.empty() || !cfg.grambank_dir.empty()) {
        std::optional<vectors::VectorSet> vs;
        if (!cfg.vectors_path.empty()) {
            vs = vectors::load_vector_table(resolve_path(cfg.vectors_path));
        } else {
            std::vector<std::string> warnings;
            auto fm = cldf::load_structure_dataset(resolve_path(cfg.grambank_dir), &warnings);
            for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
            vs = vectors::binarize(fm);
        }
        auto aligned = report::align_sample(
            sample, [&](const std::string& id) { return vs->language_index(id).has_value(); },
            cfg.ctx.registry_ptr());
        if (cfg.ctx.strict && !aligned.excluded.empty())
            throw SampleError("language '" + aligned.excluded.front().language +
                              "' is absent from the source");
        auto build = distances::build_from_vectors(*vs, aligned.mapped, norm);
        auto result =
            report::translate_result(metrics::mpd(aligned.mapped, build.matrix), aligned);
        print_metric("mpd", result);
    } else if (cfg.geo) {
        auto aligned = report::align_sample(
            sample,
            [&](const std::string& id) { return cfg.ctx.registry->find(id) != nullptr; },
            cfg.ctx.registry_ptr());
        auto build = distances::build_from_geo(*cfg.ctx.registry, aligned.mapped, cfg.ctx.strict);
        auto result =
            report::translate_result(metrics::mpd(aligned.mapped, build.matrix), aligned);
        print_metric("mpd", result);
    } else {
        auto aligned = report::align_sample(
            sample,
            [&](const std::string& id) { return cfg.ctx.registry->find(id) != nullptr; },
            cfg.ctx.registry_ptr());
        auto build =
            distances::build_from_lineages(*cfg.ctx.registry, aligned.mapped, cfg.ctx.strict);
        auto result =
            report::translate_result(metrics::mpd(aligned.mapped, build.matrix), aligned);
        print_metric("mpd", result);
    }
    return 0;
}

struct MpsdConfig {
    Context ctx;
    std::string sample_path;
    std::string vectors_path;
    std::string grambank_dir;
    double threshold = 0.05;
    bool raw_euclidean = false;
};

int run_mpsd(MpsdConfig& cfg) {
    if (cfg.vectors_path.empty() == cfg.grambank_dir.empty())
        throw UsageError("choose exactly one vector source: --vectors or --grambank");
    cfg.ctx.load();
    LanguageSample sample = prepare_sample(resolve_path(cfg.sample_path), cfg.ctx);

    std::optional<vectors::VectorSet> vs;
    if (!cfg.vectors_path.empty()) {
        vs = vectors::load_vector_table(resolve_path(cfg.vectors_path));
    } else {
        std::vector<std::string> warnings;
        auto fm = cldf::load_structure_dataset(resolve_path(cfg.grambank_dir), &warnings);
        for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
        vs = vectors::binarize(fm);
    }
    auto aligned = report::align_sample(
        sample, [&](const std::string& id) { return vs->language_index(id).has_value(); },
        cfg.ctx.registry_ptr());
    if (cfg.ctx.strict && !aligned.excluded.empty())
        throw SampleError("language '" + aligned.excluded.front().language +
                          "' is absent from the source");
    const auto norm = cfg.raw_euclidean ? distances::PairNorm::raw
                                        : distances::PairNorm::shared_dims;
    auto result = report::translate_result(
        metrics::mpsd(aligned.mapped, *vs, cfg.threshold, norm), aligned);
    print_metric("mpsd", result);
    return 0;
}

// --------------------------------------------------------------------- fvi

struct FviConfig {
    Context ctx;
    std::string sample_path;
    std::string grambank_dir;
    bool per_feature = false;
};

int run_fvi(FviConfig& cfg) {
    cfg.ctx.load();
    LanguageSample sample = prepare_sample(resolve_path(cfg.sample_path), cfg.ctx);
    std::vector<std::string> warnings;
    auto fm = cldf::load_structure_dataset(resolve_path(cfg.grambank_dir), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    auto aligned = report::align_sample(
        sample, [&](const std::string& id) { return fm.language_index(id).has_value(); },
        cfg.ctx.registry_ptr());
    if (cfg.ctx.strict && !aligned.excluded.empty())
        throw SampleError("language '" + aligned.excluded.front().language +
                          "' is absent from the feature matrix");
    auto result = report::translate_result(metrics::fvi(aligned.mapped, fm), aligned);

    json doc;
    doc["metric"] = "fvi";
    doc["value"] = result.value;
    doc["n_used"] = result.used.ids.size();
    doc["feature_count"] = result.feature_count;
    doc["used"] = result.used.ids;
    doc["excluded"] = exclusions_json(result.excluded);
    if (cfg.per_feature) {
        json arr = json::array();
        for (const auto& item : metrics::fvi_per_feature(aligned.mapped, fm)) {
            arr.push_back(json{{"feature", item.feature_id},
                               {"covered", item.covered_values},
                               {"domain_size", item.domain_size},
                               {"ratio", item.ratio}});
        }
        doc["per_feature"] = std::move(arr);
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
}

// ----------------------------------------------------------------- summary

struct SummaryConfig {
    Context ctx;
    std::string sample_path;
    std::string grambank_dir;
    std::string vectors_path;
    std::string distances_path;
    bool geo = false;
    bool genetic = false;
    double threshold = 0.05;
    bool per_feature = false;
    bool raw_euclidean = false;
    std::string format = "json";
    std::string out_path;
    std::string label;
};

int run_summary(SummaryConfig& cfg) {
    cfg.ctx.load();
    LanguageSample sample = prepare_sample(resolve_path(cfg.sample_path), cfg.ctx);
    if (!cfg.label.empty()) sample.label = cfg.label;

    std::optional<vectors::VectorSet> vs;
    std::optional<DistanceMatrix> dm;
    std::optional<cldf::FeatureMatrix> fm;
    report::ReportInputs inputs;
    report::ReportOptions options;
    options.coverage_threshold = cfg.threshold;
    options.norm = cfg.raw_euclidean ? distances::PairNorm::raw : distances::PairNorm::shared_dims;
    options.per_feature = cfg.per_feature;
    options.strict = cfg.ctx.strict;

    if (!cfg.grambank_dir.empty()) {
        std::vector<std::string> warnings;
        fm = cldf::load_structure_dataset(resolve_path(cfg.grambank_dir), &warnings);
        for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
        inputs.feature_matrix = &*fm;
        options.dataset_versions["feature_matrix"] = cfg.grambank_dir;
        // the binarized matrix doubles as the syntactic vector source
        if (cfg.vectors_path.empty()) {
            vs = vectors::binarize(*fm);
            inputs.syntactic = &*vs;
        }
    }
    if (!cfg.vectors_path.empty()) {
        vs = vectors::load_vector_table(resolve_path(cfg.vectors_path));
        inputs.syntactic = &*vs;
        options.dataset_versions["vectors"] = cfg.vectors_path;
    }
    if (!cfg.distances_path.empty()) {
        dm = vectors::load_distance_matrix(resolve_path(cfg.distances_path));
        inputs.ingested = &*dm;
        options.dataset_versions["distances"] = cfg.distances_path;
    }
    inputs.registry = cfg.ctx.registry_ptr();
    inputs.geographic = cfg.geo;
    inputs.genetic = cfg.genetic;

    report::SampleReport rep = report::build_report(sample, inputs, options);

    std::string rendered;
    if (cfg.format == "json") {
        rendered = report::emit_json(rep);
    } else if (cfg.format == "csv") {
        rendered = report::emit_csv(rep);
    } else if (cfg.format == "md") {
        rendered = report::emit_markdown(rep);
    } else {
        throw UsageError("unknown format '" + cfg.format + "' (expected json, csv or md)");
    }
    write_output(cfg.out_path, rendered);
    return 0;
}

// --------------------------------------------------------------------- pca

struct PcaConfig {
    Context ctx;
    std::string grambank_dir;
    std::string vectors_path;
    std::string sample_path;
    std::string out_path;
    int components = 2;
    int width = 720;
    int height = 540;
    std::string title;
};

int run_pca(PcaConfig& cfg) {
    if (cfg.grambank_dir.empty() == cfg.vectors_path.empty())
        throw UsageError("choose exactly one vector source: --grambank or --vectors");
    cfg.ctx.load();

    std::optional<vectors::VectorSet> vs;
    if (!cfg.grambank_dir.empty()) {
        std::vector<std::string> warnings;
        auto fm = cldf::load_structure_dataset(resolve_path(cfg.grambank_dir), &warnings);
        for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
        vs = vectors::binarize(fm);
    } else {
        vs = vectors::load_vector_table(resolve_path(cfg.vectors_path));
    }

    pca::Projection projection = pca::fit(*vs, cfg.components);
    for (const auto& w : projection.warnings) std::cerr << "warning: " << w << "\n";

    LanguageSample highlight;
    if (!cfg.sample_path.empty()) {
        LanguageSample sample = prepare_sample(resolve_path(cfg.sample_path), cfg.ctx);
        auto aligned = report::align_sample(
            sample, [&](const std::string& id) { return vs->language_index(id).has_value(); },
            cfg.ctx.registry_ptr());
        for (const auto& e : aligned.excluded)
            std::cerr << "warning: highlight language '" << e.language << "' not plotted ("
                      << e.reason << ")\n";
        highlight = aligned.mapped;
    }

    pca::ScatterOptions options;
    options.width = cfg.width;
    options.height = cfg.height;
    options.title = cfg.title;
    pca::render_scatter(projection, highlight, resolve_path(cfg.out_path), options);

    for (Eigen::Index i = 0; i < projection.explained_variance_ratio.size(); ++i)
        std::cerr << "PC" << (i + 1) << " explained variance ratio: "
                  << projection.explained_variance_ratio(i) << "\n";
    return 0;
}

// ------------------------------------------------------------------- audit

struct AuditConfig {
    Context ctx;
    std::string scores_path;
    std::string grouping_path;
    std::string cldf_dir;
    std::string feature_id;
    std::string na_policy = "group";
    std::string format = "text";
};

int run_audit(AuditConfig& cfg) {
    const bool have_csv = !cfg.grouping_path.empty();
    const bool have_cldf = !cfg.cldf_dir.empty() && !cfg.feature_id.empty();
    if (have_csv == have_cldf)
        throw UsageError("choose exactly one grouping: --grouping CSV, or --cldf with --feature");
    cfg.ctx.load();

    audit::ScoreTable scores = audit::ScoreTable::load(resolve_path(cfg.scores_path));
    audit::FeatureGrouping grouping;
    if (have_csv) {
        grouping = audit::FeatureGrouping::load(resolve_path(cfg.grouping_path));
    } else {
        std::vector<std::string> warnings;
        auto fm = cldf::load_structure_dataset(resolve_path(cfg.cldf_dir), &warnings);
        for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
        grouping = audit::grouping_from_feature(fm, cfg.feature_id);
    }

    // move scored ids into the grouping's id space when a registry is given
    if (cfg.ctx.registry) {
        audit::ScoreTable remapped;
        for (const auto& [lang, score] : scores.scores) {
            std::string use = lang;
            if (!grouping.value_by_language.count(lang)) {
                if (const auto* rec = cfg.ctx.registry->find(lang)) {
                    if (grouping.value_by_language.count(rec->glottocode)) {
                        use = rec->glottocode;
                    } else if (rec->iso639_3 &&
                               grouping.value_by_language.count(*rec->iso639_3)) {
                        use = *rec->iso639_3;
                    }
                }
            }
            if (!remapped.scores.emplace(use, score).second)
                throw DataError("two scored languages map onto '" + use + "'");
        }
        scores = std::move(remapped);
    }

    audit::NaPolicy policy;
    if (cfg.na_policy == "group") {
        policy = audit::NaPolicy::group;
    } else if (cfg.na_policy == "exclude") {
        policy = audit::NaPolicy::exclude;
    } else {
        throw UsageError("unknown na-policy '" + cfg.na_policy + "' (expected group or exclude)");
    }

    audit::AuditResult result = audit::run_audit(scores, grouping, policy);

    if (cfg.format == "json") {
        json doc;
        doc["overall_mean"] = result.overall_mean;
        doc["overall_count"] = result.overall_count;
        doc["by_feature_mean"] = result.by_feature_mean;
        doc["delta"] = result.delta;
        doc["na_policy"] = cfg.na_policy;
        json groups = json::array();
        for (const auto& g : result.groups)
            groups.push_back(json{{"value", g.value}, {"mean", g.mean}, {"count", g.count}});
        doc["groups"] = std::move(groups);
        std::cout << doc.dump(2) << "\n";
    } else {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "Overall %.2f (%zu) | By-Feature %.2f | Delta %+.2f",
                      result.overall_mean, result.overall_count, result.by_feature_mean,
                      result.delta);
        std::cout << buf << "\n";
        for (const auto& g : result.groups) {
            std::snprintf(buf, sizeof(buf), "  %-32s %.2f (%zu)", g.value.c_str(), g.mean,
                          g.count);
            std::cout << buf << "\n";
        }
        std::cout << "(na_policy=" << cfg.na_policy << ")\n";
    }
    return 0;
}

// -------------------------------------------------------------- scan/stats

struct ScanConfig {
    std::string papers_path;
    std::string title;
    std::string abstract;
};

int run_scan(ScanConfig& cfg) {
    if (!cfg.papers_path.empty()) {
        auto papers = survey::load_papers(resolve_path(cfg.papers_path));
        std::cout << "id,matched,field,span\n";
        for (const auto& rec : papers) {
            auto match = survey::scan_claims(rec);
            std::cout << rec.id << ',' << (match.matched ? "true" : "false") << ','
                      << match.field << ",\"" << match.span << "\"\n";
        }
        return 0;
    }
    if (cfg.title.empty() && cfg.abstract.empty())
        throw UsageError("give --papers, or --title/--abstract text");
    survey::PaperRecord rec;
    rec.title = cfg.title;
    rec.abstract = cfg.abstract;
    auto match = survey::scan_claims(rec);
    if (match.matched) {
        std::cout << "matched (" << match.field << "): " << match.span << "\n";
    } else {
        std::cout << "no match\n";
    }
    return 0;
}

struct StatsConfig {
    std::string papers_path;
    std::string kappa_path;
    std::size_t top = 0;
};

int run_stats(StatsConfig& cfg) {
    if (!cfg.kappa_path.empty()) {
        csv::Table table = csv::Table::read(resolve_path(cfg.kappa_path));
        const std::size_t a_col = table.column("a");
        const std::size_t b_col = table.column("b");
        std::vector<std::string> a, b;
        for (const auto& row : table.rows()) {
            a.push_back(table.field(row, a_col));
            b.push_back(table.field(row, b_col));
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "kappa %.4f (n=%zu)", survey::cohen_kappa(a, b), a.size());
        std::cout << buf << "\n";
        return 0;
    }
    if (cfg.papers_path.empty()) throw UsageError("give --papers or --kappa");

    auto papers = survey::load_papers(resolve_path(cfg.papers_path));
    std::vector<double> sizes;
    for (const auto& rec : papers)
        if (rec.sample) sizes.push_back(static_cast<double>(rec.sample->size()));
    std::cout << "papers " << papers.size() << ", with language sample " << sizes.size() << "\n";
    if (!sizes.empty()) {
        auto s = survey::sample_size_stats(sizes);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "languages per paper: min %g, q1 %g, median %g, q3 %g, max %g",
                      s.min, s.q1, s.median, s.q3, s.max);
        std::cout << buf << "\n";
    }
    auto counts = survey::usage_counts(papers);
    std::cout << "usage counts:\n";
    std::size_t shown = 0;
    for (const auto& [lang, count] : counts) {
        if (cfg.top > 0 && shown >= cfg.top) break;
        std::cout << "  " << lang << " " << count << "\n";
        ++shown;
    }
    return 0;
}

// --------------------------------------------------------------------- map

struct MapConfig {
    Context ctx;
    std::string papers_path;
    std::string sample_path;
    std::string out_path;
    int width = 960;
    int height = 480;
    std::string title;
};

int run_map(MapConfig& cfg) {
    if (cfg.ctx.registry_path.empty()) throw UsageError("map requires --registry");
    if (cfg.papers_path.empty() == cfg.sample_path.empty())
        throw UsageError("choose exactly one input: --papers or --sample");
    cfg.ctx.load();

    std::vector<report::MapEntry> entries;
    auto add_entry = [&](const std::string& id, std::size_t count) {
        report::MapEntry e;
        e.id = id;
        e.count = count;
        if (const auto* rec = cfg.ctx.registry->find(id)) {
            e.latitude = rec->latitude;
            e.longitude = rec->longitude;
        } else if (cfg.ctx.strict) {
            throw UnknownCodeError(id, "not in the registry");
        }
        entries.push_back(std::move(e));
    };

    if (!cfg.papers_path.empty()) {
        auto papers = survey::load_papers(resolve_path(cfg.papers_path));
        for (const auto& [lang, count] : survey::usage_counts(papers)) add_entry(lang, count);
    } else {
        LanguageSample sample = prepare_sample(resolve_path(cfg.sample_path), cfg.ctx);
        for (const auto& id : sample.ids) add_entry(id, 1);
    }

    report::MapOptions options;
    options.width = cfg.width;
    options.height = cfg.height;
    options.title = cfg.title;
    svg::write_file(resolve_path(cfg.out_path), report::render_map(entries, options));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"typdiv: typological diversity measures for language samples"};
    app.require_subcommand(1);

    MpdConfig mpd_cfg;
    auto* mpd_cmd = app.add_subcommand("mpd", "mean pairwise distance over a distance source");
    mpd_cmd->add_option("--sample", mpd_cfg.sample_path, "sample file")->required();
    mpd_cmd->add_option("--distances", mpd_cfg.distances_path, "precomputed distance matrix CSV");
    mpd_cmd->add_option("--vectors", mpd_cfg.vectors_path, "vector table TSV");
    mpd_cmd->add_option("--grambank", mpd_cfg.grambank_dir, "CLDF structure dataset directory");
    mpd_cmd->add_flag("--geo", mpd_cfg.geo, "geographic distances from registry coordinates");
    mpd_cmd->add_flag("--genetic", mpd_cfg.genetic, "genealogical distances from registry lineages");
    mpd_cmd->add_flag("--raw-euclidean", mpd_cfg.raw_euclidean,
                      "unnormalized Euclidean distance (unbounded)");
    add_context_options(mpd_cmd, mpd_cfg.ctx);

    MpsdConfig mpsd_cfg;
    auto* mpsd_cmd =
        app.add_subcommand("mpsd", "mean pairwise syntactic distance with coverage filtering");
    mpsd_cmd->add_option("--sample", mpsd_cfg.sample_path, "sample file")->required();
    mpsd_cmd->add_option("--vectors", mpsd_cfg.vectors_path, "vector table TSV");
    mpsd_cmd->add_option("--grambank", mpsd_cfg.grambank_dir, "CLDF structure dataset directory");
    mpsd_cmd->add_option("--threshold", mpsd_cfg.threshold, "coverage threshold (default 0.05)");
    mpsd_cmd->add_flag("--raw-euclidean", mpsd_cfg.raw_euclidean,
                       "unnormalized Euclidean distance (unbounded)");
    add_context_options(mpsd_cmd, mpsd_cfg.ctx);

    FviConfig fvi_cfg;
    auto* fvi_cmd = app.add_subcommand("fvi", "feature value inclusion over a structure dataset");
    fvi_cmd->add_option("--sample", fvi_cfg.sample_path, "sample file")->required();
    fvi_cmd->add_option("--grambank", fvi_cfg.grambank_dir, "CLDF structure dataset directory")
        ->required();
    fvi_cmd->add_flag("--per-feature", fvi_cfg.per_feature, "itemized per-feature breakdown");
    add_context_options(fvi_cmd, fvi_cfg.ctx);

    SummaryConfig summary_cfg;
    auto* summary_cmd = app.add_subcommand("summary", "full diversity report for a sample");
    summary_cmd->add_option("--sample", summary_cfg.sample_path, "sample file")->required();
    summary_cmd->add_option("--grambank", summary_cfg.grambank_dir,
                            "CLDF structure dataset directory");
    summary_cmd->add_option("--vectors", summary_cfg.vectors_path, "vector table TSV");
    summary_cmd->add_option("--distances", summary_cfg.distances_path, "distance matrix CSV");
    summary_cmd->add_flag("--geo", summary_cfg.geo, "include geographic distances");
    summary_cmd->add_flag("--genetic", summary_cfg.genetic, "include genealogical distances");
    summary_cmd->add_option("--threshold", summary_cfg.threshold,
                            "coverage threshold (default 0.05)");
    summary_cmd->add_flag("--per-feature", summary_cfg.per_feature, "per-feature fvi breakdown");
    summary_cmd->add_flag("--raw-euclidean", summary_cfg.raw_euclidean,
                          "unnormalized Euclidean distance");
    summary_cmd->add_option("--format", summary_cfg.format, "json, csv or md (default json)");
    summary_cmd->add_option("--out", summary_cfg.out_path, "output path (default stdout)");
    summary_cmd->add_option("--label", summary_cfg.label, "override the sample label");
    add_context_options(summary_cmd, summary_cfg.ctx);

    PcaConfig pca_cfg;
    auto* pca_cmd = app.add_subcommand("pca", "project languages to 2D and render a scatter plot");
    pca_cmd->add_option("--grambank", pca_cfg.grambank_dir, "CLDF structure dataset directory");
    pca_cmd->add_option("--vectors", pca_cfg.vectors_path, "vector table TSV");
    pca_cmd->add_option("--sample", pca_cfg.sample_path, "sample to highlight");
    pca_cmd->add_option("--out", pca_cfg.out_path, "output SVG path")->required();
    pca_cmd->add_option("-k,--components", pca_cfg.components, "component count (default 2)");
    pca_cmd->add_option("--width", pca_cfg.width, "canvas width");
    pca_cmd->add_option("--height", pca_cfg.height, "canvas height");
    pca_cmd->add_option("--title", pca_cfg.title, "plot title");
    add_context_options(pca_cmd, pca_cfg.ctx);

    AuditConfig audit_cfg;
    auto* audit_cmd =
        app.add_subcommand("audit", "overall vs by-feature-value macro average of scores");
    audit_cmd->add_option("--scores", audit_cfg.scores_path, "scores CSV (language,score)")
        ->required();
    audit_cmd->add_option("--grouping", audit_cfg.grouping_path, "grouping CSV (language,value)");
    audit_cmd->add_option("--cldf", audit_cfg.cldf_dir, "CLDF dataset to derive the grouping from");
    audit_cmd->add_option("--feature", audit_cfg.feature_id, "feature id for --cldf grouping");
    audit_cmd->add_option("--na-policy", audit_cfg.na_policy,
                          "NA handling in the by-feature mean: group or exclude (default group)");
    audit_cmd->add_option("--format", audit_cfg.format, "text or json (default text)");
    add_context_options(audit_cmd, audit_cfg.ctx);

    ScanConfig scan_cfg;
    auto* scan_cmd = app.add_subcommand("scan", "scan titles/abstracts for diversity claims");
    scan_cmd->add_option("--papers", scan_cfg.papers_path, "papers CSV");
    scan_cmd->add_option("--title", scan_cfg.title, "single title to scan");
    scan_cmd->add_option("--abstract", scan_cfg.abstract, "single abstract to scan");

    StatsConfig stats_cfg;
    auto* stats_cmd = app.add_subcommand("stats", "sample-size statistics and usage counts");
    stats_cmd->add_option("--papers", stats_cfg.papers_path, "papers CSV");
    stats_cmd->add_option("--kappa", stats_cfg.kappa_path,
                          "two-rater label CSV (columns a,b); prints Cohen's kappa");
    stats_cmd->add_option("--top", stats_cfg.top, "show only the top N usage counts");

    MapConfig map_cfg;
    auto* map_cmd = app.add_subcommand("map", "world map of languages colored by usage");
    map_cmd->add_option("--papers", map_cfg.papers_path, "papers CSV (counts by usage)");
    map_cmd->add_option("--sample", map_cfg.sample_path, "sample file (uniform counts)");
    map_cmd->add_option("--out", map_cfg.out_path, "output SVG path")->required();
    map_cmd->add_option("--width", map_cfg.width, "canvas width");
    map_cmd->add_option("--height", map_cfg.height, "canvas height");
    map_cmd->add_option("--title", map_cfg.title, "plot title");
    add_context_options(map_cmd, map_cfg.ctx);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*mpd_cmd) return run_mpd(mpd_cfg);
        if (*mpsd_cmd) return run_mpsd(mpsd_cfg);
        if (*fvi_cmd) return run_fvi(fvi_cfg);
        if (*summary_cmd) return run_summary(summary_cfg);
        if (*pca_cmd) return run_pca(pca_cfg);
        if (*audit_cmd) return run_audit(audit_cfg);
        if (*scan_cmd) return run_scan(scan_cfg);
        if (*stats_cmd) return run_stats(stats_cfg);
        if (*map_cmd) return run_map(map_cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
