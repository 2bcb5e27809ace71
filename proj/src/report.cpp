#include "typdiv/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <json.hpp>

#include "typdiv/error.hpp"
#include "typdiv/svg.hpp"

namespace typdiv::report {

namespace {

using json = nlohmann::ordered_json;

json exclusions_to_json(const std::vector<Exclusion>& excluded) {
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

std::vector<Exclusion> exclusions_from_json(const json& arr) {
    std::vector<Exclusion> out;
    for (const auto& item : arr) {
        Exclusion e;
        e.language = item.at("language").get<std::string>();
        e.reason = item.at("reason").get<std::string>();
        if (item.contains("ratio")) e.ratio = item.at("ratio").get<double>();
        out.push_back(std::move(e));
    }
    return out;
}

json outcome_to_json(const SourceOutcome& outcome) {
    json obj;
    if (outcome.ok()) {
        const auto& r = *outcome.result;
        obj["value"] = r.value;
        obj["pair_count"] = r.pair_count;
        obj["skipped_pairs"] = r.skipped_pairs;
        obj["feature_count"] = r.feature_count;
        obj["used"] = json{{"label", r.used.label}, {"ids", r.used.ids}};
        obj["excluded"] = exclusions_to_json(r.excluded);
    } else {
        obj["error"] = outcome.error;
    }
    return obj;
}

SourceOutcome outcome_from_json(const json& obj) {
    SourceOutcome outcome;
    if (obj.contains("error")) {
        outcome.error = obj.at("error").get<std::string>();
        return outcome;
    }
    metrics::MetricResult r;
    r.value = obj.at("value").get<double>();
    r.pair_count = obj.at("pair_count").get<std::size_t>();
    r.skipped_pairs = obj.at("skipped_pairs").get<std::size_t>();
    r.feature_count = obj.at("feature_count").get<std::size_t>();
    r.used.label = obj.at("used").at("label").get<std::string>();
    r.used.ids = obj.at("used").at("ids").get<std::vector<std::string>>();
    r.excluded = exclusions_from_json(obj.at("excluded"));
    outcome.result = std::move(r);
    return outcome;
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace

AlignedSample align_sample(const LanguageSample& sample,
                           const std::function<bool(const std::string&)>& contains,
                           const langmeta::Registry* registry) {
    AlignedSample out;
    std::vector<std::string> mapped;
    for (const auto& id : sample.ids) {
        std::string use;
        if (contains(id)) {
            use = id;
        } else if (registry) {
            if (const auto* rec = registry->find(id)) {
                if (contains(rec->glottocode)) {
                    use = rec->glottocode;
                } else if (rec->iso639_3 && contains(*rec->iso639_3)) {
                    use = *rec->iso639_3;
                }
            }
        }
        if (use.empty()) {
            out.excluded.push_back({id, "absent", std::nullopt});
        } else if (out.back.count(use)) {
            // two sample spellings collapse onto one source language
            out.excluded.push_back({id, "duplicate_of:" + out.back.at(use), std::nullopt});
        } else {
            out.back.emplace(use, id);
            mapped.push_back(std::move(use));
        }
    }
    out.mapped = LanguageSample{std::move(mapped), sample.label};
    return out;
}

metrics::MetricResult translate_result(metrics::MetricResult result, const AlignedSample& aligned) {
    for (auto& id : result.used.ids) {
        auto it = aligned.back.find(id);
        if (it != aligned.back.end()) id = it->second;
    }
    for (auto& e : result.excluded) {
        auto it = aligned.back.find(e.language);
        if (it != aligned.back.end()) e.language = it->second;
    }
    result.excluded.insert(result.excluded.begin(), aligned.excluded.begin(),
                           aligned.excluded.end());
    return result;
}

SampleReport build_report(const LanguageSample& sample, const ReportInputs& inputs,
                          const ReportOptions& options) {
    const bool any_source = inputs.syntactic || inputs.ingested || inputs.feature_matrix ||
                            inputs.geographic || inputs.genetic;
    if (!any_source) throw UsageError("no data source configured");
    if ((inputs.geographic || inputs.genetic) && !inputs.registry)
        throw UsageError("geographic and genetic sources require a registry");

    SampleReport report;
    report.sample_label = sample.label;
    report.sample_ids = sample.ids;
    report.n_languages = sample.size();
    report.tool_version = kToolVersion;
    report.dataset_versions = options.dataset_versions;

    std::size_t failures = 0;
    std::vector<std::string> causes;
    auto run = [&](const std::string& name, auto&& compute) {
        SourceOutcome outcome;
        try {
            outcome.result = compute();
        } catch (const std::exception& e) {
            if (options.strict) throw;
            outcome.error = e.what();
            ++failures;
            causes.push_back(name + ": " + e.what());
        }
        return outcome;
    };

    std::size_t configured = 0;
    if (inputs.syntactic) {
        ++configured;
        report.sources["syntactic"] = run("syntactic", [&] {
            auto aligned = align_sample(
                sample,
                [&](const std::string& id) { return inputs.syntactic->language_index(id).has_value(); },
                inputs.registry);
            auto result = metrics::mpsd(aligned.mapped, *inputs.syntactic,
                                        options.coverage_threshold, options.norm);
            return translate_result(std::move(result), aligned);
        });
    }
    if (inputs.genetic) {
        ++configured;
        report.sources["genetic"] = run("genetic", [&] {
            auto aligned = align_sample(
                sample,
                [&](const std::string& id) { return inputs.registry->find(id) != nullptr; },
                inputs.registry);
            auto build = distances::build_from_lineages(*inputs.registry, aligned.mapped);
            auto result = metrics::mpd(aligned.mapped, build.matrix);
            return translate_result(std::move(result), aligned);
        });
    }
    if (inputs.geographic) {
        ++configured;
        report.sources["geographic"] = run("geographic", [&] {
            auto aligned = align_sample(
                sample,
                [&](const std::string& id) { return inputs.registry->find(id) != nullptr; },
                inputs.registry);
            auto build = distances::build_from_geo(*inputs.registry, aligned.mapped);
            auto result = metrics::mpd(aligned.mapped, build.matrix);
            return translate_result(std::move(result), aligned);
        });
    }
    if (inputs.ingested) {
        ++configured;
        report.sources["ingested"] = run("ingested", [&] {
            auto aligned = align_sample(
                sample,
                [&](const std::string& id) { return inputs.ingested->index_of(id).has_value(); },
                inputs.registry);
            auto result = metrics::mpd(aligned.mapped, *inputs.ingested);
            return translate_result(std::move(result), aligned);
        });
    }
    if (inputs.feature_matrix) {
        ++configured;
        report.fvi = run("fvi", [&] {
            auto aligned = align_sample(
                sample,
                [&](const std::string& id) {
                    return inputs.feature_matrix->language_index(id).has_value();
                },
                inputs.registry);
            auto result = metrics::fvi(aligned.mapped, *inputs.feature_matrix);
            if (options.per_feature)
                report.fvi_per_feature =
                    metrics::fvi_per_feature(aligned.mapped, *inputs.feature_matrix);
            return translate_result(std::move(result), aligned);
        });
    }

    if (failures == configured) {
        std::ostringstream msg;
        msg << "every configured source failed:";
        for (const auto& cause : causes) msg << "\n  " << cause;
        throw SampleError(msg.str());
    }
    return report;
}

std::string emit_json(const SampleReport& report) {
    json doc;
    doc["schema_version"] = report.schema_version;
    doc["sample"] = json{{"label", report.sample_label}, {"ids", report.sample_ids}};
    doc["n_languages"] = report.n_languages;
    json sources;
    for (const auto& name : kSourceNames) {
        auto it = report.sources.find(name);
        sources[name] = it == report.sources.end() ? json(nullptr) : outcome_to_json(it->second);
    }
    doc["sources"] = std::move(sources);
    doc["fvi"] = report.fvi ? outcome_to_json(*report.fvi) : json(nullptr);
    if (!report.fvi_per_feature.empty()) {
        json arr = json::array();
        for (const auto& item : report.fvi_per_feature) {
            arr.push_back(json{{"feature", item.feature_id},
                               {"covered", item.covered_values},
                               {"domain_size", item.domain_size},
                               {"ratio", item.ratio}});
        }
        doc["fvi_per_feature"] = std::move(arr);
    }
    doc["versions"] =
        json{{"tool", report.tool_version}, {"datasets", report.dataset_versions}};
    return doc.dump(2) + "\n";
}

SampleReport parse_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid report JSON: ") + e.what());
    }
    try {
        SampleReport report;
        report.schema_version = doc.at("schema_version").get<std::string>();
        report.sample_label = doc.at("sample").at("label").get<std::string>();
        report.sample_ids = doc.at("sample").at("ids").get<std::vector<std::string>>();
        report.n_languages = doc.at("n_languages").get<std::size_t>();
        for (const auto& name : kSourceNames) {
            const auto& src = doc.at("sources").at(name);
            if (!src.is_null()) report.sources[name] = outcome_from_json(src);
        }
        if (!doc.at("fvi").is_null()) report.fvi = outcome_from_json(doc.at("fvi"));
        if (doc.contains("fvi_per_feature")) {
            for (const auto& item : doc.at("fvi_per_feature")) {
                metrics::FeatureInclusion fi;
                fi.feature_id = item.at("feature").get<std::string>();
                fi.covered_values = item.at("covered").get<std::vector<std::string>>();
                fi.domain_size = item.at("domain_size").get<std::size_t>();
                fi.ratio = item.at("ratio").get<double>();
                report.fvi_per_feature.push_back(std::move(fi));
            }
        }
        report.tool_version = doc.at("versions").at("tool").get<std::string>();
        report.dataset_versions =
            doc.at("versions").at("datasets").get<std::map<std::string, std::string>>();
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed report JSON: ") + e.what());
    }
}

std::string emit_csv(const SampleReport& report) {
    auto source_cell = [&](const std::string& name) -> std::string {
        auto it = report.sources.find(name);
        if (it != report.sources.end() && it->second.ok()) return fmt6(it->second.result->value);
        return "";
    };
    std::ostringstream out;
    out << "sample,n_languages,mpsd,fvi,mpd_genetic,mpd_geographic,mpd_ingested\n";
    out << report.sample_label << ',' << report.n_languages;
    out << ',' << source_cell("syntactic");
    out << ',' << (report.fvi && report.fvi->ok() ? fmt6(report.fvi->result->value) : "");
    out << ',' << source_cell("genetic");
    out << ',' << source_cell("geographic");
    out << ',' << source_cell("ingested");
    out << '\n';
    return out.str();
}

std::string emit_markdown(const SampleReport& report) {
    auto cell = [](const std::optional<SourceOutcome>& outcome) -> std::string {
        if (!outcome) return "—";
        if (!outcome->ok()) return "error";
        const auto& r = *outcome->result;
        bool lowcov = false, other = false;
        for (const auto& e : r.excluded) (e.reason == "low_coverage" ? lowcov : other) = true;
        std::string marker;
        if (lowcov) marker += "*";
        if (other) marker += "†";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", r.value);
        return buf + marker;
    };

    std::optional<SourceOutcome> syntactic;
    auto it = report.sources.find("syntactic");
    if (it == report.sources.end()) it = report.sources.find("ingested");
    if (it != report.sources.end()) syntactic = it->second;

    std::ostringstream out;
    out << "| Sample | L | MPSD | FVI |\n";
    out << "|---|---:|---|---|\n";
    out << "| " << (report.sample_label.empty() ? "(unnamed)" : report.sample_label) << " | "
        << report.n_languages << " | " << cell(syntactic) << " | " << cell(report.fvi) << " |\n";
    out << "\n`*` low-coverage exclusions, `†` languages missing from a source.\n";
    return out.str();
}

std::string render_distribution_strip(const std::vector<double>& values,
                                      const StripOptions& options) {
    if (values.empty()) throw DataError("no values to render");
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw DataError("distribution values must lie in [0,1]");
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double sigma = std::sqrt(var / static_cast<double>(values.size()));

    const double margin = 40.0;
    svg::Document doc(options.width, options.height);
    const double axis_y = options.height * 0.62;
    const double plot_w = options.width - 2 * margin;
    auto sx = [&](double v) { return margin + v * plot_w; };

    if (!options.title.empty()) doc.text(options.width / 2.0, 18.0, options.title, 13, "middle");
    doc.line(margin, axis_y, margin + plot_w, axis_y, "#333333");
    doc.text(margin, axis_y + 18.0, "0", 11, "middle");
    doc.text(margin + plot_w, axis_y + 18.0, "1", 11, "middle");

    doc.open_group("ticks");
    for (double v : values) doc.line(sx(v), axis_y - 14.0, sx(v), axis_y, "#2b6cb0", 1.5);
    doc.close_group();

    char annotation[96];
    std::snprintf(annotation, sizeof(annotation), "mean = %.3f, sd = %.3f (n = %zu)", mean, sigma,
                  values.size());
    doc.text(options.width / 2.0, axis_y + 36.0, annotation, 12, "middle");
    return doc.str();
}

std::string render_scatter_xy(const std::vector<std::pair<double, double>>& points,
                              const ScatterXYOptions& options) {
    if (points.empty()) throw DataError("no points to render");
    for (const auto& [count, value] : points) {
        if (count < 0.0) throw DataError("negative count in scatter data");
        if (!std::isfinite(value)) throw DataError("non-finite value in scatter data");
    }
    double xmax = 0.0, ymin = points[0].second, ymax = points[0].second;
    for (const auto& [x, y] : points) {
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (xmax == 0.0) xmax = 1.0;
    if (ymax == ymin) {
        ymax += 0.5;
        ymin -= 0.5;
    }

    const double margin = 48.0;
    const double plot_w = options.width - 2 * margin;
    const double plot_h = options.height - 2 * margin;
    auto sx = [&](double v) { return margin + v / (xmax * 1.05) * plot_w; };
    auto sy = [&](double v) { return margin + plot_h - (v - ymin) / (ymax - ymin) * plot_h; };

    svg::Document doc(options.width, options.height);
    if (!options.title.empty())
        doc.text(options.width / 2.0, margin / 2.0, options.title, 13, "middle");
    doc.line(margin, margin + plot_h, margin + plot_w, margin + plot_h, "#333333");
    doc.line(margin, margin, margin, margin + plot_h, "#333333");
    doc.text(margin + plot_w / 2.0, options.height - margin / 4.0, options.x_label, 12, "middle");
    doc.text(margin / 3.0, margin + plot_h / 2.0, options.y_label, 12, "middle");

    doc.open_group("points");
    for (const auto& [x, y] : points) doc.circle(sx(x), sy(y), 3.5, "#2b6cb0");
    doc.close_group();
    return doc.str();
}

namespace {

std::string ramp_color(double t) {
    auto hex_channel = [](const char* color, int i) {
        auto value = [](char c) {
            return c <= '9' ? c - '0' : (c | 0x20) - 'a' + 10;
        };
        return value(color[1 + 2 * i]) * 16 + value(color[2 + 2 * i]);
    };
    char buf[8];
    int rgb[3];
    for (int i = 0; i < 3; ++i) {
        const int lo = hex_channel(kMapLowColor, i);
        const int hi = hex_channel(kMapHighColor, i);
        rgb[i] = static_cast<int>(std::lround(lo + t * (hi - lo)));
    }
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

} // namespace

std::string render_map(const std::vector<MapEntry>& entries, const MapOptions& options) {
    std::size_t max_count = 0;
    for (const auto& e : entries)
        if (e.latitude) max_count = std::max(max_count, e.count);

    svg::Document doc(options.width, options.height);
    doc.rect(0, 0, options.width, options.height, "#eef3f7");
    if (!options.title.empty()) doc.text(options.width / 2.0, 16.0, options.title, 13, "middle");

    // grid: equator and prime meridian
    doc.line(0, options.height / 2.0, options.width, options.height / 2.0, "#c8d4dd");
    doc.line(options.width / 2.0, 0, options.width / 2.0, options.height, "#c8d4dd");

    auto sx = [&](double lon) { return (lon + 180.0) / 360.0 * options.width; };
    auto sy = [&](double lat) { return (90.0 - lat) / 180.0 * options.height; };

    doc.open_group("languages");
    std::vector<std::string> missing;
    for (const auto& e : entries) {
        if (!e.latitude || !e.longitude) {
            missing.push_back(e.id);
            continue;
        }
        const double t =
            max_count <= 1 ? 1.0 : static_cast<double>(e.count) / static_cast<double>(max_count);
        doc.circle(sx(*e.longitude), sy(*e.latitude), kMapMarkerRadius, ramp_color(t));
    }
    doc.close_group();

    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        std::string note = "no coordinates: ";
        for (std::size_t i = 0; i < missing.size(); ++i) {
            if (i) note += ", ";
            note += missing[i];
        }
        doc.text(8.0, options.height - 8.0, note, 11);
    } else if (entries.empty()) {
        doc.text(8.0, options.height - 8.0, "no languages to plot", 11);
    }
    return doc.str();
}

} // namespace typdiv::report
