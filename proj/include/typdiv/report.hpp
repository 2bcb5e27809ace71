#ifndef TYPDIV_REPORT_HPP
#define TYPDIV_REPORT_HPP

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "typdiv/cldf.hpp"
#include "typdiv/core.hpp"
#include "typdiv/distances.hpp"
#include "typdiv/langmeta.hpp"
#include "typdiv/metrics.hpp"
#include "typdiv/vectors.hpp"

namespace typdiv::report {

// Map color ramp endpoints (linear RGB interpolation by usage count).
inline constexpr const char* kMapLowColor = "#fde8c8";
inline constexpr const char* kMapHighColor = "#7f1d1d";
inline constexpr double kMapMarkerRadius = 4.0;

inline const std::vector<std::string> kSourceNames = {"syntactic", "genetic", "geographic",
                                                      "ingested"};

// One distance source's outcome: a result, or the reason it failed.
struct SourceOutcome {
    std::optional<metrics::MetricResult> result;
    std::string error;

    bool ok() const noexcept { return result.has_value(); }
    friend bool operator==(const SourceOutcome&, const SourceOutcome&) = default;
};

struct SampleReport {
    std::string schema_version = "1";
    std::string sample_label;
    std::vector<std::string> sample_ids;
    std::size_t n_languages = 0;
    std::map<std::string, SourceOutcome> sources;  // keyed by source name; absent = not configured
    std::optional<SourceOutcome> fvi;
    std::vector<metrics::FeatureInclusion> fvi_per_feature;
    std::string tool_version;
    std::map<std::string, std::string> dataset_versions;

    friend bool operator==(const SampleReport&, const SampleReport&) = default;
};

struct ReportInputs {
    const vectors::VectorSet* syntactic = nullptr;       // enables the mpsd source
    const DistanceMatrix* ingested = nullptr;            // enables the ingested source
    const cldf::FeatureMatrix* feature_matrix = nullptr; // enables fvi
    const langmeta::Registry* registry = nullptr;        // id alignment; required for geo/genetic
    bool geographic = false;
    bool genetic = false;
};

struct ReportOptions {
    double coverage_threshold = 0.05;
    distances::PairNorm norm = distances::PairNorm::shared_dims;
    bool per_feature = false;
    bool strict = false;
    std::map<std::string, std::string> dataset_versions;
};

// Computes every configured measure; sources that cannot be computed are
// reported with their error. Throws only when nothing succeeds.
SampleReport build_report(const LanguageSample& sample, const ReportInputs& inputs,
                          const ReportOptions& options = {});

struct AlignedSample {
    LanguageSample mapped;                        // ids in source-id space, sample order
    std::map<std::string, std::string> back;      // source id -> original sample id
    std::vector<Exclusion> excluded;              // original ids with no usable form
};

// Maps sample ids onto a source's id space, trying the id itself, then the
// registry's glottocode and ISO forms. Used ids are translated back to the
// original sample spelling in reports.
AlignedSample align_sample(const LanguageSample& sample,
                           const std::function<bool(const std::string&)>& contains,
                           const langmeta::Registry* registry);

// Translates a metric result computed in source-id space back to the
// original sample ids and merges alignment exclusions.
metrics::MetricResult translate_result(metrics::MetricResult result, const AlignedSample& aligned);

std::string emit_json(const SampleReport& report);
SampleReport parse_json(const std::string& text);
std::string emit_csv(const SampleReport& report);
std::string emit_markdown(const SampleReport& report);

struct StripOptions {
    int width = 640;
    int height = 120;
    std::string title;
};

// One tick per value on a [0,1] axis, annotated with the mean and the
// population standard deviation.
std::string render_distribution_strip(const std::vector<double>& values,
                                      const StripOptions& options = {});

struct ScatterXYOptions {
    int width = 640;
    int height = 480;
    std::string x_label = "languages";
    std::string y_label = "value";
    std::string title;
};

// (count, value) scatter, e.g. diversity against sample size.
std::string render_scatter_xy(const std::vector<std::pair<double, double>>& points,
                              const ScatterXYOptions& options = {});

struct MapEntry {
    std::string id;
    std::optional<double> latitude;
    std::optional<double> longitude;
    std::size_t count = 1;
};

struct MapOptions {
    int width = 960;
    int height = 480;
    std::string title;
};

// Equirectangular world scatter; marker hue scales linearly with count
// between kMapLowColor and kMapHighColor. Entries without coordinates are
// listed in a note.
std::string render_map(const std::vector<MapEntry>& entries, const MapOptions& options = {});

} // namespace typdiv::report

#endif
