#ifndef TYPDIV_METRICS_HPP
#define TYPDIV_METRICS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "typdiv/cldf.hpp"
#include "typdiv/core.hpp"
#include "typdiv/distances.hpp"
#include "typdiv/vectors.hpp"

namespace typdiv::metrics {

// Outcome of one diversity measure over a sample. used + excluded
// together cover the input sample exactly.
struct MetricResult {
    double value = 0.0;
    LanguageSample used;
    std::vector<Exclusion> excluded;
    std::size_t pair_count = 0;     // unordered pairs averaged (distance metrics)
    std::size_t skipped_pairs = 0;  // pairs dropped for an undefined distance
    std::size_t feature_count = 0;  // features averaged (inclusion metric)

    friend bool operator==(const MetricResult&, const MetricResult&) = default;
};

// Mean pairwise distance: the average over all defined unordered pairs of
// sample languages. Equals the ordered-pair double sum normalized by
// |L|(|L|-1) when every pair is defined. Sample members absent from the
// matrix are excluded, not fatal; fewer than two usable languages is.
MetricResult mpd(const LanguageSample& sample, const DistanceMatrix& dm);

// Mean pairwise syntactic distance: coverage_filter at `threshold`, then
// pairwise distances over the vector set, then mpd. Exclusions from the
// filter are carried through.
MetricResult mpsd(const LanguageSample& sample, const vectors::VectorSet& vs,
                  double threshold = 0.05,
                  distances::PairNorm norm = distances::PairNorm::shared_dims);

// Feature value inclusion: per feature, the fraction of its possible
// non-missing values attested in the sample (distinct-value semantics),
// averaged over all features. Both missing kinds count as not attested.
MetricResult fvi(const LanguageSample& sample, const cldf::FeatureMatrix& matrix);

struct FeatureInclusion {
    std::string feature_id;
    std::vector<std::string> covered_values;
    std::size_t domain_size = 0;
    double ratio = 0.0;

    friend bool operator==(const FeatureInclusion&, const FeatureInclusion&) = default;
};

// Itemized fvi; the mean of the ratios equals fvi's value.
std::vector<FeatureInclusion> fvi_per_feature(const LanguageSample& sample,
                                              const cldf::FeatureMatrix& matrix);

// Sample file: one code per line, '#' starts a comment, blank lines
// ignored. Codes are lowercased; duplicates are an error. The label
// defaults to the file stem.
LanguageSample load_sample(const std::filesystem::path& path);

} // namespace typdiv::metrics

#endif
