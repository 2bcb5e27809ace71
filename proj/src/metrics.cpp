#include "typdiv/metrics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "typdiv/csv.hpp"
#include "typdiv/error.hpp"

namespace typdiv::metrics {

namespace {

std::string describe_exclusions(const std::vector<Exclusion>& excluded) {
    std::ostringstream out;
    for (std::size_t i = 0; i < excluded.size(); ++i) {
        if (i) out << ", ";
        out << excluded[i].language << " (" << excluded[i].reason << ")";
    }
    return out.str();
}

} // namespace

MetricResult mpd(const LanguageSample& sample, const DistanceMatrix& dm) {
    MetricResult result;
    std::vector<Eigen::Index> rows;
    std::vector<std::string> used;
    for (const auto& id : sample.ids) {
        auto idx = dm.index_of(id);
        if (idx) {
            rows.push_back(*idx);
            used.push_back(id);
        } else {
            result.excluded.push_back({id, "absent", std::nullopt});
        }
    }
    if (used.size() < 2)
        throw SampleError("need at least 2 usable languages, have " + std::to_string(used.size()) +
                          (result.excluded.empty() ? ""
                                                   : "; excluded: " +
                                                         describe_exclusions(result.excluded)));

    double sum = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (dm.is_defined(rows[i], rows[j])) {
                sum += dm.at(rows[i], rows[j]);
                ++result.pair_count;
            } else {
                ++result.skipped_pairs;
            }
        }
    }
    if (result.pair_count == 0)
        throw SampleError("no defined pairs among the " + std::to_string(used.size()) +
                          " usable languages");
    result.value = sum / static_cast<double>(result.pair_count);
    result.used = LanguageSample{std::move(used), sample.label};
    return result;
}

MetricResult mpsd(const LanguageSample& sample, const vectors::VectorSet& vs, double threshold,
                  distances::PairNorm norm) {
    auto filtered = vectors::coverage_filter(vs, sample, threshold);
    if (filtered.kept.size() < 2)
        throw SampleError("need at least 2 usable languages after coverage filtering, have " +
                          std::to_string(filtered.kept.size()) +
                          (filtered.excluded.empty()
                               ? ""
                               : "; excluded: " + describe_exclusions(filtered.excluded)));
    auto build = distances::build_from_vectors(vs, filtered.kept, norm);
    MetricResult result = mpd(filtered.kept, build.matrix);
    result.excluded.insert(result.excluded.begin(), filtered.excluded.begin(),
                           filtered.excluded.end());
    return result;
}

MetricResult fvi(const LanguageSample& sample, const cldf::FeatureMatrix& matrix) {
    MetricResult result;
    std::vector<Eigen::Index> rows;
    std::vector<std::string> used;
    for (const auto& id : sample.ids) {
        auto idx = matrix.language_index(id);
        if (idx) {
            rows.push_back(*idx);
            used.push_back(id);
        } else {
            result.excluded.push_back({id, "absent", std::nullopt});
        }
    }
    if (used.empty())
        throw SampleError("no sample language is present in the feature matrix" +
                          (result.excluded.empty() ? std::string()
                                                   : "; excluded: " +
                                                         describe_exclusions(result.excluded)));

    const auto f_count = matrix.feature_count();
    if (f_count == 0) throw DataError("feature matrix has no features");
    double total = 0.0;
    for (Eigen::Index f = 0; f < f_count; ++f) {
        std::set<int> attested;
        for (Eigen::Index r : rows) {
            const int cell = matrix.cells()(r, f);
            if (cell >= 0) attested.insert(cell);
        }
        const auto domain =
            matrix.features()[static_cast<std::size_t>(f)].value_domain.size();
        total += static_cast<double>(attested.size()) / static_cast<double>(domain);
    }
    result.value = total / static_cast<double>(f_count);
    result.feature_count = static_cast<std::size_t>(f_count);
    result.used = LanguageSample{std::move(used), sample.label};
    return result;
}

std::vector<FeatureInclusion> fvi_per_feature(const LanguageSample& sample,
                                              const cldf::FeatureMatrix& matrix) {
    std::vector<Eigen::Index> rows;
    for (const auto& id : sample.ids) {
        auto idx = matrix.language_index(id);
        if (idx) rows.push_back(*idx);
    }
    if (rows.empty()) throw SampleError("no sample language is present in the feature matrix");
    if (matrix.feature_count() == 0) throw DataError("feature matrix has no features");

    std::vector<FeatureInclusion> out;
    out.reserve(static_cast<std::size_t>(matrix.feature_count()));
    for (Eigen::Index f = 0; f < matrix.feature_count(); ++f) {
        const auto& spec = matrix.features()[static_cast<std::size_t>(f)];
        std::set<int> attested;
        for (Eigen::Index r : rows) {
            const int cell = matrix.cells()(r, f);
            if (cell >= 0) attested.insert(cell);
        }
        FeatureInclusion item;
        item.feature_id = spec.id;
        for (int c : attested)
            item.covered_values.push_back(spec.value_domain[static_cast<std::size_t>(c)]);
        item.domain_size = spec.value_domain.size();
        item.ratio = static_cast<double>(attested.size()) / static_cast<double>(item.domain_size);
        out.push_back(std::move(item));
    }
    return out;
}

LanguageSample load_sample(const std::filesystem::path& path) {
    const std::string text = csv::read_text_file(path);
    std::vector<std::string> ids;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto begin = line.find_first_not_of(" \t\r");
        auto end = line.find_last_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::string code = to_lower(line.substr(begin, end - begin + 1));
        if (!seen.insert(code).second)
            throw SampleError(path.string() + ":" + std::to_string(lineno) +
                              ": duplicate language code '" + code + "'");
        ids.push_back(std::move(code));
    }
    if (ids.empty()) throw SampleError(path.string() + ": sample file contains no languages");
    return LanguageSample{std::move(ids), path.stem().string()};
}

} // namespace typdiv::metrics
