#include "typdiv/audit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "typdiv/core.hpp"
#include "typdiv/csv.hpp"
#include "typdiv/error.hpp"

namespace typdiv::audit {

ScoreTable ScoreTable::load(const std::filesystem::path& path) {
    csv::Table table = csv::Table::read(path);
    const std::size_t lang_col = table.column("language");
    const std::size_t score_col = table.column("score");
    ScoreTable out;
    for (const auto& row : table.rows()) {
        const std::string lang = to_lower(table.field(row, lang_col));
        const std::string& s = table.field(row, score_col);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
            throw DataError(table.where(row) + ": malformed score '" + s + "'");
        if (!out.scores.emplace(lang, v).second)
            throw DataError(table.where(row) + ": duplicate language '" + lang + "'");
    }
    return out;
}

FeatureGrouping FeatureGrouping::load(const std::filesystem::path& path) {
    csv::Table table = csv::Table::read(path);
    const std::size_t lang_col = table.column("language");
    const std::size_t value_col = table.column("value");
    FeatureGrouping out;
    for (const auto& row : table.rows()) {
        const std::string lang = to_lower(table.field(row, lang_col));
        const std::string& value = table.field(row, value_col);
        std::optional<std::string> v;
        if (value != kNotAvailable) v = value;
        if (!out.value_by_language.emplace(lang, std::move(v)).second)
            throw DataError(table.where(row) + ": duplicate language '" + lang + "'");
    }
    return out;
}

std::vector<GroupStat> group_stats(const ScoreTable& scores, const FeatureGrouping& grouping) {
    std::map<std::string, std::pair<double, std::size_t>> acc;  // value -> (sum, count)
    for (const auto& [lang, score] : scores.scores) {
        std::optional<std::string> value;
        auto it = grouping.value_by_language.find(lang);
        if (it != grouping.value_by_language.end()) {
            value = it->second;
        } else if (!grouping.absent_is_na) {
            throw DataError("scored language '" + lang + "' is missing from the grouping");
        }
        auto& slot = acc[value.value_or(kNotAvailable)];
        slot.first += score;
        slot.second += 1;
    }
    std::vector<GroupStat> out;
    for (const auto& [value, sum_count] : acc) {
        if (value == kNotAvailable) continue;
        out.push_back({value, sum_count.first / static_cast<double>(sum_count.second),
                       sum_count.second});
    }
    auto na = acc.find(kNotAvailable);
    if (na != acc.end())
        out.push_back({kNotAvailable, na->second.first / static_cast<double>(na->second.second),
                       na->second.second});
    return out;
}

AuditResult run_audit(const ScoreTable& scores, const FeatureGrouping& grouping,
                      NaPolicy na_policy) {
    if (scores.scores.empty()) throw SampleError("no scores to audit");

    AuditResult result;
    result.na_policy = na_policy;
    result.groups = group_stats(scores, grouping);
    result.overall_count = scores.scores.size();

    double total = 0.0;
    for (const auto& [lang, score] : scores.scores) total += score;
    result.overall_mean = total / static_cast<double>(result.overall_count);

    double group_total = 0.0;
    std::size_t group_n = 0;
    for (const auto& g : result.groups) {
        if (na_policy == NaPolicy::exclude && g.value == kNotAvailable) continue;
        group_total += g.mean;
        ++group_n;
    }
    if (group_n == 0)
        throw SampleError("no groups remain for the by-feature mean (all languages NA "
                          "with na_policy=exclude)");
    result.by_feature_mean = group_total / static_cast<double>(group_n);
    result.delta = result.by_feature_mean - result.overall_mean;
    return result;
}

FeatureGrouping grouping_from_feature(const cldf::FeatureMatrix& matrix,
                                      std::string_view feature_id) {
    const Eigen::Index f = matrix.feature_index(feature_id);
    FeatureGrouping out;
    out.absent_is_na = true;
    for (Eigen::Index l = 0; l < matrix.language_count(); ++l) {
        const std::string* v = matrix.value(l, f);
        std::optional<std::string> value;
        if (v) value = *v;
        out.value_by_language.emplace(matrix.languages()[static_cast<std::size_t>(l)],
                                      std::move(value));
    }
    return out;
}

} // namespace typdiv::audit
