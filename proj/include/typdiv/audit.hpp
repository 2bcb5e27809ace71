#ifndef TYPDIV_AUDIT_HPP
#define TYPDIV_AUDIT_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "typdiv/cldf.hpp"

namespace typdiv::audit {

// Per-language scores in whatever units the task reports; consumed as given.
struct ScoreTable {
    std::map<std::string, double> scores;

    // CSV, header "language,score".
    static ScoreTable load(const std::filesystem::path& path);
};

inline constexpr const char* kNotAvailable = "NA";

// Maps languages to a categorical feature value; nullopt = not available.
// A grouping derived from a feature matrix is total: languages it has not
// seen count as NA. A grouping loaded from CSV is partial: scoring a
// language it does not list is a data error.
struct FeatureGrouping {
    std::map<std::string, std::optional<std::string>> value_by_language;
    bool absent_is_na = false;

    // CSV, header "language,value"; the literal value NA marks no coverage.
    static FeatureGrouping load(const std::filesystem::path& path);
};

enum class NaPolicy { group, exclude };

struct GroupStat {
    std::string value;  // kNotAvailable for the NA group
    double mean = 0.0;
    std::size_t count = 0;

    friend bool operator==(const GroupStat&, const GroupStat&) = default;
};

// Per-value arithmetic means and counts, sorted by value label with the
// NA group last. Every scored language must be groupable.
std::vector<GroupStat> group_stats(const ScoreTable& scores, const FeatureGrouping& grouping);

struct AuditResult {
    std::vector<GroupStat> groups;
    double overall_mean = 0.0;       // macro average over all scored languages
    std::size_t overall_count = 0;
    double by_feature_mean = 0.0;    // unweighted mean of group means
    double delta = 0.0;              // by_feature_mean - overall_mean
    NaPolicy na_policy = NaPolicy::group;
};

// Overall vs by-feature-value macro averages. na_policy controls whether
// the NA group participates in the by-feature mean; it always counts
// toward the overall mean.
AuditResult run_audit(const ScoreTable& scores, const FeatureGrouping& grouping,
                      NaPolicy na_policy = NaPolicy::group);

// Grouping by one feature of a structure dataset; both missing kinds map
// to NA, and so do languages outside the matrix.
FeatureGrouping grouping_from_feature(const cldf::FeatureMatrix& matrix,
                                      std::string_view feature_id);

} // namespace typdiv::audit

#endif
