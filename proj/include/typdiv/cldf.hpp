#ifndef TYPDIV_CLDF_HPP
#define TYPDIV_CLDF_HPP

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace typdiv::cldf {

enum class CellKind { value, missing_unknown, missing_no_coverage };

// One categorical feature and its set of possible non-missing values.
struct FeatureSpec {
    std::string id;
    std::string name;
    std::vector<std::string> value_domain;

    friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

// Languages x features. Cells hold an index into the feature's domain,
// or one of the two missing markers. "?" (coded but unsure) and absence
// from the dataset are kept apart so coverage statistics stay meaningful.
class FeatureMatrix {
public:
    static constexpr int kMissingUnknown = -1;
    static constexpr int kMissingNoCoverage = -2;

    FeatureMatrix(std::vector<std::string> languages, std::vector<FeatureSpec> features,
                  Eigen::MatrixXi cells);

    const std::vector<std::string>& languages() const noexcept { return languages_; }
    const std::vector<FeatureSpec>& features() const noexcept { return features_; }
    const Eigen::MatrixXi& cells() const noexcept { return cells_; }

    Eigen::Index language_count() const noexcept { return cells_.rows(); }
    Eigen::Index feature_count() const noexcept { return cells_.cols(); }

    CellKind kind(Eigen::Index lang, Eigen::Index feat) const;
    // Domain value label, or nullptr when the cell is missing.
    const std::string* value(Eigen::Index lang, Eigen::Index feat) const;

    std::optional<Eigen::Index> language_index(std::string_view id) const;
    std::optional<Eigen::Index> find_feature(std::string_view id) const;
    // Throws DataError when the feature is unknown.
    Eigen::Index feature_index(std::string_view id) const;

private:
    std::vector<std::string> languages_;
    std::vector<FeatureSpec> features_;
    Eigen::MatrixXi cells_;
    std::unordered_map<std::string, Eigen::Index> lang_index_;
    std::unordered_map<std::string, Eigen::Index> feat_index_;
};

// Reads a CLDF StructureDataset directory (languages.csv, parameters.csv,
// values.csv, optional codes.csv). Language ids are the glottocodes from
// languages.csv; rows without one are dropped (reported via `warnings`).
// Value domains come from codes.csv when available, otherwise from the
// values observed across the whole dataset.
FeatureMatrix load_structure_dataset(const std::filesystem::path& dir,
                                     std::vector<std::string>* warnings = nullptr);

// Column slice; ids must be non-empty, unique and present.
FeatureMatrix feature_subset(const FeatureMatrix& matrix, const std::vector<std::string>& ids);

// JSON cache, round-trips cell-identically.
void save_cache(const FeatureMatrix& matrix, const std::filesystem::path& path);
FeatureMatrix load_cache(const std::filesystem::path& path);

bool cell_identical(const FeatureMatrix& a, const FeatureMatrix& b);

} // namespace typdiv::cldf

#endif
