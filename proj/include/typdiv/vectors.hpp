#ifndef TYPDIV_VECTORS_HPP
#define TYPDIV_VECTORS_HPP

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "typdiv/cldf.hpp"
#include "typdiv/core.hpp"
#include "typdiv/langmeta.hpp"

namespace typdiv::vectors {

// How much of the dimension space is defined for one language.
struct Coverage {
    std::string language;
    std::size_t defined_dims = 0;
    std::size_t total_dims = 0;
    double ratio = 0.0;

    friend bool operator==(const Coverage&, const Coverage&) = default;
};

// Languages x real-valued dimensions in [0,1], with a defined/missing mask.
class VectorSet {
public:
    VectorSet(std::vector<std::string> dims, std::vector<std::string> languages,
              Eigen::MatrixXd values, BoolArray defined);

    const std::vector<std::string>& dims() const noexcept { return dims_; }
    const std::vector<std::string>& languages() const noexcept { return languages_; }
    const Eigen::MatrixXd& values() const noexcept { return values_; }
    const BoolArray& defined() const noexcept { return defined_; }

    Eigen::Index language_count() const noexcept { return values_.rows(); }
    Eigen::Index dim_count() const noexcept { return values_.cols(); }

    std::optional<Eigen::Index> language_index(std::string_view id) const;
    Coverage coverage(Eigen::Index lang) const;

private:
    std::vector<std::string> dims_;
    std::vector<std::string> languages_;
    Eigen::MatrixXd values_;
    BoolArray defined_;
    std::unordered_map<std::string, Eigen::Index> index_;
};

// One-hot expansion of a categorical feature matrix: a dimension per
// (feature, domain value), labeled "FEATURE=VALUE". Missing cells of
// either kind mask all of that feature's dimensions.
VectorSet binarize(const cldf::FeatureMatrix& matrix);

// Ancestry indicators: a dimension per glottocode appearing in any
// lineage; 1.0 on each of a language's ancestors (self included).
VectorSet lineage_vectors(const std::vector<langmeta::LanguageRecord>& records);

// TSV with header "language<TAB>dim...", cells in [0,1] or "--" for missing.
VectorSet load_vector_table(const std::filesystem::path& path);

// Square CSV whose first row and column are language ids; cells in [0,1]
// or empty for an undefined pair. Asymmetries beyond 1e-9 are data errors.
DistanceMatrix load_distance_matrix(const std::filesystem::path& path);

struct CoverageFilterResult {
    LanguageSample kept;
    std::vector<Exclusion> excluded;
};

// Keeps sample members present in `vs` with coverage ratio >= threshold,
// preserving sample order; everything else goes to `excluded` with reason
// "absent" or "low_coverage" (plus the ratio).
CoverageFilterResult coverage_filter(const VectorSet& vs, const LanguageSample& sample,
                                     double threshold);

} // namespace typdiv::vectors

#endif
