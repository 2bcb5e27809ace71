#ifndef TYPDIV_PCA_HPP
#define TYPDIV_PCA_HPP

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <vector>

#include "typdiv/core.hpp"
#include "typdiv/vectors.hpp"

namespace typdiv::pca {

// Scatter plot constants (documented in the README).
inline constexpr const char* kBackgroundColor = "#8ca0b3";
inline constexpr const char* kHighlightColor = "#d1495b";
inline constexpr double kBackgroundRadius = 3.0;
inline constexpr double kHighlightRadius = 4.5;

// Principal-component projection of a masked vector set. Missing entries
// are imputed with the per-dimension mean over defined entries; data is
// centered but not variance-scaled. Components carry a deterministic sign:
// the entry of largest magnitude is positive.
struct Projection {
    std::vector<std::string> input_dims;    // dims of the fitted vector set
    std::vector<Eigen::Index> used_dims;    // indices into input_dims kept for the fit
    std::vector<std::string> dropped_dims;  // dims with zero defined entries
    Eigen::MatrixXd components;             // used_dims.size() x k, orthonormal columns
    Eigen::VectorXd explained_variance_ratio;  // length k, non-increasing
    Eigen::VectorXd imputation_mean;        // per used dim
    double total_variance = 0.0;            // trace of the covariance
    Eigen::MatrixXd points;                 // languages x k
    std::vector<std::string> languages;
    std::vector<std::string> warnings;
};

// Requires 1 <= k <= dim count and at least k+1 languages; k is reduced
// (with a warning) when it exceeds the effective rank.
Projection fit(const vectors::VectorSet& vs, Eigen::Index k);

// Applies the stored imputation means and centering to new languages.
// The vector set must have exactly the dims the projection was fit on.
Eigen::MatrixXd project(const Projection& p, const vectors::VectorSet& vs);

struct ScatterOptions {
    int width = 720;
    int height = 540;
    std::string title;
};

// Sample-highlighted scatter of the first two components. Highlighted
// languages are drawn as a separate series above the background.
std::string render_scatter_svg(const Projection& p, const LanguageSample& highlight,
                               const ScatterOptions& options = {});
void render_scatter(const Projection& p, const LanguageSample& highlight,
                    const std::filesystem::path& out, const ScatterOptions& options = {});

} // namespace typdiv::pca

#endif
