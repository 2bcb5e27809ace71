#ifndef TYPDIV_DISTANCES_HPP
#define TYPDIV_DISTANCES_HPP

#include <Eigen/Core>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "typdiv/core.hpp"
#include "typdiv/langmeta.hpp"
#include "typdiv/vectors.hpp"

namespace typdiv::distances {

// shared_dims divides the squared sum by the number of dimensions defined
// in both vectors, keeping distances in [0,1] and comparable across pairs
// with different coverage. raw is the unnormalized Euclidean norm, which
// is unbounded and coverage-sensitive.
enum class PairNorm { shared_dims, raw };

inline constexpr double kEarthRadiusKm = 6371.0088;  // IUGG mean radius

// Distance between two masked vectors over the dimensions defined in both.
// Empty result when the masks are disjoint.
template <typename V1, typename M1, typename V2, typename M2>
std::optional<double> pair_distance(const Eigen::MatrixBase<V1>& vi, const Eigen::ArrayBase<M1>& mi,
                                    const Eigen::MatrixBase<V2>& vj, const Eigen::ArrayBase<M2>& mj,
                                    PairNorm norm = PairNorm::shared_dims) {
    if (vi.size() != vj.size() || mi.size() != vi.size() || mj.size() != vj.size())
        throw std::invalid_argument("pair_distance: dimension mismatch");
    const auto shared = (mi.derived() && mj.derived()).eval();
    const auto count = shared.count();
    if (count == 0) return std::nullopt;
    const auto diff = (vi.derived() - vj.derived()).array().eval();
    const double ssq = shared.select(diff * diff, 0.0).sum();
    if (norm == PairNorm::raw) return std::sqrt(ssq);
    double d = std::sqrt(ssq / static_cast<double>(count));
    return std::min(d, 1.0);
}

// Haversine great-circle distance on a sphere of radius kEarthRadiusKm,
// scaled by half the circumference so antipodes sit at 1. Empty when
// either record lacks coordinates.
std::optional<double> geo_distance(const langmeta::LanguageRecord& a,
                                   const langmeta::LanguageRecord& b);

// Jaccard distance between ancestor sets (lineages include the language
// itself): 1 - |A intersect B| / |A union B|.
double genetic_distance(const langmeta::LanguageRecord& a, const langmeta::LanguageRecord& b);

struct MatrixBuild {
    DistanceMatrix matrix;
    std::vector<Exclusion> excluded;
};

// Matrix over exactly the sample languages found in the source; the rest
// are reported per language in `excluded` (or thrown in strict mode).
MatrixBuild build_from_vectors(const vectors::VectorSet& vs, const LanguageSample& sample,
                               PairNorm norm = PairNorm::shared_dims, bool strict = false);
MatrixBuild build_from_geo(const langmeta::Registry& registry, const LanguageSample& sample,
                           bool strict = false);
MatrixBuild build_from_lineages(const langmeta::Registry& registry, const LanguageSample& sample,
                                bool strict = false);
MatrixBuild build_from_matrix(const DistanceMatrix& source, const LanguageSample& sample,
                              bool strict = false);

} // namespace typdiv::distances

#endif
