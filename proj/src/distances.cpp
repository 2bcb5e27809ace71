#include "typdiv/distances.hpp"

#include <algorithm>
#include <unordered_set>

#include "typdiv/error.hpp"

namespace typdiv::distances {

namespace {

constexpr double kPi = 3.14159265358979323846;

double radians(double degrees) { return degrees * kPi / 180.0; }

// Collects the sample members resolvable in a source, reporting the rest.
struct Found {
    std::vector<std::string> ids;
    std::vector<Eigen::Index> src;  // index into the source, when indexed
    std::vector<Exclusion> excluded;
};

template <typename Lookup>
Found find_in_source(const LanguageSample& sample, bool strict, Lookup&& lookup) {
    Found out;
    for (const auto& id : sample.ids) {
        auto idx = lookup(id);
        if (idx) {
            out.ids.push_back(id);
            out.src.push_back(*idx);
        } else {
            if (strict) throw SampleError("language '" + id + "' is absent from the source");
            out.excluded.push_back({id, "absent", std::nullopt});
        }
    }
    return out;
}

} // namespace

std::optional<double> geo_distance(const langmeta::LanguageRecord& a,
                                   const langmeta::LanguageRecord& b) {
    if (!a.has_coordinates() || !b.has_coordinates()) return std::nullopt;
    const double lat1 = radians(*a.latitude);
    const double lat2 = radians(*b.latitude);
    const double dlat = radians(*b.latitude - *a.latitude);
    const double dlon = radians(*b.longitude - *a.longitude);
    const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2) * std::sin(dlon / 2);
    const double central = 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
    const double km = kEarthRadiusKm * central;
    const double half_circumference = kEarthRadiusKm * kPi;
    return std::min(km / half_circumference, 1.0);
}

double genetic_distance(const langmeta::LanguageRecord& a, const langmeta::LanguageRecord& b) {
    if (a.lineage.empty() || b.lineage.empty())
        throw DataError("genetic distance requires non-empty lineages");
    std::unordered_set<std::string> anc_a(a.lineage.begin(), a.lineage.end());
    std::unordered_set<std::string> anc_b(b.lineage.begin(), b.lineage.end());
    std::size_t inter = 0;
    for (const auto& node : anc_a) inter += anc_b.count(node);
    const std::size_t uni = anc_a.size() + anc_b.size() - inter;
    return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

MatrixBuild build_from_vectors(const vectors::VectorSet& vs, const LanguageSample& sample,
                               PairNorm norm, bool strict) {
    Found found = find_in_source(sample, strict,
                                 [&](const std::string& id) { return vs.language_index(id); });
    const auto n = static_cast<Eigen::Index>(found.ids.size());
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
    BoolArray defined = BoolArray::Constant(n, n, true);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            auto d = pair_distance(vs.values().row(found.src[static_cast<std::size_t>(i)]),
                                   vs.defined().row(found.src[static_cast<std::size_t>(i)]),
                                   vs.values().row(found.src[static_cast<std::size_t>(j)]),
                                   vs.defined().row(found.src[static_cast<std::size_t>(j)]), norm);
            if (d) {
                values(i, j) = values(j, i) = *d;
            } else {
                defined(i, j) = defined(j, i) = false;
            }
        }
    }
    return {DistanceMatrix(std::move(found.ids), std::move(values), std::move(defined),
                           norm == PairNorm::shared_dims),
            std::move(found.excluded)};
}

MatrixBuild build_from_geo(const langmeta::Registry& registry, const LanguageSample& sample,
                           bool strict) {
    std::vector<const langmeta::LanguageRecord*> recs;
    Found found = find_in_source(sample, strict,
                                 [&](const std::string& id) -> std::optional<Eigen::Index> {
                                     const auto* rec = registry.find(id);
                                     if (!rec) return std::nullopt;
                                     recs.push_back(rec);
                                     return static_cast<Eigen::Index>(recs.size() - 1);
                                 });
    const auto n = static_cast<Eigen::Index>(found.ids.size());
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
    BoolArray defined = BoolArray::Constant(n, n, true);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            auto d = geo_distance(*recs[static_cast<std::size_t>(i)],
                                  *recs[static_cast<std::size_t>(j)]);
            if (d) {
                values(i, j) = values(j, i) = *d;
            } else {
                defined(i, j) = defined(j, i) = false;
            }
        }
    }
    return {DistanceMatrix(std::move(found.ids), std::move(values), std::move(defined)),
            std::move(found.excluded)};
}

MatrixBuild build_from_lineages(const langmeta::Registry& registry, const LanguageSample& sample,
                                bool strict) {
    std::vector<const langmeta::LanguageRecord*> recs;
    Found found = find_in_source(sample, strict,
                                 [&](const std::string& id) -> std::optional<Eigen::Index> {
                                     const auto* rec = registry.find(id);
                                     if (!rec) return std::nullopt;
                                     recs.push_back(rec);
                                     return static_cast<Eigen::Index>(recs.size() - 1);
                                 });
    const auto n = static_cast<Eigen::Index>(found.ids.size());
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            values(i, j) = values(j, i) = genetic_distance(*recs[static_cast<std::size_t>(i)],
                                                           *recs[static_cast<std::size_t>(j)]);
        }
    }
    return {DistanceMatrix(std::move(found.ids), std::move(values), BoolArray::Constant(n, n, true)),
            std::move(found.excluded)};
}

MatrixBuild build_from_matrix(const DistanceMatrix& source, const LanguageSample& sample,
                              bool strict) {
    Found found = find_in_source(sample, strict,
                                 [&](const std::string& id) { return source.index_of(id); });
    const auto n = static_cast<Eigen::Index>(found.ids.size());
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
    BoolArray defined = BoolArray::Constant(n, n, true);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const Eigen::Index si = found.src[static_cast<std::size_t>(i)];
            const Eigen::Index sj = found.src[static_cast<std::size_t>(j)];
            if (source.is_defined(si, sj)) {
                values(i, j) = source.at(si, sj);
            } else {
                defined(i, j) = false;
            }
        }
    }
    return {DistanceMatrix(std::move(found.ids), std::move(values), std::move(defined),
                           source.unit_range()),
            std::move(found.excluded)};
}

} // namespace typdiv::distances
