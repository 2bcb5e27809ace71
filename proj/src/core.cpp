#include "typdiv/core.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "typdiv/error.hpp"

namespace typdiv {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

LanguageSample LanguageSample::from_ids(std::vector<std::string> ids, std::string label) {
    std::unordered_set<std::string> seen;
    for (const auto& id : ids) {
        if (!seen.insert(id).second) throw SampleError("duplicate language id in sample: " + id);
    }
    return LanguageSample{std::move(ids), std::move(label)};
}

bool LanguageSample::contains(std::string_view id) const {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids, Eigen::MatrixXd values,
                               BoolArray defined, bool unit_range)
    : ids_(std::move(ids)), values_(std::move(values)), defined_(std::move(defined)),
      unit_range_(unit_range) {
    const auto n = static_cast<Eigen::Index>(ids_.size());
    if (values_.rows() != n || values_.cols() != n || defined_.rows() != n || defined_.cols() != n)
        throw std::invalid_argument("distance matrix dimensions do not match id count");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!defined_(i, i) || values_(i, i) != 0.0)
            throw std::invalid_argument("distance matrix diagonal must be defined and zero");
        for (Eigen::Index j = 0; j < n; ++j) {
            if (defined_(i, j) != defined_(j, i) ||
                (defined_(i, j) && values_(i, j) != values_(j, i)))
                throw std::invalid_argument("distance matrix must be symmetric");
            if (defined_(i, j)) {
                double v = values_(i, j);
                if (v < 0.0 || (unit_range_ && v > 1.0))
                    throw std::invalid_argument("distance value out of range");
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!index_.emplace(ids_[static_cast<std::size_t>(i)], i).second)
            throw std::invalid_argument("duplicate id in distance matrix: " +
                                        ids_[static_cast<std::size_t>(i)]);
    }
}

DistanceMatrix DistanceMatrix::zeros(std::vector<std::string> ids) {
    const auto n = static_cast<Eigen::Index>(ids.size());
    return DistanceMatrix(std::move(ids), Eigen::MatrixXd::Zero(n, n),
                          BoolArray::Constant(n, n, true));
}

std::optional<Eigen::Index> DistanceMatrix::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> DistanceMatrix::lookup(std::string_view a, std::string_view b) const {
    auto i = index_of(a);
    auto j = index_of(b);
    if (!i || !j || !defined_(*i, *j)) return std::nullopt;
    return values_(*i, *j);
}

} // namespace typdiv
