#ifndef TYPDIV_CORE_HPP
#define TYPDIV_CORE_HPP

#include <Eigen/Core>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace typdiv {

inline constexpr const char* kToolVersion = "0.1.0";

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// An ordered set of language ids, optionally tagged with where it came from.
struct LanguageSample {
    std::vector<std::string> ids;
    std::string label;

    // Validates uniqueness; ids are kept in the given order.
    static LanguageSample from_ids(std::vector<std::string> ids, std::string label = "");

    std::size_t size() const noexcept { return ids.size(); }
    bool contains(std::string_view id) const;

    friend bool operator==(const LanguageSample&, const LanguageSample&) = default;
};

// Why a language was left out of a computation.
struct Exclusion {
    std::string language;
    std::string reason;           // "absent", "low_coverage", "unknown_code", ...
    std::optional<double> ratio;  // coverage ratio, when that is the reason

    friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

// Symmetric pairwise distances with a mask for undefined pairs.
// Values are in [0,1] unless constructed with unit_range = false
// (the unnormalized-Euclidean variant is unbounded).
class DistanceMatrix {
public:
    DistanceMatrix(std::vector<std::string> ids, Eigen::MatrixXd values, BoolArray defined,
                   bool unit_range = true);

    // n x n all-defined zero matrix (singleton samples and tests).
    static DistanceMatrix zeros(std::vector<std::string> ids);

    const std::vector<std::string>& ids() const noexcept { return ids_; }
    Eigen::Index size() const noexcept { return values_.rows(); }
    const Eigen::MatrixXd& values() const noexcept { return values_; }
    const BoolArray& defined() const noexcept { return defined_; }
    bool unit_range() const noexcept { return unit_range_; }

    bool is_defined(Eigen::Index i, Eigen::Index j) const { return defined_(i, j); }
    double at(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

    std::optional<Eigen::Index> index_of(std::string_view id) const;
    // Distance by id pair; empty when either id is unknown or the pair undefined.
    std::optional<double> lookup(std::string_view a, std::string_view b) const;

private:
    std::vector<std::string> ids_;
    Eigen::MatrixXd values_;
    BoolArray defined_;
    std::unordered_map<std::string, Eigen::Index> index_;
    bool unit_range_ = true;
};

std::string to_lower(std::string_view s);

} // namespace typdiv

#endif
