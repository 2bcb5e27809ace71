#include "typdiv/vectors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "typdiv/csv.hpp"
#include "typdiv/error.hpp"

namespace typdiv::vectors {

namespace {

double parse_unit_value(const std::string& s, const std::string& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DataError(where + ": malformed number '" + s + "'");
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw DataError(where + ": value '" + s + "' outside [0,1]");
    return v;
}

} // namespace

VectorSet::VectorSet(std::vector<std::string> dims, std::vector<std::string> languages,
                     Eigen::MatrixXd values, BoolArray defined)
    : dims_(std::move(dims)), languages_(std::move(languages)), values_(std::move(values)),
      defined_(std::move(defined)) {
    const auto n = static_cast<Eigen::Index>(languages_.size());
    const auto d = static_cast<Eigen::Index>(dims_.size());
    if (values_.rows() != n || values_.cols() != d || defined_.rows() != n || defined_.cols() != d)
        throw DataError("vector set dimensions do not match languages x dims");
    for (Eigen::Index l = 0; l < n; ++l) {
        for (Eigen::Index k = 0; k < d; ++k) {
            if (defined_(l, k)) {
                const double v = values_(l, k);
                if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                    throw DataError("vector value outside [0,1] for language '" +
                                    languages_[static_cast<std::size_t>(l)] + "'");
            }
        }
    }
    for (std::size_t l = 0; l < languages_.size(); ++l) {
        if (!index_.emplace(languages_[l], static_cast<Eigen::Index>(l)).second)
            throw DataError("duplicate language id '" + languages_[l] + "' in vector set");
    }
}

std::optional<Eigen::Index> VectorSet::language_index(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Coverage VectorSet::coverage(Eigen::Index lang) const {
    Coverage c;
    c.language = languages_[static_cast<std::size_t>(lang)];
    c.total_dims = static_cast<std::size_t>(dim_count());
    c.defined_dims = static_cast<std::size_t>(defined_.row(lang).count());
    c.ratio = c.total_dims == 0 ? 0.0
                                : static_cast<double>(c.defined_dims) /
                                      static_cast<double>(c.total_dims);
    return c;
}

VectorSet binarize(const cldf::FeatureMatrix& matrix) {
    if (matrix.language_count() == 0 || matrix.feature_count() == 0)
        throw DataError("cannot binarize an empty feature matrix");

    std::vector<std::string> dims;
    std::vector<Eigen::Index> feature_offset(static_cast<std::size_t>(matrix.feature_count()));
    for (std::size_t f = 0; f < matrix.features().size(); ++f) {
        const auto& spec = matrix.features()[f];
        feature_offset[f] = static_cast<Eigen::Index>(dims.size());
        for (const auto& v : spec.value_domain) dims.push_back(spec.id + "=" + v);
    }

    const auto n = matrix.language_count();
    const auto d = static_cast<Eigen::Index>(dims.size());
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, d);
    BoolArray defined = BoolArray::Constant(n, d, false);

    for (Eigen::Index l = 0; l < n; ++l) {
        for (Eigen::Index f = 0; f < matrix.feature_count(); ++f) {
            const int cell = matrix.cells()(l, f);
            const auto width = static_cast<Eigen::Index>(
                matrix.features()[static_cast<std::size_t>(f)].value_domain.size());
            const Eigen::Index base = feature_offset[static_cast<std::size_t>(f)];
            if (cell >= 0) {
                defined.block(l, base, 1, width).setConstant(true);
                values(l, base + cell) = 1.0;
            }
            // missing of either kind leaves the whole feature block masked
        }
    }
    return VectorSet(std::move(dims), matrix.languages(), std::move(values), std::move(defined));
}

VectorSet lineage_vectors(const std::vector<langmeta::LanguageRecord>& records) {
    std::set<std::string> nodes;
    for (const auto& rec : records) {
        if (rec.lineage.empty())
            throw DataError("record '" + rec.glottocode + "' has an empty lineage");
        nodes.insert(rec.lineage.begin(), rec.lineage.end());
    }
    std::vector<std::string> dims(nodes.begin(), nodes.end());
    std::unordered_map<std::string, Eigen::Index> dim_index;
    for (std::size_t k = 0; k < dims.size(); ++k)
        dim_index.emplace(dims[k], static_cast<Eigen::Index>(k));

    const auto n = static_cast<Eigen::Index>(records.size());
    const auto d = static_cast<Eigen::Index>(dims.size());
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, d);
    std::vector<std::string> languages;
    languages.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        languages.push_back(records[i].glottocode);
        for (const auto& node : records[i].lineage)
            values(static_cast<Eigen::Index>(i), dim_index.at(node)) = 1.0;
    }
    return VectorSet(std::move(dims), std::move(languages), std::move(values),
                     BoolArray::Constant(n, d, true));
}

VectorSet load_vector_table(const std::filesystem::path& path) {
    csv::Table table = csv::Table::read(path, '\t');
    if (table.header().empty() || table.header()[0] != "language")
        throw DataError(path.string() + ": first header column must be 'language'");
    std::vector<std::string> dims(table.header().begin() + 1, table.header().end());
    if (dims.empty()) throw DataError(path.string() + ": no dimensions");
    if (table.rows().empty()) throw DataError(path.string() + ": no languages");

    const auto n = static_cast<Eigen::Index>(table.rows().size());
    const auto d = static_cast<Eigen::Index>(dims.size());
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, d);
    BoolArray defined = BoolArray::Constant(n, d, true);
    std::vector<std::string> languages;
    languages.reserve(table.rows().size());

    for (std::size_t r = 0; r < table.rows().size(); ++r) {
        const auto& row = table.rows()[r];
        languages.push_back(to_lower(table.field(row, 0)));
        for (Eigen::Index k = 0; k < d; ++k) {
            const std::string& cell = table.field(row, static_cast<std::size_t>(k) + 1);
            if (cell == "--") {
                defined(static_cast<Eigen::Index>(r), k) = false;
            } else {
                values(static_cast<Eigen::Index>(r), k) = parse_unit_value(cell, table.where(row));
            }
        }
    }
    return VectorSet(std::move(dims), std::move(languages), std::move(values), std::move(defined));
}

DistanceMatrix load_distance_matrix(const std::filesystem::path& path) {
    csv::Table table = csv::Table::read(path);
    if (table.header().size() < 2) throw DataError(path.string() + ": not a distance matrix");
    std::vector<std::string> ids;
    for (std::size_t c = 1; c < table.header().size(); ++c)
        ids.push_back(to_lower(table.header()[c]));
    const auto n = static_cast<Eigen::Index>(ids.size());
    if (static_cast<Eigen::Index>(table.rows().size()) != n)
        throw DataError(path.string() + ": matrix is not square (" +
                        std::to_string(table.rows().size()) + " rows, " + std::to_string(n) +
                        " columns)");

    Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(n, n);
    BoolArray given = BoolArray::Constant(n, n, false);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = table.rows()[static_cast<std::size_t>(i)];
        if (to_lower(table.field(row, 0)) != ids[static_cast<std::size_t>(i)])
            throw DataError(table.where(row) + ": row label '" + table.field(row, 0) +
                            "' does not match column order");
        for (Eigen::Index j = 0; j < n; ++j) {
            const std::string& cell = table.field(row, static_cast<std::size_t>(j) + 1);
            if (cell.empty()) continue;
            raw(i, j) = parse_unit_value(cell, table.where(row));
            given(i, j) = true;
        }
    }

    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
    BoolArray defined = BoolArray::Constant(n, n, false);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (given(i, i) && raw(i, i) != 0.0)
            throw DataError(path.string() + ": nonzero diagonal for '" +
                            ids[static_cast<std::size_t>(i)] + "'");
        defined(i, i) = true;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (given(i, j) && given(j, i)) {
                if (std::abs(raw(i, j) - raw(j, i)) > 1e-9)
                    throw DataError(path.string() + ": asymmetry between '" +
                                    ids[static_cast<std::size_t>(i)] + "' and '" +
                                    ids[static_cast<std::size_t>(j)] + "' exceeds 1e-9");
                values(i, j) = values(j, i) = raw(i, j);
                defined(i, j) = defined(j, i) = true;
            } else if (given(i, j) || given(j, i)) {
                values(i, j) = values(j, i) = given(i, j) ? raw(i, j) : raw(j, i);
                defined(i, j) = defined(j, i) = true;
            }
        }
    }
    return DistanceMatrix(std::move(ids), std::move(values), std::move(defined));
}

CoverageFilterResult coverage_filter(const VectorSet& vs, const LanguageSample& sample,
                                     double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw UsageError("coverage threshold must lie in [0,1]");
    CoverageFilterResult result;
    std::vector<std::string> kept;
    for (const auto& id : sample.ids) {
        auto idx = vs.language_index(id);
        if (!idx) {
            result.excluded.push_back({id, "absent", std::nullopt});
            continue;
        }
        Coverage c = vs.coverage(*idx);
        if (c.ratio >= threshold) {
            kept.push_back(id);
        } else {
            result.excluded.push_back({id, "low_coverage", c.ratio});
        }
    }
    result.kept = LanguageSample{std::move(kept), sample.label};
    return result;
}

} // namespace typdiv::vectors
