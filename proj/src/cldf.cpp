#include "typdiv/cldf.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <json.hpp>

#include "typdiv/core.hpp"
#include "typdiv/csv.hpp"
#include "typdiv/error.hpp"

namespace typdiv::cldf {

namespace {

bool is_missing_marker(const std::string& v) { return v.empty() || v == "?"; }

void warn(std::vector<std::string>* sink, std::string msg) {
    if (sink) sink->push_back(std::move(msg));
}

} // namespace

FeatureMatrix::FeatureMatrix(std::vector<std::string> languages, std::vector<FeatureSpec> features,
                             Eigen::MatrixXi cells)
    : languages_(std::move(languages)), features_(std::move(features)), cells_(std::move(cells)) {
    if (cells_.rows() != static_cast<Eigen::Index>(languages_.size()) ||
        cells_.cols() != static_cast<Eigen::Index>(features_.size()))
        throw DataError("feature matrix dimensions do not match languages x features");
    for (std::size_t f = 0; f < features_.size(); ++f) {
        const FeatureSpec& spec = features_[f];
        if (spec.value_domain.empty())
            throw DataError("feature '" + spec.id + "' has an empty value domain");
        for (const auto& v : spec.value_domain) {
            if (is_missing_marker(v))
                throw DataError("feature '" + spec.id + "' lists a missing marker in its domain");
        }
        std::set<std::string> uniq(spec.value_domain.begin(), spec.value_domain.end());
        if (uniq.size() != spec.value_domain.size())
            throw DataError("feature '" + spec.id + "' has duplicate domain values");
        if (!feat_index_.emplace(spec.id, static_cast<Eigen::Index>(f)).second)
            throw DataError("duplicate feature id '" + spec.id + "'");
    }
    for (std::size_t l = 0; l < languages_.size(); ++l) {
        if (!lang_index_.emplace(languages_[l], static_cast<Eigen::Index>(l)).second)
            throw DataError("duplicate language id '" + languages_[l] + "'");
    }
    for (Eigen::Index l = 0; l < cells_.rows(); ++l) {
        for (Eigen::Index f = 0; f < cells_.cols(); ++f) {
            const int c = cells_(l, f);
            const auto domain_size =
                static_cast<int>(features_[static_cast<std::size_t>(f)].value_domain.size());
            if (c < kMissingNoCoverage || c >= domain_size)
                throw DataError("cell value out of range for feature '" +
                                features_[static_cast<std::size_t>(f)].id + "'");
        }
    }
}

CellKind FeatureMatrix::kind(Eigen::Index lang, Eigen::Index feat) const {
    const int c = cells_(lang, feat);
    if (c == kMissingUnknown) return CellKind::missing_unknown;
    if (c == kMissingNoCoverage) return CellKind::missing_no_coverage;
    return CellKind::value;
}

const std::string* FeatureMatrix::value(Eigen::Index lang, Eigen::Index feat) const {
    const int c = cells_(lang, feat);
    if (c < 0) return nullptr;
    return &features_[static_cast<std::size_t>(feat)].value_domain[static_cast<std::size_t>(c)];
}

std::optional<Eigen::Index> FeatureMatrix::language_index(std::string_view id) const {
    auto it = lang_index_.find(std::string(id));
    if (it == lang_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Eigen::Index> FeatureMatrix::find_feature(std::string_view id) const {
    auto it = feat_index_.find(std::string(id));
    if (it == feat_index_.end()) return std::nullopt;
    return it->second;
}

Eigen::Index FeatureMatrix::feature_index(std::string_view id) const {
    auto idx = find_feature(id);
    if (!idx) throw DataError("unknown feature id '" + std::string(id) + "'");
    return *idx;
}

FeatureMatrix load_structure_dataset(const std::filesystem::path& dir,
                                     std::vector<std::string>* warnings) {
    for (const char* required : {"languages.csv", "parameters.csv", "values.csv"}) {
        if (!std::filesystem::exists(dir / required))
            throw DataError("missing required file: " + (dir / required).string());
    }

    // languages.csv: dataset-internal ID -> glottocode
    csv::Table langs = csv::Table::read(dir / "languages.csv");
    const std::size_t lid_col = langs.column("ID");
    const std::size_t gc_col = langs.column("Glottocode");
    std::vector<std::string> languages;
    std::unordered_map<std::string, std::string> id_to_glottocode;
    std::unordered_map<std::string, Eigen::Index> lang_row;
    for (const auto& row : langs.rows()) {
        const std::string& id = langs.field(row, lid_col);
        const std::string gc = to_lower(langs.field(row, gc_col));
        if (id.empty()) throw DataError(langs.where(row) + ": empty language ID");
        if (!id_to_glottocode.emplace(id, gc).second)
            throw DataError(langs.where(row) + ": duplicate language ID '" + id + "'");
        if (gc.empty()) {
            warn(warnings, langs.where(row) + ": language '" + id + "' has no glottocode; dropped");
            continue;
        }
        if (lang_row.count(gc))
            throw DataError(langs.where(row) + ": duplicate glottocode '" + gc + "'");
        lang_row.emplace(gc, static_cast<Eigen::Index>(languages.size()));
        languages.push_back(gc);
    }

    // parameters.csv: feature order
    csv::Table params = csv::Table::read(dir / "parameters.csv");
    const std::size_t pid_col = params.column("ID");
    const std::size_t pname_col = params.column("Name");
    std::vector<FeatureSpec> features;
    std::unordered_map<std::string, std::size_t> feat_pos;
    for (const auto& row : params.rows()) {
        FeatureSpec spec;
        spec.id = params.field(row, pid_col);
        spec.name = params.field(row, pname_col);
        if (spec.id.empty()) throw DataError(params.where(row) + ": empty parameter ID");
        if (feat_pos.count(spec.id))
            throw DataError(params.where(row) + ": duplicate parameter ID '" + spec.id + "'");
        feat_pos.emplace(spec.id, features.size());
        features.push_back(std::move(spec));
    }

    // codes.csv, when present, declares the domains
    std::vector<bool> declared(features.size(), false);
    if (std::filesystem::exists(dir / "codes.csv")) {
        csv::Table codes = csv::Table::read(dir / "codes.csv");
        const std::size_t cparam_col = codes.column("Parameter_ID");
        auto name_col = codes.find_column("Name");
        std::size_t label_col = name_col ? *name_col : codes.column("ID");
        for (const auto& row : codes.rows()) {
            const std::string& pid = codes.field(row, cparam_col);
            auto pos = feat_pos.find(pid);
            if (pos == feat_pos.end())
                throw DataError(codes.where(row) + ": code for unknown parameter '" + pid + "'");
            const std::string& label = codes.field(row, label_col);
            if (is_missing_marker(label)) {
                warn(warnings, codes.where(row) + ": missing marker listed as a code; skipped");
                continue;
            }
            FeatureSpec& spec = features[pos->second];
            if (std::find(spec.value_domain.begin(), spec.value_domain.end(), label) !=
                spec.value_domain.end())
                throw DataError(codes.where(row) + ": duplicate code '" + label +
                                "' for parameter '" + pid + "'");
            spec.value_domain.push_back(label);
            declared[pos->second] = true;
        }
    }

    // First pass over values.csv: observed domains for undeclared features.
    csv::Table values = csv::Table::read(dir / "values.csv");
    const std::size_t vlang_col = values.column("Language_ID");
    const std::size_t vparam_col = values.column("Parameter_ID");
    const std::size_t vval_col = values.column("Value");
    std::vector<std::set<std::string>> observed(features.size());
    for (const auto& row : values.rows()) {
        const std::string& pid = values.field(row, vparam_col);
        auto pos = feat_pos.find(pid);
        if (pos == feat_pos.end())
            throw DataError(values.where(row) + ": value for unknown parameter '" + pid + "'");
        const std::string& v = values.field(row, vval_col);
        if (!declared[pos->second] && !is_missing_marker(v)) observed[pos->second].insert(v);
    }
    std::vector<std::size_t> kept_features;
    for (std::size_t f = 0; f < features.size(); ++f) {
        if (!declared[f])
            features[f].value_domain.assign(observed[f].begin(), observed[f].end());
        if (features[f].value_domain.empty()) {
            warn(warnings, "feature '" + features[f].id + "' has no coded values; dropped");
            continue;
        }
        kept_features.push_back(f);
    }
    std::vector<FeatureSpec> final_features;
    std::unordered_map<std::string, Eigen::Index> final_pos;
    for (std::size_t f : kept_features) {
        final_pos.emplace(features[f].id, static_cast<Eigen::Index>(final_features.size()));
        final_features.push_back(features[f]);
    }

    Eigen::MatrixXi cells = Eigen::MatrixXi::Constant(static_cast<Eigen::Index>(languages.size()),
                                                      static_cast<Eigen::Index>(final_features.size()),
                                                      FeatureMatrix::kMissingNoCoverage);

    // Second pass: fill cells.
    for (const auto& row : values.rows()) {
        const std::string& lid = values.field(row, vlang_col);
        auto gi = id_to_glottocode.find(lid);
        if (gi == id_to_glottocode.end())
            throw DataError(values.where(row) + ": value for unknown language '" + lid + "'");
        if (gi->second.empty()) continue;  // language was dropped (no glottocode)
        auto li = lang_row.find(gi->second);
        if (li == lang_row.end()) continue;

        const std::string& pid = values.field(row, vparam_col);
        auto fi = final_pos.find(pid);
        if (fi == final_pos.end()) continue;  // feature was dropped (empty domain)
        const FeatureSpec& spec = final_features[static_cast<std::size_t>(fi->second)];

        const std::string& v = values.field(row, vval_col);
        int code;
        if (v == "?") {
            code = FeatureMatrix::kMissingUnknown;
        } else if (v.empty()) {
            code = FeatureMatrix::kMissingNoCoverage;
        } else {
            auto it = std::find(spec.value_domain.begin(), spec.value_domain.end(), v);
            if (it == spec.value_domain.end())
                throw DataError(values.where(row) + ": value '" + v + "' for feature '" + spec.id +
                                "' of language '" + gi->second + "' is not in the declared domain");
            code = static_cast<int>(it - spec.value_domain.begin());
        }
        int& cell = cells(li->second, fi->second);
        if (cell != FeatureMatrix::kMissingNoCoverage)
            throw DataError(values.where(row) + ": duplicate value for language '" + gi->second +
                            "', feature '" + spec.id + "'");
        cell = code;
    }

    return FeatureMatrix(std::move(languages), std::move(final_features), std::move(cells));
}

FeatureMatrix feature_subset(const FeatureMatrix& matrix, const std::vector<std::string>& ids) {
    if (ids.empty()) throw DataError("empty feature selection");
    std::set<std::string> seen;
    std::vector<Eigen::Index> cols;
    std::vector<FeatureSpec> features;
    for (const auto& id : ids) {
        if (!seen.insert(id).second) throw DataError("duplicate feature id in selection: " + id);
        Eigen::Index f = matrix.feature_index(id);
        cols.push_back(f);
        features.push_back(matrix.features()[static_cast<std::size_t>(f)]);
    }
    Eigen::MatrixXi cells(matrix.language_count(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k)
        cells.col(static_cast<Eigen::Index>(k)) = matrix.cells().col(cols[k]);
    return FeatureMatrix(matrix.languages(), std::move(features), std::move(cells));
}

void save_cache(const FeatureMatrix& matrix, const std::filesystem::path& path) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = "1";
    doc["languages"] = matrix.languages();
    auto& feats = doc["features"] = nlohmann::ordered_json::array();
    for (const auto& spec : matrix.features()) {
        feats.push_back({{"id", spec.id}, {"name", spec.name}, {"domain", spec.value_domain}});
    }
    auto& cells = doc["cells"] = nlohmann::ordered_json::array();
    for (Eigen::Index l = 0; l < matrix.language_count(); ++l) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Eigen::Index f = 0; f < matrix.feature_count(); ++f) row.push_back(matrix.cells()(l, f));
        cells.push_back(std::move(row));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write cache file: " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("error writing cache file: " + path.string());
}

FeatureMatrix load_cache(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(csv::read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": invalid cache JSON: " + e.what());
    }
    try {
        std::vector<std::string> languages = doc.at("languages").get<std::vector<std::string>>();
        std::vector<FeatureSpec> features;
        for (const auto& f : doc.at("features")) {
            FeatureSpec spec;
            spec.id = f.at("id").get<std::string>();
            spec.name = f.at("name").get<std::string>();
            spec.value_domain = f.at("domain").get<std::vector<std::string>>();
            features.push_back(std::move(spec));
        }
        const auto& rows = doc.at("cells");
        Eigen::MatrixXi cells(static_cast<Eigen::Index>(languages.size()),
                              static_cast<Eigen::Index>(features.size()));
        if (rows.size() != languages.size())
            throw DataError(path.string() + ": cache cell rows do not match languages");
        for (std::size_t l = 0; l < rows.size(); ++l) {
            if (rows[l].size() != features.size())
                throw DataError(path.string() + ": cache cell columns do not match features");
            for (std::size_t f = 0; f < features.size(); ++f)
                cells(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(f)) =
                    rows[l][f].get<int>();
        }
        return FeatureMatrix(std::move(languages), std::move(features), std::move(cells));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": malformed cache: " + e.what());
    }
}

bool cell_identical(const FeatureMatrix& a, const FeatureMatrix& b) {
    return a.languages() == b.languages() && a.features() == b.features() &&
           a.cells().rows() == b.cells().rows() && a.cells().cols() == b.cells().cols() &&
           (a.cells().array() == b.cells().array()).all();
}

} // namespace typdiv::cldf
