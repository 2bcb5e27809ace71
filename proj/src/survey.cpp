#include "typdiv/survey.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "typdiv/csv.hpp"
#include "typdiv/error.hpp"

namespace typdiv::survey {

namespace {

const std::regex& claim_regex() {
    static const std::regex re("typolog.+?div.+?|div.+?typolog.+?",
                               std::regex::ECMAScript | std::regex::icase);
    return re;
}

std::string flatten(const std::string& text) {
    std::string out = text;
    for (char& c : out)
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    return out;
}

} // namespace

ClaimMatch scan_claims(const PaperRecord& record) {
    for (const auto& [field, text] :
         {std::pair<const char*, const std::string&>{"title", record.title},
          std::pair<const char*, const std::string&>{"abstract", record.abstract}}) {
        const std::string flat = flatten(text);
        std::smatch m;
        if (std::regex_search(flat, m, claim_regex())) {
            return {true, field, m.str(0)};
        }
    }
    return {};
}

double cohen_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size()) throw UsageError("label sequences must have equal length");
    if (a.empty()) throw UsageError("label sequences must be non-empty");

    const std::size_t n = a.size();
    std::map<std::string, std::size_t> marg_a, marg_b;
    std::size_t agree = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ++marg_a[a[i]];
        ++marg_b[b[i]];
        if (a[i] == b[i]) ++agree;
    }
    // integer arithmetic keeps the degeneracy test exact
    std::size_t chance_num = 0;
    for (const auto& [label, count_a] : marg_a) {
        auto it = marg_b.find(label);
        if (it != marg_b.end()) chance_num += count_a * it->second;
    }
    if (chance_num == n * n)
        throw DataError("degenerate agreement: both raters are constant on the same label");

    const double p_o = static_cast<double>(agree) / static_cast<double>(n);
    const double p_e = static_cast<double>(chance_num) / static_cast<double>(n * n);
    return (p_o - p_e) / (1.0 - p_e);
}

FiveNumber sample_size_stats(const std::vector<double>& sizes) {
    if (sizes.empty()) throw SampleError("no sample sizes given");
    std::vector<double> sorted = sizes;
    std::sort(sorted.begin(), sorted.end());

    auto quantile = [&](double p) {
        const double pos = p * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(pos);
        const auto hi = std::min(lo + 1, sorted.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    };
    return {sorted.front(), quantile(0.25), quantile(0.5), quantile(0.75), sorted.back()};
}

std::vector<std::pair<std::string, std::size_t>> usage_counts(
    const std::vector<PaperRecord>& records) {
    std::map<std::string, std::size_t> counts;
    for (const auto& rec : records) {
        if (!rec.sample) continue;
        std::set<std::string> distinct(rec.sample->ids.begin(), rec.sample->ids.end());
        for (const auto& id : distinct) ++counts[id];
    }
    std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return x.first < y.first;
    });
    return out;
}

std::vector<PaperRecord> load_papers(const std::filesystem::path& path) {
    csv::Table table = csv::Table::read(path);
    const std::size_t id_col = table.column("id");
    const std::size_t title_col = table.column("title");
    const std::size_t abstract_col = table.column("abstract");
    const std::size_t langs_col = table.column("languages");

    std::vector<PaperRecord> out;
    std::set<std::string> seen;
    for (const auto& row : table.rows()) {
        PaperRecord rec;
        rec.id = table.field(row, id_col);
        if (rec.id.empty()) throw DataError(table.where(row) + ": empty paper id");
        if (!seen.insert(rec.id).second)
            throw DataError(table.where(row) + ": duplicate paper id '" + rec.id + "'");
        rec.title = table.field(row, title_col);
        rec.abstract = table.field(row, abstract_col);

        const std::string& langs = table.field(row, langs_col);
        if (!langs.empty()) {
            std::vector<std::string> ids;
            std::set<std::string> uniq;
            std::istringstream in(langs);
            std::string code;
            while (in >> code) {
                code = to_lower(code);
                if (uniq.insert(code).second) ids.push_back(code);  // papers may repeat a language
            }
            if (!ids.empty()) rec.sample = LanguageSample{std::move(ids), rec.id};
        }
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace typdiv::survey
