#ifndef TYPDIV_SURVEY_HPP
#define TYPDIV_SURVEY_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "typdiv/core.hpp"

namespace typdiv::survey {

struct PaperRecord {
    std::string id;
    std::string title;
    std::string abstract;
    std::optional<LanguageSample> sample;
};

struct ClaimMatch {
    bool matched = false;
    std::string field;  // "title" or "abstract"
    std::string span;   // the matched substring
};

// Case-insensitive, non-greedy search for a typological-diversity claim
// ("typolog...div..." or "div...typolog...") over the title first, then
// the abstract. Newlines are treated as spaces.
ClaimMatch scan_claims(const PaperRecord& record);

// Cohen's kappa over two equal-length label sequences:
// (p_o - p_e) / (1 - p_e) with chance agreement from the marginals.
// Degenerate when both raters are constant on the same label.
double cohen_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct FiveNumber {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;

    friend bool operator==(const FiveNumber&, const FiveNumber&) = default;
};

// Quartiles by linear interpolation at position p*(n-1) in the sorted data.
FiveNumber sample_size_stats(const std::vector<double>& sizes);

// Papers per language, each paper counting a language at most once.
// Sorted by count descending, then language id ascending.
std::vector<std::pair<std::string, std::size_t>> usage_counts(
    const std::vector<PaperRecord>& records);

// CSV, header "id,title,abstract,languages"; languages are space-separated
// codes and may be empty (no sample).
std::vector<PaperRecord> load_papers(const std::filesystem::path& path);

} // namespace typdiv::survey

#endif
