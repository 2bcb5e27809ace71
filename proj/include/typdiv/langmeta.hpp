#ifndef TYPDIV_LANGMETA_HPP
#define TYPDIV_LANGMETA_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace typdiv::langmeta {

// One language as known to the registry. `lineage` runs from the root
// family down to the language itself; latitude/longitude come in pairs.
struct LanguageRecord {
    std::string glottocode;
    std::optional<std::string> iso639_3;
    std::string name;
    std::optional<double> latitude;
    std::optional<double> longitude;
    std::vector<std::string> lineage;
    std::optional<std::string> macroarea;

    bool has_coordinates() const noexcept { return latitude.has_value(); }

    friend bool operator==(const LanguageRecord&, const LanguageRecord&) = default;
};

bool looks_like_glottocode(std::string_view code);
bool looks_like_iso(std::string_view code);

// Deprecated/variant ISO codes plus macrolanguage membership.
// CSV format: raw,canonical,kind with kind in {retired, variant, macro}.
// Macro rows list one member per row; the macro code itself stays the
// canonical form but is flagged ambiguous on normalization.
struct CodeMap {
    std::map<std::string, std::string> retired_to_current;
    std::map<std::string, std::vector<std::string>> macro_members;

    static CodeMap load(const std::filesystem::path& path);
};

struct NormalizedCode {
    std::string canonical;
    bool ambiguous = false;
    std::vector<std::string> members;  // macrolanguage members when ambiguous
};

// Immutable after load; concurrent reads are safe.
class Registry {
public:
    // Registry CSV, header required:
    //   glottocode,iso639_3,name,latitude,longitude,lineage,macroarea
    // with lineage '>'-joined glottocodes and empty cells meaning absent.
    static Registry load(const std::filesystem::path& path);
    static Registry from_records(std::vector<LanguageRecord> records);

    const std::vector<LanguageRecord>& records() const noexcept { return records_; }

    // Shape-dispatched lookup (glottocode or ISO 639-3); nullptr when absent
    // or when the code has neither shape. Case-insensitive.
    const LanguageRecord* find(std::string_view code) const;
    // Throwing variant: UnknownCodeError on bad shape or unknown code.
    const LanguageRecord& resolve(std::string_view code) const;

    bool has_iso(std::string_view iso) const;

private:
    Registry() = default;
    std::vector<LanguageRecord> records_;
    std::unordered_map<std::string, std::size_t> by_glottocode_;
    std::unordered_map<std::string, std::size_t> by_iso_;
};

// Canonicalizes an ISO-style code through the CodeMap and flags
// macrolanguage ambiguity. Codes known to neither the registry nor the
// map raise UnknownCodeError. Matching is case-insensitive.
NormalizedCode normalize_code(std::string_view raw, const CodeMap& map, const Registry& registry);

} // namespace typdiv::langmeta

#endif
