#include "typdiv/langmeta.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "typdiv/core.hpp"
#include "typdiv/csv.hpp"
#include "typdiv/error.hpp"

namespace typdiv::langmeta {

namespace {

bool is_lower_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

double parse_double(const std::string& s, const std::string& where, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DataError(where + ": malformed " + what + " '" + s + "'");
    return v;
}

std::vector<std::string> split_lineage(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t pos = s.find('>', start);
        if (pos == std::string::npos) pos = s.size();
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
        if (pos == s.size()) break;
    }
    return parts;
}

} // namespace

bool looks_like_glottocode(std::string_view code) {
    if (code.size() != 8) return false;
    for (std::size_t i = 0; i < 4; ++i)
        if (!is_lower_alnum(code[i])) return false;
    for (std::size_t i = 4; i < 8; ++i)
        if (code[i] < '0' || code[i] > '9') return false;
    return true;
}

bool looks_like_iso(std::string_view code) {
    if (code.size() != 3) return false;
    return std::all_of(code.begin(), code.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

CodeMap CodeMap::load(const std::filesystem::path& path) {
    csv::Table table = csv::Table::read(path);
    const std::size_t raw_col = table.column("raw");
    const std::size_t canonical_col = table.column("canonical");
    const std::size_t kind_col = table.column("kind");

    CodeMap map;
    for (const auto& row : table.rows()) {
        std::string raw = to_lower(table.field(row, raw_col));
        std::string canonical = to_lower(table.field(row, canonical_col));
        const std::string& kind = table.field(row, kind_col);
        if (raw.empty() || canonical.empty())
            throw DataError(table.where(row) + ": empty code");
        if (kind == "retired" || kind == "variant") {
            auto [it, inserted] = map.retired_to_current.emplace(raw, canonical);
            if (!inserted && it->second != canonical)
                throw DataError(table.where(row) + ": conflicting mapping for '" + raw + "'");
        } else if (kind == "macro") {
            auto& members = map.macro_members[raw];
            if (std::find(members.begin(), members.end(), canonical) == members.end())
                members.push_back(canonical);
        } else {
            throw DataError(table.where(row) + ": unknown kind '" + kind +
                            "' (expected retired, variant or macro)");
        }
    }
    // One application must reach a fixed point: mapped-to codes cannot
    // themselves be mapped away.
    for (const auto& [raw, canonical] : map.retired_to_current) {
        if (map.retired_to_current.count(canonical))
            throw DataError(path.string() + ": '" + raw + "' maps to '" + canonical +
                            "', which is itself remapped");
    }
    return map;
}

Registry Registry::load(const std::filesystem::path& path) {
    // a directory is shorthand for the registry.csv inside it
    const auto file =
        std::filesystem::is_directory(path) ? path / "registry.csv" : path;
    csv::Table table = csv::Table::read(file);
    const std::size_t gc_col = table.column("glottocode");
    const std::size_t iso_col = table.column("iso639_3");
    const std::size_t name_col = table.column("name");
    const std::size_t lat_col = table.column("latitude");
    const std::size_t lon_col = table.column("longitude");
    const std::size_t lineage_col = table.column("lineage");
    const std::size_t area_col = table.column("macroarea");

    std::vector<LanguageRecord> records;
    records.reserve(table.rows().size());
    for (const auto& row : table.rows()) {
        const std::string where = table.where(row);
        LanguageRecord rec;
        rec.glottocode = to_lower(table.field(row, gc_col));
        if (!looks_like_glottocode(rec.glottocode))
            throw DataError(where + ": malformed glottocode '" + rec.glottocode + "'");

        const std::string iso = to_lower(table.field(row, iso_col));
        if (!iso.empty()) {
            if (!looks_like_iso(iso))
                throw DataError(where + ": malformed ISO 639-3 code '" + iso + "'");
            rec.iso639_3 = iso;
        }

        rec.name = table.field(row, name_col);

        const std::string& lat = table.field(row, lat_col);
        const std::string& lon = table.field(row, lon_col);
        if (lat.empty() != lon.empty())
            throw DataError(where + ": latitude and longitude must both be present or both absent");
        if (!lat.empty()) {
            double la = parse_double(lat, where, "latitude");
            double lo = parse_double(lon, where, "longitude");
            if (la < -90.0 || la > 90.0) throw DataError(where + ": latitude out of range");
            if (lo < -180.0 || lo > 180.0) throw DataError(where + ": longitude out of range");
            rec.latitude = la;
            rec.longitude = lo;
        }

        const std::string lineage = to_lower(table.field(row, lineage_col));
        if (lineage.empty()) throw DataError(where + ": empty lineage");
        rec.lineage = split_lineage(lineage);
        for (const auto& node : rec.lineage) {
            if (!looks_like_glottocode(node))
                throw DataError(where + ": lineage node '" + node + "' is not a glottocode");
        }
        if (rec.lineage.back() != rec.glottocode)
            throw DataError(where + ": lineage must end in the record's glottocode");

        const std::string& area = table.field(row, area_col);
        if (!area.empty()) rec.macroarea = area;

        records.push_back(std::move(rec));
    }
    return from_records(std::move(records));
}

Registry Registry::from_records(std::vector<LanguageRecord> records) {
    Registry reg;
    reg.records_ = std::move(records);
    for (std::size_t i = 0; i < reg.records_.size(); ++i) {
        const LanguageRecord& rec = reg.records_[i];
        if (rec.lineage.empty() || rec.lineage.back() != rec.glottocode)
            throw DataError("record '" + rec.glottocode + "' violates the lineage invariant");
        if (rec.latitude.has_value() != rec.longitude.has_value())
            throw DataError("record '" + rec.glottocode + "' has a dangling coordinate");
        if (!reg.by_glottocode_.emplace(rec.glottocode, i).second)
            throw DataError("duplicate glottocode '" + rec.glottocode + "'");
        if (rec.iso639_3 && !reg.by_iso_.emplace(*rec.iso639_3, i).second)
            throw DataError("duplicate ISO 639-3 code '" + *rec.iso639_3 + "'");
    }
    return reg;
}

const LanguageRecord* Registry::find(std::string_view code) const {
    const std::string lower = to_lower(code);
    if (looks_like_glottocode(lower)) {
        auto it = by_glottocode_.find(lower);
        return it == by_glottocode_.end() ? nullptr : &records_[it->second];
    }
    if (looks_like_iso(lower)) {
        auto it = by_iso_.find(lower);
        return it == by_iso_.end() ? nullptr : &records_[it->second];
    }
    return nullptr;
}

const LanguageRecord& Registry::resolve(std::string_view code) const {
    const std::string lower = to_lower(code);
    if (!looks_like_glottocode(lower) && !looks_like_iso(lower))
        throw UnknownCodeError(std::string(code),
                               "neither an ISO 639-3 code nor a glottocode by shape");
    const LanguageRecord* rec = find(lower);
    if (!rec) throw UnknownCodeError(std::string(code), "not in the registry");
    return *rec;
}

bool Registry::has_iso(std::string_view iso) const {
    return by_iso_.count(to_lower(iso)) > 0;
}

NormalizedCode normalize_code(std::string_view raw, const CodeMap& map, const Registry& registry) {
    if (raw.empty()) throw UsageError("empty language code");
    const std::string lower = to_lower(raw);

    NormalizedCode out;
    auto it = map.retired_to_current.find(lower);
    out.canonical = it != map.retired_to_current.end() ? it->second : lower;

    auto macro = map.macro_members.find(out.canonical);
    if (macro != map.macro_members.end()) {
        out.ambiguous = true;
        out.members = macro->second;
    }

    const bool known = it != map.retired_to_current.end() || out.ambiguous ||
                       registry.has_iso(out.canonical) || registry.find(out.canonical) != nullptr;
    if (!known) throw UnknownCodeError(std::string(raw), "not in the registry or code map");
    return out;
}

} // namespace typdiv::langmeta
