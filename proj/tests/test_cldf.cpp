#include <doctest.h>

#include <random>

#include "testutil.hpp"
#include "typdiv/cldf.hpp"
#include "typdiv/error.hpp"

using namespace typdiv;
using namespace typdiv::cldf;

namespace {

testutil::CldfWriter small_dataset() {
    testutil::CldfWriter w;
    w.language("A", "lang1234");
    w.language("B", "lang5678");
    w.language("C", "lang9012");
    w.parameter("GB020", "Are there definite articles?");
    w.parameter("GB021", "Are there indefinite articles?");
    w.code("GB020", "0");
    w.code("GB020", "1");
    w.code("GB021", "0");
    w.code("GB021", "1");
    w.value("A", "GB020", "1");
    w.value("A", "GB021", "0");
    w.value("B", "GB020", "0");
    w.value("B", "GB021", "?");
    w.value("C", "GB020", "1");
    return w;
}

} // namespace

TEST_CASE("structure dataset loads with both missing kinds") {
    testutil::TempDir dir;
    FeatureMatrix fm = load_structure_dataset(small_dataset().write(dir));

    CHECK(fm.languages() == std::vector<std::string>{"lang1234", "lang5678", "lang9012"});
    REQUIRE(fm.feature_count() == 2);
    CHECK(fm.features()[0].value_domain == std::vector<std::string>{"0", "1"});

    CHECK(fm.kind(0, 0) == CellKind::value);
    CHECK(*fm.value(0, 0) == "1");
    CHECK(fm.kind(1, 1) == CellKind::missing_unknown);
    // C has no GB021 row at all
    CHECK(fm.kind(2, 1) == CellKind::missing_no_coverage);

    // per feature: values + unknown + no-coverage = languages
    for (Eigen::Index f = 0; f < fm.feature_count(); ++f) {
        std::size_t v = 0, mu = 0, mc = 0;
        for (Eigen::Index l = 0; l < fm.language_count(); ++l) {
            switch (fm.kind(l, f)) {
            case CellKind::value: ++v; break;
            case CellKind::missing_unknown: ++mu; break;
            case CellKind::missing_no_coverage: ++mc; break;
            }
        }
        CHECK(v + mu + mc == fm.languages().size());
    }
}

TEST_CASE("language absent from values.csv gets a full no-coverage row") {
    testutil::TempDir dir;
    auto w = small_dataset();
    w.language("D", "lang3456");
    FeatureMatrix fm = load_structure_dataset(w.write(dir));
    auto idx = fm.language_index("lang3456");
    REQUIRE(idx.has_value());
    for (Eigen::Index f = 0; f < fm.feature_count(); ++f)
        CHECK(fm.kind(*idx, f) == CellKind::missing_no_coverage);
}

TEST_CASE("value outside the declared code table is a data error") {
    testutil::TempDir dir;
    auto w = small_dataset();
    w.value("C", "GB021", "3");
    CHECK_THROWS_WITH_AS(load_structure_dataset(w.write(dir)),
                         doctest::Contains("GB021"), DataError);
}

TEST_CASE("missing required file is a data error") {
    testutil::TempDir dir;
    auto w = small_dataset();
    auto path = w.write(dir);
    std::filesystem::remove(path / "parameters.csv");
    CHECK_THROWS_WITH_AS(load_structure_dataset(path), doctest::Contains("parameters.csv"),
                         DataError);
}

TEST_CASE("rows without a glottocode are dropped with a warning") {
    testutil::TempDir dir;
    auto w = small_dataset();
    w.language("E", "");
    w.value("E", "GB020", "1");
    std::vector<std::string> warnings;
    FeatureMatrix fm = load_structure_dataset(w.write(dir), &warnings);
    CHECK(fm.languages().size() == 3);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("no glottocode") != std::string::npos);
}

TEST_CASE("without codes.csv domains are the observed values, sorted") {
    testutil::TempDir dir;
    auto w = small_dataset();
    w.with_codes = false;
    w.value("C", "GB021", "2");
    FeatureMatrix fm = load_structure_dataset(w.write(dir));
    CHECK(fm.features()[1].value_domain == std::vector<std::string>{"0", "2"});
}

TEST_CASE("features with no coded values are dropped when domains are observed") {
    testutil::TempDir dir;
    testutil::CldfWriter w;
    w.with_codes = false;
    w.language("A", "lang1234");
    w.parameter("F1", "observed");
    w.parameter("F2", "all missing");
    w.value("A", "F1", "x");
    w.value("A", "F2", "?");
    std::vector<std::string> warnings;
    FeatureMatrix fm = load_structure_dataset(w.write(dir), &warnings);
    CHECK(fm.feature_count() == 1);
    CHECK(fm.features()[0].id == "F1");
    CHECK(warnings.size() == 1);
}

TEST_CASE("duplicate glottocodes across dataset rows are rejected") {
    testutil::TempDir dir;
    auto w = small_dataset();
    w.language("Z", "lang1234");
    CHECK_THROWS_WITH_AS(load_structure_dataset(w.write(dir)),
                         doctest::Contains("duplicate glottocode"), DataError);
}

TEST_CASE("feature_subset slices columns and validates its input") {
    testutil::TempDir dir;
    FeatureMatrix fm = load_structure_dataset(small_dataset().write(dir));

    FeatureMatrix sub = feature_subset(fm, {"GB021"});
    CHECK(sub.feature_count() == 1);
    CHECK(sub.features()[0].id == "GB021");
    CHECK((sub.cells().col(0).array() == fm.cells().col(1).array()).all());

    CHECK_THROWS_AS(feature_subset(fm, {}), DataError);
    CHECK_THROWS_AS(feature_subset(fm, {"GB020", "GB020"}), DataError);
    CHECK_THROWS_AS(feature_subset(fm, {"NOPE"}), DataError);
}

TEST_CASE("cache round-trips cell-identically") {
    testutil::TempDir dir;
    FeatureMatrix fm = load_structure_dataset(small_dataset().write(dir));
    const auto cache = dir.path() / "fm.json";
    save_cache(fm, cache);
    FeatureMatrix back = load_cache(cache);
    CHECK(cell_identical(fm, back));
}

TEST_CASE("cache round-trip holds for random matrices") {
    std::mt19937 rng(7);
    testutil::TempDir dir;
    for (int iter = 0; iter < 10; ++iter) {
        const int n_langs = 1 + static_cast<int>(rng() % 8);
        const int n_feats = 1 + static_cast<int>(rng() % 6);
        std::vector<std::string> langs;
        for (int l = 0; l < n_langs; ++l) langs.push_back("lng" + std::to_string(l) + "1234");
        std::vector<FeatureSpec> feats;
        for (int f = 0; f < n_feats; ++f) {
            FeatureSpec spec;
            spec.id = "F" + std::to_string(f);
            spec.name = "feature " + std::to_string(f);
            const int domain = 2 + static_cast<int>(rng() % 3);
            for (int v = 0; v < domain; ++v) spec.value_domain.push_back(std::to_string(v));
            feats.push_back(std::move(spec));
        }
        Eigen::MatrixXi cells(n_langs, n_feats);
        for (int l = 0; l < n_langs; ++l) {
            for (int f = 0; f < n_feats; ++f) {
                const int domain = static_cast<int>(feats[static_cast<std::size_t>(f)]
                                                        .value_domain.size());
                const int pick = static_cast<int>(rng() % static_cast<unsigned>(domain + 2));
                cells(l, f) = pick >= domain ? (pick == domain ? FeatureMatrix::kMissingUnknown
                                                               : FeatureMatrix::kMissingNoCoverage)
                                             : pick;
            }
        }
        FeatureMatrix fm(langs, feats, cells);
        const auto cache = dir.path() / ("rt" + std::to_string(iter) + ".json");
        save_cache(fm, cache);
        CHECK(cell_identical(fm, load_cache(cache)));
    }
}
