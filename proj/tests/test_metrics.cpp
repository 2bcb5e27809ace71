#include <doctest.h>

#include <algorithm>
#include <random>

#include "testutil.hpp"
#include "typdiv/error.hpp"
#include "typdiv/metrics.hpp"

using namespace typdiv;
using namespace typdiv::metrics;

namespace {

DistanceMatrix matrix_from(const std::vector<std::string>& ids,
                           const std::vector<std::vector<std::optional<double>>>& d) {
    const auto n = static_cast<Eigen::Index>(ids.size());
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
    BoolArray defined = BoolArray::Constant(n, n, false);
    for (Eigen::Index i = 0; i < n; ++i) {
        defined(i, i) = true;
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& cell = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (i != j && cell) {
                values(i, j) = *cell;
                defined(i, j) = true;
            }
        }
    }
    return DistanceMatrix(ids, values, defined);
}

cldf::FeatureMatrix two_feature_db() {
    // F1 domain {0,1}, F2 domain {0,1,2}; X(F1=0,F2=1), Y(F1=1,F2=?)
    std::vector<cldf::FeatureSpec> feats{{"F1", "first", {"0", "1"}},
                                         {"F2", "second", {"0", "1", "2"}}};
    Eigen::MatrixXi cells(2, 2);
    cells << 0, 1, 1, cldf::FeatureMatrix::kMissingUnknown;
    return cldf::FeatureMatrix({"xxxx1111", "yyyy1111"}, feats, cells);
}

} // namespace

TEST_CASE("mpd of the reference pair is exact") {
    auto dm = matrix_from({"dan", "nor"}, {{std::nullopt, 0.22}, {0.22, std::nullopt}});
    auto result = mpd(LanguageSample::from_ids({"dan", "nor"}), dm);
    CHECK(result.value == 0.22);
    CHECK(result.pair_count == 1);
    CHECK(result.used.ids.size() == 2);
}

TEST_CASE("mpd of three reference pair values is their mean") {
    auto dm = matrix_from({"a", "b", "c"}, {{std::nullopt, 0.22, 0.59},
                                            {0.22, std::nullopt, 0.69},
                                            {0.59, 0.69, std::nullopt}});
    auto result = mpd(LanguageSample::from_ids({"a", "b", "c"}), dm);
    CHECK(result.value == doctest::Approx(0.50).epsilon(1e-12));
    CHECK(result.pair_count == 3);
}

TEST_CASE("mpd is zero for identical vectors and invariant under reordering") {
    auto dm = matrix_from({"a", "b", "c"}, {{std::nullopt, 0.0, 0.0},
                                            {0.0, std::nullopt, 0.0},
                                            {0.0, 0.0, std::nullopt}});
    CHECK(mpd(LanguageSample::from_ids({"a", "b", "c"}), dm).value == 0.0);

    auto dm2 = matrix_from({"a", "b", "c"}, {{std::nullopt, 0.1, 0.2},
                                             {0.1, std::nullopt, 0.7},
                                             {0.2, 0.7, std::nullopt}});
    auto fwd = mpd(LanguageSample::from_ids({"a", "b", "c"}), dm2);
    auto rev = mpd(LanguageSample::from_ids({"c", "a", "b"}), dm2);
    CHECK(fwd.value == rev.value);
}

TEST_CASE("mpd excludes absent languages and missing pairs") {
    auto dm = matrix_from({"a", "b", "c"}, {{std::nullopt, 0.4, std::nullopt},
                                            {0.4, std::nullopt, std::nullopt},
                                            {std::nullopt, std::nullopt, std::nullopt}});
    auto result = mpd(LanguageSample::from_ids({"a", "b", "c", "zz"}), dm);
    CHECK(result.value == 0.4);
    CHECK(result.pair_count == 1);
    CHECK(result.skipped_pairs == 2);
    REQUIRE(result.excluded.size() == 1);
    CHECK(result.excluded[0].language == "zz");
    // used + excluded covers the input sample
    CHECK(result.used.ids.size() + result.excluded.size() == 4);
}

TEST_CASE("mpd needs two usable languages and at least one defined pair") {
    auto dm = matrix_from({"a", "b"}, {{std::nullopt, std::nullopt},
                                       {std::nullopt, std::nullopt}});
    CHECK_THROWS_WITH_AS(mpd(LanguageSample::from_ids({"a", "zz"}), dm),
                         doctest::Contains("at least 2"), SampleError);
    CHECK_THROWS_WITH_AS(mpd(LanguageSample::from_ids({"a", "b"}), dm),
                         doctest::Contains("no defined pairs"), SampleError);
}

TEST_CASE("mpd matches the ordered-pair brute force on random full matrices") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int iter = 0; iter < 100; ++iter) {
        const std::size_t n = 2 + rng() % 11;  // up to 12 languages
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < n; ++i) ids.push_back("l" + std::to_string(i));
        std::vector<std::vector<std::optional<double>>> d(
            n, std::vector<std::optional<double>>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = unit(rng);

        auto result = mpd(LanguageSample::from_ids(ids), matrix_from(ids, d));
        auto oracle = testutil::brute_mpd(d);
        REQUIRE(oracle.has_value());
        CHECK(result.value == doctest::Approx(*oracle).epsilon(1e-12));
        CHECK(result.pair_count == n * (n - 1) / 2);
    }
}

TEST_CASE("mpd matches brute force when pairs are missing") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t n = 3 + rng() % 10;
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < n; ++i) ids.push_back("l" + std::to_string(i));
        std::vector<std::vector<std::optional<double>>> d(
            n, std::vector<std::optional<double>>(n));
        bool any = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng() % 3 != 0) {
                    d[i][j] = d[j][i] = unit(rng);
                    any = true;
                }
        if (!any) continue;
        auto result = mpd(LanguageSample::from_ids(ids), matrix_from(ids, d));
        auto oracle = testutil::brute_mpd(d);
        CHECK(result.value == doctest::Approx(*oracle).epsilon(1e-12));
    }
}

TEST_CASE("mpsd composes filter, matrix build and mpd") {
    // two identical languages plus one low-coverage language
    std::vector<std::string> dims;
    for (int i = 0; i < 40; ++i) dims.push_back("d" + std::to_string(i));
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(3, 40);
    BoolArray defined = BoolArray::Constant(3, 40, true);
    defined.row(2).setConstant(false);
    defined(2, 0) = true;  // 1/40 = 2.5% coverage
    vectors::VectorSet vs(dims, {"aa", "bb", "low"}, values, defined);

    auto result = mpsd(LanguageSample::from_ids({"aa", "bb", "low"}), vs, 0.05);
    CHECK(result.value == 0.0);  // identical all-zero vectors
    REQUIRE(result.excluded.size() == 1);
    CHECK(result.excluded[0].language == "low");
    CHECK(result.excluded[0].reason == "low_coverage");
    CHECK(result.excluded[0].ratio == doctest::Approx(0.025));

    // threshold 1.0 excludes any partially covered language
    CHECK_THROWS_AS(mpsd(LanguageSample::from_ids({"aa", "low"}), vs, 1.0), SampleError);
}

TEST_CASE("fvi evaluates the two-feature reference example") {
    auto db = two_feature_db();
    auto result = fvi(LanguageSample::from_ids({"xxxx1111", "yyyy1111"}), db);
    CHECK(result.value == doctest::Approx((2.0 / 2.0 + 1.0 / 3.0) / 2.0).epsilon(1e-12));
    CHECK(result.value == doctest::Approx(0.66667).epsilon(1e-4));
    CHECK(result.feature_count == 2);

    auto items = fvi_per_feature(LanguageSample::from_ids({"xxxx1111", "yyyy1111"}), db);
    REQUIRE(items.size() == 2);
    CHECK(items[0].feature_id == "F1");
    CHECK(items[0].covered_values == std::vector<std::string>{"0", "1"});
    CHECK(items[0].ratio == 1.0);
    CHECK(items[1].covered_values == std::vector<std::string>{"1"});
    CHECK(items[1].domain_size == 3);
    CHECK(items[1].ratio == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // mean of the itemized ratios equals the headline value
    double mean = 0.0;
    for (const auto& item : items) mean += item.ratio;
    mean /= static_cast<double>(items.size());
    CHECK(mean == doctest::Approx(result.value).epsilon(1e-12));
}

TEST_CASE("fvi discards absent languages but keeps computing") {
    auto db = two_feature_db();
    auto result = fvi(LanguageSample::from_ids({"xxxx1111", "none1111"}), db);
    CHECK(result.used.ids == std::vector<std::string>{"xxxx1111"});
    REQUIRE(result.excluded.size() == 1);
    CHECK(result.excluded[0].reason == "absent");

    CHECK_THROWS_AS(fvi(LanguageSample::from_ids({"none1111"}), db), SampleError);
}

TEST_CASE("fvi of a feature nobody attests contributes zero") {
    std::vector<cldf::FeatureSpec> feats{{"F1", "", {"0", "1"}}};
    Eigen::MatrixXi cells(2, 1);
    cells << cldf::FeatureMatrix::kMissingUnknown, cldf::FeatureMatrix::kMissingNoCoverage;
    cldf::FeatureMatrix db({"aaaa1111", "bbbb1111"}, feats, cells);
    auto items = fvi_per_feature(LanguageSample::from_ids({"aaaa1111", "bbbb1111"}), db);
    CHECK(items[0].ratio == 0.0);
    CHECK(fvi(LanguageSample::from_ids({"aaaa1111", "bbbb1111"}), db).value == 0.0);
}

TEST_CASE("fvi matches set-union brute force on random databases") {
    std::mt19937 rng(47);
    for (int iter = 0; iter < 100; ++iter) {
        const std::size_t n_langs = 1 + rng() % 12;
        const std::size_t n_feats = 1 + rng() % 20;
        std::vector<std::string> langs;
        for (std::size_t l = 0; l < n_langs; ++l) langs.push_back("l" + std::to_string(l));
        std::vector<cldf::FeatureSpec> feats;
        std::vector<int> domains;
        for (std::size_t f = 0; f < n_feats; ++f) {
            cldf::FeatureSpec spec;
            spec.id = "F" + std::to_string(f);
            const int domain = 2 + static_cast<int>(rng() % 4);
            for (int v = 0; v < domain; ++v) spec.value_domain.push_back(std::to_string(v));
            domains.push_back(domain);
            feats.push_back(std::move(spec));
        }
        Eigen::MatrixXi cells(static_cast<Eigen::Index>(n_langs),
                              static_cast<Eigen::Index>(n_feats));
        std::vector<std::vector<int>> plain(n_langs, std::vector<int>(n_feats));
        for (std::size_t l = 0; l < n_langs; ++l)
            for (std::size_t f = 0; f < n_feats; ++f) {
                const int domain = domains[f];
                const int pick = static_cast<int>(rng() % static_cast<unsigned>(domain + 2));
                const int cell = pick >= domain
                                     ? (pick == domain ? cldf::FeatureMatrix::kMissingUnknown
                                                       : cldf::FeatureMatrix::kMissingNoCoverage)
                                     : pick;
                cells(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(f)) = cell;
                plain[l][f] = cell;
            }
        cldf::FeatureMatrix db(langs, feats, cells);

        // random subsample
        std::vector<std::size_t> sample_rows;
        std::vector<std::string> sample_ids;
        for (std::size_t l = 0; l < n_langs; ++l)
            if (rng() % 2 == 0) {
                sample_rows.push_back(l);
                sample_ids.push_back(langs[l]);
            }
        if (sample_ids.empty()) {
            sample_rows.push_back(0);
            sample_ids.push_back(langs[0]);
        }
        auto result = fvi(LanguageSample::from_ids(sample_ids), db);
        const double oracle = testutil::brute_fvi(plain, domains, sample_rows);
        CHECK(result.value == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(result.value >= 0.0);
        CHECK(result.value <= 1.0);
    }
}

TEST_CASE("fvi never decreases when a language is added") {
    std::mt19937 rng(53);
    for (int iter = 0; iter < 30; ++iter) {
        const std::size_t n_langs = 3 + rng() % 9;
        const std::size_t n_feats = 1 + rng() % 10;
        std::vector<std::string> langs;
        for (std::size_t l = 0; l < n_langs; ++l) langs.push_back("l" + std::to_string(l));
        std::vector<cldf::FeatureSpec> feats;
        for (std::size_t f = 0; f < n_feats; ++f) {
            cldf::FeatureSpec spec;
            spec.id = "F" + std::to_string(f);
            const int domain = 2 + static_cast<int>(rng() % 3);
            for (int v = 0; v < domain; ++v) spec.value_domain.push_back(std::to_string(v));
            feats.push_back(std::move(spec));
        }
        Eigen::MatrixXi cells(static_cast<Eigen::Index>(n_langs),
                              static_cast<Eigen::Index>(n_feats));
        for (std::size_t l = 0; l < n_langs; ++l)
            for (std::size_t f = 0; f < n_feats; ++f) {
                const int domain = static_cast<int>(feats[f].value_domain.size());
                const int pick = static_cast<int>(rng() % static_cast<unsigned>(domain + 1));
                cells(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(f)) =
                    pick == domain ? cldf::FeatureMatrix::kMissingUnknown : pick;
            }
        cldf::FeatureMatrix db(langs, feats, cells);

        std::vector<std::string> grown;
        double last = -1.0;
        std::vector<std::string> order = langs;
        std::shuffle(order.begin(), order.end(), rng);
        for (const auto& id : order) {
            grown.push_back(id);
            const double value = fvi(LanguageSample::from_ids(grown), db).value;
            CHECK(value >= last - 1e-15);
            last = value;
        }
    }
}

TEST_CASE("sample files parse comments and blanks, rejecting duplicates") {
    testutil::TempDir dir;
    auto p = dir.file("s.txt", "# nordics\ndan\nnor  # inline comment\n\nSWE\n");
    LanguageSample sample = load_sample(p);
    CHECK(sample.ids == std::vector<std::string>{"dan", "nor", "swe"});
    CHECK(sample.label == "s");

    auto dup = dir.file("dup.txt", "dan\ndan\n");
    CHECK_THROWS_AS(load_sample(dup), SampleError);
    auto empty = dir.file("empty.txt", "# nothing\n");
    CHECK_THROWS_AS(load_sample(empty), SampleError);
}
