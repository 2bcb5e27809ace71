#include <doctest.h>

#include <cmath>
#include <random>

#include "testutil.hpp"
#include "typdiv/distances.hpp"
#include "typdiv/error.hpp"

using namespace typdiv;
using namespace typdiv::distances;

namespace {

struct MaskedVec {
    Eigen::RowVectorXd v;
    Eigen::Array<bool, 1, Eigen::Dynamic> m;
};

MaskedVec vec(std::vector<double> values, std::vector<bool> mask) {
    MaskedVec out;
    out.v.resize(static_cast<Eigen::Index>(values.size()));
    out.m.resize(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.v(static_cast<Eigen::Index>(i)) = values[i];
        out.m(static_cast<Eigen::Index>(i)) = mask[i];
    }
    return out;
}

langmeta::LanguageRecord geo_record(double lat, double lon) {
    langmeta::LanguageRecord rec;
    rec.glottocode = "test1234";
    rec.lineage = {"test1234"};
    rec.latitude = lat;
    rec.longitude = lon;
    return rec;
}

langmeta::LanguageRecord lineage_record(std::string gc, std::vector<std::string> lineage) {
    langmeta::LanguageRecord rec;
    rec.glottocode = std::move(gc);
    rec.lineage = std::move(lineage);
    return rec;
}

} // namespace

TEST_CASE("pair_distance on identical fully-defined vectors is zero") {
    auto a = vec({0.2, 0.8, 0.5}, {true, true, true});
    auto d = pair_distance(a.v, a.m, a.v, a.m);
    REQUIRE(d.has_value());
    CHECK(*d == 0.0);
}

TEST_CASE("pair_distance averages over the shared dimensions") {
    // (1,0,missing) vs (0,0,1): shared = first two dims, sqrt(1/2)
    auto a = vec({1, 0, 0}, {true, true, false});
    auto b = vec({0, 0, 1}, {true, true, true});
    auto d = pair_distance(a.v, a.m, b.v, b.m);
    REQUIRE(d.has_value());
    CHECK(*d == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    auto raw = pair_distance(a.v, a.m, b.v, b.m, PairNorm::raw);
    CHECK(*raw == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pair_distance with disjoint masks is missing") {
    auto a = vec({1, 0}, {true, false});
    auto b = vec({0, 1}, {false, true});
    CHECK(!pair_distance(a.v, a.m, b.v, b.m).has_value());
}

TEST_CASE("pair_distance rejects mismatched dimensions") {
    auto a = vec({1, 0}, {true, true});
    auto b = vec({1, 0, 0}, {true, true, true});
    CHECK_THROWS_AS(pair_distance(a.v, a.m, b.v, b.m), std::invalid_argument);
}

TEST_CASE("pair_distance is symmetric and permutation invariant") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int iter = 0; iter < 50; ++iter) {
        const int d = 2 + static_cast<int>(rng() % 8);
        std::vector<double> xv(static_cast<std::size_t>(d)), yv(static_cast<std::size_t>(d));
        std::vector<bool> xm(static_cast<std::size_t>(d)), ym(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) {
            xv[static_cast<std::size_t>(k)] = unit(rng);
            yv[static_cast<std::size_t>(k)] = unit(rng);
            xm[static_cast<std::size_t>(k)] = rng() % 4 != 0;
            ym[static_cast<std::size_t>(k)] = rng() % 4 != 0;
        }
        auto x = vec(xv, xm);
        auto y = vec(yv, ym);
        auto ab = pair_distance(x.v, x.m, y.v, y.m);
        auto ba = pair_distance(y.v, y.m, x.v, x.m);
        CHECK(ab == ba);

        // d(v,v) = 0 for any partially defined v
        auto self = pair_distance(x.v, x.m, x.v, x.m);
        if (x.m.any()) CHECK(*self == 0.0);

        // apply one random permutation to both vectors
        std::vector<int> perm(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) perm[static_cast<std::size_t>(k)] = k;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> pxv(static_cast<std::size_t>(d)), pyv(static_cast<std::size_t>(d));
        std::vector<bool> pxm(static_cast<std::size_t>(d)), pym(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) {
            pxv[static_cast<std::size_t>(k)] = xv[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
            pyv[static_cast<std::size_t>(k)] = yv[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
            pxm[static_cast<std::size_t>(k)] = xm[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
            pym[static_cast<std::size_t>(k)] = ym[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
        }
        auto px = vec(pxv, pxm);
        auto py = vec(pyv, pym);
        auto permuted = pair_distance(px.v, px.m, py.v, py.m);
        if (ab) {
            CHECK(*permuted == doctest::Approx(*ab).epsilon(1e-12));
        } else {
            CHECK(!permuted.has_value());
        }
    }
}

TEST_CASE("one-hot vectors differing on exactly one feature have a closed-form distance") {
    // both fully defined over D total dims, one feature flipped: two cells
    // differ by 1 -> sqrt(2/D)
    std::mt19937 rng(17);
    for (int iter = 0; iter < 20; ++iter) {
        const int n_feats = 1 + static_cast<int>(rng() % 5);
        std::vector<int> domains;
        int total = 0;
        for (int f = 0; f < n_feats; ++f) {
            domains.push_back(2 + static_cast<int>(rng() % 3));
            total += domains.back();
        }
        std::vector<double> a(static_cast<std::size_t>(total), 0.0);
        std::vector<double> b;
        int offset = 0;
        std::vector<int> choice_a;
        for (int f = 0; f < n_feats; ++f) {
            choice_a.push_back(static_cast<int>(rng() % static_cast<unsigned>(domains[static_cast<std::size_t>(f)])));
            a[static_cast<std::size_t>(offset + choice_a.back())] = 1.0;
            offset += domains[static_cast<std::size_t>(f)];
        }
        b = a;
        // flip one feature to a different value
        const int flip = static_cast<int>(rng() % static_cast<unsigned>(n_feats));
        offset = 0;
        for (int f = 0; f < flip; ++f) offset += domains[static_cast<std::size_t>(f)];
        const int old_choice = choice_a[static_cast<std::size_t>(flip)];
        const int new_choice =
            (old_choice + 1 + static_cast<int>(rng() % static_cast<unsigned>(
                                   domains[static_cast<std::size_t>(flip)] - 1))) %
            domains[static_cast<std::size_t>(flip)];
        b[static_cast<std::size_t>(offset + old_choice)] = 0.0;
        b[static_cast<std::size_t>(offset + new_choice)] = 1.0;

        auto x = vec(a, std::vector<bool>(static_cast<std::size_t>(total), true));
        auto y = vec(b, std::vector<bool>(static_cast<std::size_t>(total), true));
        auto d = pair_distance(x.v, x.m, y.v, y.m);
        const double closed_form = std::sqrt(2.0 / total);

        // brute force recomputation
        double ssq = 0.0;
        for (int k = 0; k < total; ++k) {
            const double diff = a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)];
            ssq += diff * diff;
        }
        CHECK(*d == doctest::Approx(closed_form).epsilon(1e-12));
        CHECK(*d == doctest::Approx(std::sqrt(ssq / total)).epsilon(1e-12));
    }
}

TEST_CASE("geo_distance matches an independent haversine") {
    auto ams = geo_record(52.37, 4.90);
    auto cph = geo_record(55.68, 12.57);
    auto d = geo_distance(ams, cph);
    REQUIRE(d.has_value());
    const double oracle = testutil::haversine_oracle(52.37, 4.90, 55.68, 12.57);
    CHECK(*d == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(*d == doctest::Approx(0.031).epsilon(0.02));
}

TEST_CASE("geo_distance endpoints: identical and antipodal") {
    auto a = geo_record(10.0, 20.0);
    CHECK(*geo_distance(a, a) == 0.0);
    auto eq0 = geo_record(0.0, 0.0);
    auto eq180 = geo_record(0.0, 180.0);
    CHECK(*geo_distance(eq0, eq180) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("geo_distance is missing without coordinates") {
    auto a = geo_record(10.0, 20.0);
    langmeta::LanguageRecord no_coords = lineage_record("noco1234", {"noco1234"});
    CHECK(!geo_distance(a, no_coords).has_value());
}

TEST_CASE("geo_distance is symmetric and satisfies the triangle inequality") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> lat(-90.0, 90.0);
    std::uniform_real_distribution<double> lon(-180.0, 180.0);
    for (int iter = 0; iter < 100; ++iter) {
        auto a = geo_record(lat(rng), lon(rng));
        auto b = geo_record(lat(rng), lon(rng));
        auto c = geo_record(lat(rng), lon(rng));
        const double ab = *geo_distance(a, b);
        const double ba = *geo_distance(b, a);
        const double bc = *geo_distance(b, c);
        const double ac = *geo_distance(a, c);
        CHECK(ab == ba);
        CHECK(ac <= ab + bc + 1e-9);
    }
}

TEST_CASE("genetic_distance follows Jaccard set arithmetic") {
    auto same1 = lineage_record("aaaa1111", {"root1111", "mid11111", "aaaa1111"});
    auto same2 = lineage_record("aaaa1111", {"root1111", "mid11111", "aaaa1111"});
    CHECK(genetic_distance(same1, same2) == 0.0);

    auto x = lineage_record("aaaa1111", {"root1111", "xnod1111", "aaaa1111"});
    auto y = lineage_record("bbbb1111", {"root1111", "xnod1111", "bbbb1111"});
    // [r,x,a] vs [r,x,b]: 1 - 2/4
    CHECK(genetic_distance(x, y) == doctest::Approx(0.5).epsilon(1e-15));

    auto z = lineage_record("cccc1111", {"sep11111", "cccc1111"});
    CHECK(genetic_distance(x, z) == 1.0);
}

TEST_CASE("build_from_matrix slices the reference fixture") {
    testutil::TempDir dir;
    auto p = dir.file("syn.csv",
                      "language,dan,nor,spa,jpn\n"
                      "dan,0,0.22,0.59,0.69\n"
                      "nor,0.22,0,0.58,0.70\n"
                      "spa,0.59,0.58,0,0.66\n"
                      "jpn,0.69,0.70,0.66,0\n");
    DistanceMatrix full = vectors::load_distance_matrix(p);

    auto build = build_from_matrix(full, LanguageSample::from_ids({"dan", "nor"}));
    CHECK(build.excluded.empty());
    CHECK(build.matrix.ids() == std::vector<std::string>{"dan", "nor"});
    CHECK(*build.matrix.lookup("dan", "nor") == 0.22);

    auto with_missing = build_from_matrix(full, LanguageSample::from_ids({"dan", "zzz"}));
    REQUIRE(with_missing.excluded.size() == 1);
    CHECK(with_missing.excluded[0].language == "zzz");
    CHECK_THROWS_AS(build_from_matrix(full, LanguageSample::from_ids({"dan", "zzz"}), true),
                    SampleError);
}

TEST_CASE("singleton samples build a 1x1 zero matrix") {
    testutil::TempDir dir;
    auto p = dir.file("d.csv", "x,a,b\na,0,0.5\nb,0.5,0\n");
    DistanceMatrix full = vectors::load_distance_matrix(p);
    auto build = build_from_matrix(full, LanguageSample::from_ids({"a"}));
    CHECK(build.matrix.size() == 1);
    CHECK(build.matrix.at(0, 0) == 0.0);
}

TEST_CASE("build_from_vectors masks pairs with disjoint coverage") {
    std::vector<std::string> dims{"d1", "d2"};
    Eigen::MatrixXd values(2, 2);
    values << 1.0, 0.0, 0.0, 1.0;
    BoolArray defined(2, 2);
    defined << true, false, false, true;
    vectors::VectorSet vs(dims, {"aa", "bb"}, values, defined);
    auto build = build_from_vectors(vs, LanguageSample::from_ids({"aa", "bb"}));
    CHECK(!build.matrix.is_defined(0, 1));
    CHECK(build.matrix.is_defined(0, 0));
}

TEST_CASE("matrix assembly is deterministic across sample orderings") {
    auto registry = langmeta::Registry::from_records({
        lineage_record("aaaa1111", {"root1111", "aaaa1111"}),
        lineage_record("bbbb1111", {"root1111", "bbbb1111"}),
        lineage_record("cccc1111", {"othr1111", "cccc1111"}),
    });
    auto fwd = build_from_lineages(registry, LanguageSample::from_ids({"aaaa1111", "bbbb1111",
                                                                       "cccc1111"}));
    auto rev = build_from_lineages(registry, LanguageSample::from_ids({"cccc1111", "bbbb1111",
                                                                       "aaaa1111"}));
    CHECK(*fwd.matrix.lookup("aaaa1111", "cccc1111") == *rev.matrix.lookup("aaaa1111", "cccc1111"));
    CHECK(*fwd.matrix.lookup("aaaa1111", "bbbb1111") == *rev.matrix.lookup("aaaa1111", "bbbb1111"));
}
