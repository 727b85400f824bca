#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "nilcoh/lie_algebra.hpp"
#include "nilcoh/resolution.hpp"

using namespace nilcoh;

namespace {

MinimalResolution res(const std::string& name, std::uint32_t p, std::size_t n,
                      ResolutionOptions opts = {}) {
    opts.max_degree = n;
    return minimal_resolution(UAlgebra(catalogue(name, p)), opts);
}

Weight W(std::initializer_list<int> v) { return Weight(v); }

std::vector<Weight> sorted_weights(const MinimalResolution& r, std::size_t m) {
    auto w = r.generator_weights(m);
    std::sort(w.begin(), w.end());
    return w;
}

/* The unique basis class of the given degree and weight. */
ExtClass the_class(const MinimalResolution& r, std::size_t m, const Weight& w) {
    ExtClass found;
    std::size_t hits = 0;
    for (const auto& c : ext_generators(r, m))
        if (c.weight == w) {
            found = c;
            ++hits;
        }
    REQUIRE(hits == 1);
    return found;
}

bool proportional(const ExtClass& x, const ExtClass& y, const PrimeField& f) {
    if (x.functional.size() != y.functional.size()) return false;
    std::size_t i = 0;
    while (i < y.functional.size() && !y.functional[i]) ++i;
    if (i == y.functional.size()) return x.is_zero();
    if (!x.functional[i]) return false;
    Fp c = f.mul(x.functional[i], f.inv(y.functional[i]));
    for (std::size_t k = 0; k < y.functional.size(); ++k)
        if (x.functional[k] != f.mul(c, y.functional[k])) return false;
    return true;
}

}  // namespace

TEST_CASE("rank-one abelian algebra has the periodic resolution") {
    UAlgebra u(abelian_algebra(1, 3));
    ResolutionOptions opts;
    opts.max_degree = 8;
    auto r = minimal_resolution(u, opts);
    REQUIRE(r.complete);
    CHECK(r.betti() == std::vector<std::size_t>{1, 1, 1, 1, 1, 1, 1, 1, 1});
    // x, x^2 alternate: weights 3j in degree 2j and 3j+1 in degree 2j+1
    for (std::size_t m = 0; m <= 8; ++m) {
        int j = static_cast<int>(m / 2);
        Weight expect = (m % 2 == 0) ? W({3 * j}) : W({3 * j + 1});
        CHECK(r.generator_weights(m) == std::vector<Weight>{expect});
    }
}

TEST_CASE("rank-two abelian algebra has betti m+1") {
    UAlgebra u(abelian_algebra(2, 3));
    ResolutionOptions opts;
    opts.max_degree = 5;
    auto r = minimal_resolution(u, opts);
    CHECK(r.betti() == std::vector<std::size_t>{1, 2, 3, 4, 5, 6});
    CHECK(r.generator_weights(1) == std::vector<Weight>{W({0, 1}), W({1, 0})});
    // exterior class in height 2, then the two twisted polynomial generators
    CHECK(r.generator_weights(2) == std::vector<Weight>{W({1, 1}), W({0, 3}), W({3, 0})});
    CHECK(sorted_weights(r, 3) ==
          std::vector<Weight>{W({0, 4}), W({1, 3}), W({3, 1}), W({4, 0})});
}

TEST_CASE("minimal resolution over u(L3_2) at p = 3") {
    auto r = res("L3_2", 3, 5);
    REQUIRE(r.complete);
    CHECK(r.betti() == std::vector<std::size_t>{1, 2, 5, 7, 12, 15});

    CHECK(r.generator_weights(0) == std::vector<Weight>{W({0, 0})});
    CHECK(r.generator_weights(1) == std::vector<Weight>{W({0, 1}), W({1, 0})});
    CHECK(r.generator_weights(2) ==
          std::vector<Weight>{W({0, 3}), W({1, 2}), W({2, 1}), W({3, 0}), W({3, 3})});
    CHECK(sorted_weights(r, 3) ==
          std::vector<Weight>{W({0, 4}), W({1, 3}), W({2, 2}), W({3, 1}), W({3, 4}),
                              W({4, 0}), W({4, 3})});
}

TEST_CASE("first boundary lists the abelianized generators") {
    // b_1 counts minimal generators of the augmentation ideal: commutators
    // are products, so only dim n - dim [n,n] classes remain.
    for (auto [name, p] : std::vector<std::pair<std::string, std::uint32_t>>{
             {"L3_2", 3}, {"L4_3", 5}, {"L5_9", 3}, {"L5_4", 3}}) {
        auto a = catalogue(name, p);
        auto r = res(name, p, 1);
        CHECK(r.betti()[1] == a.dim - commutator_dim(a));
    }
}

TEST_CASE("dense and sparse elimination paths build identical resolutions") {
    ResolutionOptions dense;
    dense.prefer_dense = true;
    auto r1 = res("L3_2", 3, 4, dense);
    auto r2 = res("L3_2", 3, 4);
    REQUIRE(r1.gens.size() == r2.gens.size());
    CHECK(r1.betti() == r2.betti());
    for (std::size_t m = 0; m < r1.gens.size(); ++m)
        for (std::size_t t = 0; t < r1.gens[m].size(); ++t) {
            CHECK(r1.gens[m][t].weight == r2.gens[m][t].weight);
            CHECK(r1.gens[m][t].image == r2.gens[m][t].image);
        }
}

TEST_CASE("ext generators form the dual basis") {
    auto r = res("L3_2", 3, 3);
    auto gens2 = ext_generators(r, 2);
    REQUIRE(gens2.size() == 5);
    for (std::size_t t = 0; t < gens2.size(); ++t) {
        CHECK(gens2[t].degree == 2);
        CHECK(gens2[t].weight == r.gens[2][t].weight);
        for (std::size_t s = 0; s < gens2.size(); ++s)
            CHECK(gens2[t].functional[s] == (s == t ? 1u : 0u));
    }
    CHECK_THROWS_AS((void)ext_generators(r, 4), input_error);
}

TEST_CASE("symmetric generators are found by weight") {
    auto r = res("L3_2", 3, 3);
    CHECK(symmetric_generator(r, W({1, 0})).weight == W({3, 0}));
    CHECK(symmetric_generator(r, W({0, 1})).weight == W({0, 3}));
    CHECK(symmetric_generator(r, W({1, 1})).weight == W({3, 3}));
    CHECK_THROWS_AS((void)symmetric_generator(r, W({2, 1})), input_error);
}

TEST_CASE("the degree-zero class is a two-sided unit") {
    auto r = res("L3_2", 3, 4);
    auto unit = ext_generators(r, 0)[0];
    for (std::size_t m = 1; m <= 3; ++m)
        for (const auto& y : ext_generators(r, m)) {
            auto left = yoneda_product(r, unit, y);
            auto right = yoneda_product(r, y, unit);
            CHECK(left.functional == y.functional);
            CHECK(right.functional == y.functional);
            CHECK(left.weight == y.weight);
        }
}

TEST_CASE("odd classes square to zero") {
    auto r = res("L3_2", 3, 3);
    for (const auto& eta : ext_generators(r, 1))
        CHECK(yoneda_product(r, eta, eta).is_zero());
}

TEST_CASE("the hidden degree-3 relation of the rank-two Borel nilradical") {
    auto r = res("L3_2", 3, 5);
    const PrimeField& f = r.env.field();
    auto eta_a = the_class(r, 1, W({1, 0}));
    auto eta_b = the_class(r, 1, W({0, 1}));
    auto eta_2ab = the_class(r, 2, W({2, 1}));
    auto eta_a2b = the_class(r, 2, W({1, 2}));
    auto x_a = symmetric_generator(r, W({1, 0}));
    auto x_b = symmetric_generator(r, W({0, 1}));

    auto left = yoneda_product(r, eta_a, eta_2ab);
    auto right = yoneda_product(r, eta_b, x_a);
    CHECK_FALSE(left.is_zero());
    CHECK_FALSE(right.is_zero());
    CHECK(left.weight == W({3, 1}));
    CHECK(proportional(left, right, f));

    auto xx = yoneda_product(r, x_a, x_b);
    CHECK_FALSE(xx.is_zero());
    CHECK(xx.weight == W({3, 3}));
    auto ee = yoneda_product(r, eta_2ab, eta_a2b);
    CHECK_FALSE(ee.is_zero());
    CHECK(proportional(ee, xx, f));
}

TEST_CASE("yoneda products are graded commutative") {
    auto r = res("L3_2", 3, 5);
    const PrimeField& f = r.env.field();
    auto classes1 = ext_generators(r, 1);
    auto classes2 = ext_generators(r, 2);
    for (const auto& x : classes1)
        for (const auto& y : classes2) {
            auto xy = yoneda_product(r, x, y);
            auto yx = yoneda_product(r, y, x);
            CHECK(xy.functional == yx.functional);  // (-1)^{1*2} = +1
        }
    for (const auto& x : classes1)
        for (const auto& y : classes1) {
            auto xy = yoneda_product(r, x, y);
            auto yx = yoneda_product(r, y, x);
            std::vector<Fp> neg(yx.functional.size());
            for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = f.neg(yx.functional[i]);
            CHECK(xy.functional == neg);  // (-1)^{1*1} = -1
        }
}

TEST_CASE("products add weights") {
    auto r = res("L3_2", 3, 4);
    auto eta_a = the_class(r, 1, W({1, 0}));
    auto x_b = symmetric_generator(r, W({0, 1}));
    auto prod = yoneda_product(r, x_b, eta_a);
    CHECK(prod.weight == W({1, 3}));
    for (std::size_t t = 0; t < prod.functional.size(); ++t)
        if (prod.functional[t]) CHECK(r.gens[3][t].weight == W({1, 3}));
}

TEST_CASE("no low class over u(L3_2) is annihilated by a polynomial generator") {
    auto r = res("L3_2", 3, 5);
    std::vector<ExtClass> xs = {symmetric_generator(r, W({1, 0})),
                                symmetric_generator(r, W({0, 1})),
                                symmetric_generator(r, W({1, 1}))};
    for (std::size_t m = 1; m <= 3; ++m)
        for (const auto& c : ext_generators(r, m))
            for (const auto& x : xs) CHECK_FALSE(annihilator_probe(r, c, x));
    // and the unit is certainly not annihilated: s*1 = s
    auto unit = ext_generators(r, 0)[0];
    for (const auto& x : xs) {
        CHECK_FALSE(annihilator_probe(r, unit, x));
        CHECK(yoneda_product(r, x, unit).functional == x.functional);
    }
}

TEST_CASE("u(L5_9) at p = 3 has a class killed by X_beta") {
    auto r = res("L5_9", 3, 4);
    auto x_beta = symmetric_generator(r, W({0, 1, 0}));
    auto w = the_class(r, 2, W({1, 0, 1}));
    CHECK(annihilator_probe(r, w, x_beta));
    // the same polynomial generator acts freely on the unit
    CHECK_FALSE(annihilator_probe(r, ext_generators(r, 0)[0], x_beta));
}

TEST_CASE("monomials in the polynomial generators stay independent") {
    auto r = res("L3_2", 3, 5);
    const PrimeField& f = r.env.field();
    std::vector<ExtClass> xs = {symmetric_generator(r, W({1, 0})),
                                symmetric_generator(r, W({0, 1})),
                                symmetric_generator(r, W({1, 1}))};
    // linear monomials: the dual-basis vectors are distinct generators
    {
        FpMatrix m = FpMatrix::make_dense(xs.size(), r.gens[2].size(), f);
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t k = 0; k < xs[i].functional.size(); ++k)
                m.set(i, k, xs[i].functional[k]);
        CHECK(rank(m) == xs.size());
    }
    // quadratic monomials X_i X_j inside Ext^4
    {
        std::vector<ExtClass> quads;
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i; j < xs.size(); ++j)
                quads.push_back(yoneda_product(r, xs[i], xs[j]));
        FpMatrix m = FpMatrix::make_dense(quads.size(), r.gens[4].size(), f);
        for (std::size_t i = 0; i < quads.size(); ++i)
            for (std::size_t k = 0; k < quads[i].functional.size(); ++k)
                m.set(i, k, quads[i].functional[k]);
        CHECK(rank(m) == quads.size());
    }
}

TEST_CASE("resolution cache round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "nilcoh-res-cache-test";
    fs::remove_all(dir);

    ResolutionOptions opts;
    opts.cache_dir = dir.string();
    auto r1 = res("L3_2", 3, 3, opts);
    std::uint64_t h = algebra_content_hash(catalogue("L3_2", 3));
    fs::path file = dir / ("resolution-" + std::to_string(h) + ".json");
    REQUIRE(fs::exists(file));

    auto r2 = res("L3_2", 3, 3, opts);
    REQUIRE(r2.gens.size() == r1.gens.size());
    for (std::size_t m = 0; m < r1.gens.size(); ++m)
        for (std::size_t t = 0; t < r1.gens[m].size(); ++t)
            CHECK(r1.gens[m][t].image == r2.gens[m][t].image);

    // a shallower request truncates the cached table
    auto r3 = res("L3_2", 3, 2, opts);
    CHECK(r3.degree_reached == 2);
    CHECK(r3.complete);
    CHECK(r3.betti() == std::vector<std::size_t>{1, 2, 5});

    // a deeper request recomputes and upgrades the cache file
    auto r4 = res("L3_2", 3, 4, opts);
    CHECK(r4.betti() == std::vector<std::size_t>{1, 2, 5, 7, 12});
    auto r5 = res("L3_2", 3, 4, opts);
    CHECK(r5.betti() == r4.betti());

    // corrupted cache files are ignored and rewritten
    {
        std::ofstream out(file);
        out << "not json";
    }
    auto r6 = res("L3_2", 3, 3, opts);
    CHECK(r6.betti() == r1.betti());

    fs::remove_all(dir);
}

TEST_CASE("work budget yields an exact partial table") {
    auto full = res("L3_2", 3, 5);
    ResolutionOptions opts;
    opts.work_budget = 200;  // enough for the first couple of steps only
    auto part = res("L3_2", 3, 5, opts);
    CHECK_FALSE(part.complete);
    CHECK(part.degree_reached < 5);
    CHECK(part.degree_reached >= 1);
    for (std::size_t m = 0; m <= part.degree_reached; ++m) {
        CHECK(part.gens[m].size() == full.gens[m].size());
        CHECK(part.generator_weights(m) == full.generator_weights(m));
    }
}

TEST_CASE("early stop halts after the first betti mismatch") {
    ResolutionOptions opts;
    opts.early_stop_betti = {1, 2, 99, 7, 12, 15};  // wrong value in degree 2
    auto r = res("L3_2", 3, 5, opts);
    CHECK_FALSE(r.complete);
    CHECK(r.degree_reached == 2);
    CHECK(r.betti() == std::vector<std::size_t>{1, 2, 5});
}

TEST_CASE("dimension budget gates large envelopes") {
    UAlgebra u(abelian_algebra(6, 5));  // dim 5^6 = 15625
    ResolutionOptions opts;
    opts.max_degree = 1;
    CHECK_THROWS_AS((void)minimal_resolution(u, opts), budget_error);
}

TEST_CASE("products beyond the computed range are rejected") {
    auto r = res("L3_2", 3, 2);
    auto eta = the_class(r, 1, W({1, 0}));
    auto x = symmetric_generator(r, W({1, 0}));
    CHECK_THROWS_AS((void)yoneda_product(r, x, eta), input_error);
}
