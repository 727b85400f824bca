#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>

#include "nilcoh/spectral_analysis.hpp"

using namespace nilcoh;

namespace {

Weight W(std::initializer_list<int> v) { return Weight(v); }

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

bool mentions(const std::vector<std::string>& notes, const std::string& needle) {
    for (const auto& s : notes)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

/* Direct sum of two Heisenberg algebras.  Dodges every inference rule at
   p = 3: the commutator has dimension 2 and each central quotient keeps a
   Heisenberg component, whose recorded splitting needs p >= 4. */
LieAlgebra two_heisenbergs(std::uint32_t p) {
    LieAlgebra a;
    a.name = "hh";
    a.field = PrimeField(p);
    a.dim = 6;
    a.torus_rank = 4;
    a.basis_names = {"x1", "y1", "z1", "x2", "y2", "z2"};
    a.basis_weights = {{-1, 0, 0, 0}, {0, -1, 0, 0}, {-1, -1, 0, 0},
                       {0, 0, -1, 0}, {0, 0, 0, -1}, {0, 0, -1, -1}};
    a.brackets.push_back({0, 1, {{2, 1}}});
    a.brackets.push_back({3, 4, {{5, 1}}});
    validate_or_throw(a);
    return a;
}

}  // namespace

TEST_CASE("page grid is binomial column times cohomology row") {
    auto h = cohomology(catalogue("L3_2", 3));
    auto page = e2_page(h, 5);
    CHECK(page.algebra == "L3_2");
    CHECK(page.p == 3);
    CHECK(page.max_total == 5);
    CHECK(page.totals == std::vector<std::size_t>{1, 2, 5, 7, 12, 15});
    REQUIRE(h.betti == std::vector<std::size_t>{1, 2, 2, 1});
    for (std::size_t i = 0; i < page.cell_dims.size(); ++i)
        for (std::size_t j = 0; j <= 3; ++j) {
            if (2 * i + j > 5) continue;
            CHECK(page.cell_dims[i][j] == binom(i + 2, 2) * h.betti[j]);
        }

    auto h4 = cohomology(catalogue("L4_3", 5));
    auto page4 = e2_page(h4, 3);
    CHECK(h4.betti == std::vector<std::size_t>{1, 2, 2, 2, 1});
    CHECK(page4.totals == std::vector<std::size_t>{1, 2, 6, 10});
}

TEST_CASE("page weights are the twisted monomial weights plus class weights") {
    auto h = cohomology(catalogue("L3_2", 3));
    auto page = e2_page(h, 5);
    CHECK(page.weights[2] ==
          std::vector<Weight>{W({0, 3}), W({1, 2}), W({2, 1}), W({3, 0}), W({3, 3})});

    /* Explicit-weight overload agrees with the algebra-derived one. */
    auto again = e2_page(h, 3, h.cx.algebra.basis_weights, 5);
    CHECK(again.totals == page.totals);
    CHECK(again.weights == page.weights);
}

TEST_CASE("page weights match resolution generator weights in every degree") {
    auto a = catalogue("L3_2", 3);
    auto page = e2_page(cohomology(a), 5);
    ResolutionOptions opts;
    opts.max_degree = 5;
    auto r = minimal_resolution(UAlgebra(a), opts);
    for (std::size_t m = 0; m <= 5; ++m) {
        auto got = r.generator_weights(m);
        std::sort(got.begin(), got.end());
        CHECK(got == page.weights[m]);
    }
}

TEST_CASE("collapse check verifies the Heisenberg page") {
    auto a = catalogue("L3_2", 3);
    auto page = e2_page(cohomology(a), 5);
    ResolutionOptions opts;
    opts.max_degree = 5;
    auto r = minimal_resolution(UAlgebra(a), opts);
    auto rep = collapse_check(page, r, 5);
    CHECK(rep.all_equal);
    CHECK(!rep.first_deficit.has_value());
    CHECK(rep.betti == rep.e2_totals);
    CHECK(mentions(rep.notes, "collapse verified to degree 5"));
}

TEST_CASE("collapse check rejects mismatched or short inputs") {
    auto a = catalogue("L3_2", 3);
    auto page = e2_page(cohomology(a), 5);
    ResolutionOptions opts;
    opts.max_degree = 3;
    auto r = minimal_resolution(UAlgebra(a), opts);
    CHECK_THROWS_AS((void)collapse_check(page, r, 5), input_error);  // resolution too short
    CHECK_THROWS_AS((void)collapse_check(page, r, 7), input_error);  // page too short

    auto other = minimal_resolution(UAlgebra(catalogue("L4_3", 5)), opts);
    CHECK_THROWS_AS((void)collapse_check(page, other, 3), input_error);  // different algebra
}

TEST_CASE("Betti number above the page total is a hard invariant") {
    auto a = catalogue("L3_2", 3);
    auto page = e2_page(cohomology(a), 5);
    ResolutionOptions opts;
    opts.max_degree = 5;
    auto r = minimal_resolution(UAlgebra(a), opts);
    page.totals[2] = 3;  // below the true Betti number 5
    CHECK_THROWS_AS((void)collapse_check(page, r, 5), internal_error);
}

TEST_CASE("functional equation accepts palindromes of the stated degree") {
    CHECK(functional_equation_check({1, 2, 2, 1}, 3));
    CHECK(functional_equation_check({1, 2, 2, 2, 2, 1}, 5));
    CHECK(functional_equation_check({1, 2, 1}, 2));
    CHECK(functional_equation_check({1}, 0));
    CHECK(!functional_equation_check({1, 0, 1}, 1));
    CHECK(!functional_equation_check({1, 2, 2, 1}, 4));
}

TEST_CASE("rational numerator recovery over the even denominator") {
    auto rp = rational_poincare({1, 2, 5, 7, 12, 15}, 3);
    CHECK(rp.terminates);
    CHECK(rp.numerator == std::vector<long long>{1, 2, 2, 1});
    CHECK(rp.denominator_exponent == 3);
    CHECK(rp.computed_to == 5);
    CHECK(functional_equation_check(rp.numerator, 3));

    auto wrong = rational_poincare({1, 2, 5, 7, 12, 15}, 2);
    CHECK(!wrong.terminates);
    CHECK(wrong.numerator == std::vector<long long>{1, 2, 3, 3, 3, 3});

    auto ab = rational_poincare({1, 2, 3}, 2);
    CHECK(ab.terminates);
    CHECK(ab.numerator == std::vector<long long>{1, 2, 1});
}

TEST_CASE("abelian and one-dimensional commutator algebras certify by inference") {
    auto v = cm_verdict(abelian_algebra(3, 5));
    CHECK(v.status == "CM_certified_by_inference");
    CHECK(mentions(v.evidence, "abelian"));
    CHECK(v.betti.empty());

    for (auto name : {"heisenberg(2)", "L5_4"}) {
        auto w = cm_verdict(catalogue(name, 3));
        CHECK(w.status == "CM_certified_by_inference");
        CHECK(mentions(w.evidence, "commutator subalgebra has dimension 1"));
    }
}

TEST_CASE("ring-split central quotients certify the catalogue at recorded primes") {
    struct Row {
        const char* name;
        std::uint32_t p;
    };
    for (auto [name, p] : {Row{"L5_5", 5}, Row{"L5_6", 7}, Row{"L5_7", 7}, Row{"L5_8", 5},
                           Row{"L5_9", 5}}) {
        auto v = cm_verdict(catalogue(name, p));
        CHECK(v.status == "CM_certified_by_inference");
        CHECK(mentions(v.evidence, "ring-split quotient"));
        CHECK(v.betti.empty());
    }
}

TEST_CASE("degree-three Betti deficit rules out L5_9 at p = 3") {
    auto v = cm_verdict(catalogue("L5_9", 3), 10);
    CHECK(v.status == "NOT_CM_certified");
    CHECK(v.betti == std::vector<std::size_t>{1, 3, 11, 20});
    CHECK(v.e2_totals == std::vector<std::size_t>{1, 3, 11, 21});
    CHECK(mentions(v.evidence, "deficit at degree 3"));
}

TEST_CASE("verdict depends monotonically on the checked range") {
    auto low = cm_verdict(catalogue("L5_9", 3), 2);
    CHECK(low.status == "consistent_with_CM_to_degree_N");
    CHECK(low.betti == std::vector<std::size_t>{1, 3, 11});
    CHECK(low.betti == low.e2_totals);

    auto high = cm_verdict(catalogue("L5_9", 3), 3);
    CHECK(high.status == "NOT_CM_certified");
}

TEST_CASE("sum of two Heisenberg factors collapses by direct computation") {
    auto v = cm_verdict(two_heisenbergs(3), 4);
    CHECK(v.status == "consistent_with_CM_to_degree_N");
    /* Betti numbers of the product are the convolution of the factor
       Betti numbers (1, 2, 5, 7, 12). */
    std::vector<std::size_t> factor{1, 2, 5, 7, 12};
    std::vector<std::size_t> conv(5, 0);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; i + j < 5; ++j) conv[i + j] += factor[i] * factor[j];
    CHECK(v.betti == conv);
    CHECK(v.e2_totals == conv);
    CHECK(v.f_numerator == std::vector<long long>{1, 4, 8, 10, 8});
    CHECK(mentions(v.evidence, "collapse verified to degree 4"));
}

TEST_CASE("verdict serializes with a stable key order") {
    auto j = verdict_to_json(cm_verdict(catalogue("L5_9", 3), 3));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"algebra", "p", "N", "status", "evidence", "betti",
                                           "e2_totals", "f_numerator"});
    CHECK(j["status"] == "NOT_CM_certified");
    CHECK(j["N"] == 3);
    CHECK(j["betti"].size() == 4);
}
