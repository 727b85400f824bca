#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilcoh/lie_algebra.hpp"

using namespace nilcoh;

namespace {

bool same_content(const LieAlgebra& a, const LieAlgebra& b) {
    if (a.dim != b.dim || a.torus_rank != b.torus_rank) return false;
    if (a.basis_weights != b.basis_weights) return false;
    if (a.brackets.size() != b.brackets.size()) return false;
    for (std::size_t t = 0; t < a.brackets.size(); ++t) {
        if (a.brackets[t].i != b.brackets[t].i) return false;
        if (a.brackets[t].j != b.brackets[t].j) return false;
        if (a.brackets[t].coeffs != b.brackets[t].coeffs) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("catalogue L5_9 presentation") {
    auto a = catalogue("L5_9", 5);
    CHECK(a.dim == 5);
    CHECK(a.torus_rank == 3);
    REQUIRE(a.brackets.size() == 2);
    CHECK(a.brackets[0].i == 0);
    CHECK(a.brackets[0].j == 1);
    CHECK(a.brackets[0].coeffs == std::map<std::size_t, Fp>{{3, 1}});
    CHECK(a.brackets[1].i == 1);
    CHECK(a.brackets[1].j == 2);
    CHECK(a.brackets[1].coeffs == std::map<std::size_t, Fp>{{4, 1}});
    CHECK(a.bracket_of(0, 2) == std::vector<Fp>(5, 0));  // [u1,u3] = 0
    CHECK(a.basis_weights[0] == Weight{-1, 0, 0});
    CHECK(a.basis_weights[3] == Weight{-1, -1, 0});
    CHECK(a.basis_weights[4] == Weight{0, -1, -1});
    CHECK(same_content(a, catalogue("L5_8", 3)));
    CHECK(commutator_dim(a) == 2);
    CHECK(nilpotency_class(a) == 2);
}

TEST_CASE("bracket_of antisymmetry flip") {
    auto a = catalogue("L5_9", 5);
    auto fwd = a.bracket_of(0, 1);
    auto rev = a.bracket_of(1, 0);
    CHECK(fwd[3] == 1);
    CHECK(rev[3] == 4);  // -1 mod 5
}

TEST_CASE("central quotient of L5_9 splits off the Heisenberg algebra") {
    auto a = catalogue("L5_9", 5);
    auto cen = center_basis(a);
    CHECK(cen == std::vector<std::size_t>{3, 4});
    auto q = quotient_by_central(a, 4);
    CHECK(q.dim == 4);
    REQUIRE(q.brackets.size() == 1);
    CHECK(q.brackets[0].i == 0);
    CHECK(q.brackets[0].j == 1);
    CHECK(q.brackets[0].coeffs == std::map<std::size_t, Fp>{{3, 1}});
    CHECK(commutator_dim(q) == 1);
    // u3 is an abelian direct summand of the quotient
    for (std::size_t i = 0; i < q.dim; ++i)
        CHECK(q.bracket_of(2, i) == std::vector<Fp>(4, 0));
    CHECK(quotient_by_central(catalogue("L5_5", 5), 3).name == "L5_5_mod_u4");
    CHECK_THROWS_AS(quotient_by_central(a, 1), input_error);  // u2 not central
}

TEST_CASE("upper_triangular_mod_center(4) reproduces the L5_9 presentation") {
    auto a = catalogue("upper_triangular_mod_center(4)", 3);
    auto b = catalogue("L5_9", 3);
    CHECK(same_content(a, b));
}

TEST_CASE("borel_nilradical(A3) matches L6_19") {
    auto a = catalogue("borel_nilradical(A3)", 5);
    auto b = catalogue("L6_19", 5);
    CHECK(same_content(a, b));
    CHECK(a.borel.has_value());
    CHECK(a.borel->root_type == "A3");
    CHECK(a.borel->coxeter == 4);
    CHECK(a.borel->module_split_at(5));
    CHECK_FALSE(a.borel->ring_split_at(5));  // needs p >= 6
    CHECK(a.borel->ring_split_at(7));
}

TEST_CASE("admissibility bounds reject small primes with the exact threshold") {
    CHECK_THROWS_WITH_AS(catalogue("L4_3", 3), doctest::Contains("requires p >= 5"),
                         input_error);
    CHECK_THROWS_WITH_AS(catalogue("G2_ext7", 5), doctest::Contains("requires p >= 7"),
                         input_error);
    CHECK_THROWS_WITH_AS(catalogue("upper_triangular_mod_center(5)", 3),
                         doctest::Contains("requires p >= 5"), input_error);
    CHECK_THROWS_WITH_AS(catalogue("borel_nilradical(A4)", 3),
                         doctest::Contains("requires p >= 5"), input_error);
    CHECK_THROWS_AS(catalogue("L3_2", 4), input_error);   // not prime
    CHECK_THROWS_AS(catalogue("L3_2", 2), input_error);   // even
    CHECK_THROWS_AS(catalogue("no_such_algebra", 5), input_error);
}

TEST_CASE("validate reports a p-letter bracket witness when the class is too big") {
    LieAlgebra a;
    a.name = "filiform4_at_3";
    a.field = PrimeField(3);
    a.dim = 4;
    a.basis_names = {"u1", "u2", "u3", "u4"};
    a.torus_rank = 2;
    a.basis_weights = {{-1, 0}, {0, -1}, {-1, -1}, {-2, -1}};
    a.brackets = {{0, 1, {{2, 1}}}, {0, 2, {{3, 1}}}};
    auto rep = validate(a);
    REQUIRE_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].identity == "p-power-triviality");
    CHECK(rep.violations[0].indices.size() == 3);  // a 3-letter word at p = 3
    CHECK(rep.violations[0].detail.find("p >= 5") != std::string::npos);
}

TEST_CASE("validate catches broken Jacobi, weights, ordering, cone") {
    auto good = catalogue("L6_19", 5);

    auto bad = good;
    bad.brackets[3].coeffs[5] = 1;  // flip the sign of [u3,u4] = -u6
    auto rep = validate(bad);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.violations[0].identity == "jacobi");

    bad = good;
    bad.basis_weights[5] = {-2, -1, -1};
    rep = validate(bad);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.violations[0].identity == "weight");

    bad = good;
    std::swap(bad.brackets[0].i, bad.brackets[0].j);
    rep = validate(bad);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.violations[0].identity == "antisymmetry");

    bad = good;
    bad.basis_weights[0] = {1, 0, 0};
    rep = validate(bad);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.violations[0].identity == "weight-cone");

    bad = good;
    bad.brackets[0].coeffs[3] = 0;
    rep = validate(bad);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.violations[0].identity == "structure-constants");
}

TEST_CASE("every catalogue entry validates at its smallest admissible prime") {
    struct Row {
        const char* name;
        std::uint32_t p;
        std::size_t dim, cls;
    };
    const Row rows[] = {
        {"L3_2", 3, 3, 2},
        {"L4_3", 5, 4, 3},
        {"L5_4", 3, 5, 2},
        {"L5_5", 5, 5, 3},
        {"L5_6", 5, 5, 4},
        {"L5_7", 5, 5, 4},
        {"L5_8", 3, 5, 2},
        {"L5_9", 3, 5, 2},
        {"L6_19", 5, 6, 3},
        {"B2_ext5", 5, 5, 4},
        {"G2_ext7", 7, 7, 5},
        {"borel_nilradical(A2)", 3, 3, 2},
        {"borel_nilradical(B2)", 5, 4, 3},
        {"borel_nilradical(A3)", 5, 6, 3},
        {"borel_nilradical(A4)", 5, 10, 4},
        {"borel_nilradical(G2)", 7, 6, 5},
        {"metabelian(1)", 3, 3, 2},
        {"metabelian(3)", 3, 7, 2},
        {"heisenberg(1)", 3, 3, 2},
        {"heisenberg(3)", 3, 7, 2},
        {"upper_triangular_mod_center(3)", 3, 2, 1},
        {"upper_triangular_mod_center(4)", 3, 5, 2},
        {"upper_triangular_mod_center(5)", 5, 9, 3},
    };
    for (const auto& r : rows) {
        CAPTURE(r.name);
        auto a = catalogue(r.name, r.p);
        CHECK(a.dim == r.dim);
        CHECK(nilpotency_class(a) == r.cls);
        CHECK(validate(a).ok);
    }
    CHECK_FALSE(catalogue_list().empty());
}

TEST_CASE("abelian algebras") {
    auto a = abelian_algebra(3, 5);
    CHECK(a.is_abelian());
    CHECK(validate(a).ok);
    CHECK(commutator_dim(a) == 0);
    CHECK(nilpotency_class(a) == 1);
    CHECK(center_basis(a).size() == 3);
}

TEST_CASE("root system data") {
    auto a2 = RootSystem::make("A2");
    CHECK(a2.coxeter == 3);
    CHECK(a2.positive_roots.size() == 3);
    CHECK(a2.two_rho() == Weight{2, 2});

    auto b2 = RootSystem::make("B2");
    CHECK(b2.coxeter == 4);
    CHECK(b2.positive_roots.size() == 4);
    CHECK(b2.two_rho() == Weight{4, 3});
    // alpha = first simple root is short: s_alpha(beta) = beta + 2 alpha
    CHECK(b2.cartan[0][1] == -2);
    CHECK(b2.cartan[1][0] == -1);

    auto g2 = RootSystem::make("G2");
    CHECK(g2.coxeter == 6);
    CHECK(g2.positive_roots.size() == 6);
    CHECK(g2.two_rho() == Weight{10, 6});

    auto a3 = RootSystem::make("A3");
    CHECK(a3.coxeter == 4);
    CHECK(a3.two_rho() == Weight{3, 4, 3});

    auto a4 = RootSystem::make("A4");
    CHECK(a4.positive_roots.size() == 10);
    CHECK(a4.two_rho() == Weight{4, 6, 6, 4});

    CHECK_THROWS_AS(RootSystem::make("F4"), input_error);
}

TEST_CASE("weight formatting") {
    CHECK(weight_to_string({0, 0}) == "0");
    CHECK(weight_to_string({12}) == "12");
    CHECK(weight_to_string({1, 0}) == "a");
    CHECK(weight_to_string({4, 3}) == "4a+3b");
    CHECK(weight_to_string({2, 3, 2}) == "2a1+3a2+2a3");
    CHECK(weight_to_string({1, 0, 1}) == "a1+a3");
    CHECK(weight_to_string({-1, 1}) == "-a+b");
}

TEST_CASE("JSON round trip is byte-identical with ordered 1-based keys") {
    auto a = catalogue("L6_19", 5);
    auto s = algebra_to_canonical_string(a);
    auto b = algebra_from_json(nlohmann::ordered_json::parse(s));
    CHECK(algebra_to_canonical_string(b) == s);
    CHECK(algebra_content_hash(a) == algebra_content_hash(b));

    const char* keys[] = {"\"name\"", "\"p\"",       "\"dim\"",
                          "\"basis\"", "\"torus_rank\"", "\"weights\"", "\"brackets\""};
    std::size_t pos = 0;
    for (const char* k : keys) {
        auto at = s.find(k);
        REQUIRE(at != std::string::npos);
        CHECK(at >= pos);
        pos = at;
    }
    CHECK(s.find("\"i\": 1") != std::string::npos);  // 1-based pair indices
    CHECK(s.find("\"i\": 0") == std::string::npos);

    CHECK_THROWS_AS(algebra_from_file("/nonexistent/path.json"), input_error);

    auto j = algebra_to_json(a);
    j["brackets"][3]["coeffs"] = {{"6", 1}};  // breaks Jacobi
    CHECK_THROWS_AS(algebra_from_json(j), input_error);
}

TEST_CASE("content hash distinguishes presentations") {
    CHECK(algebra_content_hash(catalogue("L5_9", 5)) ==
          algebra_content_hash(catalogue("L5_9", 5)));
    CHECK(algebra_content_hash(catalogue("L5_9", 5)) !=
          algebra_content_hash(catalogue("L5_9", 3)));
    CHECK(algebra_content_hash(catalogue("L5_9", 5)) !=
          algebra_content_hash(catalogue("L5_7", 5)));
}
