#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilcoh/ce_cohomology.hpp"
#include "nilcoh/resolution.hpp"

namespace nilcoh {

/* Degree-two page of the spectral sequence converging to H*(u(n),k):
   twisted polynomial columns tensored with ordinary cohomology rows.
   Cell (2i, j) has dimension (# degree-i monomials in dim n variables)
   times dim H^j(n,k); its weights are p*sigma + gamma over monomial
   weights sigma and class weights gamma. */
struct E2Page {
    std::string algebra;
    std::uint64_t algebra_hash = 0;
    Fp p = 3;
    std::size_t max_total = 0;
    /* cell_dims[i][j] for 2i + j <= max_total, j <= dim n. */
    std::vector<std::vector<std::size_t>> cell_dims;
    /* totals[m] = sum of cell dims with 2i + j = m, m <= max_total. */
    std::vector<std::size_t> totals;
    /* Sorted weight multiset per total degree. */
    std::vector<std::vector<Weight>> weights;
};

/* `basis_weights` uses the stored negative-root convention; the page
   negates them for the dual twisted generators. */
E2Page e2_page(const CohomologyResult& h, Fp p, const std::vector<Weight>& basis_weights,
               std::size_t max_total);
E2Page e2_page(const CohomologyResult& h, std::size_t max_total);

struct CollapseReport {
    std::string algebra;
    Fp p = 3;
    std::size_t degree_checked = 0;
    std::vector<std::size_t> betti;      // through degree_checked
    std::vector<std::size_t> e2_totals;  // through degree_checked
    bool all_equal = false;
    std::optional<std::size_t> first_deficit;
    std::vector<std::string> notes;
};

/* Compares Betti numbers of the minimal resolution against page totals
   through degree n.  Requires both sides computed that far and for the
   same algebra (content hash); a Betti number above the page total is a
   hard internal error, since the page can only shrink. */
CollapseReport collapse_check(const E2Page& e2, const MinimalResolution& r, std::size_t n);

/* True iff t^d * f(1/t) = f(t) as polynomials, i.e. f is palindromic of
   degree exactly d (or lower-degree symmetric with padded zeros). */
bool functional_equation_check(const std::vector<long long>& f, std::size_t d);

/* Numerator of P(t) = f(t)/(1-t^2)^d recovered from a Betti prefix.
   `terminates` records that all computed coefficients above degree d
   vanish; when it holds, the numerator is truncated to degree d and the
   series reconstruction is asserted against the input. */
struct RationalPoincare {
    std::vector<long long> numerator;
    std::size_t denominator_exponent = 0;
    bool terminates = false;
    std::size_t computed_to = 0;
};

RationalPoincare rational_poincare(const std::vector<std::size_t>& betti, std::size_t d);

/* Cohen-Macaulay verdict.  status is one of
     "CM_certified_by_inference"       (structure rules, no resolution run)
     "consistent_with_CM_to_degree_N"  (collapse verified through degree N)
     "NOT_CM_certified"                (Betti deficit against the page)
   Certification rules, in order: abelian; one-dimensional commutator
   subalgebra; a central line whose quotient splits into components with
   recorded ring-splitting thresholds; otherwise the resolution-vs-page
   comparison decides. */
struct CMVerdict {
    std::string algebra;
    Fp p = 3;
    std::size_t n = 0;
    std::string status;
    std::vector<std::string> evidence;
    std::vector<std::size_t> betti;         // empty for inference verdicts
    std::vector<std::size_t> e2_totals;     // empty for inference verdicts
    std::vector<long long> f_numerator;     // empty unless recovered
};

CMVerdict cm_verdict(const LieAlgebra& a, std::size_t n = 0,
                     const ResolutionOptions& base_opts = {});

nlohmann::ordered_json verdict_to_json(const CMVerdict& v);

}  // namespace nilcoh
