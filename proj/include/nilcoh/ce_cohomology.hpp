#pragma once

#include "nilcoh/fp_matrix.hpp"
#include "nilcoh/lie_algebra.hpp"

namespace nilcoh {

/* Exterior-algebra cochain complex of a weight-graded nilpotent Lie
   algebra.  The degree-n basis consists of the size-n subsets of the
   algebra basis, encoded as bitmasks listed in increasing mask order.
   The differential extends d(x_k) = -sum_{i<j} c_{ij}^k x_i x_j as a
   graded derivation and preserves the torus weight. */
struct CEComplex {
    LieAlgebra algebra;
    std::vector<std::vector<std::uint32_t>> masks;  // per degree 0..dim
    std::vector<FpMatrix> d;  // d[n]: degree n -> n+1; d[dim] has zero rows

    std::size_t degree_dim(std::size_t n) const {
        return n < masks.size() ? masks[n].size() : 0;
    }
    std::size_t index_of(std::size_t n, std::uint32_t mask) const;
    /* Weight of a basis monomial, reported on the positive cone: the
       negative of the sum of the member weights. */
    Weight mask_weight(std::uint32_t mask) const;
    std::string mask_string(std::uint32_t mask) const;  // "u1^u3", "1" in degree 0
};

CEComplex ce_complex(const LieAlgebra& a);

/* Wedge of two basis monomials: (sign, union) with sign the parity of
   the merge, or sign 0 when the masks intersect. */
std::pair<Fp, std::uint32_t> wedge_masks(std::uint32_t a, std::uint32_t b,
                                         const PrimeField& f);

struct CohomologyClass {
    std::size_t degree = 0;
    Weight weight;        // positive-cone label
    std::vector<Fp> rep;  // canonical cocycle coordinates in the degree basis
    std::string rep_string;
};

struct CohomologyResult {
    CEComplex cx;
    std::vector<std::size_t> betti;                     // 0..dim
    std::vector<std::vector<CohomologyClass>> classes;  // per degree, weight-sorted

    /* Per degree: class weights with multiplicity, sorted. */
    std::vector<std::vector<Weight>> weight_table() const;
};

CohomologyResult cohomology(const LieAlgebra& a);

/* Betti numbers as polynomial coefficients, constant term first. */
std::vector<std::size_t> poincare_polynomial(const CohomologyResult& r);
std::string poincare_to_string(const std::vector<std::size_t>& coeffs);

/* Cochain-level wedge of coordinate vectors in degrees m and n. */
std::vector<Fp> cup_product(const CEComplex& cx, std::size_t m, const std::vector<Fp>& a,
                            std::size_t n, const std::vector<Fp>& b);

/* Canonical form of a degree-n cochain modulo the image of d[n-1]. */
std::vector<Fp> reduce_mod_boundaries(const CEComplex& cx, std::size_t n,
                                      const std::vector<Fp>& v);

}  // namespace nilcoh
