#pragma once

#include <unordered_map>

#include "nilcoh/fp_matrix.hpp"
#include "nilcoh/lie_algebra.hpp"

namespace nilcoh {

/* Ordered PBW monomial u1^{e_1} ... u_d^{e_d} with all exponents < p. */
struct PBWMonomial {
    std::vector<std::uint32_t> exps;

    std::size_t degree() const {
        std::size_t s = 0;
        for (auto e : exps) s += e;
        return s;
    }
};

/* Element of the restricted enveloping algebra: monomial index -> coefficient. */
struct UElement {
    std::map<std::uint32_t, Fp> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(std::uint32_t idx, Fp c, const PrimeField& f);
};

/* Restricted enveloping algebra u(n) of a p-nilpotent algebra with the
   identically zero p-power operation: every generator satisfies
   u_i^p = 0, so the PBW monomials with exponents < p form a basis and
   dim u(n) = p^dim(n).  Monomials are indexed in mixed radix p,
   little-endian in the basis letters.  Straightened products of a
   generator with a monomial are memoized. */
class UAlgebra {
public:
    explicit UAlgebra(LieAlgebra a);

    const LieAlgebra& algebra() const { return algebra_; }
    const PrimeField& field() const { return algebra_.field; }
    std::uint64_t dimension() const { return dim_; }

    std::uint32_t monomial_index(const PBWMonomial& m) const;
    PBWMonomial monomial_of(std::uint32_t idx) const;
    std::size_t monomial_degree(std::uint32_t idx) const;
    /* Positive-cone weight: the negative of the summed letter weights. */
    Weight monomial_weight(std::uint32_t idx) const;
    std::string monomial_string(std::uint32_t idx) const;  // "u1^2*u3", "1"

    UElement one() const;
    UElement generator(std::size_t j) const;

    /* Straightened u_j * (monomial idx); memoized, returned by reference. */
    const UElement& generator_times(std::size_t j, std::uint32_t idx) const;

    UElement multiply(const UElement& u, const UElement& v) const;
    Fp augmentation(const UElement& u) const;  // coefficient of 1
    std::string element_string(const UElement& u) const;

    /* Left multiplication by u_j as a dim x dim matrix. */
    FpMatrix regular_representation(std::size_t j) const;

    /* Dimensions of the powers of the augmentation ideal I, starting at
       I^0 = u(n) and ending with the first zero power. */
    std::vector<std::size_t> radical_filtration_dims() const;

private:
    UElement monomial_times(std::uint32_t a_idx, const UElement& v) const;

    LieAlgebra algebra_;
    std::uint64_t dim_ = 0;
    std::vector<std::uint32_t> stride_;  // p^t per letter
    mutable std::unordered_map<std::uint64_t, UElement> memo_;
};

}  // namespace nilcoh
