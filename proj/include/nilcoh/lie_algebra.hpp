#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilcoh/fp.hpp"

namespace nilcoh {

/* Torus weight in simple-root coordinates. */
using Weight = std::vector<int>;

Weight weight_add(const Weight& a, const Weight& b);
Weight weight_sub(const Weight& a, const Weight& b);
Weight weight_scale(int c, const Weight& a);
int weight_height(const Weight& a);  // sum of coordinates
bool weight_is_zero(const Weight& a);

/* Pretty-printer: rank 1 -> plain integer, rank 2 -> a*alpha+b*beta,
   higher rank -> sum of alpha_i. */
std::string weight_to_string(const Weight& w);

/* Sparse structure constants for one basis pair, i < j (0-based). */
struct Bracket {
    std::size_t i, j;
    std::map<std::size_t, Fp> coeffs;  // k -> c_{ij}^k, nonzero residues
};

/* Literature-fact metadata attached to Borel-nilradical catalogue
   entries; consumed (never derived) by the Cohen-Macaulay verdict and
   obstruction reports. */
struct BorelInfo {
    std::string root_type;  // "A2", "B2", ...
    int coxeter = 0;        // Coxeter number h
    /* The splitting facts: module splitting holds for p > h, ring
       splitting for p >= 2(h-1). */
    bool module_split_at(std::uint32_t p) const { return p > static_cast<std::uint32_t>(coxeter); }
    bool ring_split_at(std::uint32_t p) const { return p >= static_cast<std::uint32_t>(2 * (coxeter - 1)); }
};

/* Finite-dimensional nilpotent Lie algebra over F_p, graded by a torus
   with all basis weights in the negative cone, carrying the identically
   zero p-power operation. */
struct LieAlgebra {
    std::string name;
    PrimeField field{3};  // placeholder prime, always overwritten on construction
    std::size_t dim = 0;
    std::vector<std::string> basis_names;
    std::size_t torus_rank = 0;
    std::vector<Weight> basis_weights;  // negative-root convention
    std::vector<Bracket> brackets;      // i < j only, sorted by (i, j)
    std::optional<BorelInfo> borel;

    /* [e_i, e_j] as a dense coefficient vector, any i, j. */
    std::vector<Fp> bracket_of(std::size_t i, std::size_t j) const;
    /* bracket of arbitrary coefficient vectors. */
    std::vector<Fp> bracket_vec(const std::vector<Fp>& x, const std::vector<Fp>& y) const;

    bool is_abelian() const { return brackets.empty(); }
};

struct Violation {
    std::string identity;             // "antisymmetry", "jacobi", "weight", ...
    std::vector<std::size_t> indices; // offending basis indices, 0-based
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::string summary() const;
};

/* Checks bracket well-formedness, the Jacobi identity, weight
   compatibility of the structure constants, the negative-cone weight
   convention, nilpotency, and admissibility of the identically zero
   p-power operation (nilpotency class < p; the report carries an
   explicit nonvanishing p-letter bracket as witness when this fails). */
ValidationReport validate(const LieAlgebra& a);
void validate_or_throw(const LieAlgebra& a);

/* Nilpotency class: largest c with nonzero c-th lower-central term. */
std::size_t nilpotency_class(const LieAlgebra& a);

std::size_t commutator_dim(const LieAlgebra& a);

/* Indices (0-based) of basis vectors spanning the center. */
std::vector<std::size_t> center_basis(const LieAlgebra& a);

/* Quotient by the line spanned by central basis vector z. */
LieAlgebra quotient_by_central(const LieAlgebra& a, std::size_t z);

/* ---- catalogue ---- */

struct CatalogueEntry {
    std::string name;        // display name, possibly parametrized
    std::string description;
    std::uint32_t min_p;     // smallest admissible odd prime
    std::string dim_note;
};

std::vector<CatalogueEntry> catalogue_list();

/* Fixed catalogue of graded nilpotent Lie algebras; throws input_error
   for unknown names or inadmissible p (message cites the p-bound). */
LieAlgebra catalogue(const std::string& name, std::uint32_t p);

LieAlgebra abelian_algebra(std::size_t dim, std::uint32_t p);

/* ---- root systems ---- */

struct RootSystem {
    std::string type;  // "A1".."A4", "B2", "G2"
    std::size_t rank = 0;
    int coxeter = 0;
    /* cartan[i][j]: s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i */
    std::vector<std::vector<int>> cartan;
    std::vector<Weight> positive_roots;  // simple-root coordinates
    Weight two_rho() const;

    static RootSystem make(const std::string& type);
};

/* ---- serialization ---- */

nlohmann::ordered_json algebra_to_json(const LieAlgebra& a);
LieAlgebra algebra_from_json(const nlohmann::ordered_json& j);
std::string algebra_to_canonical_string(const LieAlgebra& a);
LieAlgebra algebra_from_file(const std::string& path);

/* Content hash used for cache keys; stable across runs. */
std::uint64_t algebra_content_hash(const LieAlgebra& a);

}  // namespace nilcoh
