#include "nilcoh/ce_cohomology.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace nilcoh {

namespace {

std::vector<std::uint32_t> mask_bits(std::uint32_t mask) {
    std::vector<std::uint32_t> out;
    while (mask) {
        out.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

/* Incremental full-reduction echelon over F_p used to split kernels by
   images; rows are kept with unit pivots and reduced against each other. */
struct Echelon {
    const PrimeField& f;
    std::vector<std::pair<std::size_t, std::vector<Fp>>> rows;  // (pivot, row)

    explicit Echelon(const PrimeField& field) : f(field) {}

    std::vector<Fp> reduce(std::vector<Fp> v) const {
        for (const auto& [piv, row] : rows) {
            if (!v[piv]) continue;
            Fp c = v[piv];
            for (std::size_t t = 0; t < v.size(); ++t) v[t] = f.sub(v[t], f.mul(c, row[t]));
        }
        return v;
    }

    bool insert(std::vector<Fp> v) {
        v = reduce(std::move(v));
        for (std::size_t t = 0; t < v.size(); ++t) {
            if (!v[t]) continue;
            Fp s = f.inv(v[t]);
            for (auto& x : v) x = f.mul(x, s);
            for (auto& [piv, row] : rows) {
                if (!row[t]) continue;
                Fp c = row[t];
                for (std::size_t u = 0; u < row.size(); ++u)
                    row[u] = f.sub(row[u], f.mul(c, v[u]));
            }
            rows.push_back({t, std::move(v)});
            return true;
        }
        return false;
    }
};

}  // namespace

std::size_t CEComplex::index_of(std::size_t n, std::uint32_t mask) const {
    const auto& level = masks.at(n);
    auto it = std::lower_bound(level.begin(), level.end(), mask);
    NILCOH_ASSERT(it != level.end() && *it == mask, "monomial missing from its degree");
    return static_cast<std::size_t>(it - level.begin());
}

Weight CEComplex::mask_weight(std::uint32_t mask) const {
    Weight w(algebra.torus_rank, 0);
    for (auto b : mask_bits(mask)) w = weight_sub(w, algebra.basis_weights[b]);
    return w;
}

std::string CEComplex::mask_string(std::uint32_t mask) const {
    if (!mask) return "1";
    std::string out;
    for (auto b : mask_bits(mask)) {
        if (!out.empty()) out += "^";
        out += algebra.basis_names[b];
    }
    return out;
}

std::pair<Fp, std::uint32_t> wedge_masks(std::uint32_t a, std::uint32_t b,
                                         const PrimeField& f) {
    if (a & b) return {0, 0};
    int inversions = 0;
    for (auto bit : mask_bits(b)) {
        std::uint32_t above = a >> (bit + 1);
        inversions += std::popcount(above);
    }
    Fp sign = (inversions % 2) ? f.neg(1) : 1;
    return {sign, a | b};
}

CEComplex ce_complex(const LieAlgebra& a) {
    CEComplex cx;
    cx.algebra = a;
    cx.masks.assign(a.dim + 1, {});
    for (std::uint32_t m = 0; m < (1u << a.dim); ++m)
        cx.masks[std::popcount(m)].push_back(m);

    for (std::size_t n = 0; n <= a.dim; ++n) {
        std::size_t rows = n + 1 <= a.dim ? cx.masks[n + 1].size() : 0;
        FpMatrix dn(rows, cx.masks[n].size(), a.field);
        for (std::size_t c = 0; c < cx.masks[n].size(); ++c) {
            std::uint32_t S = cx.masks[n][c];
            auto bits = mask_bits(S);
            for (std::size_t t = 1; t <= bits.size(); ++t) {
                std::uint32_t s = bits[t - 1];
                std::uint32_t rest = S & ~(1u << s);
                Fp outer = (t % 2) ? a.field.neg(1) : 1;  // (-1)^t from the derivation rule
                for (const auto& br : a.brackets) {
                    auto it = br.coeffs.find(s);
                    if (it == br.coeffs.end()) continue;
                    auto [sgn, merged] =
                        wedge_masks((1u << br.i) | (1u << br.j), rest, a.field);
                    if (!sgn) continue;
                    std::size_t r = cx.index_of(n + 1, merged);
                    Fp add = a.field.mul(outer, a.field.mul(it->second, sgn));
                    dn.set(r, c, a.field.add(dn.at(r, c), add));
                }
            }
        }
        cx.d.push_back(std::move(dn));
    }

    /* d^2 = 0 is forced by the Jacobi identity; verify while building. */
    for (std::size_t n = 0; n + 1 <= a.dim; ++n) {
        for (std::size_t c = 0; c < cx.masks[n].size(); ++c) {
            std::vector<Fp> mid(cx.masks[n + 1].size(), 0);
            for (std::size_t r = 0; r < mid.size(); ++r) mid[r] = cx.d[n].at(r, c);
            for (std::size_t r2 = 0; r2 < cx.degree_dim(n + 2); ++r2) {
                Fp acc = 0;
                for (std::size_t r = 0; r < mid.size(); ++r)
                    if (mid[r]) acc = a.field.add(acc, a.field.mul(cx.d[n + 1].at(r2, r), mid[r]));
                NILCOH_ASSERT(acc == 0, "differential does not square to zero");
            }
        }
    }
    return cx;
}

CohomologyResult cohomology(const LieAlgebra& a) {
    validate_or_throw(a);
    CohomologyResult res{ce_complex(a), {}, {}};
    const CEComplex& cx = res.cx;
    const PrimeField& f = a.field;
    res.betti.assign(a.dim + 1, 0);
    res.classes.assign(a.dim + 1, {});

    for (std::size_t n = 0; n <= a.dim; ++n) {
        /* group degree-n monomials by weight */
        std::map<Weight, std::vector<std::size_t>> cols;
        for (std::size_t c = 0; c < cx.masks[n].size(); ++c)
            cols[cx.mask_weight(cx.masks[n][c])].push_back(c);

        std::map<Weight, std::vector<std::size_t>> prev_cols;
        if (n > 0)
            for (std::size_t c = 0; c < cx.masks[n - 1].size(); ++c)
                prev_cols[cx.mask_weight(cx.masks[n - 1][c])].push_back(c);

        for (const auto& [w, cc] : cols) {
            /* rows of d[n] that can be hit from this weight block */
            std::vector<std::size_t> rr;
            for (std::size_t r = 0; r < cx.degree_dim(n + 1); ++r)
                if (cx.mask_weight(cx.masks[n + 1][r]) == w) rr.push_back(r);

            FpMatrix block(rr.size(), cc.size(), f);
            for (std::size_t j = 0; j < cc.size(); ++j)
                for (std::size_t i = 0; i < rr.size(); ++i) {
                    Fp v = cx.d[n].at(rr[i], cc[j]);
                    if (v) block.set(i, j, v);
                }
            auto kernel = kernel_basis(block);
            if (kernel.empty()) continue;

            Echelon image(f);
            if (n > 0) {
                auto it = prev_cols.find(w);
                if (it != prev_cols.end())
                    for (std::size_t c0 : it->second) {
                        std::vector<Fp> col(cc.size(), 0);
                        for (std::size_t j = 0; j < cc.size(); ++j)
                            col[j] = cx.d[n - 1].at(cc[j], c0);
                        image.insert(std::move(col));
                    }
            }
            Echelon chosen(f);
            for (auto& z : kernel) {
                auto v = chosen.reduce(image.reduce(z));
                if (!chosen.insert(v)) continue;
                v = chosen.rows.back().second;  // unit-pivot canonical form
                CohomologyClass cls;
                cls.degree = n;
                cls.weight = w;
                cls.rep.assign(cx.masks[n].size(), 0);
                for (std::size_t j = 0; j < cc.size(); ++j) cls.rep[cc[j]] = v[j];
                std::ostringstream os;
                bool first = true;
                for (std::size_t j = 0; j < cls.rep.size(); ++j) {
                    if (!cls.rep[j]) continue;
                    if (!first) os << " + ";
                    if (cls.rep[j] != 1) os << cls.rep[j] << "*";
                    os << cx.mask_string(cx.masks[n][j]);
                    first = false;
                }
                cls.rep_string = os.str();
                res.classes[n].push_back(std::move(cls));
            }
        }
        res.betti[n] = res.classes[n].size();
    }
    return res;
}

std::vector<std::vector<Weight>> CohomologyResult::weight_table() const {
    std::vector<std::vector<Weight>> out(classes.size());
    for (std::size_t n = 0; n < classes.size(); ++n)
        for (const auto& c : classes[n]) out[n].push_back(c.weight);
    return out;
}

std::vector<std::size_t> poincare_polynomial(const CohomologyResult& r) { return r.betti; }

std::string poincare_to_string(const std::vector<std::size_t>& coeffs) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (!coeffs[k]) continue;
        if (!first) os << " + ";
        if (k == 0 || coeffs[k] != 1) os << coeffs[k];
        if (k == 1) os << "t";
        if (k > 1) os << "t^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::vector<Fp> cup_product(const CEComplex& cx, std::size_t m, const std::vector<Fp>& a,
                            std::size_t n, const std::vector<Fp>& b) {
    NILCOH_ASSERT(a.size() == cx.degree_dim(m) && b.size() == cx.degree_dim(n),
                  "cup product operand size mismatch");
    const PrimeField& f = cx.algebra.field;
    std::vector<Fp> out(cx.degree_dim(m + n), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            auto [sgn, merged] = wedge_masks(cx.masks[m][i], cx.masks[n][j], f);
            if (!sgn) continue;
            std::size_t r = cx.index_of(m + n, merged);
            out[r] = f.add(out[r], f.mul(f.mul(a[i], b[j]), sgn));
        }
    }
    return out;
}

std::vector<Fp> reduce_mod_boundaries(const CEComplex& cx, std::size_t n,
                                      const std::vector<Fp>& v) {
    NILCOH_ASSERT(v.size() == cx.degree_dim(n), "cochain size mismatch");
    Echelon image(cx.algebra.field);
    if (n > 0 && n <= cx.algebra.dim) {
        for (std::size_t c = 0; c < cx.degree_dim(n - 1); ++c) {
            std::vector<Fp> col(v.size(), 0);
            for (std::size_t r = 0; r < v.size(); ++r) col[r] = cx.d[n - 1].at(r, c);
            image.insert(std::move(col));
        }
    }
    return image.reduce(v);
}

}  // namespace nilcoh
