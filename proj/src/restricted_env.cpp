#include "nilcoh/restricted_env.hpp"

#include <algorithm>
#include <sstream>

namespace nilcoh {

void UElement::add_term(std::uint32_t idx, Fp c, const PrimeField& f) {
    if (!c) return;
    auto it = terms.find(idx);
    if (it == terms.end()) {
        terms.emplace(idx, c);
        return;
    }
    it->second = f.add(it->second, c);
    if (!it->second) terms.erase(it);
}

UAlgebra::UAlgebra(LieAlgebra a) : algebra_(std::move(a)) {
    validate_or_throw(algebra_);
    dim_ = 1;
    for (std::size_t t = 0; t < algebra_.dim; ++t) {
        stride_.push_back(static_cast<std::uint32_t>(dim_));
        dim_ *= algebra_.field.p();
        NILCOH_ASSERT(dim_ < (1ull << 31), "monomial index space exceeds 2^31");
    }
}

std::uint32_t UAlgebra::monomial_index(const PBWMonomial& m) const {
    NILCOH_ASSERT(m.exps.size() == algebra_.dim, "exponent vector length mismatch");
    std::uint32_t idx = 0;
    for (std::size_t t = 0; t < m.exps.size(); ++t) {
        NILCOH_ASSERT(m.exps[t] < algebra_.field.p(), "exponent not reduced below p");
        idx += m.exps[t] * stride_[t];
    }
    return idx;
}

PBWMonomial UAlgebra::monomial_of(std::uint32_t idx) const {
    PBWMonomial m;
    m.exps.assign(algebra_.dim, 0);
    for (std::size_t t = 0; t < algebra_.dim; ++t) {
        m.exps[t] = idx % algebra_.field.p();
        idx /= algebra_.field.p();
    }
    return m;
}

std::size_t UAlgebra::monomial_degree(std::uint32_t idx) const {
    std::size_t s = 0;
    while (idx) {
        s += idx % algebra_.field.p();
        idx /= algebra_.field.p();
    }
    return s;
}

Weight UAlgebra::monomial_weight(std::uint32_t idx) const {
    Weight w(algebra_.torus_rank, 0);
    auto m = monomial_of(idx);
    for (std::size_t t = 0; t < algebra_.dim; ++t)
        if (m.exps[t])
            w = weight_sub(w, weight_scale(static_cast<int>(m.exps[t]),
                                           algebra_.basis_weights[t]));
    return w;
}

std::string UAlgebra::monomial_string(std::uint32_t idx) const {
    if (!idx) return "1";
    auto m = monomial_of(idx);
    std::string out;
    for (std::size_t t = 0; t < algebra_.dim; ++t) {
        if (!m.exps[t]) continue;
        if (!out.empty()) out += "*";
        out += algebra_.basis_names[t];
        if (m.exps[t] > 1) out += "^" + std::to_string(m.exps[t]);
    }
    return out;
}

UElement UAlgebra::one() const {
    UElement u;
    u.terms.emplace(0, 1);
    return u;
}

UElement UAlgebra::generator(std::size_t j) const {
    NILCOH_ASSERT(j < algebra_.dim, "generator index out of range");
    UElement u;
    u.terms.emplace(stride_[j], 1);
    return u;
}

const UElement& UAlgebra::generator_times(std::size_t j, std::uint32_t idx) const {
    std::uint64_t key = static_cast<std::uint64_t>(j) * dim_ + idx;
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    const PrimeField& f = algebra_.field;
    UElement out;
    if (idx == 0) {
        out.terms.emplace(stride_[j], 1);
    } else {
        auto m = monomial_of(idx);
        std::size_t i = 0;
        while (!m.exps[i]) ++i;  // smallest letter present
        if (j <= i) {
            /* direct prepend keeps the PBW order; u_j^p = 0 truncates */
            if (!(j == i && m.exps[i] + 1 == f.p()))
                out.terms.emplace(idx + stride_[j], 1);
        } else {
            std::uint32_t rest = idx - stride_[i];  // peel one u_i from the left
            /* u_j u_i = u_i u_j + [u_j, u_i] */
            UElement tail = generator_times(j, rest);  // copy: recursion may rehash
            for (const auto& [mi, c] : tail.terms) {
                const UElement& lifted = generator_times(i, mi);
                for (const auto& [mi2, c2] : lifted.terms)
                    out.add_term(mi2, f.mul(c, c2), f);
            }
            auto br = algebra_.bracket_of(j, i);
            for (std::size_t k = 0; k < algebra_.dim; ++k) {
                if (!br[k]) continue;
                const UElement& tk = generator_times(k, rest);
                for (const auto& [mi, c] : tk.terms)
                    out.add_term(mi, f.mul(br[k], c), f);
            }
        }
    }
    return memo_.emplace(key, std::move(out)).first->second;
}

UElement UAlgebra::monomial_times(std::uint32_t a_idx, const UElement& v) const {
    if (!a_idx) return v;
    /* peel the largest letter: u^a = u^{a - delta_l} u_l */
    auto m = monomial_of(a_idx);
    std::size_t l = algebra_.dim;
    while (l > 0 && !m.exps[l - 1]) --l;
    --l;
    UElement w;
    for (const auto& [mi, c] : v.terms) {
        const UElement& t = generator_times(l, mi);
        for (const auto& [mi2, c2] : t.terms)
            w.add_term(mi2, algebra_.field.mul(c, c2), algebra_.field);
    }
    return monomial_times(a_idx - stride_[l], w);
}

UElement UAlgebra::multiply(const UElement& u, const UElement& v) const {
    UElement out;
    for (const auto& [ai, ca] : u.terms) {
        UElement part = monomial_times(ai, v);
        for (const auto& [mi, c] : part.terms)
            out.add_term(mi, algebra_.field.mul(ca, c), algebra_.field);
    }
    return out;
}

Fp UAlgebra::augmentation(const UElement& u) const {
    auto it = u.terms.find(0);
    return it == u.terms.end() ? 0 : it->second;
}

std::string UAlgebra::element_string(const UElement& u) const {
    if (u.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mi, c] : u.terms) {
        if (!first) os << " + ";
        if (c != 1 || mi == 0) os << c;
        if (c != 1 && mi != 0) os << "*";
        if (mi != 0) os << monomial_string(mi);
        first = false;
    }
    return os.str();
}

FpMatrix UAlgebra::regular_representation(std::size_t j) const {
    NILCOH_ASSERT(j < algebra_.dim, "generator index out of range");
    std::size_t n = static_cast<std::size_t>(dim_);
    FpMatrix rep(n, n, algebra_.field);
    for (std::uint32_t c = 0; c < n; ++c) {
        const UElement& col = generator_times(j, c);
        for (const auto& [r, v] : col.terms) rep.set(r, c, v);
    }
    return rep;
}

std::vector<std::size_t> UAlgebra::radical_filtration_dims() const {
    std::size_t n = static_cast<std::size_t>(dim_);
    std::vector<std::size_t> dims = {n};

    /* I^1: all nonconstant monomials (the weight grading is strictly
       negative, so the degree-zero part is spanned by 1 alone) */
    std::vector<std::vector<std::pair<std::uint32_t, Fp>>> rows;
    for (std::uint32_t idx = 1; idx < n; ++idx) rows.push_back({{idx, 1}});

    while (!rows.empty()) {
        dims.push_back(rows.size());
        std::vector<std::vector<std::pair<std::uint32_t, Fp>>> next;
        for (std::size_t j = 0; j < algebra_.dim; ++j)
            for (const auto& row : rows) {
                UElement prod;
                for (const auto& [idx, c] : row) {
                    const UElement& t = generator_times(j, idx);
                    for (const auto& [mi, c2] : t.terms)
                        prod.add_term(mi, algebra_.field.mul(c, c2), algebra_.field);
                }
                if (prod.is_zero()) continue;
                std::vector<std::pair<std::uint32_t, Fp>> nr(prod.terms.begin(),
                                                             prod.terms.end());
                next.push_back(std::move(nr));
            }
        eliminate_rows(next, n, algebra_.field, true);
        next.erase(std::remove_if(next.begin(), next.end(),
                                  [](const auto& r) { return r.empty(); }),
                   next.end());
        NILCOH_ASSERT(next.size() < rows.size(), "radical filtration must shrink");
        rows = std::move(next);
    }
    dims.push_back(0);
    return dims;
}

}  // namespace nilcoh
