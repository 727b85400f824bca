#include "nilcoh/lie_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nilcoh/fp_matrix.hpp"

namespace nilcoh {

Weight weight_add(const Weight& a, const Weight& b) {
    NILCOH_ASSERT(a.size() == b.size(), "weight rank mismatch");
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Weight weight_sub(const Weight& a, const Weight& b) {
    NILCOH_ASSERT(a.size() == b.size(), "weight rank mismatch");
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Weight weight_scale(int c, const Weight& a) {
    Weight r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

int weight_height(const Weight& a) {
    int h = 0;
    for (int v : a) h += v;
    return h;
}

bool weight_is_zero(const Weight& a) {
    return std::all_of(a.begin(), a.end(), [](int v) { return v == 0; });
}

std::string weight_to_string(const Weight& w) {
    if (weight_is_zero(w)) return "0";
    if (w.size() == 1) return std::to_string(w[0]);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0) continue;
        if (!first && w[i] > 0) os << "+";
        if (w[i] == -1)
            os << "-";
        else if (w[i] != 1)
            os << w[i];
        if (w.size() == 2)
            os << (i == 0 ? "a" : "b");
        else
            os << "a" << (i + 1);
        first = false;
    }
    return os.str();
}

std::vector<Fp> LieAlgebra::bracket_of(std::size_t i, std::size_t j) const {
    std::vector<Fp> out(dim, 0);
    if (i == j) return out;
    bool flip = i > j;
    std::size_t a = flip ? j : i, b = flip ? i : j;
    auto it = std::lower_bound(brackets.begin(), brackets.end(), std::make_pair(a, b),
                               [](const Bracket& br, const std::pair<std::size_t, std::size_t>& key) {
                                   return std::make_pair(br.i, br.j) < key;
                               });
    if (it == brackets.end() || it->i != a || it->j != b) return out;
    for (const auto& [k, c] : it->coeffs) out[k] = flip ? field.neg(c) : c;
    return out;
}

std::vector<Fp> LieAlgebra::bracket_vec(const std::vector<Fp>& x, const std::vector<Fp>& y) const {
    std::vector<Fp> out(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!x[i]) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (!y[j] || i == j) continue;
            Fp c = field.mul(x[i], y[j]);
            auto br = bracket_of(i, j);
            for (std::size_t k = 0; k < dim; ++k)
                if (br[k]) out[k] = field.add(out[k], field.mul(c, br[k]));
        }
    }
    return out;
}

std::string ValidationReport::summary() const {
    if (ok) return "valid";
    std::ostringstream os;
    for (const auto& v : violations) {
        os << v.identity << " at (";
        for (std::size_t t = 0; t < v.indices.size(); ++t)
            os << (t ? "," : "") << "u" << (v.indices[t] + 1);
        os << "): " << v.detail << "; ";
    }
    return os.str();
}

namespace {

/* Lower-central-series stage with generating bracket words, used both
   for the class computation and for admissibility witnesses. */
struct StageVector {
    std::vector<Fp> vec;
    std::vector<std::size_t> letters;  // left-normed word [l0,[l1,[...,lk]...]]
};

/* Reduce `cand` against an echelon set; returns nonzero leading position
   or npos when it reduces to zero. The echelon set is extended. */
std::size_t echelon_insert(std::vector<std::pair<std::size_t, StageVector>>& ech,
                           StageVector cand, const PrimeField& f) {
    for (const auto& [piv, sv] : ech) {
        if (cand.vec[piv]) {
            Fp c = cand.vec[piv];
            for (std::size_t t = 0; t < cand.vec.size(); ++t)
                cand.vec[t] = f.sub(cand.vec[t], f.mul(c, sv.vec[t]));
        }
    }
    for (std::size_t t = 0; t < cand.vec.size(); ++t) {
        if (cand.vec[t]) {
            Fp s = f.inv(cand.vec[t]);
            for (auto& v : cand.vec) v = f.mul(v, s);
            ech.push_back({t, std::move(cand)});
            return t;
        }
    }
    return static_cast<std::size_t>(-1);
}

std::vector<std::vector<std::pair<std::size_t, StageVector>>> lower_central_stages(
    const LieAlgebra& a) {
    const PrimeField& f = a.field;
    std::vector<std::vector<std::pair<std::size_t, StageVector>>> stages;
    std::vector<std::pair<std::size_t, StageVector>> first;
    for (std::size_t i = 0; i < a.dim; ++i) {
        StageVector sv;
        sv.vec.assign(a.dim, 0);
        sv.vec[i] = 1;
        sv.letters = {i};
        echelon_insert(first, std::move(sv), f);
    }
    stages.push_back(std::move(first));
    while (!stages.back().empty() && stages.size() <= a.dim + 1) {
        std::vector<std::pair<std::size_t, StageVector>> next;
        for (std::size_t i = 0; i < a.dim; ++i) {
            std::vector<Fp> ei(a.dim, 0);
            ei[i] = 1;
            for (const auto& [piv, sv] : stages.back()) {
                StageVector cand;
                cand.vec = a.bracket_vec(ei, sv.vec);
                cand.letters = sv.letters;
                cand.letters.insert(cand.letters.begin(), i);
                echelon_insert(next, std::move(cand), f);
            }
        }
        stages.push_back(std::move(next));
    }
    return stages;
}

std::uint32_t smallest_odd_prime_above(std::size_t c) {
    std::uint32_t q = 3;
    while (q <= c || !PrimeField::is_prime(q)) q += 2;
    return q;
}

}  // namespace

std::size_t nilpotency_class(const LieAlgebra& a) {
    auto stages = lower_central_stages(a);
    std::size_t cls = 0;
    for (std::size_t s = 0; s < stages.size(); ++s)
        if (!stages[s].empty()) cls = s + 1;
    return cls;
}

ValidationReport validate(const LieAlgebra& a) {
    ValidationReport rep;
    auto fail = [&](std::string id, std::vector<std::size_t> idx, std::string detail) {
        rep.ok = false;
        rep.violations.push_back({std::move(id), std::move(idx), std::move(detail)});
    };

    if (a.basis_names.size() != a.dim || a.basis_weights.size() != a.dim) {
        fail("shape", {}, "basis names/weights do not match dim");
        return rep;
    }
    for (std::size_t i = 0; i < a.dim; ++i) {
        const Weight& w = a.basis_weights[i];
        if (w.size() != a.torus_rank) {
            fail("shape", {i}, "weight rank != torus_rank");
            return rep;
        }
        bool neg = false, pos = false;
        for (int v : w) {
            if (v < 0) neg = true;
            if (v > 0) pos = true;
        }
        if (pos || !neg)
            fail("weight-cone", {i},
                 "basis weight " + weight_to_string(w) +
                     " is not in the strictly negative cone");
    }

    for (std::size_t t = 0; t < a.brackets.size(); ++t) {
        const Bracket& b = a.brackets[t];
        if (b.i >= b.j || b.j >= a.dim) {
            fail("antisymmetry", {b.i, b.j},
                 "bracket storage requires i < j < dim (one entry per unordered pair)");
            continue;
        }
        if (t && !(std::make_pair(a.brackets[t - 1].i, a.brackets[t - 1].j) <
                   std::make_pair(b.i, b.j)))
            fail("antisymmetry", {b.i, b.j}, "duplicate or unsorted bracket pair");
        for (const auto& [k, c] : b.coeffs) {
            if (k >= a.dim || c == 0 || c >= a.field.p()) {
                fail("structure-constants", {b.i, b.j, k}, "coefficient out of range");
                continue;
            }
            Weight expect = weight_add(a.basis_weights[b.i], a.basis_weights[b.j]);
            if (a.basis_weights[k] != expect)
                fail("weight", {b.i, b.j, k},
                     "bracket target weight " + weight_to_string(a.basis_weights[k]) +
                         " != " + weight_to_string(expect));
        }
    }
    if (!rep.ok) return rep;

    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = i + 1; j < a.dim; ++j)
            for (std::size_t k = j + 1; k < a.dim; ++k) {
                std::vector<Fp> ei(a.dim, 0), ej(a.dim, 0), ek(a.dim, 0);
                ei[i] = ej[j] = ek[k] = 1;
                auto s1 = a.bracket_vec(a.bracket_of(i, j), ek);
                auto s2 = a.bracket_vec(a.bracket_of(j, k), ei);
                auto s3 = a.bracket_vec(a.bracket_of(k, i), ej);
                bool zero = true;
                std::vector<Fp> sum(a.dim);
                for (std::size_t t = 0; t < a.dim; ++t) {
                    sum[t] = a.field.add(a.field.add(s1[t], s2[t]), s3[t]);
                    if (sum[t]) zero = false;
                }
                if (!zero) {
                    std::ostringstream os;
                    os << "[[ui,uj],uk]+[[uj,uk],ui]+[[uk,ui],uj] = (";
                    for (std::size_t t = 0; t < a.dim; ++t) os << (t ? "," : "") << sum[t];
                    os << ")";
                    fail("jacobi", {i, j, k}, os.str());
                }
            }
    if (!rep.ok) return rep;

    auto stages = lower_central_stages(a);
    bool nil = stages.back().empty();
    if (!nil) {
        fail("nilpotency", {}, "lower central series does not terminate");
        return rep;
    }
    std::size_t cls = 0;
    for (std::size_t s = 0; s < stages.size(); ++s)
        if (!stages[s].empty()) cls = s + 1;

    /* The identically zero p-power operation is a valid restricted
       structure precisely when every p-letter bracket vanishes: the
       Jacobson summands of (x+y)^[p] are p-letter bracket monomials and
       ad(x)^p needs p+1 letters.  Class >= p yields an explicit
       nonvanishing p-letter word as a witness. */
    if (cls >= a.field.p()) {
        std::size_t pstage = a.field.p() - 1;  // 0-based stage of p-letter words
        std::ostringstream os;
        std::vector<std::size_t> idx;
        if (pstage < stages.size() && !stages[pstage].empty()) {
            const auto& w = stages[pstage].front().second.letters;
            idx = w;
            os << "nonzero p-letter bracket ";
            for (std::size_t t = 0; t + 1 < w.size(); ++t) os << "[u" << (w[t] + 1) << ",";
            os << "u" << (w.back() + 1);
            for (std::size_t t = 0; t + 1 < w.size(); ++t) os << "]";
            os << " obstructs the zero p-power map";
        }
        os << " (nilpotency class " << cls << " >= p = " << a.field.p()
           << "; admissible for p >= " << smallest_odd_prime_above(cls) << ")";
        fail("p-power-triviality", idx, os.str());
    }
    return rep;
}

void validate_or_throw(const LieAlgebra& a) {
    auto rep = validate(a);
    if (!rep.ok) throw input_error("algebra '" + a.name + "' invalid: " + rep.summary());
}

std::size_t commutator_dim(const LieAlgebra& a) {
    FpMatrix m(a.brackets.size() == 0 ? 1 : a.brackets.size(), a.dim, a.field);
    std::size_t r = 0;
    for (const auto& b : a.brackets) {
        for (const auto& [k, c] : b.coeffs) m.set(r, k, c);
        ++r;
    }
    return rank(m);
}

std::vector<std::size_t> center_basis(const LieAlgebra& a) {
    std::vector<std::size_t> out;
    for (std::size_t z = 0; z < a.dim; ++z) {
        bool central = true;
        for (std::size_t i = 0; i < a.dim && central; ++i) {
            auto br = a.bracket_of(z, i);
            for (Fp v : br)
                if (v) {
                    central = false;
                    break;
                }
        }
        if (central) out.push_back(z);
    }
    return out;
}

LieAlgebra quotient_by_central(const LieAlgebra& a, std::size_t z) {
    if (z >= a.dim) throw input_error("quotient: basis index out of range");
    auto cen = center_basis(a);
    if (std::find(cen.begin(), cen.end(), z) == cen.end())
        throw input_error("quotient: " + a.basis_names[z] + " is not central in " + a.name);

    LieAlgebra q;
    q.name = a.name + "_mod_" + a.basis_names[z];
    q.field = a.field;
    q.dim = a.dim - 1;
    q.torus_rank = a.torus_rank;
    auto newidx = [&](std::size_t old) { return old < z ? old : old - 1; };
    for (std::size_t i = 0; i < a.dim; ++i) {
        if (i == z) continue;
        q.basis_names.push_back(a.basis_names[i]);
        q.basis_weights.push_back(a.basis_weights[i]);
    }
    for (const auto& b : a.brackets) {
        if (b.i == z || b.j == z) continue;  // central: brackets vanish anyway
        Bracket nb;
        nb.i = newidx(b.i);
        nb.j = newidx(b.j);
        for (const auto& [k, c] : b.coeffs)
            if (k != z) nb.coeffs[newidx(k)] = c;
        if (!nb.coeffs.empty()) q.brackets.push_back(std::move(nb));
    }
    std::sort(q.brackets.begin(), q.brackets.end(),
              [](const Bracket& x, const Bracket& y) {
                  return std::make_pair(x.i, x.j) < std::make_pair(y.i, y.j);
              });
    validate_or_throw(q);
    return q;
}

/* ---- catalogue ---- */

namespace {

struct IntBracket {
    std::size_t i, j;
    std::map<std::size_t, int> coeffs;
};

LieAlgebra assemble(std::string name, std::uint32_t p, std::size_t torus,
                    std::vector<Weight> wts, std::vector<IntBracket> brs,
                    std::optional<BorelInfo> borel = std::nullopt) {
    LieAlgebra a;
    a.name = std::move(name);
    a.field = PrimeField(p);
    a.dim = wts.size();
    a.torus_rank = torus;
    a.basis_weights = std::move(wts);
    for (std::size_t i = 0; i < a.dim; ++i) a.basis_names.push_back("u" + std::to_string(i + 1));
    std::sort(brs.begin(), brs.end(), [](const IntBracket& x, const IntBracket& y) {
        return std::make_pair(x.i, x.j) < std::make_pair(y.i, y.j);
    });
    for (const auto& b : brs) {
        Bracket nb;
        nb.i = b.i;
        nb.j = b.j;
        for (const auto& [k, c] : b.coeffs) {
            Fp r = a.field.reduce(c);
            if (r) nb.coeffs[k] = r;
        }
        if (!nb.coeffs.empty()) a.brackets.push_back(std::move(nb));
    }
    a.borel = std::move(borel);
    return a;
}

/* Strictly lower triangular m x m matrices, basis E_{i,j} (i > j)
   ordered by height i-j then by column, optionally dropping the corner
   E_{m,1}.  Bracket targets are rescaled so that the first bracket
   writing each target has coefficient +1; this keeps the generated
   presentations unit-leading and deterministic. */
LieAlgebra lower_triangular_family(const std::string& name, std::size_t m, std::uint32_t p,
                                   bool drop_corner, std::optional<BorelInfo> borel) {
    struct Pos {
        std::size_t i, j;
    };
    std::vector<Pos> basis;
    for (std::size_t h = 1; h < m; ++h)
        for (std::size_t j = 1; j + h <= m; ++j) {
            if (drop_corner && h == m - 1) continue;
            basis.push_back({j + h, j});
        }
    auto find = [&](std::size_t i, std::size_t j) -> long long {
        for (std::size_t t = 0; t < basis.size(); ++t)
            if (basis[t].i == i && basis[t].j == j) return static_cast<long long>(t);
        return -1;
    };
    std::vector<Weight> wts;
    for (const auto& b : basis) {
        Weight w(m - 1, 0);
        for (std::size_t t = b.j; t < b.i; ++t) w[t - 1] = -1;
        wts.push_back(w);
    }
    /* [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb */
    std::vector<IntBracket> brs;
    for (std::size_t s = 0; s < basis.size(); ++s)
        for (std::size_t t = s + 1; t < basis.size(); ++t) {
            std::map<std::size_t, int> co;
            auto [ai, bj] = basis[s];
            auto [ci, dj] = basis[t];
            if (bj == ci) {
                long long k = find(ai, dj);
                if (k >= 0) co[static_cast<std::size_t>(k)] += 1;
            }
            if (dj == ai) {
                long long k = find(ci, bj);
                if (k >= 0) co[static_cast<std::size_t>(k)] -= 1;
            }
            std::erase_if(co, [](const auto& kv) { return kv.second == 0; });
            if (!co.empty()) brs.push_back({s, t, std::move(co)});
        }

    /* normalize target scales, walking targets by height */
    std::vector<int> scale(basis.size(), 0);
    for (std::size_t t = 0; t < basis.size(); ++t)
        if (basis[t].i - basis[t].j == 1) scale[t] = 1;
    std::sort(brs.begin(), brs.end(), [&](const IntBracket& x, const IntBracket& y) {
        std::size_t hx = (basis[x.i].i - basis[x.i].j) + (basis[x.j].i - basis[x.j].j);
        std::size_t hy = (basis[y.i].i - basis[y.i].j) + (basis[y.j].i - basis[y.j].j);
        return std::tie(hx, x.i, x.j) < std::tie(hy, y.i, y.j);
    });
    for (auto& b : brs) {
        NILCOH_ASSERT(scale[b.i] != 0 && scale[b.j] != 0, "source scale not yet fixed");
        std::map<std::size_t, int> out;
        for (const auto& [k, c] : b.coeffs) {
            int eff = c * scale[b.i] * scale[b.j];
            if (scale[k] == 0) scale[k] = eff;  // first writer pins the target scale
            NILCOH_ASSERT(std::abs(scale[k]) == 1, "non-unit scale in matrix family");
            out[k] = eff * scale[k];
        }
        b.coeffs = std::move(out);
    }
    return assemble(name, p, m - 1, std::move(wts), std::move(brs), std::move(borel));
}

Weight W(std::initializer_list<int> v) { return Weight(v); }

LieAlgebra build_named(const std::string& name, std::uint32_t p) {
    /* dimension 3..5 algebras: weights follow the torus gradings used
       throughout; all basis weights are negative roots. */
    if (name == "L3_2" || name == "borel_nilradical(A2)")
        return assemble(name, p, 2, {W({-1, 0}), W({0, -1}), W({-1, -1})},
                        {{0, 1, {{2, 1}}}}, BorelInfo{"A2", 3});
    if (name == "L4_3" || name == "borel_nilradical(B2)")
        return assemble(name, p, 2,
                        {W({-1, 0}), W({0, -1}), W({-1, -1}), W({-2, -1})},
                        {{0, 1, {{2, 1}}}, {0, 2, {{3, 1}}}}, BorelInfo{"B2", 4});
    if (name == "L5_4")
        return assemble(name, p, 3,
                        {W({-1, 0, 0}), W({0, 0, -1}), W({-1, -1, 0}), W({0, -1, -1}),
                         W({-1, -1, -1})},
                        {{0, 3, {{4, 1}}}, {1, 2, {{4, 1}}}});
    if (name == "L5_5")
        return assemble(name, p, 2,
                        {W({-1, 0}), W({0, -1}), W({-1, -1}), W({-2, -1}), W({-2, 0})},
                        {{0, 1, {{2, 1}}}, {0, 2, {{3, 1}}}, {1, 4, {{3, 1}}}});
    if (name == "L5_6")
        return assemble(name, p, 1, {W({-1}), W({-2}), W({-3}), W({-4}), W({-5})},
                        {{0, 1, {{2, 1}}},
                         {0, 2, {{3, 2}}},
                         {0, 3, {{4, 3}}},
                         {1, 2, {{4, 1}}}});
    if (name == "L5_7" || name == "B2_ext5")
        return assemble(name, p, 2,
                        {W({-1, 0}), W({0, -1}), W({-1, -1}), W({-2, -1}), W({-3, -1})},
                        {{0, 1, {{2, 1}}}, {0, 2, {{3, 1}}}, {0, 3, {{4, 1}}}});
    if (name == "L5_8" || name == "L5_9")
        return assemble(name, p, 3,
                        {W({-1, 0, 0}), W({0, -1, 0}), W({0, 0, -1}), W({-1, -1, 0}),
                         W({0, -1, -1})},
                        {{0, 1, {{3, 1}}}, {1, 2, {{4, 1}}}});
    if (name == "L6_19" || name == "borel_nilradical(A3)")
        return assemble(name, p, 3,
                        {W({-1, 0, 0}), W({0, -1, 0}), W({0, 0, -1}), W({-1, -1, 0}),
                         W({0, -1, -1}), W({-1, -1, -1})},
                        {{0, 1, {{3, 1}}},
                         {0, 4, {{5, 1}}},
                         {1, 2, {{4, 1}}},
                         {2, 3, {{5, -1}}}},
                        BorelInfo{"A3", 4});
    if (name == "borel_nilradical(A4)")
        return lower_triangular_family(name, 5, p, false, BorelInfo{"A4", 5});
    if (name == "borel_nilradical(G2)" || name == "G2_ext7") {
        std::vector<Weight> wts = {W({-1, 0}),  W({0, -1}),  W({-1, -1}),
                                   W({-2, -1}), W({-3, -1}), W({-3, -2})};
        std::vector<IntBracket> brs = {{0, 1, {{2, 1}}},
                                       {0, 2, {{3, 2}}},
                                       {0, 3, {{4, 3}}},
                                       {1, 4, {{5, 1}}},
                                       {2, 3, {{5, -3}}}};
        if (name == "G2_ext7") {
            wts.push_back(W({-4, -1}));
            brs.push_back({0, 4, {{6, 1}}});
        }
        return assemble(name, p, 2, std::move(wts), std::move(brs),
                        name == "G2_ext7" ? std::nullopt
                                          : std::optional<BorelInfo>(BorelInfo{"G2", 6}));
    }
    throw input_error("unknown catalogue name: " + name);
}

bool parse_param(const std::string& name, const std::string& prefix, std::size_t& n) {
    if (name.size() <= prefix.size() + 2) return false;
    if (name.compare(0, prefix.size(), prefix) != 0) return false;
    if (name[prefix.size()] != '(' || name.back() != ')') return false;
    std::string inner = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    if (inner.empty() || !std::all_of(inner.begin(), inner.end(), ::isdigit)) return false;
    n = std::stoul(inner);
    return true;
}

}  // namespace

LieAlgebra abelian_algebra(std::size_t dim, std::uint32_t p) {
    std::vector<Weight> wts;
    for (std::size_t i = 0; i < dim; ++i) {
        Weight w(dim, 0);
        w[i] = -1;
        wts.push_back(w);
    }
    return assemble("abelian" + std::to_string(dim), p, dim, std::move(wts), {});
}

LieAlgebra catalogue(const std::string& name, std::uint32_t p) {
    if (p < 3 || !PrimeField::is_prime(p))
        throw input_error("catalogue: p must be an odd prime >= 3, got " + std::to_string(p));

    LieAlgebra a;
    std::size_t n = 0;
    if (parse_param(name, "metabelian", n)) {
        if (n < 1) throw input_error("metabelian(n) requires n >= 1");
        /* actor u, then v_1..v_n, then w_i = [u, v_i]; torus rank n+1 */
        std::vector<Weight> wts;
        Weight u(n + 1, 0);
        u[0] = -1;
        wts.push_back(u);
        for (std::size_t i = 1; i <= n; ++i) {
            Weight w(n + 1, 0);
            for (std::size_t t = 1; t <= i; ++t) w[t] = -1;
            wts.push_back(w);
        }
        for (std::size_t i = 1; i <= n; ++i) {
            Weight w(n + 1, 0);
            w[0] = -1;
            for (std::size_t t = 1; t <= i; ++t) w[t] = -1;
            wts.push_back(w);
        }
        std::vector<IntBracket> brs;
        for (std::size_t i = 1; i <= n; ++i) brs.push_back({0, i, {{n + i, 1}}});
        a = assemble(name, p, n + 1, std::move(wts), std::move(brs));
    } else if (parse_param(name, "heisenberg", n)) {
        if (n < 1) throw input_error("heisenberg(n) requires n >= 1");
        /* x_1..x_n, y_1..y_n, z with [x_i, y_i] = z; torus rank n+1 */
        std::vector<Weight> wts;
        for (std::size_t i = 1; i <= n; ++i) {
            Weight w(n + 1, 0);
            for (std::size_t t = 0; t < i; ++t) w[t] = -1;
            wts.push_back(w);
        }
        for (std::size_t i = 1; i <= n; ++i) {
            Weight w(n + 1, 0);
            for (std::size_t t = i; t <= n; ++t) w[t] = -1;
            wts.push_back(w);
        }
        wts.push_back(Weight(n + 1, -1));
        std::vector<IntBracket> brs;
        for (std::size_t i = 0; i < n; ++i) brs.push_back({i, n + i, {{2 * n, 1}}});
        a = assemble(name, p, n + 1, std::move(wts), std::move(brs));
    } else if (parse_param(name, "upper_triangular_mod_center", n)) {
        if (n < 3) throw input_error("upper_triangular_mod_center(m) requires m >= 3");
        a = lower_triangular_family(name, n, p, true, std::nullopt);
    } else {
        a = build_named(name, p);
    }

    auto rep = validate(a);
    if (!rep.ok) {
        /* Re-derive the admissibility bound so the error names it. */
        std::size_t cls = nilpotency_class(a);
        if (cls >= p)
            throw input_error("catalogue: " + name + " requires p >= " +
                              std::to_string(smallest_odd_prime_above(cls)) +
                              " (nilpotency class " + std::to_string(cls) + "); got p = " +
                              std::to_string(p));
        throw input_error("catalogue: " + name + " invalid at p = " + std::to_string(p) +
                          ": " + rep.summary());
    }
    return a;
}

std::vector<CatalogueEntry> catalogue_list() {
    return {
        {"L3_2", "Heisenberg algebra; Borel nilradical of type A2", 3, "dim 3"},
        {"L4_3", "filiform; Borel nilradical of type B2", 5, "dim 4"},
        {"L5_4", "Heisenberg-type subalgebra inside the A3 nilradical", 3, "dim 5"},
        {"L5_5", "double-graded extension of the Heisenberg algebra", 5, "dim 5"},
        {"L5_6", "truncated Witt quotient; central extension of the B2 nilradical", 5,
         "dim 5"},
        {"L5_7", "graded central extension of L4_3 (alias B2_ext5)", 5, "dim 5"},
        {"L5_8", "A3 nilradical modulo its center; three-torus grading", 3, "dim 5"},
        {"L5_9", "same presentation as L5_8 ([u1,u2]=u4, [u2,u3]=u5)", 3, "dim 5"},
        {"L6_19", "Borel nilradical of type A3 (strictly triangular 4x4)", 5, "dim 6"},
        {"borel_nilradical(A2|B2|A3|A4|G2)", "Borel nilradicals of small rank", 3,
         "dim 3/4/6/10/6"},
        {"B2_ext5", "alias of L5_7", 5, "dim 5"},
        {"G2_ext7", "G2 nilradical extended by a vector of weight -4a-b", 7, "dim 7"},
        {"metabelian(n)", "[u, v_i] = w_i on 2n+1 generators", 3, "dim 2n+1"},
        {"heisenberg(n)", "[x_i, y_i] = z on 2n+1 generators", 3, "dim 2n+1"},
        {"upper_triangular_mod_center(m)", "strictly triangular mxm matrices mod corner", 3,
         "dim m(m-1)/2 - 1"},
    };
}

/* ---- root systems ---- */

Weight RootSystem::two_rho() const {
    Weight s(rank, 0);
    for (const auto& r : positive_roots) s = weight_add(s, r);
    return s;
}

RootSystem RootSystem::make(const std::string& type) {
    RootSystem r;
    r.type = type;
    auto a_pos = [](std::size_t n) {
        std::vector<Weight> out;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Weight w(n, 0);
                for (std::size_t t = i; t <= j; ++t) w[t] = 1;
                out.push_back(w);
            }
        return out;
    };
    if (type == "A1" || type == "A2" || type == "A3" || type == "A4") {
        std::size_t n = type[1] - '0';
        r.rank = n;
        r.coxeter = static_cast<int>(n) + 1;
        r.cartan.assign(n, std::vector<int>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r.cartan[i][j] = i == j ? 2 : (i + 1 == j || j + 1 == i ? -1 : 0);
        r.positive_roots = a_pos(n);
    } else if (type == "B2") {
        r.rank = 2;
        r.coxeter = 4;
        r.cartan = {{2, -2}, {-1, 2}};  // alpha short: s_a(b) = b + 2a
        r.positive_roots = {{1, 0}, {0, 1}, {1, 1}, {2, 1}};
    } else if (type == "G2") {
        r.rank = 2;
        r.coxeter = 6;
        r.cartan = {{2, -3}, {-1, 2}};  // alpha short: s_a(b) = b + 3a
        r.positive_roots = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}};
    } else {
        throw input_error("unsupported root system: " + type);
    }
    return r;
}

/* ---- serialization ---- */

nlohmann::ordered_json algebra_to_json(const LieAlgebra& a) {
    nlohmann::ordered_json j;
    j["name"] = a.name;
    j["p"] = a.field.p();
    j["dim"] = a.dim;
    j["basis"] = a.basis_names;
    j["torus_rank"] = a.torus_rank;
    nlohmann::ordered_json wts = nlohmann::ordered_json::array();
    for (const auto& w : a.basis_weights) wts.push_back(w);
    j["weights"] = std::move(wts);
    nlohmann::ordered_json brs = nlohmann::ordered_json::array();
    for (const auto& b : a.brackets) {
        nlohmann::ordered_json e;
        e["i"] = b.i + 1;
        e["j"] = b.j + 1;
        nlohmann::ordered_json co;
        for (const auto& [k, c] : b.coeffs) co[std::to_string(k + 1)] = c;
        e["coeffs"] = std::move(co);
        brs.push_back(std::move(e));
    }
    j["brackets"] = std::move(brs);
    return j;
}

LieAlgebra algebra_from_json(const nlohmann::ordered_json& j) {
    try {
        LieAlgebra a;
        a.name = j.at("name").get<std::string>();
        a.field = PrimeField(j.at("p").get<std::uint32_t>());
        a.dim = j.at("dim").get<std::size_t>();
        a.basis_names = j.at("basis").get<std::vector<std::string>>();
        a.torus_rank = j.at("torus_rank").get<std::size_t>();
        for (const auto& w : j.at("weights")) a.basis_weights.push_back(w.get<Weight>());
        for (const auto& e : j.at("brackets")) {
            Bracket b;
            std::size_t i1 = e.at("i").get<std::size_t>(), j1 = e.at("j").get<std::size_t>();
            if (i1 < 1 || j1 < 1) throw input_error("bracket indices are 1-based");
            b.i = i1 - 1;
            b.j = j1 - 1;
            for (const auto& [k, c] : e.at("coeffs").items())
                b.coeffs[std::stoul(k) - 1] = c.get<Fp>();
            a.brackets.push_back(std::move(b));
        }
        std::sort(a.brackets.begin(), a.brackets.end(),
                  [](const Bracket& x, const Bracket& y) {
                      return std::make_pair(x.i, x.j) < std::make_pair(y.i, y.j);
                  });
        validate_or_throw(a);
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("algebra JSON malformed: ") + e.what());
    }
}

std::string algebra_to_canonical_string(const LieAlgebra& a) {
    return algebra_to_json(a).dump(2) + "\n";
}

LieAlgebra algebra_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open algebra definition file: " + path);
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("cannot parse ") + path + ": " + e.what());
    }
    return algebra_from_json(j);
}

std::uint64_t algebra_content_hash(const LieAlgebra& a) {
    std::string s = algebra_to_canonical_string(a);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace nilcoh
