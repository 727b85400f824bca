#include "nilcoh/resolution.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>

#include <json.hpp>

namespace nilcoh {

namespace {

/* Weights ordered by height, then lexicographically; the resolution
   processes kernel blocks in this order so generator numbering is
   deterministic. */
struct WeightLess {
    bool operator()(const Weight& a, const Weight& b) const {
        int ha = weight_height(a), hb = weight_height(b);
        if (ha != hb) return ha < hb;
        return a < b;
    }
};

template <typename T>
using WeightMap = std::map<Weight, T, WeightLess>;

FlatVec to_flat(const std::map<std::uint64_t, Fp>& acc) {
    FlatVec out;
    out.reserve(acc.size());
    for (const auto& [idx, c] : acc)
        if (c) out.push_back({idx, c});
    return out;
}

/* Left multiplication u_j * v on a free module element. */
FlatVec generator_times_flat(const UAlgebra& env, std::size_t j, const FlatVec& v) {
    const std::uint64_t udim = env.dimension();
    const PrimeField& f = env.field();
    std::map<std::uint64_t, Fp> acc;
    for (const auto& [fl, c] : v) {
        std::uint64_t slot = fl / udim;
        auto midx = static_cast<std::uint32_t>(fl % udim);
        for (const auto& [idx2, c2] : env.generator_times(j, midx).terms) {
            Fp& cell = acc[slot * udim + idx2];
            cell = f.add(cell, f.mul(c, c2));
        }
    }
    return to_flat(acc);
}

/* Left multiplication (PBW monomial) * v on a free module element. */
FlatVec monomial_times_flat(const UAlgebra& env, std::uint32_t midx, const FlatVec& v) {
    const std::uint64_t udim = env.dimension();
    const PrimeField& f = env.field();
    UElement mono;
    mono.terms[midx] = 1;
    /* Group by slot so each slot costs one straightened product. */
    std::map<std::uint64_t, UElement> parts;
    for (const auto& [fl, c] : v) parts[fl / udim].terms[static_cast<std::uint32_t>(fl % udim)] = c;
    std::map<std::uint64_t, Fp> acc;
    for (const auto& [slot, elem] : parts)
        for (const auto& [idx2, c2] : env.multiply(mono, elem).terms) {
            Fp& cell = acc[slot * udim + idx2];
            cell = f.add(cell, c2);
        }
    return to_flat(acc);
}

/* Evaluates the boundary map out of F_m on single flat coordinates.
   Level 0 is the augmentation onto the rank-1 trivial module. */
class BoundaryEval {
  public:
    BoundaryEval(const UAlgebra& env, const std::vector<FreeGenerator>* gens_m)
        : env_(env), gens_(gens_m) {
        if (!gens_) return;  // level 0
        parts_.resize(gens_->size());
        const std::uint64_t udim = env_.dimension();
        for (std::size_t t = 0; t < gens_->size(); ++t) {
            std::map<std::uint64_t, UElement> grouped;
            for (const auto& [fl, c] : (*gens_)[t].image)
                grouped[fl / udim].terms[static_cast<std::uint32_t>(fl % udim)] = c;
            parts_[t].assign(grouped.begin(), grouped.end());
        }
    }

    FlatVec operator()(std::uint64_t flat) const {
        const std::uint64_t udim = env_.dimension();
        auto midx = static_cast<std::uint32_t>(flat % udim);
        if (!gens_) return midx == 0 ? FlatVec{{0, 1}} : FlatVec{};
        std::uint64_t t = flat / udim;
        UElement mono;
        mono.terms[midx] = 1;
        FlatVec out;
        for (const auto& [slot, elem] : parts_[t])
            for (const auto& [idx2, c2] : env_.multiply(mono, elem).terms)
                out.push_back({slot * udim + idx2, c2});
        return out;  // slots ascend and terms ascend within a slot
    }

  private:
    const UAlgebra& env_;
    const std::vector<FreeGenerator>* gens_;  // null for the augmentation
    std::vector<std::vector<std::pair<std::uint64_t, UElement>>> parts_;
};

/* Row echelon accumulator over a fixed column list, dense rows, pivots
   normalized to 1.  Pivot = first nonzero column, so with columns listed
   in flat (PBW) order the generator selection is reproducible. */
struct Echelon {
    const PrimeField& f;
    std::vector<std::vector<Fp>> rows;
    std::vector<std::size_t> pivots;

    explicit Echelon(const PrimeField& field) : f(field) {}

    void reduce(std::vector<Fp>& v) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Fp c = v[pivots[i]];
            if (!c) continue;
            const auto& r = rows[i];
            for (std::size_t k = pivots[i]; k < v.size(); ++k)
                if (r[k]) v[k] = f.sub(v[k], f.mul(c, r[k]));
        }
    }

    /* Returns true when v was independent (and is now inserted). */
    bool insert(std::vector<Fp>& v) {
        reduce(v);
        std::size_t p = 0;
        while (p < v.size() && !v[p]) ++p;
        if (p == v.size()) return false;
        Fp inv = f.inv(v[p]);
        for (std::size_t k = p; k < v.size(); ++k) v[k] = f.mul(v[k], inv);
        rows.push_back(v);
        pivots.push_back(p);
        /* Keep insertion cheap: no back-substitution; ordering of pivots is
           irrelevant for membership tests. */
        return true;
    }
};

struct StepOutcome {
    std::vector<FreeGenerator> new_gens;
    std::string error;  // non-empty: deferred internal assertion text
};

std::string cache_path(const UAlgebra& env, const ResolutionOptions& opts) {
    return opts.cache_dir + "/resolution-" + std::to_string(algebra_content_hash(env.algebra())) +
           ".json";
}

nlohmann::ordered_json resolution_to_json(const MinimalResolution& r) {
    nlohmann::ordered_json j;
    j["algebra"] = r.env.algebra().name;
    j["hash"] = algebra_content_hash(r.env.algebra());
    j["p"] = r.env.field().p();
    j["degree_reached"] = r.degree_reached;
    j["complete"] = r.complete;
    nlohmann::ordered_json degrees = nlohmann::ordered_json::array();
    for (const auto& layer : r.gens) {
        nlohmann::ordered_json gl = nlohmann::ordered_json::array();
        for (const auto& g : layer) {
            nlohmann::ordered_json e;
            e["weight"] = g.weight;
            nlohmann::ordered_json img = nlohmann::ordered_json::array();
            for (const auto& [fl, c] : g.image) img.push_back({fl, c});
            e["image"] = std::move(img);
            gl.push_back(std::move(e));
        }
        degrees.push_back(std::move(gl));
    }
    j["generators"] = std::move(degrees);
    return j;
}

std::optional<MinimalResolution> load_cache(const UAlgebra& env, const ResolutionOptions& opts) {
    std::ifstream in(cache_path(env, opts));
    if (!in) return std::nullopt;
    try {
        auto j = nlohmann::ordered_json::parse(in);
        if (j.at("hash").get<std::uint64_t>() != algebra_content_hash(env.algebra())) return std::nullopt;
        if (j.at("p").get<Fp>() != env.field().p()) return std::nullopt;
        if (j.at("degree_reached").get<std::size_t>() < opts.max_degree) return std::nullopt;
        MinimalResolution r{env, {}, 0, false};
        for (const auto& gl : j.at("generators")) {
            if (r.gens.size() > opts.max_degree) break;
            std::vector<FreeGenerator> layer;
            for (const auto& e : gl) {
                FreeGenerator g;
                g.weight = e.at("weight").get<Weight>();
                for (const auto& pr : e.at("image"))
                    g.image.push_back({pr.at(0).get<std::uint64_t>(), pr.at(1).get<Fp>()});
                layer.push_back(std::move(g));
            }
            r.gens.push_back(std::move(layer));
        }
        if (r.gens.size() != opts.max_degree + 1) return std::nullopt;
        r.degree_reached = opts.max_degree;
        r.complete = true;
        return r;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // unreadable cache is recomputed, then replaced
    }
}

void save_cache(const MinimalResolution& r, const ResolutionOptions& opts) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opts.cache_dir, ec);
    const std::string path = cache_path(r.env, opts);
    /* Do not clobber a deeper cached resolution with a shallower one. */
    {
        std::ifstream in(path);
        if (in) {
            try {
                auto j = nlohmann::ordered_json::parse(in);
                if (j.at("degree_reached").get<std::size_t>() >= r.degree_reached) return;
            } catch (const nlohmann::json::exception&) {
            }
        }
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;  // caching is best-effort
        out << resolution_to_json(r).dump(2) << "\n";
    }
    fs::rename(tmp, path, ec);
    if (ec) fs::remove(tmp, ec);
}

}  // namespace

std::vector<std::size_t> MinimalResolution::betti() const {
    std::vector<std::size_t> b;
    b.reserve(gens.size());
    for (const auto& layer : gens) b.push_back(layer.size());
    return b;
}

std::vector<Weight> MinimalResolution::generator_weights(std::size_t m) const {
    NILCOH_ASSERT(m < gens.size(), "generator_weights: degree beyond resolution");
    std::vector<Weight> w;
    w.reserve(gens[m].size());
    for (const auto& g : gens[m]) w.push_back(g.weight);
    return w;
}

MinimalResolution minimal_resolution(const UAlgebra& u, const ResolutionOptions& opts) {
    const std::uint64_t udim = u.dimension();
    if (udim > opts.dimension_budget && !opts.force)
        throw budget_error("minimal_resolution: dim u(n) = " + std::to_string(udim) +
                           " exceeds the budget " + std::to_string(opts.dimension_budget) +
                           "; set force to proceed");
    if (!opts.cache_dir.empty())
        if (auto cached = load_cache(u, opts)) return *cached;

    const LieAlgebra& a = u.algebra();
    const PrimeField& f = u.field();
    const std::size_t d = a.dim;
    const Weight zero(a.torus_rank, 0);

    std::vector<Weight> mono_weight(udim);
    for (std::uint64_t i = 0; i < udim; ++i)
        mono_weight[i] = u.monomial_weight(static_cast<std::uint32_t>(i));
    std::vector<Weight> gen_weight(d);
    for (std::size_t j = 0; j < d; ++j) gen_weight[j] = weight_scale(-1, a.basis_weights[j]);

    MinimalResolution r{u, {}, 0, false};
    r.gens.push_back({FreeGenerator{zero, {}}});

    std::uint64_t work_done = 0;
    for (std::size_t m = 1; m <= opts.max_degree; ++m) {
        const auto& prev = r.gens[m - 1];
        /* Boundary out of F_{m-1}: the augmentation when m = 1, otherwise
           determined by the images of the F_{m-1} generators. */
        BoundaryEval boundary(u, m >= 2 ? &r.gens[m - 1] : nullptr);

        /* Source coordinates of F_{m-1} grouped by weight, in flat order. */
        WeightMap<std::vector<std::uint64_t>> sources;
        for (std::size_t t = 0; t < prev.size(); ++t)
            for (std::uint64_t i = 0; i < udim; ++i)
                sources[weight_add(prev[t].weight, mono_weight[i])].push_back(t * udim + i);

        /* Target coordinates of F_{m-2} (or of k) by weight, with positions. */
        WeightMap<std::vector<std::uint64_t>> targets;
        std::unordered_map<std::uint64_t, std::size_t> target_pos;
        if (m == 1) {
            targets[zero] = {0};
            target_pos[0] = 0;
        } else {
            const auto& below = r.gens[m - 2];
            for (std::size_t t = 0; t < below.size(); ++t)
                for (std::uint64_t i = 0; i < udim; ++i) {
                    std::uint64_t fl = t * udim + i;
                    auto& list = targets[weight_add(below[t].weight, mono_weight[i])];
                    target_pos[fl] = list.size();
                    list.push_back(fl);
                }
        }

        std::vector<Weight> wlist;
        wlist.reserve(sources.size());
        for (const auto& [w, _] : sources) wlist.push_back(w);

        /* Budget check: elimination cost is proportional to block cells. */
        std::uint64_t step_work = 0;
        for (const auto& [w, cols] : sources) {
            auto it = targets.find(w);
            std::uint64_t nrows = it == targets.end() ? 0 : it->second.size();
            step_work += std::max<std::uint64_t>(nrows, 1) * cols.size();
        }
        if (opts.work_budget && m > 1 && work_done + step_work > opts.work_budget) break;
        work_done += step_work;

        /* Boundary blocks are assembled serially (the straightening memo is
           shared), then eliminated weight by weight in parallel. */
        std::vector<FpMatrix> blocks;
        blocks.reserve(wlist.size());
        for (const auto& w : wlist) {
            const auto& cols = sources[w];
            auto it = targets.find(w);
            std::size_t nrows = it == targets.end() ? 0 : it->second.size();
            bool dense = opts.prefer_dense || (nrows <= 512 && cols.size() <= 512);
            FpMatrix b = dense ? FpMatrix::make_dense(nrows, cols.size(), f)
                               : FpMatrix::make_sparse(nrows, cols.size(), f);
            for (std::size_t cidx = 0; cidx < cols.size(); ++cidx)
                for (const auto& [fl, c] : boundary(cols[cidx])) {
                    auto pos = target_pos.find(fl);
                    NILCOH_ASSERT(pos != target_pos.end() && nrows > pos->second,
                                  "resolution: boundary does not preserve weight");
                    b.set(pos->second, cidx, c);
                }
            blocks.push_back(std::move(b));
        }

        std::vector<std::vector<FlatVec>> kernel_of(wlist.size());
#pragma omp parallel for schedule(dynamic)
        for (std::size_t wi = 0; wi < wlist.size(); ++wi) {
            const auto& cols = sources.at(wlist[wi]);
            for (const auto& k : kernel_basis(blocks[wi])) {
                FlatVec v;
                for (std::size_t cidx = 0; cidx < cols.size(); ++cidx)
                    if (k[cidx]) v.push_back({cols[cidx], k[cidx]});
                kernel_of[wi].push_back(std::move(v));
            }
        }
        blocks.clear();

        WeightMap<std::size_t> windex;
        for (std::size_t wi = 0; wi < wlist.size(); ++wi) windex[wlist[wi]] = wi;

        /* Non-minimal span I*K at weight w: generators times kernel vectors
           from lower weights.  Products touch the memo, so they are formed
           serially; the per-weight echelon work then runs in parallel. */
        std::vector<std::vector<FlatVec>> span_of(wlist.size());
        for (std::size_t wi = 0; wi < wlist.size(); ++wi)
            for (std::size_t j = 0; j < d; ++j) {
                auto it = windex.find(weight_sub(wlist[wi], gen_weight[j]));
                if (it == windex.end()) continue;
                for (const auto& kv : kernel_of[it->second])
                    span_of[wi].push_back(generator_times_flat(u, j, kv));
            }

        std::vector<StepOutcome> outcome(wlist.size());
#pragma omp parallel for schedule(dynamic)
        for (std::size_t wi = 0; wi < wlist.size(); ++wi) {
            const auto& cols = sources.at(wlist[wi]);
            std::unordered_map<std::uint64_t, std::size_t> cpos;
            for (std::size_t cidx = 0; cidx < cols.size(); ++cidx) cpos[cols[cidx]] = cidx;
            auto densify = [&](const FlatVec& v, std::vector<Fp>& out) -> bool {
                out.assign(cols.size(), 0);
                for (const auto& [fl, c] : v) {
                    auto it = cpos.find(fl);
                    if (it == cpos.end()) return false;
                    out[it->second] = c;
                }
                return true;
            };
            Echelon ech(f);
            std::vector<Fp> row;
            for (const auto& sv : span_of[wi]) {
                if (!densify(sv, row)) {
                    outcome[wi].error = "resolution: I*K span leaves its weight block";
                    break;
                }
                ech.insert(row);
            }
            if (!outcome[wi].error.empty()) continue;
            for (const auto& kv : kernel_of[wi]) {
                densify(kv, row);
                if (!ech.insert(row)) continue;
                /* The inserted residue is a new minimal generator. */
                FlatVec img;
                for (std::size_t cidx = 0; cidx < cols.size(); ++cidx)
                    if (ech.rows.back()[cidx]) img.push_back({cols[cidx], ech.rows.back()[cidx]});
                for (const auto& [fl, c] : img)
                    if (fl % udim == 0) {
                        outcome[wi].error = "resolution: minimality violated (unit coefficient)";
                        break;
                    }
                if (!outcome[wi].error.empty()) break;
                outcome[wi].new_gens.push_back({wlist[wi], std::move(img)});
            }
            if (outcome[wi].error.empty() && ech.rows.size() != kernel_of[wi].size())
                outcome[wi].error = "resolution: exactness rank count failed";
        }

        std::vector<FreeGenerator> layer;
        for (std::size_t wi = 0; wi < wlist.size(); ++wi) {
            NILCOH_ASSERT(outcome[wi].error.empty(), outcome[wi].error);
            for (auto& g : outcome[wi].new_gens) layer.push_back(std::move(g));
        }

        /* Independent d∘d = 0 check on every accepted generator. */
        for (const auto& g : layer) {
            std::map<std::uint64_t, Fp> acc;
            for (const auto& [fl, c] : g.image)
                for (const auto& [fl2, c2] : boundary(fl)) {
                    Fp& cell = acc[fl2];
                    cell = f.add(cell, f.mul(c, c2));
                }
            for (const auto& [idx, c] : acc)
                NILCOH_ASSERT(c == 0, "resolution: d∘d != 0");
        }

        r.gens.push_back(std::move(layer));
        r.degree_reached = m;
        if (m < opts.early_stop_betti.size() && r.gens[m].size() != opts.early_stop_betti[m])
            break;
    }

    r.complete = (r.degree_reached == opts.max_degree);
    if (!opts.cache_dir.empty()) save_cache(r, opts);
    return r;
}

bool ExtClass::is_zero() const {
    for (Fp c : functional)
        if (c) return false;
    return true;
}

std::vector<ExtClass> ext_generators(const MinimalResolution& r, std::size_t m) {
    if (m > r.degree_reached)
        throw input_error("ext_generators: degree " + std::to_string(m) +
                          " beyond computed resolution (degree_reached = " +
                          std::to_string(r.degree_reached) + ")");
    std::vector<ExtClass> out;
    for (std::size_t t = 0; t < r.gens[m].size(); ++t) {
        ExtClass c{m, r.gens[m][t].weight, std::vector<Fp>(r.gens[m].size(), 0)};
        c.functional[t] = 1;
        out.push_back(std::move(c));
    }
    return out;
}

ExtClass symmetric_generator(const MinimalResolution& r, const Weight& gamma) {
    Weight target = weight_scale(static_cast<int>(r.env.field().p()), gamma);
    if (r.degree_reached < 2) throw input_error("symmetric_generator: resolution not computed to degree 2");
    std::vector<std::size_t> hits;
    for (std::size_t t = 0; t < r.gens[2].size(); ++t)
        if (r.gens[2][t].weight == target) hits.push_back(t);
    if (hits.empty())
        throw input_error("symmetric_generator: no degree-2 class of weight p*" + weight_to_string(gamma));
    if (hits.size() > 1)
        throw input_error("symmetric_generator: weight p*" + weight_to_string(gamma) +
                          " is ambiguous in degree 2");
    ExtClass c{2, target, std::vector<Fp>(r.gens[2].size(), 0)};
    c.functional[hits[0]] = 1;
    return c;
}

ExtClass yoneda_product(const MinimalResolution& r, const ExtClass& x, const ExtClass& y) {
    const UAlgebra& u = r.env;
    const std::uint64_t udim = u.dimension();
    const PrimeField& f = u.field();
    const std::size_t a = x.degree, b = y.degree;
    if (a + b > r.degree_reached)
        throw input_error("yoneda_product: total degree " + std::to_string(a + b) +
                          " beyond computed resolution");
    NILCOH_ASSERT(x.functional.size() == r.gens[a].size() && y.functional.size() == r.gens[b].size(),
                  "yoneda_product: functional length mismatch");
    for (std::size_t t = 0; t < r.gens[b].size(); ++t)
        if (y.functional[t] && r.gens[b][t].weight != y.weight)
            throw input_error("yoneda_product: right factor is not weight homogeneous");

    std::vector<Weight> mono_weight(udim);
    for (std::uint64_t i = 0; i < udim; ++i)
        mono_weight[i] = u.monomial_weight(static_cast<std::uint32_t>(i));

    /* Chain map lift phi_i : F_{b+i} -> F_i determined by generator values;
       phi_0 sends g_t to y(g_t) * 1. */
    std::vector<std::vector<FlatVec>> phi(a + 1);
    phi[0].resize(r.gens[b].size());
    for (std::size_t t = 0; t < r.gens[b].size(); ++t)
        if (y.functional[t]) phi[0][t] = {{0, y.functional[t]}};

    struct Block {
        std::vector<std::uint64_t> cols;
        std::unordered_map<std::uint64_t, std::size_t> row_pos;
        std::size_t nrows = 0;
        FpMatrix mat{0, 0, PrimeField(3)};
    };
    std::map<std::pair<std::size_t, Weight>, Block> block_cache;

    auto block_for = [&](std::size_t level, const Weight& w) -> Block& {
        auto key = std::make_pair(level, w);
        auto it = block_cache.find(key);
        if (it != block_cache.end()) return it->second;
        Block blk;
        for (std::size_t t = 0; t < r.gens[level].size(); ++t)
            for (std::uint64_t i = 0; i < udim; ++i)
                if (weight_add(r.gens[level][t].weight, mono_weight[i]) == w)
                    blk.cols.push_back(t * udim + i);
        if (level >= 1) {
            for (std::size_t t = 0; t < r.gens[level - 1].size(); ++t)
                for (std::uint64_t i = 0; i < udim; ++i) {
                    std::uint64_t fl = t * udim + i;
                    if (weight_add(r.gens[level - 1][t].weight, mono_weight[i]) == w)
                        blk.row_pos[fl] = blk.nrows++;
                }
        } else {
            if (weight_is_zero(w)) blk.row_pos[0] = blk.nrows++;
        }
        blk.mat = FpMatrix::make_sparse(blk.nrows, blk.cols.size(), f);
        for (std::size_t cidx = 0; cidx < blk.cols.size(); ++cidx) {
            /* Boundary of a flat coordinate of F_level. */
            std::uint64_t fl = blk.cols[cidx];
            std::uint64_t t = fl / udim;
            auto midx = static_cast<std::uint32_t>(fl % udim);
            FlatVec img;
            if (level == 0) {
                img = midx == 0 ? FlatVec{{0, 1}} : FlatVec{};
            } else {
                img = monomial_times_flat(u, midx, r.gens[level][t].image);
            }
            for (const auto& [f2, c] : img) {
                auto pos = blk.row_pos.find(f2);
                NILCOH_ASSERT(pos != blk.row_pos.end(), "yoneda_product: boundary left its weight block");
                blk.mat.set(pos->second, cidx, c);
            }
        }
        return block_cache.emplace(key, std::move(blk)).first->second;
    };

    for (std::size_t i = 1; i <= a; ++i) {
        phi[i].resize(r.gens[b + i].size());
        for (std::size_t t = 0; t < r.gens[b + i].size(); ++t) {
            /* rhs = phi_{i-1}(boundary of g_t). */
            std::map<std::uint64_t, Fp> acc;
            for (const auto& [fl, c] : r.gens[b + i][t].image) {
                std::uint64_t s = fl / udim;
                auto midx = static_cast<std::uint32_t>(fl % udim);
                if (phi[i - 1][s].empty()) continue;
                for (const auto& [f2, c2] : monomial_times_flat(u, midx, phi[i - 1][s])) {
                    Fp& cell = acc[f2];
                    cell = f.add(cell, f.mul(c, c2));
                }
            }
            FlatVec rhs = to_flat(acc);
            if (rhs.empty()) continue;  // phi value 0
            Weight w = weight_sub(r.gens[b + i][t].weight, y.weight);
            Block& blk = block_for(i, w);
            std::vector<Fp> rhs_dense(blk.nrows, 0);
            for (const auto& [f2, c] : rhs) {
                auto pos = blk.row_pos.find(f2);
                NILCOH_ASSERT(pos != blk.row_pos.end(), "yoneda_product: rhs outside its weight block");
                rhs_dense[pos->second] = c;
            }
            auto sol = solve(blk.mat, rhs_dense);
            NILCOH_ASSERT(sol.has_value(), "yoneda_product: chain map lift failed");
            FlatVec val;
            for (std::size_t cidx = 0; cidx < blk.cols.size(); ++cidx)
                if ((*sol)[cidx]) val.push_back({blk.cols[cidx], (*sol)[cidx]});
            phi[i][t] = std::move(val);
        }
    }

    ExtClass out{a + b, weight_add(x.weight, y.weight), std::vector<Fp>(r.gens[a + b].size(), 0)};
    for (std::size_t t = 0; t < r.gens[a + b].size(); ++t) {
        Fp v = 0;
        for (const auto& [fl, c] : phi[a][t])
            if (fl % udim == 0) v = f.add(v, f.mul(x.functional[fl / udim], c));
        out.functional[t] = v;
        if (v)
            NILCOH_ASSERT(r.gens[a + b][t].weight == out.weight,
                          "yoneda_product: weight additivity violated");
    }
    return out;
}

bool annihilator_probe(const MinimalResolution& r, const ExtClass& x, const ExtClass& s) {
    return yoneda_product(r, s, x).is_zero();
}

}  // namespace nilcoh
