#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilcoh/ce_cohomology.hpp"
#include "nilcoh/jordan_modules.hpp"
#include "nilcoh/lie_algebra.hpp"
#include "nilcoh/obstruction_kostant.hpp"
#include "nilcoh/resolution.hpp"
#include "nilcoh/spectral_analysis.hpp"

using namespace nilcoh;
using nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::string algebra;
    std::string file;
    std::uint32_t p = 0;
    std::size_t max_degree = 0;  // 0 = command default
    std::string format = "text";
    std::string cache_dir;
    bool force = false;
};

void add_source_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--algebra", o.algebra, "catalogue name, see `catalogue`");
    cmd->add_option("--file", o.file, "algebra definition file (JSON)");
    cmd->add_option("--p", o.p, "field characteristic (odd prime)");
}

void add_format_flag(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

LieAlgebra load_algebra(const CommonOpts& o) {
    if (!o.file.empty()) {
        if (!o.algebra.empty())
            throw input_error("pass either --algebra or --file, not both");
        LieAlgebra a = algebra_from_file(o.file);
        if (o.p && o.p != a.field.p())
            throw input_error("--p disagrees with the prime in the definition file");
        return a;
    }
    if (o.algebra.empty()) throw input_error("no algebra given: pass --algebra or --file");
    if (!o.p) throw input_error("catalogue algebras need --p");
    return catalogue(o.algebra, o.p);
}

std::string default_cache_dir(const CommonOpts& o) {
    if (!o.cache_dir.empty()) return o.cache_dir;
    const char* env = std::getenv("NILCOH_CACHE_DIR");
    return env ? std::string(env) : std::string();
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json weight_json(const Weight& w) { return ordered_json(w); }

ordered_json weights_json(const std::vector<Weight>& ws) {
    ordered_json arr = ordered_json::array();
    for (const auto& w : ws) arr.push_back(weight_json(w));
    return arr;
}

std::string poly_to_string(const std::vector<long long>& f) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (!f[k]) continue;
        long long c = f[k];
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        long long mag = c < 0 ? -c : c;
        if (mag != 1 || k == 0) os << mag;
        if (k == 1) os << "t";
        if (k > 1) os << "t^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

/* ---- catalogue ---- */

int run_catalogue(const CommonOpts& o) {
    auto entries = catalogue_list();
    if (o.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& e : entries) {
            ordered_json j;
            j["name"] = e.name;
            j["min_p"] = e.min_p;
            j["dim"] = e.dim_note;
            j["description"] = e.description;
            arr.push_back(j);
        }
        emit(arr);
        return 0;
    }
    for (const auto& e : entries) {
        std::ostringstream line;
        line << e.name;
        for (std::size_t i = e.name.size(); i < 34; ++i) line << ' ';
        line << "p >= " << e.min_p << "   " << e.dim_note << "   " << e.description;
        std::cout << line.str() << "\n";
    }
    return 0;
}

/* ---- lie-cohomology ---- */

int run_lie_cohomology(const CommonOpts& o) {
    LieAlgebra a = load_algebra(o);
    if (a.dim > 14 && !o.force)
        throw budget_error("ordinary cohomology of a dimension-" + std::to_string(a.dim) +
                           " algebra needs 2^" + std::to_string(a.dim) +
                           " cochains; rerun with --force");
    auto h = cohomology(a);
    auto table = h.weight_table();
    if (o.format == "json") {
        ordered_json j;
        j["algebra"] = a.name;
        j["p"] = a.field.p();
        j["dim"] = a.dim;
        j["betti"] = h.betti;
        ordered_json rows = ordered_json::array();
        for (std::size_t n = 0; n < table.size(); ++n) {
            ordered_json row;
            row["degree"] = n;
            row["weights"] = weights_json(table[n]);
            rows.push_back(row);
        }
        j["table"] = rows;
        emit(j);
        return 0;
    }
    std::cout << "algebra " << a.name << ", p = " << a.field.p() << ", dim " << a.dim << "\n";
    for (std::size_t n = 0; n < table.size(); ++n) {
        std::cout << "H^" << n << ": dim " << h.betti[n] << ":";
        for (const auto& w : table[n]) std::cout << " " << weight_to_string(w);
        std::cout << "\n";
    }
    return 0;
}

/* ---- restricted ---- */

int run_restricted(const CommonOpts& o) {
    LieAlgebra a = load_algebra(o);
    std::size_t n = o.max_degree ? o.max_degree : 2 * a.dim;

    std::uint64_t udim = 1;
    for (std::size_t t = 0; t < a.dim; ++t) {
        udim *= a.field.p();
        if (udim >= (1ull << 31))
            throw input_error("restricted envelope exceeds the monomial index space");
    }

    ResolutionOptions opts;
    opts.max_degree = n;
    opts.cache_dir = default_cache_dir(o);
    opts.force = o.force;

    auto h = cohomology(a);
    auto page = e2_page(h, n);
    opts.early_stop_betti = page.totals;
    auto r = minimal_resolution(UAlgebra(a), opts);
    std::size_t reach = std::min(r.degree_reached, n);
    auto rep = collapse_check(page, r, reach);
    auto rp = rational_poincare(rep.betti, a.dim);
    auto v = cm_verdict(a, n, opts);

    if (o.format == "json") {
        ordered_json j;
        j["algebra"] = a.name;
        j["p"] = a.field.p();
        j["N"] = n;
        j["env_dimension"] = udim;
        j["degree_computed"] = reach;
        j["betti"] = rep.betti;
        j["e2_totals"] = rep.e2_totals;
        ordered_json col;
        col["all_equal"] = rep.all_equal;
        col["first_deficit"] =
            rep.first_deficit ? ordered_json(*rep.first_deficit) : ordered_json(nullptr);
        col["notes"] = rep.notes;
        j["collapse"] = col;
        ordered_json poi;
        poi["numerator"] = rp.numerator;
        poi["denominator_exponent"] = rp.denominator_exponent;
        poi["terminates"] = rp.terminates;
        poi["functional_equation"] =
            rp.terminates && functional_equation_check(rp.numerator, rp.denominator_exponent);
        j["poincare"] = poi;
        j["verdict"] = verdict_to_json(v);
        emit(j);
        return 0;
    }

    std::cout << "algebra " << a.name << ", p = " << a.field.p() << ", N = " << n << "\n";
    std::cout << "dim u(n) = " << udim << "\n";
    std::cout << "betti    ";
    for (auto b : rep.betti) std::cout << " " << b;
    std::cout << "\ne2 totals";
    for (auto t : rep.e2_totals) std::cout << " " << t;
    std::cout << "\n";
    for (const auto& note : rep.notes) std::cout << note << "\n";
    if (rp.terminates) {
        std::cout << "f = " << poly_to_string(rp.numerator) << ", denominator (1 - t^2)^"
                  << rp.denominator_exponent << "\n";
        std::cout << "functional equation t^" << rp.denominator_exponent << " f(1/t) = f(t): "
                  << (functional_equation_check(rp.numerator, rp.denominator_exponent)
                          ? "holds"
                          : "fails")
                  << "\n";
    } else {
        std::cout << "Poincare numerator not terminated within computed range: "
                  << poly_to_string(rp.numerator) << " ...\n";
    }
    std::cout << "verdict: " << v.status << "\n";
    for (const auto& e : v.evidence) std::cout << "  - " << e << "\n";
    return 0;
}

/* ---- kostant ---- */

int run_kostant(const std::string& type, const CommonOpts& o) {
    auto t = kostant_table(RootSystem::make(type));
    if (o.format == "json") {
        ordered_json j;
        j["type"] = t.type;
        j["rank"] = t.rank;
        ordered_json rows = ordered_json::array();
        for (std::size_t n = 0; n < t.rows.size(); ++n) {
            ordered_json row;
            row["degree"] = n;
            row["weights"] = weights_json(t.rows[n]);
            rows.push_back(row);
        }
        j["rows"] = rows;
        emit(j);
        return 0;
    }
    std::cout << "root system " << t.type << ", rank " << t.rank << "\n";
    for (std::size_t n = 0; n < t.rows.size(); ++n) {
        std::cout << "degree " << n << ": dim " << t.rows[n].size() << ":";
        for (const auto& w : t.rows[n]) std::cout << " " << weight_to_string(w);
        std::cout << "\n";
    }
    return 0;
}

/* ---- obstructions ---- */

int run_obstructions(const std::string& type, const CommonOpts& o) {
    std::vector<std::vector<Weight>> table;
    std::vector<Weight> basis;
    std::string source;
    if (!type.empty()) {
        if (!o.algebra.empty() || !o.file.empty())
            throw input_error("pass either --type or an algebra source, not both");
        if (!o.p) throw input_error("obstruction scan needs --p");
        auto r = RootSystem::make(type);
        table = kostant_table(r).rows;
        basis = r.positive_roots;
        source = type;
    } else {
        LieAlgebra a = load_algebra(o);
        table = cohomology(a).weight_table();
        for (const auto& w : a.basis_weights) basis.push_back(weight_scale(-1, w));
        source = a.name;
    }
    std::size_t cap = o.max_degree ? o.max_degree : table.size() - 1;
    std::uint32_t p = o.p;
    auto rep = splitting_obstructions(table, p, basis, cap);

    if (o.format == "json") {
        ordered_json j;
        j["source"] = source;
        j["p"] = rep.p;
        j["degree_cap"] = rep.degree_cap;
        j["normalization"] = rep.normalization;
        j["obstructed"] = rep.obstructed;
        ordered_json sols = ordered_json::array();
        for (const auto& s : rep.solutions) {
            ordered_json sj;
            sj["gamma1"] = weight_json(s.gamma1);
            sj["a1"] = s.a1;
            sj["gamma2"] = weight_json(s.gamma2);
            sj["a2"] = s.a2;
            sj["gamma3"] = weight_json(s.gamma3);
            sj["a3"] = s.a3;
            sj["sigma"] = weights_json(s.sigma);
            sj["condition1"] = s.condition1;
            sj["condition2"] = s.condition2;
            sols.push_back(sj);
        }
        j["solutions"] = sols;
        emit(j);
        return 0;
    }

    std::cout << "source " << source << ", p = " << p << ", degree cap " << cap << "\n";
    std::cout << rep.normalization << "\n";
    std::size_t full = 0;
    for (const auto& s : rep.solutions)
        if (s.condition2) ++full;
    std::cout << "verdict: " << (rep.obstructed ? "obstructed" : "unobstructed") << " ("
              << rep.solutions.size() << " weight-equation realizations, " << full
              << " with matching degree)\n";
    for (const auto& s : rep.solutions) {
        std::cout << "  (" << weight_to_string(s.gamma1) << ")[" << s.a1 << "] + ("
                  << weight_to_string(s.gamma2) << ")[" << s.a2 << "] = ("
                  << weight_to_string(s.gamma3) << ")[" << s.a3 << "] + " << p << "*{";
        for (std::size_t i = 0; i < s.sigma.size(); ++i)
            std::cout << (i ? ", " : "") << weight_to_string(s.sigma[i]);
        std::cout << "}   degree " << (s.condition2 ? "matches" : "differs") << "\n";
    }
    return 0;
}

/* ---- jordan ---- */

JordanType parse_partition(const std::vector<std::size_t>& blocks, std::uint32_t p) {
    if (!p) throw input_error("jordan commands need --p");
    JordanType t{blocks, p};
    validate_or_throw(t);
    return t;
}

void emit_jordan(const std::string& op, const ordered_json& inputs, const JordanType& result,
                 const CommonOpts& o) {
    if (o.format == "json") {
        ordered_json j;
        j["op"] = op;
        for (const auto& [k, v] : inputs.items()) j[k] = v;
        j["p"] = result.p;
        j["result"] = result.blocks;
        j["dimension"] = result.dimension();
        j["free_multiplicity"] = free_multiplicity(result);
        emit(j);
        return;
    }
    std::cout << jordan_to_string(result) << " (dim " << result.dimension()
              << ", free multiplicity " << free_multiplicity(result) << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cohomology of restricted envelopes of graded nilpotent Lie algebras"};
    app.require_subcommand(1);

    CommonOpts copt;
    std::string root_type;
    std::vector<std::size_t> part_a, part_b;

    auto* c_cat = app.add_subcommand("catalogue", "list built-in algebras");
    add_format_flag(c_cat, copt);

    auto* c_lie = app.add_subcommand("lie-cohomology", "ordinary cohomology weight table");
    add_source_flags(c_lie, copt);
    add_format_flag(c_lie, copt);
    c_lie->add_flag("--force", copt.force, "allow expensive inputs");

    auto* c_res = app.add_subcommand("restricted",
                                     "restricted cohomology: Betti numbers, collapse, verdict");
    add_source_flags(c_res, copt);
    add_format_flag(c_res, copt);
    c_res->add_option("--max-degree", copt.max_degree, "compare through this degree (default 2*dim)")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
    c_res->add_option("--cache-dir", copt.cache_dir,
                      "resolution cache directory (default $NILCOH_CACHE_DIR)");
    c_res->add_flag("--force", copt.force, "lift the envelope dimension budget");

    auto* c_kos = app.add_subcommand("kostant", "ordinary cohomology of a nilradical from the Weyl group");
    c_kos->add_option("--type", root_type, "root system: A1..A4, B2, G2")->required();
    add_format_flag(c_kos, copt);

    auto* c_obs = app.add_subcommand("obstructions", "ring-splitting obstruction scan");
    c_obs->add_option("--type", root_type, "root system table (Kostant rows)");
    add_source_flags(c_obs, copt);
    add_format_flag(c_obs, copt);
    c_obs->add_option("--max-degree", copt.max_degree, "degree cap (default: top of the table)");

    auto* c_jor = app.add_subcommand("jordan", "Jordan types of k[x]/(x^p)-modules");
    c_jor->require_subcommand(1);
    auto* j_ten = c_jor->add_subcommand("tensor", "type of a (x) b");
    j_ten->add_option("--a", part_a, "first partition, e.g. --a 2,1")
        ->required()
        ->delimiter(',');
    j_ten->add_option("--b", part_b, "second partition")->required()->delimiter(',');
    j_ten->add_option("--p", copt.p, "prime")->required();
    add_format_flag(j_ten, copt);
    auto* j_ext = c_jor->add_subcommand("exterior", "type of the exterior square");
    j_ext->add_option("--a", part_a, "partition")->required()->delimiter(',');
    j_ext->add_option("--p", copt.p, "prime")->required();
    add_format_flag(j_ext, copt);
    auto* j_free = c_jor->add_subcommand("free-multiplicity", "number of size-p blocks");
    j_free->add_option("--a", part_a, "partition")->required()->delimiter(',');
    j_free->add_option("--p", copt.p, "prime")->required();
    add_format_flag(j_free, copt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_cat->parsed()) return run_catalogue(copt);
        if (c_lie->parsed()) return run_lie_cohomology(copt);
        if (c_res->parsed()) return run_restricted(copt);
        if (c_kos->parsed()) return run_kostant(root_type, copt);
        if (c_obs->parsed()) return run_obstructions(root_type, copt);
        if (c_jor->parsed()) {
            if (j_ten->parsed()) {
                auto a = parse_partition(part_a, copt.p);
                auto b = parse_partition(part_b, copt.p);
                ordered_json in;
                in["a"] = a.blocks;
                in["b"] = b.blocks;
                emit_jordan("tensor", in, tensor_type(a, b), copt);
                return 0;
            }
            if (j_ext->parsed()) {
                auto a = parse_partition(part_a, copt.p);
                ordered_json in;
                in["a"] = a.blocks;
                emit_jordan("exterior", in, exterior_square_type(a), copt);
                return 0;
            }
            if (j_free->parsed()) {
                auto a = parse_partition(part_a, copt.p);
                if (copt.format == "json") {
                    ordered_json j;
                    j["op"] = "free_multiplicity";
                    j["a"] = a.blocks;
                    j["p"] = a.p;
                    j["result"] = free_multiplicity(a);
                    emit(j);
                } else {
                    std::cout << free_multiplicity(a) << "\n";
                }
                return 0;
            }
        }
        throw input_error("no command selected");
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
