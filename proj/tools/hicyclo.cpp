#include "hicyclo/combinatorics.hpp"
#include "hicyclo/derivations.hpp"
#include "hicyclo/dihedral.hpp"
#include "hicyclo/modular.hpp"
#include "hicyclo/mzv.hpp"
#include "hicyclo/numerics.hpp"
#include "hicyclo/realization.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hicyclo;

namespace {

struct OutputSink {
    std::string path;
    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << '\n';
            return;
        }
        std::ofstream f(path);
        f << text;
        if (!text.empty() && text.back() != '\n') f << '\n';
    }
};

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

int run_dims_zeta(int max_weight, const std::string& format, const OutputSink& sink) {
    std::string text;
    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (int k = 0; k <= max_weight; ++k) j.push_back({{"weight", k}, {"dim", mzv::zeta_dim_bound(k)}});
        text = j.dump();
    } else {
        text = "# weight\tdim_bound\n";
        for (int k = 0; k <= max_weight; ++k)
            text += std::to_string(k) + "\t" + std::to_string(mzv::zeta_dim_bound(k)) + "\n";
    }
    sink.write(text);
    return 0;
}

int run_dims_lie(const std::vector<int>& degrees, int max_degree, const std::string& format,
                 const OutputSink& sink) {
    std::string text;
    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (int k = 1; k <= max_degree; ++k) j.push_back({{"degree", k}, {"dim", mzv::witt_dims(degrees, k)}});
        text = j.dump();
    } else {
        text = "# degree\tdim\n";
        for (int k = 1; k <= max_degree; ++k)
            text += std::to_string(k) + "\t" + std::to_string(mzv::witt_dims(degrees, k)) + "\n";
    }
    sink.write(text);
    return 0;
}

int run_dims_ktheory(int level, int max_degree, const std::string& format, const OutputSink& sink) {
    std::string text;
    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (int n = 1; n <= max_degree; ++n) j.push_back({{"degree", n}, {"dim", mzv::ktheory_dims(level, n)}});
        text = j.dump();
    } else {
        text = "# degree\tdim\n";
        for (int n = 1; n <= max_degree; ++n)
            text += std::to_string(n) + "\t" + std::to_string(mzv::ktheory_dims(level, n)) + "\n";
    }
    sink.write(text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hicyclo: double shuffle relations, dihedral Lie coalgebras of roots of unity,\n"
                 "modular complexes and their Voronoi realization, with exact rational linear algebra"};
    app.require_subcommand(1);

    int threads = 0;
    std::string format = "tsv";
    std::string output;
    unsigned seed = 1;
    app.add_option("--threads", threads, "worker threads (default: all cores)");
    app.add_option("--format", format, "output format: tsv | json")->check(CLI::IsMember({"tsv", "json"}));
    app.add_option("--output", output, "write output to this file instead of stdout");
    app.add_option("--seed", seed, "seed for randomized stability checks");

    // ---- dims ----
    auto* dims = app.add_subcommand("dims", "closed-form dimension tables");
    auto* dzeta = dims->add_subcommand("zeta", "d_k = d_{k-2} + d_{k-3} bounds for multiple zeta values");
    int max_weight = 12;
    dzeta->add_option("--max-weight", max_weight, "last weight to print");
    auto* dlie = dims->add_subcommand("lie", "graded dims of a free Lie algebra (Witt formula)");
    std::string degree_list = "3,5,7,9,11";
    int max_degree = 12;
    dlie->add_option("--degrees", degree_list, "generator degrees, comma separated");
    dlie->add_option("--max-degree", max_degree, "last degree to print");
    auto* dk = dims->add_subcommand("ktheory", "K_{2n-1}(Z[zeta_N, 1/N]) ranks");
    int klevel = 1, kmax = 8;
    dk->add_option("--level", klevel, "cyclotomic level N");
    dk->add_option("--max-degree", kmax, "last degree to print");

    // ---- dihedral ----
    auto* dih = app.add_subcommand("dihedral", "dihedral Lie coalgebra of mu_N");
    int level = 1, weight = 2, depth = 1;
    bool hat = false, no_distribution = false, no_dihedral_m1 = false;
    for (auto* sc : {dih}) {
        sc->add_option("--level", level, "level N");
        sc->add_option("--weight", weight, "weight w");
        sc->add_option("--depth", depth, "depth m");
        sc->add_flag("--hat", hat, "keep the bidegree-(1,1) generator I_1(e:e)");
        sc->add_flag("--no-distribution", no_distribution, "drop distribution relations");
        sc->add_flag("--no-dihedral-m1", no_dihedral_m1, "drop the depth-1 dihedral rows");
    }
    auto* ddim = dih->add_subcommand("dim", "dimension of D_{w,m}(mu_N)");
    auto* dcomplex = dih->add_subcommand("complex", "weight-w depth-m standard cochain complex");
    auto* dcob = dih->add_subcommand("cobracket", "export the cobracket or relation matrix");
    std::string matrix_kind = "cobracket";
    std::string sidecar;
    dcob->add_option("--matrix", matrix_kind, "cobracket | relations")
        ->check(CLI::IsMember({"cobracket", "relations"}));
    dcob->add_option("--sidecar", sidecar, "write the column -> generator map to this file");

    // ---- modular ----
    auto* mod = app.add_subcommand("modular", "rank-m modular complexes and coinvariants");
    int rank = 2;
    mod->add_option("--rank", rank, "lattice rank m");
    mod->add_option("--level", level, "level N (1 or prime)");
    mod->add_option("--weight", weight, "coefficient weight w");
    auto* mcomplex = mod->add_subcommand("complex", "tensor complex report");
    auto* mcompare = mod->add_subcommand("compare", "termwise comparison against the hat dihedral complex");
    int compare_max_weight = 14;
    mcompare->add_option("--max-weight", compare_max_weight, "largest even weight");
    auto* mmu = mod->add_subcommand("mu", "chain-map and surjectivity checks for the mu map");

    // ---- realize ----
    auto* real = app.add_subcommand("realize", "tree realization into Voronoi chains");
    real->add_option("--rank", rank, "lattice rank m");
    auto* rchain = real->add_subcommand("chain", "psi of the standard extended basis");
    auto* rcheck = real->add_subcommand("check", "relation images vanish; rank-3 simplex boundary");

    // ---- derivations ----
    auto* der = app.add_subcommand("derivations", "cyclic words and special derivations");
    der->add_option("--level", level, "level N");
    der->add_option("--max-weight", max_weight, "weight cutoff");
    auto* dcheck = der->add_subcommand("check", "specialness, equivariance and bracket checks");

    // ---- num ----
    auto* num = app.add_subcommand("num", "high-precision numerics");
    auto* neval = num->add_subcommand("eval", "evaluate a multiple polylogarithm");
    std::string comp_str = "2", args_str;
    long digits = 30;
    neval->add_option("--comp", comp_str, "composition n_1,..,n_m");
    neval->add_option("--args", args_str, "arguments as residues a_1,..,a_m (zeta_N^a)");
    neval->add_option("--level", level, "level N");
    neval->add_option("--digits", digits, "requested decimal digits");
    auto* nverify = num->add_subcommand("verify", "verify an identity certificate");
    std::string cert_path;
    nverify->add_option("--cert", cert_path, "certificate JSON file")->required();
    nverify->add_option("--digits", digits, "requested decimal digits");

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    OutputSink sink{output};
    dihedral::Options opts;
    opts.hat = hat;
    opts.distribution = !no_distribution;
    opts.dihedral_m1 = !no_dihedral_m1;
    opts.threads = threads;

    try {
        if (dzeta->parsed()) return run_dims_zeta(max_weight, format, sink);
        if (dlie->parsed()) return run_dims_lie(parse_int_list(degree_list), max_degree, format, sink);
        if (dk->parsed()) return run_dims_ktheory(klevel, kmax, format, sink);

        if (ddim->parsed()) {
            sink.write(std::to_string(dihedral::dim_D(level, weight, depth, opts)));
            return 0;
        }
        if (dcomplex->parsed()) {
            dihedral::Context ctx(level, opts);
            auto rep = dihedral::cochain_complex(ctx, weight, depth);
            nlohmann::json j;
            j["level"] = level;
            j["weight"] = weight;
            j["depth"] = depth;
            j["term_dims"] = rep.term_dims;
            j["cohomology"] = rep.cohomology;
            j["euler"] = rep.euler();
            sink.write(j.dump());
            return 0;
        }
        if (dcob->parsed()) {
            SparseMatrixQ mat;
            if (matrix_kind == "relations") {
                mat = dihedral::relation_matrix(level, weight, depth, opts);
            } else {
                dihedral::Context ctx(level, opts);
                mat = dihedral::cobracket_matrix(ctx, weight, depth);
            }
            if (!sidecar.empty()) {
                std::ofstream f(sidecar);
                f << dihedral::generator_sidecar_json(level, weight, depth) << "\n";
            }
            sink.write(mat.to_json());
            return 0;
        }

        if (mcomplex->parsed()) {
            auto tc = modular::tensor_complex(rank, level, weight);
            sink.write(modular::complex_report_json(tc));
            return 0;
        }
        if (mcompare->parsed()) {
            dihedral::Options hopts = opts;
            hopts.hat = true;
            std::string text = "# weight\tmodular_dims\tdihedral_dims\teuler\tmatch\n";
            bool all_ok = true;
            for (int w = 2; w <= compare_max_weight; w += 2) {
                auto tc = modular::tensor_complex(2, level, w);
                dihedral::Context ctx(level, hopts);
                auto rep = dihedral::cochain_complex(ctx, w, 2);
                bool ok = tc.term_dims[0] == rep.term_dims[0] && tc.term_dims[1] == rep.term_dims[1] &&
                          tc.euler == rep.euler();
                all_ok = all_ok && ok;
                text += std::to_string(w) + "\t" + std::to_string(tc.term_dims[0]) + "," +
                        std::to_string(tc.term_dims[1]) + "\t" + std::to_string(rep.term_dims[0]) + "," +
                        std::to_string(rep.term_dims[1]) + "\t" + std::to_string(tc.euler) + "\t" +
                        (ok ? "yes" : "NO") + "\n";
            }
            sink.write(text);
            return all_ok ? 0 : 1;
        }
        if (mmu->parsed()) {
            dihedral::Context ctx(level, opts);
            bool chain = modular::mu_chain_map_ok(ctx, level);
            long rk = modular::mu_image_rank(ctx, rank, level);
            long dim = ctx.quotient(rank, rank).dim();
            nlohmann::json j;
            j["chain_map"] = chain;
            j["image_rank"] = rk;
            j["target_dim"] = dim;
            j["surjective"] = (rk == dim);
            sink.write(j.dump());
            return (chain && rk == dim) ? 0 : 1;
        }

        if (rchain->parsed()) {
            std::vector<realization::Vec> basis;
            for (int i = 0; i < rank; ++i) {
                realization::Vec e(rank, 0);
                e[i] = 1;
                basis.push_back(e);
            }
            basis.push_back(realization::Vec(rank, -1));
            sink.write(realization::chain_str(realization::psi_top(basis)));
            return 0;
        }
        if (rcheck->parsed()) {
            bool ok = true;
            std::vector<modular::Vec> std_tuple;
            for (int i = 0; i < rank; ++i) {
                modular::Vec e(rank, 0);
                e[i] = 1;
                std_tuple.push_back(e);
            }
            for (const auto& rel : modular::block_relations(std_tuple, false))
                ok = ok && realization::relation_image(rel).is_zero();
            std::string text = std::string("first_shuffle_images_zero\t") + (ok ? "yes" : "NO") + "\n";
            sink.write(text);
            return ok ? 0 : 1;
        }

        if (dcheck->parsed()) {
            bool ok = true;
            // kappa specialness over all words up to the cutoff
            std::vector<int> cur;
            std::function<void()> gen = [&]() {
                if (!cur.empty()) {
                    CyclicWord w{level, cur};
                    if (!derivations::special_defect(derivations::kappa(w)).is_zero()) ok = false;
                }
                if (static_cast<int>(cur.size()) == std::min(max_weight, 5)) return;
                for (int l = 0; l <= level; ++l) {
                    cur.push_back(l);
                    gen();
                    cur.pop_back();
                }
            };
            gen();
            sink.write(std::string("kappa_special\t") + (ok ? "yes" : "NO"));
            return ok ? 0 : 1;
        }

        if (neval->parsed()) {
            mzv::ZSymbol z;
            z.level = level;
            z.comp = parse_int_list(comp_str);
            z.args = args_str.empty() ? std::vector<int>(z.comp.size(), 0) : parse_int_list(args_str);
            auto r = numerics::eval_polylog(z, digits);
            nlohmann::json j;
            j["re"] = r.value.re.str(static_cast<size_t>(digits + 5));
            j["im"] = r.value.im.str(static_cast<size_t>(digits + 5));
            j["tail_bound"] = r.tail_bound.str(10);
            j["terms_used"] = r.terms_used;
            sink.write(j.dump());
            return 0;
        }
        if (nverify->parsed()) {
            std::ifstream f(cert_path);
            if (!f) {
                std::cerr << "cannot open certificate: " << cert_path << "\n";
                return 2;
            }
            std::stringstream ss;
            ss << f.rdbuf();
            auto cert = mzv::Certificate::from_json(ss.str());
            auto r = numerics::verify_certificate(cert, digits);
            sink.write(numerics::verify_report_json(r));
            return r.pass ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const numerics::eval_error& e) {
        std::cerr << "evaluation error: " << e.what() << "\n";
        return 2;
    } catch (const dimension_overflow& e) {
        std::cerr << "matrix ceiling: " << e.what() << "\n";
        return 2;
    }

    std::cerr << "no subcommand matched\n";
    return 2;
}
