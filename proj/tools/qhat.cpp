// Command-line frontend: builds bound-quiver algebras, enumerates their
// indecomposables, audits homological structure, verifies tilting data
// and one-point extensions, and drives the built-in regression corpus.
#include "CLI11.hpp"
#include "json.hpp"

#include "qhat/corpus.hpp"
#include "qhat/decompose.hpp"
#include "qhat/opext.hpp"
#include "qhat/tilting.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace qhat;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

struct GlobalOpts {
    std::uint32_t field = 101;
    std::uint64_t seed = 0xA1;
    std::size_t max_modules = 10000;
    std::size_t max_dim = 512;
    bool json = false;
    bool dot = false;
    std::string modules_path;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct LoadedAlgebra {
    AlgebraPtr alg;
    QuiverSpec spec;
};

// Strip the `algebra <name>` reference header of a module file and check
// that it names the algebra it is attached to.
std::string module_file_body(const std::string& text, const std::string& alg_name) {
    std::istringstream in(text);
    std::string line;
    std::ostringstream body;
    bool seen_header = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string kw, name;
        if (!seen_header && (ls >> kw) && kw == "algebra") {
            ls >> name;
            if (name != alg_name)
                throw InputError("module file references algebra '" + name +
                                 "', expected '" + alg_name + "'");
            seen_header = true;
            continue;
        }
        body << line << "\n";
    }
    if (!seen_header)
        throw InputError("module file needs an `algebra <name>` header");
    return body.str();
}

// A corpus id, or a path to a DSL file; optionally merged with a module
// file that reuses the grammar after an algebra-reference header.
LoadedAlgebra load_algebra(const std::string& name, const GlobalOpts& g,
                           const std::string& modules_path = "") {
    std::string text;
    if (is_corpus_id(name)) text = corpus_source(name, g.field);
    else text = read_file(name);
    if (!modules_path.empty()) {
        QuiverSpec head = parse_spec(text);
        text += "\n" + module_file_body(read_file(modules_path), head.name);
    }
    LoadedAlgebra out;
    out.spec = parse_spec(text);
    out.alg = build_algebra(out.spec);
    return out;
}

EnumOptions enum_opts(const GlobalOpts& g) {
    EnumOptions e;
    e.seed = g.seed;
    e.max_modules = g.max_modules;
    e.max_dim = g.max_dim;
    return e;
}

std::string dimvec_str(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

ordered_json homdim_json(const HomDim& d) {
    return d.finite ? ordered_json(d.value) : ordered_json("infinite");
}

int cmd_build(const std::string& name, const GlobalOpts& g, bool emit) {
    LoadedAlgebra la = load_algebra(name, g, g.modules_path);
    if (emit) {
        std::cout << algebra_structure_json(la.alg) << "\n";
        return kExitOk;
    }
    HomDim gd = global_dimension(la.alg);
    if (g.json) {
        ordered_json j;
        j["id"] = la.alg->id();
        j["p"] = la.alg->field().p();
        j["dim"] = la.alg->dim();
        j["vertices"] = la.alg->vertex_count();
        j["radical_dim"] = la.alg->radical().size();
        j["gldim"] = homdim_json(gd);
        j["declared_modules"] = la.spec.modules.size();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "algebra " << la.alg->id() << " over GF("
                  << la.alg->field().p() << ")\n"
                  << "  dimension    " << la.alg->dim() << "\n"
                  << "  vertices     " << la.alg->vertex_count() << "\n"
                  << "  radical dim  " << la.alg->radical().size() << "\n"
                  << "  gl.dim       " << gd.to_string() << "\n"
                  << "  modules      " << la.spec.modules.size() << "\n";
    }
    return kExitOk;
}

int cmd_indec(const std::string& name, const GlobalOpts& g) {
    LoadedAlgebra la = load_algebra(name, g, g.modules_path);
    IndecSet inds = enumerate_indecomposables(la.alg, enum_opts(g));
    if (g.dot) {
        std::cout << ar_quiver_dot(inds);
        return inds.complete ? kExitOk : kExitViolation;
    }
    if (g.json) {
        ordered_json j;
        j["algebra"] = la.alg->id();
        j["complete"] = inds.complete;
        j["count"] = inds.size();
        j["modules"] = ordered_json::array();
        for (std::size_t i = 0; i < inds.size(); ++i) {
            ordered_json row;
            row["id"] = inds.names[i];
            row["dimvec"] = inds.modules[i].dimension_vector();
            row["pd"] = homdim_json(inds.pd[i]);
            row["injdim"] = homdim_json(inds.id[i]);
            row["orbit"] = inds.orbit[i];
            j["modules"].push_back(row);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << inds.size() << " indecomposables over " << la.alg->id()
                  << (inds.complete ? "" : " (INCOMPLETE)") << "\n";
        for (std::size_t i = 0; i < inds.size(); ++i)
            std::cout << "  " << inds.names[i] << "  dim "
                      << dimvec_str(inds.modules[i].dimension_vector()) << "  pd "
                      << inds.pd[i].to_string() << "  id "
                      << inds.id[i].to_string() << "  row " << inds.orbit[i]
                      << "\n";
        for (const auto& note : inds.notes)
            std::cout << "  note: " << note << "\n";
    }
    return inds.complete ? kExitOk : kExitViolation;
}

int cmd_audit(const std::string& name, long m, long n, const GlobalOpts& g) {
    LoadedAlgebra la = load_algebra(name, g, g.modules_path);
    IndecSet inds = enumerate_indecomposables(la.alg, enum_opts(g));
    AuditReport rep = audit_almost_hereditary(inds, m, n);
    if (g.json) {
        std::cout << rep.to_json() << "\n";
    } else {
        std::cout << "audit " << la.alg->id() << " (m,n) = (" << m << "," << n
                  << "), gl.dim = " << rep.gldim.to_string() << "\n";
        for (const auto& c : rep.checks) {
            std::cout << "  [" << c.verdict << "] " << c.name;
            if (!c.witnesses.empty()) {
                std::cout << "  witnesses:";
                for (const auto& w : c.witnesses) std::cout << " " << w;
            }
            if (!c.note.empty()) std::cout << "  (" << c.note << ")";
            std::cout << "\n";
        }
        std::cout << (rep.pass() ? "PASS" : "FAIL") << "\n";
    }
    return rep.pass() ? kExitOk : kExitViolation;
}

int cmd_parts(const std::string& name, long m, long n, const GlobalOpts& g) {
    LoadedAlgebra la = load_algebra(name, g, g.modules_path);
    IndecSet inds = enumerate_indecomposables(la.alg, enum_opts(g));
    if (!inds.complete) {
        std::cerr << "enumeration incomplete; parts are not reliable\n";
        return kExitViolation;
    }
    HomDigraph graph(inds);
    auto l = part_L(inds, graph, pd_at_most(m));
    auto r = part_R(inds, graph, id_at_most(n));
    Trisection t = trisection(inds, graph, m, n);
    auto names_of = [&](const std::set<std::size_t>& s) {
        std::vector<std::string> out;
        for (std::size_t i : s) out.push_back(inds.names[i]);
        return out;
    };
    if (g.json) {
        ordered_json j;
        j["algebra"] = la.alg->id();
        j["m"] = m;
        j["n"] = n;
        j["L"] = names_of(l);
        j["R"] = names_of(r);
        j["trisection"] = {{"left_only", names_of(t.left_only)},
                           {"both", names_of(t.both)},
                           {"right_only", names_of(t.right_only)}};
        j["covers_all"] = t.covers_all;
        j["cross_hom_vanishes"] = t.cross_hom_vanishes;
        std::cout << j.dump(2) << "\n";
    } else {
        auto print_set = [&](const char* tag, const std::set<std::size_t>& s) {
            std::cout << "  " << tag << " (" << s.size() << "):";
            for (std::size_t i : s) std::cout << " " << inds.names[i];
            std::cout << "\n";
        };
        std::cout << "parts of " << la.alg->id() << " at (m,n) = (" << m << ","
                  << n << ")\n";
        print_set("L^m    ", l);
        print_set("R^n    ", r);
        print_set("L only ", t.left_only);
        print_set("L and R", t.both);
        print_set("R only ", t.right_only);
        std::cout << "  union covers ind: " << (t.covers_all ? "yes" : "no")
                  << ", cross-hom vanishes: "
                  << (t.cross_hom_vanishes ? "yes" : "no") << "\n";
    }
    return t.cross_hom_vanishes ? kExitOk : kExitViolation;
}

int cmd_homdim(const std::string& name, const std::string& module_expr,
               const GlobalOpts& g) {
    LoadedAlgebra la = load_algebra(name, g, g.modules_path);
    if (module_expr.empty()) {
        HomDim gd = global_dimension(la.alg);
        if (g.json) {
            ordered_json j;
            j["algebra"] = la.alg->id();
            j["gldim"] = homdim_json(gd);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "gl.dim " << la.alg->id() << " = " << gd.to_string()
                      << "\n";
        }
        return kExitOk;
    }
    Module m = eval_module_expr(la.alg, module_expr);
    HomDim pd = proj_dim(m), id = inj_dim(m);
    if (g.json) {
        ordered_json j;
        j["algebra"] = la.alg->id();
        j["module"] = module_expr;
        j["dimvec"] = m.dimension_vector();
        j["pd"] = homdim_json(pd);
        j["injdim"] = homdim_json(id);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << module_expr << " over " << la.alg->id() << ": dim "
                  << dimvec_str(m.dimension_vector()) << ", pd = "
                  << pd.to_string() << ", id = " << id.to_string() << "\n";
    }
    return kExitOk;
}

int cmd_tilt(const std::string& name, const std::string& module_expr,
             const std::string& kind_str, bool transfer, long m, long n,
             const GlobalOpts& g) {
    LoadedAlgebra la = load_algebra(name, g, g.modules_path);
    TiltKind kind =
        kind_str == "cotilting" ? TiltKind::Cotilting : TiltKind::Tilting;
    Module t = eval_module_expr(la.alg, module_expr);
    IndecSet inds = enumerate_indecomposables(la.alg, enum_opts(g));
    TiltingVerdict v = check_tilting(t, kind);
    bool splitting = v.pass() && is_splitting(t, kind, inds);
    TorsionPair tp = torsion_pair(t, inds);
    auto names_of = [&](const std::vector<std::size_t>& s) {
        std::vector<std::string> out;
        for (std::size_t i : s) out.push_back(inds.names[i]);
        return out;
    };
    ordered_json j;
    j["algebra"] = la.alg->id();
    j["module"] = module_expr;
    j["kind"] = kind_str;
    j["conditions"] = {{"homdim_le_1", v.homdim_ok},
                       {"no_self_extensions", v.no_self_ext},
                       {"summand_count", v.summand_count_ok}};
    j["distinct_summands"] = v.distinct_summands;
    j["rank"] = v.rank;
    j["pass"] = v.pass();
    j["splitting"] = splitting;
    j["torsion"] = names_of(tp.torsion);
    j["torsion_free"] = names_of(tp.torsion_free);
    int code = v.pass() ? kExitOk : kExitViolation;
    if (v.pass()) {
        EndoAlgebra endo = endomorphism_algebra(t);
        HomDim gd = global_dimension(endo.algebra);
        j["endo"] = {{"dim", endo.algebra->dim()},
                     {"vertices", endo.algebra->vertex_count()},
                     {"gldim", homdim_json(gd)}};
        if (transfer) {
            TransferReport tr = check_transfer(inds, t, m, n, enum_opts(g));
            ordered_json checks = ordered_json::array();
            for (const auto& c : tr.checks)
                checks.push_back({{"name", c.name},
                                  {"verdict", c.verdict},
                                  {"witnesses", c.witnesses}});
            j["transfer"] = checks;
            if (!tr.pass()) code = kExitViolation;
        }
    }
    if (g.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (v.pass() ? "PASS" : "FAIL") << " " << kind_str
                  << " check for " << module_expr << " over " << la.alg->id()
                  << "\n"
                  << "  conditions: homdim " << (v.homdim_ok ? "ok" : "FAIL")
                  << ", self-ext " << (v.no_self_ext ? "ok" : "FAIL")
                  << ", summands " << v.distinct_summands << "/" << v.rank
                  << "\n"
                  << "  splitting: " << (splitting ? "yes" : "no") << "\n";
        if (j.contains("endo"))
            std::cout << "  endomorphism algebra: dim " << j["endo"]["dim"]
                      << ", gl.dim " << j["endo"]["gldim"] << "\n";
        if (j.contains("transfer"))
            for (const auto& c : j["transfer"])
                std::cout << "  transfer [" << c["verdict"].get<std::string>()
                          << "] " << c["name"].get<std::string>() << "\n";
    }
    return code;
}

int cmd_chain(const std::string& chain_path, long m, long n,
              const GlobalOpts& g) {
    TiltingChain chain = parse_chain_json(read_file(chain_path));
    LoadedAlgebra la = load_algebra(chain.base, g, g.modules_path);
    ChainReport rep = verify_chain(la.alg, chain, m, n, enum_opts(g));
    if (g.json) {
        std::cout << rep.to_json() << "\n";
    } else {
        std::cout << "chain over " << la.alg->id() << " towards (" << m << ","
                  << n << ")\n";
        for (const auto& c : rep.checks) {
            std::cout << "  [" << c.verdict << "] " << c.name;
            if (!c.note.empty()) std::cout << "  (" << c.note << ")";
            std::cout << "\n";
        }
        std::cout << (rep.pass() ? "chain verified" : "chain FAILED") << "\n";
    }
    return rep.pass() ? kExitOk : kExitViolation;
}

int cmd_opext(const std::string& name, const std::string& module_expr, long m,
              bool emit, const std::string& out_name, const GlobalOpts& g) {
    LoadedAlgebra la = load_algebra(name, g, g.modules_path);
    Module mod = eval_module_expr(la.alg, module_expr);
    OnePointExtension ext = one_point_extension(la.alg, mod, out_name);
    if (emit) {
        EmittedPresentation em = emit_extension(ext);
        std::cout << em.text;
        if (!em.text.empty() && em.text.back() != '\n') std::cout << "\n";
        return kExitOk;
    }
    HomDim gda = global_dimension(ext.algebra);
    HomDim gdb = global_dimension(la.alg);
    HomDim pdm = proj_dim(mod);
    ordered_json j;
    j["base"] = la.alg->id();
    j["module"] = module_expr;
    j["extension"] = {{"id", ext.algebra->id()},
                      {"dim", ext.algebra->dim()},
                      {"gldim", homdim_json(gda)}};
    j["gldim_base"] = homdim_json(gdb);
    j["pd_module"] = homdim_json(pdm);
    int code = kExitOk;
    if (m > 0) {
        PdLemmaReport lem = check_pd_lemma(ext, m, enum_opts(g));
        OpextTheoremsReport thm = check_opext_theorems(ext, m, enum_opts(g));
        ordered_json checks = ordered_json::array();
        for (const auto& c : lem.checks)
            checks.push_back({{"name", c.name},
                              {"verdict", c.verdict},
                              {"witnesses", c.witnesses}});
        for (const auto& c : thm.checks)
            checks.push_back({{"name", c.name},
                              {"verdict", c.verdict},
                              {"witnesses", c.witnesses}});
        j["checks"] = checks;
        if (!lem.pass() || !thm.pass()) code = kExitViolation;
    }
    if (g.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "one-point extension of " << la.alg->id() << " by "
                  << module_expr << "\n"
                  << "  dim " << ext.algebra->dim() << ", gl.dim "
                  << gda.to_string() << " (base " << gdb.to_string()
                  << ", pd M = " << pdm.to_string() << ")\n";
        if (j.contains("checks"))
            for (const auto& c : j["checks"])
                std::cout << "  [" << c["verdict"].get<std::string>() << "] "
                          << c["name"].get<std::string>() << "\n";
    }
    return code;
}

int cmd_corpus(const std::string& filter, bool self_test_corrupt,
               const GlobalOpts& g) {
    CorpusRunOptions opts;
    opts.p = g.field;
    opts.seed = g.seed;
    opts.filter = filter;
    opts.self_test_corrupt = self_test_corrupt;
    CorpusReport rep = run_corpus(opts);
    std::string first_fail;
    if (g.json) {
        ordered_json j;
        j["entries"] = ordered_json::array();
        for (const auto& [id, facts] : rep.entries) {
            ordered_json ej;
            ej["id"] = id;
            ej["facts"] = ordered_json::array();
            for (const auto& f : facts) {
                ej["facts"].push_back({{"id", f.fact_id},
                                       {"description", f.description},
                                       {"pass", f.pass},
                                       {"detail", f.detail}});
                if (!f.pass && first_fail.empty()) first_fail = f.fact_id;
            }
            j["entries"].push_back(ej);
        }
        j["checked"] = rep.checked;
        j["failed"] = rep.failed;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& [id, facts] : rep.entries) {
            std::size_t ok = 0;
            for (const auto& f : facts)
                if (f.pass) ++ok;
            std::cout << id << ": " << ok << "/" << facts.size() << "\n";
            for (const auto& f : facts)
                if (!f.pass) {
                    std::cout << "  FAIL " << f.fact_id << ": " << f.description
                              << (f.detail.empty() ? "" : " [" + f.detail + "]")
                              << "\n";
                    if (first_fail.empty()) first_fail = f.fact_id;
                }
        }
        std::cout << rep.checked << " facts checked, " << rep.failed
                  << " failed\n";
    }
    if (rep.failed) {
        std::cerr << "first failing fact: " << first_fail << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact homological toolkit for bound quiver algebras over "
                 "prime fields"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--field", g.field, "prime field modulus (default 101)");
    app.add_option("--seed", g.seed, "seed for randomized decompositions");
    app.add_option("--max-modules", g.max_modules, "enumeration module cap");
    app.add_option("--max-dim", g.max_dim, "enumeration dimension cap");
    app.add_flag("--json", g.json, "emit JSON reports");
    app.add_flag("--dot", g.dot, "emit Graphviz output where applicable");
    app.add_option("--modules", g.modules_path,
                   "module file (same grammar, algebra-reference header)");

    std::string alg_name, module_expr, kind = "tilting", chain_path, filter,
                              out_name;
    long m = 1, n = 1;
    bool emit = false, transfer = false;

    auto* build = app.add_subcommand("build", "parse and compile an algebra");
    build->add_option("algebra", alg_name)->required();
    build->add_flag("--emit", emit, "dump structure constants as JSON");

    auto* indec = app.add_subcommand("indec", "enumerate the indecomposables");
    indec->add_option("algebra", alg_name)->required();

    auto* audit = app.add_subcommand("audit", "run the (m,n) homological audit");
    audit->add_option("algebra", alg_name)->required();
    audit->add_option("--m", m)->required();
    audit->add_option("--n", n)->required();

    auto* parts = app.add_subcommand("parts", "left/right parts and trisection");
    parts->add_option("algebra", alg_name)->required();
    parts->add_option("--m", m)->required();
    parts->add_option("--n", n)->required();

    auto* homdim =
        app.add_subcommand("homdim", "global or per-module dimensions");
    homdim->add_option("algebra", alg_name)->required();
    homdim->add_option("--module", module_expr);

    auto* tilt = app.add_subcommand("tilt", "check a (co)tilting module");
    tilt->add_option("algebra", alg_name)->required();
    tilt->add_option("--module", module_expr)->required();
    tilt->add_option("--kind", kind)
        ->check(CLI::IsMember({"tilting", "cotilting"}));
    tilt->add_flag("--transfer", transfer, "also run the transfer checks");
    tilt->add_option("--m", m);
    tilt->add_option("--n", n);

    auto* chain = app.add_subcommand("chain", "verify a tilting chain");
    chain->add_option("spec", chain_path, "chain JSON file")->required();
    chain->add_option("--m", m)->required();
    chain->add_option("--n", n)->required();

    auto* opext = app.add_subcommand("opext", "build a one-point extension");
    opext->add_option("algebra", alg_name)->required();
    opext->add_option("--module", module_expr)->required();
    opext->add_option("--m", m);
    opext->add_flag("--emit", emit, "serialize the extension");
    opext->add_option("--name", out_name, "id for the extension algebra");

    auto* corpus = app.add_subcommand("corpus", "verify the built-in corpus");
    corpus->add_option("filter", filter, "entry id substring");
    bool self_test_corrupt = false;
    corpus->add_flag("--self-test-corrupt", self_test_corrupt,
                     "fixture: corrupt one expected value to prove the "
                     "harness reports mismatches");

    // Global flags may come before or after the subcommand.
    for (CLI::App* sc : app.get_subcommands(nullptr)) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(alg_name, g, emit);
        if (indec->parsed()) return cmd_indec(alg_name, g);
        if (audit->parsed()) return cmd_audit(alg_name, m, n, g);
        if (parts->parsed()) return cmd_parts(alg_name, m, n, g);
        if (homdim->parsed()) return cmd_homdim(alg_name, module_expr, g);
        if (tilt->parsed())
            return cmd_tilt(alg_name, module_expr, kind, transfer, m, n, g);
        if (chain->parsed()) return cmd_chain(chain_path, m, n, g);
        if (opext->parsed())
            return cmd_opext(alg_name, module_expr, m, emit, out_name, g);
        if (corpus->parsed()) return cmd_corpus(filter, self_test_corrupt, g);
    } catch (const CapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitCap;
    } catch (const InconclusiveError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kExitCap;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
