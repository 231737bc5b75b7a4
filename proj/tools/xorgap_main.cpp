// xorgap: build 3XOR instances from the triangles of a simplicial complex,
// measure their exact optimum, sweep the xor-resolution refutation width,
// and build/verify moment certificates for the associated SDP relaxation.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xorgap/cohomology.hpp"
#include "xorgap/complex.hpp"
#include "xorgap/manifest.hpp"
#include "xorgap/refutation.hpp"
#include "xorgap/sos_cert.hpp"
#include "xorgap/xor_instance.hpp"
#include "xorgap/zoo.hpp"

namespace fs = std::filesystem;
using namespace xorgap;

namespace {

struct SourceOpts {
    std::string zoo, spec, complex_file;
};

void add_source_opts(CLI::App* cmd, SourceOpts& src) {
    auto* a = cmd->add_option("--zoo", src.zoo, "named zoo complex");
    auto* b = cmd->add_option("--spec", src.spec, "zoo spec file");
    auto* c = cmd->add_option("--complex", src.complex_file, "complex file");
    a->excludes(b)->excludes(c);
    b->excludes(c);
}

SimplicialComplex load_source(const SourceOpts& src) {
    if (!src.zoo.empty()) return build_named(src.zoo);
    if (!src.spec.empty()) return build(load_spec_file(src.spec));
    if (!src.complex_file.empty()) return load_complex_file(src.complex_file);
    throw std::invalid_argument("one of --zoo, --spec, --complex is required");
}

std::string source_name(const SourceOpts& src) {
    if (!src.zoo.empty()) return "zoo:" + src.zoo;
    if (!src.spec.empty()) return "spec:" + src.spec;
    return "file:" + src.complex_file;
}

void record_source(Manifest& man, const SourceOpts& src) {
    man.param("source", source_name(src));
    if (!src.spec.empty()) man.input("spec", src.spec);
    if (!src.complex_file.empty()) man.input("complex", src.complex_file);
}

struct Budgets {
    uint64_t closure = 1000000;          // stored closure equations
    uint64_t coset = uint64_t(1) << 20;  // coset enumeration candidates
    uint64_t enumeration = uint64_t(1) << 20;  // full assignment enumeration
};

void add_budget_opts(CLI::App* cmd, Budgets& b) {
    cmd->add_option("--budget-closure", b.closure, "max stored closure equations");
    cmd->add_option("--budget-coset", b.coset, "max coset enumeration size");
    cmd->add_option("--budget-enum", b.enumeration, "max full enumeration size");
}

Chain load_chain_file(const fs::path& p, const SimplicialComplex& x) {
    std::ifstream in(p);
    if (!in) throw ParseError(0, "cannot open " + p.string());
    return load_chain(in, x);
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw ParseError(0, "cannot open " + p.string() + " for writing");
    out << text;
}

std::string homology_text(const SimplicialComplex& x) {
    CohomologyReport rep = cohomology_report(x);
    std::ostringstream os;
    os << "dim faces Z^i B^i H^i Z_i B_i H_i\n";
    for (int i = 0; i <= x.dim(); ++i) {
        const DimReport& d = rep.at(i);
        os << i << ' ' << d.c << ' ' << d.z_up << ' ' << d.b_up << ' ' << d.h_up << ' '
           << d.z_down << ' ' << d.b_down << ' ' << d.h_down << '\n';
    }
    os << "identities " << (rep.identities_ok() ? "ok" : "VIOLATED") << '\n';
    os << "euler " << x.euler_characteristic() << '\n';
    return os.str();
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

int run(int argc, char** argv) {
    CLI::App app{"3XOR instances from simplicial cohomology"};
    app.require_subcommand(1);

    // ---- build ----
    auto* cmd_build = app.add_subcommand("build", "construct a complex and write it out");
    SourceOpts build_src;
    std::string build_out = "complex.txt";
    add_source_opts(cmd_build, build_src);
    cmd_build->add_option("--out", build_out, "output complex file");

    // ---- homology ----
    auto* cmd_hom = app.add_subcommand("homology", "chain space dimensions per degree");
    SourceOpts hom_src;
    std::string hom_out = "homology.txt";
    add_source_opts(cmd_hom, hom_src);
    cmd_hom->add_option("--out", hom_out, "output report file");

    // ---- cocycle ----
    auto* cmd_coc = app.add_subcommand("cocycle", "pick a cocycle as the instance rhs");
    SourceOpts coc_src;
    std::string coc_out = "beta.chain";
    int coc_dim = 2;
    bool coc_trivial = false, coc_nontrivial = false;
    add_source_opts(cmd_coc, coc_src);
    cmd_coc->add_option("--dim", coc_dim, "cocycle dimension");
    cmd_coc->add_flag("--trivial", coc_trivial, "coboundary control instead");
    cmd_coc->add_flag("--nontrivial", coc_nontrivial, "nontrivial class (default)");
    cmd_coc->add_option("--out", coc_out, "output chain file");

    // ---- instance ----
    auto* cmd_inst = app.add_subcommand("instance", "emit the 3XOR system of (X, beta)");
    SourceOpts inst_src;
    std::string inst_beta, inst_mode = "edge", inst_out = "instance.xor";
    add_source_opts(cmd_inst, inst_src);
    cmd_inst->add_option("--beta", inst_beta, "chain file with the rhs cocycle")->required();
    cmd_inst->add_option("--mode", inst_mode, "edge|vertex");
    cmd_inst->add_option("--out", inst_out, "output instance file");

    // ---- optimum ----
    auto* cmd_opt = app.add_subcommand("optimum", "exact minimum violated fraction");
    SourceOpts opt_src;
    std::string opt_instance, opt_beta, opt_out = "optimum.txt";
    Budgets opt_budgets;
    unsigned opt_threads = 1;
    cmd_opt->add_option("--instance", opt_instance, "instance file")->required();
    add_source_opts(cmd_opt, opt_src);
    cmd_opt->add_option("--beta", opt_beta, "rhs chain file (enables the coset route)");
    cmd_opt->add_option("--out", opt_out, "output file");
    cmd_opt->add_option("--threads", opt_threads, "worker threads");
    add_budget_opts(cmd_opt, opt_budgets);

    // ---- cosystole ----
    auto* cmd_sys = app.add_subcommand("cosystole", "exact cosystole of a complex");
    SourceOpts sys_src;
    int sys_dim = 2;
    std::string sys_out = "cosystole.txt";
    Budgets sys_budgets;
    unsigned sys_threads = 1;
    add_source_opts(cmd_sys, sys_src);
    cmd_sys->add_option("--dim", sys_dim, "degree");
    cmd_sys->add_option("--out", sys_out, "output file (witness chain alongside)");
    cmd_sys->add_option("--threads", sys_threads, "worker threads");
    add_budget_opts(cmd_sys, sys_budgets);

    // ---- refute ----
    auto* cmd_ref = app.add_subcommand("refute", "exact xor-resolution refutation width");
    std::string ref_instance, ref_out = "refutation.dag";
    int ref_wmax = 8;
    Budgets ref_budgets;
    cmd_ref->add_option("--instance", ref_instance, "instance file")->required();
    cmd_ref->add_option("--w-max", ref_wmax, "largest width to try");
    cmd_ref->add_option("--out", ref_out, "output DAG file");
    add_budget_opts(cmd_ref, ref_budgets);

    // ---- certify ----
    auto* cmd_cert = app.add_subcommand("certify", "build the level-t moment certificate");
    std::string cert_instance, cert_out = "certificate.cert";
    int cert_t = 1;
    Budgets cert_budgets;
    cmd_cert->add_option("--instance", cert_instance, "instance file")->required();
    cmd_cert->add_option("--t", cert_t, "hierarchy level")->required();
    cmd_cert->add_option("--out", cert_out, "output certificate file");
    add_budget_opts(cmd_cert, cert_budgets);

    // ---- verify ----
    auto* cmd_ver = app.add_subcommand("verify", "check a certificate against an instance");
    std::string ver_instance, ver_cert, ver_out = "verify.txt";
    Budgets ver_budgets;
    uint64_t ver_seed = 1;
    cmd_ver->add_option("--instance", ver_instance, "instance file")->required();
    cmd_ver->add_option("--certificate", ver_cert, "certificate file")->required();
    cmd_ver->add_option("--out", ver_out, "output report file");
    cmd_ver->add_option("--seed", ver_seed, "seed for sampled consistency checks");
    add_budget_opts(cmd_ver, ver_budgets);

    // ---- fill ----
    auto* cmd_fill = app.add_subcommand("fill", "minimum filling of a 1-cycle");
    SourceOpts fill_src;
    std::string fill_chain, fill_out = "filling.chain";
    Budgets fill_budgets;
    add_source_opts(cmd_fill, fill_src);
    cmd_fill->add_option("--chain", fill_chain, "cycle chain file")->required();
    cmd_fill->add_option("--out", fill_out, "output filling chain");
    add_budget_opts(cmd_fill, fill_budgets);

    // ---- audit-dag ----
    auto* cmd_audit = app.add_subcommand("audit-dag", "check the node identities of a DAG");
    SourceOpts audit_src;
    std::string audit_dag_file, audit_beta, audit_out = "audit.txt";
    Budgets audit_budgets;
    add_source_opts(cmd_audit, audit_src);
    cmd_audit->add_option("--dag", audit_dag_file, "DAG file")->required();
    cmd_audit->add_option("--beta", audit_beta, "rhs chain file")->required();
    cmd_audit->add_option("--out", audit_out, "output report file");
    add_budget_opts(cmd_audit, audit_budgets);

    // ---- pipeline ----
    auto* cmd_pipe = app.add_subcommand("pipeline", "full chain with a one-page gap report");
    SourceOpts pipe_src;
    std::string pipe_mode = "edge", pipe_out = "pipeline_out";
    int pipe_t = 0, pipe_wmax = 8;
    bool pipe_trivial = false;
    Budgets pipe_budgets;
    unsigned pipe_threads = 1;
    add_source_opts(cmd_pipe, pipe_src);
    cmd_pipe->add_option("--mode", pipe_mode, "edge|vertex");
    cmd_pipe->add_option("--t", pipe_t, "certificate level (0 = highest admissible)");
    cmd_pipe->add_option("--w-max", pipe_wmax, "refutation width sweep limit");
    cmd_pipe->add_flag("--trivial", pipe_trivial, "use a coboundary rhs (satisfiable control)");
    cmd_pipe->add_option("--out", pipe_out, "output directory");
    cmd_pipe->add_option("--threads", pipe_threads, "worker threads");
    add_budget_opts(cmd_pipe, pipe_budgets);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();

    if (*cmd_build) {
        SimplicialComplex x = load_source(build_src);
        save_complex_file(x, build_out);
        Manifest man("build");
        record_source(man, build_src);
        man.output("complex", build_out);
        man.write(build_out + ".manifest", ms_since(t0));
        std::cout << "complex: " << x.n_vertices() << " vertices, dim " << x.dim();
        for (int i = 0; i <= x.dim(); ++i) std::cout << ", |X(" << i << ")|=" << x.face_count(i);
        std::cout << "\n";
        return 0;
    }

    if (*cmd_hom) {
        SimplicialComplex x = load_source(hom_src);
        std::string text = homology_text(x);
        write_text(hom_out, text);
        Manifest man("homology");
        record_source(man, hom_src);
        man.output("report", hom_out);
        man.write(hom_out + ".manifest", ms_since(t0));
        std::cout << text;
        return 0;
    }

    if (*cmd_coc) {
        if (coc_trivial && coc_nontrivial)
            throw std::invalid_argument("--trivial and --nontrivial are mutually exclusive");
        SimplicialComplex x = load_source(coc_src);
        Cocycle beta;
        if (coc_trivial) {
            if (coc_dim < 1) throw std::invalid_argument("trivial cocycle needs dim >= 1");
            // Coboundary of the first (dim-1)-face indicator: a satisfiable rhs.
            BitVec f(x.face_count(coc_dim - 1));
            f.set(0, true);
            beta = Cocycle{Chain{coc_dim, x.coboundary_matrix(coc_dim - 1).apply(f)},
                           CocycleClass::trivial};
        } else {
            beta = pick_nontrivial_cocycle(x, coc_dim);
        }
        std::ofstream out(coc_out);
        save_chain(out, beta.chain);
        out.close();
        Manifest man("cocycle");
        record_source(man, coc_src);
        man.param("dim", std::to_string(coc_dim));
        man.param("class", coc_trivial ? "trivial" : "nontrivial");
        man.output("beta", coc_out);
        man.write(coc_out + ".manifest", ms_since(t0));
        std::cout << "cocycle dim " << coc_dim << " weight " << beta.chain.weight() << " ("
                  << (coc_trivial ? "trivial" : "nontrivial") << ")\n";
        return 0;
    }

    if (*cmd_inst) {
        SimplicialComplex x = load_source(inst_src);
        Cocycle beta = classify_cocycle(x, load_chain_file(inst_beta, x));
        XorSystem sys = make_instance(x, beta, var_mode_from_name(inst_mode));
        std::ofstream out(inst_out);
        write_xor(out, sys);
        out.close();
        Manifest man("instance");
        record_source(man, inst_src);
        man.param("mode", inst_mode);
        man.input("beta", inst_beta);
        man.output("instance", inst_out);
        man.write(inst_out + ".manifest", ms_since(t0));
        std::cout << "instance: " << sys.n_vars << " variables, " << sys.m() << " equations\n";
        return 0;
    }

    if (*cmd_opt) {
        std::ifstream in(opt_instance);
        if (!in) throw ParseError(0, "cannot open " + opt_instance);
        XorSystem sys = read_xor(in);
        Optimum full = exhaustive_optimum(sys, opt_budgets.enumeration, opt_threads);
        std::ostringstream os;
        os << "min_violated " << full.min_violated.str() << '\n';
        os << "argmin " << full.argmin.values.to_string() << '\n';
        bool have_coset = !opt_beta.empty();
        if (have_coset) {
            SimplicialComplex x = load_source(opt_src);
            Cocycle beta = classify_cocycle(x, load_chain_file(opt_beta, x));
            Optimum viacoset = optimum_via_coset(x, beta, opt_budgets.coset, opt_threads);
            os << "coset_min_violated " << viacoset.min_violated.str() << '\n';
            os << "routes_agree " << (viacoset.min_violated == full.min_violated ? "yes" : "NO")
               << '\n';
            if (viacoset.min_violated != full.min_violated)
                throw std::logic_error("enumeration and coset routes disagree");
        }
        write_text(opt_out, os.str());
        Manifest man("optimum");
        man.input("instance", opt_instance);
        man.output("optimum", opt_out);
        man.write(opt_out + ".manifest", ms_since(t0));
        std::cout << os.str();
        return 0;
    }

    if (*cmd_sys) {
        SimplicialComplex x = load_source(sys_src);
        CosystoleResult r = cosystole(x, sys_dim, sys_budgets.coset, sys_threads);
        std::ostringstream os;
        os << "cosystole " << r.fraction.str() << '\n' << "weight " << r.weight << '\n';
        write_text(sys_out, os.str());
        std::ofstream wout(sys_out + ".witness.chain");
        save_chain(wout, r.witness);
        wout.close();
        Manifest man("cosystole");
        record_source(man, sys_src);
        man.param("dim", std::to_string(sys_dim));
        man.output("cosystole", sys_out);
        man.output("witness", sys_out + ".witness.chain");
        man.write(sys_out + ".manifest", ms_since(t0));
        std::cout << os.str();
        return 0;
    }

    if (*cmd_ref) {
        std::ifstream in(ref_instance);
        if (!in) throw ParseError(0, "cannot open " + ref_instance);
        XorSystem sys = read_xor(in);
        std::cout << "closure size bound at w=" << ref_wmax << ": "
                  << closure_size_bound(sys.n_vars, ref_wmax) << " variable sets\n";
        std::optional<int> w = refutation_width(sys, ref_wmax, ref_budgets.closure);
        if (!w) {
            std::cout << "no refutation up to width " << ref_wmax << "\n";
            return 1;
        }
        // Re-run the closure at the found width to extract a DAG.
        XorSystem filtered;
        filtered.n_vars = sys.n_vars;
        filtered.mode = sys.mode;
        for (const XorEquation& eq : sys.equations)
            if (eq.vars.size() <= static_cast<size_t>(*w)) filtered.equations.push_back(eq);
        DerivationDag dag = extract_dag(close(filtered, *w, ref_budgets.closure));
        std::ofstream out(ref_out);
        write_dag(out, dag);
        out.close();
        Manifest man("refute");
        man.input("instance", ref_instance);
        man.param("w_max", std::to_string(ref_wmax));
        man.note("refutation_width", std::to_string(*w));
        man.output("dag", ref_out);
        man.write(ref_out + ".manifest", ms_since(t0));
        std::cout << "refutation width " << *w << " (" << dag.nodes.size() << " nodes, depth "
                  << dag.depth << ")\n";
        return 0;
    }

    if (*cmd_cert) {
        std::ifstream in(cert_instance);
        if (!in) throw ParseError(0, "cannot open " + cert_instance);
        XorSystem sys = read_xor(in);
        SosCertificate cert = build_certificate(sys, cert_t, cert_budgets.closure);
        std::ofstream out(cert_out);
        write_certificate(out, cert);
        out.close();
        Manifest man("certify");
        man.input("instance", cert_instance);
        man.param("t", std::to_string(cert_t));
        man.output("certificate", cert_out);
        man.write(cert_out + ".manifest", ms_since(t0));
        std::cout << "certificate at level " << cert_t << ": " << cert.set_count() << " sets, "
                  << cert.rep_of_class.size() << " classes\n";
        return 0;
    }

    if (*cmd_ver) {
        std::ifstream in(ver_instance);
        if (!in) throw ParseError(0, "cannot open " + ver_instance);
        XorSystem sys = read_xor(in);
        std::ifstream cin_(ver_cert);
        if (!cin_) throw ParseError(0, "cannot open " + ver_cert);
        SosCertificate cert = read_certificate(cin_, sys.n_vars);
        VerifyReport rep = verify_certificate(cert, sys, ver_budgets.closure, ver_seed);
        std::ostringstream os;
        os << "ok " << (rep.ok ? "yes" : "no") << '\n';
        os << "norms " << (rep.norms_ok ? "ok" : "VIOLATED") << '\n';
        os << "consistency " << (rep.consistency_exhaustive ? "exhaustive" : "sampled") << ' '
           << rep.pairs_checked << " pairs\n";
        os << "violations " << rep.violations.size() << '\n';
        if (rep.objective_defined)
            os << "objective " << rep.objective.str() << '\n';
        else
            os << "objective undefined\n";
        os << "psd_full " << (rep.psd_full ? "ok" : "VIOLATED") << " min_eig " << rep.min_eig_full
           << '\n';
        os << "psd_half " << (rep.psd_half ? "ok" : "VIOLATED") << " min_eig " << rep.min_eig_half
           << '\n';
        write_text(ver_out, os.str());
        Manifest man("verify");
        man.input("instance", ver_instance);
        man.input("certificate", ver_cert);
        man.output("report", ver_out);
        man.write(ver_out + ".manifest", ms_since(t0));
        std::cout << os.str();
        return rep.ok ? 0 : 1;
    }

    if (*cmd_fill) {
        SimplicialComplex x = load_source(fill_src);
        Chain f = load_chain_file(fill_chain, x);
        std::optional<FillingResult> r = min_filling(x, f, fill_budgets.coset);
        if (!r) {
            std::cout << "no filling: the cycle is not a boundary in this complex\n";
            return 1;
        }
        std::ofstream out(fill_out);
        save_chain(out, r->filling);
        out.close();
        Manifest man("fill");
        record_source(man, fill_src);
        man.input("chain", fill_chain);
        man.note("filling_size", std::to_string(r->size));
        man.output("filling", fill_out);
        man.write(fill_out + ".manifest", ms_since(t0));
        std::cout << "minimum filling size " << r->size << "\n";
        // isoperimetric ratio |g| / |f|^2, logged but never asserted
        if (f.weight() > 0)
            std::cout << "filling ratio |g|/|f|^2 = "
                      << static_cast<double>(r->size) /
                             (static_cast<double>(f.weight()) * static_cast<double>(f.weight()))
                      << "\n";
        return 0;
    }

    if (*cmd_audit) {
        SimplicialComplex x = load_source(audit_src);
        Cocycle beta = classify_cocycle(x, load_chain_file(audit_beta, x));
        std::ifstream din(audit_dag_file);
        if (!din) throw ParseError(0, "cannot open " + audit_dag_file);
        DerivationDag dag = read_dag(din, static_cast<uint32_t>(x.face_count(1)));
        DagAudit audit = audit_dag(dag, x, beta, audit_budgets.coset);
        std::ostringstream os;
        os << "nodes " << audit.node_count << '\n' << "leaves " << audit.leaf_count << '\n';
        os << "max_width " << audit.max_width << '\n' << "max_kappa " << audit.max_kappa << '\n';
        os << "root_kappa " << audit.root_kappa << '\n';
        os << "walk_kappas";
        for (size_t k : audit.walk_kappas) os << ' ' << k;
        os << '\n';
        write_text(audit_out, os.str());
        Manifest man("audit-dag");
        record_source(man, audit_src);
        man.input("dag", audit_dag_file);
        man.input("beta", audit_beta);
        man.output("report", audit_out);
        man.write(audit_out + ".manifest", ms_since(t0));
        std::cout << os.str();
        return 0;
    }

    if (*cmd_pipe) {
        fs::create_directories(pipe_out);
        fs::path dir(pipe_out);
        SimplicialComplex x = load_source(pipe_src);
        save_complex_file(x, dir / "complex.txt");
        write_text(dir / "homology.txt", homology_text(x));

        Cocycle beta;
        if (pipe_trivial) {
            BitVec f(x.face_count(1));
            f.set(0, true);
            beta = Cocycle{Chain{2, x.coboundary_matrix(1).apply(f)}, CocycleClass::trivial};
        } else {
            beta = pick_nontrivial_cocycle(x, 2);
        }
        {
            std::ofstream out(dir / "beta.chain");
            save_chain(out, beta.chain);
        }
        VarMode mode = var_mode_from_name(pipe_mode);
        XorSystem sys = make_instance(x, beta, mode);
        {
            std::ofstream out(dir / "instance.xor");
            write_xor(out, sys);
        }

        // Full enumeration when it fits the budget; the coset route always
        // runs in edge mode. At least one must apply, and they must agree.
        std::optional<Optimum> full_opt;
        if (sys.n_vars < 63 && (uint64_t(1) << sys.n_vars) <= pipe_budgets.enumeration)
            full_opt = exhaustive_optimum(sys, pipe_budgets.enumeration, pipe_threads);
        std::optional<Optimum> coset_opt;
        if (mode == VarMode::edge)
            coset_opt = optimum_via_coset(x, beta, pipe_budgets.coset, pipe_threads);
        if (!full_opt && !coset_opt)
            throw BudgetExceeded("2^" + std::to_string(sys.n_vars) +
                                 " assignments exceed the enumeration budget and the coset "
                                 "route needs edge mode");
        std::ostringstream opt_os;
        if (full_opt) opt_os << "min_violated " << full_opt->min_violated.str() << '\n';
        if (coset_opt) opt_os << "coset_min_violated " << coset_opt->min_violated.str() << '\n';
        if (full_opt && coset_opt && full_opt->min_violated != coset_opt->min_violated)
            throw std::logic_error("enumeration and coset routes disagree");
        Optimum full = full_opt ? *full_opt : *coset_opt;
        bool satisfiable = full.min_violated.num == 0;
        write_text(dir / "optimum.txt", opt_os.str());

        std::optional<CosystoleResult> syst;
        CohomologyReport hom = cohomology_report(x);
        if (hom.at(2).h_up > 0) syst = cosystole(x, 2, pipe_budgets.coset, pipe_threads);

        std::optional<int> width = refutation_width(sys, pipe_wmax, pipe_budgets.closure);
        std::optional<DagAudit> audit;
        if (width) {
            XorSystem filtered;
            filtered.n_vars = sys.n_vars;
            filtered.mode = sys.mode;
            for (const XorEquation& eq : sys.equations)
                if (eq.vars.size() <= static_cast<size_t>(*width))
                    filtered.equations.push_back(eq);
            DerivationDag dag = extract_dag(close(filtered, *width, pipe_budgets.closure));
            std::ofstream out(dir / "refutation.dag");
            write_dag(out, dag);
            out.close();
            if (mode == VarMode::edge)
                audit = audit_dag(dag, x, beta, pipe_budgets.coset);
        }

        int t_eff = pipe_t;
        if (t_eff <= 0)
            t_eff = width ? std::max(1, (*width - 1) / 2) : std::max(1, pipe_wmax / 2);
        // The closure at width 2t can be refuted even below the DAG
        // refutation width (axioms seed it whatever their width); that is a
        // finding, not a failure: it means this level of the hierarchy
        // detects the contradiction, so no certificate exists.
        std::optional<SosCertificate> cert;
        std::optional<VerifyReport> ver;
        std::string cert_refusal;
        try {
            cert = build_certificate(sys, t_eff, pipe_budgets.closure);
        } catch (const std::domain_error& e) {
            cert_refusal = e.what();
        }
        if (cert) {
            std::ofstream out(dir / "certificate.cert");
            write_certificate(out, *cert);
            out.close();
            ver = verify_certificate(*cert, sys, pipe_budgets.closure);
        }

        std::ostringstream rp;
        rp << "=== gap report ===\n";
        rp << "complex " << source_name(pipe_src) << " (" << x.n_vertices() << " vertices";
        for (int i = 0; i <= x.dim(); ++i) rp << ", |X(" << i << ")|=" << x.face_count(i);
        rp << ")\n";
        rp << "H^1 " << hom.at(1).h_up << ", H^2 " << (x.dim() >= 2 ? hom.at(2).h_up : 0) << '\n';
        rp << "beta " << (pipe_trivial ? "trivial" : "nontrivial") << " weight "
           << beta.chain.weight() << '\n';
        rp << "mode " << pipe_mode << ", " << sys.n_vars << " variables, " << sys.m()
           << " equations\n";
        rp << "instance " << (satisfiable ? "satisfiable" : "unsatisfiable") << '\n';
        rp << "optimum_violated_fraction " << full.min_violated.str() << '\n';
        if (syst) rp << "cosystole_2 " << syst->fraction.str() << '\n';
        if (width)
            rp << "refutation_width " << *width << '\n';
        else
            rp << "refutation_width none up to " << pipe_wmax << '\n';
        if (audit)
            rp << "dag_audit max_width " << audit->max_width << " max_kappa " << audit->max_kappa
               << " root_kappa " << audit->root_kappa << '\n';
        if (cert) {
            rp << "certificate_level " << t_eff << " (" << cert->rep_of_class.size()
               << " classes over " << cert->set_count() << " sets)\n";
            rp << "certificate_objective "
               << (sys.equations.empty() ? std::string("undefined") : ver->objective.str())
               << '\n';
            rp << "certificate_ok " << (ver->ok ? "yes" : "no") << '\n';
            rp << "gap " << full.min_violated.str() << " violated at the optimum vs objective "
               << ver->objective.str() << " at level " << t_eff << '\n';
        } else {
            rp << "certificate_level " << t_eff << " refused: " << cert_refusal << '\n';
            rp << "no certificate: this level of the hierarchy already detects the "
                  "contradiction\n";
        }
        write_text(dir / "report.txt", rp.str());

        Manifest man("pipeline");
        record_source(man, pipe_src);
        man.param("mode", pipe_mode);
        man.param("t", std::to_string(t_eff));
        man.param("w_max", std::to_string(pipe_wmax));
        man.param("beta_class", pipe_trivial ? "trivial" : "nontrivial");
        man.output("complex", dir / "complex.txt");
        man.output("homology", dir / "homology.txt");
        man.output("beta", dir / "beta.chain");
        man.output("instance", dir / "instance.xor");
        man.output("optimum", dir / "optimum.txt");
        if (width) man.output("dag", dir / "refutation.dag");
        if (cert) man.output("certificate", dir / "certificate.cert");
        man.output("report", dir / "report.txt");
        man.write(dir / "manifest.txt", ms_since(t0));
        std::cout << rp.str();
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "negative: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
