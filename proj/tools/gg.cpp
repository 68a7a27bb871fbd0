#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gg/catalog.hpp"
#include "gg/verify.hpp"

using nlohmann::json;

namespace {

// flags > environment (GG_*) > config file > defaults
struct ConfigInputs {
    std::string config_file;
    long long max_lattice = -1, max_vertices = -1, max_group_order = -1, threads = -1;
};

long long parse_ll(const std::string& s, const std::string& what) {
    try {
        std::size_t pos;
        long long v = std::stoll(s, &pos);
        if (pos != s.size() || v <= 0) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        gg::fail("BadConfig", "bad value for " + what + ": '" + s + "'");
    }
}

gg::RunConfig resolve_config(const ConfigInputs& in) {
    gg::RunConfig cfg;
    if (!in.config_file.empty()) {
        std::ifstream f(in.config_file);
        if (!f) gg::fail("BadConfig", "cannot open config file " + in.config_file);
        std::string line;
        while (std::getline(f, line)) {
            auto h = line.find('#');
            if (h != std::string::npos) line = line.substr(0, h);
            auto eq = line.find('=');
            auto trim = [](std::string s) {
                auto a = s.find_first_not_of(" \t\r");
                auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            if (eq == std::string::npos) {
                if (!trim(line).empty()) gg::fail("BadConfig", "bad config line: " + line);
                continue;
            }
            std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
            if (key == "max_lattice") cfg.max_lattice = static_cast<std::size_t>(parse_ll(val, key));
            else if (key == "max_vertices") cfg.max_vertices = static_cast<std::size_t>(parse_ll(val, key));
            else if (key == "max_group_order") cfg.max_group_order = static_cast<std::size_t>(parse_ll(val, key));
            else if (key == "threads") cfg.threads = static_cast<int>(parse_ll(val, key));
            else gg::fail("BadConfig", "unknown config key '" + key + "'");
        }
    }
    if (const char* e = std::getenv("GG_MAX_LATTICE"))
        cfg.max_lattice = static_cast<std::size_t>(parse_ll(e, "GG_MAX_LATTICE"));
    if (const char* e = std::getenv("GG_MAX_VERTICES"))
        cfg.max_vertices = static_cast<std::size_t>(parse_ll(e, "GG_MAX_VERTICES"));
    if (const char* e = std::getenv("GG_THREADS"))
        cfg.threads = static_cast<int>(parse_ll(e, "GG_THREADS"));
    if (in.max_lattice > 0) cfg.max_lattice = static_cast<std::size_t>(in.max_lattice);
    if (in.max_vertices > 0) cfg.max_vertices = static_cast<std::size_t>(in.max_vertices);
    if (in.max_group_order > 0) cfg.max_group_order = static_cast<std::size_t>(in.max_group_order);
    if (in.threads > 0) cfg.threads = static_cast<int>(in.threads);
    cfg.validate();
    return cfg;
}

json p_json(const gg::DirichletPolynomial& P) {
    json j = P.to_json();
    if (auto fac = gg::dp_prime_power_factorization(P))
        j["product_form"] = gg::dp_product_form_string(*fac);
    return j;
}

int cmd_group(const gg::RunConfig& cfg, const std::string& spec) {
    auto G = gg::build_group(spec, cfg);
    auto L = gg::SubgroupLattice::compute(G, cfg);
    auto o = gg::structure_oracles(G, L);
    json j;
    j["spec"] = spec;
    j["order"] = G.order();
    j["d"] = G.order() == 1 ? 0 : gg::min_generators(G);
    j["abelian"] = o.is_abelian;
    j["cyclic"] = o.is_cyclic;
    j["soluble"] = o.is_soluble;
    j["nilpotent"] = o.is_nilpotent;
    j["supersoluble"] = o.is_supersoluble;
    j["simple"] = o.is_simple;
    j["subgroups"] = L.size();
    j["frattini_order"] = L.node(L.frattini_id()).order;
    j["P"] = p_json(gg::dirichlet_polynomial(L));
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_graph(const gg::RunConfig& cfg, const std::string& spec, int a, int b, bool prune,
              const std::string& exp) {
    auto G = gg::build_group(spec, cfg);
    gg::SubgroupRegistry reg(G);
    auto g = gg::build_gamma(G, a, b, reg, cfg);
    if (prune) g = gg::prune_isolated(g);
    if (exp == "dot") {
        std::cout << gg::graph_to_dot(g);
    } else if (exp == "csv") {
        std::cout << gg::degrees_to_csv(g);
    } else if (exp == "json") {
        std::cout << gg::components_to_json(gg::components(g, cfg)).dump(2) << "\n";
    } else {
        json j;
        j["spec"] = spec;
        j["a"] = a;
        j["b"] = b;
        j["pruned"] = prune;
        j["vertices_a"] = g.nva();
        j["vertices_b"] = g.same_side() ? g.nva() : g.nvb();
        j["edges"] = g.edge_count();
        j["loops"] = g.loop_count();
        j["connected"] = gg::is_connected(g, cfg);
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_swap(const gg::RunConfig& cfg, const std::string& spec, int d) {
    auto G = gg::build_group(spec, cfg);
    gg::SubgroupRegistry reg(G);
    auto sw = gg::build_swap(G, d, reg, cfg);
    json j;
    j["spec"] = spec;
    j["d"] = d;
    j["vertices"] = sw.size();
    bool conn = gg::swap_connected(sw);
    j["connected"] = conn;
    if (conn && sw.size() > 0) j["diameter"] = gg::swap_diameter(sw);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_lambda(const gg::RunConfig& cfg, const std::string& spec, int max_level,
               const std::string& kind) {
    auto G = gg::build_group(spec, cfg);
    gg::ComponentFamily F = (kind == "a1") ? gg::lambda1_star(G, max_level, cfg)
                                           : gg::lambda_star(G, max_level, cfg);
    std::cout << gg::family_to_json(F).dump() << "\n";
    return 0;
}

int cmd_recover(const std::string& file, bool all) {
    std::ifstream f(file);
    if (!f) gg::fail("ParameterOutOfRange", "cannot open family file " + file);
    json in = json::parse(f);
    auto F = gg::family_from_json(in);
    json j;
    if (F.kind == gg::FamilyKind::a1) {
        auto R = gg::lstt_pipeline(F);
        j["kind"] = "a1";
        j["order"] = R.order;
        j["d"] = R.d;
        j["P"] = p_json(R.P);
        j["frattini_order"] = R.frattini_order;
        j["nilpotent"] = R.nilpotent;
    } else {
        j["kind"] = "full";
        auto cyc = gg::recognize_cyclic(F);
        j["cyclic"] = cyc.is_cyclic;
        j["order"] = cyc.is_cyclic ? cyc.order : gg::recover_order(F);
        j["d"] = cyc.is_cyclic ? 1 : gg::recover_d(F);
        if (all) {
            auto kd = gg::recognize_klein_or_dihedral(F);
            j["klein_or_dihedral"] = kd.matched;
            j["P"] = p_json(gg::recover_P(F));
            j["frattini_order"] = gg::recover_frattini_order(F);
            j["nilpotent"] = gg::decide_nilpotent(F);
        }
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_construct(const gg::RunConfig& cfg, const std::string& which, int d,
                  const std::string& verify_pair) {
    json j;
    if (which == "s3counter") {
        auto res = gg::build_section3_counterexample(d, cfg);
        gg::SubgroupRegistry reg(res.G);
        bool g1 = reg.tuple_generates({res.tuple1[0], res.b1});
        bool g2 = reg.tuple_generates({res.tuple2[0], res.b2});
        j["construction"] = "s3counter";
        j["order"] = res.G.order();
        j["pair1_generates"] = g1;
        j["pair2_generates"] = g2;
        std::cout << j.dump(2) << "\n";
        return (g1 && g2) ? 0 : 1;
    }
    if (which != "pair605")
        gg::fail("ParameterOutOfRange", "unknown construction '" + which + "'");
    auto p = gg::build_605_pair(cfg);
    j["construction"] = "pair605";
    j["order1"] = p.G1.order();
    j["order2"] = p.G2.order();
    j["isomorphic"] = gg::isomorphic(p.G1, p.G2);
    int rc = j["isomorphic"].get<bool>() ? 1 : 0;
    if (!verify_pair.empty()) {
        auto comma = verify_pair.find(',');
        if (comma == std::string::npos)
            gg::fail("ParameterOutOfRange", "--verify expects 'a,b'");
        int va = static_cast<int>(parse_ll(verify_pair.substr(0, comma), "--verify a"));
        int vb = static_cast<int>(parse_ll(verify_pair.substr(comma + 1), "--verify b"));
        if (!((va == 1 && vb == 1) || (va == 1 && vb == 2)))
            gg::fail("ParameterOutOfRange", "--verify supports 1,1 and 1,2");
        gg::VerifyReport rep;
        gg::suite_pair605(rep, cfg);
        std::string want = "tau-edge-preserving-" + std::to_string(va) + "-" +
                           std::to_string(vb);
        for (const auto& r : rep.records)
            if (r.claim == want) {
                j["verified"] = want;
                j["status"] = r.status;
                if (r.status != "pass") rc = 1;
            }
    }
    std::cout << j.dump(2) << "\n";
    return rc;
}

int cmd_crown(const gg::RunConfig& cfg, const std::string& spec, int A_id, int t) {
    auto L = gg::build_group(spec, cfg);
    auto lat = gg::SubgroupLattice::compute(L, cfg);
    auto Lt = gg::crown_power(L, lat, A_id, t, cfg);
    json j;
    j["L"] = spec;
    j["A"] = A_id;
    j["t"] = t;
    j["order"] = Lt.order();
    j["d"] = gg::min_generators(Lt);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_spread(const gg::RunConfig& cfg, const std::string& spec) {
    auto G = gg::build_group(spec, cfg);
    auto L = gg::SubgroupLattice::compute(G, cfg);
    json j;
    j["spec"] = spec;
    j["order"] = G.order();
    j["nonzero_spread"] = gg::has_nonzero_spread(G, cfg);
    j["efficiently_generated"] = gg::is_efficiently_generated(G, cfg);
    j["frattini_order"] = L.node(L.frattini_id()).order;
    try {
        j["psi"] = gg::psi(G, cfg);
    } catch (const gg::Error& e) {
        j["psi"] = nullptr;
        j["psi_error"] = e.code();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_tau(const gg::RunConfig& cfg, const std::string& spec, int d) {
    auto S = gg::build_group(spec, cfg);
    auto rep = gg::tau_d(S, d, cfg);
    json j;
    j["spec"] = spec;
    j["d"] = d;
    j["orbit_count"] = rep.orbit_count;
    j["aut_order"] = rep.aut_order;
    j["tuple_count"] = rep.tuple_count.str();
    j["min_orbit"] = rep.min_orbit;
    j["max_orbit"] = rep.max_orbit;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const gg::RunConfig& cfg, const std::string& suite,
               const std::vector<std::string>& groups) {
    auto rep = gg::run_suite(suite, cfg, groups);
    std::cout << rep.to_jsonl();
    return rep.all_pass() ? 0 : 1;
}

int cmd_bench(const gg::RunConfig& cfg, const std::string& task) {
    auto now = [] { return std::chrono::steady_clock::now(); };
    auto ms = [](auto t0, auto t1) {
        return std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() / 1000.0;
    };
    std::cout << "# gg bench " << task << " | cxx " << __VERSION__ << " | threads "
              << cfg.threads << "\n";
    if (task == "gamma-build") {
        std::cout << "task,group,a,b,vertices,time_ms\n";
        for (int n = 3; n <= 31; n += 2) {
            auto G = gg::make_dihedral(static_cast<std::size_t>(n));
            gg::SubgroupRegistry reg(G);
            auto t0 = now();
            auto g = gg::build_gamma(G, 1, 1, reg, cfg);
            auto t1 = now();
            std::cout << "gamma-build,dihedral:" << n << ",1,1," << g.nva() << ","
                      << ms(t0, t1) << "\n";
        }
    } else if (task == "lattice") {
        std::cout << "task,group,order,subgroups,time_ms\n";
        for (int n = 3; n <= 5; ++n) {
            auto G = gg::make_symmetric(n, cfg);
            auto t0 = now();
            auto L = gg::SubgroupLattice::compute(G, cfg);
            auto t1 = now();
            std::cout << "lattice,sym:" << n << "," << G.order() << "," << L.size() << ","
                      << ms(t0, t1) << "\n";
        }
    } else if (task == "phi-enum") {
        std::cout << "task,group,t,phi,enum_ms,hall_ms\n";
        auto G = gg::build_group("alt:5", cfg);
        gg::SubgroupRegistry reg(G);
        for (long long t = 2; t <= 3; ++t) {
            auto t0 = now();
            auto ve = gg::phi_enumerate(G, t, reg, cfg);
            auto t1 = now();
            auto L = gg::SubgroupLattice::compute(G, cfg);
            auto vh = gg::phi_hall(L, t);
            auto t2 = now();
            if (ve != vh) gg::fail("InternalError", "phi mismatch in bench");
            std::cout << "phi-enum,alt:5," << t << "," << ve.str() << "," << ms(t0, t1)
                      << "," << ms(t1, t2) << "\n";
        }
    } else {
        gg::fail("ParameterOutOfRange", "unknown bench task '" + task + "'");
    }
    return 0;
}

bool usage_error(const std::string& code) {
    return code == "UnknownSuite" || code == "UnknownFamily" || code == "BadConfig" ||
           code == "ParameterOutOfRange" || code == "NotSimple" ||
           code == "NotUniqueMinimalNormal" || code == "DTooSmall";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generation graphs of finite groups"};
    app.require_subcommand(1);
    ConfigInputs ci;
    app.add_option("--config", ci.config_file, "key=value config file");
    app.add_option("--max-lattice", ci.max_lattice, "largest |G| for full subgroup lattice");
    app.add_option("--max-vertices", ci.max_vertices, "largest explicit graph side");
    app.add_option("--max-group-order", ci.max_group_order, "largest Cayley table");
    app.add_option("--threads", ci.threads, "parallelism degree");

    std::string spec, exp, kind = "full", family_file, construct_which, verify_pair, suite,
                bench_task;
    std::vector<std::string> groups;
    int a = 1, b = 1, d = 2, max_level = 3, A_id = -1, t = 1;
    bool prune = false, all = false;

    auto* c_group = app.add_subcommand("group", "group invariants");
    c_group->add_option("--group", spec, "group spec")->required();

    auto* c_graph = app.add_subcommand("graph", "build a generation graph");
    c_graph->add_option("--group", spec, "group spec")->required();
    c_graph->add_option("--a", a, "side-a tuple length")->required();
    c_graph->add_option("--b", b, "side-b tuple length")->required();
    c_graph->add_flag("--prune", prune, "delete isolated vertices");
    c_graph->add_option("--export", exp, "dot|json|csv");

    auto* c_swap = app.add_subcommand("swap", "build a swap graph");
    c_swap->add_option("--group", spec, "group spec")->required();
    c_swap->add_option("--d", d, "tuple length")->required();

    auto* c_lambda = app.add_subcommand("lambda", "anonymized component family");
    c_lambda->add_option("--group", spec, "group spec")->required();
    c_lambda->add_option("--max-level", max_level, "truncation level")->required();
    c_lambda->add_option("--kind", kind, "full|a1")->check(CLI::IsMember({"full", "a1"}));

    auto* c_recover = app.add_subcommand("recover", "recover invariants from a family file");
    c_recover->add_option("--family", family_file, "family JSON file")->required();
    c_recover->add_flag("--all", all, "run every recovery operation");

    auto* c_construct = app.add_subcommand("construct", "build the special constructions");
    c_construct->add_option("which", construct_which, "s3counter|pair605")->required();
    c_construct->add_option("--d", d, "tuple length for s3counter");
    c_construct->add_option("--verify", verify_pair, "verify tau on (a,b)");

    auto* c_crown = app.add_subcommand("crown", "crown-based power");
    c_crown->add_option("--L", spec, "monolithic group spec")->required();
    c_crown->add_option("--A", A_id, "minimal normal subgroup lattice id")->required();
    c_crown->add_option("--t", t, "power")->required();

    auto* c_spread = app.add_subcommand("spread", "spread / efficient generation report");
    c_spread->add_option("--group", spec, "group spec")->required();

    auto* c_tau = app.add_subcommand("tau", "automorphism orbits on generating tuples");
    c_tau->add_option("--simple", spec, "simple group spec")->required();
    c_tau->add_option("--d", d, "tuple length")->required();

    auto* c_verify = app.add_subcommand("verify", "run a verification suite");
    c_verify->add_option("suite", suite, "suite name")->required();
    c_verify->add_option("--groups", groups, "group specs or catalog:all / catalog:soluble");

    auto* c_bench = app.add_subcommand("bench", "benchmark timing table");
    c_bench->add_option("task", bench_task, "gamma-build|lattice|phi-enum")->required();

    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        auto cfg = resolve_config(ci);
        if (c_group->parsed()) return cmd_group(cfg, spec);
        if (c_graph->parsed()) return cmd_graph(cfg, spec, a, b, prune, exp);
        if (c_swap->parsed()) return cmd_swap(cfg, spec, d);
        if (c_lambda->parsed()) return cmd_lambda(cfg, spec, max_level, kind);
        if (c_recover->parsed()) return cmd_recover(family_file, all);
        if (c_construct->parsed()) return cmd_construct(cfg, construct_which, d, verify_pair);
        if (c_crown->parsed()) return cmd_crown(cfg, spec, A_id, t);
        if (c_spread->parsed()) return cmd_spread(cfg, spec);
        if (c_tau->parsed()) return cmd_tau(cfg, spec, d);
        if (c_verify->parsed()) return cmd_verify(cfg, suite, groups);
        if (c_bench->parsed()) return cmd_bench(cfg, bench_task);
    } catch (const gg::CapExceeded& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const gg::Error& e) {
        std::cerr << e.what() << "\n";
        return usage_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
