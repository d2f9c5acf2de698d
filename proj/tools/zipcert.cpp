#include "zipcert/certify.hpp"
#include "zipcert/cylinders.hpp"
#include "zipcert/fixtures.hpp"
#include "zipcert/homology.hpp"
#include "zipcert/io.hpp"
#include "zipcert/iso.hpp"
#include "zipcert/ops.hpp"
#include "zipcert/recognize.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace zipcert;

namespace {

constexpr int exit_yes = 0, exit_no = 1, exit_unknown = 2, exit_usage = 3, exit_input = 4;

struct Global {
    std::string format = "text";
    std::string emit;
    std::size_t budget = SearchOptions{}.node_budget;
    unsigned jobs = 1;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PosetError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(slurp(path));
    } catch (const Json::parse_error& e) {
        throw PosetError(path + ": " + e.what());
    }
}

void emit(const Global& g, const std::string& text) {
    if (g.emit.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.emit, std::ios::binary);
    if (!out) throw PosetError("cannot write '" + g.emit + "'");
    out << text;
}

int truth_exit(Truth t) { return t == Truth::yes ? exit_yes : t == Truth::no ? exit_no : exit_unknown; }

int status_exit(SearchStatus s) {
    return s == SearchStatus::found ? exit_yes : s == SearchStatus::refuted ? exit_no : exit_unknown;
}

SearchOptions search_options(const Global& g) {
    SearchOptions o;
    o.node_budget = g.budget;
    o.jobs = g.jobs;
    return o;
}

// Reports a search outcome; the certificate goes to stdout or the --emit file.
int report(const Global& g, SearchStatus status, const SearchStats& stats, const std::optional<Json>& cert,
           const std::string& note) {
    if (g.format == "json") {
        Json out{{"status", to_string(status)}, {"nodes", stats.nodes}, {"memo_hits", stats.memo_hits}, {"note", note}};
        if (cert && g.emit.empty()) out["certificate"] = *cert;
        std::cout << out.dump(2) << "\n";
        if (cert && !g.emit.empty()) emit(g, cert->dump(2) + "\n");
    } else {
        std::cerr << to_string(status) << ": " << note << " (" << stats.nodes << " nodes)\n";
        if (cert) emit(g, cert->dump(2) + "\n");
    }
    return status_exit(status);
}

int print_verdict(const Global& g, const std::string& what, const Verdict& v) {
    if (g.format == "json") {
        std::cout << Json{{"property", what}, {"verdict", to_string(v.value)}, {"witness", v.witness}}.dump(2) << "\n";
    } else {
        std::cout << what << ": " << to_string(v.value);
        if (!v.witness.empty()) std::cout << " (" << v.witness << ")";
        std::cout << "\n";
    }
    return truth_exit(v.value);
}

void print_poset(const Global& g, const Poset& p, const std::string& name) {
    if (g.format == "json") {
        Json covers = Json::array();
        for (auto [a, b] : p.covers()) covers.push_back({p.label(a), p.label(b)});
        emit(g, Json{{"name", name}, {"elements", p.labels()}, {"covers", covers}}.dump(2) + "\n");
    } else {
        emit(g, write_poset(p, name));
    }
}

Mask labels_mask(const Poset& p, const std::vector<std::string>& labels) {
    Mask m = p.empty_mask();
    for (const auto& l : labels) {
        auto x = p.find(l);
        if (!x) throw UsageError("unknown element '" + l + "'");
        m.set(*x);
    }
    return m;
}

// ---- subcommands --------------------------------------------------------------------

int cmd_make(const Global& g, const std::string& kind, const std::vector<std::string>& args) {
    auto size_arg = [&]() -> std::size_t {
        if (args.size() != 1) throw UsageError(kind + " needs one size argument");
        try {
            return std::stoul(args[0]);
        } catch (const std::exception&) {
            throw UsageError("bad size '" + args[0] + "'");
        }
    };
    // Simplices are written as facet text so they can serve as edge-zipping targets.
    auto simplex_facets = [&](bool boundary) {
        const std::size_t n = size_arg();
        std::vector<std::string> verts;
        for (std::size_t i = 0; i <= n; ++i) verts.push_back(std::to_string(i));
        std::vector<std::vector<std::string>> facets;
        if (!boundary) facets.push_back(verts);
        else
            for (std::size_t skip = 0; skip <= n && n > 0; ++skip) {
                std::vector<std::string> f = verts;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(skip));
                facets.push_back(f);
            }
        std::string name = (boundary ? "boundary-simplex" : "simplex") + args[0];
        if (g.format == "json" || facets.empty()) print_poset(g, boundary ? boundary_simplex(n) : simplex(n + 1), name);
        else emit(g, write_facets(FacetComplex::from_facets(facets), name));
    };
    if (kind == "simplex") simplex_facets(false);
    else if (kind == "boundary-simplex") simplex_facets(true);
    else if (kind == "cube") print_poset(g, cube(size_arg()), "cube" + args[0]);
    else if (kind == "octahedron") emit(g, write_facets(octahedron(), "octahedron"));
    else if (kind == "dunce-hat") emit(g, write_facets(dunce_hat(), "dunce-hat"));
    else if (kind == "mirror") {
        if (args.size() != 1) throw UsageError("mirror needs a facet file");
        Subject s = read_subject_file(args[0]);
        if (!s.complex) throw UsageError("mirror needs a facet file");
        print_poset(g, mirror(*s.complex), "mirror");
    } else {
        throw UsageError("unknown fixture '" + kind + "'");
    }
    return exit_yes;
}

int cmd_check(const Global& g, const std::string& name, const std::string& file, const std::vector<std::string>& subset) {
    Subject s = read_subject_file(file);
    const Poset& p = s.poset;
    std::optional<Mask> sub;
    if (!subset.empty()) sub = labels_mask(p, subset);
    auto with_subset = [&](auto f) {
        if (!sub) throw UsageError(name + " needs --subset");
        return f(*sub);
    };
    static const std::map<std::string, std::function<Verdict(const Poset&)>> simple = {
        {"simplicial", [](const Poset& q) { return is_simplicial(q); }},
        {"cubical", [](const Poset& q) { return is_cubical(q); }},
        {"cubosimplicial", [](const Poset& q) { return is_cubosimplicial(q); }},
        {"simple", [](const Poset& q) { return is_simple(q); }},
        {"flag", [](const Poset& q) { return is_flag(q); }},
        {"nonsingular", [](const Poset& q) { return is_nonsingular(q); }},
        {"pure", [](const Poset& q) { return is_pure(q); }},
        {"sphere", [](const Poset& q) { return is_sphere(q); }},
        {"ball", [](const Poset& q) { return is_ball(q); }},
        {"cell-complex", [](const Poset& q) { return is_cell_complex(q); }},
        {"pseudo-manifold", [](const Poset& q) { return is_pseudo_manifold(q); }},
        {"conditionally-complete",
         [](const Poset& q) { return Verdict::from_bool(is_conditionally_complete(q), "not conditionally complete"); }},
        {"z-acyclic", [](const Poset& q) { return Verdict::from_bool(is_z_acyclic(q), "nontrivial reduced homology"); }},
    };
    if (auto it = simple.find(name); it != simple.end()) return print_verdict(g, name, it->second(p));
    SearchOptions opt = search_options(g);
    if (name == "collapsible") return print_verdict(g, name, is_collapsible_poset(p, opt));
    if (name == "manifold")
        return print_verdict(g, name, is_manifold(p, sub.value_or(p.empty_mask())));
    if (name == "codim-one") return print_verdict(g, name, with_subset([&](const Mask& m) { return is_codim_one(p, m); }));
    if (name == "pure-codim-one")
        return print_verdict(g, name, with_subset([&](const Mask& m) { return is_pure_codim_one(p, m); }));
    if (name == "hochster-constructible") {
        if (!s.complex) throw UsageError("hochster-constructible needs a facet file");
        auto r = hochster_construction(*s.complex, opt);
        Verdict v = r.status == SearchStatus::found     ? Verdict::yes("construction tree found")
                    : r.status == SearchStatus::refuted ? Verdict::no("no construction tree exists")
                                                        : Verdict::unknown("node budget exhausted");
        return print_verdict(g, name, v);
    }
    throw UsageError("unknown recognizer '" + name + "'");
}

int cmd_search(const Global& g, const std::string& kind, const std::string& file, const std::string& goal,
               const std::string& target_file) {
    Subject s = read_subject_file(file);
    const Poset& p = s.poset;
    SearchOptions opt = search_options(g);
    if (kind == "constructibility") {
        if (!goal.empty()) throw UsageError("constructibility takes no --goal");
        auto r = find_construction(p, opt);
        std::optional<Json> cert;
        if (r.tree) cert = certificate_json(p, *r.tree);
        return report(g, r.status, r.stats, cert,
                      r.tree ? std::to_string(r.tree->nodes.size()) + " tree nodes"
                      : r.status == SearchStatus::refuted ? "no construction tree exists"
                                                          : "node budget exhausted");
    }
    if (kind == "zipping") {
        ZipGoal zg = goal.empty() || goal == "singleton" ? ZipGoal::singleton
                     : goal == "dual-cone"                ? ZipGoal::dual_cone
                                                          : throw UsageError("zipping goal is singleton or dual-cone");
        auto r = find_zipping(p, zg, opt);
        std::optional<Json> cert;
        if (r.status == SearchStatus::found) cert = certificate_json(p, r.steps, zg);
        return report(g, r.status, r.stats, cert,
                      r.status == SearchStatus::found     ? std::to_string(r.steps.size()) + " zips"
                      : r.status == SearchStatus::refuted ? "no zipping reaches the goal"
                                                          : "node budget exhausted");
    }
    if (kind == "edge-zipping") {
        if (!s.complex) throw UsageError("edge-zipping needs a facet file");
        if (target_file.empty()) throw UsageError("edge-zipping needs --target <facet file>");
        Subject t = read_subject_file(target_file);
        if (!t.complex) throw UsageError("the edge-zipping target must be a facet file");
        auto r = find_edge_zipping(*s.complex, *t.complex, opt);
        std::optional<Json> cert;
        if (r.status == SearchStatus::found) cert = certificate_json(p, r.steps, *t.complex);
        return report(g, r.status, r.stats, cert,
                      r.status == SearchStatus::found     ? std::to_string(r.steps.size()) + " edge contractions"
                      : r.status == SearchStatus::refuted ? "no edge zipping reaches the target"
                                                          : "node budget exhausted");
    }
    if (kind == "shelling") {
        ShellGoal sg = goal.empty() || goal == "cone" ? ShellGoal::cone
                       : goal == "empty"               ? ShellGoal::empty
                                                       : throw UsageError("shelling goal is cone or empty");
        auto r = find_shelling(p, sg, opt);
        std::optional<Json> cert;
        if (r.status == SearchStatus::found) cert = certificate_json(p, r.steps, sg);
        return report(g, r.status, r.stats, cert,
                      r.status == SearchStatus::found     ? std::to_string(r.steps.size()) + " top-level steps"
                      : r.status == SearchStatus::refuted ? "no shelling exists"
                                                          : "node budget exhausted");
    }
    if (kind == "collapse") {
        std::optional<Mask> target;
        if (!goal.empty() && goal != "point") {
            std::vector<std::string> labels;
            std::istringstream in(goal);
            for (std::string l; std::getline(in, l, ',');) labels.push_back(l);
            target = p.closure(labels_mask(p, labels));
        }
        auto r = find_collapse(p, target, opt);
        std::optional<Json> cert;
        if (r.status == SearchStatus::found) cert = certificate_json(p, target, r.steps);
        return report(g, r.status, r.stats, cert,
                      r.status == SearchStatus::found     ? std::to_string(r.steps.size()) + " top-level collapses"
                      : r.status == SearchStatus::refuted ? "no collapse reaches the target"
                                                          : "node budget exhausted");
    }
    throw UsageError("unknown search '" + kind + "'");
}

int cmd_verify(const Global& g, const std::string& cert_file, const std::string& subject_file) {
    Json cert = read_json(cert_file);
    Subject s = read_subject_file(subject_file);
    CheckResult r = verify_certificate(cert, s);
    if (g.format == "json") std::cout << Json{{"valid", r.ok}, {"reason", r.reason}}.dump(2) << "\n";
    else std::cout << (r ? "valid" : "invalid: " + r.reason) << "\n";
    return r ? exit_yes : exit_no;
}

int cmd_translate(const Global& g, const std::string& kind, const std::string& cert_file, const std::string& subject_file) {
    Json cert = read_json(cert_file);
    Subject s = read_subject_file(subject_file);
    const Poset& p = s.poset;
    Json out;
    if (kind == "edge-zip-to-zip") {
        if (!s.complex) throw UsageError("edge-zip-to-zip needs the facet file of the complex");
        if (auto ok = verify_certificate(cert, s); !ok) throw PosetError("input certificate rejected: " + ok.reason);
        auto steps = zipping_from_edge_zipping(*s.complex, edge_zipping_from_json(cert));
        // The zips carry K onto the face poset of the edge-zipping target.
        auto target = FacetComplex::from_facets(cert["payload"]["target"].get<std::vector<std::vector<std::string>>>());
        out = certificate_json(p, steps, target);
    } else if (kind == "construction-to-zip") {
        Poset d = p.dual();
        Subject ds{"", d, std::nullopt};
        if (auto ok = verify_certificate(cert, ds); !ok)
            throw PosetError("construction must be for the dual of the subject: " + ok.reason);
        ZipBridgeStats stats;
        auto steps = zipping_from_construction(p, construction_from_json(cert, d), search_options(g), &stats);
        if (stats.fallbacks) std::cerr << "note: " << stats.fallbacks << " scheme updates fell back to search\n";
        out = certificate_json(p, steps, ZipGoal::singleton);
    } else if (kind == "collapse-to-barycentric") {
        if (auto ok = verify_certificate(cert, s); !ok) throw PosetError("input certificate rejected: " + ok.reason);
        const Json& t = cert["payload"]["target"];
        if (!t.is_null()) throw UsageError("only collapses onto a point lift to the barycentric subdivision");
        out = certificate_json(p, barycentric_collapse_lift(p, collapse_from_json(cert)), 1);
    } else {
        throw UsageError("unknown translation '" + kind + "'");
    }
    emit(g, out.dump(2) + "\n");
    return exit_yes;
}

int cmd_homology(const Global& g, const std::string& file, bool reduced) {
    Subject s = read_subject_file(file);
    HomologyProfile h = homology(s.poset, reduced);
    Json groups = Json::array();
    std::ostringstream text;
    for (std::size_t i = 0; i < h.betti.size(); ++i) {
        int deg = h.first_degree + static_cast<int>(i);
        std::vector<std::string> tors;
        for (const auto& t : h.torsion[i]) tors.push_back(t.get_str());
        groups.push_back({{"degree", deg}, {"rank", h.betti[i]}, {"torsion", tors}});
        text << "H" << deg << ": ";
        std::string sep;
        if (h.betti[i]) {
            text << "Z";
            if (h.betti[i] > 1) text << "^" << h.betti[i];
            sep = " + ";
        }
        for (const auto& t : tors) {
            text << sep << "Z/" << t;
            sep = " + ";
        }
        if (sep.empty()) text << "0";
        text << "\n";
    }
    text << "euler characteristic: " << h.euler << "\n";
    if (g.format == "json") std::cout << Json{{"reduced", reduced}, {"groups", groups}, {"euler", h.euler}}.dump(2) << "\n";
    else std::cout << text.str();
    return exit_yes;
}

int cmd_op(const Global& g, const std::string& name, const std::vector<std::string>& files, const std::string& map_file,
           const std::vector<std::string>& subset) {
    auto need = [&](std::size_t n) {
        if (files.size() != n) throw UsageError(name + " takes " + std::to_string(n) + " poset file(s)");
    };
    auto poset = [&](std::size_t i) { return read_subject_file(files[i]).poset; };
    auto map = [&]() {
        need(2);
        if (map_file.empty()) throw UsageError(name + " needs --map <file>");
        return parse_map(slurp(map_file), poset(0), poset(1));
    };
    static const std::map<std::string, Poset (*)(const Poset&)> unary = {
        {"dual", [](const Poset& p) { return p.dual(); }},
        {"cone", [](const Poset& p) { return cone(p); }},
        {"dual-cone", [](const Poset& p) { return dual_cone(p); }},
        {"barycentric", [](const Poset& p) { return barycentric(p); }},
        {"canonical", [](const Poset& p) { return canonical(p); }},
        {"handles", [](const Poset& p) { return handles(p); }},
    };
    static const std::map<std::string, Poset (*)(const Poset&, const Poset&)> binary = {
        {"join", [](const Poset& p, const Poset& q) { return join(p, q); }},
        {"product", [](const Poset& p, const Poset& q) { return product(p, q); }},
        {"prejoin", [](const Poset& p, const Poset& q) { return prejoin(p, q); }},
        {"disjoint-union", [](const Poset& p, const Poset& q) { return disjoint_union(p, q); }},
    };
    Poset out;
    if (auto it = unary.find(name); it != unary.end()) {
        need(1);
        out = it->second(poset(0));
    } else if (auto it2 = binary.find(name); it2 != binary.end()) {
        need(2);
        out = it2->second(poset(0), poset(1));
    } else if (name == "mc") {
        out = transitive_closure(mc(map()));
    } else if (name == "hocolim-reconstruct") {
        out = hocolim_reconstruct(map()).hocolim;
    } else if (name == "quotient") {
        need(1);
        Poset p = poset(0);
        if (subset.empty()) throw UsageError("quotient needs --subset");
        out = quotient(p, labels_mask(p, subset));
    } else {
        throw UsageError("unknown operation '" + name + "'");
    }
    print_poset(g, out, name);
    return exit_yes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zipcert: finite poset constructions and certified searches"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--emit", g.emit, "Write the main output (poset or certificate) to this file");
    app.add_option("--budget", g.budget, "Search node budget")->check(CLI::PositiveNumber);
    app.add_option("--jobs", g.jobs, "Worker threads for searches")->check(CLI::Range(1u, 256u));
    std::function<int()> action;

    std::string kind, file, file2, goal, target, map_file;
    std::vector<std::string> args, files, subset;
    bool reduced = false;

    auto* make = app.add_subcommand("make", "Generate a fixture: simplex n | boundary-simplex n | cube n | octahedron | dunce-hat | mirror <facet file>");
    make->add_option("fixture", kind)->required();
    make->add_option("args", args);
    make->callback([&] { action = [&] { return cmd_make(g, kind, args); }; });

    auto* check = app.add_subcommand("check", "Run a recognizer on a poset or facet file");
    check->add_option("property", kind)->required();
    check->add_option("file", file)->required();
    check->add_option("--subset", subset, "Labels of a subposet (codim-one, manifold boundary)");
    check->callback([&] { action = [&] { return cmd_check(g, kind, file, subset); }; });

    auto* search = app.add_subcommand("search", "Search for a certificate: constructibility | zipping | edge-zipping | shelling | collapse");
    search->add_option("kind", kind)->required();
    search->add_option("file", file)->required();
    search->add_option("--goal", goal, "zipping: singleton|dual-cone; shelling: cone|empty; collapse: point or comma-separated labels");
    search->add_option("--target", target, "Facet file of the edge-zipping target");
    search->callback([&] { action = [&] { return cmd_search(g, kind, file, goal, target); }; });

    auto* verify = app.add_subcommand("verify", "Replay a certificate against its subject");
    verify->add_option("certificate", file)->required();
    verify->add_option("subject", file2)->required();
    verify->callback([&] { action = [&] { return cmd_verify(g, file, file2); }; });

    auto* translate = app.add_subcommand("translate", "Convert a certificate: edge-zip-to-zip | construction-to-zip | collapse-to-barycentric");
    translate->add_option("kind", kind)->required();
    translate->add_option("certificate", file)->required();
    translate->add_option("subject", file2, "The complex K (for construction-to-zip the certificate is for K*)")->required();
    translate->callback([&] { action = [&] { return cmd_translate(g, kind, file, file2); }; });

    auto* hom = app.add_subcommand("homology", "Integral homology of the order complex");
    hom->add_option("file", file)->required();
    hom->add_flag("--reduced", reduced);
    hom->callback([&] { action = [&] { return cmd_homology(g, file, reduced); }; });

    auto* op = app.add_subcommand("op", "Apply a construction: dual | cone | dual-cone | join | product | prejoin | disjoint-union | barycentric | canonical | handles | mc | quotient | hocolim-reconstruct");
    op->add_option("operation", kind)->required();
    op->add_option("files", files)->required();
    op->add_option("--map", map_file, "Map file for mc and hocolim-reconstruct");
    op->add_option("--subset", subset, "Labels collapsed by quotient");
    op->callback([&] { action = [&] { return cmd_op(g, kind, files, map_file, subset); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
}
