// Batch front end: loads the JSON file formats, dispatches to the kernel, and
// prints line-oriented deterministic reports. Exit codes: 0 success, 1
// validation or semantic failure, 2 resource cap exceeded, 3 parse error.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grpoly/builders.hpp"
#include "grpoly/checks.hpp"
#include "grpoly/equivalence.hpp"
#include "grpoly/homotopy.hpp"
#include "grpoly/io.hpp"
#include "grpoly/polynomial.hpp"
#include "grpoly/species.hpp"
#include "grpoly/trees.hpp"

namespace {

using grpoly::Caps;
using grpoly::LoadContext;
using nlohmann::json;

struct Options {
    std::string format = "text";  // text | json
    Caps caps;
    int trunc = -1;
    std::string data_dir;
};

// One report per invocation: text mode prints the payload lines as-is, json
// mode prints a single object with the command echo and a status field.
struct Report {
    bool as_json = false;
    std::string command;
    json j = json::object();
    std::ostringstream text;

    void put(const std::string& key, const json& value) { j[key] = value; }
    template <typename T>
    void row(const std::string& key, const T& value) {
        text << key << " " << value << "\n";
        j[key] = value;
    }
    void emit() {
        if (as_json) {
            j["command"] = command;
            j["status"] = "ok";
            std::cout << j.dump() << "\n";
        } else {
            std::cout << text.str();
        }
    }
};

grpoly::GroupoidPtr load_valid_groupoid(const std::string& path, LoadContext& ctx) {
    auto g = grpoly::load_groupoid_file(path, ctx);
    auto r = grpoly::validate_groupoid(*g);
    if (!r.ok) throw grpoly::validation_error(path + ": " + r.errors.front());
    return g;
}

grpoly::GroupoidMap load_valid_map(const std::string& path, LoadContext& ctx) {
    auto m = grpoly::load_map_file(path, ctx);
    auto r = grpoly::validate_map(m);
    if (!r.ok) throw grpoly::validation_error(path + ": " + r.errors.front());
    return m;
}

grpoly::PolyDiagram load_valid_polynomial(const std::string& path, LoadContext& ctx,
                                          int trunc) {
    auto P = grpoly::load_polynomial_file(path, ctx, trunc);
    auto r = grpoly::validate_polynomial(P);
    if (!r.ok) throw grpoly::validation_error(path + ": " + r.errors.front());
    return P;
}

grpoly::Species load_valid_species(const std::string& path, LoadContext& ctx,
                                   int trunc) {
    auto F = grpoly::load_species_file(path, ctx, trunc);
    auto r = grpoly::validate_species(F);
    if (!r.ok) throw grpoly::validation_error(path + ": " + r.errors.front());
    return F;
}

void describe_groupoid(Report& rep, const grpoly::FinGroupoid& g, bool dump) {
    rep.row("objects", g.num_objects());
    rep.row("morphisms", g.num_morphisms());
    rep.row("components", g.num_components());
    rep.row("card", g.cardinality().str());
    if (dump && rep.as_json)
        rep.put("groupoid", json::parse(grpoly::groupoid_to_json_text(g)));
}

int report_validation(Report& rep, const std::string& kind,
                      const grpoly::ValidationReport& r) {
    rep.command = "validate";
    rep.text << "kind " << kind << "\n";
    if (r.ok) {
        rep.text << "ok\n";
    } else {
        for (const auto& e : r.errors) rep.text << "error: " << e << "\n";
    }
    rep.put("kind", kind);
    rep.put("ok", r.ok);
    rep.put("errors", r.errors);
    rep.emit();
    return r.ok ? 0 : 1;
}

grpoly::ProdMode parse_mode(const std::string& mode) {
    if (mode == "auto") return grpoly::ProdMode::Auto;
    if (mode == "general") return grpoly::ProdMode::General;
    if (mode == "discrete") return grpoly::ProdMode::Discrete;
    throw grpoly::parse_error("unknown section mode '" + mode + "'");
}

std::string egf_line(const std::vector<grpoly::Rat>& coeffs) {
    std::string out;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i) out += ", ";
        out += coeffs[i].str();
    }
    return out;
}

json egf_json(const std::vector<grpoly::Rat>& coeffs) {
    json a = json::array();
    for (const auto& c : coeffs) a.push_back(c.str());
    return a;
}

// The input of an evaluation: a plain groupoid for one-variable diagrams, or
// a family file over the diagram's input end.
grpoly::FamilyOver eval_input(const std::string& path, LoadContext& ctx,
                              const grpoly::PolyDiagram& P) {
    std::string kind = grpoly::sniff_kind(path);
    if (kind == "family") {
        auto fam = grpoly::load_family_file(path, ctx);
        if (fam.base.get() != P.I.get())
            throw grpoly::validation_error(
                path + ": the family base must be the diagram's input groupoid "
                       "(reference the same file)");
        return fam;
    }
    if (kind != "groupoid")
        throw grpoly::validation_error(path + ": expected a groupoid or family file");
    if (!grpoly::is_one_variable(P))
        throw grpoly::validation_error(
            "a plain groupoid input needs a one-variable diagram; pass a family file");
    auto x = load_valid_groupoid(path, ctx);
    grpoly::FamilyOver fam;
    fam.base = P.I;
    fam.total = x;
    fam.proj = grpoly::constant_map(x, P.I, 0);
    return fam;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    std::string config_path;
    const char* env_data = std::getenv("GRPOLY_DATA");
    opt.data_dir = env_data ? env_data : "data";

    CLI::App app{"exact computations with finite groupoids and their polynomial "
                 "functors"};
    app.require_subcommand(1);
    app.add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--config", config_path, "JSON config file; flags win");
    auto* cap_obj = app.add_option("--cap-objects", opt.caps.max_objects,
                                   "largest derived groupoid, in objects");
    auto* cap_sec = app.add_option("--cap-sections", opt.caps.max_sections,
                                   "section search budget");
    auto* cap_mor = app.add_option("--cap-morphisms", opt.caps.max_morphisms,
                                   "largest derived groupoid, in morphisms");
    auto* cap_grp = app.add_option("--cap-group-order", opt.caps.max_group_order,
                                   "largest vertex group matched in equivalence search");
    auto* fmt_opt = app.get_option("--format");

    // Subcommand argument slots.
    std::string file_a, file_b, left, right, map_path, base_obj, action_path;
    std::string poly_path, input_path, species_path, outer_path, inner_path;
    std::string square_path, phi_path, beta_path, mode = "auto";
    int max_edges = 0;
    bool thick_y = false, thick_x = false;

    auto add_trunc = [&](CLI::App* sub) {
        sub->add_option("--trunc", opt.trunc, "truncation override for builtins");
    };

    auto* c_validate = app.add_subcommand("validate", "check a file against its laws");
    c_validate->add_option("file", file_a, "input file")->required();
    add_trunc(c_validate);

    auto* c_card = app.add_subcommand("card", "homotopy cardinality of a groupoid");
    c_card->add_option("file", file_a, "groupoid file")->required();

    auto* c_pi0 = app.add_subcommand("pi0", "connected components of a groupoid");
    c_pi0->add_option("file", file_a, "groupoid file")->required();

    auto* c_equiv = app.add_subcommand("equiv", "are two groupoids equivalent?");
    c_equiv->add_option("a", file_a, "first groupoid")->required();
    c_equiv->add_option("b", file_b, "second groupoid")->required();

    auto* c_pullback = app.add_subcommand("pullback", "homotopy pullback of two maps");
    c_pullback->add_option("--left", left, "map file")->required();
    c_pullback->add_option("--right", right, "map file")->required();

    auto* c_fibre = app.add_subcommand("fibre", "homotopy fibre of a map over an object");
    c_fibre->add_option("--map", map_path, "map file")->required();
    c_fibre->add_option("--base", base_obj, "base object identifier")->required();

    auto* c_quot = app.add_subcommand("quotient", "homotopy quotient of a group action");
    c_quot->add_option("--action", action_path, "action file")->required();

    auto* c_eval = app.add_subcommand("eval", "extension of a diagram at an input");
    c_eval->add_option("--poly", poly_path, "polynomial file")->required();
    c_eval->add_option("--input", input_path, "groupoid or family file")->required();
    c_eval->add_option("--mode", mode, "section mode: auto, general or discrete")
        ->check(CLI::IsMember({"auto", "general", "discrete"}));
    add_trunc(c_eval);

    auto* c_compose = app.add_subcommand("compose", "substitution of two diagrams");
    c_compose->add_option("--outer", outer_path, "polynomial file")->required();
    c_compose->add_option("--inner", inner_path, "polynomial file")->required();
    add_trunc(c_compose);

    auto* c_cart = app.add_subcommand("cartesian-check",
                                      "is the middle square a homotopy pullback?");
    c_cart->add_option("--square", square_path, "square file")->required();
    add_trunc(c_cart);

    auto* c_bc = app.add_subcommand("bc-check", "interchange laws over a cospan");
    c_bc->add_option("--phi", phi_path, "map file, left leg")->required();
    c_bc->add_option("--beta", beta_path, "map file, right leg")->required();
    c_bc->add_flag("--thick-y", thick_y, "doubled family over the right corner");
    c_bc->add_flag("--thick-x", thick_x, "doubled family over the left corner");

    auto* c_species = app.add_subcommand("species", "structures fibred over finite sets");
    c_species->require_subcommand(1);
    auto* c_egf = c_species->add_subcommand("egf", "generating series prefix");
    c_egf->add_option("--species", species_path, "species file")->required();
    add_trunc(c_egf);
    auto* c_topoly = c_species->add_subcommand("to-poly", "positions construction");
    c_topoly->add_option("--species", species_path, "species file")->required();
    add_trunc(c_topoly);
    auto* c_frompoly = c_species->add_subcommand("from-poly", "shapes construction");
    c_frompoly->add_option("--poly", poly_path, "polynomial file")->required();
    add_trunc(c_frompoly);
    auto* c_seval = c_species->add_subcommand("eval", "extension at an input groupoid");
    c_seval->add_option("--species", species_path, "species file")->required();
    c_seval->add_option("--input", input_path, "groupoid file")->required();
    add_trunc(c_seval);

    auto* c_trees = app.add_subcommand("trees", "decorated rooted trees");
    c_trees->require_subcommand(1);
    auto* c_tval = c_trees->add_subcommand("validate", "check a tree or decorated tree");
    c_tval->add_option("file", file_a, "tree or decorated tree file")->required();
    add_trunc(c_tval);
    auto* c_tenum = c_trees->add_subcommand("enumerate", "isomorphism classes by size");
    c_tenum->add_option("--poly", poly_path, "polynomial file")->required();
    c_tenum->add_option("--max-edges", max_edges, "largest edge count")->required();
    add_trunc(c_tenum);
    auto* c_tiso = c_trees->add_subcommand("iso", "are two decorated trees isomorphic?");
    c_tiso->add_option("a", file_a, "decorated tree file")->required();
    c_tiso->add_option("b", file_b, "decorated tree file")->required();
    add_trunc(c_tiso);

    auto* c_suite = app.add_subcommand("check-suite", "run the bundled self-tests");
    c_suite->add_option("--data", opt.data_dir, "fixture directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        // Config file fills in whatever the command line left untouched.
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw grpoly::parse_error("cannot open '" + config_path + "'");
            json cfg;
            try {
                cfg = json::parse(in);
            } catch (const json::exception& e) {
                throw grpoly::parse_error(config_path + ": " + e.what());
            }
            auto take_long = [&](const char* key, CLI::Option* o, long& slot) {
                if (cfg.contains(key) && o->count() == 0) {
                    if (!cfg.at(key).is_number_integer())
                        throw grpoly::parse_error(std::string(config_path) + ": '" +
                                                  key + "' must be an integer");
                    slot = cfg.at(key).get<long>();
                }
            };
            take_long("cap_objects", cap_obj, opt.caps.max_objects);
            take_long("cap_sections", cap_sec, opt.caps.max_sections);
            take_long("cap_morphisms", cap_mor, opt.caps.max_morphisms);
            take_long("cap_group_order", cap_grp, opt.caps.max_group_order);
            if (cfg.contains("format") && fmt_opt->count() == 0) {
                std::string f = cfg.at("format").is_string()
                                    ? cfg.at("format").get<std::string>()
                                    : "";
                if (f != "text" && f != "json")
                    throw grpoly::parse_error(config_path +
                                              ": 'format' must be text or json");
                opt.format = f;
            }
            if (cfg.contains("data_dir") && c_suite->get_option("--data")->count() == 0) {
                if (!cfg.at("data_dir").is_string())
                    throw grpoly::parse_error(config_path + ": 'data_dir' must be a string");
                opt.data_dir = cfg.at("data_dir").get<std::string>();
            }
        }

        LoadContext ctx;
        const Caps& caps = opt.caps;
        Report rep;
        rep.as_json = opt.format == "json";

        if (*c_validate) {
            std::string kind = grpoly::sniff_kind(file_a);
            grpoly::ValidationReport r;
            if (kind == "groupoid") {
                r = grpoly::validate_groupoid(*grpoly::load_groupoid_file(file_a, ctx));
            } else if (kind == "map") {
                r = grpoly::validate_map(grpoly::load_map_file(file_a, ctx));
            } else if (kind == "family") {
                auto fam = grpoly::load_family_file(file_a, ctx);
                r = grpoly::validate_map(fam.proj);
            } else if (kind == "polynomial") {
                r = grpoly::validate_polynomial(
                    grpoly::load_polynomial_file(file_a, ctx, opt.trunc));
            } else if (kind == "species") {
                r = grpoly::validate_species(
                    grpoly::load_species_file(file_a, ctx, opt.trunc));
            } else if (kind == "tree") {
                r = grpoly::validate_tree(grpoly::load_tree_file(file_a));
            } else if (kind == "ptree") {
                r = grpoly::validate_ptree(
                    grpoly::load_ptree_file(file_a, ctx, opt.trunc), caps);
            } else if (kind == "square") {
                r = grpoly::validate_square(
                    grpoly::load_square_file(file_a, ctx, opt.trunc));
            } else if (kind == "action") {
                r = grpoly::validate_action(grpoly::load_action_file(file_a, ctx));
            } else {
                throw grpoly::parse_error(file_a + ": unhandled kind '" + kind + "'");
            }
            return report_validation(rep, kind, r);
        }

        if (*c_card) {
            rep.command = "card";
            auto g = load_valid_groupoid(file_a, ctx);
            rep.text << g->cardinality().str() << "\n";
            rep.put("value", g->cardinality().str());
            rep.emit();
            return 0;
        }

        if (*c_pi0) {
            rep.command = "pi0";
            auto g = load_valid_groupoid(file_a, ctx);
            auto comps = grpoly::pi0(*g);
            rep.text << "components " << comps.size() << "\n";
            json jc = json::array();
            for (size_t c = 0; c < comps.size(); ++c) {
                rep.text << c << ":";
                json row = json::array();
                for (int x : comps[c]) {
                    rep.text << " " << g->object_id(x);
                    row.push_back(g->object_id(x));
                }
                rep.text << "\n";
                jc.push_back(row);
            }
            rep.put("components", jc);
            rep.emit();
            return 0;
        }

        if (*c_equiv) {
            rep.command = "equiv";
            auto a = load_valid_groupoid(file_a, ctx);
            auto b = load_valid_groupoid(file_b, ctx);
            auto eq = grpoly::equivalent(a, b, caps);
            rep.text << (eq.equivalent ? "true" : "false") << "\n";
            if (!eq.equivalent) rep.text << "reason " << eq.reason << "\n";
            rep.put("equivalent", eq.equivalent);
            if (!eq.equivalent) rep.put("reason", eq.reason);
            rep.emit();
            return eq.equivalent ? 0 : 1;
        }

        if (*c_pullback) {
            rep.command = "pullback";
            auto f = load_valid_map(left, ctx);
            auto g = load_valid_map(right, ctx);
            auto pb = grpoly::homotopy_pullback(f, g, caps);
            describe_groupoid(rep, *pb.apex, true);
            rep.emit();
            return 0;
        }

        if (*c_fibre) {
            rep.command = "fibre";
            auto p = load_valid_map(map_path, ctx);
            int x = p.target->object_index(base_obj);
            if (x < 0)
                throw grpoly::validation_error("the target has no object '" + base_obj +
                                               "'");
            auto fib = grpoly::homotopy_fibre(p, x, caps);
            describe_groupoid(rep, *fib.gpd, true);
            rep.emit();
            return 0;
        }

        if (*c_quot) {
            rep.command = "quotient";
            auto act = grpoly::load_action_file(action_path, ctx);
            auto r = grpoly::validate_action(act);
            if (!r.ok)
                throw grpoly::validation_error(action_path + ": " + r.errors.front());
            auto q = grpoly::homotopy_quotient(act, caps);
            describe_groupoid(rep, *q.g, true);
            rep.emit();
            return 0;
        }

        if (*c_eval) {
            rep.command = "eval";
            auto P = load_valid_polynomial(poly_path, ctx, opt.trunc);
            auto x = eval_input(input_path, ctx, P);
            auto ext = grpoly::extend(P, x, parse_mode(mode), caps);
            describe_groupoid(rep, *ext.total, true);
            rep.emit();
            return 0;
        }

        if (*c_compose) {
            rep.command = "compose";
            auto outer = load_valid_polynomial(outer_path, ctx, opt.trunc);
            auto inner = load_valid_polynomial(inner_path, ctx, opt.trunc);
            auto comp = grpoly::compose1(outer, inner, caps);
            rep.text << "shapes " << comp.B->num_objects() << " "
                     << comp.B->num_morphisms() << "\n";
            rep.text << "positions " << comp.E->num_objects() << " "
                     << comp.E->num_morphisms() << "\n";
            rep.text << "components " << comp.B->num_components() << "\n";
            rep.put("shape_objects", comp.B->num_objects());
            rep.put("shape_morphisms", comp.B->num_morphisms());
            rep.put("position_objects", comp.E->num_objects());
            rep.put("position_morphisms", comp.E->num_morphisms());
            rep.put("components", comp.B->num_components());
            if (rep.as_json)
                rep.put("polynomial",
                        json::parse(grpoly::polynomial_to_json_text(comp)));
            rep.emit();
            return 0;
        }

        if (*c_cart) {
            rep.command = "cartesian-check";
            auto sq = grpoly::load_square_file(square_path, ctx, opt.trunc);
            auto r = grpoly::validate_square(sq);
            if (!r.ok)
                throw grpoly::validation_error(square_path + ": " + r.errors.front());
            bool cart = grpoly::is_homotopy_cartesian(sq, caps);
            rep.text << (cart ? "true" : "false") << "\n";
            rep.put("cartesian", cart);
            rep.emit();
            return cart ? 0 : 1;
        }

        if (*c_bc) {
            rep.command = "bc-check";
            auto phi = load_valid_map(phi_path, ctx);
            auto beta = load_valid_map(beta_path, ctx);
            auto sq = grpoly::square_from_cospan(phi, beta, caps);
            auto fam_over = [&](grpoly::GroupoidPtr base, bool thick) {
                if (!thick) return grpoly::identity_family(base);
                auto pr = grpoly::product_groupoid(base, grpoly::discrete_n(2), caps);
                grpoly::FamilyOver f;
                f.base = base;
                f.total = pr.g;
                f.proj = pr.pr1;
                return f;
            };
            auto bc = grpoly::beck_chevalley_check(sq, fam_over(sq.Y, thick_y),
                                                   fam_over(sq.X, thick_x), caps);
            rep.row("sum_left", bc.sum_left.str());
            rep.row("sum_right", bc.sum_right.str());
            rep.row("sum_ok", bc.sum_ok ? "true" : "false");
            rep.row("prod_left", bc.prod_left.str());
            rep.row("prod_right", bc.prod_right.str());
            rep.row("prod_ok", bc.prod_ok ? "true" : "false");
            rep.j["sum_ok"] = bc.sum_ok;
            rep.j["prod_ok"] = bc.prod_ok;
            rep.emit();
            return bc.sum_ok && bc.prod_ok ? 0 : 1;
        }

        if (*c_egf) {
            rep.command = "species egf";
            auto F = load_valid_species(species_path, ctx, opt.trunc);
            auto coeffs = grpoly::egf(F, caps);
            rep.text << egf_line(coeffs) << "\n";
            rep.put("egf", egf_json(coeffs));
            rep.emit();
            return 0;
        }

        if (*c_topoly) {
            rep.command = "species to-poly";
            auto F = load_valid_species(species_path, ctx, opt.trunc);
            auto P = grpoly::species_to_polynomial(F, caps);
            rep.text << "shapes " << P.B->num_objects() << " " << P.B->num_morphisms()
                     << "\n";
            rep.text << "positions " << P.E->num_objects() << " "
                     << P.E->num_morphisms() << "\n";
            rep.text << "truncation " << P.truncation << "\n";
            rep.put("shape_objects", P.B->num_objects());
            rep.put("shape_morphisms", P.B->num_morphisms());
            rep.put("position_objects", P.E->num_objects());
            rep.put("position_morphisms", P.E->num_morphisms());
            rep.put("truncation", P.truncation);
            if (rep.as_json)
                rep.put("polynomial", json::parse(grpoly::polynomial_to_json_text(P)));
            rep.emit();
            return 0;
        }

        if (*c_frompoly) {
            rep.command = "species from-poly";
            auto P = load_valid_polynomial(poly_path, ctx, opt.trunc);
            int n = opt.trunc >= 0 ? opt.trunc : P.truncation;
            if (n < 0)
                throw grpoly::validation_error(
                    "the diagram carries no truncation; pass --trunc");
            auto F = grpoly::polynomial_to_species(P, n, caps);
            auto coeffs = grpoly::egf(F, caps);
            rep.row("truncation", F.truncation);
            rep.row("objects", F.total->num_objects());
            rep.row("morphisms", F.total->num_morphisms());
            rep.text << "egf " << egf_line(coeffs) << "\n";
            rep.put("egf", egf_json(coeffs));
            if (rep.as_json)
                rep.put("species", json::parse(grpoly::species_to_json_text(F)));
            rep.emit();
            return 0;
        }

        if (*c_seval) {
            rep.command = "species eval";
            auto F = load_valid_species(species_path, ctx, opt.trunc);
            auto x = load_valid_groupoid(input_path, ctx);
            auto ext = grpoly::species_extension(F, x, caps);
            describe_groupoid(rep, *ext, true);
            rep.emit();
            return 0;
        }

        if (*c_tval) {
            std::string kind = grpoly::sniff_kind(file_a);
            grpoly::ValidationReport r;
            if (kind == "tree") {
                r = grpoly::validate_tree(grpoly::load_tree_file(file_a));
            } else if (kind == "ptree") {
                r = grpoly::validate_ptree(
                    grpoly::load_ptree_file(file_a, ctx, opt.trunc), caps);
            } else {
                throw grpoly::validation_error(file_a +
                                               ": expected a tree or decorated tree");
            }
            return report_validation(rep, kind, r);
        }

        if (*c_tenum) {
            rep.command = "trees enumerate";
            auto P = load_valid_polynomial(poly_path, ctx, opt.trunc);
            auto classes = grpoly::enumerate_ptrees(P, max_edges, caps);
            rep.text << "classes " << classes.size() << "\n";
            json jc = json::array();
            for (const auto& c : classes) {
                rep.text << c.edges << " " << c.aut << " " << c.form << "\n";
                jc.push_back(json{{"edges", c.edges}, {"aut", c.aut}, {"form", c.form}});
            }
            rep.put("classes", jc);
            rep.emit();
            return 0;
        }

        if (*c_tiso) {
            rep.command = "trees iso";
            auto a = grpoly::load_ptree_file(file_a, ctx, opt.trunc);
            auto b = grpoly::load_ptree_file(file_b, ctx, opt.trunc);
            for (const auto* pt : {&a, &b}) {
                auto r = grpoly::validate_ptree(*pt, caps);
                if (!r.ok) throw grpoly::validation_error(r.errors.front());
            }
            bool iso = grpoly::ptree_isomorphic(a, b, caps);
            rep.text << (iso ? "true" : "false") << "\n";
            rep.put("isomorphic", iso);
            rep.emit();
            return iso ? 0 : 1;
        }

        if (*c_suite) {
            rep.command = "check-suite";
            using clk = std::chrono::steady_clock;
            int bad = 0;
            json jc = json::array();
            std::vector<std::function<grpoly::CheckResult()>> batteries = {
                [&] { return grpoly::check_fixtures(opt.data_dir, caps); },
                [&] { return grpoly::check_quotient_cardinalities(caps); },
                [&] { return grpoly::check_loop_spaces(caps); },
                [&] { return grpoly::check_fibration_reduction(caps); },
                [&] { return grpoly::check_canonical_egfs(caps); },
                [&] { return grpoly::check_extension_values(caps); },
                [&] { return grpoly::check_round_trips(caps); },
                [&] { return grpoly::check_beck_chevalley(caps); },
                [&] { return grpoly::check_cartesian_chain(caps); },
                [&] { return grpoly::check_tree_enumeration(caps); },
                [&] { return grpoly::check_fubini(caps); },
                [&] { return grpoly::check_composition(caps); },
            };
            for (const auto& run : batteries) {
                auto t0 = clk::now();
                auto r = run();
                double ms =
                    std::chrono::duration<double, std::milli>(clk::now() - t0).count();
                std::cerr << "# " << r.name << " " << static_cast<long>(ms + 0.5)
                          << "ms\n";
                rep.text << (r.ok ? "ok " : "FAIL ") << r.name << ": " << r.detail
                         << "\n";
                jc.push_back(json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
                if (!r.ok) ++bad;
            }
            rep.text << (bad == 0 ? "suite ok" : "suite FAIL") << "\n";
            rep.put("checks", jc);
            rep.put("failures", bad);
            rep.emit();
            return bad == 0 ? 0 : 1;
        }

        throw grpoly::parse_error("no subcommand handled");  // unreachable
    } catch (const grpoly::cap_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const grpoly::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const grpoly::validation_error& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
