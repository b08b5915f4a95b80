// Python bindings for the exact groupoid engine. Cardinalities and series
// coefficients cross the boundary as canonical "p/q" strings so nothing is
// ever rounded; wrap them in fractions.Fraction on the Python side.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "grpoly/builders.hpp"
#include "grpoly/equivalence.hpp"
#include "grpoly/homotopy.hpp"
#include "grpoly/io.hpp"
#include "grpoly/polynomial.hpp"
#include "grpoly/species.hpp"
#include "grpoly/trees.hpp"

namespace py = pybind11;
using namespace grpoly;

namespace {

// Groupoids are immutable; the const is shed only to satisfy the holder.
std::shared_ptr<FinGroupoid> unconst(GroupoidPtr g) {
    return std::const_pointer_cast<FinGroupoid>(g);
}

std::vector<std::vector<std::string>> pi0_ids(const FinGroupoid& g) {
    std::vector<std::vector<std::string>> out;
    for (const auto& comp : pi0(g)) {
        std::vector<std::string> ids;
        for (int x : comp) ids.push_back(g.object_id(x));
        out.push_back(std::move(ids));
    }
    return out;
}

GroupTable named_group(const std::string& kind, int k) {
    if (kind == "trivial") return GroupTable::trivial();
    if (kind == "cyclic") return GroupTable::cyclic(k);
    if (kind == "symmetric") return GroupTable::symmetric(k);
    if (kind == "klein") return GroupTable::klein();
    if (kind == "dihedral") return GroupTable::dihedral(k);
    throw parse_error("unknown group kind '" + kind +
                      "' (trivial, cyclic, symmetric, klein, dihedral)");
}

// One-variable extension at a plain groupoid, as in the batch tool.
FamilyOver wrap_input(const PolyDiagram& P, GroupoidPtr x) {
    if (!is_one_variable(P))
        throw validation_error("this diagram needs a family input, not a groupoid");
    FamilyOver fam;
    fam.base = P.I;
    fam.total = x;
    fam.proj = constant_map(x, P.I, 0);
    return fam;
}

std::vector<std::string> egf_strings(const Species& F, const Caps& caps) {
    std::vector<std::string> out;
    for (const auto& c : egf(F, caps)) out.push_back(c.str());
    return out;
}

}  // namespace

PYBIND11_MODULE(_grpoly, m) {
    m.doc() = "exact computations with finite groupoids and their polynomial "
              "functors";

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<cap_error>(m, "CapError", PyExc_RuntimeError);
    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);

    py::class_<Caps>(m, "Caps")
        .def(py::init<>())
        .def_readwrite("max_objects", &Caps::max_objects)
        .def_readwrite("max_sections", &Caps::max_sections)
        .def_readwrite("max_group_order", &Caps::max_group_order)
        .def_readwrite("max_morphisms", &Caps::max_morphisms);

    py::class_<FinGroupoid, std::shared_ptr<FinGroupoid>>(m, "Groupoid")
        .def_property_readonly("name", &FinGroupoid::name)
        .def_property_readonly("num_objects", &FinGroupoid::num_objects)
        .def_property_readonly("num_morphisms", &FinGroupoid::num_morphisms)
        .def_property_readonly("num_components", &FinGroupoid::num_components)
        .def("cardinality", [](const FinGroupoid& g) { return g.cardinality().str(); })
        .def("objects",
             [](const FinGroupoid& g) {
                 std::vector<std::string> ids;
                 for (int i = 0; i < g.num_objects(); ++i)
                     ids.push_back(g.object_id(i));
                 return ids;
             })
        .def("components", [](const FinGroupoid& g) { return pi0_ids(g); })
        .def("validate",
             [](const FinGroupoid& g) {
                 auto r = validate_groupoid(g);
                 return std::make_pair(r.ok, r.errors);
             })
        .def("to_json", [](const FinGroupoid& g) { return groupoid_to_json_text(g); })
        .def("__repr__", [](const FinGroupoid& g) {
            return "<Groupoid " + g.name() + ": " + std::to_string(g.num_objects()) +
                   " objects, card " + g.cardinality().str() + ">";
        });

    py::class_<GroupoidMap>(m, "Map")
        .def_property_readonly("source",
                               [](const GroupoidMap& f) { return unconst(f.source); })
        .def_property_readonly("target",
                               [](const GroupoidMap& f) { return unconst(f.target); })
        .def("validate",
             [](const GroupoidMap& f) {
                 auto r = validate_map(f);
                 return std::make_pair(r.ok, r.errors);
             })
        .def("__repr__", [](const GroupoidMap& f) {
            return "<Map " + f.source->name() + " -> " + f.target->name() + ">";
        });

    py::class_<GroupAction>(m, "Action")
        .def_property_readonly("group_order",
                               [](const GroupAction& a) { return a.grp.n; })
        .def_property_readonly("space",
                               [](const GroupAction& a) { return unconst(a.space); });

    py::class_<PolyDiagram>(m, "Polynomial")
        .def_readonly("truncation", &PolyDiagram::truncation)
        .def_property_readonly("shapes",
                               [](const PolyDiagram& P) { return unconst(P.B); })
        .def_property_readonly("positions",
                               [](const PolyDiagram& P) { return unconst(P.E); })
        .def("validate",
             [](const PolyDiagram& P) {
                 auto r = validate_polynomial(P);
                 return std::make_pair(r.ok, r.errors);
             })
        .def("to_json", [](const PolyDiagram& P) { return polynomial_to_json_text(P); })
        .def("__repr__", [](const PolyDiagram& P) {
            return "<Polynomial: " + std::to_string(P.B->num_objects()) + " shapes, " +
                   std::to_string(P.E->num_objects()) + " positions>";
        });

    py::class_<Species>(m, "Species")
        .def_readonly("truncation", &Species::truncation)
        .def_property_readonly("total",
                               [](const Species& F) { return unconst(F.total); })
        .def("validate",
             [](const Species& F) {
                 auto r = validate_species(F);
                 return std::make_pair(r.ok, r.errors);
             })
        .def("to_json", [](const Species& F) { return species_to_json_text(F); })
        .def("__repr__", [](const Species& F) {
            return "<Species at truncation " + std::to_string(F.truncation) + ">";
        });

    // File loading shares instances through one loader, which is what makes
    // maps and diagram legs from different files composable.
    py::class_<LoadContext>(m, "Loader")
        .def(py::init<>())
        .def("groupoid",
             [](LoadContext& ctx, const std::string& path) {
                 return unconst(load_groupoid_file(path, ctx));
             },
             py::arg("path"))
        .def("map",
             [](LoadContext& ctx, const std::string& path) {
                 return load_map_file(path, ctx);
             },
             py::arg("path"))
        .def("polynomial",
             [](LoadContext& ctx, const std::string& path, int trunc) {
                 return load_polynomial_file(path, ctx, trunc);
             },
             py::arg("path"), py::arg("trunc") = -1)
        .def("species",
             [](LoadContext& ctx, const std::string& path, int trunc) {
                 return load_species_file(path, ctx, trunc);
             },
             py::arg("path"), py::arg("trunc") = -1)
        .def("action",
             [](LoadContext& ctx, const std::string& path) {
                 return load_action_file(path, ctx);
             },
             py::arg("path"))
        .def("sniff", [](LoadContext&, const std::string& path) {
            return sniff_kind(path);
        });

    m.def("point", [] { return unconst(trivial_groupoid()); },
          "one object, one morphism");
    m.def(
        "discrete",
        [](int n, const std::string& prefix) { return unconst(discrete_n(n, prefix)); },
        py::arg("n"), py::arg("prefix") = "x", "n objects, identities only");
    m.def(
        "group_groupoid",
        [](const std::string& kind, int k) {
            return unconst(one_object_groupoid(named_group(kind, k), "b" + kind));
        },
        py::arg("kind"), py::arg("k") = 0,
        "one object with the named finite group as its loops");

    m.def(
        "equivalent",
        [](std::shared_ptr<FinGroupoid> a, std::shared_ptr<FinGroupoid> b,
           const Caps& caps) {
            auto r = equivalent(a, b, caps);
            return std::make_pair(r.equivalent, r.reason);
        },
        py::arg("a"), py::arg("b"), py::arg("caps") = Caps());

    m.def(
        "pullback",
        [](const GroupoidMap& f, const GroupoidMap& g, const Caps& caps) {
            return unconst(homotopy_pullback(f, g, caps).apex);
        },
        py::arg("left"), py::arg("right"), py::arg("caps") = Caps());

    m.def(
        "fibre",
        [](const GroupoidMap& p, const std::string& base, const Caps& caps) {
            int x = p.target->object_index(base);
            if (x < 0)
                throw validation_error("the target has no object '" + base + "'");
            return unconst(homotopy_fibre(p, x, caps).gpd);
        },
        py::arg("map"), py::arg("base"), py::arg("caps") = Caps());

    m.def(
        "quotient",
        [](const GroupAction& a, const Caps& caps) {
            auto r = validate_action(a);
            if (!r.ok) throw validation_error(r.errors.front());
            return unconst(homotopy_quotient(a, caps).g);
        },
        py::arg("action"), py::arg("caps") = Caps());

    m.def("identity_polynomial", &identity_polynomial);
    m.def("multiset_polynomial", &multiset_polynomial, py::arg("n"));
    m.def("positive_multiset_polynomial", &positive_multiset_polynomial, py::arg("n"));
    m.def("list_polynomial", &list_polynomial, py::arg("n"));
    m.def("positive_list_polynomial", &positive_list_polynomial, py::arg("n"));
    m.def("cyclic_polynomial", &cyclic_polynomial, py::arg("n"));

    m.def("multiset_species", &multiset_species, py::arg("n"));
    m.def("cyclic_species", &cyclic_species, py::arg("n"));
    m.def("linear_species", &linear_species, py::arg("n"));

    m.def(
        "extend",
        [](const PolyDiagram& P, std::shared_ptr<FinGroupoid> x, const Caps& caps) {
            return unconst(extend(P, wrap_input(P, x), ProdMode::Auto, caps).total);
        },
        py::arg("poly"), py::arg("input"), py::arg("caps") = Caps(),
        "total groupoid of the extension at a plain input");

    m.def(
        "compose",
        [](const PolyDiagram& outer, const PolyDiagram& inner, const Caps& caps) {
            return compose1(outer, inner, caps);
        },
        py::arg("outer"), py::arg("inner"), py::arg("caps") = Caps());

    m.def("egf", &egf_strings, py::arg("species"), py::arg("caps") = Caps(),
          "series coefficients as exact fraction strings");

    m.def("species_to_polynomial", &species_to_polynomial, py::arg("species"),
          py::arg("caps") = Caps());
    m.def("polynomial_to_species", &polynomial_to_species, py::arg("poly"),
          py::arg("truncation"), py::arg("caps") = Caps());
    m.def(
        "species_extension",
        [](const Species& F, std::shared_ptr<FinGroupoid> x, const Caps& caps) {
            return unconst(species_extension(F, x, caps));
        },
        py::arg("species"), py::arg("input"), py::arg("caps") = Caps());

    m.def(
        "enumerate_trees",
        [](const PolyDiagram& P, int max_edges, const Caps& caps) {
            std::vector<std::tuple<int, long, std::string>> out;
            for (const auto& c : enumerate_ptrees(P, max_edges, caps))
                out.emplace_back(c.edges, c.aut, c.form);
            return out;
        },
        py::arg("poly"), py::arg("max_edges"), py::arg("caps") = Caps(),
        "isomorphism classes as (edges, aut_order, form) tuples");
}
