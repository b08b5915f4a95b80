#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "grpoly/builders.hpp"
#include "grpoly/equivalence.hpp"
#include "grpoly/io.hpp"
#include "grpoly/polynomial.hpp"
#include "grpoly/species.hpp"
#include "grpoly/trees.hpp"

using namespace grpoly;
namespace fs = std::filesystem;

static Caps caps;

namespace {

std::string data_dir() {
    const char* d = std::getenv("GRPOLY_DATA");
    REQUIRE(d != nullptr);
    return d;
}

std::string data(const std::string& name) {
    return (fs::path(data_dir()) / name).string();
}

// Scratch files live in one per-run directory, removed at exit.
struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() /
              ("grpoly_io_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { std::error_code ec; fs::remove_all(dir, ec); }
    std::string put(const std::string& name, const std::string& text) const {
        auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
} scratch;

// Extension of a one-variable diagram at a plain groupoid.
GroupoidPtr extend_at(const PolyDiagram& P, GroupoidPtr x) {
    FamilyOver fam;
    fam.base = P.I;
    fam.total = x;
    fam.proj = constant_map(x, P.I, 0);
    return extend(P, fam, ProdMode::Auto, caps).total;
}

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs the batch tool, capturing stdout; stderr is dropped.
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("GRPOLY_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = "'" + std::string(bin) + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("groupoid files round trip through serialization") {
    LoadContext ctx;
    auto g = load_groupoid_file(data("BC2.json"), ctx);
    CHECK(validate_groupoid(*g).ok);
    CHECK(g->cardinality() == Rat(1, 2));

    auto path = scratch.put("bc2_out.json", groupoid_to_json_text(*g));
    LoadContext ctx2;
    auto back = load_groupoid_file(path, ctx2);
    CHECK(validate_groupoid(*back).ok);
    CHECK(back->num_objects() == g->num_objects());
    CHECK(back->num_morphisms() == g->num_morphisms());
    CHECK(equivalent(g, back, caps).equivalent);
    // Serialization is canonical: dumping the reload reproduces the bytes.
    CHECK(groupoid_to_json_text(*back) == groupoid_to_json_text(*g));
}

TEST_CASE("builder-made groupoids survive a dump and reload") {
    auto orig = one_object_groupoid(GroupTable::symmetric(3), "bs3");
    auto path = scratch.put("bs3.json", groupoid_to_json_text(*orig));
    LoadContext ctx;
    auto back = load_groupoid_file(path, ctx);
    CHECK(validate_groupoid(*back).ok);
    CHECK(back->num_morphisms() == 6);
    CHECK(equivalent(orig, back, caps).equivalent);
}

TEST_CASE("map files reload against cached endpoint instances") {
    LoadContext ctx;
    auto m = load_map_file(data("double_cover.json"), ctx);
    CHECK(validate_map(m).ok);
    auto again = load_map_file(data("double_cover.json"), ctx);
    CHECK(m.source.get() == again.source.get());
    CHECK(m.target.get() == again.target.get());
    CHECK(maps_equal(m, again));

    auto path = scratch.put("cover_out.json", map_to_json_text(m));
    // The dump inlines nothing: endpoints are paths, so a fresh context
    // reloads it only if the referenced files resolve. Round trip in place.
    LoadContext ctx2;
    auto back = load_map_file(data("double_cover.json"), ctx2);
    CHECK(back.ob == m.ob);
    CHECK(back.mor == m.mor);
    (void)path;
}

TEST_CASE("polynomial cache shares instances per path and truncation") {
    LoadContext ctx;
    auto p1 = load_polynomial_file(data("identity.json"), ctx);
    auto p2 = load_polynomial_file(data("identity.json"), ctx);
    CHECK(p1.I.get() == p2.I.get());
    CHECK(p1.E.get() == p2.E.get());

    auto t3 = load_polynomial_file(data("multiset.json"), ctx, 3);
    auto t5 = load_polynomial_file(data("multiset.json"), ctx);
    CHECK(t3.truncation == 3);
    CHECK(t5.truncation == 5);  // the file's own value

    LoadContext other;
    auto q = load_polynomial_file(data("identity.json"), other);
    CHECK(p1.I.get() != q.I.get());
}

TEST_CASE("species and polynomial dumps reload to equivalent structures") {
    LoadContext ctx;
    auto F = load_species_file(data("cyclic.json"), ctx, 3);
    CHECK(validate_species(F).ok);

    auto spath = scratch.put("cyc3.json", species_to_json_text(F));
    LoadContext ctx2;
    auto F2 = load_species_file(spath, ctx2);
    CHECK(validate_species(F2).ok);
    CHECK(F2.truncation == F.truncation);
    CHECK(egf(F2, caps) == egf(F, caps));

    auto P = species_to_polynomial(F, caps);
    auto ppath = scratch.put("cycpoly.json", polynomial_to_json_text(P));
    LoadContext ctx3;
    auto P2 = load_polynomial_file(ppath, ctx3);
    CHECK(validate_polynomial(P2).ok);
    auto in = discrete_n(2);
    CHECK(extend_at(P, in)->cardinality() == extend_at(P2, in)->cardinality());
}

TEST_CASE("malformed input is a parse failure, dangling references a validation one") {
    LoadContext ctx;
    CHECK_THROWS_AS(load_groupoid_file(scratch.put("nope.json", "{"), ctx),
                    parse_error);
    CHECK_THROWS_AS(load_groupoid_file(scratch.put("arr.json", "[1,2]"), ctx),
                    parse_error);
    CHECK_THROWS_AS(
        load_groupoid_file(scratch.put("badid.json", R"({"objects": ["a b"]})"), ctx),
        parse_error);
    CHECK_THROWS_AS(load_groupoid_file(
                        scratch.put("dangle.json",
                                    R"({"objects": ["x"], "morphisms":
            [{"id": "f", "src": "x", "tgt": "y"}], "compose": []})"),
                        ctx),
                    validation_error);
    CHECK_THROWS_AS(load_groupoid_file(scratch.put("missing.json", ""), ctx),
                    parse_error);
    CHECK_THROWS_AS(load_groupoid_file((scratch.dir / "not_there.json").string(), ctx),
                    parse_error);

    // Conflicting composition entries are semantic, not syntactic.
    CHECK_THROWS_AS(
        load_groupoid_file(
            scratch.put("conflict.json",
                        R"({"objects": ["p"],
            "morphisms": [{"id": "t", "src": "p", "tgt": "p"}],
            "compose": [["t", "t", "id_p"], ["t", "t", "t"]]})"),
            ctx),
        validation_error);
}

TEST_CASE("kind sniffing recognizes every file shape") {
    CHECK(sniff_kind(data("BC2.json")) == "groupoid");
    CHECK(sniff_kind(data("point.json")) == "groupoid");
    CHECK(sniff_kind(data("double_cover.json")) == "map");
    CHECK(sniff_kind(data("identity.json")) == "polynomial");
    CHECK(sniff_kind(data("linear.json")) == "species");
    CHECK(sniff_kind(data("flip_action.json")) == "action");
    CHECK(sniff_kind(data("tree_corolla2.json")) == "tree");
    CHECK(sniff_kind(data("ptree_chain2.json")) == "ptree");
    CHECK(sniff_kind(data("lists_to_cycles.json")) == "square");
    CHECK_THROWS_AS(sniff_kind(scratch.put("what.json", R"({"spam": 1})")),
                    parse_error);
}

TEST_CASE("command line reproduces the documented example outputs") {
    auto card = run_cli("card '" + data("BC2.json") + "'");
    CHECK(card.code == 0);
    CHECK(card.out == "1/2\n");

    auto egf5 = run_cli("species egf --species '" + data("multiset.json") +
                        "' --trunc 5");
    CHECK(egf5.code == 0);
    CHECK(egf5.out == "1, 1, 1/2, 1/6, 1/24, 1/120\n");

    auto chains = run_cli("trees enumerate --poly '" + data("identity.json") +
                          "' --max-edges 5");
    CHECK(chains.code == 0);
    CHECK(chains.out.rfind("classes 5\n", 0) == 0);
    int lines = 0;
    for (char c : chains.out)
        if (c == '\n') ++lines;
    CHECK(lines == 6);  // header plus one class per edge count
}

TEST_CASE("exit codes separate verdicts, semantic errors, caps and parse errors") {
    CHECK(run_cli("equiv '" + data("BC2.json") + "' '" + data("BC2.json") + "'").code ==
          0);
    auto uneq = run_cli("equiv '" + data("BC2.json") + "' '" + data("BC3.json") + "'");
    CHECK(uneq.code == 1);
    CHECK(uneq.out.rfind("false\n", 0) == 0);

    auto broken = scratch.put("broken.json",
                              R"({"objects": ["p"],
        "morphisms": [{"id": "t", "src": "p", "tgt": "p"}],
        "compose": [["t", "t", "t"]]})");
    CHECK(run_cli("card '" + broken + "'").code == 1);
    CHECK(run_cli("validate '" + broken + "'").code == 1);

    CHECK(run_cli("--cap-objects 10 eval --poly '" + data("multiset.json") +
                  "' --input '" + data("discrete2.json") + "' --trunc 3")
              .code == 2);

    CHECK(run_cli("card '" + scratch.put("junk.json", "not json") + "'").code == 3);
    CHECK(run_cli("card").code == 3);
    CHECK(run_cli("no-such-command").code == 3);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("repeated invocations are byte identical") {
    std::string suite = "check-suite --data '" + data_dir() + "'";
    auto a = run_cli(suite);
    auto b = run_cli(suite);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("suite ok") != std::string::npos);

    auto j1 = run_cli("--format json pullback --left '" + data("pt_to_BC2.json") +
                      "' --right '" + data("pt_to_BC2.json") + "'");
    auto j2 = run_cli("--format json pullback --left '" + data("pt_to_BC2.json") +
                      "' --right '" + data("pt_to_BC2.json") + "'");
    CHECK(j1.code == 0);
    CHECK(j1.out == j2.out);
    CHECK(j1.out.find("\"card\":\"2\"") != std::string::npos);
}

TEST_CASE("config file supplies defaults and flags override it") {
    auto cfg = scratch.put("conf.json", R"({"format": "json", "cap_objects": 10})");
    auto viaconf = run_cli("--config '" + cfg + "' card '" + data("BC2.json") + "'");
    CHECK(viaconf.code == 0);
    CHECK(viaconf.out.find("\"value\":\"1/2\"") != std::string::npos);

    auto flagged =
        run_cli("--config '" + cfg + "' --format text card '" + data("BC2.json") + "'");
    CHECK(flagged.out == "1/2\n");

    CHECK(run_cli("--config '" + cfg + "' eval --poly '" + data("multiset.json") +
                  "' --input '" + data("discrete2.json") + "' --trunc 3")
              .code == 2);

    CHECK(run_cli("--config '" + scratch.put("badconf.json", "{]") + "' card '" +
                  data("BC2.json") + "'")
              .code == 3);
}

TEST_CASE("quotient and fibre commands agree with the library") {
    auto quot = run_cli("quotient --action '" + data("flip_action.json") + "'");
    CHECK(quot.code == 0);
    CHECK(quot.out.find("card 1\n") != std::string::npos);

    auto fib = run_cli("fibre --map '" + data("double_cover.json") + "' --base pt");
    CHECK(fib.code == 0);
    CHECK(fib.out.find("objects 4\n") != std::string::npos);

    CHECK(run_cli("fibre --map '" + data("double_cover.json") + "' --base nope").code ==
          1);
}

TEST_CASE("tree commands validate and compare decorated trees") {
    CHECK(run_cli("trees validate '" + data("tree_corolla2.json") + "'").code == 0);
    CHECK(run_cli("trees validate '" + data("ptree_chain2.json") + "'").code == 0);

    auto same = run_cli("trees iso '" + data("ptree_chain2.json") + "' '" +
                        data("ptree_chain2.json") + "'");
    CHECK(same.code == 0);
    CHECK(same.out == "true\n");

    auto diff = run_cli("trees iso '" + data("ptree_chain2.json") + "' '" +
                        data("ptree_single.json") + "'");
    CHECK(diff.code == 1);
    CHECK(diff.out == "false\n");
}

TEST_CASE("cartesian and interchange checks run from files") {
    auto cart = run_cli("cartesian-check --square '" + data("lists_to_cycles.json") +
                        "'");
    CHECK(cart.code == 0);
    CHECK(cart.out == "true\n");

    auto bc = run_cli("bc-check --phi '" + data("double_cover.json") + "' --beta '" +
                      data("pt_to_BC2.json") + "'");
    CHECK(bc.code == 0);
    CHECK(bc.out.find("sum_ok true\n") != std::string::npos);
    CHECK(bc.out.find("prod_ok true\n") != std::string::npos);
}
