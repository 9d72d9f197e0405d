#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "nerveworks/cli.hpp"
#include "nerveworks/error.hpp"
#include "nerveworks/io.hpp"
#include "nerveworks/quasicat.hpp"
#include "support.hpp"

using namespace nw;
using namespace nwtest;
using nw::io::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

/// A scratch directory removed at exit.
struct Scratch {
    fs::path dir;
    Scratch() : dir(fs::temp_directory_path() / ("nw_cli_" + std::to_string(::getpid()))) { fs::create_directories(dir); }
    ~Scratch() { fs::remove_all(dir); }
    std::string put(const std::string& name, const std::string& text) const {
        const auto p = dir / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }
    std::string put(const std::string& name, const Json& doc) const { return put(name, doc.dump(2)); }
};

const Scratch& scratch() {
    static Scratch s;
    return s;
}

IntMatrix mat(std::vector<IntVector> rows, int cols = -1) { return IntMatrix::from_rows(rows, cols); }

/// Round trip through text: the re-written document is byte-identical.
template <class Read, class Write>
auto round_trip(const Json& doc, Read read, Write write) {
    const auto value = read(io::parse_document(doc.dump(), "doc"));
    CHECK(write(value).dump() == doc.dump());
    return value;
}

/// The simplex of X printed as `text`.
std::optional<Simplex> simplex_described(const SimplicialSet& X, int k, const std::string& text) {
    for (const auto& s : X.simplices(k))
        if (X.describe(s) == text) return s;
    return std::nullopt;
}

}  // namespace

TEST_CASE("documents round trip exactly") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto C = random_category(rng);
        const auto back = round_trip(io::write_category(C), io::read_category, io::write_category);
        CHECK(back == C);
        const auto N = nerve(C, 3);
        CHECK(round_trip(io::write_sset(N), io::read_sset, io::write_sset) == N);
    }
    const auto P = product(standard_simplex(1), standard_simplex(2));
    CHECK(round_trip(io::write_sset(P), io::read_sset, io::write_sset) == P);
    const auto H = standard_object(StandardKind::horn, 3, 1);
    CHECK(round_trip(io::write_sset(H), io::read_sset, io::write_sset) == H);

    const auto R = RelativeCategory::isomorphisms(iso_pair_plus_arrow());
    const auto R2 = round_trip(io::write_relative_category(R), io::read_relative_category, io::write_relative_category);
    CHECK(R2.category == R.category);
    CHECK(R2.weak == R.weak);

    const auto F = square_over_two();
    CHECK(round_trip(io::write_functor(F), io::read_functor, io::write_functor) == F);

    const auto big = ChainComplex(Ring::integers(), -1, {{0}, {0, 0}}, {IntMatrix(0, 1), mat({{Integer("123456789012345678901234567890"), 0}})});
    CHECK(round_trip(io::write_chain_complex(big), io::read_chain_complex, io::write_chain_complex) == big);
    const auto Z2 = ChainComplex(Ring::modular(4), 0, {{2}}, {IntMatrix(0, 1)});
    CHECK(round_trip(io::write_chain_complex(Z2), io::read_chain_complex, io::write_chain_complex) == Z2);
    const auto res = ChainComplex::free(Ring::integers(), 0, {1, 1}, {IntMatrix(0, 1), mat({{2}})});
    const auto Z2z = ChainComplex(Ring::integers(), 0, {{2}}, {IntMatrix(0, 1)});
    const ChainMap f(res, Z2z, {mat({{1}}), IntMatrix(0, 1)});
    const auto f2 = round_trip(io::write_chain_map(f), io::read_chain_map, io::write_chain_map);
    CHECK(f2.matrices() == f.matrices());

    const auto B = rezk_nerve(R, 2, 2);
    const auto B2 = round_trip(io::write_bisimplicial(B), io::read_bisimplicial, io::write_bisimplicial);
    CHECK(B2.hface_table() == B.hface_table());
    CHECK(B2.vdegen_table() == B.vdegen_table());

    SplitFunctorToCat S;
    S.base = poset_category(1);
    S.fibers = {discrete_category(2), terminal_category()};
    // transports are listed per base arrow in arrow order
    for (int a = 0; a < S.base.arrow_count(); ++a) {
        const auto src = static_cast<std::size_t>(S.base.source(a));
        if (S.base.is_identity(a)) S.transports.push_back(identity_functor(S.fibers[src]));
        else S.transports.push_back(Functor(S.fibers[0], S.fibers[1], {0, 0}, {0, 0}));
    }
    const auto S2 = round_trip(io::write_split_functor(S), io::read_split_functor, io::write_split_functor);
    CHECK(grothendieck_build(S2) == grothendieck_build(S));
}

TEST_CASE("category documents may omit identities") {
    const Json doc = io::parse_document(R"({"kind": "category", "objects": ["0", "1", "2"],
        "arrows": [{"name": "f", "src": "0", "dst": "1"}, {"name": "g", "src": "1", "dst": "2"}, {"name": "gf", "src": "0", "dst": "2"}],
        "compose": [["g", "f", "gf"]]})", "poset");
    const auto C = io::read_category(doc);
    CHECK(find_isomorphism(C, poset_category(2)).has_value());
}

TEST_CASE("malformed input is reported with its location") {
    const auto& s = scratch();
    auto r = invoke({"nerve", "--dim", "2", s.put("bad.cat", std::string("{\n  \"kind\": \"category\",\n  \"objects\": [\"a\",]\n}"))});
    CHECK(r.code == cli::input_error);
    CHECK(r.err.find("line 3") != std::string::npos);

    r = invoke({"nerve", s.put("nofield.cat", Json{{"kind", "category"}, {"objects", Json::array({"a"})}})});
    CHECK(r.code == cli::input_error);
    CHECK(r.err.find("arrows: missing field") != std::string::npos);

    r = invoke({"nerve", s.put("badarrow.cat", io::parse_document(R"({"kind":"category","objects":["a"],"arrows":[{"name":"f","src":"a","dst":"b"}]})", "x"))});
    CHECK(r.code == cli::input_error);
    CHECK(r.err.find("arrows[0].dst") != std::string::npos);

    r = invoke({"check-kan", s.put("wrongkind.cat", io::write_category(poset_category(1)))});
    CHECK(r.code == cli::input_error);
    CHECK(r.err.find("kind") != std::string::npos);

    // a face that does not exist
    r = invoke({"check-kan", s.put("badface.sset", io::parse_document(R"({"kind":"sset","cells":[["a"],[{"name":"e","faces":["a","z"]}]]})", "x"))});
    CHECK(r.code == cli::input_error);
    CHECK(r.err.find("cells[1][0].faces[1]") != std::string::npos);

    CHECK(invoke({"no-such-command"}).code == cli::input_error);
    CHECK(invoke({"nerve", "/nonexistent/file.cat"}).code == cli::input_error);
    CHECK(invoke({"nerve", "--dim", "-1", s.put("p1.cat", io::write_category(poset_category(1)))}).code == cli::input_error);
    CHECK(invoke({"localize", s.put("r.cat", io::write_relative_category(RelativeCategory::minimal(poset_category(1))))}).code == cli::input_error);
    CHECK(invoke({"bg", "--group", "q7"}).code == cli::input_error);
}

TEST_CASE("verdicts, exit statuses and witnesses") {
    const auto& s = scratch();
    const std::string n2 = s.put("n2.sset", io::write_sset(nerve(poset_category(2), 3)));
    const std::string n1 = s.put("n1.sset", io::write_sset(nerve(poset_category(1), 3)));

    auto r = invoke({"check-quasicategory", "--dim", "3", n2});
    CHECK(r.code == cli::verdict_true);
    CHECK(r.out.find("all inner horns fill uniquely") != std::string::npos);

    r = invoke({"check-kan", "--dim", "3", "--format", "json", n1});
    CHECK(r.code == cli::verdict_false);
    const Json report = io::parse_document(r.out, "report");
    REQUIRE(report.contains("witness"));
    const Json& w = report["witness"];
    CHECK(w["n"] == 2);
    CHECK(w["k"] == 0);
    // feeding the witness back: the horn map it names has no filler
    const auto X = nerve(poset_category(1), 3);
    const auto horn = standard_object(StandardKind::horn, 2, 0);
    std::vector<std::vector<Simplex>> images(2);
    for (int k = 0; k <= 1; ++k)
        for (int i = 0; i < horn.cell_count(k); ++i)
            for (const auto& a : w["assignments"])
                if (a[0] == horn.name(k, i)) {
                    auto img = simplex_described(X, k, a[1].get<std::string>());
                    REQUIRE(img.has_value());
                    images[static_cast<std::size_t>(k)].push_back(*img);
                }
    REQUIRE(images[0].size() == 3);
    REQUIRE(images[1].size() == 2);
    const SimplicialMap m(horn, X, images);
    CHECK(count_extensions(standard_inclusion(horn, 2), m) == 0);

    const std::string bz2 = s.put("bz2.sset", io::write_sset(nerve(bg(cyclic_group_table(2)), 4)));
    r = invoke({"pi1", "--base", "*", bz2});
    CHECK(r.code == cli::verdict_true);
    CHECK(r.out.find("cyclic of order 2") != std::string::npos);

    // chain maps
    const auto res = ChainComplex::free(Ring::integers(), 0, {1, 1}, {IntMatrix(0, 1), mat({{2}})});
    const auto Z2 = ChainComplex(Ring::integers(), 0, {{2}}, {IntMatrix(0, 1)});
    CHECK(invoke({"quasi-iso", s.put("q.map", io::write_chain_map(ChainMap(res, Z2, {mat({{1}}), IntMatrix(0, 1)})))}).code == cli::verdict_true);
    r = invoke({"quasi-iso", "--format", "json", s.put("z.map", io::write_chain_map(ChainMap::zero(res, Z2)))});
    CHECK(r.code == cli::verdict_false);
    CHECK(io::parse_document(r.out, "r")["witness"]["failing_degrees"] == Json::array({0, 1}));
    const auto half = ChainComplex(Ring::modular(4), 0, {{2}}, {IntMatrix(0, 1)});
    const std::string z4 = s.put("z4.map", io::write_chain_map(ChainMap::zero(ChainComplex::zero(Ring::modular(4)), half)));
    CHECK(invoke({"factor-4b", "--fuel", "2", z4}).code == cli::undecided);
    CHECK(invoke({"factor-4b", z4}).code == cli::input_error);  // fuel is never implicit
    CHECK(invoke({"factor-4a", z4}).code == cli::verdict_true);

    // fibrations
    const std::string sq = s.put("square.functor", io::write_functor(square_over_two()));
    r = invoke({"cocart-analyze", sq});
    CHECK(r.code == cli::verdict_false);
    CHECK(invoke({"grothendieck-read", sq}).code == cli::verdict_true);
    CHECK(invoke({"left-fibration", sq}).code == cli::verdict_false);

    // Segal and completeness
    const std::string bd = s.put("bd.sset", io::write_sset(standard_object(StandardKind::boundary, 2)));
    CHECK(invoke({"segal-check", bd}).code == cli::verdict_false);
    CHECK(invoke({"completeness", bd}).code == cli::undecided);
    CHECK(invoke({"completeness", bz2}).code == cli::verdict_false);
    CHECK(invoke({"completeness", "--dim", "3", s.put("iso.cat", io::write_relative_category(RelativeCategory::isomorphisms(bg(cyclic_group_table(2)))))}).code ==
          cli::verdict_true);
}

TEST_CASE("constructions feed back into other commands") {
    const auto& s = scratch();
    auto r = invoke({"bg", "--group", "z3", "--format", "json"});
    REQUIRE(r.code == 0);
    const std::string cat = s.put("bz3.cat", r.out);
    r = invoke({"nerve", "--dim", "4", "--format", "json", cat});
    REQUIRE(r.code == 0);
    const std::string sset = s.put("bz3.sset", r.out);
    r = invoke({"pi1", "--base", "*", sset});
    CHECK(r.code == 0);
    CHECK(r.out.find("cyclic of order 3") != std::string::npos);
    r = invoke({"ho", "--format", "json", sset});
    REQUIRE(r.code == 0);
    CHECK(find_isomorphism(io::read_category(io::parse_document(r.out, "ho")), bg(cyclic_group_table(3))).has_value());

    const std::string out = (s.dir / "tw.functor").string();
    REQUIRE(invoke({"twisted-arrows", "--format", "json", "--out", out, s.put("p2.cat", io::write_category(poset_category(2)))}).code == 0);
    CHECK(invoke({"left-fibration", out}).code == cli::verdict_true);

    r = invoke({"rezk-nerve", "--dim", "2", "--format", "json", s.put("min.cat", io::write_relative_category(RelativeCategory::minimal(poset_category(1))))});
    REQUIRE(r.code == 0);
    CHECK(invoke({"segal-check", s.put("rz.bisimplicial", r.out)}).code == cli::verdict_true);

    r = invoke({"normalized-chains", "--dim", "3", "--format", "json", s.put("bd2.sset", io::write_sset(standard_object(StandardKind::boundary, 2)))});
    REQUIRE(r.code == 0);
    r = invoke({"homology", s.put("circle.chain", r.out)});
    CHECK(r.code == 0);
    CHECK(r.out.find("Z") != std::string::npos);
    CHECK(invoke({"dold-kan", "--dim", "3", s.put("c.chain", io::write_chain_complex(ChainComplex::free(Ring::integers(), 0, {1, 1}, {IntMatrix(0, 1), mat({{2}})})))}).code == 0);
    const std::string tall = s.put("tall.chain", io::write_chain_complex(ChainComplex::free(Ring::integers(), 0, {1, 1, 1, 1, 1},
        {IntMatrix(0, 1), IntMatrix(1, 1), IntMatrix(1, 1), IntMatrix(1, 1), IntMatrix(1, 1)})));
    CHECK(invoke({"dold-kan", tall}).code == cli::input_error);  // no implicit bound above 3
    CHECK(invoke({"dold-kan", "--dim", "4", tall}).code == 0);
    CHECK(invoke({"frak-c", "--dim", "3"}).code == 0);
    CHECK(invoke({"coherent-nerve", "--dim", "3", s.put("p1b.cat", io::write_category(poset_category(1)))}).code == 0);
    CHECK(invoke({"join", s.put("a.cat", io::write_category(terminal_category())), s.put("b.cat", io::write_category(terminal_category()))}).code == 0);
}

TEST_CASE("graph exports") {
    const auto& s = scratch();
    auto count = [](const std::string& text, const std::string& what) {
        std::size_t n = 0;
        for (auto p = text.find(what); p != std::string::npos; p = text.find(what, p + 1)) ++n;
        return n;
    };
    auto r = invoke({"export-dot", s.put("p2x.cat", io::write_category(poset_category(2)))});
    CHECK(r.code == 0);
    CHECK(count(r.out, " -> ") == 3);
    CHECK(count(r.out, ";\n") == 6);

    r = invoke({"export-dot", s.put("d2.sset", io::write_sset(standard_simplex(2)))});
    CHECK(r.code == 0);
    CHECK(count(r.out, " -> ") == 3);
    CHECK(count(r.out, "// triangle") == 1);

    r = invoke({"export-dot", s.put("sq2.functor", io::write_functor(square_over_two()))});
    CHECK(r.code == 0);
    CHECK(count(r.out, "locally_cocartesian=true") > 0);
    CHECK(count(r.out, "style=dashed") == 1);
    CHECK(count(r.out, "style=bold") == 2);

    CHECK(invoke({"export-dot", s.put("c.chain2", io::write_chain_complex(ChainComplex::zero()))}).code == cli::input_error);
    CHECK(invoke({"pi1", "--format", "dot", "--base", "*", s.put("bz2b.sset", io::write_sset(nerve(bg(cyclic_group_table(2)), 3)))}).code ==
          cli::input_error);
}

TEST_CASE("output is byte-identical across runs") {
    const auto& s = scratch();
    const std::string sq = s.put("sq3.functor", io::write_functor(square_over_two()));
    for (const auto& cmd : std::vector<std::vector<std::string>>{
             {"cocart-analyze", "--format", "json", sq},
             {"grothendieck-read", sq},
             {"export-dot", sq},
             {"nerve", "--dim", "3", "--format", "json", s.put("iso3.cat", io::write_category(iso_pair_plus_arrow()))}}) {
        const auto a = invoke(cmd), b = invoke(cmd);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}
