#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "helpers.hpp"
#include "quiverforge/io.hpp"
#include "quiverforge/natext.hpp"

using namespace quiverforge;

namespace {

const std::filesystem::path kCorpus = std::filesystem::path(__FILE__).parent_path() / ".." /
                                      "corpus";

InputDocument load(const std::string& name) { return load_document((kCorpus / name).string()); }

}  // namespace

TEST_CASE("quiver documents parse") {
    InputDocument doc = load("loop_arrow.json");
    REQUIRE(doc.kind == "quiver");
    const Quiver& q = std::get<Quiver>(doc.payload);
    CHECK(q.num_vertices() == 2);
    CHECK(q.num_arrows() == 2);
    CHECK(q.loops_at(0).size() == 1);
}

TEST_CASE("algebra documents realize on load") {
    InputDocument doc = load("a3_rel.json");
    auto a = std::get<std::shared_ptr<const RealizedAlgebra>>(doc.payload);
    CHECK(a->carrier().dim() == 5);

    InputDocument up = load("blowup_a2_2_3.json");
    auto b = std::get<std::shared_ptr<const RealizedAlgebra>>(up.payload);
    CHECK(b->carrier().dim() == 19);
    CHECK(b->is_blow_up());
}

TEST_CASE("gpa, modulation, group species, representation, differential documents") {
    auto g = std::get<std::shared_ptr<GPAlgebra>>(load("gpa_mixed_a2.json").payload);
    CHECK(g->total_dim() == 9);

    auto m = std::get<ModulationDoc>(load("modulation_symbolic.json").payload);
    Classification c = classify(*m.modulation);
    CHECK(c.regular);

    auto gs = std::get<ModulationDoc>(load("group_species_c2.json").payload);
    CHECK(gs.group_species);
    CHECK(classify(*gs.modulation).seminormal);

    auto rep = std::get<RepresentationDoc>(load("rep_a2.json").payload);
    REQUIRE(rep.rep != nullptr);
    CHECK(roundtrip_check(*rep.rep));

    auto diff = std::get<DifferentialDoc>(load("differential_a2.json").payload);
    CHECK(differential_check(*diff.gpa, diff.delta).pass());
}

TEST_CASE("parse then serialize is a fixed point") {
    for (const auto& entry : std::filesystem::directory_iterator(kCorpus)) {
        if (entry.path().extension() != ".json") continue;
        INFO(entry.path().string());
        InputDocument doc = load_document(entry.path().string());
        std::string once = serialize_document(doc);
        InputDocument again = parse_document(Json::parse(once));
        CHECK(serialize_document(again) == once);
    }
}

TEST_CASE("scalars canonicalize to p/q strings") {
    Json j = Json::parse(R"({
      "kind": "bound-quiver-algebra",
      "quiver": {"vertices": ["1","2","3"],
                 "arrows": [{"name":"a","from":"1","to":"2"},
                             {"name":"b","from":"2","to":"3"}]},
      "relations": [[{"coef": 2, "path": ["a","b"]}]],
      "nilpotency_bound": 2
    })");
    InputDocument doc = parse_document(j);
    CHECK(doc.canonical.at("relations").at(0).at(0).at("coef") == "2/1");
}

TEST_CASE("malformed documents raise input errors") {
    CHECK_THROWS_AS(load_document((kCorpus / "missing.json").string()), std::invalid_argument);
    CHECK_THROWS_AS(parse_document(Json::parse(R"({"kind":"bogus"})")), std::invalid_argument);
    CHECK_THROWS_WITH(
        parse_document(Json::parse(
            R"({"kind":"quiver","vertices":["1"],"arrows":[{"name":"a","from":"1","to":"zz"}]})")),
        Catch::Matchers::ContainsSubstring("zz"));
    // non-composable relation path
    CHECK_THROWS_WITH(parse_document(Json::parse(R"({
        "kind": "bound-quiver-algebra",
        "quiver": {"vertices": ["1","2"],
                   "arrows": [{"name":"a","from":"1","to":"2"}]},
        "relations": [[{"coef": 1, "path": ["a","a"]}]],
        "nilpotency_bound": 2})")),
                      Catch::Matchers::ContainsSubstring("compose"));
}

TEST_CASE("corpus breadth: eleven algebras, quivers with loops, the gpa pair") {
    std::size_t algebras = 0, quivers = 0, gpas = 0;
    for (const auto& entry : std::filesystem::directory_iterator(kCorpus)) {
        if (entry.path().extension() != ".json") continue;
        InputDocument doc = load_document(entry.path().string());
        if (doc.kind == "bound-quiver-algebra" || doc.kind == "blow-up") ++algebras;
        if (doc.kind == "quiver") ++quivers;
        if (doc.kind == "gpa") ++gpas;
    }
    CHECK(algebras >= 10);
    CHECK(quivers >= 3);
    CHECK(gpas >= 3);
}
