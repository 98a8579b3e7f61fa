#include <dualforge/catalog.hh>
#include <dualforge/io.hh>

#include <doctest.h>

using namespace dualforge;

TEST_CASE("structures round trip through JSON")
{
    for (auto & name : catalog::names()) {
        auto e = catalog::get(name);
        auto back = io::structure_from_json(io::structure_to_json(e.m));
        CHECK(back.sig == e.m.sig);
        CHECK(back.tables == e.m.tables);
        CHECK(back.relations == e.m.relations);
        CHECK(back.size == e.m.size);
    }
}

TEST_CASE("partial operations are refused")
{
    auto j = io::structure_to_json(catalog::structure("D"));
    j["operations"]["meet"]["table"][1] = nullptr;
    CHECK_THROWS_AS(io::structure_from_json(j), PartialOperationError);

    auto k = io::structure_to_json(catalog::structure("D"));
    k["partial"] = true;
    CHECK_THROWS_AS(io::structure_from_json(k), PartialOperationError);
}

TEST_CASE("malformed structures are input errors")
{
    auto j = io::structure_to_json(catalog::structure("D"));
    j["operations"]["meet"]["table"][1] = 7;
    CHECK_THROWS_AS(io::structure_from_json(j), InputError);
    CHECK_THROWS_AS(io::structure_from_json(Json::array()), InputError);
}

TEST_CASE("terms")
{
    auto t = io::term_from_json(Json::parse(R"(["meet", "x0", ["neg", "x1"]])"));
    CHECK(io::term_to_json(t) == Json::parse(R"(["meet", "x0", ["neg", "x1"]])"));
    CHECK(io::term_to_json(io::term_from_json("zero")) == Json::parse(R"(["zero"])"));
    CHECK(io::term_to_json(io::term_from_json("x2")) == "x2");
}

TEST_CASE("reducts round trip")
{
    for (auto & name : {"DM4", "Stone3", "E"}) {
        auto e = catalog::get(name);
        auto spec = io::reduct_from_json(io::reduct_to_json(*e.ego_reduct));
        CHECK(apply_reduct(*e.ego, spec).relations == apply_reduct(*e.ego, *e.ego_reduct).relations);
        CHECK(apply_reduct(*e.ego, spec).tables == apply_reduct(*e.ego, *e.ego_reduct).tables);
    }
}

TEST_CASE("relations and maps")
{
    CHECK(io::relation_from_json(Json::parse("[[0, 1], [1, 1]]")) == Relation(2, {{0, 1}, {1, 1}}));
    CHECK(io::relation_from_json(Json::parse(R"({"arity": 2, "tuples": [[1, 0]]})")) == Relation(2, {{1, 0}}));
    CHECK(io::maps_from_json(Json::parse("[0, 0, 1]")) == std::vector<Map>{{0, 0, 1}});
    CHECK(io::maps_from_json(Json::parse("[[0, 0, 1], [0, 1, 1]]")) == std::vector<Map>{{0, 0, 1}, {0, 1, 1}});
    CHECK(io::maps_to_json({{0, 1}}) == Json::parse("[[0, 1]]"));
}

TEST_CASE("catalog URIs")
{
    CHECK(io::is_catalog_uri("catalog:DM4"));
    CHECK(! io::is_catalog_uri("dm4.json"));
    CHECK(io::load_structure("catalog:DM4.ego").name == "DM4~");
    CHECK(io::load_maps("catalog:Kleene3.omega").size() == 2);
    CHECK_THROWS_AS(io::load_structure("catalog:Nope"), InputError);
    CHECK_THROWS_AS(io::read_json("/nonexistent/file.json"), InputError);
}
