#include "generators.hh"

#include <dualforge/catalog.hh>
#include <dualforge/clone.hh>
#include <dualforge/hom.hh>

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace dualforge;

TEST_CASE("unary term functions of small structures")
{
    auto d = maps_of(clo1(catalog::structure("D")));
    CHECK(d == std::vector<Map>{{0, 0}, {0, 1}, {1, 1}});
    CHECK(maps_of(clo1(catalog::structure("TWOPOS"))) == std::vector<Map>{{0, 1}});

    auto n5 = maps_of(clo1(catalog::structure("N5")));
    CHECK(std::count(n5.begin(), n5.end(), Map{0, 2, 1, 0, 4}) == 1);
    CHECK(std::count(n5.begin(), n5.end(), Map{0, 1, 2, 0, 4}) == 1);
}

TEST_CASE("witness terms evaluate to their maps")
{
    for (auto & name : catalog::names()) {
        auto m = catalog::structure(name);
        auto fns = clo1(m);
        CHECK(std::is_sorted(fns.begin(), fns.end(), [](auto & a, auto & b) { return a.map < b.map; }));
        for (auto & f : fns) {
            for (Element a = 0; a < m.size; ++a) {
                Element args[1] = {a};
                CHECK(evaluate(f.term, m, args) == f.map[a]);
            }
        }
        for (auto & f : fns)
            if (f.term.is_variable()) {
                Map id(m.size);
                for (Element a = 0; a < m.size; ++a)
                    id[a] = a;
                CHECK(f.map == id);
            }
    }
}

TEST_CASE("clo1 is closed under composition")
{
    std::mt19937 rng(31);
    for (int round = 0; round < 200; ++round) {
        auto s = gen::structure(rng, {1, 4, 3, 2, 0, true});
        auto fns = maps_of(clo1(s));
        std::set<Map> all(fns.begin(), fns.end());
        for (auto & f : fns)
            for (auto & g : fns)
                CHECK(all.count(compose(f, g)) == 1);
    }
}

TEST_CASE("composing carriers with unary maps")
{
    auto n5 = catalog::get("N5");
    auto family = compose_family(n5.omegas, maps_of(clo1(n5.m)));
    CHECK(std::count(family.begin(), family.end(), Map{0, 0, 1, 1, 1}) == 1);
    CHECK(std::count(family.begin(), family.end(), Map{0, 1, 0, 0, 1}) == 1);
    CHECK(compose_family({}, maps_of(clo1(n5.m))).empty());
    CHECK(compose_family(n5.omegas, {Map{0, 1, 2, 3, 4}}) == n5.omegas);
}

TEST_CASE("named constants")
{
    CHECK(named_constants(catalog::structure("Stilde")).named);
    CHECK(named_constants(catalog::get("E").ego.value()).named);

    FiniteStructure c;
    c.name = "C";
    c.size = 2;
    c = with_operation(std::move(c), "c0", 1, {0, 0});
    auto report = named_constants(c);
    CHECK(! report.named);
    REQUIRE(report.unnamed);
    CHECK(report.unnamed->map == Map{0, 0});
}

TEST_CASE("term functions of each side are endomorphisms of the other")
{
    for (auto & name : catalog::names()) {
        auto e = catalog::get(name);
        if (! e.ego)
            continue;
        auto end_m = enumerate_homs(e.m, e.m);
        auto end_ego = enumerate_homs(*e.ego, *e.ego);
        std::set<Map> m_set(end_m.begin(), end_m.end()), ego_set(end_ego.begin(), end_ego.end());
        for (auto & f : maps_of(clo1(*e.ego)))
            CHECK_MESSAGE(m_set.count(f) == 1, name);
        for (auto & f : maps_of(clo1(e.m)))
            CHECK_MESSAGE(ego_set.count(f) == 1, name);
    }
}

TEST_CASE("alter egos with a constant-bearing base reduct have named constants")
{
    for (auto & name : {"E", "C4", "M3", "N5"}) {
        auto e = catalog::get(name);
        CHECK(e.ego_reduct->target.has_nullary_ops());
        CHECK_MESSAGE(named_constants(*e.ego).named, name);
    }
}
