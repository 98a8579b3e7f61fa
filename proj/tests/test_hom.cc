#include "generators.hh"
#include "oracles.hh"

#include <dualforge/catalog.hh>
#include <dualforge/hom.hh>
#include <dualforge/term.hh>

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace dualforge;

TEST_CASE("homs between small structures")
{
    auto chain = catalog::structure("TWOPOS");
    CHECK(enumerate_homs(chain, chain) == std::vector<Map>{{0, 0}, {0, 1}, {1, 1}});

    auto d = catalog::structure("D");
    CHECK(enumerate_homs(d, d) == std::vector<Map>{{0, 1}});

    auto dm4 = catalog::structure("DM4");
    CHECK(enumerate_homs(dm4, dm4) == std::vector<Map>{{0, 1, 2, 3}, {0, 2, 1, 3}});
    CHECK(oracle::homs(dm4, dm4) == enumerate_homs(dm4, dm4));
}

TEST_CASE("hom search rejects mismatched signatures and honours the node budget")
{
    CHECK_THROWS_AS(enumerate_homs(catalog::structure("D"), catalog::structure("TWOPOS")), InputError);
    Config tight;
    tight.max_nodes = 5;
    auto p = power(catalog::structure("TWOPOS"), 3);
    CHECK_THROWS_AS(enumerate_homs(p, p, tight), ResourceBoundError);
}

TEST_CASE("make_hom names what is not preserved")
{
    auto d = catalog::structure("D");
    CHECK_NOTHROW(make_hom(d, d, {0, 1}));
    CHECK_THROWS_AS(make_hom(d, d, {1, 0}), InputError);
    CHECK_THROWS_AS(make_hom(d, d, {0}), InputError);
}

TEST_CASE("separation")
{
    auto dm4 = catalog::structure("DM4");
    auto flat = apply_reduct(dm4, catalog::lattice_reduct());
    auto d = catalog::structure("D");
    auto homs = enumerate_homs(flat, d);
    CHECK(homs.size() == 2);
    CHECK(separates_structure(homs, flat, d).separates);

    auto constant = separates_points({Map{0, 0, 0}}, 3);
    CHECK(! constant.separates);
    REQUIRE(constant.points);
    CHECK(*constant.points == std::pair<Element, Element>{0, 1});

    auto n5 = catalog::get("N5");
    auto u = n5.m.table("u");
    CHECK(! separates_points({n5.omegas[0], compose(n5.omegas[0], u)}, 5).separates);
    CHECK(separates_points({n5.omegas[0], compose(n5.omegas[0], u), compose(n5.omegas[0], compose(u, u))}, 5).separates);
}

TEST_CASE("relation separation produces the offending tuple")
{
    auto chain = catalog::structure("TWOPOS");
    auto antichain = chain;
    antichain.relations[0] = diagonal(2);
    // only the identity: separates points, but (0,1) is outside the diagonal and inside le
    auto r = separates_structure({Map{0, 1}}, antichain, chain);
    CHECK(! r.separates);
    CHECK(r.relation == std::optional<std::string>("le"));
    CHECK(r.tuple == std::vector<Element>{0, 1});
}

TEST_CASE("prevariety membership")
{
    auto d = catalog::structure("D");
    CHECK(in_prevariety(power(d, 2), d));
    CHECK(in_prevariety(apply_reduct(catalog::structure("Stone3"), catalog::lattice_reduct()), d));
    auto dm4 = catalog::structure("DM4");
    CHECK(in_prevariety(dm4, dm4));
    // the Kleene chain is not Boolean
    CHECK(! in_prevariety(catalog::structure("Kleene3"), catalog::structure("OCK1")));
}

TEST_CASE("isomorphisms")
{
    auto dm4 = catalog::structure("DM4");
    CHECK(is_isomorphism({0, 1, 2, 3}, dm4, dm4));
    CHECK(is_isomorphism({0, 2, 1, 3}, dm4, dm4));

    auto chain = catalog::structure("TWOPOS");
    FiniteStructure three;
    three.name = "3";
    three.size = 3;
    three = with_relation(std::move(three), "le", Relation(2, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}));
    CHECK(is_hom(chain, three, {0, 2}));
    CHECK(! is_isomorphism({0, 2}, chain, three));

    // bijective and order preserving, but not order reflecting
    auto antichain = chain;
    antichain.relations[0] = diagonal(2);
    CHECK(! is_isomorphism({0, 1}, antichain, chain));
}

TEST_CASE("hom enumeration agrees with naive backtracking")
{
    std::mt19937 rng(21);
    for (int round = 0; round < 300; ++round) {
        auto a = gen::structure(rng, {1, 4, 2, 2, 1, true});
        auto b = gen::structure(rng, {1, 3, 0, 2, 0, true});
        // give b the signature of a with random tables
        FiniteStructure target;
        target.name = "T";
        target.size = b.size;
        for (std::size_t o = 0; o < a.sig.ops.size(); ++o) {
            std::size_t entries = 1;
            for (unsigned i = 0; i < a.sig.ops[o].arity; ++i)
                entries *= b.size;
            std::vector<Element> table(entries);
            for (auto & v : table)
                v = gen::element(rng, b.size);
            target = with_operation(std::move(target), a.sig.ops[o].name, a.sig.ops[o].arity, table);
        }
        for (std::size_t r = 0; r < a.sig.rels.size(); ++r) {
            unsigned k = a.sig.rels[r].arity;
            std::vector<Element> random(k);
            for (auto & v : random)
                v = gen::element(rng, b.size);
            target = with_relation(std::move(target), a.sig.rels[r].name,
                Relation(k, {std::vector<Element>(k, 0), random}));
        }
        auto expected = oracle::homs(a, target);
        CHECK(enumerate_homs(a, target) == expected);

        Config other;
        other.alternate_order = true;
        other.workers = 3;
        CHECK(enumerate_homs(a, target, other) == expected);
    }
}

TEST_CASE("hom-sets are closed under the lifted operations of the alter ego")
{
    for (auto & name : catalog::names()) {
        auto e = catalog::get(name);
        if (! e.ego)
            continue;
        auto p = power(e.m, 2);
        std::vector<Element> all(p.size);
        for (Element i = 0; i < p.size; ++i)
            all[i] = i;
        for (auto & s : all_subuniverses_within(p, all)) {
            if (s.empty())
                continue;
            auto a = induced_substructure(p, s);
            auto homs = enumerate_homs(a, e.m);
            CHECK_NOTHROW(lift_pointwise(*e.ego, homs, a.size, "D"));
        }
    }
}

TEST_CASE("composites of homs are homs")
{
    auto dm4 = catalog::structure("DM4");
    auto p = power(dm4, 2);
    auto flat_p = apply_reduct(p, catalog::lattice_reduct());
    auto flat = apply_reduct(dm4, catalog::lattice_reduct());
    auto d = catalog::structure("D");
    auto first = enumerate_homs(flat_p, flat);
    auto second = enumerate_homs(flat, d);
    auto all = enumerate_homs(flat_p, d);
    std::set<Map> direct(all.begin(), all.end());
    for (auto & g : first)
        for (auto & h : second)
            CHECK(direct.count(compose(h, g)) == 1);
}

TEST_CASE("hom counts do not depend on element names")
{
    std::mt19937 rng(22);
    for (int round = 0; round < 100; ++round) {
        auto a = gen::structure(rng, {1, 4, 2, 2, 1, true});
        auto perm = gen::permutation(rng, a.size);
        auto b = gen::relabel(a, perm);
        CHECK(enumerate_homs(a, a).size() == enumerate_homs(b, b).size());
        CHECK(enumerate_homs(a, b).size() == enumerate_homs(a, a).size());
        CHECK(is_isomorphism(perm, a, b));
    }
}
