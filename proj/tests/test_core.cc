#include "generators.hh"
#include "oracles.hh"

#include <dualforge/catalog.hh>
#include <dualforge/core.hh>
#include <dualforge/term.hh>

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace dualforge;

namespace
{
    auto chain_poset() -> FiniteStructure
    {
        return catalog::structure("TWOPOS");
    }

    auto range(std::size_t n) -> std::vector<Element>
    {
        std::vector<Element> all(n);
        for (Element e = 0; e < n; ++e)
            all[e] = e;
        return all;
    }

    auto x(unsigned i) -> Term
    {
        return Term::variable(i);
    }

    auto f(std::string op, std::vector<Term> args = {}) -> Term
    {
        return Term::apply(std::move(op), std::move(args));
    }
}

TEST_CASE("relations are kept sorted and duplicate free")
{
    Relation r(2, {{1, 0}, {0, 1}, {1, 0}, {0, 0}});
    CHECK(r.size() == 3);
    CHECK(r.tuples() == std::vector<std::vector<Element>>{{0, 0}, {0, 1}, {1, 0}});
    Element probe[2] = {0, 1};
    CHECK(r.contains(probe));
    CHECK(r.converse().tuples() == std::vector<std::vector<Element>>{{0, 0}, {0, 1}, {1, 0}});
    CHECK(r.intersect(diagonal(2)) == Relation(2, {{0, 0}}));
}

TEST_CASE("power of the two-element chain")
{
    auto p = power(chain_poset(), 2);
    CHECK(p.size == 4);
    CHECK(p.relation("le").size() == 9);

    // the order on {0,1}^2 counted directly
    std::size_t expected = 0;
    for (Element a = 0; a < 4; ++a)
        for (Element b = 0; b < 4; ++b)
            if ((a >> 1) <= (b >> 1) && (a & 1) <= (b & 1))
                ++expected;
    CHECK(expected == 9);
}

TEST_CASE("first power is the structure itself")
{
    auto dm4 = catalog::structure("DM4");
    auto p = power(dm4, 1);
    CHECK(p.size == dm4.size);
    CHECK(p.tables == dm4.tables);
    CHECK(p.relations == dm4.relations);
}

TEST_CASE("square of the two-element bounded lattice")
{
    auto p = power(catalog::structure("D"), 2);
    CHECK(p.size == 4);
    CHECK(p.table("zero") == std::vector<Element>{0});
    CHECK(p.table("one") == std::vector<Element>{3});
    Element args[2] = {1, 2};
    CHECK(p.apply(*p.sig.find_op("join"), args) == 3);
    CHECK(p.apply(*p.sig.find_op("meet"), args) == 0);
}

TEST_CASE("power beyond the configured bound is a resource error")
{
    Config tight;
    tight.max_power = 100;
    CHECK_THROWS_AS(power(catalog::structure("DM4"), 4, tight), ResourceBoundError);
    CHECK_NOTHROW(power(catalog::structure("DM4"), 3, tight));
}

TEST_CASE("generated substructures")
{
    auto dm4 = catalog::structure("DM4");
    Element a[1] = {1};
    CHECK(generate_substructure(dm4, a) == std::vector<Element>{0, 1, 3});
    auto all = range(4);
    CHECK(generate_substructure(dm4, all) == all);
    Element zero[1] = {0};
    CHECK(generate_substructure(chain_poset(), zero) == std::vector<Element>{0});
    CHECK(generate_substructure(chain_poset(), std::span<const Element>{}).empty());
}

TEST_CASE("subuniverses inside a bound")
{
    auto d = catalog::structure("D");
    auto both = range(2);
    CHECK(all_subuniverses_within(d, both) == std::vector<std::vector<Element>>{{0, 1}});

    // listed in lexicographic order of the sorted element lists
    CHECK(all_subuniverses_within(chain_poset(), both)
        == std::vector<std::vector<Element>>{{}, {0}, {0, 1}, {1}});

    std::vector<Element> bound{0, 1, 3};
    CHECK(all_subuniverses_within(catalog::structure("DM4"), bound)
        == std::vector<std::vector<Element>>{{0, 1, 3}, {0, 3}});
}

TEST_CASE("too many closed sets is a resource error")
{
    Config tight;
    tight.max_closed_sets = 10;
    auto p = power(chain_poset(), 2);
    CHECK_THROWS_AS(all_subuniverses_within(p, range(4), tight), ResourceBoundError);
}

TEST_CASE("reducts")
{
    auto dm4 = catalog::structure("DM4");
    auto flat = apply_reduct(dm4, catalog::lattice_reduct());
    CHECK(flat.sig == catalog::structure("D").sig);
    CHECK(flat.size == 4);
    CHECK(flat.table("meet") == dm4.table("meet"));

    // an order defined by an equation
    ReductSpec order;
    order.target.rels.push_back({"le", 2});
    Atom eq;
    eq.args = {f("meet", {x(0), x(1)}), x(0)};
    order.rel_defs.push_back({eq});
    auto kleene = apply_reduct(catalog::structure("Kleene3"), order);
    CHECK(kleene.relation("le").size() == 6);

    // a two-atom formula agrees with evaluating both atoms directly
    ReductSpec twisted;
    twisted.target.rels.push_back({"t", 2});
    Atom first, second;
    first.args = {f("meet", {x(0), f("neg", {x(1)})}), f("zero")};
    second.args = {f("join", {x(0), x(1)}), f("join", {x(1), f("neg", {x(1)})})};
    twisted.rel_defs.push_back({first, second});
    auto r = apply_reduct(dm4, twisted).relation("t");
    std::vector<std::vector<Element>> expected;
    auto neg = dm4.table("neg");
    for (Element a = 0; a < 4; ++a)
        for (Element b = 0; b < 4; ++b)
            if ((a & neg[b]) == 0 && (a | b) == (b | neg[b]))
                expected.push_back({a, b});
    CHECK(r == Relation(2, expected));
}

TEST_CASE("a reduct defining an empty relation is rejected")
{
    ReductSpec spec;
    spec.target.rels.push_back({"never", 1});
    Atom eq;
    eq.args = {f("zero"), f("one")};
    spec.rel_defs.push_back({eq});
    CHECK_THROWS_AS(apply_reduct(catalog::structure("D"), spec), InputError);
    CHECK(apply_reduct(catalog::structure("D"), spec, true).relation("never").empty());
}

TEST_CASE("preimages")
{
    Map pi0{0, 0, 1, 1};
    auto le = chain_poset().relation("le");
    std::vector<Map> pair{pi0, pi0};
    auto pre = preimage(pair, 4, le);
    CHECK(pre.size() == 12);
    for (auto & t : pre.tuples())
        CHECK(! (pi0[t[0]] == 1 && pi0[t[1]] == 0));

    CHECK(preimage(pair, 4, full_relation(2, 2)) == full_relation(4, 2));
    Map id{0, 1};
    std::vector<Map> ids{id, id};
    CHECK(preimage(ids, 2, le) == le);
    std::vector<Map> one{pi0};
    CHECK_THROWS_AS(preimage(one, 4, le), InputError);
}

TEST_CASE("generated substructure is a closure operator")
{
    std::mt19937 rng(11);
    for (int round = 0; round < 300; ++round) {
        auto s = gen::structure(rng);
        auto a = gen::subset(rng, s.size);
        auto b = a;
        for (auto e : gen::subset(rng, s.size))
            b.push_back(e);
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());

        auto ca = generate_substructure(s, a);
        auto cb = generate_substructure(s, b);
        CHECK(std::includes(ca.begin(), ca.end(), a.begin(), a.end()));
        CHECK(std::includes(cb.begin(), cb.end(), ca.begin(), ca.end()));
        CHECK(generate_substructure(s, ca) == ca);
        CHECK(is_subuniverse(s, ca));

        oracle::TupleSet seed;
        for (auto e : a)
            seed.insert({e});
        auto naive = oracle::closure(s, 1, seed);
        std::vector<Element> expected;
        for (auto & t : naive)
            expected.push_back(t[0]);
        CHECK(ca == expected);
    }
}

TEST_CASE("relations of a power restricted to constant tuples are those of the base")
{
    std::mt19937 rng(12);
    for (int round = 0; round < 100; ++round) {
        auto s = gen::structure(rng, {1, 3, 2, 2, 2, true});
        auto p = power(s, 2);
        for (std::size_t r = 0; r < s.relations.size(); ++r) {
            auto & rel = s.relations[r];
            for (auto & t : full_relation(s.size, rel.arity()).tuples()) {
                std::vector<Element> lifted;
                for (auto v : t)
                    lifted.push_back(v * static_cast<Element>(s.size) + v);
                CHECK(p.relations[r].contains(lifted) == rel.contains(t));
            }
        }
    }
}

TEST_CASE("reducts commute with substructures")
{
    auto dm4 = catalog::structure("DM4");
    auto spec = catalog::lattice_reduct();
    auto p = power(dm4, 2);
    auto flat_p = apply_reduct(p, spec);
    for (auto & s : all_subuniverses_within(p, range(p.size))) {
        auto sub_then_flat = apply_reduct(induced_substructure(p, s), spec, true);
        auto flat_then_sub = induced_substructure(flat_p, s);
        CHECK(sub_then_flat.tables == flat_then_sub.tables);
        CHECK(sub_then_flat.relations == flat_then_sub.relations);
    }
}

TEST_CASE("subuniverse enumeration agrees with a naive search")
{
    std::mt19937 rng(13);
    for (int round = 0; round < 200; ++round) {
        auto s = gen::structure(rng, {1, 5, 3, 2, 0, true});
        auto bound = gen::subset(rng, s.size);
        oracle::TupleSet b;
        for (auto e : bound)
            b.insert({e});
        std::vector<std::vector<Element>> expected;
        for (auto & sub : oracle::subuniverses_within(s, 1, b)) {
            std::vector<Element> v;
            for (auto & t : sub)
                v.push_back(t[0]);
            expected.push_back(v);
        }
        std::sort(expected.begin(), expected.end());
        CHECK(all_subuniverses_within(s, bound) == expected);
    }
}

TEST_CASE("compatibility of catalog pairs")
{
    for (auto & name : catalog::names()) {
        auto e = catalog::get(name);
        if (e.ego)
            CHECK_MESSAGE(compatible(e.m, *e.ego), name);
    }
    CHECK(compatible(catalog::structure("D"), catalog::structure("TWOPOS")));
    CHECK(! compatible(catalog::structure("D"), catalog::structure("D")));
}

TEST_CASE("structures are validated")
{
    FiniteStructure s;
    s.name = "bad";
    s.size = 2;
    CHECK_THROWS_AS(with_operation(std::move(s), "f", 1, {0, 2}), InputError);

    FiniteStructure t;
    t.name = "empty-rel";
    t.size = 2;
    t = with_relation(std::move(t), "r", Relation(1));
    CHECK_THROWS_AS(t.validate(), InputError);
    CHECK_NOTHROW(t.validate(false));
}
