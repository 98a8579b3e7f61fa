#ifndef DUALFORGE_TESTS_GENERATORS_HH
#define DUALFORGE_TESTS_GENERATORS_HH

#include <dualforge/core.hh>

#include <random>
#include <string>
#include <vector>

namespace gen
{
    using dualforge::Element;
    using dualforge::FiniteStructure;
    using dualforge::Relation;

    struct Shape
    {
        std::size_t min_size = 1, max_size = 4;
        unsigned max_ops = 3, max_arity = 2, max_rels = 1;
        bool nullaries = true;
    };

    inline auto element(std::mt19937 & rng, std::size_t n) -> Element
    {
        return std::uniform_int_distribution<Element>(0, static_cast<Element>(n - 1))(rng);
    }

    /// A random total structure; relations are non-empty.
    inline auto structure(std::mt19937 & rng, const Shape & shape = {}) -> FiniteStructure
    {
        FiniteStructure s;
        s.name = "R";
        s.size = std::uniform_int_distribution<std::size_t>(shape.min_size, shape.max_size)(rng);
        unsigned ops = std::uniform_int_distribution<unsigned>(0, shape.max_ops)(rng);
        for (unsigned o = 0; o < ops; ++o) {
            unsigned arity = std::uniform_int_distribution<unsigned>(shape.nullaries ? 0 : 1, shape.max_arity)(rng);
            std::size_t entries = 1;
            for (unsigned i = 0; i < arity; ++i)
                entries *= s.size;
            std::vector<Element> table(entries);
            for (auto & v : table)
                v = element(rng, s.size);
            s = dualforge::with_operation(std::move(s), "f" + std::to_string(o), arity, std::move(table));
        }
        unsigned rels = std::uniform_int_distribution<unsigned>(0, shape.max_rels)(rng);
        for (unsigned r = 0; r < rels; ++r) {
            unsigned arity = std::uniform_int_distribution<unsigned>(1, 2)(rng);
            std::vector<std::vector<Element>> tuples;
            unsigned count = std::uniform_int_distribution<unsigned>(1, 4)(rng);
            for (unsigned i = 0; i < count; ++i) {
                std::vector<Element> t(arity);
                for (auto & v : t)
                    v = element(rng, s.size);
                tuples.push_back(t);
            }
            s = dualforge::with_relation(std::move(s), "r" + std::to_string(r), Relation(arity, tuples));
        }
        return s;
    }

    inline auto subset(std::mt19937 & rng, std::size_t n) -> std::vector<Element>
    {
        std::vector<Element> s;
        for (Element e = 0; e < n; ++e)
            if (std::bernoulli_distribution(0.4)(rng))
                s.push_back(e);
        return s;
    }

    /// A random bijection, as a value array.
    inline auto permutation(std::mt19937 & rng, std::size_t n) -> std::vector<Element>
    {
        std::vector<Element> p(n);
        for (Element e = 0; e < n; ++e)
            p[e] = e;
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    }

    /// The copy of `s` along the bijection p (element e of s becomes p[e]).
    inline auto relabel(const FiniteStructure & s, const std::vector<Element> & p) -> FiniteStructure
    {
        FiniteStructure r;
        r.name = s.name + "'";
        r.size = s.size;
        std::vector<Element> inverse(s.size);
        for (Element e = 0; e < s.size; ++e)
            inverse[p[e]] = e;
        for (std::size_t o = 0; o < s.sig.ops.size(); ++o) {
            unsigned k = s.sig.ops[o].arity;
            std::vector<Element> table(s.tables[o].size());
            for (std::size_t idx = 0; idx < table.size(); ++idx) {
                auto args = dualforge::decode_tuple(static_cast<Element>(idx), k, s.size);
                for (auto & a : args)
                    a = inverse[a];
                table[idx] = p[s.apply(o, args)];
            }
            r = dualforge::with_operation(std::move(r), s.sig.ops[o].name, k, std::move(table));
        }
        for (std::size_t i = 0; i < s.relations.size(); ++i) {
            std::vector<std::vector<Element>> tuples;
            for (auto t : s.relations[i].tuples()) {
                for (auto & v : t)
                    v = p[v];
                tuples.push_back(t);
            }
            r = dualforge::with_relation(std::move(r), s.sig.rels[i].name, Relation(s.relations[i].arity(), tuples));
        }
        return r;
    }
}

#endif
