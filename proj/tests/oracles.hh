#ifndef DUALFORGE_TESTS_ORACLES_HH
#define DUALFORGE_TESTS_ORACLES_HH

// Deliberately naive reimplementations used as independent oracles. Nothing here calls the search code under test:
// closures are plain fixpoints, subuniverses are grown one element at a time, homs are found by plain backtracking.

#include <dualforge/core.hh>

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

namespace oracle
{
    using dualforge::Element;
    using dualforge::FiniteStructure;
    using dualforge::Map;
    using dualforge::Relation;
    using Tuple = std::vector<Element>;
    using TupleSet = std::set<Tuple>;

    inline auto apply(const FiniteStructure & m, std::size_t op, const Tuple & args) -> Element
    {
        std::size_t idx = 0;
        for (auto a : args)
            idx = idx * m.size + a;
        return m.tables[op][idx];
    }

    inline auto in_relation(const Relation & r, const Tuple & t) -> bool
    {
        for (std::size_t i = 0; i < r.size(); ++i)
            if (std::equal(t.begin(), t.end(), r.tuple(i).begin()))
                return true;
        return false;
    }

    /// Every way of choosing `count` items from `items` (with repetition, in order).
    inline auto for_each_choice(std::size_t items, unsigned count, const std::function<void(const std::vector<std::size_t> &)> & f)
        -> void
    {
        std::vector<std::size_t> pick(count, 0);
        if (items == 0 && count > 0)
            return;
        while (true) {
            f(pick);
            unsigned j = count;
            while (j > 0) {
                if (++pick[j - 1] < items)
                    break;
                pick[j - 1] = 0;
                --j;
            }
            if (j == 0)
                return;
        }
    }

    /// Closure of a set of k-tuples of M under the pointwise operations (the subuniverse of M^k it generates).
    inline auto closure(const FiniteStructure & m, unsigned k, TupleSet s) -> TupleSet
    {
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Tuple> members(s.begin(), s.end());
            for (std::size_t o = 0; o < m.sig.ops.size(); ++o)
                for_each_choice(members.size(), m.sig.ops[o].arity, [&](const std::vector<std::size_t> & pick) {
                    Tuple out(k);
                    for (unsigned c = 0; c < k; ++c) {
                        Tuple args;
                        for (auto p : pick)
                            args.push_back(members[p][c]);
                        out[c] = apply(m, o, args);
                    }
                    if (s.insert(out).second)
                        grew = true;
                });
        }
        return s;
    }

    /// All subuniverses of M^k inside `bound`, reached by adding one element at a time from the least one.
    inline auto subuniverses_within(const FiniteStructure & m, unsigned k, const TupleSet & bound) -> std::set<TupleSet>
    {
        auto inside = [&](const TupleSet & s) {
            return std::all_of(s.begin(), s.end(), [&](const Tuple & t) { return bound.count(t) > 0; });
        };
        std::set<TupleSet> found;
        auto least = closure(m, k, {});
        if (! inside(least))
            return found;
        std::vector<TupleSet> queue{least};
        found.insert(least);
        while (! queue.empty()) {
            auto s = queue.back();
            queue.pop_back();
            for (auto & t : bound) {
                if (s.count(t))
                    continue;
                auto grown = s;
                grown.insert(t);
                grown = closure(m, k, grown);
                if (inside(grown) && found.insert(grown).second)
                    queue.push_back(grown);
            }
        }
        return found;
    }

    inline auto all_tuples(std::size_t n, unsigned k) -> TupleSet
    {
        TupleSet all;
        for_each_choice(n, k, [&](const std::vector<std::size_t> & pick) { all.insert(Tuple(pick.begin(), pick.end())); });
        return all;
    }

    inline auto to_relation(unsigned k, const TupleSet & s) -> Relation
    {
        return Relation(k, std::vector<std::vector<Element>>(s.begin(), s.end()));
    }

    /// Maximal subuniverses of M^k inside each carrier-tuple preimage of r. The diagonal is kept.
    inline auto maximal_relations(const FiniteStructure & m, const std::vector<Map> & omegas, const Relation & r)
        -> std::set<Relation>
    {
        unsigned k = r.arity();
        std::set<Relation> result;
        for_each_choice(omegas.size(), k, [&](const std::vector<std::size_t> & pick) {
            TupleSet bound;
            for (auto & t : all_tuples(m.size, k)) {
                Tuple image(k);
                for (unsigned i = 0; i < k; ++i)
                    image[i] = omegas[pick[i]][t[i]];
                if (in_relation(r, image))
                    bound.insert(t);
            }
            auto subs = subuniverses_within(m, k, bound);
            for (auto & s : subs) {
                bool maximal = std::none_of(subs.begin(), subs.end(), [&](const TupleSet & u) {
                    return u.size() > s.size() && std::includes(u.begin(), u.end(), s.begin(), s.end());
                });
                if (maximal && ! s.empty())
                    result.insert(to_relation(k, s));
            }
        });
        return result;
    }

    /// The substructure of M^k on a set of tuples, elements numbered in the set's order.
    inline auto substructure(const FiniteStructure & m, unsigned k, const TupleSet & s) -> FiniteStructure
    {
        std::vector<Tuple> members(s.begin(), s.end());
        auto index = [&](const Tuple & t) {
            return static_cast<Element>(std::lower_bound(members.begin(), members.end(), t) - members.begin());
        };
        FiniteStructure a;
        a.name = "sub";
        a.sig = m.sig;
        a.size = members.size();
        for (std::size_t o = 0; o < m.sig.ops.size(); ++o) {
            std::vector<Element> table;
            for_each_choice(a.size, m.sig.ops[o].arity, [&](const std::vector<std::size_t> & pick) {
                Tuple out(k);
                for (unsigned c = 0; c < k; ++c) {
                    Tuple args;
                    for (auto p : pick)
                        args.push_back(members[p][c]);
                    out[c] = apply(m, o, args);
                }
                table.push_back(index(out));
            });
            a.tables.push_back(table);
        }
        for (auto & r : m.relations) {
            std::vector<std::vector<Element>> tuples;
            for_each_choice(a.size, r.arity(), [&](const std::vector<std::size_t> & pick) {
                bool in = true;
                for (unsigned c = 0; c < k && in; ++c) {
                    Tuple t;
                    for (auto p : pick)
                        t.push_back(members[p][c]);
                    in = in_relation(r, t);
                }
                if (in)
                    tuples.emplace_back(pick.begin(), pick.end());
            });
            a.relations.push_back(Relation(r.arity(), tuples));
        }
        return a;
    }

    /// All structure-preserving maps a -> b, by backtracking in element order; each constraint is checked as soon as
    /// its last element is assigned.
    inline auto homs(const FiniteStructure & a, const FiniteStructure & b) -> std::vector<Map>
    {
        struct Constraint
        {
            bool op;
            std::size_t symbol;
            Tuple args;
            Element result;
        };
        std::vector<std::vector<Constraint>> due(a.size);
        for (std::size_t o = 0; o < a.sig.ops.size(); ++o)
            for_each_choice(a.size, a.sig.ops[o].arity, [&](const std::vector<std::size_t> & pick) {
                Tuple args(pick.begin(), pick.end());
                Element res = apply(a, o, args);
                Element last = res;
                for (auto x : args)
                    last = std::max(last, x);
                due[last].push_back({true, o, args, res});
            });
        for (std::size_t r = 0; r < a.relations.size(); ++r)
            for (std::size_t i = 0; i < a.relations[r].size(); ++i) {
                auto t = a.relations[r].tuple(i);
                Tuple args(t.begin(), t.end());
                due[*std::max_element(args.begin(), args.end())].push_back({false, r, args, 0});
            }

        std::vector<Map> out;
        Map map(a.size);
        std::function<void(std::size_t)> go = [&](std::size_t i) {
            if (i == a.size) {
                out.push_back(map);
                return;
            }
            for (Element v = 0; v < b.size; ++v) {
                map[i] = v;
                bool ok = true;
                for (auto & c : due[i]) {
                    Tuple image;
                    for (auto x : c.args)
                        image.push_back(map[x]);
                    ok = c.op ? apply(b, c.symbol, image) == map[c.result] : in_relation(b.relations[c.symbol], image);
                    if (! ok)
                        break;
                }
                if (ok)
                    go(i + 1);
            }
        };
        if (a.size == 0)
            return {Map{}};
        go(0);
        return out;
    }

    /// The maps carrying the pointwise structure of `target`; maps must be closed under its operations.
    inline auto lifted(const FiniteStructure & target, const std::vector<Map> & maps, std::size_t domain)
        -> FiniteStructure
    {
        FiniteStructure s;
        s.name = "lifted";
        s.sig = target.sig;
        s.size = maps.size();
        for (std::size_t o = 0; o < target.sig.ops.size(); ++o) {
            std::vector<Element> table;
            for_each_choice(maps.size(), target.sig.ops[o].arity, [&](const std::vector<std::size_t> & pick) {
                Map res(domain);
                for (std::size_t c = 0; c < domain; ++c) {
                    Tuple args;
                    for (auto p : pick)
                        args.push_back(maps[p][c]);
                    res[c] = apply(target, o, args);
                }
                table.push_back(static_cast<Element>(std::find(maps.begin(), maps.end(), res) - maps.begin()));
            });
            s.tables.push_back(table);
        }
        for (auto & r : target.relations) {
            std::vector<std::vector<Element>> tuples;
            for_each_choice(maps.size(), r.arity(), [&](const std::vector<std::size_t> & pick) {
                bool in = true;
                for (std::size_t c = 0; c < domain && in; ++c) {
                    Tuple t;
                    for (auto p : pick)
                        t.push_back(maps[p][c]);
                    in = in_relation(r, t);
                }
                if (in)
                    tuples.emplace_back(pick.begin(), pick.end());
            });
            s.relations.push_back(Relation(r.arity(), tuples));
        }
        return s;
    }

    /// Semantic entailment restricted to A <= M^n, n <= depth: every morphism D(A) -> mt preserves r.
    inline auto entails(const FiniteStructure & m, const FiniteStructure & mt, const Relation & r, unsigned depth = 2)
        -> bool
    {
        unsigned k = r.arity();
        for (unsigned n = 1; n <= depth; ++n)
            for (auto & s : subuniverses_within(m, n, all_tuples(m.size, n))) {
                if (s.empty())
                    continue;
                auto a = substructure(m, n, s);
                auto carrier = homs(a, m);
                auto d = lifted(mt, carrier, a.size);
                auto alphas = homs(d, mt);
                bool ok = true;
                for_each_choice(carrier.size(), k, [&](const std::vector<std::size_t> & pick) {
                    if (! ok)
                        return;
                    for (std::size_t c = 0; c < a.size; ++c) {
                        Tuple t;
                        for (auto p : pick)
                            t.push_back(carrier[p][c]);
                        if (! in_relation(r, t))
                            return;
                    }
                    for (auto & alpha : alphas) {
                        Tuple image;
                        for (auto p : pick)
                            image.push_back(alpha[p]);
                        if (! in_relation(r, image)) {
                            ok = false;
                            return;
                        }
                    }
                });
                if (! ok)
                    return false;
            }
        return true;
    }
}

#endif
