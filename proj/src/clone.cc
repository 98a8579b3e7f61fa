#include <dualforge/clone.hh>

#include <algorithm>
#include <map>
#include <set>

using std::size_t;
using std::vector;

namespace dualforge
{
    auto clo1(const FiniteStructure & m) -> vector<TermMap>
    {
        vector<TermMap> found;
        std::set<Map> seen;
        auto add = [&](Map map, Term term) {
            if (seen.insert(map).second)
                found.push_back({std::move(map), std::move(term)});
        };

        Map id(m.size);
        for (Element e = 0; e < m.size; ++e)
            id[e] = e;
        add(id, Term::variable(0));
        for (size_t o = 0; o < m.sig.ops.size(); ++o)
            if (m.sig.ops[o].arity == 0)
                add(Map(m.size, m.tables[o][0]), Term::apply(m.sig.ops[o].name));

        // layer by layer: each round applies an operation to tuples using at least one map from the last round
        size_t layer_start = 0;
        while (layer_start < found.size()) {
            size_t layer_end = found.size();
            for (size_t o = 0; o < m.sig.ops.size(); ++o) {
                unsigned k = m.sig.ops[o].arity;
                if (k == 0)
                    continue;
                vector<size_t> pick(k, 0);
                vector<Element> args(k);
                while (true) {
                    if (std::any_of(pick.begin(), pick.end(), [&](size_t p) { return p >= layer_start; })) {
                        Map result(m.size);
                        for (Element e = 0; e < m.size; ++e) {
                            for (unsigned j = 0; j < k; ++j)
                                args[j] = found[pick[j]].map[e];
                            result[e] = m.apply(o, args);
                        }
                        if (! seen.contains(result)) {
                            vector<Term> sub;
                            for (auto p : pick)
                                sub.push_back(found[p].term);
                            add(std::move(result), Term::apply(m.sig.ops[o].name, std::move(sub)));
                        }
                    }
                    bool done = true;
                    for (unsigned j = k; j-- > 0;) {
                        if (pick[j] + 1 < layer_end) {
                            ++pick[j];
                            done = false;
                            break;
                        }
                        pick[j] = 0;
                    }
                    if (done)
                        break;
                }
            }
            layer_start = layer_end;
        }

        std::sort(found.begin(), found.end(), [](const TermMap & a, const TermMap & b) { return a.map < b.map; });
        return found;
    }

    auto maps_of(const vector<TermMap> & fns) -> vector<Map>
    {
        vector<Map> result;
        for (auto & f : fns)
            result.push_back(f.map);
        return result;
    }

    auto compose_family(const vector<Map> & omegas, const vector<Map> & fns) -> vector<Map>
    {
        std::set<Map> result;
        for (auto & w : omegas)
            for (auto & u : fns) {
                Map c(u.size());
                for (size_t i = 0; i < u.size(); ++i)
                    c[i] = w[u[i]];
                result.insert(std::move(c));
            }
        return {result.begin(), result.end()};
    }

    auto named_constants(const FiniteStructure & mt) -> NamedConstantsReport
    {
        NamedConstantsReport report;
        auto fns = clo1(mt);
        std::set<Element> nullary;
        for (size_t o = 0; o < mt.sig.ops.size(); ++o)
            if (mt.sig.ops[o].arity == 0)
                for (auto & f : fns)
                    nullary.insert(f.map[mt.tables[o][0]]);
        report.nullary_values.assign(nullary.begin(), nullary.end());

        std::set<Element> constants;
        for (auto & f : fns) {
            if (f.map.empty() || std::any_of(f.map.begin(), f.map.end(), [&](Element v) { return v != f.map[0]; }))
                continue;
            constants.insert(f.map[0]);
            if (! nullary.contains(f.map[0]) && ! report.unnamed) {
                report.named = false;
                report.unnamed = f;
            }
        }
        report.constant_values.assign(constants.begin(), constants.end());
        return report;
    }
}
