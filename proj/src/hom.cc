#include <dualforge/hom.hh>

#include <algorithm>
#include <atomic>
#include <thread>

using std::optional;
using std::size_t;
using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace dualforge
{
    namespace
    {
        constexpr Element unassigned = ~Element{0};

        auto check_signatures(const FiniteStructure & a, const FiniteStructure & b) -> void
        {
            if (a.sig != b.sig)
                throw InputError("structures '" + a.name + "' and '" + b.name + "' have different signatures");
        }

        auto violation(const FiniteStructure & a, const FiniteStructure & b, const Map & map) -> optional<string>
        {
            if (map.size() != a.size)
                return "map has length " + to_string(map.size()) + ", expected " + to_string(a.size);
            for (auto v : map)
                if (v >= b.size)
                    return "map value " + to_string(v) + " out of range";
            for (size_t o = 0; o < a.sig.ops.size(); ++o) {
                unsigned k = a.sig.ops[o].arity;
                auto entries = a.tables[o].size();
                vector<Element> args(k), image(k);
                for (size_t idx = 0; idx < entries; ++idx) {
                    args = decode_tuple(static_cast<Element>(idx), k, a.size);
                    for (unsigned j = 0; j < k; ++j)
                        image[j] = map[args[j]];
                    if (map[a.tables[o][idx]] != b.apply(o, image))
                        return "operation '" + a.sig.ops[o].name + "' not preserved";
                }
            }
            for (size_t r = 0; r < a.relations.size(); ++r) {
                auto & rel = a.relations[r];
                vector<Element> image(rel.arity());
                for (size_t i = 0; i < rel.size(); ++i) {
                    auto t = rel.tuple(i);
                    for (unsigned j = 0; j < rel.arity(); ++j)
                        image[j] = map[t[j]];
                    if (! b.relations[r].contains(image))
                        return "relation '" + a.sig.rels[r].name + "' not preserved";
                }
            }
            return std::nullopt;
        }

        /// Membership test for a target relation, as a bitset when the tuple space is small.
        class RelationIndex
        {
        private:
            const Relation * _rel;
            size_t _size;
            vector<bool> _bits;

        public:
            RelationIndex(const Relation & rel, size_t size) : _rel(&rel), _size(size)
            {
                if (auto space = checked_pow(size, rel.arity(), uint64_t{1} << 26)) {
                    _bits.assign(*space, false);
                    for (size_t i = 0; i < rel.size(); ++i)
                        _bits[table_index(rel.tuple(i), size)] = true;
                }
            }

            auto contains(std::span<const Element> t) const -> bool
            {
                if (! _bits.empty())
                    return _bits[table_index(t, _size)];
                return _rel->contains(t);
            }
        };

        struct OpOccurrence
        {
            unsigned op;
            Element index;
        };

        struct RelOccurrence
        {
            unsigned rel;
            Element tuple;
        };

        class HomSearch
        {
        private:
            const FiniteStructure & _a;
            const FiniteStructure & _b;
            const Config & _config;
            std::atomic<uint64_t> & _nodes;

            vector<vector<OpOccurrence>> _op_occ;
            vector<vector<RelOccurrence>> _rel_occ;
            vector<RelationIndex> _targets;
            vector<Element> _order;
            vector<Element> _values;

            vector<Element> _val;
            vector<Element> _trail;

            auto assign(Element e, Element v) -> bool
            {
                if (_val[e] != unassigned)
                    return _val[e] == v;
                _val[e] = v;
                _trail.push_back(e);
                return true;
            }

            auto propagate(size_t from) -> bool
            {
                Element args[8], image[8];
                for (size_t q = from; q < _trail.size(); ++q) {
                    Element e = _trail[q];
                    for (auto & occ : _op_occ[e]) {
                        unsigned k = _a.sig.ops[occ.op].arity;
                        size_t rest = occ.index;
                        bool complete = true;
                        for (unsigned j = k; j-- > 0;) {
                            args[j] = static_cast<Element>(rest % _a.size);
                            rest /= _a.size;
                            image[j] = _val[args[j]];
                            complete = complete && image[j] != unassigned;
                        }
                        if (! complete)
                            continue;
                        Element result = _a.tables[occ.op][occ.index];
                        if (! assign(result, _b.apply(occ.op, std::span<const Element>(image, k))))
                            return false;
                    }
                    for (auto & occ : _rel_occ[e]) {
                        auto t = _a.relations[occ.rel].tuple(occ.tuple);
                        bool complete = true;
                        for (size_t j = 0; j < t.size() && complete; ++j) {
                            image[j] = _val[t[j]];
                            complete = image[j] != unassigned;
                        }
                        if (complete && ! _targets[occ.rel].contains(std::span<const Element>(image, t.size())))
                            return false;
                    }
                }
                return true;
            }

            auto undo(size_t mark) -> void
            {
                while (_trail.size() > mark) {
                    _val[_trail.back()] = unassigned;
                    _trail.pop_back();
                }
            }

            auto count_node() -> void
            {
                if (++_nodes > _config.max_nodes)
                    throw ResourceBoundError("homomorphism search " + _a.name + " -> " + _b.name + " exceeded "
                        + to_string(_config.max_nodes) + " nodes");
            }

            auto search(size_t pos, vector<Map> & out) -> void
            {
                while (pos < _order.size() && _val[_order[pos]] != unassigned)
                    ++pos;
                if (pos == _order.size()) {
                    out.push_back(_val);
                    return;
                }
                Element e = _order[pos];
                for (auto v : _values) {
                    count_node();
                    size_t mark = _trail.size();
                    if (assign(e, v) && propagate(mark))
                        search(pos + 1, out);
                    undo(mark);
                }
            }

        public:
            HomSearch(const FiniteStructure & a, const FiniteStructure & b, const Config & config,
                std::atomic<uint64_t> & nodes) :
                _a(a), _b(b), _config(config), _nodes(nodes), _op_occ(a.size), _rel_occ(a.size), _val(a.size, unassigned)
            {
                for (unsigned o = 0; o < a.sig.ops.size(); ++o) {
                    unsigned k = a.sig.ops[o].arity;
                    for (size_t idx = 0; idx < a.tables[o].size(); ++idx) {
                        auto args = decode_tuple(static_cast<Element>(idx), k, a.size);
                        for (unsigned j = 0; j < k; ++j)
                            if (std::find(args.begin(), args.begin() + j, args[j]) == args.begin() + j)
                                _op_occ[args[j]].push_back({o, static_cast<Element>(idx)});
                    }
                }
                for (unsigned r = 0; r < a.relations.size(); ++r) {
                    auto & rel = a.relations[r];
                    for (size_t i = 0; i < rel.size(); ++i) {
                        auto t = rel.tuple(i);
                        for (size_t j = 0; j < t.size(); ++j)
                            if (std::find(t.begin(), t.begin() + j, t[j]) == t.begin() + j)
                                _rel_occ[t[j]].push_back({r, static_cast<Element>(i)});
                    }
                }
                for (auto & rel : b.relations)
                    _targets.emplace_back(rel, b.size);

                // generators first, each followed by whatever it newly generates
                vector<Element> members;
                ElementSet member_set(a.size);
                vector<Element> consts;
                for (size_t o = 0; o < a.sig.ops.size(); ++o)
                    if (a.sig.ops[o].arity == 0)
                        consts.push_back(a.tables[o][0]);
                extend_closure(a, members, member_set, consts, nullptr);
                vector<Element> candidates(a.size);
                for (Element e = 0; e < a.size; ++e)
                    candidates[e] = e;
                if (config.alternate_order)
                    std::reverse(candidates.begin(), candidates.end());
                _order = members;
                for (auto e : candidates) {
                    if (member_set.contains(e))
                        continue;
                    size_t before = members.size();
                    Element seed[1] = {e};
                    extend_closure(a, members, member_set, seed, nullptr);
                    _order.insert(_order.end(), members.begin() + before, members.end());
                }

                for (Element v = 0; v < b.size; ++v)
                    _values.push_back(v);
                if (config.alternate_order)
                    std::reverse(_values.begin(), _values.end());
            }

            /// Forces nullary values and propagates them. False when no hom can exist.
            auto root() -> bool
            {
                for (size_t o = 0; o < _a.sig.ops.size(); ++o)
                    if (_a.sig.ops[o].arity == 0 && ! assign(_a.tables[o][0], _b.tables[o][0]))
                        return false;
                return propagate(0);
            }

            auto first_branch() -> optional<Element>
            {
                for (auto e : _order)
                    if (_val[e] == unassigned)
                        return e;
                return std::nullopt;
            }

            auto values() const -> const vector<Element> & { return _values; }

            auto run(vector<Map> & out) -> void { search(0, out); }

            /// Explores only the subtree where `e` takes value `v`.
            auto run_branch(Element e, Element v, vector<Map> & out) -> void
            {
                count_node();
                size_t mark = _trail.size();
                if (assign(e, v) && propagate(mark))
                    search(0, out);
                undo(mark);
            }
        };
    }

    auto is_hom(const FiniteStructure & a, const FiniteStructure & b, const Map & map) -> bool
    {
        check_signatures(a, b);
        return ! violation(a, b, map).has_value();
    }

    auto make_hom(const FiniteStructure & a, const FiniteStructure & b, Map map) -> Map
    {
        check_signatures(a, b);
        if (auto v = violation(a, b, map))
            throw InputError("not a homomorphism " + a.name + " -> " + b.name + ": " + *v);
        return map;
    }

    auto enumerate_homs(const FiniteStructure & a, const FiniteStructure & b, const Config & config) -> vector<Map>
    {
        check_signatures(a, b);
        if (a.size == 0)
            return {Map{}};
        if (b.size == 0)
            return {};

        std::atomic<uint64_t> nodes{0};
        HomSearch search(a, b, config, nodes);
        vector<Map> result;
        if (! search.root())
            return result;

        auto branch = search.first_branch();
        if (config.workers <= 1 || ! branch) {
            search.run(result);
        }
        else {
            // split on the first branching element; every worker owns its own search state
            auto & values = search.values();
            vector<vector<Map>> parts(values.size());
            vector<std::exception_ptr> errors(values.size());
            std::atomic<size_t> next{0};
            auto work = [&]() {
                HomSearch local(a, b, config, nodes);
                local.root();
                for (size_t i = next++; i < values.size(); i = next++) {
                    try {
                        local.run_branch(*branch, values[i], parts[i]);
                    }
                    catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            };
            vector<std::thread> threads;
            for (unsigned w = 0; w < std::min<size_t>(config.workers, values.size()); ++w)
                threads.emplace_back(work);
            for (auto & t : threads)
                t.join();
            for (auto & e : errors)
                if (e)
                    std::rethrow_exception(e);
            for (auto & p : parts)
                result.insert(result.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
        }
        std::sort(result.begin(), result.end());
        return result;
    }

    auto separates_points(const vector<Map> & xs, size_t size) -> SeparationResult
    {
        SeparationResult result;
        // group elements by their signature across the family; equal signatures cannot be separated
        vector<Element> order(size);
        for (Element e = 0; e < size; ++e)
            order[e] = e;
        auto profile_less = [&](Element p, Element q) {
            for (auto & x : xs)
                if (x[p] != x[q])
                    return x[p] < x[q];
            return false;
        };
        std::stable_sort(order.begin(), order.end(), profile_less);
        optional<std::pair<Element, Element>> best;
        for (size_t i = 1; i < size; ++i)
            if (! profile_less(order[i - 1], order[i])) {
                std::pair<Element, Element> pair = std::minmax(order[i - 1], order[i]);
                if (! best || pair < *best)
                    best = pair;
            }
        if (best) {
            result.separates = false;
            result.points = best;
        }
        return result;
    }

    auto separates_structure(const vector<Map> & xs, const FiniteStructure & a, const FiniteStructure & m)
        -> SeparationResult
    {
        check_signatures(a, m);
        auto result = separates_points(xs, a.size);
        if (! result.separates)
            return result;
        for (size_t r = 0; r < a.relations.size(); ++r) {
            unsigned k = a.relations[r].arity();
            auto count = checked_pow(a.size, k, 50'000'000);
            if (! count)
                throw ResourceBoundError("relation separation check too large");
            RelationIndex target(m.relations[r], m.size);
            vector<Element> image(k);
            for (uint64_t idx = 0; idx < *count; ++idx) {
                auto t = decode_tuple(static_cast<Element>(idx), k, a.size);
                if (a.relations[r].contains(t))
                    continue;
                bool separated = false;
                for (auto & x : xs) {
                    for (unsigned j = 0; j < k; ++j)
                        image[j] = x[t[j]];
                    if (! target.contains(image)) {
                        separated = true;
                        break;
                    }
                }
                if (! separated) {
                    result.separates = false;
                    result.relation = a.sig.rels[r].name;
                    result.tuple = t;
                    return result;
                }
            }
        }
        return result;
    }

    auto in_prevariety(const FiniteStructure & a, const FiniteStructure & n, const Config & config) -> bool
    {
        return separates_structure(enumerate_homs(a, n, config), a, n).separates;
    }

    auto is_isomorphism(const Map & h, const FiniteStructure & a, const FiniteStructure & b) -> bool
    {
        if (a.size != b.size || ! is_hom(a, b, h))
            return false;
        Map inverse(b.size, unassigned);
        for (Element e = 0; e < a.size; ++e) {
            if (inverse[h[e]] != unassigned)
                return false;
            inverse[h[e]] = e;
        }
        return is_hom(b, a, inverse);
    }

    auto compose(const Map & outer, const Map & inner) -> Map
    {
        Map result(inner.size());
        for (size_t i = 0; i < inner.size(); ++i)
            result[i] = outer[inner[i]];
        return result;
    }
}
