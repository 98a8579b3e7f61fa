#include <dualforge/core.hh>

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

using std::optional;
using std::size_t;
using std::span;
using std::string;
using std::string_view;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace dualforge
{
    auto default_config() -> Config &
    {
        static Config config;
        return config;
    }

    auto Signature::find_op(string_view name) const -> optional<size_t>
    {
        for (size_t i = 0; i < ops.size(); ++i)
            if (ops[i].name == name)
                return i;
        return std::nullopt;
    }

    auto Signature::find_rel(string_view name) const -> optional<size_t>
    {
        for (size_t i = 0; i < rels.size(); ++i)
            if (rels[i].name == name)
                return i;
        return std::nullopt;
    }

    auto Signature::has_nullary_ops() const -> bool
    {
        return std::any_of(ops.begin(), ops.end(), [](const OpSymbol & o) { return o.arity == 0; });
    }

    auto Signature::validate() const -> void
    {
        std::set<string> seen;
        for (auto & o : ops) {
            if (o.name.empty())
                throw InputError("operation with empty name");
            if (o.arity > 8)
                throw InputError("operation '" + o.name + "' has unsupported arity " + to_string(o.arity));
            if (! seen.insert(o.name).second)
                throw InputError("duplicate symbol '" + o.name + "'");
        }
        for (auto & r : rels) {
            if (r.name.empty())
                throw InputError("relation with empty name");
            if (r.arity == 0 || r.arity > 8)
                throw InputError("relation '" + r.name + "' has unsupported arity " + to_string(r.arity));
            if (! seen.insert(r.name).second)
                throw InputError("duplicate symbol '" + r.name + "'");
        }
    }

    Relation::Relation(unsigned arity) : _arity(arity)
    {
        if (arity == 0)
            throw InputError("relations must have arity at least one");
    }

    Relation::Relation(unsigned arity, const vector<vector<Element>> & tuples) : Relation(arity)
    {
        vector<Element> flat;
        flat.reserve(tuples.size() * arity);
        for (auto & t : tuples) {
            if (t.size() != arity)
                throw InputError("tuple of length " + to_string(t.size()) + " in relation of arity " + to_string(arity));
            flat.insert(flat.end(), t.begin(), t.end());
        }
        *this = from_flat(arity, std::move(flat));
    }

    auto Relation::from_flat(unsigned arity, vector<Element> flat) -> Relation
    {
        Relation r(arity);
        if (flat.size() % arity != 0)
            throw InputError("flat tuple data not a multiple of the arity");
        size_t count = flat.size() / arity;
        vector<size_t> order(count);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return std::lexicographical_compare(flat.begin() + a * arity, flat.begin() + (a + 1) * arity,
                flat.begin() + b * arity, flat.begin() + (b + 1) * arity);
        });
        r._data.reserve(flat.size());
        for (size_t i = 0; i < count; ++i) {
            auto first = flat.begin() + order[i] * arity;
            if (! r._data.empty() && std::equal(first, first + arity, r._data.end() - arity))
                continue;
            r._data.insert(r._data.end(), first, first + arity);
        }
        return r;
    }

    auto Relation::tuples() const -> vector<vector<Element>>
    {
        vector<vector<Element>> result;
        for (size_t i = 0; i < size(); ++i) {
            auto t = tuple(i);
            result.emplace_back(t.begin(), t.end());
        }
        return result;
    }

    auto Relation::contains(span<const Element> t) const -> bool
    {
        if (t.size() != _arity)
            return false;
        size_t lo = 0, hi = size();
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            auto m = tuple(mid);
            if (std::lexicographical_compare(m.begin(), m.end(), t.begin(), t.end()))
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo < size() && std::equal(t.begin(), t.end(), tuple(lo).begin());
    }

    auto Relation::subset_of(const Relation & other) const -> bool
    {
        if (other._arity != _arity)
            return false;
        for (size_t i = 0; i < size(); ++i)
            if (! other.contains(tuple(i)))
                return false;
        return true;
    }

    auto Relation::intersect(const Relation & other) const -> Relation
    {
        vector<Element> flat;
        for (size_t i = 0; i < size(); ++i)
            if (other.contains(tuple(i)))
                flat.insert(flat.end(), tuple(i).begin(), tuple(i).end());
        return from_flat(_arity, std::move(flat));
    }

    auto Relation::converse() const -> Relation
    {
        vector<Element> flat = _data;
        for (size_t i = 0; i < size(); ++i)
            std::reverse(flat.begin() + i * _arity, flat.begin() + (i + 1) * _arity);
        return from_flat(_arity, std::move(flat));
    }

    auto Relation::max_entry() const -> optional<Element>
    {
        if (_data.empty())
            return std::nullopt;
        return *std::max_element(_data.begin(), _data.end());
    }

    auto Relation::operator<(const Relation & other) const -> bool
    {
        if (_arity != other._arity)
            return _arity < other._arity;
        return _data < other._data;
    }

    auto diagonal(size_t size) -> Relation
    {
        vector<Element> flat;
        for (Element a = 0; a < size; ++a) {
            flat.push_back(a);
            flat.push_back(a);
        }
        return Relation::from_flat(2, std::move(flat));
    }

    auto full_relation(size_t size, unsigned arity) -> Relation
    {
        auto count = checked_pow(size, arity, 100'000'000);
        if (! count)
            throw ResourceBoundError("full relation too large");
        vector<Element> flat;
        flat.reserve(*count * arity);
        for (Element i = 0; i < *count; ++i) {
            auto t = decode_tuple(i, arity, size);
            flat.insert(flat.end(), t.begin(), t.end());
        }
        return Relation::from_flat(arity, std::move(flat));
    }

    auto is_reflexive(const Relation & r, size_t size) -> bool
    {
        vector<Element> t(r.arity());
        for (Element a = 0; a < size; ++a) {
            std::fill(t.begin(), t.end(), a);
            if (! r.contains(t))
                return false;
        }
        return true;
    }

    auto is_antisymmetric(const Relation & r) -> bool
    {
        if (r.arity() != 2)
            return false;
        for (size_t i = 0; i < r.size(); ++i) {
            auto t = r.tuple(i);
            Element back[2] = {t[1], t[0]};
            if (t[0] != t[1] && r.contains(back))
                return false;
        }
        return true;
    }

    auto table_index(span<const Element> args, size_t n) -> size_t
    {
        size_t idx = 0;
        for (auto a : args)
            idx = idx * n + a;
        return idx;
    }

    auto checked_pow(size_t base, unsigned exponent, uint64_t bound) -> optional<uint64_t>
    {
        uint64_t result = 1;
        for (unsigned i = 0; i < exponent; ++i) {
            if (base != 0 && result > bound / base)
                return std::nullopt;
            result *= base;
        }
        if (result > bound)
            return std::nullopt;
        return result;
    }

    auto decode_tuple(Element e, unsigned n, size_t base) -> vector<Element>
    {
        vector<Element> t(n);
        for (unsigned i = n; i-- > 0;) {
            t[i] = static_cast<Element>(e % base);
            e = static_cast<Element>(e / base);
        }
        return t;
    }

    auto encode_tuple(span<const Element> t, size_t base) -> Element
    {
        return static_cast<Element>(table_index(t, base));
    }

    auto FiniteStructure::apply(size_t op, span<const Element> args) const -> Element
    {
        return tables[op][table_index(args, size)];
    }

    auto FiniteStructure::table(string_view op) const -> const vector<Element> &
    {
        auto i = sig.find_op(op);
        if (! i)
            throw InputError("structure '" + name + "' has no operation '" + string(op) + "'");
        return tables[*i];
    }

    auto FiniteStructure::relation(string_view rel) const -> const Relation &
    {
        auto i = sig.find_rel(rel);
        if (! i)
            throw InputError("structure '" + name + "' has no relation '" + string(rel) + "'");
        return relations[*i];
    }

    auto FiniteStructure::validate(bool base_structure) const -> void
    {
        sig.validate();
        if (base_structure && size == 0)
            throw InputError("structure '" + name + "' is empty");
        if (size == 0 && sig.has_nullary_ops())
            throw InputError("structure '" + name + "' is empty but has nullary operations");
        if (tables.size() != sig.ops.size() || relations.size() != sig.rels.size())
            throw InputError("structure '" + name + "' does not match its signature");
        if (! labels.empty() && labels.size() != size)
            throw InputError("structure '" + name + "' has " + to_string(labels.size()) + " labels for "
                + to_string(size) + " elements");
        for (size_t i = 0; i < tables.size(); ++i) {
            auto expected = checked_pow(size, sig.ops[i].arity, 1'000'000'000);
            if (! expected || tables[i].size() != *expected)
                throw InputError("operation '" + sig.ops[i].name + "' of '" + name + "' has a table of length "
                    + to_string(tables[i].size()));
            for (auto v : tables[i])
                if (v >= size)
                    throw InputError("operation '" + sig.ops[i].name + "' of '" + name + "' has out-of-range value "
                        + to_string(v));
        }
        for (size_t i = 0; i < relations.size(); ++i) {
            if (relations[i].arity() != sig.rels[i].arity)
                throw InputError("relation '" + sig.rels[i].name + "' has the wrong arity");
            if (auto m = relations[i].max_entry(); m && *m >= size)
                throw InputError("relation '" + sig.rels[i].name + "' of '" + name + "' mentions element "
                    + to_string(*m));
            if (base_structure && relations[i].empty())
                throw InputError("relation '" + sig.rels[i].name + "' of '" + name + "' is empty");
        }
    }

    ElementSet::ElementSet(size_t universe) : _universe(universe), _words((universe + 63) / 64, 0)
    {
    }

    auto ElementSet::count() const -> size_t
    {
        size_t c = 0;
        for (auto w : _words)
            c += static_cast<size_t>(__builtin_popcountll(w));
        return c;
    }

    auto ElementSet::subset_of(const ElementSet & other) const -> bool
    {
        for (size_t i = 0; i < _words.size(); ++i)
            if (_words[i] & ~other._words[i])
                return false;
        return true;
    }

    auto ElementSet::elements() const -> vector<Element>
    {
        vector<Element> result;
        for (size_t w = 0; w < _words.size(); ++w) {
            auto bits = _words[w];
            while (bits) {
                auto b = __builtin_ctzll(bits);
                result.push_back(static_cast<Element>(w * 64 + b));
                bits &= bits - 1;
            }
        }
        return result;
    }

    auto ElementSet::hash() const -> size_t
    {
        size_t h = 0xcbf29ce484222325ull;
        for (auto w : _words) {
            h ^= w;
            h *= 0x100000001b3ull;
            h ^= h >> 29;
        }
        return h;
    }

    auto power(const FiniteStructure & m, unsigned n, const Config & config) -> FiniteStructure
    {
        if (n == 0)
            throw InputError("power exponent must be positive");
        auto size = checked_pow(m.size, n, config.max_power);
        if (! size)
            throw ResourceBoundError("power " + m.name + "^" + to_string(n) + " exceeds the bound of "
                + to_string(config.max_power) + " elements");

        FiniteStructure p;
        p.name = m.name + "^" + to_string(n);
        p.sig = m.sig;
        p.size = *size;

        vector<vector<Element>> coords(p.size);
        for (Element e = 0; e < p.size; ++e)
            coords[e] = decode_tuple(e, n, m.size);

        for (size_t o = 0; o < m.sig.ops.size(); ++o) {
            unsigned k = m.sig.ops[o].arity;
            auto entries = checked_pow(p.size, k, 100'000'000);
            if (! entries)
                throw ResourceBoundError("operation table of " + p.name + " too large");
            vector<Element> table(*entries);
            vector<Element> args(k), base_args(k), result(n);
            for (size_t idx = 0; idx < *entries; ++idx) {
                size_t rest = idx;
                for (unsigned j = k; j-- > 0;) {
                    args[j] = static_cast<Element>(rest % p.size);
                    rest /= p.size;
                }
                for (unsigned c = 0; c < n; ++c) {
                    for (unsigned j = 0; j < k; ++j)
                        base_args[j] = coords[args[j]][c];
                    result[c] = m.apply(o, base_args);
                }
                table[idx] = encode_tuple(result, m.size);
            }
            p.tables.push_back(std::move(table));
        }

        for (auto & r : m.relations) {
            // a power tuple belongs to the lifted relation iff every coordinate slice belongs to r
            unsigned k = r.arity();
            vector<Element> flat;
            vector<size_t> pick(k, 0);
            auto total = checked_pow(r.size(), n, 50'000'000);
            if (! total)
                throw ResourceBoundError("lifted relation of " + p.name + " too large");
            vector<Element> tup(k);
            for (uint64_t choice = 0; choice < *total; ++choice) {
                uint64_t rest = choice;
                vector<Element> digits_per_coord(n);
                for (unsigned c = n; c-- > 0;) {
                    digits_per_coord[c] = static_cast<Element>(rest % r.size());
                    rest /= r.size();
                }
                for (unsigned j = 0; j < k; ++j) {
                    Element e = 0;
                    for (unsigned c = 0; c < n; ++c)
                        e = static_cast<Element>(e * m.size + r.tuple(digits_per_coord[c])[j]);
                    tup[j] = e;
                }
                flat.insert(flat.end(), tup.begin(), tup.end());
            }
            p.relations.push_back(Relation::from_flat(k, std::move(flat)));
        }
        return p;
    }

    namespace
    {
        // Applies every operation to every argument tuple that involves at least one member at index >= start,
        // appending new results. Tuples made only of members below `start` are assumed closed already.
        auto close_from(const FiniteStructure & m, vector<Element> & members, ElementSet & member_set, size_t start,
            const ElementSet * bound) -> bool
        {
            vector<size_t> pos;
            vector<Element> args;
            for (size_t i = start; i < members.size(); ++i) {
                for (size_t o = 0; o < m.sig.ops.size(); ++o) {
                    unsigned k = m.sig.ops[o].arity;
                    if (k == 0)
                        continue;
                    // all tuples over members[0..i] containing index i at least once
                    pos.assign(k, 0);
                    args.resize(k);
                    while (true) {
                        bool has_i = false;
                        for (unsigned j = 0; j < k; ++j) {
                            has_i = has_i || pos[j] == i;
                            args[j] = members[pos[j]];
                        }
                        if (has_i) {
                            Element v = m.apply(o, args);
                            if (! member_set.contains(v)) {
                                if (bound && ! bound->contains(v))
                                    return false;
                                member_set.insert(v);
                                members.push_back(v);
                            }
                        }
                        bool done = true;
                        for (unsigned j = k; j-- > 0;) {
                            if (pos[j] < i) {
                                ++pos[j];
                                done = false;
                                break;
                            }
                            pos[j] = 0;
                        }
                        if (done)
                            break;
                    }
                }
            }
            return true;
        }
    }

    auto extend_closure(const FiniteStructure & m, vector<Element> & members, ElementSet & member_set,
        span<const Element> extra, const ElementSet * bound) -> bool
    {
        size_t start = members.size();
        for (auto e : extra) {
            if (! member_set.contains(e)) {
                if (bound && ! bound->contains(e))
                    return false;
                member_set.insert(e);
                members.push_back(e);
            }
        }
        return close_from(m, members, member_set, start, bound);
    }

    namespace
    {
        auto nullary_values(const FiniteStructure & m) -> vector<Element>
        {
            vector<Element> result;
            for (size_t o = 0; o < m.sig.ops.size(); ++o)
                if (m.sig.ops[o].arity == 0)
                    result.push_back(m.tables[o][0]);
            return result;
        }
    }

    auto generate_substructure(const FiniteStructure & m, span<const Element> seed) -> vector<Element>
    {
        for (auto e : seed)
            if (e >= m.size)
                throw InputError("seed element " + to_string(e) + " outside the universe of " + m.name);
        vector<Element> members;
        ElementSet member_set(m.size);
        auto consts = nullary_values(m);
        extend_closure(m, members, member_set, consts, nullptr);
        extend_closure(m, members, member_set, seed, nullptr);
        std::sort(members.begin(), members.end());
        return members;
    }

    auto is_subuniverse(const FiniteStructure & m, span<const Element> set) -> bool
    {
        ElementSet s(m.size);
        for (auto e : set)
            s.insert(e);
        vector<Element> members;
        ElementSet member_set(m.size);
        return extend_closure(m, members, member_set, nullary_values(m), &s)
            && extend_closure(m, members, member_set, set, &s);
    }

    auto all_subuniverses_within(const FiniteStructure & m, span<const Element> bound, const Config & config)
        -> vector<vector<Element>>
    {
        ElementSet bound_set(m.size);
        for (auto e : bound) {
            if (e >= m.size)
                throw InputError("bound element outside the universe");
            bound_set.insert(e);
        }

        vector<Element> base;
        ElementSet base_set(m.size);
        if (! extend_closure(m, base, base_set, nullary_values(m), &bound_set))
            return {};

        auto candidates = bound_set.elements();
        if (config.alternate_order)
            std::reverse(candidates.begin(), candidates.end());

        std::unordered_set<ElementSet, ElementSetHash> seen{base_set};
        vector<std::pair<vector<Element>, ElementSet>> stack{{base, base_set}};
        while (! stack.empty()) {
            auto [members, member_set] = std::move(stack.back());
            stack.pop_back();
            for (auto t : candidates) {
                if (member_set.contains(t))
                    continue;
                auto grown = members;
                auto grown_set = member_set;
                Element extra[1] = {t};
                if (! extend_closure(m, grown, grown_set, extra, &bound_set))
                    continue;
                if (seen.insert(grown_set).second) {
                    if (seen.size() > config.max_closed_sets)
                        throw ResourceBoundError("more than " + to_string(config.max_closed_sets)
                            + " closed sets in the subuniverse search over " + m.name);
                    stack.emplace_back(std::move(grown), std::move(grown_set));
                }
            }
        }

        vector<vector<Element>> result;
        result.reserve(seen.size());
        for (auto & s : seen)
            result.push_back(s.elements());
        std::sort(result.begin(), result.end());
        return result;
    }

    auto induced_substructure(const FiniteStructure & m, span<const Element> subset) -> FiniteStructure
    {
        vector<Element> sorted(subset.begin(), subset.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (! is_subuniverse(m, sorted))
            throw InputError("subset is not a subuniverse of " + m.name);

        vector<int64_t> index(m.size, -1);
        for (size_t i = 0; i < sorted.size(); ++i)
            index[sorted[i]] = static_cast<int64_t>(i);

        FiniteStructure s;
        s.name = m.name + "|sub";
        s.sig = m.sig;
        s.size = sorted.size();
        for (size_t o = 0; o < m.sig.ops.size(); ++o) {
            unsigned k = m.sig.ops[o].arity;
            auto entries = checked_pow(s.size, k, 100'000'000);
            if (! entries)
                throw ResourceBoundError("operation table of substructure too large");
            vector<Element> table(*entries), args(k);
            for (size_t idx = 0; idx < *entries; ++idx) {
                size_t rest = idx;
                for (unsigned j = k; j-- > 0;) {
                    args[j] = sorted[rest % s.size];
                    rest /= s.size;
                }
                table[idx] = static_cast<Element>(index[m.apply(o, args)]);
            }
            s.tables.push_back(std::move(table));
        }
        for (auto & r : m.relations) {
            vector<Element> flat;
            for (size_t i = 0; i < r.size(); ++i) {
                auto t = r.tuple(i);
                if (std::all_of(t.begin(), t.end(), [&](Element e) { return index[e] >= 0; }))
                    for (auto e : t)
                        flat.push_back(static_cast<Element>(index[e]));
            }
            s.relations.push_back(Relation::from_flat(r.arity(), std::move(flat)));
        }
        if (! m.labels.empty())
            for (auto e : sorted)
                s.labels.push_back(m.labels[e]);
        return s;
    }

    auto preimage(span<const Map> maps, size_t domain_size, const Relation & r) -> Relation
    {
        if (maps.size() != r.arity())
            throw InputError("preimage needs " + to_string(r.arity()) + " maps, got " + to_string(maps.size()));
        for (auto & m : maps)
            if (m.size() != domain_size)
                throw InputError("preimage maps must share a domain");
        unsigned k = r.arity();
        auto count = checked_pow(domain_size, k, 50'000'000);
        if (! count)
            throw ResourceBoundError("preimage too large");
        vector<Element> flat, tup(k), image(k);
        for (uint64_t i = 0; i < *count; ++i) {
            tup = decode_tuple(static_cast<Element>(i), k, domain_size);
            for (unsigned j = 0; j < k; ++j)
                image[j] = maps[j][tup[j]];
            if (r.contains(image))
                flat.insert(flat.end(), tup.begin(), tup.end());
        }
        return Relation::from_flat(k, std::move(flat));
    }

    namespace
    {
        // Is relation r closed under op o of structure s (applied coordinatewise)?
        auto relation_closed_under(const Relation & r, const FiniteStructure & s, size_t o)
            -> optional<vector<vector<Element>>>
        {
            unsigned m = s.sig.ops[o].arity;
            unsigned k = r.arity();
            if (m == 0) {
                vector<Element> t(k, s.tables[o][0]);
                if (! r.contains(t))
                    return vector<vector<Element>>{t};
                return std::nullopt;
            }
            auto count = checked_pow(r.size(), m, 50'000'000);
            if (! count)
                throw ResourceBoundError("compatibility check too large");
            vector<Element> args(m), result(k);
            for (uint64_t choice = 0; choice < *count; ++choice) {
                auto picks = decode_tuple(static_cast<Element>(choice), m, r.size());
                for (unsigned c = 0; c < k; ++c) {
                    for (unsigned j = 0; j < m; ++j)
                        args[j] = r.tuple(picks[j])[c];
                    result[c] = s.apply(o, args);
                }
                if (! r.contains(result)) {
                    vector<vector<Element>> w;
                    for (unsigned j = 0; j < m; ++j)
                        w.emplace_back(r.tuple(picks[j]).begin(), r.tuple(picks[j]).end());
                    return w;
                }
            }
            return std::nullopt;
        }

        // Do op f of a and op g of b commute: f(g(x_11..x_1k), ..., g(x_m1..x_mk)) = g(f(x_11..x_m1), ...)?
        auto commute(const FiniteStructure & a, size_t f, const FiniteStructure & b, size_t g) -> bool
        {
            unsigned m = a.sig.ops[f].arity, k = b.sig.ops[g].arity;
            size_t n = a.size;
            auto count = checked_pow(n, m * k, 50'000'000);
            if (! count)
                throw ResourceBoundError("compatibility check too large");
            vector<Element> row(k), col(m), inner_rows(m), inner_cols(k);
            for (uint64_t idx = 0; idx < *count; ++idx) {
                auto x = decode_tuple(static_cast<Element>(idx), m * k, n);
                for (unsigned i = 0; i < m; ++i) {
                    for (unsigned j = 0; j < k; ++j)
                        row[j] = x[i * k + j];
                    inner_rows[i] = b.apply(g, row);
                }
                for (unsigned j = 0; j < k; ++j) {
                    for (unsigned i = 0; i < m; ++i)
                        col[i] = x[i * k + j];
                    inner_cols[j] = a.apply(f, col);
                }
                if (a.apply(f, inner_rows) != b.apply(g, inner_cols))
                    return false;
            }
            return true;
        }
    }

    auto compatibility_witness(const FiniteStructure & m, const FiniteStructure & mt) -> optional<string>
    {
        if (m.size != mt.size)
            return "universes differ in size";
        for (size_t r = 0; r < mt.relations.size(); ++r)
            for (size_t o = 0; o < m.sig.ops.size(); ++o)
                if (relation_closed_under(mt.relations[r], m, o))
                    return "relation '" + mt.sig.rels[r].name + "' is not closed under '" + m.sig.ops[o].name + "'";
        for (size_t r = 0; r < m.relations.size(); ++r)
            for (size_t o = 0; o < mt.sig.ops.size(); ++o)
                if (relation_closed_under(m.relations[r], mt, o))
                    return "relation '" + m.sig.rels[r].name + "' is not preserved by '" + mt.sig.ops[o].name + "'";
        for (size_t f = 0; f < m.sig.ops.size(); ++f)
            for (size_t g = 0; g < mt.sig.ops.size(); ++g)
                if (! commute(m, f, mt, g))
                    return "operations '" + m.sig.ops[f].name + "' and '" + mt.sig.ops[g].name + "' do not commute";
        return std::nullopt;
    }

    auto compatible(const FiniteStructure & m, const FiniteStructure & mt) -> bool
    {
        return ! compatibility_witness(m, mt).has_value();
    }

    auto with_relation(FiniteStructure m, string name, Relation r) -> FiniteStructure
    {
        m.sig.rels.push_back({std::move(name), r.arity()});
        m.relations.push_back(std::move(r));
        m.sig.validate();
        return m;
    }

    auto with_operation(FiniteStructure m, string name, unsigned arity, vector<Element> table) -> FiniteStructure
    {
        m.sig.ops.push_back({std::move(name), arity});
        m.tables.push_back(std::move(table));
        m.validate(false);
        return m;
    }

    namespace
    {
        struct MapHash
        {
            auto operator()(const Map & m) const -> size_t
            {
                size_t h = 0x9e3779b97f4a7c15ull;
                for (auto v : m)
                    h = (h ^ v) * 0x100000001b3ull;
                return h;
            }
        };
    }

    auto lift_pointwise(const FiniteStructure & target, const vector<Map> & maps, size_t domain_size, string name)
        -> FiniteStructure
    {
        std::unordered_map<Map, Element, MapHash> index;
        for (size_t i = 0; i < maps.size(); ++i) {
            if (maps[i].size() != domain_size)
                throw InputError("lifted maps must share a domain");
            index.emplace(maps[i], static_cast<Element>(i));
        }

        FiniteStructure s;
        s.name = std::move(name);
        s.sig = target.sig;
        s.size = maps.size();

        for (size_t o = 0; o < target.sig.ops.size(); ++o) {
            unsigned k = target.sig.ops[o].arity;
            auto entries = checked_pow(s.size, k, 100'000'000);
            if (! entries)
                throw ResourceBoundError("lifted operation table too large");
            vector<Element> table(*entries), args(k), picks(k);
            Map result(domain_size);
            for (size_t idx = 0; idx < *entries; ++idx) {
                size_t rest = idx;
                for (unsigned j = k; j-- > 0;) {
                    picks[j] = static_cast<Element>(rest % s.size);
                    rest /= s.size;
                }
                for (size_t c = 0; c < domain_size; ++c) {
                    for (unsigned j = 0; j < k; ++j)
                        args[j] = maps[picks[j]][c];
                    result[c] = target.apply(o, args);
                }
                auto it = index.find(result);
                if (it == index.end())
                    throw InputError("maps are not closed under the lifted operation '" + target.sig.ops[o].name + "'");
                table[idx] = it->second;
            }
            s.tables.push_back(std::move(table));
        }

        for (auto & r : target.relations) {
            unsigned k = r.arity();
            auto count = checked_pow(s.size, k, 50'000'000);
            if (! count)
                throw ResourceBoundError("lifted relation too large");
            vector<Element> flat, picks(k), slice(k);
            for (uint64_t idx = 0; idx < *count; ++idx) {
                picks = decode_tuple(static_cast<Element>(idx), k, s.size);
                bool in = true;
                for (size_t c = 0; c < domain_size && in; ++c) {
                    for (unsigned j = 0; j < k; ++j)
                        slice[j] = maps[picks[j]][c];
                    in = r.contains(slice);
                }
                if (in)
                    flat.insert(flat.end(), picks.begin(), picks.end());
            }
            s.relations.push_back(Relation::from_flat(k, std::move(flat)));
        }
        return s;
    }
}
