#include <dualforge/catalog.hh>

#include <algorithm>
#include <functional>

using std::function;
using std::optional;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace dualforge::catalog
{
    namespace
    {
        auto unary(size_t n, const function<Element(Element)> & f) -> vector<Element>
        {
            vector<Element> t(n);
            for (Element a = 0; a < n; ++a)
                t[a] = f(a);
            return t;
        }

        auto binary(size_t n, const function<Element(Element, Element)> & f) -> vector<Element>
        {
            vector<Element> t(n * n);
            for (Element a = 0; a < n; ++a)
                for (Element b = 0; b < n; ++b)
                    t[a * n + b] = f(a, b);
            return t;
        }

        auto make(string name, size_t size, vector<string> labels = {}) -> FiniteStructure
        {
            FiniteStructure s;
            s.name = std::move(name);
            s.size = size;
            s.labels = std::move(labels);
            return s;
        }

        auto op(FiniteStructure s, string name, unsigned arity, vector<Element> table) -> FiniteStructure
        {
            return with_operation(std::move(s), std::move(name), arity, std::move(table));
        }

        auto rel(FiniteStructure s, string name, Relation r) -> FiniteStructure
        {
            return with_relation(std::move(s), std::move(name), std::move(r));
        }

        auto chain_meet(size_t n) -> vector<Element>
        {
            return binary(n, [](Element a, Element b) { return std::min(a, b); });
        }

        auto chain_join(size_t n) -> vector<Element>
        {
            return binary(n, [](Element a, Element b) { return std::max(a, b); });
        }

        auto two_chain_order() -> Relation
        {
            return Relation(2, {{0, 0}, {0, 1}, {1, 1}});
        }

        auto d() -> FiniteStructure
        {
            auto s = make("D", 2);
            s = op(std::move(s), "join", 2, chain_join(2));
            s = op(std::move(s), "meet", 2, chain_meet(2));
            s = op(std::move(s), "zero", 0, {0});
            return op(std::move(s), "one", 0, {1});
        }

        auto twopos() -> FiniteStructure
        {
            return rel(make("TWOPOS", 2), "le", two_chain_order());
        }

        auto semilattice(string name, bool zero, bool one) -> FiniteStructure
        {
            auto s = op(make(std::move(name), 2), "meet", 2, chain_meet(2));
            if (zero)
                s = op(std::move(s), "zero", 0, {0});
            if (one)
                s = op(std::move(s), "one", 0, {1});
            return s;
        }

        auto bounded_chain_algebra(string name, vector<Element> extra, string extra_name) -> FiniteStructure
        {
            auto s = make(std::move(name), 3, {"0", "e", "1"});
            s = op(std::move(s), "join", 2, chain_join(3));
            s = op(std::move(s), "meet", 2, chain_meet(3));
            s = op(std::move(s), std::move(extra_name), 1, std::move(extra));
            s = op(std::move(s), "zero", 0, {0});
            return op(std::move(s), "one", 0, {2});
        }

        auto semilattice_reduct() -> ReductSpec
        {
            return ReductSpec::projection(semilattice("SL", false, false).sig);
        }

        auto bounded_semilattice_reduct() -> ReductSpec
        {
            return ReductSpec::projection(semilattice("SL01", true, true).sig);
        }

        auto order_reduct(const string & from) -> ReductSpec
        {
            ReductSpec spec;
            spec.target = twopos().sig;
            Atom atom;
            atom.rel = from;
            atom.args = {Term::variable(0), Term::variable(1)};
            spec.rel_defs.push_back({atom});
            return spec;
        }

        /// A meet-semilattice with an endomorphism u; its alter ego adds the bounds as constants.
        auto semilattice_entry(string name, string description, vector<string> labels, vector<Element> meet,
            vector<Element> u, Map omega) -> Entry
        {
            auto n = labels.size();
            auto m = make(name, n, labels);
            m = op(std::move(m), "meet", 2, std::move(meet));
            m = op(std::move(m), "u", 1, std::move(u));

            // the bottom absorbs every meet; the top is neutral
            Element bottom = 0, top = 0;
            for (Element a = 0; a < n; ++a) {
                bool absorbs = true, neutral = true;
                for (Element b = 0; b < n; ++b) {
                    Element args[2] = {a, b};
                    absorbs = absorbs && m.apply(0, args) == a;
                    neutral = neutral && m.apply(0, args) == b;
                }
                if (absorbs)
                    bottom = a;
                if (neutral)
                    top = a;
            }
            auto ego = m;
            ego.name = name + "~";
            ego = op(std::move(ego), "zero", 0, {bottom});
            ego = op(std::move(ego), "one", 0, {top});

            return Entry{name, std::move(description), std::move(m), "S01", semilattice_reduct(), {std::move(omega)},
                std::move(ego), bounded_semilattice_reduct()};
        }

        auto meet_from_order(size_t n, const function<bool(Element, Element)> & le) -> vector<Element>
        {
            return binary(n, [&](Element a, Element b) {
                // greatest lower bound; exists in every example listed here
                optional<Element> best;
                for (Element c = 0; c < n; ++c)
                    if (le(c, a) && le(c, b) && (! best || le(*best, c)))
                        best = c;
                return *best;
            });
        }

        auto ockham_entry(unsigned p) -> Entry
        {
            auto m = ockham(p);
            auto ego = make(m.name + "~", m.size, m.labels);
            ego = op(std::move(ego), "u", 1, ockham_shift(p));
            ego = rel(std::move(ego), "prec", alternating_order(p));
            return Entry{m.name,
                "Ockham algebra on {0,1}^" + to_string(p) + ", negation = shift then complement; alter ego (u, prec)", m,
                "D", lattice_reduct(), {first_coordinate(p)}, std::move(ego), order_reduct("prec")};
        }

        auto stone3() -> Entry
        {
            auto m = bounded_chain_algebra("Stone3", {2, 0, 0}, "star");
            auto ego = make("Stone3~", 3, {"0", "e", "1"});
            ego = op(std::move(ego), "end1", 1, {0, 2, 2});
            ego = rel(std::move(ego), "max1", Relation(2, {{0, 0}, {1, 1}, {1, 2}, {2, 2}}));
            return Entry{"Stone3", "three-element Stone algebra 0 < e < 1; carrier e -> 0", m, "D", lattice_reduct(),
                {{0, 0, 1}}, std::move(ego), order_reduct("max1")};
        }

        auto kleene3() -> Entry
        {
            auto m = bounded_chain_algebra("Kleene3", {2, 1, 0}, "neg");
            auto ego = make("Kleene3~", 3, {"0", "e", "1"});
            ego = rel(std::move(ego), "max1", Relation(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}}));
            ego = rel(std::move(ego), "max2", Relation(2, {{0, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2}}));
            ego = rel(std::move(ego), "max3", Relation(2, {{0, 0}, {1, 0}, {1, 1}, {1, 2}, {2, 2}}));
            ego = rel(std::move(ego), "max4", Relation(2, {{0, 0}, {2, 2}}));
            return Entry{"Kleene3", "three-element Kleene algebra 0 < e < 1; both carriers", m, "D", lattice_reduct(),
                {{0, 0, 1}, {0, 1, 1}}, std::move(ego), std::nullopt};
        }

        auto entries() -> const vector<Entry> &
        {
            static const vector<Entry> all = [] {
                vector<Entry> e;
                auto plain = [&](FiniteStructure s, string description) {
                    auto name = s.name;
                    e.push_back(Entry{name, std::move(description), std::move(s), std::nullopt, std::nullopt, {},
                        std::nullopt, std::nullopt});
                };
                plain(d(), "two-element bounded distributive lattice");
                plain(twopos(), "two-element chain as an ordered set");
                plain(semilattice("S", false, true), "two-element meet-semilattice with 1");
                plain(semilattice("Stilde", false, true), "alter ego of S (same structure)");
                plain(semilattice("SL", false, false), "two-element meet-semilattice");
                plain(semilattice("SL01", true, true), "two-element meet-semilattice with 0 and 1 as constants");

                auto dm4 = ockham_entry(2);
                dm4.name = dm4.m.name = "DM4";
                dm4.ego->name = "DM4~";
                dm4.description = "four-element De Morgan algebra, neg(x0 x1) = (not x1, not x0)";
                e.push_back(dm4);
                for (unsigned p = 1; p <= 3; ++p)
                    e.push_back(ockham_entry(p));
                e.push_back(stone3());
                e.push_back(kleene3());

                // elements named by their sequence of origin: a_k = 0^k 1 1 ..., so pi_0(a_k) = 0
                e.push_back(semilattice_entry("E", "chain 0 < a1 < 1 with u = shift; the constant 1 removed from the type",
                    {"0", "a1", "1"}, chain_meet(3), {0, 2, 2}, {0, 0, 1}));
                e.push_back(semilattice_entry("C4", "chain 0 < a2 < a1 < 1 with u = shift (a2 -> a1 -> 1)",
                    {"0", "a2", "a1", "1"}, chain_meet(4), {0, 2, 3, 3}, {0, 0, 0, 1}));
                e.push_back(semilattice_entry("M3", "atoms b0 = 1 0 0 1 0 0 ..., b1, b2 cycled by u, with 0 and 1",
                    {"0", "b0", "b1", "b2", "1"},
                    meet_from_order(5, [](Element a, Element b) { return a == b || a == 0 || b == 4; }),
                    {0, 2, 3, 1, 4}, {0, 1, 0, 0, 1}));
                e.push_back(semilattice_entry("N5", "0 < c < b < 1 and 0 < a < 1; u swaps a and b and sends c to 0",
                    {"0", "a", "b", "c", "1"},
                    meet_from_order(5,
                        [](Element x, Element y) { return x == y || x == 0 || y == 4 || (x == 3 && y == 2); }),
                    {0, 2, 1, 0, 4}, {0, 0, 1, 1, 1}));
                return e;
            }();
            return all;
        }
    }

    auto names() -> const vector<string> &
    {
        static const vector<string> all = [] {
            vector<string> n;
            for (auto & e : entries())
                n.push_back(e.name);
            return n;
        }();
        return all;
    }

    auto get(const string & name) -> Entry
    {
        for (auto & e : entries())
            if (e.name == name)
                return e;
        throw InputError("unknown catalog entry '" + name + "'");
    }

    auto structure(const string & name) -> FiniteStructure
    {
        auto dot = name.find('.');
        if (dot == string::npos)
            return get(name).m;
        auto entry = get(name.substr(0, dot));
        if (name.substr(dot + 1) == "ego" && entry.ego)
            return *entry.ego;
        throw InputError("catalog entry '" + name + "' is not a structure");
    }

    auto base_pair(const string & base) -> std::pair<FiniteStructure, FiniteStructure>
    {
        if (base == "D")
            return {d(), twopos()};
        if (base == "S")
            return {semilattice("S", false, true), semilattice("Stilde", false, true)};
        if (base == "S01")
            return {semilattice("SL", false, false), semilattice("SL01", true, true)};
        throw InputError("unknown base '" + base + "' (expected D, S or S01)");
    }

    auto base_for_signature(const Signature & sig) -> optional<string>
    {
        for (string base : {"D", "S", "S01"})
            if (base_pair(base).first.sig == sig)
                return base;
        return std::nullopt;
    }

    auto ockham(unsigned p) -> FiniteStructure
    {
        if (p == 0 || p > 8)
            throw InputError("period must be between 1 and 8");
        size_t n = size_t{1} << p;
        auto bit = [p](Element a, unsigned i) -> Element { return (a >> (p - 1 - i)) & 1u; };
        vector<string> labels;
        for (Element a = 0; a < n; ++a) {
            string l;
            for (unsigned i = 0; i < p; ++i)
                l += bit(a, i) ? '1' : '0';
            labels.push_back(l);
        }
        auto m = make("OCK" + to_string(p), n, labels);
        m = op(std::move(m), "join", 2, binary(n, [](Element a, Element b) { return a | b; }));
        m = op(std::move(m), "meet", 2, binary(n, [](Element a, Element b) { return a & b; }));
        m = op(std::move(m), "neg", 1, unary(n, [&](Element a) {
            Element r = 0;
            for (unsigned i = 0; i < p; ++i)
                r = (r << 1) | (1u - bit(a, (i + 1) % p));
            return r;
        }));
        m = op(std::move(m), "zero", 0, {0});
        return op(std::move(m), "one", 0, {static_cast<Element>(n - 1)});
    }

    auto ockham_shift(unsigned p) -> Map
    {
        size_t n = size_t{1} << p;
        return unary(n, [p](Element a) {
            Element r = 0;
            for (unsigned i = 0; i < p; ++i)
                r = (r << 1) | ((a >> (p - 1 - (i + 1) % p)) & 1u);
            return r;
        });
    }

    auto alternating_order(unsigned p) -> Relation
    {
        size_t n = size_t{1} << p;
        vector<vector<Element>> tuples;
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b) {
                bool ok = true;
                for (unsigned i = 0; i < 2 * p && ok; ++i) {
                    Element x = (a >> (p - 1 - i % p)) & 1u, y = (b >> (p - 1 - i % p)) & 1u;
                    ok = i % 2 == 0 ? x <= y : x >= y;
                }
                if (ok)
                    tuples.push_back({a, b});
            }
        return Relation(2, tuples);
    }

    auto first_coordinate(unsigned p) -> Map
    {
        return unary(size_t{1} << p, [p](Element a) { return (a >> (p - 1)) & 1u; });
    }

    auto lattice_reduct() -> ReductSpec
    {
        return ReductSpec::projection(d().sig);
    }
}
