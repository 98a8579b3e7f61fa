#include <dualforge/catalog.hh>
#include <dualforge/piggyback.hh>

#include <algorithm>
#include <set>
#include <unordered_set>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace dualforge
{
    using std::to_string;

    namespace
    {
        auto ops_only(const FiniteStructure & m) -> FiniteStructure
        {
            FiniteStructure s;
            s.name = m.name;
            s.sig.ops = m.sig.ops;
            s.size = m.size;
            s.tables = m.tables;
            return s;
        }

        auto constants_of(const FiniteStructure & m) -> vector<Element>
        {
            vector<Element> result;
            for (size_t o = 0; o < m.sig.ops.size(); ++o)
                if (m.sig.ops[o].arity == 0)
                    result.push_back(m.tables[o][0]);
            return result;
        }

        /// All maximal subuniverses of p inside `bound`.
        auto maximal_within(const FiniteStructure & p, const ElementSet & bound, const Config & config)
            -> vector<ElementSet>
        {
            vector<Element> base;
            ElementSet base_set(p.size);
            if (! extend_closure(p, base, base_set, constants_of(p), &bound))
                return {};

            // elements whose own closure over the base escapes the bound can never be added
            vector<Element> candidates;
            for (auto t : bound.elements()) {
                if (base_set.contains(t))
                    continue;
                auto grown = base;
                auto grown_set = base_set;
                Element extra[1] = {t};
                if (extend_closure(p, grown, grown_set, extra, &bound))
                    candidates.push_back(t);
            }
            if (config.alternate_order)
                std::reverse(candidates.begin(), candidates.end());

            vector<ElementSet> maximal;
            std::unordered_set<ElementSet, ElementSetHash> seen{base_set};
            vector<std::pair<vector<Element>, ElementSet>> stack{{base, base_set}};
            while (! stack.empty()) {
                auto [members, member_set] = std::move(stack.back());
                stack.pop_back();
                bool extendable = false;
                for (auto t : candidates) {
                    if (member_set.contains(t))
                        continue;
                    auto grown = members;
                    auto grown_set = member_set;
                    Element extra[1] = {t};
                    if (! extend_closure(p, grown, grown_set, extra, &bound))
                        continue;
                    extendable = true;
                    if (seen.insert(grown_set).second) {
                        if (seen.size() > config.max_closed_sets)
                            throw ResourceBoundError("more than " + to_string(config.max_closed_sets)
                                + " closed sets while searching for maximal relations in " + p.name);
                        stack.emplace_back(std::move(grown), std::move(grown_set));
                    }
                }
                if (! extendable)
                    maximal.push_back(std::move(member_set));
            }
            return maximal;
        }

        auto universe_of(const Relation & r, const vector<Map> & omegas) -> size_t
        {
            size_t n = r.max_entry().value_or(0) + 1;
            for (auto & w : omegas)
                for (auto v : w)
                    n = std::max<size_t>(n, v + 1);
            return n;
        }

        auto map_json(const Map & m) -> Json
        {
            Json j = Json::array();
            for (auto v : m)
                j.push_back(v);
            return j;
        }

        auto separation_json(const SeparationResult & s) -> Json
        {
            Json j = Json::object();
            if (s.points)
                j["points"] = {s.points->first, s.points->second};
            if (s.relation) {
                j["relation"] = *s.relation;
                j["tuple"] = map_json(s.tuple);
            }
            return j;
        }

        auto verdict_of(bool b) -> Verdict
        {
            return b ? Verdict::pass : Verdict::fail;
        }

        /// Does `mt` entail every listed relation (relations of powers of `m`)? Witness names the first failure.
        auto entail_all(const FiniteStructure & m, const FiniteStructure & mt, const vector<Relation> & rels,
            const Config & config) -> std::pair<bool, Json>
        {
            Json checked = Json::array();
            for (auto & r : rels) {
                auto e = entails(m, mt, r, config);
                if (! e.entailed) {
                    Json w;
                    w["relation"] = relation_json(r);
                    w["morphism"] = map_json(*e.witness);
                    w["dual_size"] = e.dual_size;
                    return {false, w};
                }
                checked.push_back(relation_json(r));
            }
            Json w;
            w["relations"] = checked;
            return {true, w};
        }

        auto separates_points_condition(const vector<Map> & family, size_t size) -> std::pair<Verdict, Json>
        {
            auto s = separates_points(family, size);
            return {verdict_of(s.separates), s.separates ? Json(nullptr) : separation_json(s)};
        }

        auto unary_images(const vector<Map> & omegas, const FiniteStructure & s) -> vector<Map>
        {
            return compose_family(omegas, maps_of(clo1(s)));
        }
    }

    auto carriers(const FiniteStructure & m_flat, const FiniteStructure & n, const Config & config) -> vector<Map>
    {
        return enumerate_homs(m_flat, n, config);
    }

    auto omega_max(const FiniteStructure & m, const vector<Map> & omegas, const Relation & r, OmegaMaxOptions options,
        const Config & config) -> vector<Relation>
    {
        for (auto & w : omegas)
            if (w.size() != m.size)
                throw InputError("carrier of length " + to_string(w.size()) + " on a structure of size "
                    + to_string(m.size));
        unsigned k = r.arity();
        auto p = power(ops_only(m), k, config);
        // the diagonal is entailed by every alter ego; proper subsets of it are not
        auto delta = diagonal(m.size);
        bool drop = options.drop_diagonal && k == 2;

        std::set<Relation> result;
        vector<size_t> pick(k, 0);
        if (omegas.empty())
            return {};
        while (true) {
            vector<Map> maps;
            for (auto i : pick)
                maps.push_back(omegas[i]);
            auto pre = preimage(maps, m.size, r);
            ElementSet bound(p.size);
            for (size_t i = 0; i < pre.size(); ++i)
                bound.insert(encode_tuple(pre.tuple(i), m.size));

            for (auto & s : maximal_within(p, bound, config)) {
                vector<Element> flat;
                for (auto e : s.elements()) {
                    auto t = decode_tuple(e, k, m.size);
                    flat.insert(flat.end(), t.begin(), t.end());
                }
                auto rel = Relation::from_flat(k, std::move(flat));
                if (rel.empty() || (drop && rel == delta))
                    continue;
                result.insert(std::move(rel));
            }

            bool done = true;
            for (unsigned j = k; j-- > 0;) {
                if (pick[j] + 1 < omegas.size()) {
                    ++pick[j];
                    done = false;
                    break;
                }
                pick[j] = 0;
            }
            if (done)
                break;
        }
        return {result.begin(), result.end()};
    }

    auto entails(const FiniteStructure & m, const FiniteStructure & mt, const Relation & r, const Config & config)
        -> EntailmentResult
    {
        if (m.size != mt.size)
            throw InputError("structure and alter ego have different universes");
        unsigned k = r.arity();
        auto p = power(m, k, config);
        vector<Element> elements;
        for (size_t i = 0; i < r.size(); ++i)
            elements.push_back(encode_tuple(r.tuple(i), m.size));
        if (! is_subuniverse(p, elements))
            throw InputError("relation is not a subuniverse of " + p.name);
        auto rs = induced_substructure(p, elements);

        auto homs = enumerate_homs(rs, m, config);
        auto lifted = lift_pointwise(mt, homs, rs.size, "D(r)");

        // the coordinate projections are homs r -> m; find them in the dual
        vector<Element> projections;
        for (unsigned i = 0; i < k; ++i) {
            Map proj(r.size());
            for (size_t j = 0; j < r.size(); ++j)
                proj[j] = r.tuple(j)[i];
            auto it = std::lower_bound(homs.begin(), homs.end(), proj);
            if (it == homs.end() || *it != proj)
                throw InputError("projection is not a homomorphism; the relation is not a substructure");
            projections.push_back(static_cast<Element>(it - homs.begin()));
        }

        EntailmentResult result;
        result.dual_size = homs.size();
        vector<Element> image(k);
        for (auto & alpha : enumerate_homs(lifted, mt, config)) {
            for (unsigned i = 0; i < k; ++i)
                image[i] = alpha[projections[i]];
            if (! r.contains(image)) {
                result.entailed = false;
                result.witness = alpha;
                break;
            }
        }
        return result;
    }

    auto derive_delta_entailment(const FiniteStructure & m, const FiniteStructure & mt, const vector<Map> & omegas,
        const Relation & sq, const Config & config) -> DeltaEntailment
    {
        auto n = universe_of(sq, omegas);
        if (sq.arity() != 2 || ! is_reflexive(sq, n) || ! is_antisymmetric(sq))
            throw InputError("the order-like relation must be binary, reflexive and antisymmetric");
        OmegaMaxOptions keep{false};
        auto kernel_max = omega_max(m, omegas, diagonal(n), keep, config);
        auto up = omega_max(m, omegas, sq, keep, config);
        auto down = omega_max(m, omegas, sq.converse(), keep, config);

        DeltaEntailment result;
        std::set<Relation> used;
        for (auto & s : kernel_max) {
            optional<Decomposition> found;
            for (auto & t1 : up) {
                for (auto & t2 : down)
                    if (t1.intersect(t2) == s) {
                        found = Decomposition{s, t1, t2};
                        break;
                    }
                if (found)
                    break;
            }
            if (! found) {
                result.holds = false;
                result.missing = s;
                return result;
            }
            used.insert(found->upper);
            used.insert(found->lower);
            result.parts.push_back(*found);
        }
        for (auto & t : used)
            if (! entails(m, mt, t, config).entailed) {
                result.holds = false;
                result.not_entailed = t;
                return result;
            }
        return result;
    }

    auto to_string(Verdict v) -> string
    {
        switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::not_applicable: return "not-applicable";
        case Verdict::vacuous: return "vacuous";
        }
        return "fail";
    }

    auto ConditionReport::verdict() const -> Verdict
    {
        for (auto & c : conditions)
            if (c.verdict == Verdict::fail)
                return Verdict::fail;
        return Verdict::pass;
    }

    auto ConditionReport::add(string id, string description, Verdict verdict, Json witness) -> Condition &
    {
        conditions.push_back({std::move(id), std::move(description), verdict, std::move(witness)});
        return conditions.back();
    }

    auto to_json(const ConditionReport & report) -> Json
    {
        Json j;
        j["theorem"] = report.theorem;
        j["conditions"] = Json::array();
        for (auto & c : report.conditions) {
            Json cj;
            cj["id"] = c.id;
            cj["description"] = c.description;
            cj["verdict"] = to_string(c.verdict);
            if (! c.witness.is_null())
                cj["witness"] = c.witness;
            j["conditions"].push_back(cj);
        }
        j["verdict"] = to_string(report.verdict());
        return j;
    }

    auto relation_json(const Relation & r) -> Json
    {
        Json j = Json::array();
        for (size_t i = 0; i < r.size(); ++i)
            j.push_back(map_json(Map(r.tuple(i).begin(), r.tuple(i).end())));
        return j;
    }

    auto build_alter_ego_D(const FiniteStructure & m, const ReductSpec & reduct, optional<vector<Map>> omegas,
        const Config & config) -> BuiltAlterEgo
    {
        auto [d, chain] = catalog::base_pair("D");
        auto m_flat = apply_reduct(m, reduct);
        if (m_flat.sig != d.sig)
            throw InputError("the reduct of " + m.name + " is not in the signature of bounded lattices");

        BuiltAlterEgo built;
        auto & report = built.report;
        report.theorem = "D-based duality";

        report.add("setting", "the reduct lies in the prevariety generated by D", verdict_of(in_prevariety(m_flat, d, config)));
        auto carrier_set = omegas ? *omegas : carriers(m_flat, d, config);
        for (auto & w : carrier_set)
            make_hom(m_flat, d, w);
        Json carrier_json = Json::array();
        for (auto & w : carrier_set)
            carrier_json.push_back(map_json(w));
        report.add("carriers", "each carrier is a lattice homomorphism into D", Verdict::pass, carrier_json);

        auto rels = omega_max(m, carrier_set, chain.relation("le"), {}, config);
        FiniteStructure ego;
        ego.name = m.name + "~";
        ego.size = m.size;
        ego.labels = m.labels;
        for (size_t i = 0; i < rels.size(); ++i)
            ego = with_relation(std::move(ego), "max" + to_string(i + 1), rels[i]);

        Map id(m.size);
        for (Element e = 0; e < m.size; ++e)
            id[e] = e;
        size_t count = 0;
        for (auto & e : enumerate_homs(m, m, config))
            if (e != id)
                ego = with_operation(std::move(ego), "end" + to_string(++count), 1, e);

        report.add("0", "each carrier is continuous", Verdict::vacuous, "vacuous (discrete topology)");
        auto [sep, sep_w] = separates_points_condition(unary_images(carrier_set, ego), m.size);
        report.add("1", "carriers composed with unary term functions of the alter ego separate points", sep, sep_w);
        Json in_type = Json::array();
        for (auto & r : rels)
            in_type.push_back(relation_json(r));
        report.add("2", "the alter ego entails every maximal relation (each is in its type)", Verdict::pass, in_type);
        auto incompatible = compatibility_witness(m, ego);
        report.add("compatibility", "the alter ego is compatible with the structure", verdict_of(! incompatible),
            incompatible ? Json(*incompatible) : Json(nullptr));

        for (size_t i = 0; i < rels.size(); ++i) {
            auto & r = rels[i];
            bool transitive = true;
            for (size_t a = 0; a < r.size() && transitive; ++a)
                for (size_t b = 0; b < r.size() && transitive; ++b)
                    if (r.tuple(a)[1] == r.tuple(b)[0]) {
                        Element t[2] = {r.tuple(a)[0], r.tuple(b)[1]};
                        transitive = r.contains(t);
                    }
            if (transitive && is_reflexive(r, m.size) && is_antisymmetric(r)) {
                ReductSpec spec;
                spec.target = chain.sig;
                Atom atom;
                atom.rel = "max" + to_string(i + 1);
                atom.args = {Term::variable(0), Term::variable(1)};
                spec.rel_defs.push_back({atom});
                built.ego_reduct = spec;
                break;
            }
        }
        built.ego = std::move(ego);
        return built;
    }

    namespace
    {
        /// An element of m behaving towards the binary operations of the reduct as the constant c behaves in nt.
        auto matching_constant(const FiniteStructure & m_flat, const FiniteStructure & nt, Element c, const Map & omega)
            -> optional<Element>
        {
            for (Element v = 0; v < m_flat.size; ++v) {
                if (omega[v] != c)
                    continue;
                bool ok = true;
                for (size_t o = 0; o < nt.sig.ops.size() && ok; ++o) {
                    if (nt.sig.ops[o].arity != 2)
                        continue;
                    auto f = m_flat.sig.find_op(nt.sig.ops[o].name);
                    if (! f)
                        continue;
                    bool absorbing = true, neutral = true;
                    for (Element x = 0; x < nt.size; ++x) {
                        Element args[2] = {c, x};
                        absorbing = absorbing && nt.apply(o, args) == c;
                        neutral = neutral && nt.apply(o, args) == x;
                    }
                    for (Element x = 0; x < m_flat.size && ok; ++x) {
                        Element args[2] = {v, x};
                        auto r = m_flat.apply(*f, args);
                        ok = (! absorbing || r == v) && (! neutral || r == x);
                    }
                }
                if (ok)
                    return v;
            }
            return std::nullopt;
        }
    }

    auto build_alter_ego_S(const FiniteStructure & m, const ReductSpec & reduct, const FiniteStructure & n,
        const FiniteStructure & nt, const Map & omega, optional<FiniteStructure> candidate,
        optional<ReductSpec> candidate_reduct, const Config & config) -> BuiltAlterEgo
    {
        auto m_flat = apply_reduct(m, reduct);
        make_hom(m_flat, n, omega);
        auto kernel_max = omega_max(m, {omega}, diagonal(n.size), {}, config);

        BuiltAlterEgo built;
        auto & report = built.report;
        report.theorem = "S-based duality";

        FiniteStructure ego;
        if (candidate) {
            ego = *candidate;
        }
        else {
            ego = ops_only(m);
            ego.name = m.name + "~";
            ego.labels = m.labels;
            for (size_t o = 0; o < nt.sig.ops.size(); ++o) {
                if (nt.sig.ops[o].arity != 0 || ego.sig.find_op(nt.sig.ops[o].name))
                    continue;
                auto v = matching_constant(m_flat, nt, nt.tables[o][0], omega);
                if (! v)
                    throw InputError("no element of " + m.name + " can interpret the constant '"
                        + nt.sig.ops[o].name + "'");
                ego = with_operation(std::move(ego), nt.sig.ops[o].name, 0, {*v});
            }
            for (size_t i = 0; i < kernel_max.size(); ++i)
                ego = with_relation(std::move(ego), "ker" + to_string(i + 1), kernel_max[i]);
        }
        built.ego_reduct = candidate_reduct ? *candidate_reduct : ReductSpec::projection(nt.sig);

        auto ego_flat = apply_reduct(ego, *built.ego_reduct);
        report.add("setting", "the reducts lie in the base prevarieties",
            verdict_of(in_prevariety(m_flat, n, config) && in_prevariety(ego_flat, nt, config)));
        report.add("carrier", "the carrier is a morphism of both reducts", verdict_of(is_hom(ego_flat, nt, omega)),
            map_json(omega));
        auto incompatible = compatibility_witness(m, ego);
        report.add("compatibility", "the alter ego is compatible with the structure", verdict_of(! incompatible),
            incompatible ? Json(*incompatible) : Json(nullptr));
        auto [sep, sep_w] = separates_points_condition(unary_images({omega}, ego), m.size);
        report.add("1", "the carrier composed with unary term functions of the alter ego separates points", sep, sep_w);
        auto [ok, w] = entail_all(m, ego, kernel_max, config);
        report.add("2", "the alter ego entails each relation maximal in the kernel of the carrier", verdict_of(ok), w);
        built.ego = std::move(ego);
        return built;
    }

    auto theorem_ids() -> const vector<string> &
    {
        static const vector<string> ids{"pig-simple", "pig-general", "copig-simple", "copig-general", "strong-I",
            "strong-II", "strong-III", "two-for-one"};
        return ids;
    }

    namespace
    {
        struct Context
        {
            const FiniteStructure & m;
            const FiniteStructure & mt;
            const FiniteStructure & n;
            const FiniteStructure & nt;
            const optional<ReductSpec> & reduct;
            const optional<ReductSpec> & reduct_t;
            const vector<Map> & omegas;
            const optional<string> & sq;
            const Config & config;
        };

        auto require_single(const vector<Map> & omegas, const string & theorem) -> const Map &
        {
            if (omegas.size() != 1)
                throw InputError("theorem " + theorem + " needs exactly one carrier, got " + to_string(omegas.size()));
            return omegas.front();
        }

        auto reduct_of(const FiniteStructure & s, const optional<ReductSpec> & spec, const string & what,
            const string & theorem) -> FiniteStructure
        {
            if (! spec)
                throw InputError("theorem " + theorem + " needs a reduct of " + what);
            return apply_reduct(s, *spec);
        }

        auto order_like(const FiniteStructure & s, const string & name) -> bool
        {
            auto i = s.sig.find_rel(name);
            if (! i)
                throw InputError("relation '" + name + "' is not in the type of " + s.name);
            auto & r = s.relations[*i];
            return r.arity() == 2 && is_reflexive(r, s.size) && is_antisymmetric(r);
        }

        /// Conditions (0)-(3) of the duality theorems (single or multiple carrier), from the structure's side.
        /// The co-duality versions call this with the roles of the two sides exchanged.
        auto piggyback_conditions(ConditionReport & report, const Context & c, bool single, bool co) -> void
        {
            const string side = co ? "structure" : "alter ego";
            auto m_flat = reduct_of(c.m, c.reduct, co ? "the alter ego" : "the structure", report.theorem);
            report.add("setting", "the reduct lies in the base prevariety", verdict_of(in_prevariety(m_flat, c.n, c.config)));
            Json carrier_json = Json::array();
            bool carriers_ok = true;
            for (auto & w : c.omegas) {
                carriers_ok = carriers_ok && is_hom(m_flat, c.n, w);
                carrier_json.push_back(map_json(w));
            }
            report.add("carrier", "each carrier is a morphism of the reduct into the base", verdict_of(carriers_ok),
                carrier_json);
            auto incompatible = compatibility_witness(c.m, c.mt);
            report.add("compatibility", "the two structures are compatible", verdict_of(! incompatible),
                incompatible ? Json(*incompatible) : Json(nullptr));
            if (co) {
                auto nc = named_constants(c.m);
                Json w = nullptr;
                if (! nc.named)
                    w = Json{{"constant", nc.unnamed->map.empty() ? 0 : nc.unnamed->map[0]},
                        {"term", nc.unnamed->term.to_string()}};
                report.add("named-constants", "the alter ego has named constants", verdict_of(nc.named), w);
            }

            if (! co)
                report.add("0", "carriers are continuous", Verdict::vacuous, "vacuous (discrete topology)");

            auto family = unary_images(c.omegas, c.mt);
            auto sep = separates_structure(family, m_flat, c.n);
            report.add("1", "carriers composed with unary term functions of the " + side
                    + " separate the structure of the reduct",
                verdict_of(sep.separates), sep.separates ? Json(nullptr) : separation_json(sep));

            if (c.nt.sig.purely_relational()) {
                report.add("2", "the base alter ego is purely relational", Verdict::pass, "(i)");
            }
            else {
                Json w = Json::object();
                bool ok = true;
                if (! c.reduct_t) {
                    ok = false;
                    w["(ii)"] = "no reduct of the " + side + " was supplied";
                }
                else {
                    auto mt_flat = apply_reduct(c.mt, *c.reduct_t);
                    bool in_base = in_prevariety(mt_flat, c.nt, c.config);
                    bool homs = std::all_of(c.omegas.begin(), c.omegas.end(),
                        [&](const Map & w) { return is_hom(mt_flat, c.nt, w); });
                    bool arities = single || std::all_of(c.nt.sig.ops.begin(), c.nt.sig.ops.end(),
                        [](const OpSymbol & o) { return o.arity <= 1; });
                    ok = in_base && homs && arities;
                    w["(ii)"] = {{"reduct in base", in_base}, {"carriers are morphisms", homs},
                        {"base operations at most unary", arities}};
                }
                report.add("2", "the " + side + " has a reduct in the base category carried by the carriers",
                    verdict_of(ok), w);
            }

            if (co)
                report.add("3(i)(a)", "operations of the alter ego are continuous", Verdict::vacuous,
                    "vacuous (discrete topology)");
            vector<Relation> maximal;
            for (auto & r : c.nt.relations)
                for (auto & s : omega_max(c.m, c.omegas, r, {}, c.config))
                    maximal.push_back(s);
            auto [ok3, w3] = entail_all(c.m, c.mt, maximal, c.config);
            report.add(co ? "3(i)(b)" : "3(i)", "the " + side + " entails every maximal relation over each base relation",
                verdict_of(ok3), w3);

            Json alternatives = Json::object();
            bool any = false;
            auto kernel = omega_max(c.m, c.omegas, diagonal(c.n.size), {}, c.config);
            auto [ok_a, w_a] = entail_all(c.m, c.mt, kernel, c.config);
            alternatives["(a)"] = {{"verdict", to_string(verdict_of(ok_a))}, {"witness", w_a}};
            any = ok_a;
            if (single) {
                auto points = separates_points(unary_images(c.omegas, c.m), c.m.size);
                alternatives["(b)"] = {{"verdict", to_string(verdict_of(points.separates))},
                    {"witness", points.separates ? Json(nullptr) : separation_json(points)}};
                any = any || points.separates;
            }
            if (c.sq) {
                bool ok = order_like(c.mt, *c.sq);
                alternatives["(ii)'"] = {{"verdict", to_string(verdict_of(ok))}, {"relation", *c.sq}};
                any = any || ok;
            }
            report.add("3(ii)", "kernel-maximal relations are entailed (or an alternative holds)", verdict_of(any),
                alternatives);
        }

        auto strong_setting(ConditionReport & report, const Context & c, const Map & omega) -> std::pair<FiniteStructure, FiniteStructure>
        {
            auto m_flat = reduct_of(c.m, c.reduct, "the structure", report.theorem);
            auto mt_flat = reduct_of(c.mt, c.reduct_t, "the alter ego", report.theorem);
            report.add("setting", "both reducts lie in their base prevarieties",
                verdict_of(in_prevariety(m_flat, c.n, c.config) && in_prevariety(mt_flat, c.nt, c.config)));
            report.add("carrier", "the carrier is a morphism of both reducts",
                verdict_of(is_hom(m_flat, c.n, omega) && is_hom(mt_flat, c.nt, omega)), map_json(omega));
            auto incompatible = compatibility_witness(c.m, c.mt);
            report.add("compatibility", "the two structures are compatible", verdict_of(! incompatible),
                incompatible ? Json(*incompatible) : Json(nullptr));
            return {m_flat, mt_flat};
        }

        auto strong_conditions(ConditionReport & report, const Context & c, int variant) -> void
        {
            auto & omega = require_single(c.omegas, report.theorem);
            auto [m_flat, mt_flat] = strong_setting(report, c, omega);
            auto from_ego = unary_images({omega}, c.mt);
            auto from_m = unary_images({omega}, c.m);

            auto structure_condition = [&](const string & id, const string & what, const vector<Map> & family,
                                           const FiniteStructure & flat, const FiniteStructure & base) {
                auto sep = separates_structure(family, flat, base);
                report.add(id, what, verdict_of(sep.separates), sep.separates ? Json(nullptr) : separation_json(sep));
            };
            auto points_condition = [&](const string & id, const string & what, const vector<Map> & family) {
                auto [v, w] = separates_points_condition(family, c.m.size);
                report.add(id, what, v, w);
            };
            auto entailment_condition = [&](const string & id, const string & what, const FiniteStructure & from,
                                            const FiniteStructure & by, const vector<Relation> & base_rels) {
                vector<Relation> maximal;
                for (auto & r : base_rels)
                    for (auto & s : omega_max(from, {omega}, r, {}, c.config))
                        maximal.push_back(s);
                auto [ok, w] = entail_all(from, by, maximal, c.config);
                report.add(id, what, verdict_of(ok), w);
            };

            switch (variant) {
            case 1:
                report.add("1", "the base structure is a total algebra", verdict_of(c.n.sig.total_algebra()));
                points_condition("2(i)", "the carrier composed with Clo1 of the alter ego separates points", from_ego);
                structure_condition("2(ii)",
                    "the carrier composed with Clo1 of the structure separates the reduct of the alter ego", from_m,
                    mt_flat, c.nt);
                entailment_condition("2(iii)",
                    "the alter ego entails every maximal relation over each relation of the base alter ego", c.m, c.mt,
                    c.nt.relations);
                break;
            case 2:
                report.add("1", "the base alter ego is a total algebra", verdict_of(c.nt.sig.total_algebra()));
                structure_condition("2(i)",
                    "the carrier composed with Clo1 of the alter ego separates the reduct of the structure", from_ego,
                    m_flat, c.n);
                points_condition("2(ii)", "the carrier composed with Clo1 of the structure separates points", from_m);
                if (c.n.relations.empty())
                    report.add("2(iii)", "the base structure has no relations", Verdict::vacuous);
                else
                    entailment_condition("2(iii)",
                        "the structure entails every maximal relation of the alter ego over each base relation "
                        "(operations continuous: vacuous, discrete topology)",
                        c.mt, c.m, c.n.relations);
                break;
            default:
                report.add("1", "both base structures are total algebras",
                    verdict_of(c.n.sig.total_algebra() && c.nt.sig.total_algebra()));
                points_condition("2(i)", "the carrier composed with Clo1 of the alter ego separates points", from_ego);
                points_condition("2(ii)", "the carrier composed with Clo1 of the structure separates points", from_m);
                break;
            }
        }

        auto strong_variant(const FiniteStructure & n, const FiniteStructure & nt) -> int
        {
            if (n.sig.total_algebra() && nt.sig.total_algebra())
                return 3;
            if (n.sig.total_algebra())
                return 1;
            if (nt.sig.total_algebra())
                return 2;
            throw InputError("neither base structure is a total algebra; no strong variant applies");
        }

        auto swapped(const Context & c) -> Context
        {
            return Context{c.mt, c.m, c.nt, c.n, c.reduct_t, c.reduct, c.omegas, c.sq, c.config};
        }
    }

    auto check_theorem(const PiggybackProblem & problem, const string & theorem, const Config & config)
        -> ConditionReport
    {
        auto & ids = theorem_ids();
        if (std::find(ids.begin(), ids.end(), theorem) == ids.end())
            throw InputError("unknown theorem '" + theorem + "'");
        if (! problem.mt)
            throw InputError("theorem " + theorem + " needs an alter ego");
        if (problem.omegas.empty())
            throw InputError("theorem " + theorem + " needs at least one carrier");

        optional<ReductSpec> reduct = problem.reduct;
        Context c{problem.m, *problem.mt, problem.n, problem.nt, reduct, problem.reduct_t, problem.omegas, problem.sq,
            config};

        ConditionReport report;
        report.theorem = theorem;
        if (theorem == "pig-simple") {
            require_single(problem.omegas, theorem);
            piggyback_conditions(report, c, true, false);
        }
        else if (theorem == "pig-general")
            piggyback_conditions(report, c, problem.omegas.size() == 1, false);
        else if (theorem == "copig-simple") {
            require_single(problem.omegas, theorem);
            piggyback_conditions(report, swapped(c), true, true);
        }
        else if (theorem == "copig-general")
            piggyback_conditions(report, swapped(c), problem.omegas.size() == 1, true);
        else if (theorem == "strong-I")
            strong_conditions(report, c, 1);
        else if (theorem == "strong-II")
            strong_conditions(report, c, 2);
        else if (theorem == "strong-III")
            strong_conditions(report, c, 3);
        else {
            ConditionReport forward, backward;
            forward.theorem = backward.theorem = theorem;
            strong_conditions(forward, c, strong_variant(c.n, c.nt));
            strong_conditions(backward, swapped(c), strong_variant(c.nt, c.n));
            for (auto & cond : forward.conditions) {
                cond.id = "forward:" + cond.id;
                report.conditions.push_back(cond);
            }
            for (auto & cond : backward.conditions) {
                cond.id = "swapped:" + cond.id;
                report.conditions.push_back(cond);
            }
        }
        return report;
    }
}
