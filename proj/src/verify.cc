#include <dualforge/clone.hh>
#include <dualforge/hom.hh>
#include <dualforge/verify.hh>

#include <algorithm>
#include <map>
#include <set>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace dualforge
{
    using std::to_string;

    namespace
    {
        auto map_json(const Map & m) -> Json
        {
            Json j = Json::array();
            for (auto v : m)
                j.push_back(v);
            return j;
        }

        auto find_map(const vector<Map> & sorted, const Map & m) -> optional<size_t>
        {
            auto it = std::lower_bound(sorted.begin(), sorted.end(), m);
            if (it == sorted.end() || *it != m)
                return std::nullopt;
            return it - sorted.begin();
        }

        auto evaluation_at(const vector<Map> & carrier, Element a) -> Map
        {
            Map e(carrier.size());
            for (size_t i = 0; i < carrier.size(); ++i)
                e[i] = carrier[i][a];
            return e;
        }

        auto has_constants(const FiniteStructure & s) -> bool
        {
            return s.sig.has_nullary_ops();
        }

        /// Every hom from the member into `target` is the restriction of a hom from the ambient power.
        auto injectivity_witness(const FamilyMember & member, const vector<Map> & ambient_homs,
            const FiniteStructure & target, const Config & config) -> optional<Map>
        {
            std::set<Map> restrictions;
            for (auto & g : ambient_homs) {
                Map r(member.carrier.size());
                for (size_t i = 0; i < member.carrier.size(); ++i)
                    r[i] = g[member.carrier[i]];
                restrictions.insert(std::move(r));
            }
            for (auto & h : enumerate_homs(member.structure, target, config))
                if (! restrictions.count(h))
                    return h;
            return std::nullopt;
        }

        auto entry_for(const string & side, size_t index, const FamilyMember & member, const FiniteStructure & m,
            const FiniteStructure & mt, Direction direction, const optional<vector<Map>> & ambient_homs,
            const Config & config) -> VerifyEntry
        {
            VerifyEntry entry;
            entry.side = side;
            entry.index = index;
            entry.exponent = member.exponent;
            entry.size = member.structure.size;

            auto ev = evaluation_check(member.structure, m, mt, direction, config);
            entry.dual_size = ev.dual_size;
            Json w = Json::object();
            if (! ev.isomorphism) {
                w["evaluation"] = ev.failure;
                w["double_dual_size"] = ev.double_dual_size;
                if (ev.witness)
                    w["morphism"] = map_json(*ev.witness);
            }
            if (ambient_homs) {
                auto & target = direction == Direction::duality ? m : mt;
                if (auto h = injectivity_witness(member, *ambient_homs, target, config))
                    w["non_extendable"] = map_json(*h);
            }
            if (! w.empty()) {
                entry.verdict = Verdict::fail;
                entry.witness = w;
            }
            return entry;
        }

        /// Entries for one side of the adjunction; with `strong`, injectivity of the target over the same family.
        auto side_entries(VerifyReport & report, const string & side, const FiniteStructure & m,
            const FiniteStructure & mt, Direction direction, unsigned depth, bool strong, const Config & config) -> void
        {
            auto & source = direction == Direction::duality ? m : mt;
            auto family = test_family(source, depth, direction == Direction::coduality && ! has_constants(mt), config);
            std::map<unsigned, vector<Map>> ambient;
            if (strong)
                for (unsigned n = 1; n <= depth; ++n)
                    ambient[n] = enumerate_homs(power(source, n, config), source, config);

            for (size_t i = 0; i < family.size(); ++i) {
                // the empty structure has a single hom out, and it always extends
                optional<vector<Map>> homs;
                if (strong && family[i].exponent > 0)
                    homs = ambient[family[i].exponent];
                report.entries.push_back(entry_for(side, i, family[i], m, mt, direction, homs, config));
            }
        }
    }

    auto dual(const FiniteStructure & a, const FiniteStructure & m, const FiniteStructure & mt, const Config & config,
        bool check_membership) -> DualObject
    {
        DualObject d;
        d.carrier = enumerate_homs(a, m, config);
        if (check_membership) {
            auto sep = separates_structure(d.carrier, a, m);
            if (! sep.separates)
                throw InputError("'" + a.name + "' is not in the prevariety generated by '" + m.name + "'");
        }
        d.structure = lift_pointwise(mt, d.carrier, a.size, "D(" + a.name + ")");
        return d;
    }

    auto evaluation_check(const FiniteStructure & a, const FiniteStructure & m, const FiniteStructure & mt,
        Direction direction, const Config & config) -> EvaluationResult
    {
        auto & here = direction == Direction::duality ? m : mt;
        auto & there = direction == Direction::duality ? mt : m;

        EvaluationResult result;
        auto d = dual(a, here, there, config, false);
        result.dual_size = d.carrier.size();

        // e_A preserves everything automatically; it reflects the structure exactly when the homs separate it
        auto sep = separates_structure(d.carrier, a, here);
        result.embedding = sep.separates;
        if (! sep.separates)
            result.failure = sep.points ? "evaluation is not injective" : "evaluation does not reflect a relation";

        auto double_dual = enumerate_homs(d.structure, there, config);
        result.double_dual_size = double_dual.size();
        vector<bool> hit(double_dual.size(), false);
        for (Element e = 0; e < a.size; ++e) {
            auto idx = find_map(double_dual, evaluation_at(d.carrier, e));
            if (! idx) {
                result.embedding = false;
                result.failure = "evaluation at " + to_string(e) + " is not a morphism";
                break;
            }
            hit[*idx] = true;
        }
        result.isomorphism = result.embedding && double_dual.size() == a.size;
        if (result.embedding && ! result.isomorphism) {
            result.failure = "evaluation is not surjective";
            for (size_t i = 0; i < double_dual.size(); ++i)
                if (! hit[i]) {
                    result.witness = double_dual[i];
                    break;
                }
        }
        return result;
    }

    auto phi(const Map & omega, const FiniteStructure & a, const FiniteStructure & m, const ReductSpec & reduct,
        const FiniteStructure & n, const Config & config) -> PhiResult
    {
        PhiResult result;
        result.base_homs = enumerate_homs(apply_reduct(a, reduct, true), n, config);
        for (auto & x : enumerate_homs(a, m, config)) {
            auto y = compose(omega, x);
            auto idx = find_map(result.base_homs, y);
            if (! idx)
                throw InputError("the carrier composed with a hom is not a morphism of the reducts");
            result.images.push_back(std::move(y));
            result.index.push_back(static_cast<Element>(*idx));
        }
        return result;
    }

    auto joint_surjectivity(const vector<Map> & omegas, const FiniteStructure & a, const FiniteStructure & m,
        const ReductSpec & reduct, const FiniteStructure & n, const Config & config) -> SurjectivityResult
    {
        auto base = enumerate_homs(apply_reduct(a, reduct, true), n, config);
        vector<bool> hit(base.size(), false);
        for (auto & w : omegas)
            for (auto i : phi(w, a, m, reduct, n, config).index)
                hit[i] = true;
        SurjectivityResult result;
        for (size_t i = 0; i < base.size(); ++i)
            if (! hit[i]) {
                result.surjective = false;
                result.missing = base[i];
                break;
            }
        return result;
    }

    auto commuting_triangle_check(const vector<Map> & omegas, const FiniteStructure & a, const FiniteStructure & m,
        const FiniteStructure & mt, const ReductSpec & reduct, const FiniteStructure & n, const FiniteStructure & nt,
        const Config & config) -> TriangleResult
    {
        TriangleResult result;
        auto surj = joint_surjectivity(omegas, a, m, reduct, n, config);
        if (! surj.surjective) {
            result.verdict = Verdict::not_applicable;
            result.witness = {{"missing", map_json(*surj.missing)}};
            return result;
        }

        auto d = dual(a, m, mt, config, false);
        auto a_flat = apply_reduct(a, reduct, true);
        auto h = dual(a_flat, n, nt, config, false);
        vector<PhiResult> phis;
        for (auto & w : omegas)
            phis.push_back(phi(w, a, m, reduct, n, config));

        auto morphisms = enumerate_homs(d.structure, mt, config);
        std::map<Map, size_t> seen;
        Json witness = Json::object();
        for (size_t ai = 0; ai < morphisms.size(); ++ai) {
            auto & alpha = morphisms[ai];
            Map d_alpha(h.carrier.size(), 0);
            vector<optional<std::pair<size_t, size_t>>> source(h.carrier.size());
            for (size_t wi = 0; wi < omegas.size(); ++wi)
                for (size_t x = 0; x < d.carrier.size(); ++x) {
                    auto y = phis[wi].index[x];
                    auto value = omegas[wi][alpha[x]];
                    if (! source[y]) {
                        source[y] = {wi, x};
                        d_alpha[y] = value;
                    }
                    else if (d_alpha[y] != value && result.well_defined) {
                        result.well_defined = false;
                        witness["ill_defined"] = {{"morphism", map_json(alpha)},
                            {"first", {{"carrier", source[y]->first}, {"hom", source[y]->second}}},
                            {"second", {{"carrier", wi}, {"hom", x}}}};
                    }
                }
            if (! result.well_defined)
                continue;
            if (result.base_morphism && ! is_hom(h.structure, nt, d_alpha)) {
                result.base_morphism = false;
                witness["not_a_morphism"] = {{"morphism", map_json(alpha)}, {"induced", map_json(d_alpha)}};
            }
            auto [it, fresh] = seen.emplace(d_alpha, ai);
            if (! fresh && result.injective) {
                result.injective = false;
                witness["collision"] = {map_json(morphisms[it->second]), map_json(alpha)};
            }
        }

        if (result.well_defined)
            for (Element e = 0; e < a.size && result.commutes; ++e) {
                auto alpha = evaluation_at(d.carrier, e);
                Map d_alpha(h.carrier.size(), 0);
                for (size_t wi = 0; wi < omegas.size(); ++wi)
                    for (size_t x = 0; x < d.carrier.size(); ++x)
                        d_alpha[phis[wi].index[x]] = omegas[wi][alpha[x]];
                if (d_alpha != evaluation_at(h.carrier, e)) {
                    result.commutes = false;
                    witness["not_commuting_at"] = e;
                }
            }

        bool ok = result.well_defined && result.base_morphism && result.injective && result.commutes;
        result.verdict = ok ? Verdict::pass : Verdict::fail;
        if (! ok)
            result.witness = witness;
        return result;
    }

    auto parse_mode(const string & s) -> Mode
    {
        if (s == "duality")
            return Mode::duality;
        if (s == "coduality")
            return Mode::coduality;
        if (s == "full")
            return Mode::full;
        if (s == "strong")
            return Mode::strong;
        throw InputError("unknown mode '" + s + "' (expected duality, coduality, full or strong)");
    }

    auto to_string(Mode m) -> string
    {
        switch (m) {
        case Mode::duality: return "duality";
        case Mode::coduality: return "coduality";
        case Mode::full: return "full";
        case Mode::strong: return "strong";
        }
        return "duality";
    }

    auto test_family(const FiniteStructure & m, unsigned depth, bool include_empty, const Config & config)
        -> vector<FamilyMember>
    {
        vector<FamilyMember> family;
        if (include_empty && ! has_constants(m)) {
            vector<Element> none;
            auto empty = induced_substructure(m, none);
            empty.name = m.name + "^0";
            family.push_back({0, {}, std::move(empty)});
        }
        for (unsigned n = 1; n <= depth; ++n) {
            auto p = power(m, n, config);
            vector<Element> all(p.size);
            for (Element e = 0; e < p.size; ++e)
                all[e] = e;
            size_t count = 0;
            for (auto & s : all_subuniverses_within(p, all, config)) {
                if (s.empty())
                    continue;
                auto sub = induced_substructure(p, s);
                sub.name = p.name + "[" + to_string(count++) + "]";
                family.push_back({n, s, std::move(sub)});
            }
        }
        return family;
    }

    auto VerifyReport::passed() const -> bool
    {
        for (auto & g : gates)
            if (g.verdict == Verdict::fail)
                return false;
        for (auto & e : entries)
            if (e.verdict == Verdict::fail)
                return false;
        return true;
    }

    auto verify_bruteforce(const FiniteStructure & m, const FiniteStructure & mt, unsigned depth, Mode mode,
        const Config & config) -> VerifyReport
    {
        if (depth == 0)
            throw InputError("depth must be at least 1");
        VerifyReport report;
        report.mode = mode;
        report.depth = depth;

        auto incompatible = compatibility_witness(m, mt);
        report.gates.push_back({"compatibility", "the two structures are compatible",
            incompatible ? Verdict::fail : Verdict::pass, incompatible ? Json(*incompatible) : Json(nullptr)});
        if (incompatible)
            return report;

        bool strong = mode == Mode::strong;
        if (mode != Mode::coduality)
            side_entries(report, "A", m, mt, Direction::duality, depth, strong, config);
        if (mode != Mode::duality) {
            auto nc = named_constants(mt);
            Json w = nullptr;
            if (! nc.named)
                w = Json{{"constant", nc.unnamed->map.empty() ? 0 : nc.unnamed->map[0]},
                    {"term", nc.unnamed->term.to_string()}};
            report.gates.push_back({"named-constants", "the alter ego has named constants",
                nc.named ? Verdict::pass : Verdict::fail, w});
            side_entries(report, "X", m, mt, Direction::coduality, depth, strong, config);
        }
        return report;
    }

    namespace
    {
        auto entry_json(const VerifyEntry & e) -> Json
        {
            Json j;
            j["side"] = e.side;
            j["index"] = e.index;
            j["exponent"] = e.exponent;
            j["size"] = e.size;
            j["dual_size"] = e.dual_size;
            j["verdict"] = to_string(e.verdict);
            if (! e.witness.is_null())
                j["witness"] = e.witness;
            return j;
        }
    }

    auto to_json(const VerifyReport & report) -> Json
    {
        Json j;
        j["mode"] = to_string(report.mode);
        j["depth"] = report.depth;
        j["note"] = "all substructures of powers up to the given depth were checked; passing is evidence, not proof";
        j["gates"] = Json::array();
        for (auto & g : report.gates) {
            Json gj;
            gj["id"] = g.id;
            gj["description"] = g.description;
            gj["verdict"] = to_string(g.verdict);
            if (! g.witness.is_null())
                gj["witness"] = g.witness;
            j["gates"].push_back(gj);
        }
        j["instances"] = report.entries.size();
        j["entries"] = Json::array();
        for (auto & e : report.entries)
            j["entries"].push_back(entry_json(e));
        j["verdict"] = report.passed() ? "pass" : "fail";
        return j;
    }

    auto CoincidenceReport::passed() const -> bool
    {
        return std::all_of(entries.begin(), entries.end(), [](const VerifyEntry & e) { return e.verdict != Verdict::fail; });
    }

    auto coincidence_check(const Map & omega, const FiniteStructure & m, const FiniteStructure & mt,
        const ReductSpec & reduct_a, const ReductSpec & reduct_x, const FiniteStructure & n, const FiniteStructure & nt,
        unsigned depth, const Config & config) -> CoincidenceReport
    {
        CoincidenceReport report;
        auto check = [&](const string & side, size_t index, const FamilyMember & member, const FiniteStructure & here,
                         const FiniteStructure & there, const ReductSpec & own, const ReductSpec & other,
                         const FiniteStructure & base, const FiniteStructure & base_t) {
            VerifyEntry entry;
            entry.side = side;
            entry.index = index;
            entry.exponent = member.exponent;
            entry.size = member.structure.size;

            auto d = dual(member.structure, here, there, config, false);
            auto d_flat = apply_reduct(d.structure, other, true);
            auto h = dual(apply_reduct(member.structure, own, true), base, base_t, config, false);
            entry.dual_size = d.carrier.size();

            Map index_map;
            bool ok = true;
            for (auto & x : d.carrier) {
                auto idx = find_map(h.carrier, compose(omega, x));
                if (! idx) {
                    ok = false;
                    entry.witness = {{"not_a_base_morphism", map_json(x)}};
                    break;
                }
                index_map.push_back(static_cast<Element>(*idx));
            }
            if (ok && ! is_isomorphism(index_map, d_flat, h.structure)) {
                ok = false;
                entry.witness = {{"map", map_json(index_map)}, {"dual_size", d.carrier.size()},
                    {"base_dual_size", h.carrier.size()}};
            }
            if (! ok)
                entry.verdict = Verdict::fail;
            report.entries.push_back(entry);
        };

        auto a_family = test_family(m, depth, false, config);
        for (size_t i = 0; i < a_family.size(); ++i)
            check("A", i, a_family[i], m, mt, reduct_a, reduct_x, n, nt);
        auto x_family = test_family(mt, depth, ! has_constants(mt), config);
        for (size_t i = 0; i < x_family.size(); ++i)
            check("X", i, x_family[i], mt, m, reduct_x, reduct_a, nt, n);
        return report;
    }

    auto to_json(const CoincidenceReport & report) -> Json
    {
        Json j;
        j["entries"] = Json::array();
        for (auto & e : report.entries)
            j["entries"].push_back(entry_json(e));
        j["verdict"] = report.passed() ? "pass" : "fail";
        return j;
    }
}
