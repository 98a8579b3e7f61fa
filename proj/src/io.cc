#include <dualforge/catalog.hh>
#include <dualforge/io.hh>

#include <fstream>

using std::size_t;
using std::string;
using std::vector;

namespace dualforge::io
{
    using std::to_string;

    namespace
    {
        auto require(const Json & j, const char * key, const string & what) -> const Json &
        {
            if (! j.is_object() || ! j.contains(key))
                throw InputError(what + " is missing \"" + key + "\"");
            return j.at(key);
        }

        auto element(const Json & j, const string & what) -> Element
        {
            if (! j.is_number_unsigned() && ! (j.is_number_integer() && j.get<long long>() >= 0))
                throw InputError(what + " must be a non-negative integer");
            return j.get<Element>();
        }

        auto arity_of(const Json & j, const string & what) -> unsigned
        {
            if (j.is_object())
                return element(require(j, "arity", what), what + " arity");
            return element(j, what + " arity");
        }

        auto tuples_of(const Json & j, unsigned arity, const string & what) -> Relation
        {
            if (! j.is_array())
                throw InputError(what + " tuples must be a list");
            vector<Element> flat;
            for (auto & t : j) {
                if (! t.is_array() || t.size() != arity)
                    throw InputError(what + " has a tuple of the wrong length");
                for (auto & v : t)
                    flat.push_back(element(v, what + " entry"));
            }
            return Relation::from_flat(arity, std::move(flat));
        }

        auto uri_parts(const string & source) -> std::pair<string, string>
        {
            auto rest = source.substr(8);
            for (string suffix : {".ego-reduct", ".reduct", ".omega", ".ego"})
                if (rest.size() > suffix.size() && rest.ends_with(suffix))
                    return {rest.substr(0, rest.size() - suffix.size()), suffix.substr(1)};
            return {rest, ""};
        }
    }

    auto structure_from_json(const Json & j) -> FiniteStructure
    {
        if (! j.is_object())
            throw InputError("a structure must be a JSON object");
        if (j.value("partial", false))
            throw PartialOperationError("structure is partial; only total structures are handled");
        FiniteStructure s;
        s.name = j.value("name", string("A"));
        s.size = element(require(j, "size", "structure"), "size");
        if (j.contains("elements"))
            for (auto & l : j.at("elements"))
                s.labels.push_back(l.is_string() ? l.get<string>() : l.dump());

        if (j.contains("operations"))
            for (auto & [name, op] : j.at("operations").items()) {
                auto what = "operation '" + name + "'";
                if (op.value("partial", false))
                    throw PartialOperationError(what + " is partial; only total structures are handled");
                unsigned arity = arity_of(op, what);
                vector<Element> table;
                for (auto & v : require(op, "table", what)) {
                    if (v.is_null())
                        throw PartialOperationError(what + " is undefined somewhere; only total structures are handled");
                    table.push_back(element(v, what + " entry"));
                }
                s.sig.ops.push_back({name, arity});
                s.tables.push_back(std::move(table));
            }

        if (j.contains("relations"))
            for (auto & [name, rel] : j.at("relations").items()) {
                auto what = "relation '" + name + "'";
                unsigned arity = arity_of(rel, what);
                s.sig.rels.push_back({name, arity});
                s.relations.push_back(tuples_of(require(rel, "tuples", what), arity, what));
            }

        s.validate();
        return s;
    }

    auto structure_to_json(const FiniteStructure & s) -> Json
    {
        Json j;
        j["name"] = s.name;
        j["size"] = s.size;
        if (! s.labels.empty())
            j["elements"] = s.labels;
        j["operations"] = Json::object();
        for (size_t o = 0; o < s.sig.ops.size(); ++o)
            j["operations"][s.sig.ops[o].name] = {{"arity", s.sig.ops[o].arity}, {"table", s.tables[o]}};
        j["relations"] = Json::object();
        for (size_t r = 0; r < s.sig.rels.size(); ++r)
            j["relations"][s.sig.rels[r].name] = {{"arity", s.sig.rels[r].arity}, {"tuples", relation_json(s.relations[r])}};
        return j;
    }

    auto term_from_json(const Json & j) -> Term
    {
        if (j.is_string()) {
            auto s = j.get<string>();
            if (s.size() > 1 && s[0] == 'x' && s.find_first_not_of("0123456789", 1) == string::npos)
                return Term::variable(static_cast<unsigned>(std::stoul(s.substr(1))));
            return Term::apply(s);
        }
        if (! j.is_array() || j.empty() || ! j[0].is_string())
            throw InputError("a term must be a variable name or a list [\"op\", args...]");
        vector<Term> args;
        for (size_t i = 1; i < j.size(); ++i)
            args.push_back(term_from_json(j[i]));
        return Term::apply(j[0].get<string>(), std::move(args));
    }

    auto term_to_json(const Term & t) -> Json
    {
        if (t.is_variable())
            return "x" + to_string(t.var);
        Json j = Json::array({t.op});
        for (auto & a : t.args)
            j.push_back(term_to_json(a));
        return j;
    }

    auto signature_from_json(const Json & j) -> Signature
    {
        Signature sig;
        if (j.contains("operations"))
            for (auto & [name, a] : j.at("operations").items())
                sig.ops.push_back({name, arity_of(a, "operation '" + name + "'")});
        if (j.contains("relations"))
            for (auto & [name, a] : j.at("relations").items())
                sig.rels.push_back({name, arity_of(a, "relation '" + name + "'")});
        sig.validate();
        return sig;
    }

    auto signature_to_json(const Signature & sig) -> Json
    {
        Json j;
        j["operations"] = Json::object();
        for (auto & o : sig.ops)
            j["operations"][o.name] = o.arity;
        j["relations"] = Json::object();
        for (auto & r : sig.rels)
            j["relations"][r.name] = r.arity;
        return j;
    }

    auto reduct_from_json(const Json & j) -> ReductSpec
    {
        ReductSpec spec;
        spec.target = signature_from_json(require(j, "target", "reduct"));
        for (auto & o : spec.target.ops) {
            if (j.contains("ops") && j.at("ops").contains(o.name))
                spec.op_defs.push_back(term_from_json(j.at("ops").at(o.name)));
            else {
                // same-named operation, applied to the variables in order
                vector<Term> args;
                for (unsigned i = 0; i < o.arity; ++i)
                    args.push_back(Term::variable(i));
                spec.op_defs.push_back(Term::apply(o.name, std::move(args)));
            }
        }
        for (auto & r : spec.target.rels) {
            vector<Atom> atoms;
            if (j.contains("rels") && j.at("rels").contains(r.name)) {
                for (auto & a : j.at("rels").at(r.name)) {
                    Atom atom;
                    if (a.contains("eq")) {
                        auto & eq = a.at("eq");
                        if (! eq.is_array() || eq.size() != 2)
                            throw InputError("an equation atom needs exactly two terms");
                        atom.args = {term_from_json(eq[0]), term_from_json(eq[1])};
                    }
                    else {
                        atom.rel = require(a, "rel", "atom").get<string>();
                        for (auto & t : require(a, "args", "atom"))
                            atom.args.push_back(term_from_json(t));
                    }
                    atoms.push_back(std::move(atom));
                }
            }
            else {
                Atom atom;
                atom.rel = r.name;
                for (unsigned i = 0; i < r.arity; ++i)
                    atom.args.push_back(Term::variable(i));
                atoms.push_back(std::move(atom));
            }
            if (atoms.empty())
                throw InputError("relation '" + r.name + "' of the reduct has an empty definition");
            spec.rel_defs.push_back(std::move(atoms));
        }
        return spec;
    }

    auto reduct_to_json(const ReductSpec & spec) -> Json
    {
        Json j;
        j["target"] = signature_to_json(spec.target);
        j["ops"] = Json::object();
        for (size_t o = 0; o < spec.target.ops.size(); ++o)
            j["ops"][spec.target.ops[o].name] = term_to_json(spec.op_defs[o]);
        j["rels"] = Json::object();
        for (size_t r = 0; r < spec.target.rels.size(); ++r) {
            Json atoms = Json::array();
            for (auto & a : spec.rel_defs[r]) {
                Json args = Json::array();
                for (auto & t : a.args)
                    args.push_back(term_to_json(t));
                if (a.is_equation())
                    atoms.push_back({{"eq", args}});
                else
                    atoms.push_back({{"rel", *a.rel}, {"args", args}});
            }
            j["rels"][spec.target.rels[r].name] = atoms;
        }
        return j;
    }

    auto relation_from_json(const Json & j) -> Relation
    {
        if (j.is_array()) {
            if (j.empty())
                throw InputError("a relation given as a bare list needs at least one tuple");
            return tuples_of(j, static_cast<unsigned>(j[0].size()), "relation");
        }
        unsigned arity = arity_of(require(j, "arity", "relation"), "relation");
        return tuples_of(require(j, "tuples", "relation"), arity, "relation");
    }

    auto maps_from_json(const Json & j) -> vector<Map>
    {
        if (! j.is_array())
            throw InputError("expected a map or a list of maps");
        if (! j.empty() && ! j[0].is_array())
            return {j.get<Map>()};
        vector<Map> maps;
        for (auto & m : j) {
            Map map;
            for (auto & v : m)
                map.push_back(element(v, "map entry"));
            maps.push_back(std::move(map));
        }
        return maps;
    }

    auto maps_to_json(const vector<Map> & maps) -> Json
    {
        Json j = Json::array();
        for (auto & m : maps)
            j.push_back(m);
        return j;
    }

    auto read_json(const string & path) -> Json
    {
        std::ifstream in(path);
        if (! in)
            throw InputError("cannot open '" + path + "'");
        try {
            return Json::parse(in);
        }
        catch (const nlohmann::json::exception & e) {
            throw InputError("'" + path + "' is not valid JSON: " + e.what());
        }
    }

    auto is_catalog_uri(const string & source) -> bool
    {
        return source.starts_with("catalog:");
    }

    auto load_structure(const string & source) -> FiniteStructure
    {
        if (! is_catalog_uri(source))
            return structure_from_json(read_json(source));
        auto [name, part] = uri_parts(source);
        if (part.empty())
            return catalog::get(name).m;
        if (part == "ego") {
            auto e = catalog::get(name);
            if (! e.ego)
                throw InputError("catalog entry '" + name + "' has no alter ego");
            return *e.ego;
        }
        throw InputError("'" + source + "' does not name a structure");
    }

    auto load_reduct(const string & source) -> ReductSpec
    {
        if (! is_catalog_uri(source))
            return reduct_from_json(read_json(source));
        auto [name, part] = uri_parts(source);
        auto e = catalog::get(name);
        if (part == "reduct" && e.reduct)
            return *e.reduct;
        if (part == "ego-reduct" && e.ego_reduct)
            return *e.ego_reduct;
        throw InputError("'" + source + "' does not name a reduct");
    }

    auto load_relation(const string & source) -> Relation
    {
        return relation_from_json(read_json(source));
    }

    auto load_maps(const string & source) -> vector<Map>
    {
        if (! is_catalog_uri(source))
            return maps_from_json(read_json(source));
        auto [name, part] = uri_parts(source);
        if (part != "omega")
            throw InputError("'" + source + "' does not name a carrier list");
        return catalog::get(name).omegas;
    }
}
