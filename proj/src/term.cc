#include <dualforge/term.hh>

#include <algorithm>

using std::size_t;
using std::span;
using std::string;
using std::to_string;
using std::vector;

namespace dualforge
{
    auto Term::variable(unsigned index) -> Term
    {
        Term t;
        t.var = static_cast<int>(index);
        return t;
    }

    auto Term::apply(string op, vector<Term> args) -> Term
    {
        Term t;
        t.op = std::move(op);
        t.args = std::move(args);
        return t;
    }

    auto Term::depth() const -> unsigned
    {
        unsigned d = 0;
        for (auto & a : args)
            d = std::max(d, a.depth() + 1);
        return is_variable() ? 0 : std::max(d, 1u);
    }

    auto Term::max_variable() const -> int
    {
        int m = var;
        for (auto & a : args)
            m = std::max(m, a.max_variable());
        return m;
    }

    auto Term::to_string() const -> string
    {
        if (is_variable())
            return "x" + std::to_string(var);
        if (args.empty())
            return op;
        string s = "(" + op;
        for (auto & a : args)
            s += " " + a.to_string();
        return s + ")";
    }

    auto check_term(const Term & t, const Signature & sig, unsigned variables) -> void
    {
        if (t.is_variable()) {
            if (static_cast<unsigned>(t.var) >= variables)
                throw InputError("term uses variable x" + to_string(t.var) + " but only " + to_string(variables)
                    + " are available");
            return;
        }
        auto o = sig.find_op(t.op);
        if (! o)
            throw InputError("term uses unknown operation '" + t.op + "'");
        if (sig.ops[*o].arity != t.args.size())
            throw InputError("operation '" + t.op + "' applied to " + to_string(t.args.size()) + " arguments");
        for (auto & a : t.args)
            check_term(a, sig, variables);
    }

    CompiledTerm::CompiledTerm(const Term & t, const Signature & sig)
    {
        compile(t, sig);
    }

    auto CompiledTerm::compile(const Term & t, const Signature & sig) -> size_t
    {
        Node node{t.var, 0, {}};
        if (! t.is_variable()) {
            auto o = sig.find_op(t.op);
            if (! o || sig.ops[*o].arity != t.args.size())
                throw InputError("term does not fit the signature at '" + t.op + "'");
            node.op = *o;
            for (auto & a : t.args)
                node.children.push_back(compile(a, sig));
        }
        _nodes.push_back(std::move(node));
        return _nodes.size() - 1;
    }

    auto CompiledTerm::eval(size_t n, const FiniteStructure & m, span<const Element> vars) const -> Element
    {
        auto & node = _nodes[n];
        if (node.var >= 0)
            return vars[node.var];
        Element buf[8];
        for (size_t i = 0; i < node.children.size(); ++i)
            buf[i] = eval(node.children[i], m, vars);
        return m.apply(node.op, span<const Element>(buf, node.children.size()));
    }

    auto CompiledTerm::operator()(const FiniteStructure & m, span<const Element> vars) const -> Element
    {
        return eval(_nodes.size() - 1, m, vars);
    }

    auto evaluate(const Term & t, const FiniteStructure & m, span<const Element> vars) -> Element
    {
        return CompiledTerm(t, m.sig)(m, vars);
    }

    auto ReductSpec::projection(const Signature & target) -> ReductSpec
    {
        ReductSpec spec;
        spec.target = target;
        for (auto & o : target.ops) {
            vector<Term> args;
            for (unsigned i = 0; i < o.arity; ++i)
                args.push_back(Term::variable(i));
            spec.op_defs.push_back(Term::apply(o.name, std::move(args)));
        }
        for (auto & r : target.rels) {
            Atom atom;
            atom.rel = r.name;
            for (unsigned i = 0; i < r.arity; ++i)
                atom.args.push_back(Term::variable(i));
            spec.rel_defs.push_back({atom});
        }
        return spec;
    }

    auto ReductSpec::validate(const Signature & source) const -> void
    {
        target.validate();
        if (op_defs.size() != target.ops.size() || rel_defs.size() != target.rels.size())
            throw InputError("reduct definitions do not match the target signature");
        for (size_t i = 0; i < op_defs.size(); ++i)
            check_term(op_defs[i], source, target.ops[i].arity);
        for (size_t i = 0; i < rel_defs.size(); ++i) {
            if (rel_defs[i].empty())
                throw InputError("relation '" + target.rels[i].name + "' has an empty defining formula");
            for (auto & atom : rel_defs[i]) {
                if (atom.is_equation()) {
                    if (atom.args.size() != 2)
                        throw InputError("equation atoms take exactly two terms");
                }
                else {
                    auto r = source.find_rel(*atom.rel);
                    if (! r)
                        throw InputError("reduct uses unknown relation '" + *atom.rel + "'");
                    if (source.rels[*r].arity != atom.args.size())
                        throw InputError("relation '" + *atom.rel + "' applied to the wrong number of terms");
                }
                for (auto & t : atom.args)
                    check_term(t, source, target.rels[i].arity);
            }
        }
    }

    auto apply_reduct(const FiniteStructure & a, const ReductSpec & spec, bool allow_empty) -> FiniteStructure
    {
        spec.validate(a.sig);

        FiniteStructure r;
        r.name = a.name + "|reduct";
        r.sig = spec.target;
        r.size = a.size;
        r.labels = a.labels;

        for (size_t i = 0; i < spec.op_defs.size(); ++i) {
            unsigned k = spec.target.ops[i].arity;
            CompiledTerm term(spec.op_defs[i], a.sig);
            auto entries = checked_pow(a.size, k, 100'000'000);
            if (! entries)
                throw ResourceBoundError("reduct operation table too large");
            vector<Element> table(*entries);
            for (size_t idx = 0; idx < *entries; ++idx)
                table[idx] = term(a, decode_tuple(static_cast<Element>(idx), k, a.size));
            r.tables.push_back(std::move(table));
        }

        for (size_t i = 0; i < spec.rel_defs.size(); ++i) {
            unsigned k = spec.target.rels[i].arity;
            struct CompiledAtom
            {
                const Relation * rel;
                vector<CompiledTerm> terms;
            };
            vector<CompiledAtom> atoms;
            for (auto & atom : spec.rel_defs[i]) {
                CompiledAtom c{atom.is_equation() ? nullptr : &a.relation(*atom.rel), {}};
                for (auto & t : atom.args)
                    c.terms.emplace_back(t, a.sig);
                atoms.push_back(std::move(c));
            }
            auto count = checked_pow(a.size, k, 50'000'000);
            if (! count)
                throw ResourceBoundError("reduct relation too large");
            vector<Element> flat, values;
            for (size_t idx = 0; idx < *count; ++idx) {
                auto vars = decode_tuple(static_cast<Element>(idx), k, a.size);
                bool holds = true;
                for (auto & atom : atoms) {
                    values.clear();
                    for (auto & t : atom.terms)
                        values.push_back(t(a, vars));
                    holds = atom.rel ? atom.rel->contains(values) : values[0] == values[1];
                    if (! holds)
                        break;
                }
                if (holds)
                    flat.insert(flat.end(), vars.begin(), vars.end());
            }
            auto rel = Relation::from_flat(k, std::move(flat));
            if (rel.empty() && ! allow_empty)
                throw InputError("reduct relation '" + spec.target.rels[i].name + "' is empty on " + a.name);
            r.relations.push_back(std::move(rel));
        }
        return r;
    }
}
