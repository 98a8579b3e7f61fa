#ifndef DUALFORGE_TERM_HH
#define DUALFORGE_TERM_HH

#include <dualforge/core.hh>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dualforge
{
    /// Operation terms over variables x0, x1, ...
    struct Term
    {
        int var = -1;
        std::string op;
        std::vector<Term> args;

        static auto variable(unsigned index) -> Term;
        static auto apply(std::string op, std::vector<Term> args = {}) -> Term;

        auto is_variable() const -> bool { return var >= 0; }
        auto depth() const -> unsigned;
        auto max_variable() const -> int;

        /// S-expression rendering, e.g. "(meet x0 (neg x0))".
        auto to_string() const -> std::string;

        auto operator==(const Term &) const -> bool = default;
    };

    /// Raises InputError unless every application names an op of `sig` with the right arity
    /// and every variable index is below `variables`.
    auto check_term(const Term & t, const Signature & sig, unsigned variables) -> void;

    /// A term resolved against one signature for repeated evaluation.
    class CompiledTerm
    {
    private:
        struct Node
        {
            int var;
            std::size_t op;
            std::vector<std::size_t> children;
        };
        std::vector<Node> _nodes;

        auto compile(const Term & t, const Signature & sig) -> std::size_t;
        auto eval(std::size_t node, const FiniteStructure & m, std::span<const Element> vars) const -> Element;

    public:
        CompiledTerm(const Term & t, const Signature & sig);

        auto operator()(const FiniteStructure & m, std::span<const Element> vars) const -> Element;
    };

    auto evaluate(const Term & t, const FiniteStructure & m, std::span<const Element> vars) -> Element;

    /// Either a source relation applied to terms, or an equation between two terms.
    struct Atom
    {
        std::optional<std::string> rel;
        std::vector<Term> args;

        auto is_equation() const -> bool { return ! rel.has_value(); }
    };

    /// Syntactic definition of a structural reduct: a term per target operation and a conjunction of atoms per
    /// target relation, over variables x0..x{k-1}.
    struct ReductSpec
    {
        Signature target;
        std::vector<Term> op_defs;
        std::vector<std::vector<Atom>> rel_defs;

        /// Keeps each symbol of `target` under the same name.
        static auto projection(const Signature & target) -> ReductSpec;

        auto validate(const Signature & source) const -> void;
    };

    /// Empty defined relations are an error unless `allow_empty` (substructures and duals may legitimately have them).
    auto apply_reduct(const FiniteStructure & a, const ReductSpec & spec, bool allow_empty = false) -> FiniteStructure;
}

#endif
