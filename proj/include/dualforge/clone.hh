#ifndef DUALFORGE_CLONE_HH
#define DUALFORGE_CLONE_HH

#include <dualforge/core.hh>
#include <dualforge/term.hh>

#include <optional>
#include <vector>

namespace dualforge
{
    struct TermMap
    {
        Map map;
        Term term;
    };

    /// The unary term functions, each with a term of least depth, ordered by map.
    auto clo1(const FiniteStructure & m) -> std::vector<TermMap>;

    auto maps_of(const std::vector<TermMap> & fns) -> std::vector<Map>;

    /// Every omega . u, deduplicated and ordered.
    auto compose_family(const std::vector<Map> & omegas, const std::vector<Map> & fns) -> std::vector<Map>;

    struct NamedConstantsReport
    {
        bool named = true;
        std::vector<Element> constant_values;
        std::vector<Element> nullary_values;
        std::optional<TermMap> unnamed;
    };

    /// Every constant unary term function must take a value reached by a nullary term.
    auto named_constants(const FiniteStructure & mt) -> NamedConstantsReport;
}

#endif
