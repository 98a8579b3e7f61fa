#ifndef DUALFORGE_HOM_HH
#define DUALFORGE_HOM_HH

#include <dualforge/core.hh>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dualforge
{
    /// Does `map` preserve every operation and relation of the (shared) signature?
    auto is_hom(const FiniteStructure & a, const FiniteStructure & b, const Map & map) -> bool;

    /// Returns `map` unchanged, or throws InputError naming what it fails to preserve.
    auto make_hom(const FiniteStructure & a, const FiniteStructure & b, Map map) -> Map;

    /// All homomorphisms a -> b in lexicographic order of their value arrays.
    auto enumerate_homs(const FiniteStructure & a, const FiniteStructure & b,
        const Config & config = default_config()) -> std::vector<Map>;

    struct SeparationResult
    {
        bool separates = true;
        std::optional<std::pair<Element, Element>> points;
        std::optional<std::string> relation;
        std::vector<Element> tuple;
    };

    auto separates_points(const std::vector<Map> & xs, std::size_t size) -> SeparationResult;

    /// Points, and for each relation every tuple outside it in `a` is sent outside it in `m` by some member.
    auto separates_structure(const std::vector<Map> & xs, const FiniteStructure & a, const FiniteStructure & m)
        -> SeparationResult;

    auto in_prevariety(const FiniteStructure & a, const FiniteStructure & n, const Config & config = default_config())
        -> bool;

    /// Bijective, and the inverse preserves operations and relations.
    auto is_isomorphism(const Map & h, const FiniteStructure & a, const FiniteStructure & b) -> bool;

    auto compose(const Map & outer, const Map & inner) -> Map;
}

#endif
