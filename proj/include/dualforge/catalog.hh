#ifndef DUALFORGE_CATALOG_HH
#define DUALFORGE_CATALOG_HH

#include <dualforge/core.hh>
#include <dualforge/term.hh>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dualforge::catalog
{
    /// A worked example: the structure, the reduct onto its base, a carrier set, and (when known) its alter ego.
    struct Entry
    {
        std::string name;
        std::string description;
        FiniteStructure m;
        std::optional<std::string> base;
        std::optional<ReductSpec> reduct;
        std::vector<Map> omegas;
        std::optional<FiniteStructure> ego;
        std::optional<ReductSpec> ego_reduct;
    };

    auto names() -> const std::vector<std::string> &;

    /// Throws InputError for unknown names.
    auto get(const std::string & name) -> Entry;

    /// A named structure; "NAME.ego" selects a bundle's alter ego.
    auto structure(const std::string & name) -> FiniteStructure;

    /// (N, N~) for "D" (bounded lattices over the two-element chain), "S" and "S01" (semilattices).
    auto base_pair(const std::string & base) -> std::pair<FiniteStructure, FiniteStructure>;

    /// The base whose N has exactly this signature, if any.
    auto base_for_signature(const Signature & sig) -> std::optional<std::string>;

    /// {0,1}^p with pointwise lattice operations and neg(a)(i) = 1 - a(i+1 mod p).
    auto ockham(unsigned p) -> FiniteStructure;
    auto ockham_shift(unsigned p) -> Map;
    auto alternating_order(unsigned p) -> Relation;
    auto first_coordinate(unsigned p) -> Map;

    auto lattice_reduct() -> ReductSpec;
}

#endif
