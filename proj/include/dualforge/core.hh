#ifndef DUALFORGE_CORE_HH
#define DUALFORGE_CORE_HH

#include <dualforge/config.hh>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dualforge
{
    using Element = std::uint32_t;

    /// A total map between universes, stored as its value array.
    using Map = std::vector<Element>;

    struct OpSymbol
    {
        std::string name;
        unsigned arity = 0;

        auto operator==(const OpSymbol &) const -> bool = default;
    };

    struct RelSymbol
    {
        std::string name;
        unsigned arity = 1;

        auto operator==(const RelSymbol &) const -> bool = default;
    };

    struct Signature
    {
        std::vector<OpSymbol> ops;
        std::vector<RelSymbol> rels;

        auto operator==(const Signature &) const -> bool = default;

        auto find_op(std::string_view name) const -> std::optional<std::size_t>;
        auto find_rel(std::string_view name) const -> std::optional<std::size_t>;

        auto has_nullary_ops() const -> bool;
        auto purely_relational() const -> bool { return ops.empty(); }
        auto total_algebra() const -> bool { return rels.empty(); }

        /// Names unique across ops and rels, relation arities at least one.
        auto validate() const -> void;
    };

    /// A set of k-tuples, kept lexicographically sorted and duplicate free.
    class Relation
    {
    private:
        unsigned _arity = 1;
        std::vector<Element> _data;

    public:
        Relation() = default;
        explicit Relation(unsigned arity);
        Relation(unsigned arity, const std::vector<std::vector<Element>> & tuples);

        /// Takes tuples laid out back to back; sorts and deduplicates.
        static auto from_flat(unsigned arity, std::vector<Element> flat) -> Relation;

        auto arity() const -> unsigned { return _arity; }
        auto size() const -> std::size_t { return _arity == 0 ? 0 : _data.size() / _arity; }
        auto empty() const -> bool { return _data.empty(); }
        auto tuple(std::size_t i) const -> std::span<const Element>
        {
            return {_data.data() + i * _arity, _arity};
        }
        auto flat() const -> const std::vector<Element> & { return _data; }
        auto tuples() const -> std::vector<std::vector<Element>>;

        auto contains(std::span<const Element> t) const -> bool;
        auto subset_of(const Relation & other) const -> bool;
        auto intersect(const Relation & other) const -> Relation;
        auto converse() const -> Relation;
        auto max_entry() const -> std::optional<Element>;

        auto operator==(const Relation &) const -> bool = default;
        auto operator<(const Relation & other) const -> bool;
    };

    auto diagonal(std::size_t size) -> Relation;
    auto full_relation(std::size_t size, unsigned arity) -> Relation;
    auto is_reflexive(const Relation & r, std::size_t size) -> bool;
    auto is_antisymmetric(const Relation & r) -> bool;

    /// Universe {0..size-1}; op tables flat in mixed-radix big-endian argument order.
    struct FiniteStructure
    {
        std::string name;
        Signature sig;
        std::size_t size = 0;
        std::vector<std::vector<Element>> tables;
        std::vector<Relation> relations;
        std::vector<std::string> labels;

        auto apply(std::size_t op, std::span<const Element> args) const -> Element;
        auto table(std::string_view op) const -> const std::vector<Element> &;
        auto relation(std::string_view rel) const -> const Relation &;

        /// Checks table shapes and ranges. Base structures additionally need non-empty relations and size >= 1;
        /// derived substructures (which may be empty, or have empty restricted relations) skip that part.
        auto validate(bool base_structure = true) const -> void;
    };

    auto table_index(std::span<const Element> args, std::size_t n) -> std::size_t;
    auto checked_pow(std::size_t base, unsigned exponent, std::uint64_t bound) -> std::optional<std::uint64_t>;

    /// Mixed-radix big-endian digits of a power element.
    auto decode_tuple(Element e, unsigned n, std::size_t base) -> std::vector<Element>;
    auto encode_tuple(std::span<const Element> t, std::size_t base) -> Element;

    /// Dynamic bitset over a universe, used for subuniverse searches.
    class ElementSet
    {
    private:
        std::size_t _universe = 0;
        std::vector<std::uint64_t> _words;

    public:
        ElementSet() = default;
        explicit ElementSet(std::size_t universe);

        auto universe() const -> std::size_t { return _universe; }
        auto contains(Element e) const -> bool { return (_words[e >> 6] >> (e & 63)) & 1u; }
        auto insert(Element e) -> void { _words[e >> 6] |= std::uint64_t{1} << (e & 63); }
        auto erase(Element e) -> void { _words[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }
        auto count() const -> std::size_t;
        auto subset_of(const ElementSet & other) const -> bool;
        auto elements() const -> std::vector<Element>;
        auto hash() const -> std::size_t;

        auto operator==(const ElementSet &) const -> bool = default;
    };

    struct ElementSetHash
    {
        auto operator()(const ElementSet & s) const -> std::size_t { return s.hash(); }
    };

    auto power(const FiniteStructure & m, unsigned n, const Config & config = default_config()) -> FiniteStructure;

    /// Least subuniverse containing the seed and every nullary value. Sorted.
    auto generate_substructure(const FiniteStructure & m, std::span<const Element> seed) -> std::vector<Element>;

    /// Incremental closure: `closed` must already be a subuniverse (as list and as set); `extra` is added and the
    /// result closed. Returns false, leaving the outputs partially grown, as soon as an element outside `bound` appears.
    auto extend_closure(const FiniteStructure & m, std::vector<Element> & members, ElementSet & member_set,
        std::span<const Element> extra, const ElementSet * bound) -> bool;

    auto is_subuniverse(const FiniteStructure & m, std::span<const Element> set) -> bool;

    /// Every subuniverse inside `bound`, in lexicographic order of the sorted element lists.
    auto all_subuniverses_within(const FiniteStructure & m, std::span<const Element> bound,
        const Config & config = default_config()) -> std::vector<std::vector<Element>>;

    /// The substructure on a closed subset, re-indexed in the subset's sorted order.
    auto induced_substructure(const FiniteStructure & m, std::span<const Element> subset) -> FiniteStructure;

    /// Preimage of r under a tuple of maps sharing a domain of size domain_size.
    auto preimage(std::span<const Map> maps, std::size_t domain_size, const Relation & r) -> Relation;

    /// Both directions of compatibility at the finite level: relations of each side are closed under the
    /// operations of the other, and operations of the two sides commute.
    auto compatibility_witness(const FiniteStructure & m, const FiniteStructure & mt) -> std::optional<std::string>;
    auto compatible(const FiniteStructure & m, const FiniteStructure & mt) -> bool;

    /// Adds relations or operations to a structure (used when assembling alter egos).
    auto with_relation(FiniteStructure m, std::string name, Relation r) -> FiniteStructure;
    auto with_operation(FiniteStructure m, std::string name, unsigned arity, std::vector<Element> table)
        -> FiniteStructure;

    /// Pointwise-lifted structure on a set of maps X -> target (all of length `domain_size`), indexed in the given
    /// order. Throws InputError when the maps are not closed under the lifted operations.
    auto lift_pointwise(const FiniteStructure & target, const std::vector<Map> & maps, std::size_t domain_size,
        std::string name) -> FiniteStructure;
}

#endif
