#ifndef DUALFORGE_IO_HH
#define DUALFORGE_IO_HH

#include <dualforge/core.hh>
#include <dualforge/piggyback.hh>
#include <dualforge/term.hh>

#include <string>
#include <vector>

namespace dualforge::io
{
    /// Structure files. Null table entries or "partial": true raise PartialOperationError.
    auto structure_from_json(const Json & j) -> FiniteStructure;
    auto structure_to_json(const FiniteStructure & s) -> Json;

    /// "x3" is a variable, any other string a nullary application, ["op", arg, ...] an application.
    auto term_from_json(const Json & j) -> Term;
    auto term_to_json(const Term & t) -> Json;

    auto signature_from_json(const Json & j) -> Signature;
    auto signature_to_json(const Signature & sig) -> Json;

    auto reduct_from_json(const Json & j) -> ReductSpec;
    auto reduct_to_json(const ReductSpec & spec) -> Json;

    /// {"arity", "tuples"} or a bare list of tuples.
    auto relation_from_json(const Json & j) -> Relation;

    /// A list of maps, or a single map.
    auto maps_from_json(const Json & j) -> std::vector<Map>;
    auto maps_to_json(const std::vector<Map> & maps) -> Json;

    auto read_json(const std::string & path) -> Json;

    /// Paths, or catalog URIs: "catalog:NAME" for the structure, with suffixes ".ego", ".reduct", ".ego-reduct" and
    /// ".omega" selecting the other parts of a bundle.
    auto is_catalog_uri(const std::string & source) -> bool;
    auto load_structure(const std::string & source) -> FiniteStructure;
    auto load_reduct(const std::string & source) -> ReductSpec;
    auto load_relation(const std::string & source) -> Relation;
    auto load_maps(const std::string & source) -> std::vector<Map>;
}

#endif
