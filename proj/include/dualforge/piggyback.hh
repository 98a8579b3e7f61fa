#ifndef DUALFORGE_PIGGYBACK_HH
#define DUALFORGE_PIGGYBACK_HH

#include <dualforge/clone.hh>
#include <dualforge/core.hh>
#include <dualforge/hom.hh>
#include <dualforge/term.hh>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dualforge
{
    using Json = nlohmann::ordered_json;

    /// Homomorphisms from the reduct into the base structure.
    auto carriers(const FiniteStructure & m_flat, const FiniteStructure & n, const Config & config = default_config())
        -> std::vector<Map>;

    struct OmegaMaxOptions
    {
        // The diagonal of M is entailed trivially and normally dropped.
        bool drop_diagonal = true;
    };

    /// Maximal subuniverses of M^k inside (w1, ..., wk)^-1(r), over every k-tuple of carriers; deduplicated, sorted.
    auto omega_max(const FiniteStructure & m, const std::vector<Map> & omegas, const Relation & r,
        OmegaMaxOptions options = {}, const Config & config = default_config()) -> std::vector<Relation>;

    struct EntailmentResult
    {
        bool entailed = true;
        std::size_t dual_size = 0;
        std::optional<Map> witness;
    };

    /// Test-algebra decision: r is entailed iff every morphism from the dual of the structure on r to `mt` sends the
    /// coordinate projections into r. Throws InputError when r is not a subuniverse of the power of `m`.
    auto entails(const FiniteStructure & m, const FiniteStructure & mt, const Relation & r,
        const Config & config = default_config()) -> EntailmentResult;

    struct Decomposition
    {
        Relation whole, upper, lower;
    };

    struct DeltaEntailment
    {
        bool holds = true;
        std::vector<Decomposition> parts;
        std::optional<Relation> missing;
        std::optional<Relation> not_entailed;
    };

    /// Every relation maximal in a kernel splits as t1 meet t2 with t1, t2 maximal under sq and its converse.
    auto derive_delta_entailment(const FiniteStructure & m, const FiniteStructure & mt, const std::vector<Map> & omegas,
        const Relation & sq, const Config & config = default_config()) -> DeltaEntailment;

    enum class Verdict
    {
        pass,
        fail,
        not_applicable,
        vacuous
    };

    auto to_string(Verdict v) -> std::string;

    struct Condition
    {
        std::string id;
        std::string description;
        Verdict verdict = Verdict::pass;
        Json witness;
    };

    struct ConditionReport
    {
        std::string theorem;
        std::vector<Condition> conditions;

        auto verdict() const -> Verdict;
        auto add(std::string id, std::string description, Verdict verdict, Json witness = nullptr) -> Condition &;
    };

    auto to_json(const ConditionReport & report) -> Json;

    struct PiggybackProblem
    {
        FiniteStructure m;
        ReductSpec reduct;
        FiniteStructure n, nt;
        std::vector<Map> omegas;
        std::optional<FiniteStructure> mt;
        std::optional<ReductSpec> reduct_t;
        std::optional<std::string> sq;
    };

    struct BuiltAlterEgo
    {
        FiniteStructure ego;
        std::optional<ReductSpec> ego_reduct;
        ConditionReport report;
    };

    /// Relations Omega_max(<=) plus each non-identity endomorphism of M as a unary operation; default Omega = all
    /// carriers into D.
    auto build_alter_ego_D(const FiniteStructure & m, const ReductSpec & reduct, std::optional<std::vector<Map>> omegas,
        const Config & config = default_config()) -> BuiltAlterEgo;

    /// Candidate ego: supplied, or M's operations, the base ego's constants and the non-trivial kernel-maximal relations.
    auto build_alter_ego_S(const FiniteStructure & m, const ReductSpec & reduct, const FiniteStructure & n,
        const FiniteStructure & nt, const Map & omega, std::optional<FiniteStructure> candidate,
        std::optional<ReductSpec> candidate_reduct, const Config & config = default_config()) -> BuiltAlterEgo;

    auto theorem_ids() -> const std::vector<std::string> &;

    auto check_theorem(const PiggybackProblem & problem, const std::string & theorem,
        const Config & config = default_config()) -> ConditionReport;

    auto relation_json(const Relation & r) -> Json;
}

#endif
