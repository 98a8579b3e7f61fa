#ifndef DUALFORGE_VERIFY_HH
#define DUALFORGE_VERIFY_HH

#include <dualforge/core.hh>
#include <dualforge/piggyback.hh>
#include <dualforge/term.hh>

#include <optional>
#include <string>
#include <vector>

namespace dualforge
{
    /// A hom-set into `m`, carrying the pointwise structure of the alter ego.
    struct DualObject
    {
        std::vector<Map> carrier;
        FiniteStructure structure;
    };

    /// With `check_membership`, throws InputError unless the homs into `m` separate `a`.
    auto dual(const FiniteStructure & a, const FiniteStructure & m, const FiniteStructure & mt,
        const Config & config = default_config(), bool check_membership = true) -> DualObject;

    enum class Direction
    {
        duality,
        coduality
    };

    struct EvaluationResult
    {
        bool embedding = true;
        bool isomorphism = true;
        std::size_t dual_size = 0;
        std::size_t double_dual_size = 0;
        std::optional<Map> witness;
        std::string failure;
    };

    /// For coduality, `a` is a structure of the alter ego's type and the roles of m and mt swap.
    auto evaluation_check(const FiniteStructure & a, const FiniteStructure & m, const FiniteStructure & mt,
        Direction direction, const Config & config = default_config()) -> EvaluationResult;

    struct PhiResult
    {
        std::vector<Map> base_homs;
        std::vector<Map> images;
        Map index;
    };

    /// x |-> omega . x, from the homs a -> m into the homs of the reduct of a into n.
    auto phi(const Map & omega, const FiniteStructure & a, const FiniteStructure & m, const ReductSpec & reduct,
        const FiniteStructure & n, const Config & config = default_config()) -> PhiResult;

    struct SurjectivityResult
    {
        bool surjective = true;
        std::optional<Map> missing;
    };

    auto joint_surjectivity(const std::vector<Map> & omegas, const FiniteStructure & a, const FiniteStructure & m,
        const ReductSpec & reduct, const FiniteStructure & n, const Config & config = default_config())
        -> SurjectivityResult;

    struct TriangleResult
    {
        Verdict verdict = Verdict::pass;
        bool well_defined = true, base_morphism = true, injective = true, commutes = true;
        Json witness;
    };

    auto commuting_triangle_check(const std::vector<Map> & omegas, const FiniteStructure & a, const FiniteStructure & m,
        const FiniteStructure & mt, const ReductSpec & reduct, const FiniteStructure & n, const FiniteStructure & nt,
        const Config & config = default_config()) -> TriangleResult;

    enum class Mode
    {
        duality,
        coduality,
        full,
        strong
    };

    auto parse_mode(const std::string & s) -> Mode;
    auto to_string(Mode m) -> std::string;

    /// Nonempty subuniverses of powers 1..depth, ordered by exponent then carrier; with `include_empty`, the empty
    /// substructure once at the front when the signature has no constants.
    struct FamilyMember
    {
        unsigned exponent;
        std::vector<Element> carrier;
        FiniteStructure structure;
    };

    auto test_family(const FiniteStructure & m, unsigned depth, bool include_empty,
        const Config & config = default_config()) -> std::vector<FamilyMember>;

    struct VerifyEntry
    {
        std::string side;
        std::size_t index = 0;
        unsigned exponent = 0;
        std::size_t size = 0, dual_size = 0;
        Verdict verdict = Verdict::pass;
        Json witness;
    };

    struct VerifyReport
    {
        Mode mode = Mode::duality;
        unsigned depth = 0;
        std::vector<VerifyEntry> entries;
        std::vector<Condition> gates;

        auto passed() const -> bool;
    };

    auto verify_bruteforce(const FiniteStructure & m, const FiniteStructure & mt, unsigned depth, Mode mode,
        const Config & config = default_config()) -> VerifyReport;

    auto to_json(const VerifyReport & report) -> Json;

    struct CoincidenceReport
    {
        std::vector<VerifyEntry> entries;

        auto passed() const -> bool;
    };

    auto coincidence_check(const Map & omega, const FiniteStructure & m, const FiniteStructure & mt,
        const ReductSpec & reduct_a, const ReductSpec & reduct_x, const FiniteStructure & n, const FiniteStructure & nt,
        unsigned depth, const Config & config = default_config()) -> CoincidenceReport;

    auto to_json(const CoincidenceReport & report) -> Json;
}

#endif
