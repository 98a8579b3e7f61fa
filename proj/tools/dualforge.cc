#include <dualforge/catalog.hh>
#include <dualforge/clone.hh>
#include <dualforge/hom.hh>
#include <dualforge/io.hh>
#include <dualforge/piggyback.hh>
#include <dualforge/verify.hh>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace dualforge;

using std::optional;
using std::string;
using std::vector;

namespace
{
    enum Exit
    {
        ok = 0,
        refuted = 1,
        input_error = 2,
        resource_bound = 3
    };

    bool text_output = false;

    auto render_text(const Json & j) -> void
    {
        if (j.is_object() && j.contains("conditions")) {
            std::cout << "theorem: " << j["theorem"].get<string>() << '\n';
            for (auto & c : j["conditions"])
                std::cout << "  " << c["id"].get<string>() << ": " << c["verdict"].get<string>() << "  ("
                          << c["description"].get<string>() << ")\n";
            std::cout << "verdict: " << j["verdict"].get<string>() << '\n';
        }
        else if (j.is_object() && j.contains("entries") && j["entries"].is_array()) {
            if (j.contains("gates"))
                for (auto & g : j["gates"])
                    std::cout << "gate " << g["id"].get<string>() << ": " << g["verdict"].get<string>() << '\n';
            for (auto & e : j["entries"]) {
                std::cout << e["side"].get<string>() << "[" << e["index"] << "] n=" << e["exponent"]
                          << " |A|=" << e["size"] << " |D(A)|=" << e["dual_size"] << ": "
                          << e["verdict"].get<string>();
                if (e.contains("witness"))
                    std::cout << "  " << e["witness"].dump();
                std::cout << '\n';
            }
            if (j.contains("note"))
                std::cout << j["note"].get<string>() << '\n';
            std::cout << "verdict: " << j["verdict"].get<string>() << '\n';
        }
        else
            std::cout << j.dump(2) << '\n';
    }

    auto emit(const Json & j) -> void
    {
        if (text_output)
            render_text(j);
        else
            std::cout << j.dump(2) << '\n';
    }

    struct Base
    {
        FiniteStructure n, nt;
    };

    auto is_base_name(const string & s) -> bool
    {
        return s == "D" || s == "S" || s == "S01";
    }

    auto load_base(const string & source) -> Base
    {
        if (is_base_name(source)) {
            auto [n, nt] = catalog::base_pair(source);
            return {n, nt};
        }
        auto n = io::load_structure(source);
        return {n, n};
    }

    auto base_for(const ReductSpec & reduct, const optional<string> & explicit_base) -> Base
    {
        if (explicit_base)
            return load_base(*explicit_base);
        auto name = catalog::base_for_signature(reduct.target);
        if (! name)
            throw InputError("the reduct's target signature is not that of a known base; pass --base");
        return load_base(*name);
    }

    /// The bundle a catalog URI belongs to, for defaults such as carriers and the alter ego's reduct.
    auto bundle_of(const string & source) -> optional<catalog::Entry>
    {
        if (! io::is_catalog_uri(source))
            return std::nullopt;
        auto name = source.substr(8);
        name = name.substr(0, name.find('.'));
        return catalog::get(name);
    }

    auto relation_for(const string & spec, const Base & base) -> Relation
    {
        if (spec == "delta")
            return diagonal(base.n.size);
        for (auto * s : {&base.nt, &base.n})
            if (s->sig.find_rel(spec))
                return s->relation(spec);
        return io::load_relation(spec);
    }

    auto omegas_for(const optional<string> & file, const string & m_source, const FiniteStructure & m_flat,
        const FiniteStructure & n) -> vector<Map>
    {
        if (file)
            return io::load_maps(*file);
        if (auto bundle = bundle_of(m_source); bundle && ! bundle->omegas.empty())
            return bundle->omegas;
        return carriers(m_flat, n);
    }

    auto exit_for(bool pass) -> int
    {
        return pass ? ok : refuted;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"dualforge: piggyback natural dualities for finite structures"};
    app.require_subcommand(1);

    auto & config = default_config();
    bool json_flag = false;
    app.add_option("--max-power", config.max_power, "largest power universe to build");
    app.add_option("--max-closed-sets", config.max_closed_sets, "largest number of closed sets in one search");
    auto * max_nodes = app.add_option("--max-nodes", config.max_nodes, "search node budget for hom enumeration")
                           ->envname("DUALFORGE_MAX_NODES");
    (void) max_nodes;
    app.add_option("--workers", config.workers, "threads used by hom enumeration");
    app.add_flag("--seed-order", config.alternate_order, "alternate branch order in the searches");
    auto * json_opt = app.add_flag("--json", json_flag, "JSON output (the default)");
    app.add_flag("--text", text_output, "plain text rendering")->excludes(json_opt);

    string a_src, b_src, m_src, mt_src, spec_src, spec_x_src, base_src, rel_src;
    optional<string> omega_file, base_opt, sq, spec_t, ego_src, ego_reduct_src;
    string theorem, mode = "duality", catalog_name;
    unsigned depth = 2;
    bool keep_diagonal = false;

    auto * homs = app.add_subcommand("homs", "all homomorphisms A -> B");
    homs->add_option("A", a_src)->required();
    homs->add_option("B", b_src)->required();

    auto * clo = app.add_subcommand("clo1", "unary term functions with witnessing terms");
    clo->add_option("M", m_src)->required();

    auto * reduct = app.add_subcommand("reduct", "apply a reduct specification");
    reduct->add_option("M", m_src)->required();
    reduct->add_option("SPEC", spec_src)->required();

    auto * carrier_cmd = app.add_subcommand("carriers", "homs from the reduct into the base structure");
    carrier_cmd->add_option("M", m_src)->required();
    carrier_cmd->add_option("SPEC", spec_src)->required();
    carrier_cmd->add_option("BASE", base_src)->required();

    auto * omegamax = app.add_subcommand("omegamax", "maximal relations over carrier preimages");
    omegamax->add_option("M", m_src)->required();
    omegamax->add_option("SPEC", spec_src)->required();
    omegamax->add_option("BASE", base_src)->required();
    omegamax->add_option("--rel", rel_src, "base relation: a name, 'delta', or a relation file")->required();
    omegamax->add_option("--omega", omega_file, "carrier list file");
    omegamax->add_flag("--keep-diagonal", keep_diagonal, "keep relations inside the diagonal");

    auto * entails_cmd = app.add_subcommand("entails", "does the alter ego entail the relation?");
    entails_cmd->add_option("M", m_src)->required();
    entails_cmd->add_option("MT", mt_src)->required();
    entails_cmd->add_option("R", rel_src)->required();

    auto * piggyback = app.add_subcommand("piggyback", "build an alter ego from a base duality");
    piggyback->add_option("M", m_src)->required();
    piggyback->add_option("SPEC", spec_src)->required();
    piggyback->add_option("--base", base_src, "D, S or S01")->required();
    piggyback->add_option("--omega", omega_file, "carrier list file");
    piggyback->add_option("--ego", ego_src, "candidate alter ego (semilattice bases)");
    piggyback->add_option("--ego-reduct", ego_reduct_src, "reduct of the candidate alter ego");

    auto * conditions = app.add_subcommand("conditions", "check the hypotheses of a theorem");
    conditions->add_option("M", m_src)->required();
    conditions->add_option("MT", mt_src)->required();
    conditions->add_option("SPEC", spec_src)->required();
    conditions->add_option("--theorem", theorem)
        ->required()
        ->check(CLI::IsMember(theorem_ids()));
    conditions->add_option("--sq", sq, "order-like relation of the alter ego");
    conditions->add_option("--base", base_opt, "D, S, S01 or a structure file");
    conditions->add_option("--spec-t", spec_t, "reduct of the alter ego");
    conditions->add_option("--omega", omega_file, "carrier list file");

    auto * verify = app.add_subcommand("verify", "brute-force check of the dual adjunction");
    verify->add_option("M", m_src)->required();
    verify->add_option("MT", mt_src)->required();
    verify->add_option("--mode", mode)->check(CLI::IsMember({"duality", "coduality", "full", "strong"}));
    verify->add_option("--depth", depth)->check(CLI::Range(1u, 3u));

    auto * coincide = app.add_subcommand("coincide", "natural and base duals agree via the carrier");
    coincide->add_option("M", m_src)->required();
    coincide->add_option("MT", mt_src)->required();
    coincide->add_option("SPECA", spec_src)->required();
    coincide->add_option("SPECX", spec_x_src)->required();
    coincide->add_option("--omega", omega_file, "carrier file (one carrier)");
    coincide->add_option("--depth", depth)->check(CLI::Range(1u, 3u));
    coincide->add_option("--base", base_opt, "D, S, S01 or a structure file");

    auto * cat = app.add_subcommand("catalog", "built-in structures");
    cat->require_subcommand(1);
    auto * cat_list = cat->add_subcommand("list", "list the catalog");
    auto * cat_get = cat->add_subcommand("get", "print a catalog bundle");
    cat_get->add_option("NAME", catalog_name)->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    try {
        if (homs->parsed()) {
            auto a = io::load_structure(a_src), b = io::load_structure(b_src);
            emit(io::maps_to_json(enumerate_homs(a, b)));
            return ok;
        }
        if (clo->parsed()) {
            Json j = Json::array();
            for (auto & f : clo1(io::load_structure(m_src)))
                j.push_back({{"map", f.map}, {"term", f.term.to_string()}});
            emit(j);
            return ok;
        }
        if (reduct->parsed()) {
            emit(io::structure_to_json(apply_reduct(io::load_structure(m_src), io::load_reduct(spec_src))));
            return ok;
        }
        if (carrier_cmd->parsed()) {
            auto m_flat = apply_reduct(io::load_structure(m_src), io::load_reduct(spec_src));
            emit(io::maps_to_json(carriers(m_flat, load_base(base_src).n)));
            return ok;
        }
        if (omegamax->parsed()) {
            auto m = io::load_structure(m_src);
            auto base = load_base(base_src);
            auto m_flat = apply_reduct(m, io::load_reduct(spec_src));
            auto omegas = omegas_for(omega_file, m_src, m_flat, base.n);
            for (auto & w : omegas)
                make_hom(m_flat, base.n, w);
            OmegaMaxOptions options;
            options.drop_diagonal = ! keep_diagonal;
            Json j = Json::array();
            for (auto & r : omega_max(m, omegas, relation_for(rel_src, base), options))
                j.push_back({{"arity", r.arity()}, {"tuples", relation_json(r)}});
            emit(j);
            return ok;
        }
        if (entails_cmd->parsed()) {
            auto m = io::load_structure(m_src), mt = io::load_structure(mt_src);
            auto r = rel_src == "delta" ? diagonal(m.size) : io::load_relation(rel_src);
            auto e = entails(m, mt, r);
            Json j;
            j["entailed"] = e.entailed;
            j["dual_size"] = e.dual_size;
            if (e.witness)
                j["witness"] = *e.witness;
            emit(j);
            return exit_for(e.entailed);
        }
        if (piggyback->parsed()) {
            auto m = io::load_structure(m_src);
            auto spec = io::load_reduct(spec_src);
            if (! is_base_name(base_src))
                throw InputError("--base must be D, S or S01");
            auto base = load_base(base_src);
            auto m_flat = apply_reduct(m, spec);
            optional<vector<Map>> omegas;
            if (omega_file || bundle_of(m_src))
                omegas = omegas_for(omega_file, m_src, m_flat, base.n);
            BuiltAlterEgo built;
            if (base_src == "D")
                built = build_alter_ego_D(m, spec, omegas);
            else {
                if (! omegas)
                    omegas = carriers(m_flat, base.n);
                if (omegas->size() != 1)
                    throw InputError("the semilattice construction needs exactly one carrier; pass --omega");
                optional<FiniteStructure> ego;
                optional<ReductSpec> ego_reduct;
                if (ego_src)
                    ego = io::load_structure(*ego_src);
                if (ego_reduct_src)
                    ego_reduct = io::load_reduct(*ego_reduct_src);
                built = build_alter_ego_S(m, spec, base.n, base.nt, omegas->front(), ego, ego_reduct);
            }
            Json j;
            j["alter_ego"] = io::structure_to_json(built.ego);
            if (built.ego_reduct)
                j["ego_reduct"] = io::reduct_to_json(*built.ego_reduct);
            j["report"] = to_json(built.report);
            emit(text_output ? j["report"] : j);
            return exit_for(built.report.verdict() != Verdict::fail);
        }
        if (conditions->parsed()) {
            PiggybackProblem p;
            p.m = io::load_structure(m_src);
            p.mt = io::load_structure(mt_src);
            p.reduct = io::load_reduct(spec_src);
            auto base = base_for(p.reduct, base_opt);
            p.n = base.n;
            p.nt = base.nt;
            auto bundle = bundle_of(m_src);
            if (spec_t)
                p.reduct_t = io::load_reduct(*spec_t);
            else if (bundle && bundle->ego_reduct)
                p.reduct_t = bundle->ego_reduct;
            p.omegas = omegas_for(omega_file, m_src, apply_reduct(p.m, p.reduct), p.n);
            p.sq = sq;
            auto report = check_theorem(p, theorem);
            emit(to_json(report));
            return exit_for(report.verdict() != Verdict::fail);
        }
        if (verify->parsed()) {
            auto report = verify_bruteforce(io::load_structure(m_src), io::load_structure(mt_src), depth,
                parse_mode(mode));
            emit(to_json(report));
            return exit_for(report.passed());
        }
        if (coincide->parsed()) {
            auto m = io::load_structure(m_src), mt = io::load_structure(mt_src);
            auto spec_a = io::load_reduct(spec_src), spec_x = io::load_reduct(spec_x_src);
            auto base = base_for(spec_a, base_opt);
            auto omegas = omegas_for(omega_file, m_src, apply_reduct(m, spec_a), base.n);
            if (omegas.size() != 1)
                throw InputError("coincide needs exactly one carrier");
            auto report = coincidence_check(omegas.front(), m, mt, spec_a, spec_x, base.n, base.nt, depth);
            emit(to_json(report));
            return exit_for(report.passed());
        }
        if (cat_list->parsed()) {
            Json j = Json::array();
            for (auto & name : catalog::names())
                j.push_back({{"name", name}, {"description", catalog::get(name).description}});
            emit(j);
            return ok;
        }
        if (cat_get->parsed()) {
            auto e = catalog::get(catalog_name);
            Json j;
            j["name"] = e.name;
            j["description"] = e.description;
            j["structure"] = io::structure_to_json(e.m);
            if (e.base)
                j["base"] = *e.base;
            if (e.reduct)
                j["reduct"] = io::reduct_to_json(*e.reduct);
            if (! e.omegas.empty())
                j["omegas"] = io::maps_to_json(e.omegas);
            if (e.ego)
                j["ego"] = io::structure_to_json(*e.ego);
            if (e.ego_reduct)
                j["ego_reduct"] = io::reduct_to_json(*e.ego_reduct);
            emit(j);
            return ok;
        }
    }
    catch (const ResourceBoundError & e) {
        std::cerr << "resource bound exceeded: " << e.what() << '\n';
        return resource_bound;
    }
    catch (const Error & e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}
