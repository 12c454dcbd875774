// Command-line front end: compute rankings, verify axioms, search
// multigraphs, export fixtures, and emit impossibility artifacts.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "impartial/axioms.hpp"
#include "impartial/blocking.hpp"
#include "impartial/decisive.hpp"
#include "impartial/errors.hpp"
#include "impartial/impossibility.hpp"
#include "impartial/json_io.hpp"
#include "impartial/mechanism.hpp"

namespace {

using namespace impartial;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitValidation = 2;
constexpr int kExitDescriptor = 3;
constexpr int kExitSearchExhausted = 4;
constexpr int kExitCapacity = 5;

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success (all selected checks hold or are inconclusive-sampled)\n"
    "  1  an axiom violation or failed verification was found\n"
    "  2  input parsing or validation failure\n"
    "  3  mechanism descriptor or parameter mismatch\n"
    "  4  randomized search exhausted its retries\n"
    "  5  capacity limit exceeded (n > 20 for factorial indexing)\n";

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
    if (!path || *path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file '" + *path + "'");
    out << content;
}

struct MechanismFlags {
    std::string kind;
    int n = 0;
    std::optional<std::uint64_t> seed;
};

void add_mechanism_flags(CLI::App* cmd, MechanismFlags& flags) {
    cmd->add_option("--mechanism", flags.kind,
                    "mechanism kind: blocking | blocking-n4 | blocking-fixture | "
                    "blocking-random | weak-unanimity")
        ->required();
    cmd->add_option("--n", flags.n, "number of agents")->required();
    cmd->add_option("--seed", flags.seed, "construction seed (required for blocking-random)");
}

std::unique_ptr<Mechanism> build_mechanism(const MechanismFlags& flags) {
    return make_mechanism(MechanismDescriptor::parse(flags.kind, flags.n, flags.seed));
}

// ---------------------------------------------------------------- rank --

struct RankArgs {
    MechanismFlags mechanism;
    std::string profile_path;
};

int run_rank(const RankArgs& args) {
    const auto mechanism = build_mechanism(args.mechanism);
    const RankingProfile profile = parse_profile_json(read_file(args.profile_path));
    if (profile.n() != mechanism->n()) {
        throw DescriptorError("profile has " + std::to_string(profile.n()) +
                              " agents but the mechanism needs " + std::to_string(mechanism->n()));
    }
    const Permutation ranking = mechanism->rank(profile);
    nlohmann::json line;
    line["ranking"] = ranking.one_line();
    std::cout << line.dump() << '\n';
    std::cout << "position  agent\n";
    char row[32];
    for (int k = 0; k < ranking.n(); ++k) {
        std::snprintf(row, sizeof(row), "%8d  %5d\n", k, ranking.agent_at(k));
        std::cout << row;
    }
    return kExitOk;
}

// -------------------------------------------------------------- verify --

struct VerifyArgs {
    MechanismFlags mechanism;
    std::vector<std::string> axioms;
    std::string mode = "exhaustive";
    int trials = 10000;
    std::optional<std::uint64_t> sample_seed;
    int jobs = 1;
};

std::vector<std::string> claimed_axioms(const Mechanism& mechanism) {
    if (dynamic_cast<const BlockingMechanism*>(&mechanism) != nullptr) {
        return {"impartiality", "monotonicity", "individual-full-rank"};
    }
    // The decisive-triple impartiality sweep is complete only at n = 5;
    // beyond that it must be requested explicitly in sampled mode.
    if (mechanism.n() == 5) {
        return {"impartiality", "weak-unanimity", "individual-full-rank"};
    }
    return {"weak-unanimity", "individual-full-rank"};
}

CheckMode resolve_mode(const std::string& mode, const Mechanism& mechanism) {
    if (mode == "sampled") return CheckMode::sampled;
    if (mode == "reduced-exhaustive" || mode == "exhaustive-triples") {
        return CheckMode::reduced_exhaustive;
    }
    if (mode == "exhaustive") {
        // Full-profile enumeration where feasible, otherwise the
        // mechanism's complete structural sweep.
        return mechanism.n() <= 4 ? CheckMode::exhaustive : CheckMode::reduced_exhaustive;
    }
    throw DescriptorError("unknown mode '" + mode + "'");
}

int run_verify(const VerifyArgs& args) {
    const auto mechanism = build_mechanism(args.mechanism);

    std::vector<std::string> selected = args.axioms;
    if (selected.empty()) selected = claimed_axioms(*mechanism);
    if (selected.size() == 1 && selected[0] == "all") {
        selected = {"impartiality", "monotonicity", "individual-full-rank", "weak-unanimity",
                    "unanimity"};
    }

    CheckOptions options;
    options.mode = resolve_mode(args.mode, *mechanism);
    options.trials = args.trials;
    options.seed = args.sample_seed.value_or(args.mechanism.seed.value_or(1));
    options.jobs = args.jobs;

    bool all_ok = true;
    for (const std::string& axiom : selected) {
        AxiomReport report;
        if (axiom == "impartiality") {
            report = check_impartiality(*mechanism, options);
        } else if (axiom == "monotonicity") {
            report = check_monotonicity(*mechanism, options);
        } else if (axiom == "individual-full-rank") {
            report = check_individual_full_rank(*mechanism);
        } else if (axiom == "weak-unanimity") {
            CheckOptions wu = options;
            if (wu.mode == CheckMode::reduced_exhaustive) wu.mode = CheckMode::exhaustive;
            report = check_weak_unanimity(*mechanism, wu);
        } else if (axiom == "unanimity") {
            CheckOptions un = options;
            if (un.mode == CheckMode::exhaustive && mechanism->n() > 4) {
                un.mode = CheckMode::reduced_exhaustive;
            }
            report = check_unanimity(*mechanism, un);
        } else {
            throw DescriptorError("unknown axiom '" + axiom + "'");
        }
        std::cout << axiom_report_to_json(report) << '\n';
        if (report.verdict == Verdict::violated) all_ok = false;
        if (report.verdict == Verdict::inconclusive_sampled && options.mode != CheckMode::sampled) {
            all_ok = false;
        }
    }
    return all_ok ? kExitOk : kExitViolation;
}

// -------------------------------------------------------- graph-search --

struct GraphSearchArgs {
    int n = 0;
    std::uint64_t seed = 0;
    int max_retries = 1000;
    std::optional<std::string> out;
};

int run_graph_search(const GraphSearchArgs& args) {
    const RhoVector rho = RhoVector::cyclic(args.n);
    const RandomGraphResult result = random_multigraph(args.n, rho, args.seed, args.max_retries);
    write_output(args.out, multigraph_to_json(rho, result.graph) + "\n");
    std::cerr << "found a valid multigraph for n = " << args.n << " after " << result.attempts
              << " attempt(s)\n";
    return kExitOk;
}

// -------------------------------------------------------------- export --

struct ExportArgs {
    std::string fixture;
    std::optional<std::string> out;
};

int run_export(const ExportArgs& args) {
    const std::string& name = args.fixture;
    auto starts_with = [&](const std::string& prefix) {
        return name.rfind(prefix, 0) == 0;
    };
    auto suffix_int = [&](const std::string& prefix) {
        try {
            return std::stoi(name.substr(prefix.size()));
        } catch (const std::exception&) {
            throw DescriptorError("malformed fixture name '" + name + "'");
        }
    };

    if (name == "blocking-n4") {
        nlohmann::json out;
        out["n"] = 4;
        out["rho"] = g4_rho().values();
        nlohmann::json table = nlohmann::json::object();
        for (int b = 0; b < 16; ++b) {
            std::string key;
            for (int i = 0; i < 4; ++i) key += static_cast<char>('0' + ((b >> i) & 1));
            table[key] = g4_table()[b].one_line();
        }
        out["table"] = table;
        write_output(args.out, out.dump() + "\n");
        return kExitOk;
    }
    if (starts_with("blocking-n")) {
        const int n = suffix_int("blocking-n");
        auto [rho, graph] = fixture_multigraph(n);
        write_output(args.out, blocking_sets_to_json(rho, blocking_from_multigraph(rho, graph)) + "\n");
        return kExitOk;
    }
    if (starts_with("multigraph-n")) {
        const int n = suffix_int("multigraph-n");
        auto [rho, graph] = fixture_multigraph(n);
        write_output(args.out, multigraph_to_json(rho, graph) + "\n");
        return kExitOk;
    }
    if (starts_with("cutting-n")) {
        const int n = suffix_int("cutting-n");
        write_output(args.out, cutting_family_to_json(CuttingFamily::standard(n)) + "\n");
        return kExitOk;
    }
    throw DescriptorError("unknown fixture '" + name +
                          "'; expected blocking-n4, blocking-nK, multigraph-nK, or cutting-nK");
}

// -------------------------------------------------------- impossibility --

struct ImpossibilityArgs {
    std::optional<int> n;
    bool encode_n4 = false;
    bool without_ifr = false;
    bool pruning = false;
    std::optional<std::string> profiles_path;
    std::optional<std::string> out;
};

int run_impossibility(const ImpossibilityArgs& args) {
    if (args.encode_n4) {
        std::vector<RankingProfile> profiles;
        bool full_scope = true;
        if (args.profiles_path) {
            full_scope = false;
            const nlohmann::json parsed = nlohmann::json::parse(read_file(*args.profiles_path),
                                                                nullptr, false);
            if (parsed.is_discarded() || !parsed.is_array()) {
                throw ValidationError("profiles file must be a JSON array of profile objects");
            }
            for (const auto& entry : parsed) {
                profiles.push_back(parse_profile_json(entry.dump()));
            }
        }
        if (!args.out) throw DescriptorError("--encode-n4 requires --out");

        std::ofstream out(*args.out, std::ios::binary);
        if (!out) throw ValidationError("cannot open output file '" + *args.out + "'");
        DimacsStats stats;
        if (full_scope) {
            stats = write_wu_n4_full_dimacs(out);
        } else {
            const WuEncoding encoding = encode_wu_n4(profiles);
            write_dimacs(encoding.cnf, out);
            stats.variables = static_cast<std::uint64_t>(encoding.cnf.num_vars);
            stats.clauses = encoding.cnf.clauses.size();
        }
        std::ofstream sidecar(*args.out + ".vars.json", std::ios::binary);
        if (!sidecar) throw ValidationError("cannot open sidecar file");
        write_wu_n4_sidecar(sidecar);

        nlohmann::json summary;
        summary["variables"] = stats.variables;
        summary["clauses"] = stats.clauses;
        summary["scope"] = full_scope ? "full" : "subset";
        if (!full_scope) summary["profiles"] = profiles.size();
        std::cout << summary.dump() << '\n';
        return kExitOk;
    }

    if (!args.n) throw DescriptorError("impossibility needs --n 2|3 or --encode-n4");
    RefutationOptions options;
    options.require_full_rank = !args.without_ifr;
    options.rotation_pruning = args.pruning;
    const RefutationCertificate cert = refute_impartial_ifr(*args.n, options);
    nlohmann::json summary;
    summary["n"] = cert.n;
    summary["result"] = cert.satisfiable ? "SAT" : "UNSAT";
    summary["nodes"] = cert.nodes;
    summary["full_rank_required"] = cert.full_rank_required;
    summary["rotation_pruning"] = cert.rotation_pruning;
    std::cout << summary.dump() << '\n';
    return kExitOk;
}

// ------------------------------------------------------ audit-unanimity --

int run_audit(const MechanismFlags& flags) {
    const auto mechanism = build_mechanism(flags);
    const ChainAuditResult result = unanimity_chain_audit(*mechanism);
    std::cout << chain_audit_to_json(result) << '\n';
    return result.kind == ChainAuditResult::Kind::unanimity_violation ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Impartial rank aggregation mechanisms: ranking, verification, and search tools"};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1);

    RankArgs rank_args;
    auto* rank_cmd = app.add_subcommand("rank", "aggregate one profile into a social ranking");
    add_mechanism_flags(rank_cmd, rank_args.mechanism);
    rank_cmd->add_option("--profile", rank_args.profile_path, "profile JSON file ('-' for stdin)")
        ->required();

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "check axioms and emit JSON reports");
    add_mechanism_flags(verify_cmd, verify_args.mechanism);
    verify_cmd->add_option("--axiom", verify_args.axioms,
                           "axiom name, repeatable; 'all' for the full set; default: the axioms "
                           "the mechanism is certified for");
    verify_cmd->add_option("--mode", verify_args.mode,
                           "exhaustive | reduced-exhaustive | exhaustive-triples | sampled");
    verify_cmd->add_option("--trials", verify_args.trials, "sample count for sampled mode");
    verify_cmd->add_option("--sample-seed", verify_args.sample_seed, "seed for sampled mode");
    verify_cmd->add_option("--jobs", verify_args.jobs, "worker count for verification sweeps");

    GraphSearchArgs graph_args;
    auto* graph_cmd = app.add_subcommand("graph-search", "seeded random multigraph search (n >= 11)");
    graph_cmd->add_option("--n", graph_args.n, "number of agents")->required();
    graph_cmd->add_option("--seed", graph_args.seed, "search seed")->required();
    graph_cmd->add_option("--max-retries", graph_args.max_retries, "rejection-sampling retry cap");
    graph_cmd->add_option("--out", graph_args.out, "output file (default stdout)");

    ExportArgs export_args;
    auto* export_cmd = app.add_subcommand("export", "export built-in fixtures as JSON");
    export_cmd
        ->add_option("--fixture", export_args.fixture,
                     "blocking-n4 | blocking-nK (5<=K<=10) | multigraph-nK | cutting-nK")
        ->required();
    export_cmd->add_option("--out", export_args.out, "output file (default stdout)");

    ImpossibilityArgs imp_args;
    auto* imp_cmd = app.add_subcommand("impossibility",
                                       "refutation searches and the n = 4 constraint encoding");
    imp_cmd->add_option("--n", imp_args.n, "refute impartiality + individual full rank for n in {2,3}");
    imp_cmd->add_flag("--encode-n4", imp_args.encode_n4, "emit the n = 4 weak-unanimity CNF");
    imp_cmd->add_flag("--without-ifr", imp_args.without_ifr, "drop the full-rank requirement");
    imp_cmd->add_flag("--pruning", imp_args.pruning, "enable rotation-claim pruning (n = 3)");
    imp_cmd->add_option("--profiles", imp_args.profiles_path,
                        "JSON array of profiles restricting the encoding scope");
    imp_cmd->add_option("--out", imp_args.out, "output CNF path (sidecar: <out>.vars.json)");

    MechanismFlags audit_flags;
    auto* audit_cmd = app.add_subcommand("audit-unanimity",
                                         "walk the unanimity chain and report the violation");
    add_mechanism_flags(audit_cmd, audit_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (rank_cmd->parsed()) return run_rank(rank_args);
        if (verify_cmd->parsed()) return run_verify(verify_args);
        if (graph_cmd->parsed()) return run_graph_search(graph_args);
        if (export_cmd->parsed()) return run_export(export_args);
        if (imp_cmd->parsed()) return run_impossibility(imp_args);
        if (audit_cmd->parsed()) return run_audit(audit_flags);
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const SearchExhaustedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSearchExhausted;
    } catch (const DescriptorError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDescriptor;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    }
    return kExitOk;
}
