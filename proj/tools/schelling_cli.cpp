#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schelling/io.hpp"
#include "schelling/verify.hpp"

namespace {

using namespace schelling;

constexpr int kExitOk = 0;         // success; for check, the placement is stable
constexpr int kExitNegative = 1;   // negative verdict (not an equilibrium, failed criteria)
constexpr int kExitUsage = 2;      // bad flags, unknown names, malformed or invalid input
constexpr int kExitIo = 3;         // missing or unwritable files
constexpr int kExitGuardrail = 4;  // scan larger than the pattern cap without --force

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

io::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return io::json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out.good()) throw IoError("short write to " + path);
}

void write_json(const std::string& path, const io::json& doc) {
    write_text(path, doc.dump(2) + "\n");
}

struct GenArgs {
    std::string family;
    int k = 2;
    int n = 8;
    int x = 3;
    bool leaf_pairing = false;
    std::vector<int> counts;
    std::string sizes;
    std::string out, dot;
};

std::vector<StubbornStarTypeConfig> parse_star_sizes(const std::string& text, int k) {
    if (text.empty()) return std::vector<StubbornStarTypeConfig>(static_cast<size_t>(k - 1));
    std::vector<StubbornStarTypeConfig> sizes;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--sizes entries look like strategic:stubborn, e.g. 2:1");
        sizes.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
    }
    return sizes;
}

NamedInstance build_instance(const GenArgs& a) {
    if (a.family == "nonexistence-tree") return nonexistence_tree(a.k);
    if (a.family == "poa-star") return poa_star(a.n);
    if (a.family == "clique-pendant") return clique_pendant(a.x, a.leaf_pairing);
    if (a.family == "cycle-pendant") return cycle_pendant(a.k);
    if (a.family == "pos-tree") return pos_tree(a.x);
    if (a.family == "spider-tree") return spider_tree(a.k, a.x);
    if (a.family == "line") {
        if (a.counts.empty())
            throw std::invalid_argument("line needs per-type counts, e.g. --counts 6,3");
        return line_game(a.counts);
    }
    if (a.family == "stubborn-star") return stubborn_star(a.k, parse_star_sizes(a.sizes, a.k));
    throw std::invalid_argument(
        "unknown family " + a.family +
        "; try nonexistence-tree, poa-star, clique-pendant, cycle-pendant, pos-tree, "
        "spider-tree, line, or stubborn-star");
}

int cmd_gen(const GenArgs& a) {
    const NamedInstance inst = build_instance(a);
    if (!a.dot.empty()) write_text(a.dot, io::to_dot(inst.game));
    write_json(a.out, io::instance_to_json(inst));
    return kExitOk;
}

// An assignment argument names an embedded reference, a JSON file (bare
// assignment object or a document with an "assignment" key), the literal
// "embedded" for the game file's own assignment, or "random".
Assignment resolve_assignment(const Game& g, const io::json& game_doc, const std::string& spec,
                              std::uint64_t seed) {
    if (spec.empty() || spec == "embedded") {
        if (game_doc.contains("assignment"))
            return io::assignment_from_json(game_doc.at("assignment"));
        throw std::invalid_argument("the game file embeds no assignment; pass --assignment");
    }
    if (spec == "random") {
        std::mt19937_64 engine(seed);
        return testbeds::random_assignment(g, engine);
    }
    if (game_doc.contains("references") && game_doc.at("references").contains(spec))
        return io::assignment_from_json(game_doc.at("references").at(spec));
    const io::json doc = read_json_file(spec);
    return io::assignment_from_json(doc.contains("assignment") ? doc.at("assignment") : doc);
}

struct CheckArgs {
    std::string game;
    std::string assignment;
    std::uint64_t seed = 0;
    std::string out, dot;
};

int cmd_check(const CheckArgs& a) {
    const io::json doc = read_json_file(a.game);
    const Game g = io::game_from_json(doc);
    const Assignment asg = resolve_assignment(g, doc, a.assignment, a.seed);
    const EquilibriumResult result = is_equilibrium(g, asg);

    io::json report;
    report["command"] = "check";
    report["game"] = a.game;
    report["assignment"] = a.assignment.empty() ? "embedded" : a.assignment;
    report["equilibrium"] = result.equilibrium;
    report["witness"] = result.witness ? io::json::array({result.witness->first,
                                                          result.witness->second})
                                       : io::json(nullptr);
    report["social_welfare"] = io::rational_to_json(social_welfare(g, asg));
    report["degree_of_integration"] = degree_of_integration(g, asg);
    if (!a.dot.empty()) write_text(a.dot, io::to_dot(g, &asg));
    write_json(a.out, report);
    return result.equilibrium ? kExitOk : kExitNegative;
}

struct DynamicsArgs {
    std::string game;
    std::string start;
    std::string policy = "lex";
    std::uint64_t seed = 0;
    long long max_steps = -1;
    std::string out;
};

int cmd_dynamics(const DynamicsArgs& a) {
    const io::json doc = read_json_file(a.game);
    const Game g = io::game_from_json(doc);
    std::string start_spec = a.start;
    if (start_spec.empty()) start_spec = doc.contains("assignment") ? "embedded" : "random";
    const Assignment start = resolve_assignment(g, doc, start_spec, a.seed);

    SchedulingPolicy policy = SchedulingPolicy::lex_first();
    if (a.policy == "random")
        policy = SchedulingPolicy::random_seeded(a.seed);
    else if (a.policy == "maxgain")
        policy = SchedulingPolicy::max_gain();

    const DynamicsTrace trace = run(g, start, policy, a.max_steps);
    io::json report;
    report["command"] = "dynamics";
    report["game"] = a.game;
    report["start"] = start_spec;
    report["policy"] = a.policy;
    report["seed"] = a.seed;
    report["steps_taken"] = trace.steps.size();
    report.update(io::trace_to_json(trace));
    if (g.topology().regular() && g.stubborn_agents().empty()) {
        report["friend_potentials"] = friend_potential_sequence(g, trace);
        report["potential_monotone"] = assert_potential_monotone(g, trace);
    }
    write_json(a.out, report);
    return kExitOk;  // a cap or cycle verdict is a result, not a failure
}

struct RatioArgs {
    std::string game;
    std::string metric = "sw";
    std::string kind = "poa";
    unsigned threads = 1;
    bool force = false;
    std::string out;
};

int cmd_ratio(const RatioArgs& a) {
    const Game g = io::game_from_json(read_json_file(a.game));
    SearchLimits limits;
    limits.threads = a.threads;
    limits.force = a.force;
    const RatioReport result =
        price_ratio(g, a.metric == "di" ? MetricKind::DegreeOfIntegration
                                        : MetricKind::SocialWelfare,
                    a.kind == "pos" ? RatioKind::PoS : RatioKind::PoA, limits);
    io::json report;
    report["command"] = "ratio";
    report["game"] = a.game;
    report.update(io::ratio_report_to_json(result));
    write_json(a.out, report);
    return kExitOk;
}

struct ReduceArgs {
    std::string kind;
    std::string input;
    int lambda = -1;
    int s = -1;
    int t = -1;
    int w = 0;
    std::string out, dot;
};

int cmd_reduce(const ReduceArgs& a) {
    const SourceGraph h = io::source_graph_from_json(read_json_file(a.input));
    ReductionOutput result = [&] {
        if (a.kind == "clique") {
            if (a.lambda < 0) throw std::invalid_argument("reduce clique needs --lambda");
            return clique_to_game(h, a.lambda);
        }
        if (a.kind == "emc") {
            if (a.s < 0 || a.t < 0) throw std::invalid_argument("reduce emc needs --s and --t");
            return equal_min_cut_to_game(h, a.s, a.t, a.w);
        }
        if (a.lambda < 0) throw std::invalid_argument("reduce vc needs --lambda");
        return vertex_cover_to_game(h, a.lambda);
    }();
    if (!a.dot.empty()) write_text(a.dot, io::to_dot(result.game));
    write_json(a.out, io::reduction_to_json(result));
    return kExitOk;
}

struct VerifyArgs {
    bool slow = false;
    unsigned threads = 1;
    std::string out;
};

int cmd_verify(const VerifyArgs& a) {
    verify::VerifyOptions options;
    options.slow = a.slow;
    options.threads = a.threads;
    const verify::VerifyReport report = verify::run_all(options);

    int passed = 0, failed = 0, skipped = 0;
    io::json criteria = io::json::array();
    for (const auto& criterion : report.criteria) {
        std::cout << criterion.status() << " " << criterion.index << " " << criterion.name;
        if (!criterion.detail.empty()) std::cout << ": " << criterion.detail;
        std::cout << "\n";
        if (criterion.skipped)
            ++skipped;
        else if (criterion.passed)
            ++passed;
        else
            ++failed;
        criteria.push_back({{"index", criterion.index},
                            {"name", criterion.name},
                            {"status", criterion.status()},
                            {"detail", criterion.detail}});
    }
    std::cout << "summary: " << passed << " passed, " << failed << " failed, " << skipped
              << " skipped of " << report.criteria.size() << " criteria\n";
    if (!a.out.empty()) {
        io::json doc;
        doc["command"] = "verify";
        doc["slow"] = a.slow;
        doc["criteria"] = criteria;
        doc["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped}};
        write_json(a.out, doc);
    }
    return report.all_passed() ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact analysis of swap Schelling games on graphs"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "construct a named instance family");
    gen->add_option("family", gen_args.family,
                    "nonexistence-tree | poa-star | clique-pendant | cycle-pendant | pos-tree | "
                    "spider-tree | line | stubborn-star")
        ->required();
    gen->add_option("--k", gen_args.k,
                    "type count (nonexistence-tree, cycle-pendant, spider-tree, stubborn-star)");
    gen->add_option("--n", gen_args.n, "node count (poa-star)");
    gen->add_option("--x", gen_args.x, "size parameter (clique-pendant, pos-tree, spider-tree)");
    gen->add_flag("--leaf-pairing", gen_args.leaf_pairing,
                  "join the hub's leaves pairwise (clique-pendant)");
    gen->add_option("--counts", gen_args.counts, "per-type agent counts (line)")->delimiter(',');
    gen->add_option("--sizes", gen_args.sizes,
                    "strategic:stubborn per non-zero type (stubborn-star), e.g. 2:1,2:2");
    gen->add_option("--out", gen_args.out, "write the game file here instead of stdout");
    gen->add_option("--dot", gen_args.dot, "also write a Graphviz rendering here");

    CheckArgs check_args;
    CLI::App* check = app.add_subcommand("check", "equilibrium and metrics of one placement");
    check->add_option("--game", check_args.game, "game file")->required();
    check->add_option("--assignment", check_args.assignment,
                      "reference name, JSON file, 'embedded', or 'random'");
    check->add_option("--seed", check_args.seed, "seed for --assignment random");
    check->add_option("--out", check_args.out, "write the report here instead of stdout");
    check->add_option("--dot", check_args.dot, "write a Graphviz rendering of the placement");

    DynamicsArgs dyn_args;
    CLI::App* dynamics = app.add_subcommand("dynamics", "run beneficial-swap dynamics");
    dynamics->add_option("--game", dyn_args.game, "game file")->required();
    dynamics->add_option("--start", dyn_args.start,
                         "reference name, JSON file, 'embedded', or 'random' (default: embedded "
                         "if present, else random)");
    dynamics->add_option("--policy", dyn_args.policy, "swap scheduling policy")
        ->check(CLI::IsMember({"lex", "random", "maxgain"}));
    dynamics->add_option("--seed", dyn_args.seed, "seed for random start and random policy");
    dynamics->add_option("--max-steps", dyn_args.max_steps,
                         "swap budget (default: node count squared)");
    dynamics->add_option("--out", dyn_args.out, "write the trace report here instead of stdout");

    RatioArgs ratio_args;
    CLI::App* ratio = app.add_subcommand("ratio", "exhaustive optimum and price ratio");
    ratio->add_option("--game", ratio_args.game, "game file")->required();
    ratio->add_option("--metric", ratio_args.metric, "sw (welfare) or di (integration)")
        ->check(CLI::IsMember({"sw", "di"}));
    ratio->add_option("--kind", ratio_args.kind, "poa (worst equilibrium) or pos (best)")
        ->check(CLI::IsMember({"poa", "pos"}));
    ratio->add_option("--threads", ratio_args.threads, "worker threads for the scan");
    ratio->add_flag("--force", ratio_args.force, "scan past the pattern-count guardrail");
    ratio->add_option("--out", ratio_args.out, "write the report here instead of stdout");

    ReduceArgs reduce_args;
    CLI::App* reduce = app.add_subcommand("reduce", "build a hardness gadget from a graph");
    reduce->add_option("kind", reduce_args.kind, "clique | emc | vc")
        ->required()
        ->check(CLI::IsMember({"clique", "emc", "vc"}));
    reduce->add_option("--input", reduce_args.input, "source graph file ({n, edges})")
        ->required();
    reduce->add_option("--lambda", reduce_args.lambda, "target size (clique, vc)");
    reduce->add_option("--s", reduce_args.s, "source-side node (emc)");
    reduce->add_option("--t", reduce_args.t, "sink-side node (emc)");
    reduce->add_option("--w", reduce_args.w, "cut-weight threshold feeding xi (emc)");
    reduce->add_option("--out", reduce_args.out, "write the game file here instead of stdout");
    reduce->add_option("--dot", reduce_args.dot, "also write a Graphviz rendering here");

    VerifyArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    verify_cmd->add_flag("--slow", verify_args.slow, "include the exhaustive three-type scan");
    verify_cmd->add_option("--threads", verify_args.threads, "worker threads for big scans");
    verify_cmd->add_option("--out", verify_args.out, "also write a JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_args);
        if (check->parsed()) return cmd_check(check_args);
        if (dynamics->parsed()) return cmd_dynamics(dyn_args);
        if (ratio->parsed()) return cmd_ratio(ratio_args);
        if (reduce->parsed()) return cmd_reduce(reduce_args);
        return cmd_verify(verify_args);
    } catch (const GuardrailError& e) {
        std::cerr << "guardrail: " << e.what() << " (rerun with --force to scan anyway)\n";
        return kExitGuardrail;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const io::json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
