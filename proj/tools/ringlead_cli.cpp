// Command-line front end: Monte-Carlo runs, attacks, parameter sweeps, the
// tree toolkit and the reduction bound checks.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ringlead/gametree.hpp"
#include "ringlead/harness.hpp"
#include "ringlead/reductions.hpp"
#include "ringlead/transcript_io.hpp"
#include "ringlead/treesim.hpp"

using namespace ringlead;

namespace
{
    struct CommonOpts
    {
        int n = 8;
        std::string protocol = "alead";
        std::string attack = "none";
        Value target = 0;
        int k = 0;
        std::vector<int> positions;
        int l = 0;
        long long m = 0;
        std::uint64_t fseed = 0;
        double prob = 0.0;
        int c_param = 3;
        std::uint64_t trials = 1000;
        std::uint64_t seed = 1;
        std::string schedule = "rr";
        bool oracle = false;
        std::string out_path;
        std::string format = "json";
    };

    ProtocolId parse_protocol(const std::string &s)
    {
        if (s == "basic") return ProtocolId::BasicLead;
        if (s == "alead") return ProtocolId::ALeadUni;
        if (s == "phase") return ProtocolId::PhaseAsync;
        if (s == "phase-sum") return ProtocolId::PhaseSum;
        throw CLI::ValidationError("--protocol", "unknown protocol " + s);
    }

    AttackId parse_attack(const std::string &s)
    {
        if (s == "none") return AttackId::None;
        if (s == "single") return AttackId::Single;
        if (s == "naive") return AttackId::Naive;
        if (s == "cubic") return AttackId::Cubic;
        if (s == "random") return AttackId::Random;
        if (s == "sum-abuse") return AttackId::SumAbuse;
        if (s == "phase-rush") return AttackId::PhaseRush;
        throw CLI::ValidationError("--attack", "unknown attack " + s);
    }

    RunSpec make_spec(const CommonOpts &o)
    {
        RunSpec s;
        s.protocol = parse_protocol(o.protocol);
        s.n = o.n;
        s.attack = parse_attack(o.attack);
        s.target = o.target;
        s.k = o.k;
        s.positions.assign(o.positions.begin(), o.positions.end());
        s.prob = o.prob;
        s.c_param = o.c_param;
        s.oracle_check = o.oracle;
        s.schedule = (o.schedule == "random") ? ScheduleKind::SeededRandom : ScheduleKind::RoundRobin;
        if (s.protocol == ProtocolId::PhaseAsync || s.protocol == ProtocolId::PhaseSum)
        {
            s.phase = PhaseParams::defaults(o.n, o.fseed);
            if (o.l > 0)
            {
                s.phase.l = o.l;
            }
            if (o.m > 0)
            {
                s.phase.m = o.m;
            }
        }
        if (s.attack == AttackId::Random && s.prob <= 0.0)
        {
            s.prob = std::sqrt(8.0 * std::log(static_cast<double>(o.n)) / o.n);
        }
        return s;
    }

    void add_common(CLI::App *cmd, CommonOpts &o)
    {
        cmd->add_option("--n", o.n, "ring size");
        cmd->add_option("--protocol", o.protocol, "basic|alead|phase|phase-sum");
        cmd->add_option("--target", o.target, "attack target leader W");
        cmd->add_option("--k", o.k, "coalition size (cubic, phase-rush)");
        cmd->add_option("--positions", o.positions, "explicit adversary positions")->delimiter(',');
        cmd->add_option("--l", o.l, "phase prefix cutoff l");
        cmd->add_option("--m", o.m, "phase validation alphabet size");
        cmd->add_option("--fseed", o.fseed, "key of the shared random function");
        cmd->add_option("--p", o.prob, "randomized attack placement probability");
        cmd->add_option("--C", o.c_param, "randomized attack repeat-window length");
        cmd->add_option("--trials", o.trials, "number of Monte-Carlo trials");
        cmd->add_option("--seed", o.seed, "master seed");
        cmd->add_option("--schedule", o.schedule, "rr|random");
        cmd->add_flag("--oracle", o.oracle, "cross-check attack transcripts with the validity oracle");
        cmd->add_option("--out", o.out_path, "write the report to this path");
        cmd->add_option("--format", o.format, "json|csv");
        cmd->set_config("--config");
    }

    int emit_report(const TrialReport &report, const CommonOpts &o)
    {
        std::cout << report_to_table(report);
        if (!o.out_path.empty())
        {
            std::ofstream f(o.out_path);
            if (!f)
            {
                std::cerr << "cannot open " << o.out_path << "\n";
                return 1;
            }
            if (o.format == "csv")
            {
                f << report_to_csv(report);
            }
            else
            {
                f << report_to_json(report).dump(2) << '\n';
            }
        }
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"fair leader election on asynchronous rings: simulator and analysis toolkit"};
    app.require_subcommand(1);

    CommonOpts run_o, attack_o, sweep_o;
    auto *run_cmd = app.add_subcommand("run", "honest protocol runs");
    add_common(run_cmd, run_o);
    auto *attack_cmd = app.add_subcommand("attack", "adversarial coalition runs");
    attack_o.attack = "cubic";
    add_common(attack_cmd, attack_o);
    auto *sweep_cmd = app.add_subcommand("sweep", "sweep the target over [0,n)");
    sweep_cmd->add_option("--attack", sweep_o.attack, "attack to sweep");
    add_common(sweep_cmd, sweep_o);

    std::string tree_graph_path, tree_protocol_path, tree_out;
    auto *tree_cmd = app.add_subcommand("tree", "tree decomposition and assure searches");
    tree_cmd->add_option("--graph", tree_graph_path, "graph JSON {n, edges:[[a,b],...]}");
    tree_cmd->add_option("--protocol-file", tree_protocol_path,
                         "protocol tree JSON (see README for the schema)");
    tree_cmd->add_option("--out", tree_out, "write the witness/simulation JSON here");

    auto *reduce_cmd = app.add_subcommand("reduce", "reduction bound checks on synthetic distributions");
    int reduce_n = 8;
    double reduce_eps = 0.01;
    reduce_cmd->add_option("--n", reduce_n, "ring size");
    reduce_cmd->add_option("--eps", reduce_eps, "bias of the synthetic FLE distribution");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (run_cmd->parsed())
        {
            run_o.attack = "none";
            return emit_report(run_trials(make_spec(run_o), run_o.trials, run_o.seed), run_o);
        }
        if (attack_cmd->parsed())
        {
            return emit_report(run_trials(make_spec(attack_o), attack_o.trials, attack_o.seed), attack_o);
        }
        if (sweep_cmd->parsed())
        {
            RunSpec base = make_spec(sweep_o);
            nlohmann::json all = nlohmann::json::array();
            for (Value w = 0; w < base.n; ++w)
            {
                RunSpec s = base;
                s.target = w;
                auto report = run_trials(s, sweep_o.trials, sweep_o.seed);
                std::cout << "w=" << w << " success_rate=" << report.success_rate() << '\n';
                all.push_back(report_to_json(report));
            }
            if (!sweep_o.out_path.empty())
            {
                std::ofstream f(sweep_o.out_path);
                f << all.dump(2) << '\n';
            }
            return 0;
        }
        if (tree_cmd->parsed())
        {
            nlohmann::json out;
            if (!tree_graph_path.empty())
            {
                std::ifstream f(tree_graph_path);
                if (!f)
                {
                    std::cerr << "cannot open " << tree_graph_path << "\n";
                    return 1;
                }
                nlohmann::json j;
                f >> j;
                Graph g;
                g.n = j.at("n").get<int>();
                for (const auto &e : j.at("edges"))
                {
                    g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
                }
                auto sim = decompose_half(g);
                auto check = verify_k_simulation(g, sim.tree, sim.mapping, sim.k);
                out["decomposition"] = {{"k", sim.k},
                                        {"mapping", sim.mapping},
                                        {"tree_n", sim.tree.n},
                                        {"tree_edges", sim.tree.edges},
                                        {"verified", check.ok}};
                std::cout << "decompose_half: k=" << sim.k << " parts=" << sim.tree.n
                          << " verified=" << (check.ok ? "yes" : "no") << '\n';
            }
            if (!tree_protocol_path.empty())
            {
                std::ifstream f(tree_protocol_path);
                if (!f)
                {
                    std::cerr << "cannot open " << tree_protocol_path << "\n";
                    return 1;
                }
                nlohmann::json j;
                f >> j;
                ProtocolTree p;
                p.parties = j.at("parties").get<int>();
                p.input_counts = j.at("inputs").get<std::vector<int>>();
                for (const auto &nj : j.at("nodes"))
                {
                    ProtocolTree::Node node;
                    node.sender = nj.value("sender", -1);
                    node.terminal_bit = nj.value("bit", 0);
                    if (nj.contains("children"))
                    {
                        node.children = nj.at("children").get<std::vector<int>>();
                    }
                    p.nodes.push_back(node);
                }
                p.choice = j.at("choice").get<std::vector<std::vector<std::vector<int>>>>();
                if (j.contains("network"))
                {
                    p.network.n = p.parties;
                    for (const auto &e : j.at("network"))
                    {
                        p.network.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
                    }
                    auto res = tree_assure_search(p);
                    out["assure"] = {{"processor", res.processor}, {"bit", res.bit}};
                    nlohmann::json moves = nlohmann::json::array();
                    for (auto [node, msg] : res.witness.moves)
                    {
                        moves.push_back({{"node", node}, {"message", msg}});
                    }
                    out["assure"]["witness"] = moves;
                    std::cout << "assure: processor=" << res.processor << " bit=" << res.bit << '\n';
                }
                else
                {
                    nlohmann::json found = nlohmann::json::array();
                    for (auto [party, bit] : assure_search_two_party(p))
                    {
                        found.push_back({{"party", party}, {"bit", bit}});
                        std::cout << "party " << party << " assures " << bit << '\n';
                    }
                    out["two_party_assures"] = found;
                }
            }
            if (!tree_out.empty())
            {
                std::ofstream f(tree_out);
                f << out.dump(2) << '\n';
            }
            return 0;
        }
        if (reduce_cmd->parsed())
        {
            OutcomeDistribution d;
            d.n = reduce_n;
            d.p.assign(static_cast<std::size_t>(reduce_n), 0.0);
            for (int j = 0; j < reduce_n; ++j)
            {
                d.p[static_cast<std::size_t>(j)] =
                    (j % 2 == 0) ? 1.0 / reduce_n + reduce_eps : 1.0 / reduce_n - reduce_eps;
            }
            auto coin = coin_from_fle(d);
            std::cout << "synthetic FLE bias eps=" << reduce_eps << " -> coin bias " << coin.bias()
                      << " (bound n*eps/2 = " << reduce_n * reduce_eps / 2 << ")\n";
            CoinDistribution biased{0.6, 0.4, 0.0};
            auto fle = fle_from_coins(biased, 4);
            std::cout << "coins with Pr(0)=0.6 -> Pr(leader 0) = " << fle.p[0] << '\n';
            return 0;
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
