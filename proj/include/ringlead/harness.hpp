#pragma once

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ringlead/attacks.hpp"
#include "ringlead/core.hpp"
#include "ringlead/oracle.hpp"
#include "ringlead/protocols.hpp"
#include "ringlead/simulator.hpp"

namespace ringlead
{
    enum class AttackId : std::uint8_t
    {
        None = 0,
        Single,
        Naive,
        Cubic,
        Random,
        SumAbuse,
        PhaseRush,
    };

    inline std::string to_string(ProtocolId p)
    {
        switch (p)
        {
        case ProtocolId::BasicLead: return "basic";
        case ProtocolId::ALeadUni: return "alead";
        case ProtocolId::PhaseAsync: return "phase";
        case ProtocolId::PhaseSum: return "phase-sum";
        }
        return "?";
    }

    inline std::string to_string(AttackId a)
    {
        switch (a)
        {
        case AttackId::None: return "none";
        case AttackId::Single: return "single";
        case AttackId::Naive: return "naive";
        case AttackId::Cubic: return "cubic";
        case AttackId::Random: return "random";
        case AttackId::SumAbuse: return "sum-abuse";
        case AttackId::PhaseRush: return "phase-rush";
        }
        return "?";
    }

    struct RunSpec
    {
        ProtocolId protocol = ProtocolId::ALeadUni;
        int n = 8;
        ProcessorId origin = 0;
        PhaseParams phase{};
        ScheduleKind schedule = ScheduleKind::RoundRobin;

        AttackId attack = AttackId::None;
        Value target = 0;
        int k = 0;                           // cubic / phase-rush coalition size
        std::vector<ProcessorId> positions;  // single / naive explicit placement
        double prob = 0.0;                   // randomized placement probability
        int c_param = 3;                     // randomized repeat-window length
        bool oracle_check = false;
    };

    // Total variation distance between the valid-outcome-conditioned
    // empirical distribution and uniform. FAIL outcomes are excluded here
    // and reported separately.
    inline double tv_distance(const std::vector<std::uint64_t> &hist, int n)
    {
        if (static_cast<int>(hist.size()) != n)
        {
            throw std::invalid_argument("tv_distance: histogram size mismatch");
        }
        std::uint64_t total = 0;
        for (std::uint64_t c : hist)
        {
            total += c;
        }
        if (total == 0)
        {
            throw std::invalid_argument("tv_distance: empty histogram");
        }
        double tv = 0.0;
        for (std::uint64_t c : hist)
        {
            tv += std::abs(static_cast<double>(c) / static_cast<double>(total) - 1.0 / n);
        }
        return tv / 2.0;
    }

    struct TrialReport
    {
        RunSpec spec;
        std::uint64_t master_seed = 0;
        std::uint64_t trials = 0;
        std::vector<std::uint64_t> histogram; // valid outcomes, size n
        std::uint64_t fail_abort = 0;
        std::uint64_t fail_disagreement = 0;
        std::uint64_t fail_nontermination = 0;
        std::uint64_t target_hits = 0;     // attack runs: trials electing the target
        std::uint64_t oracle_checked = 0;  // transcripts cross-checked
        std::uint64_t oracle_agreed = 0;
        double wall_seconds = 0.0;

        std::uint64_t valid_total() const
        {
            std::uint64_t t = 0;
            for (std::uint64_t c : histogram)
            {
                t += c;
            }
            return t;
        }

        std::uint64_t fail_total() const
        {
            return fail_abort + fail_disagreement + fail_nontermination;
        }

        double fail_rate() const
        {
            return trials ? static_cast<double>(fail_total()) / static_cast<double>(trials) : 0.0;
        }

        double success_rate() const
        {
            return trials ? static_cast<double>(target_hits) / static_cast<double>(trials) : 0.0;
        }

        // Empirical bias: max_j Pr(j) - 1/n over all trials.
        double empirical_bias() const
        {
            double top = 0.0;
            for (std::uint64_t c : histogram)
            {
                top = std::max(top, static_cast<double>(c));
            }
            return trials ? top / static_cast<double>(trials) - 1.0 / spec.n : 0.0;
        }

        double tv_to_uniform() const { return tv_distance(histogram, spec.n); }
    };

    namespace detail
    {
        inline std::vector<StrategyPtr> build_honest(const RunSpec &s, std::uint64_t input_seed)
        {
            switch (s.protocol)
            {
            case ProtocolId::BasicLead:
                return honest_basic_lead(s.n, input_seed);
            case ProtocolId::ALeadUni:
                return honest_alead(s.n, s.origin, input_seed);
            case ProtocolId::PhaseAsync:
                return honest_phase(s.n, s.phase, false, input_seed);
            case ProtocolId::PhaseSum:
                return honest_phase(s.n, s.phase, true, input_seed);
            }
            throw std::logic_error("unknown protocol");
        }
    }

    struct TrialSetup
    {
        std::vector<StrategyPtr> strategies;
        std::vector<ProcessorId> coalition;         // as configured
        std::vector<ProcessorId> oracle_coalition;  // effective, for the validity oracle
        ProcessorId origin = 0;
    };

    // Builds one trial's strategy vector: honest protocol plus the attack
    // overlay. For A-LEAD attacks needing an honest origin the origin is
    // relocated to the first honest processor.
    inline TrialSetup build_trial(const RunSpec &s, std::uint64_t input_seed, std::uint64_t placement_seed)
    {
        TrialSetup setup;
        setup.origin = s.origin;

        std::map<ProcessorId, StrategyPtr> overlay;
        switch (s.attack)
        {
        case AttackId::None:
            break;
        case AttackId::Single:
        {
            if (s.protocol != ProtocolId::BasicLead)
            {
                throw std::invalid_argument("single attack targets basic");
            }
            const ProcessorId pos = s.positions.empty() ? 0 : s.positions.front();
            overlay[pos] = std::make_unique<BasicSingleAttack>(s.n, s.target);
            setup.coalition = {pos};
            break;
        }
        case AttackId::Naive:
        {
            if (s.protocol != ProtocolId::ALeadUni)
            {
                throw std::invalid_argument("naive attack targets alead");
            }
            setup.coalition = s.positions;
            while (std::count(setup.coalition.begin(), setup.coalition.end(), setup.origin) != 0)
            {
                setup.origin = (setup.origin + 1) % s.n;
            }
            overlay = naive_attack(s.n, setup.coalition, setup.origin, s.target);
            break;
        }
        case AttackId::Cubic:
        {
            if (s.protocol != ProtocolId::ALeadUni)
            {
                throw std::invalid_argument("cubic attack targets alead");
            }
            auto placement = cubic_attack(s.n, s.k, cubic_distances(s.k, s.n), setup.origin, s.target);
            setup.coalition = placement.coalition;
            overlay = std::move(placement.strategies);
            break;
        }
        case AttackId::Random:
        {
            if (s.protocol != ProtocolId::ALeadUni)
            {
                throw std::invalid_argument("randomized attack targets alead");
            }
            auto placement = draw_random_placement(s.n, s.prob, setup.origin, placement_seed);
            setup.coalition = placement.drawn;
            setup.oracle_coalition = placement.effective;
            for (ProcessorId a : placement.effective)
            {
                overlay[a] = std::make_unique<RandomizedAttackStrategy>(s.n, s.c_param, s.target);
            }
            break;
        }
        case AttackId::SumAbuse:
        {
            if (s.protocol != ProtocolId::PhaseSum)
            {
                throw std::invalid_argument("sum-abuse attack targets phase-sum");
            }
            auto placement = sum_abuse_attack(s.n, s.target, s.phase.m);
            setup.coalition = placement.coalition;
            overlay = std::move(placement.strategies);
            break;
        }
        case AttackId::PhaseRush:
        {
            if (s.protocol != ProtocolId::PhaseAsync)
            {
                throw std::invalid_argument("phase-rush attack targets phase");
            }
            auto placement = phase_rushing_attack(s.n, s.k, s.phase, s.target);
            setup.coalition = placement.coalition;
            overlay = std::move(placement.strategies);
            break;
        }
        }
        if (setup.oracle_coalition.empty())
        {
            setup.oracle_coalition = setup.coalition;
        }

        RunSpec adjusted = s;
        adjusted.origin = setup.origin;
        setup.strategies = with_overlay(detail::build_honest(adjusted, input_seed), std::move(overlay));
        return setup;
    }

    // Deterministic Monte-Carlo runner: per-trial seeds are derived from
    // (master seed, trial index), so reports are reproducible regardless of
    // execution order.
    inline TrialReport run_trials(const RunSpec &s, std::uint64_t trials, std::uint64_t master_seed)
    {
        if (trials < 1)
        {
            throw std::invalid_argument("run_trials: need at least one trial");
        }
        const auto t0 = std::chrono::steady_clock::now();

        TrialReport report;
        report.spec = s;
        report.master_seed = master_seed;
        report.trials = trials;
        report.histogram.assign(static_cast<std::size_t>(s.n), 0);

        for (std::uint64_t i = 0; i < trials; ++i)
        {
            const std::uint64_t input_seed = derive_seed(master_seed, i, 1);
            const std::uint64_t placement_seed = derive_seed(master_seed, i, 2);
            auto setup = build_trial(s, input_seed, placement_seed);

            RingConfig cfg;
            cfg.n = s.n;
            cfg.origin = setup.origin;
            cfg.coalition = setup.coalition;
            cfg.schedule = s.schedule;
            cfg.schedule_seed = derive_seed(master_seed, i, 3);
            cfg.record_events = s.oracle_check; // reports need outcomes only

            auto result = simulate(cfg, setup.strategies);
            if (result.outcome.elected)
            {
                ++report.histogram[static_cast<std::size_t>(result.outcome.leader)];
                if (s.attack != AttackId::None && result.outcome.leader == s.target)
                {
                    ++report.target_hits;
                }
            }
            else
            {
                switch (result.outcome.reason)
                {
                case FailReason::Abort: ++report.fail_abort; break;
                case FailReason::Disagreement: ++report.fail_disagreement; break;
                case FailReason::Nontermination: ++report.fail_nontermination; break;
                }
            }

            if (s.oracle_check &&
                (s.protocol == ProtocolId::ALeadUni && s.attack != AttackId::None))
            {
                ++report.oracle_checked;
                const Verdict v = validate_execution(result.transcript, setup.oracle_coalition, s.n);
                const bool match = v.valid
                                       ? (result.outcome.elected && result.outcome.leader == v.sum)
                                       : !result.outcome.elected;
                if (match)
                {
                    ++report.oracle_agreed;
                }
            }
        }

        report.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return report;
    }

    inline nlohmann::json report_to_json(const TrialReport &r)
    {
        nlohmann::json j;
        j["protocol"] = to_string(r.spec.protocol);
        j["n"] = r.spec.n;
        j["origin"] = r.spec.origin;
        j["schedule"] = r.spec.schedule == ScheduleKind::RoundRobin ? "rr" : "random";
        j["attack"] = to_string(r.spec.attack);
        if (r.spec.attack != AttackId::None)
        {
            j["target"] = r.spec.target;
            j["success_rate"] = r.success_rate();
        }
        if (r.spec.protocol == ProtocolId::PhaseAsync || r.spec.protocol == ProtocolId::PhaseSum)
        {
            j["l"] = r.spec.phase.l;
            j["m"] = r.spec.phase.m;
            j["fseed"] = r.spec.phase.fseed;
        }
        j["seed"] = r.master_seed;
        j["trials"] = r.trials;
        j["histogram"] = r.histogram;
        j["fails"] = {{"abort", r.fail_abort},
                      {"disagreement", r.fail_disagreement},
                      {"nontermination", r.fail_nontermination}};
        j["fail_rate"] = r.fail_rate();
        if (r.valid_total() > 0)
        {
            j["tv_distance"] = r.tv_to_uniform();
            j["empirical_bias"] = r.empirical_bias();
        }
        if (r.oracle_checked > 0)
        {
            j["oracle"] = {{"checked", r.oracle_checked}, {"agreed", r.oracle_agreed}};
        }
        j["wall_seconds"] = r.wall_seconds;
        return j;
    }

    inline std::string report_to_csv(const TrialReport &r)
    {
        std::ostringstream ss;
        ss << "outcome,count\n";
        for (int jdx = 0; jdx < r.spec.n; ++jdx)
        {
            ss << jdx << ',' << r.histogram[static_cast<std::size_t>(jdx)] << '\n';
        }
        ss << "abort," << r.fail_abort << '\n';
        ss << "disagreement," << r.fail_disagreement << '\n';
        ss << "nontermination," << r.fail_nontermination << '\n';
        return ss.str();
    }

    inline std::string report_to_table(const TrialReport &r)
    {
        std::ostringstream ss;
        ss << "protocol=" << to_string(r.spec.protocol) << " n=" << r.spec.n
           << " attack=" << to_string(r.spec.attack);
        if (r.spec.attack != AttackId::None)
        {
            ss << " target=" << r.spec.target;
        }
        ss << " trials=" << r.trials << " seed=" << r.master_seed << '\n';
        ss << "outcome histogram:";
        for (int jdx = 0; jdx < r.spec.n; ++jdx)
        {
            ss << ' ' << r.histogram[static_cast<std::size_t>(jdx)];
        }
        ss << '\n';
        ss << "fails: abort=" << r.fail_abort << " disagreement=" << r.fail_disagreement
           << " nontermination=" << r.fail_nontermination << '\n';
        if (r.valid_total() > 0)
        {
            ss << "tv_distance=" << r.tv_to_uniform() << " empirical_bias=" << r.empirical_bias()
               << '\n';
        }
        if (r.spec.attack != AttackId::None)
        {
            ss << "success_rate=" << r.success_rate() << '\n';
        }
        if (r.oracle_checked > 0)
        {
            ss << "oracle: " << r.oracle_agreed << '/' << r.oracle_checked << " agreed\n";
        }
        return ss.str();
    }
}
