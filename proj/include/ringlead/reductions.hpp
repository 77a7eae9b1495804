#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ringlead/core.hpp"

namespace ringlead
{
    // Distribution over valid outcomes plus a FAIL mass. Used for the exact
    // (sampling-free) reduction bound checks.
    struct OutcomeDistribution
    {
        int n = 0;
        std::vector<double> p; // per valid outcome
        double fail = 0.0;

        void validate(double tol = 1e-9) const
        {
            if (static_cast<int>(p.size()) != n)
            {
                throw std::invalid_argument("OutcomeDistribution: wrong support size");
            }
            double total = fail;
            for (double x : p)
            {
                if (x < -tol)
                {
                    throw std::invalid_argument("OutcomeDistribution: negative probability");
                }
                total += x;
            }
            if (std::abs(total - 1.0) > tol)
            {
                throw std::invalid_argument("OutcomeDistribution: probabilities must sum to 1");
            }
        }

        double max_bias() const
        {
            double m = 0.0;
            for (double x : p)
            {
                m = std::max(m, x - 1.0 / n);
            }
            return m;
        }
    };

    // Rational utility: u maps valid outcomes into [0,1], u(FAIL) = 0.
    struct UtilityFunction
    {
        std::vector<double> u;

        void validate() const
        {
            for (double x : u)
            {
                if (x < 0.0 || x > 1.0)
                {
                    throw std::invalid_argument("UtilityFunction: values must lie in [0,1]");
                }
            }
        }
    };

    inline double expected_utility(const OutcomeDistribution &dist, const UtilityFunction &uf)
    {
        dist.validate();
        uf.validate();
        if (uf.u.size() != dist.p.size())
        {
            throw std::invalid_argument("expected_utility: support mismatch");
        }
        double e = 0.0;
        for (std::size_t j = 0; j < dist.p.size(); ++j)
        {
            e += dist.p[j] * uf.u[j]; // FAIL contributes 0
        }
        return e;
    }

    struct CoinDistribution
    {
        double p0 = 0.0;
        double p1 = 0.0;
        double fail = 0.0;

        double bias() const { return std::max(p0, p1) - 0.5; }
    };

    // Leader election to coin toss: output the elected index mod 2.
    // Bias bound: a max-bias-eps FLE yields a coin with bias <= (n/2) * eps.
    inline CoinDistribution coin_from_fle(const OutcomeDistribution &dist)
    {
        dist.validate();
        if (dist.n % 2 != 0)
        {
            throw std::invalid_argument("coin_from_fle: needs an even number of processors");
        }
        CoinDistribution c;
        c.fail = dist.fail;
        for (int j = 0; j < dist.n; ++j)
        {
            (j % 2 == 0 ? c.p0 : c.p1) += dist.p[static_cast<std::size_t>(j)];
        }
        return c;
    }

    // Coin toss to leader election: log2(n) independent instances, leader
    // index is the concatenation of the bits.
    inline OutcomeDistribution fle_from_coins(const CoinDistribution &coin, int n)
    {
        int bits = 0;
        while ((1 << bits) < n)
        {
            ++bits;
        }
        if ((1 << bits) != n)
        {
            throw std::invalid_argument("fle_from_coins: n must be a power of two");
        }
        OutcomeDistribution d;
        d.n = n;
        d.p.assign(static_cast<std::size_t>(n), 0.0);
        const double valid = coin.p0 + coin.p1;
        // Any instance failing fails the election.
        d.fail = 1.0 - std::pow(valid, bits);
        for (int j = 0; j < n; ++j)
        {
            double prob = 1.0;
            for (int b = 0; b < bits; ++b)
            {
                prob *= ((j >> b) & 1) ? coin.p1 : coin.p0;
            }
            d.p[static_cast<std::size_t>(j)] = prob;
        }
        return d;
    }

    // ------------------------------------------------------------------
    // Live runners: composed protocol executions. Each instance owns a
    // derived seed; instances are run as separate simulations.

    struct CoinOutcome
    {
        bool valid = false;
        int bit = 0;
    };

    using FleRunner = std::function<Outcome(std::uint64_t seed)>;
    using CoinRunner = std::function<CoinOutcome(std::uint64_t seed)>;

    inline CoinRunner coin_from_fle_runner(FleRunner fle, int n)
    {
        if (n % 2 != 0)
        {
            throw std::invalid_argument("coin_from_fle_runner: needs even n");
        }
        return [fle = std::move(fle)](std::uint64_t seed) {
            const Outcome o = fle(seed);
            CoinOutcome c;
            if (o.elected)
            {
                c.valid = true;
                c.bit = static_cast<int>(o.leader % 2);
            }
            return c;
        };
    }

    inline FleRunner fle_from_coins_runner(CoinRunner coin, int n)
    {
        int bits = 0;
        while ((1 << bits) < n)
        {
            ++bits;
        }
        if ((1 << bits) != n)
        {
            throw std::invalid_argument("fle_from_coins_runner: n must be a power of two");
        }
        return [coin = std::move(coin), bits](std::uint64_t seed) {
            Value leader = 0;
            for (int b = 0; b < bits; ++b)
            {
                const CoinOutcome c = coin(derive_seed(seed, static_cast<std::uint64_t>(b)));
                if (!c.valid)
                {
                    return Outcome::make_fail(FailReason::Abort);
                }
                leader |= static_cast<Value>(c.bit) << b;
            }
            return Outcome::make_elected(leader);
        };
    }

    // Fair bit-consensus contract: given the honest processors' input bits
    // and a seed, produce an outcome. The reduction draws uniform input bits
    // and runs the consensus; the coin bias is at most eps + 2^(k-n).
    using BitConsensusRunner = std::function<CoinOutcome(const std::vector<int> &honest_inputs, std::uint64_t seed)>;

    inline CoinRunner coin_from_bit_consensus(BitConsensusRunner bc, int n, int k)
    {
        const int honest = n - k;
        if (honest <= 0)
        {
            throw std::invalid_argument("coin_from_bit_consensus: need at least one honest processor");
        }
        return [bc = std::move(bc), honest](std::uint64_t seed) {
            RandomString rs(derive_seed(seed, 0xb17));
            std::vector<int> inputs(static_cast<std::size_t>(honest));
            for (auto &b : inputs)
            {
                b = static_cast<int>(rs.next_below(2));
            }
            return bc(inputs, derive_seed(seed, 0xc0));
        };
    }
}
