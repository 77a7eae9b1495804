#pragma once

#include <cmath>
#include <vector>

#include "ringlead/core.hpp"
#include "ringlead/randfn.hpp"

namespace ringlead
{
    enum class ProtocolId : std::uint8_t
    {
        BasicLead = 0,
        ALeadUni = 1,
        PhaseAsync = 2,
        PhaseSum = 3,
    };

    inline Value mod_n(Value v, int n)
    {
        const Value m = v % n;
        return m < 0 ? m + n : m;
    }

    // Parameters of the phase-validation protocol. Defaults follow the
    // protocol definition (l = ceil(10*sqrt(n)), m = 2n^2); desk-scale runs
    // override l since the default exceeds n for small rings.
    struct PhaseParams
    {
        int l = 1;
        Value m = 2;
        std::uint64_t fseed = 0;

        static PhaseParams defaults(int n, std::uint64_t fseed = 0)
        {
            PhaseParams p;
            p.l = static_cast<int>(std::ceil(10.0 * std::sqrt(static_cast<double>(n))));
            if (p.l >= n)
            {
                p.l = n - 1;
            }
            p.m = 2LL * n * n;
            p.fseed = fseed;
            return p;
        }

        void validate(int n) const
        {
            if (l < 1 || l >= n)
            {
                throw std::invalid_argument("PhaseParams: need 1 <= l < n");
            }
            if (m < 2)
            {
                throw std::invalid_argument("PhaseParams: need m >= 2");
            }
        }
    };

    // Per-processor secret draws. Strategies pull these from the processor's
    // random string in a fixed order (d first, then v) so tests can
    // reconstruct them from the seed alone.
    inline Value draw_data_secret(RandomString &rs, int n) { return rs.next_below(n); }
    inline Value draw_validation_secret(RandomString &rs, Value m) { return rs.next_below(m); }

    // ------------------------------------------------------------------
    // Basic-LEAD: every processor wakes, sends its secret, forwards n-1
    // incoming values, checks that the n-th incoming equals its own secret
    // and outputs the sum of all incoming values mod n.
    class BasicLeadStrategy final : public Strategy
    {
    public:
        BasicLeadStrategy(int n, std::uint64_t rand_seed) : m_n(n), m_rs(rand_seed)
        {
            m_d = draw_data_secret(m_rs, n);
        }

        Value data_secret() const { return m_d; }

        void on_wake(Emitter &out) override { out.send({m_d, MsgTag::Plain}); }

        void on_receive(Emitter &out, const Message &msg) override
        {
            const Value v = mod_n(msg.value, m_n);
            ++m_recvs;
            m_sum = mod_n(m_sum + v, m_n);
            if (m_recvs < m_n)
            {
                out.send({v, MsgTag::Plain});
            }
            else
            {
                if (v == m_d)
                {
                    out.terminate(m_sum);
                }
                else
                {
                    out.terminate_bot();
                }
            }
        }

    private:
        int m_n;
        RandomString m_rs;
        Value m_d = 0;
        Value m_sum = 0;
        int m_recvs = 0;
    };

    // ------------------------------------------------------------------
    // A-LEAD^uni secret sharing. The origin wakes, sends its secret and then
    // behaves like a pipe; normal processors buffer each value for one round.
    // Everyone checks that the n-th incoming value is its own secret.
    class ALeadStrategy final : public Strategy
    {
    public:
        ALeadStrategy(ProcessorId id, int n, ProcessorId origin, std::uint64_t rand_seed)
            : m_n(n), m_is_origin(id == origin), m_rs(rand_seed)
        {
            m_d = draw_data_secret(m_rs, n);
            m_buffer = m_d;
        }

        Value data_secret() const { return m_d; }

        void on_wake(Emitter &out) override
        {
            if (m_is_origin)
            {
                out.send({m_d, MsgTag::Plain});
            }
        }

        void on_receive(Emitter &out, const Message &msg) override
        {
            const Value v = mod_n(msg.value, m_n);
            ++m_recvs;
            m_sum = mod_n(m_sum + v, m_n);
            if (m_recvs < m_n)
            {
                if (m_is_origin)
                {
                    out.send({v, MsgTag::Plain});
                }
                else
                {
                    out.send({m_buffer, MsgTag::Plain});
                    m_buffer = v;
                }
            }
            else
            {
                if (!m_is_origin)
                {
                    out.send({m_buffer, MsgTag::Plain});
                    m_buffer = v;
                }
                if (v == m_d)
                {
                    out.terminate(m_sum);
                }
                else
                {
                    out.terminate_bot();
                }
            }
        }

    private:
        int m_n;
        bool m_is_origin;
        RandomString m_rs;
        Value m_d = 0;
        Value m_buffer = 0;
        Value m_sum = 0;
        int m_recvs = 0;
    };

    // ------------------------------------------------------------------
    // PhaseAsyncLead. Odd incoming messages are data, even ones are
    // validation; a wrong kind at either parity aborts. Processor p is the
    // validator of round p+1: it originates its validation value there and
    // checks the returned one. The output is f over the shared data values
    // and the first n-l validation values (or their plain sum for the
    // deliberately flawed sum variant).
    class PhaseStrategy final : public Strategy
    {
    public:
        PhaseStrategy(ProcessorId id, int n, const PhaseParams &params, bool sum_output,
                      std::uint64_t rand_seed)
            : m_id(id), m_n(n), m_params(params), m_sum_output(sum_output), m_rs(rand_seed)
        {
            params.validate(n);
            m_d = draw_data_secret(m_rs, n);
            m_v = draw_validation_secret(m_rs, params.m);
            m_buffer = m_d;
            m_dhat.assign(static_cast<std::size_t>(n), 0);
            m_vhat.assign(static_cast<std::size_t>(n) + 1, 0);
            m_dhat[static_cast<std::size_t>(id)] = m_d;
        }

        Value data_secret() const { return m_d; }
        Value validation_secret() const { return m_v; }

        void on_wake(Emitter &out) override
        {
            if (m_id == 0)
            {
                out.send({m_d, MsgTag::Data});
                out.send({m_v, MsgTag::Validation});
            }
        }

        void on_receive(Emitter &out, const Message &msg) override
        {
            ++m_recvs;
            const bool expect_data = (m_recvs % 2) == 1;
            if (expect_data != (msg.tag == MsgTag::Data))
            {
                out.terminate_bot();
                return;
            }
            if (expect_data)
            {
                on_data(out, mod_n(msg.value, m_n));
            }
            else
            {
                on_validation(out, mod_m(msg.value));
            }
        }

    private:
        Value mod_m(Value v) const
        {
            const Value r = v % m_params.m;
            return r < 0 ? r + m_params.m : r;
        }

        int validator_round() const { return m_id + 1; }

        void on_data(Emitter &out, Value v)
        {
            ++m_data_recvs;
            if (m_id == 0)
            {
                // Origin: record and hold; its data send for the next round
                // goes out when the current validation round completes.
                m_buffer = v;
                m_dhat[static_cast<std::size_t>(mod_n(-m_data_recvs, m_n))] = v;
                if (m_data_recvs == m_n && v != m_d)
                {
                    out.terminate_bot();
                }
                return;
            }
            out.send({m_buffer, MsgTag::Data});
            m_buffer = v;
            m_dhat[static_cast<std::size_t>(mod_n(m_id - m_data_recvs, m_n))] = v;
            if (m_data_recvs == validator_round())
            {
                out.send({m_v, MsgTag::Validation});
            }
            if (m_data_recvs == m_n && v != m_d)
            {
                out.terminate_bot();
            }
        }

        void on_validation(Emitter &out, Value v)
        {
            ++m_val_recvs;
            const int round = m_val_recvs;
            if (round == validator_round())
            {
                if (v != m_v)
                {
                    out.terminate_bot();
                    return;
                }
                m_vhat[static_cast<std::size_t>(round)] = v;
            }
            else
            {
                m_vhat[static_cast<std::size_t>(round)] = v;
                out.send({v, MsgTag::Validation});
            }
            if (m_id == 0 && round < m_n)
            {
                out.send({m_buffer, MsgTag::Data});
            }
            if (round == m_n)
            {
                out.terminate(final_output());
            }
        }

        Value final_output() const
        {
            if (m_sum_output)
            {
                Value s = 0;
                for (Value x : m_dhat)
                {
                    s = mod_n(s + x, m_n);
                }
                return s;
            }
            std::vector<Value> vv(m_vhat.begin() + 1, m_vhat.begin() + 1 + (m_n - m_params.l));
            return f_eval(m_params.fseed, m_dhat, vv, m_n);
        }

        ProcessorId m_id;
        int m_n;
        PhaseParams m_params;
        bool m_sum_output;
        RandomString m_rs;
        Value m_d = 0;
        Value m_v = 0;
        Value m_buffer = 0;
        int m_recvs = 0;
        int m_data_recvs = 0;
        int m_val_recvs = 0;
        std::vector<Value> m_dhat;
        std::vector<Value> m_vhat; // indexed by round, 1..n
    };

    // ------------------------------------------------------------------
    // Honest strategy vectors.

    inline std::vector<StrategyPtr> honest_basic_lead(int n, std::uint64_t input_seed)
    {
        std::vector<StrategyPtr> s;
        s.reserve(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p)
        {
            s.push_back(std::make_unique<BasicLeadStrategy>(n, derive_seed(input_seed, static_cast<std::uint64_t>(p))));
        }
        return s;
    }

    inline std::vector<StrategyPtr> honest_alead(int n, ProcessorId origin, std::uint64_t input_seed)
    {
        std::vector<StrategyPtr> s;
        s.reserve(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p)
        {
            s.push_back(std::make_unique<ALeadStrategy>(p, n, origin, derive_seed(input_seed, static_cast<std::uint64_t>(p))));
        }
        return s;
    }

    inline std::vector<StrategyPtr> honest_phase(int n, const PhaseParams &params, bool sum_output,
                                                 std::uint64_t input_seed)
    {
        std::vector<StrategyPtr> s;
        s.reserve(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p)
        {
            s.push_back(std::make_unique<PhaseStrategy>(p, n, params, sum_output,
                                                        derive_seed(input_seed, static_cast<std::uint64_t>(p))));
        }
        return s;
    }
}
