#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "ringlead/core.hpp"
#include "ringlead/oracle.hpp"
#include "ringlead/protocols.hpp"
#include "ringlead/randfn.hpp"

namespace ringlead
{
    // ------------------------------------------------------------------
    // Basic-LEAD, single adversary: stay silent until n-1 values arrived,
    // then pick the own value that steers the total sum to w and complete
    // the protocol (forward everything received, in order).
    class BasicSingleAttack final : public Strategy
    {
    public:
        BasicSingleAttack(int n, Value w) : m_n(n), m_w(w) {}

        void on_receive(Emitter &out, const Message &msg) override
        {
            m_recv.push_back(mod_n(msg.value, m_n));
            if (static_cast<int>(m_recv.size()) == m_n - 1)
            {
                Value others = 0;
                for (Value v : m_recv)
                {
                    others = mod_n(others + v, m_n);
                }
                out.send({mod_n(m_w - others, m_n), MsgTag::Plain});
                for (Value v : m_recv)
                {
                    out.send({v, MsgTag::Plain});
                }
                out.terminate(m_w);
            }
        }

    private:
        int m_n;
        Value m_w;
        std::vector<Value> m_recv;
    };

    // ------------------------------------------------------------------
    // Naive attack on A-LEAD^uni: forward the first n-k values immediately,
    // then one correcting message, k-l_j-1 zeros, and the segment secrets.
    // Needs every honest segment of length <= k-1 and an honest origin.
    class NaiveAttackStrategy final : public Strategy
    {
    public:
        NaiveAttackStrategy(int n, int k, int segment_len, Value w)
            : m_n(n), m_k(k), m_lj(segment_len), m_w(w)
        {
        }

        void on_receive(Emitter &out, const Message &msg) override
        {
            const Value v = mod_n(msg.value, m_n);
            m_recv.push_back(v);
            const int got = static_cast<int>(m_recv.size());
            if (got < m_n - m_k)
            {
                out.send({v, MsgTag::Plain});
                return;
            }
            if (got > m_n - m_k)
            {
                return; // absorbed; all n messages already sent
            }
            out.send({v, MsgTag::Plain});

            Value all = 0;
            for (Value x : m_recv)
            {
                all = mod_n(all + x, m_n);
            }
            Value seg = 0;
            for (int t = 0; t < m_lj; ++t)
            {
                seg = mod_n(seg + m_recv[m_recv.size() - 1 - static_cast<std::size_t>(t)], m_n);
            }
            out.send({mod_n(m_w - all - seg, m_n), MsgTag::Plain});
            for (int t = 0; t < m_k - m_lj - 1; ++t)
            {
                out.send({0, MsgTag::Plain});
            }
            for (int t = m_lj; t >= 1; --t)
            {
                out.send({m_recv[m_recv.size() - static_cast<std::size_t>(t)], MsgTag::Plain});
            }
            out.terminate(m_w);
        }

    private:
        int m_n;
        int m_k;
        int m_lj;
        Value m_w;
        std::vector<Value> m_recv;
    };

    // Builds the coalition strategies, refusing infeasible placements.
    inline std::map<ProcessorId, StrategyPtr> naive_attack(int n, const std::vector<ProcessorId> &coalition,
                                                           ProcessorId origin, Value w)
    {
        const int k = static_cast<int>(coalition.size());
        if (k < 1 || k >= n)
        {
            throw std::invalid_argument("naive_attack: need 1 <= k < n");
        }
        for (ProcessorId a : coalition)
        {
            if (a == origin)
            {
                throw std::invalid_argument("naive_attack: the origin must be honest");
            }
        }
        std::map<ProcessorId, StrategyPtr> out;
        for (const auto &seg : segment_map(n, coalition))
        {
            if (seg.length() > k - 1)
            {
                throw std::invalid_argument("naive_attack: honest segment longer than k-1");
            }
            out[seg.adversary] = std::make_unique<NaiveAttackStrategy>(n, k, seg.length(), w);
        }
        return out;
    }

    // ------------------------------------------------------------------
    // Distance schedule for the cubic attack. Canonical distances are
    // l_i = (k+1-i)(k-1); when n is smaller than the canonical total the
    // surplus is removed from the front, preserving the relaxation
    // l_k <= k-1 and l_i <= l_{i+1} + k-1.
    inline std::vector<int> cubic_distances(int k, int n)
    {
        if (k < 2)
        {
            throw std::invalid_argument("cubic_distances: need k >= 2");
        }
        std::vector<int> caps(static_cast<std::size_t>(k));
        long long cap_total = 0;
        for (int i = 1; i <= k; ++i)
        {
            caps[static_cast<std::size_t>(i - 1)] = (k + 1 - i) * (k - 1);
            cap_total += caps[static_cast<std::size_t>(i - 1)];
        }
        const long long need = static_cast<long long>(n) - k;
        if (need < 0 || need > cap_total)
        {
            throw std::invalid_argument(
                "cubic_distances: no feasible schedule; the attack needs k >= 2*cbrt(n)");
        }
        long long surplus = cap_total - need;
        std::vector<int> l = caps;
        for (std::size_t i = 0; i < l.size() && surplus > 0; ++i)
        {
            const int cut = static_cast<int>(std::min<long long>(surplus, l[i]));
            l[i] -= cut;
            surplus -= cut;
        }
        return l;
    }

    // Cubic attack, code for adversary a_i with distance l_i: transfer
    // n-k-l_i messages, send k-1 zeros, wait for l_i more, then the
    // correcting message and the replay of the last l_i received values.
    class CubicAttackStrategy final : public Strategy
    {
    public:
        CubicAttackStrategy(int n, int k, int li, Value w) : m_n(n), m_k(k), m_li(li), m_w(w) {}

        void on_wake(Emitter &out) override
        {
            if (m_n - m_k - m_li == 0)
            {
                for (int t = 0; t < m_k - 1; ++t)
                {
                    out.send({0, MsgTag::Plain});
                }
            }
        }

        void on_receive(Emitter &out, const Message &msg) override
        {
            const Value v = mod_n(msg.value, m_n);
            m_recv.push_back(v);
            const int count = static_cast<int>(m_recv.size());
            if (count <= m_n - m_k - m_li)
            {
                out.send({v, MsgTag::Plain});
            }
            if (count == m_n - m_k - m_li)
            {
                for (int t = 0; t < m_k - 1; ++t)
                {
                    out.send({0, MsgTag::Plain});
                }
            }
            if (count == m_n - m_k)
            {
                Value sum = 0;
                for (Value x : m_recv)
                {
                    sum = mod_n(sum + x, m_n);
                }
                out.send({mod_n(m_w - sum, m_n), MsgTag::Plain});
                for (int j = m_n - m_k - m_li; j < m_n - m_k; ++j)
                {
                    out.send({m_recv[static_cast<std::size_t>(j)], MsgTag::Plain});
                }
                out.terminate(m_w);
            }
        }

    private:
        int m_n;
        int m_k;
        int m_li;
        Value m_w;
        std::vector<Value> m_recv;
    };

    struct CubicPlacement
    {
        std::vector<ProcessorId> coalition; // a_1..a_k ring positions
        std::map<ProcessorId, StrategyPtr> strategies;
    };

    // Places a_1 right after the origin so the origin stays honest inside
    // the last segment, which the canonical and front-reduced schedules
    // keep non-empty.
    inline CubicPlacement cubic_attack(int n, int k, const std::vector<int> &distances, ProcessorId origin, Value w)
    {
        if (static_cast<int>(distances.size()) != k)
        {
            throw std::invalid_argument("cubic_attack: need k distances");
        }
        if (std::accumulate(distances.begin(), distances.end(), 0) + k != n)
        {
            throw std::invalid_argument("cubic_attack: distances must sum with k to n");
        }
        if (distances.back() > k - 1)
        {
            throw std::invalid_argument("cubic_attack: l_k must be <= k-1");
        }
        for (int i = 0; i + 1 < k; ++i)
        {
            if (distances[static_cast<std::size_t>(i)] > distances[static_cast<std::size_t>(i + 1)] + k - 1)
            {
                throw std::invalid_argument("cubic_attack: need l_i <= l_{i+1} + k-1");
            }
        }

        CubicPlacement placement;
        ProcessorId pos = (origin + 1) % n;
        for (int i = 0; i < k; ++i)
        {
            placement.coalition.push_back(pos);
            pos = (pos + distances[static_cast<std::size_t>(i)] + 1) % n;
        }
        for (ProcessorId a : placement.coalition)
        {
            if (a == origin)
            {
                throw std::invalid_argument("cubic_attack: placement would cover the origin");
            }
        }
        for (int i = 0; i < k; ++i)
        {
            placement.strategies[placement.coalition[static_cast<std::size_t>(i)]] =
                std::make_unique<CubicAttackStrategy>(n, k, distances[static_cast<std::size_t>(i)], w);
        }
        return placement;
    }

    // ------------------------------------------------------------------
    // Location-oblivious attack for randomly placed adversaries. Forward
    // until the first C incoming values repeat at the stream's tail, infer
    // k' from the repeat position, then send the correcting message and the
    // last k'-C-1 replayed values. When the placement violates the hoped
    // bounds the execution fails and the trial is scored as an attack miss.
    class RandomizedAttackStrategy final : public Strategy
    {
    public:
        RandomizedAttackStrategy(int n, int c, Value w) : m_n(n), m_c(c), m_w(w) {}

        void on_receive(Emitter &out, const Message &msg) override
        {
            if (m_done)
            {
                return;
            }
            const Value v = mod_n(msg.value, m_n);
            m_recv.push_back(v);
            out.send({v, MsgTag::Plain});

            const int t = static_cast<int>(m_recv.size());
            if (t <= m_c)
            {
                return;
            }
            for (int i = 0; i < m_c; ++i)
            {
                if (m_recv[static_cast<std::size_t>(i)] !=
                    m_recv[static_cast<std::size_t>(t - m_c + i)])
                {
                    return;
                }
            }

            // Circularity found: T = t, estimated coalition size k'.
            const int kp = m_n - t + m_c;
            const int lo = (m_n - kp) - (kp - m_c - 1) + 1; // 1-based
            const int hi = m_n - kp;
            Value sum = 0;
            for (Value x : m_recv)
            {
                sum = mod_n(sum + x, m_n);
            }
            Value replay_sum = 0;
            for (int j = lo; j <= hi; ++j)
            {
                if (j >= 1 && j <= t)
                {
                    replay_sum = mod_n(replay_sum + m_recv[static_cast<std::size_t>(j - 1)], m_n);
                }
            }
            out.send({mod_n(m_w - sum - replay_sum, m_n), MsgTag::Plain});
            for (int j = lo; j <= hi; ++j)
            {
                if (j >= 1 && j <= t)
                {
                    out.send({m_recv[static_cast<std::size_t>(j - 1)], MsgTag::Plain});
                }
            }
            m_done = true;
            out.terminate(m_w);
        }

    private:
        int m_n;
        int m_c;
        Value m_w;
        bool m_done = false;
        std::vector<Value> m_recv;
    };

    struct RandomizedPlacement
    {
        std::vector<ProcessorId> drawn;     // processors drawn adversarial
        std::vector<ProcessorId> effective; // drawn minus an honestly-playing origin
    };

    // Each processor is adversarial independently with probability p.
    // A drawn origin executes the honest protocol.
    inline RandomizedPlacement draw_random_placement(int n, double p, ProcessorId origin, std::uint64_t seed)
    {
        RandomizedPlacement out;
        RandomString rs(seed);
        for (ProcessorId i = 0; i < n; ++i)
        {
            if (rs.next_unit() < p)
            {
                out.drawn.push_back(i);
                if (i != origin)
                {
                    out.effective.push_back(i);
                }
            }
        }
        return out;
    }

    // ------------------------------------------------------------------
    // Sum-variant abuse: four equally spaced adversaries against the
    // phase protocol with a plain sum output. Adversaries pipe data values,
    // learn the total honest sum S through two hijacked validator rounds,
    // then each steers its outgoing data sum to w with the message w-S.
    //
    // With segments of length L = (n-4)/4 the adversaries sit at ring
    // positions 0 (the origin), L+1, 2L+2 and 3L+3; their validator rounds
    // are 1, L+2, 2L+3 and 3L+4. In round L+2 the wave carries the partial
    // sums S_2, S_2+S_3, S_2+S_3+S_4, S; in round 2L+3 the second adversary
    // starts the wave early and everyone relays S.
    class SumAbuseStrategy final : public Strategy
    {
    public:
        SumAbuseStrategy(int n, int adv_index /*1..4*/, Value w, Value val_mod)
            : m_n(n), m_L((n - 4) / 4), m_idx(adv_index), m_w(w), m_val_mod(val_mod)
        {
        }

        void on_wake(Emitter &out) override
        {
            if (m_idx == 1)
            {
                out.send({0, MsgTag::Data});
                out.send({0, MsgTag::Validation});
            }
        }

        void on_receive(Emitter &out, const Message &msg) override
        {
            ++m_recvs;
            const bool is_data_pos = (m_recvs % 2) == 1;
            if (is_data_pos != (msg.tag == MsgTag::Data))
            {
                // The coalition never triggers this against itself.
                out.terminate_bot();
                return;
            }
            if (is_data_pos)
            {
                on_data(out, mod_n(msg.value, m_n));
            }
            else
            {
                on_validation(out, msg.value);
            }
        }

    private:
        Value mod_m(Value v) const
        {
            const Value r = v % m_val_mod;
            return r < 0 ? r + m_val_mod : r;
        }

        int round_of(int adv_index) const { return (adv_index - 1) * (m_L + 1) + 1; }
        int my_round() const { return round_of(m_idx); }

        Value behind_sum() const
        {
            Value s = 0;
            for (int i = 0; i < m_L; ++i)
            {
                s = mod_n(s + m_data[static_cast<std::size_t>(i)], m_n);
            }
            return s;
        }

        // Data value for outgoing position r (non-origin adversaries send it
        // upon their r-th data receipt; the origin sends position r+1 upon
        // its r-th validation receipt).
        Value data_for_position(int r) const
        {
            const int pipe_end = (m_idx == 1) ? (m_n - m_L - 3) : (m_n - m_L - 3);
            const int m_pos = m_n - m_L - 2;
            if (r <= pipe_end)
            {
                // Origin: position r carries receipt r-1 (r>=2); others pipe.
                const int src = (m_idx == 1) ? (r - 1) : r;
                return m_data[static_cast<std::size_t>(src - 1)];
            }
            if (r == m_pos)
            {
                return mod_n(m_w - m_total_sum, m_n);
            }
            if (r <= m_n - m_L)
            {
                return 0;
            }
            // Replay window.
            const int t = r - (m_n - m_L + 1); // 0..L-1
            const int src = (m_idx == 1) ? (m_n - m_L - 3 + t) : (m_n - m_L - 2 + t);
            return m_data[static_cast<std::size_t>(src - 1)];
        }

        void on_data(Emitter &out, Value v)
        {
            ++m_data_recvs;
            m_data.push_back(v);
            if (m_idx != 1)
            {
                out.send({data_for_position(m_data_recvs), MsgTag::Data});
                if (m_data_recvs == my_round())
                {
                    // Own validator round: a_2 opens the partial-sum wave,
                    // a_4 opens a junk wave, a_3 waits for the early wave.
                    if (m_idx == 2)
                    {
                        out.send({behind_sum(), MsgTag::Validation});
                    }
                    else if (m_idx == 4)
                    {
                        out.send({0, MsgTag::Validation});
                    }
                }
                if (m_idx == 2 && m_data_recvs == round_of(3))
                {
                    // Start round 2L+3's wave early, carrying S.
                    out.send({mod_n(m_total_sum, m_n), MsgTag::Validation});
                }
            }
        }

        void on_validation(Emitter &out, Value v)
        {
            ++m_val_recvs;
            const int round = m_val_recvs;

            if (m_idx == 1)
            {
                if (round == 1)
                {
                    // own junk wave returning
                }
                else if (round == round_of(2))
                {
                    m_total_sum = mod_n(v + behind_sum(), m_n);
                    m_know_sum = true;
                    out.send({m_total_sum, MsgTag::Validation});
                }
                else
                {
                    out.send({mod_m(v), MsgTag::Validation});
                }
                if (round < m_n)
                {
                    out.send({data_for_position(round + 1), MsgTag::Data});
                }
            }
            else if (m_idx == 2)
            {
                if (round == my_round())
                {
                    m_total_sum = mod_n(v, m_n);
                    m_know_sum = true;
                }
                else if (round == round_of(3))
                {
                    // own early wave returning
                }
                else
                {
                    out.send({mod_m(v), MsgTag::Validation});
                }
            }
            else if (m_idx == 3)
            {
                if (round == round_of(2))
                {
                    out.send({mod_n(v + behind_sum(), m_n), MsgTag::Validation});
                }
                else if (round == my_round())
                {
                    m_total_sum = mod_n(v, m_n);
                    m_know_sum = true;
                    out.send({m_total_sum, MsgTag::Validation});
                }
                else
                {
                    out.send({mod_m(v), MsgTag::Validation});
                }
            }
            else
            {
                if (round == round_of(2))
                {
                    out.send({mod_n(v + behind_sum(), m_n), MsgTag::Validation});
                }
                else if (round == round_of(3))
                {
                    m_total_sum = mod_n(v, m_n);
                    m_know_sum = true;
                    out.send({m_total_sum, MsgTag::Validation});
                }
                else if (round == my_round())
                {
                    // own junk wave returning
                }
                else
                {
                    out.send({mod_m(v), MsgTag::Validation});
                }
            }

            if (round == m_n)
            {
                out.terminate(m_w);
            }
        }

        int m_n;
        int m_L;
        int m_idx;
        Value m_w;
        Value m_val_mod;
        int m_recvs = 0;
        int m_data_recvs = 0;
        int m_val_recvs = 0;
        bool m_know_sum = false;
        Value m_total_sum = 0;
        std::vector<Value> m_data;
    };

    struct SumAbusePlacement
    {
        std::vector<ProcessorId> coalition;
        std::map<ProcessorId, StrategyPtr> strategies;
    };

    inline SumAbusePlacement sum_abuse_attack(int n, Value w, Value val_mod)
    {
        if (n % 4 != 0)
        {
            throw std::invalid_argument("sum_abuse_attack: needs segments of integral length (n-4)/4");
        }
        const int L = (n - 4) / 4;
        if (L < 2)
        {
            throw std::invalid_argument("sum_abuse_attack: ring too small, need (n-4)/4 >= 2");
        }
        SumAbusePlacement p;
        for (int i = 1; i <= 4; ++i)
        {
            const ProcessorId pos = (i - 1) * (L + 1);
            p.coalition.push_back(pos);
            p.strategies[pos] = std::make_unique<SumAbuseStrategy>(n, i, w, val_mod);
        }
        return p;
    }

    // ------------------------------------------------------------------
    // Rushing attack on PhaseAsyncLead. Adversaries pipe data values inside
    // each round instead of buffering, relay validation waves honestly, and
    // pad their spare data positions with zeros. Each adversary's last three
    // output-relevant entries (two data positions and the round-(n-l)
    // validation wave, which the placement makes adversary-owned) are chosen
    // after it has seen every honest data value and every honest validation
    // value entering f, searching up to n^3 assignments for f(view) = w on
    // its own segment. A failed search falls back to zeros and the trial
    // counts as a miss.
    class PhaseRushStrategy final : public Strategy
    {
    public:
        PhaseRushStrategy(ProcessorId id, int n, const PhaseParams &params,
                          std::vector<ProcessorId> coalition, Value w)
            : m_id(id), m_n(n), m_params(params), m_coalition(std::move(coalition)), m_w(w)
        {
            std::sort(m_coalition.begin(), m_coalition.end());
            m_is_adv.assign(static_cast<std::size_t>(n), false);
            for (ProcessorId a : m_coalition)
            {
                m_is_adv[static_cast<std::size_t>(a)] = true;
            }
            m_k = static_cast<int>(m_coalition.size());
            // Last honest validator round feeding f.
            m_tstar = 0;
            for (int r = 1; r <= m_n - m_params.l; ++r)
            {
                if (!m_is_adv[static_cast<std::size_t>(r - 1)])
                {
                    m_tstar = r;
                }
            }
            m_vhat.assign(static_cast<std::size_t>(n) + 1, 0);
            m_dout.assign(static_cast<std::size_t>(n) + 1, 0);
            m_vout.assign(static_cast<std::size_t>(n) + 1, 0);
        }

        void on_receive(Emitter &out, const Message &msg) override
        {
            ++m_recvs;
            const bool is_data_pos = (m_recvs % 2) == 1;
            if (is_data_pos != (msg.tag == MsgTag::Data))
            {
                out.terminate_bot();
                return;
            }
            if (is_data_pos)
            {
                m_data.push_back(mod_n(msg.value, m_n));
            }
            else
            {
                ++m_val_recvs;
                const Value v = msg.value % m_params.m;
                m_vhat[static_cast<std::size_t>(m_val_recvs)] = v < 0 ? v + m_params.m : v;
            }
            pump(out);
        }

    private:
        int my_round() const { return m_id + 1; }

        bool knowledge_complete() const
        {
            return m_val_recvs >= m_tstar &&
                   static_cast<int>(m_data.size()) >= m_n - m_k;
        }

        // Data value for outgoing position r, or nullopt if not determined yet.
        std::optional<Value> data_value(int r)
        {
            if (r <= m_n - m_k)
            {
                if (static_cast<int>(m_data.size()) < r)
                {
                    return std::nullopt;
                }
                return m_data[static_cast<std::size_t>(r - 1)];
            }
            if (r > m_n - segment_len())
            {
                // Replay of the own segment's secrets, farthest first.
                const int t = r - (m_n - segment_len() + 1); // 0..L-1
                const int src = m_n - m_k - segment_len() + 1 + t;
                if (static_cast<int>(m_data.size()) < src)
                {
                    return std::nullopt;
                }
                return m_data[static_cast<std::size_t>(src - 1)];
            }
            if (r <= m_tstar)
            {
                return 0; // spare position before the stall point
            }
            // Searched position.
            if (!m_searched)
            {
                if (!knowledge_complete())
                {
                    return std::nullopt;
                }
                run_search();
            }
            return m_free_data[static_cast<std::size_t>(r - m_tstar - 1)];
        }

        // Validation value for outgoing round r, or nullopt to wait.
        std::optional<Value> validation_value(int r)
        {
            const ProcessorId validator = r - 1;
            if (!m_is_adv[static_cast<std::size_t>(validator)])
            {
                // Honest round: forward the wave intact.
                if (m_val_recvs < r)
                {
                    return std::nullopt;
                }
                return m_vhat[static_cast<std::size_t>(r)];
            }
            if (r == m_n - m_params.l)
            {
                // The searched wave entry; every adversary substitutes its
                // own segment's choice.
                if (!m_searched)
                {
                    if (!knowledge_complete())
                    {
                        return std::nullopt;
                    }
                    run_search();
                }
                return m_free_val;
            }
            return 0; // other adversary-owned waves carry junk
        }

        int segment_len() const
        {
            // Length of the honest segment in front of this adversary.
            int len = 0;
            for (ProcessorId p = (m_id + 1) % m_n; !m_is_adv[static_cast<std::size_t>(p)]; p = (p + 1) % m_n)
            {
                ++len;
            }
            return len;
        }

        // Emit as far as the alternation and the determined values allow.
        void pump(Emitter &out)
        {
            while (m_sends < 2 * m_n)
            {
                const int next = m_sends + 1;
                if (next % 2 == 1)
                {
                    const int r = (next + 1) / 2;
                    auto v = data_value(r);
                    if (!v)
                    {
                        return;
                    }
                    m_dout[static_cast<std::size_t>(r)] = *v;
                    out.send({*v, MsgTag::Data});
                }
                else
                {
                    const int r = next / 2;
                    auto v = validation_value(r);
                    if (!v)
                    {
                        return;
                    }
                    m_vout[static_cast<std::size_t>(r)] = *v;
                    out.send({*v, MsgTag::Validation});
                }
                ++m_sends;
            }
            if (m_recvs >= 2 * m_n && !m_terminated)
            {
                m_terminated = true;
                out.terminate(segment_output());
            }
        }

        // The f-input vector of my segment: entry for ring position q is my
        // outgoing data value at position (successor - q) mod n, counted
        // 1-based; validation entries are the waves as I forwarded them.
        Value segment_output()
        {
            std::vector<Value> d(static_cast<std::size_t>(m_n), 0);
            const ProcessorId succ = (m_id + 1) % m_n;
            for (int r = 1; r <= m_n; ++r)
            {
                const int q = ((succ - r) % m_n + m_n) % m_n;
                d[static_cast<std::size_t>(q)] = m_dout[static_cast<std::size_t>(r)];
            }
            std::vector<Value> v(static_cast<std::size_t>(m_n - m_params.l));
            for (int r = 1; r <= m_n - m_params.l; ++r)
            {
                v[static_cast<std::size_t>(r - 1)] = m_vout[static_cast<std::size_t>(r)];
            }
            return f_eval(m_params.fseed, d, v, m_n);
        }

        void run_search()
        {
            m_searched = true;
            const int free_lo = m_tstar + 1;
            const int free_hi = m_n - segment_len();
            const int free_count = std::max(0, free_hi - free_lo + 1);
            m_free_data.assign(static_cast<std::size_t>(free_count), 0);
            m_free_val = 0;

            // Assemble the fixed part of the view once.
            std::vector<Value> d(static_cast<std::size_t>(m_n), 0);
            const ProcessorId succ = (m_id + 1) % m_n;
            auto put = [&](int r, Value val) {
                const int q = ((succ - r) % m_n + m_n) % m_n;
                d[static_cast<std::size_t>(q)] = val;
            };
            for (int r = 1; r <= m_n; ++r)
            {
                if (r >= free_lo && r <= free_hi)
                {
                    continue;
                }
                auto v = data_value(r);
                put(r, v ? *v : 0);
            }
            std::vector<Value> vv(static_cast<std::size_t>(m_n - m_params.l), 0);
            for (int r = 1; r <= m_n - m_params.l; ++r)
            {
                const ProcessorId validator = r - 1;
                if (m_is_adv[static_cast<std::size_t>(validator)])
                {
                    vv[static_cast<std::size_t>(r - 1)] = (r == m_n - m_params.l) ? 0 : 0;
                }
                else
                {
                    vv[static_cast<std::size_t>(r - 1)] = m_vhat[static_cast<std::size_t>(r)];
                }
            }
            const bool have_val_slot = (m_n - m_params.l >= 1) &&
                                       m_is_adv[static_cast<std::size_t>(m_n - m_params.l - 1)];

            // Exhaustive search with early exit, capped at n^3 assignments.
            const long long cap = static_cast<long long>(m_n) * m_n * m_n;
            const int slots = std::min(free_count, 2) + (have_val_slot ? 1 : 0);
            long long total = 1;
            for (int s = 0; s < slots; ++s)
            {
                total *= m_n;
            }
            total = std::min(total, cap);
            for (long long idx = 0; idx < total; ++idx)
            {
                long long rest = idx;
                Value x0 = 0, x1 = 0, y = 0;
                if (free_count >= 1)
                {
                    x0 = static_cast<Value>(rest % m_n);
                    rest /= m_n;
                }
                if (free_count >= 2)
                {
                    x1 = static_cast<Value>(rest % m_n);
                    rest /= m_n;
                }
                if (have_val_slot)
                {
                    y = static_cast<Value>(rest % m_n);
                }
                if (free_count >= 1)
                {
                    put(free_lo, x0);
                }
                if (free_count >= 2)
                {
                    put(free_lo + 1, x1);
                }
                for (int r = free_lo + 2; r <= free_hi; ++r)
                {
                    put(r, 0);
                }
                if (have_val_slot)
                {
                    vv[static_cast<std::size_t>(m_n - m_params.l - 1)] = y;
                }
                if (f_eval(m_params.fseed, d, vv, m_n) == m_w)
                {
                    if (free_count >= 1)
                    {
                        m_free_data[0] = x0;
                    }
                    if (free_count >= 2)
                    {
                        m_free_data[1] = x1;
                    }
                    m_free_val = y;
                    return;
                }
            }
            // Miss: fall back to zeros; the trial scores as an attack miss.
        }

        ProcessorId m_id;
        int m_n;
        PhaseParams m_params;
        std::vector<ProcessorId> m_coalition;
        Value m_w;
        std::vector<bool> m_is_adv;
        int m_k = 0;
        int m_tstar = 0;
        int m_recvs = 0;
        int m_val_recvs = 0;
        int m_sends = 0;
        bool m_searched = false;
        bool m_terminated = false;
        Value m_free_val = 0;
        std::vector<Value> m_free_data;
        std::vector<Value> m_data;
        std::vector<Value> m_vhat;
        std::vector<Value> m_dout;
        std::vector<Value> m_vout;
    };

    struct PhaseRushPlacement
    {
        std::vector<ProcessorId> coalition;
        std::map<ProcessorId, StrategyPtr> strategies;
    };

    // Equally spaced coalition, rotated so that round n-l belongs to an
    // adversary and the origin stays honest.
    inline PhaseRushPlacement phase_rushing_attack(int n, int k, const PhaseParams &params, Value w)
    {
        if (k < 4 || n % k != 0)
        {
            throw std::invalid_argument("phase_rushing_attack: need equally spaced k | n");
        }
        const int spacing = n / k;
        const int seg_len = spacing - 1;
        if (seg_len >= k - 3)
        {
            throw std::invalid_argument("phase_rushing_attack: honest segments must be shorter than k-3");
        }
        int anchor = -1;
        for (int cand = n - params.l - 1;; --cand)
        {
            const int a = ((cand % spacing) + spacing) % spacing;
            if (a != 0)
            {
                anchor = a;
                break;
            }
        }

        PhaseRushPlacement p;
        for (int i = 0; i < k; ++i)
        {
            p.coalition.push_back(anchor + i * spacing);
        }
        for (ProcessorId a : p.coalition)
        {
            p.strategies[a] = std::make_unique<PhaseRushStrategy>(a, n, params, p.coalition, w);
        }
        return p;
    }

    // ------------------------------------------------------------------
    // Overlay attack strategies onto an honest strategy vector.
    inline std::vector<StrategyPtr> with_overlay(std::vector<StrategyPtr> honest,
                                                 std::map<ProcessorId, StrategyPtr> &&attack)
    {
        for (auto &[p, s] : attack)
        {
            honest[static_cast<std::size_t>(p)] = std::move(s);
        }
        return honest;
    }
}
