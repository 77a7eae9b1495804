#pragma once

#include <map>
#include <queue>
#include <vector>

#include "ringlead/core.hpp"

namespace ringlead
{
    struct EventRef
    {
        ProcessorId proc = 0;
        EventKind kind = EventKind::Send;
        int ordinal = 0;

        bool operator<(const EventRef &o) const
        {
            if (proc != o.proc) return proc < o.proc;
            if (kind != o.kind) return kind < o.kind;
            return ordinal < o.ordinal;
        }
        bool operator==(const EventRef &o) const
        {
            return proc == o.proc && kind == o.kind && ordinal == o.ordinal;
        }
    };

    inline EventRef send_ref(ProcessorId p, int ordinal) { return {p, EventKind::Send, ordinal}; }
    inline EventRef recv_ref(ProcessorId p, int ordinal) { return {p, EventKind::Recv, ordinal}; }

    class EventDag
    {
    public:
        int add_node(const EventRef &r)
        {
            auto [it, inserted] = m_index.emplace(r, static_cast<int>(m_nodes.size()));
            if (inserted)
            {
                m_nodes.push_back(r);
                m_adj.emplace_back();
            }
            return it->second;
        }

        void add_edge(const EventRef &a, const EventRef &b)
        {
            m_adj[static_cast<std::size_t>(add_node(a))].push_back(add_node(b));
        }

        bool has_node(const EventRef &r) const { return m_index.count(r) != 0; }

        std::size_t node_count() const { return m_nodes.size(); }

        std::size_t edge_count() const
        {
            std::size_t c = 0;
            for (const auto &v : m_adj)
            {
                c += v.size();
            }
            return c;
        }

        const std::vector<EventRef> &nodes() const { return m_nodes; }
        const std::vector<int> &successors(int node) const { return m_adj[static_cast<std::size_t>(node)]; }
        int node_id(const EventRef &r) const
        {
            auto it = m_index.find(r);
            return it == m_index.end() ? -1 : it->second;
        }
        const EventRef &node_ref(int id) const { return m_nodes[static_cast<std::size_t>(id)]; }

        // Path of length >= 1: the relation is irreflexive on acyclic graphs.
        bool reachable(const EventRef &from, const EventRef &to) const
        {
            const int a = node_id(from);
            const int b = node_id(to);
            if (a < 0 || b < 0)
            {
                throw std::invalid_argument("reachable: unknown event");
            }
            std::vector<char> seen(m_nodes.size(), 0);
            std::queue<int> q;
            for (int nxt : successors(a))
            {
                if (!seen[static_cast<std::size_t>(nxt)])
                {
                    seen[static_cast<std::size_t>(nxt)] = 1;
                    q.push(nxt);
                }
            }
            while (!q.empty())
            {
                const int cur = q.front();
                q.pop();
                if (cur == b)
                {
                    return true;
                }
                for (int nxt : successors(cur))
                {
                    if (!seen[static_cast<std::size_t>(nxt)])
                    {
                        seen[static_cast<std::size_t>(nxt)] = 1;
                        q.push(nxt);
                    }
                }
            }
            return false;
        }

        bool acyclic() const
        {
            std::vector<int> indeg(m_nodes.size(), 0);
            for (const auto &v : m_adj)
            {
                for (int x : v)
                {
                    ++indeg[static_cast<std::size_t>(x)];
                }
            }
            std::queue<int> q;
            for (std::size_t i = 0; i < m_nodes.size(); ++i)
            {
                if (indeg[i] == 0)
                {
                    q.push(static_cast<int>(i));
                }
            }
            std::size_t visited = 0;
            while (!q.empty())
            {
                const int cur = q.front();
                q.pop();
                ++visited;
                for (int nxt : successors(cur))
                {
                    if (--indeg[static_cast<std::size_t>(nxt)] == 0)
                    {
                        q.push(nxt);
                    }
                }
            }
            return visited == m_nodes.size();
        }

    private:
        std::map<EventRef, int> m_index;
        std::vector<EventRef> m_nodes;
        std::vector<std::vector<int>> m_adj;
    };

    struct DependencyGraphs
    {
        int n = 0;
        EventDag hb; // happens-before
        EventDag cd; // calculation-dependency
    };

    // Both graphs from a PhaseAsyncLead transcript. The activation structure
    // (which receive triggered which sends) is recovered from the global
    // sequence order: a send was emitted while processing the latest receive
    // of the same processor with a smaller seq; sends with no such receive
    // were emitted at wake-up.
    //
    // Happens-before edge families: arrival, local linearity, triggering,
    // receive-after-sending. Calculation-dependency families: send-to-receive,
    // validation-value immediate transfer, data-value delay, and the general
    // rule for adversaries (every earlier receive feeds every triggered send).
    inline DependencyGraphs build_graphs(const Transcript &t, const std::vector<ProcessorId> &coalition)
    {
        const int n = t.n;
        if (n < 2)
        {
            throw std::invalid_argument("build_graphs: malformed transcript");
        }
        std::vector<bool> is_adv(static_cast<std::size_t>(n), false);
        for (ProcessorId p : coalition)
        {
            if (p < 0 || p >= n)
            {
                throw std::invalid_argument("build_graphs: coalition member out of range");
            }
            is_adv[static_cast<std::size_t>(p)] = true;
        }

        DependencyGraphs g;
        g.n = n;

        std::vector<std::vector<const Event *>> sends(static_cast<std::size_t>(n));
        std::vector<std::vector<const Event *>> recvs(static_cast<std::size_t>(n));
        for (const auto &e : t.events)
        {
            auto &bucket = (e.kind == EventKind::Send) ? sends : recvs;
            auto &vec = bucket[static_cast<std::size_t>(e.proc)];
            if (e.ordinal != static_cast<int>(vec.size()) + 1)
            {
                throw std::invalid_argument("build_graphs: ordinals not consecutive");
            }
            vec.push_back(&e);
        }

        for (ProcessorId p = 0; p < n; ++p)
        {
            for (const auto *e : sends[static_cast<std::size_t>(p)])
            {
                g.hb.add_node(send_ref(p, e->ordinal));
                g.cd.add_node(send_ref(p, e->ordinal));
            }
            for (const auto *e : recvs[static_cast<std::size_t>(p)])
            {
                g.hb.add_node(recv_ref(p, e->ordinal));
                g.cd.add_node(recv_ref(p, e->ordinal));
            }
        }

        // Trigger of each send: latest recv of the same processor before it.
        // trigger[p][i] = recv ordinal, or 0 for wake-up sends.
        std::vector<std::vector<int>> trigger(static_cast<std::size_t>(n));
        for (ProcessorId p = 0; p < n; ++p)
        {
            const auto &ss = sends[static_cast<std::size_t>(p)];
            const auto &rr = recvs[static_cast<std::size_t>(p)];
            trigger[static_cast<std::size_t>(p)].assign(ss.size() + 1, 0);
            std::size_t ri = 0;
            for (const auto *s : ss)
            {
                while (ri < rr.size() && rr[ri]->seq < s->seq)
                {
                    ++ri;
                }
                trigger[static_cast<std::size_t>(p)][static_cast<std::size_t>(s->ordinal)] =
                    (ri == 0) ? 0 : rr[ri - 1]->ordinal;
            }
        }

        for (ProcessorId p = 0; p < n; ++p)
        {
            const ProcessorId succ = (p + 1) % n;
            const auto &ss = sends[static_cast<std::size_t>(p)];
            const auto &rr = recvs[static_cast<std::size_t>(p)];
            const auto &succ_rr = recvs[static_cast<std::size_t>(succ)];

            // Arrival (hb) and send-to-receive (cd): i-th send feeds the
            // successor's i-th receive.
            for (const auto *s : ss)
            {
                if (static_cast<std::size_t>(s->ordinal) <= succ_rr.size())
                {
                    if (succ_rr[static_cast<std::size_t>(s->ordinal - 1)]->value != s->value)
                    {
                        throw std::invalid_argument("build_graphs: FIFO mismatch in transcript");
                    }
                    g.hb.add_edge(send_ref(p, s->ordinal), recv_ref(succ, s->ordinal));
                    g.cd.add_edge(send_ref(p, s->ordinal), recv_ref(succ, s->ordinal));
                }
            }

            // Local linearity.
            for (std::size_t i = 1; i < ss.size(); ++i)
            {
                g.hb.add_edge(send_ref(p, static_cast<int>(i)), send_ref(p, static_cast<int>(i) + 1));
            }
            for (std::size_t i = 1; i < rr.size(); ++i)
            {
                g.hb.add_edge(recv_ref(p, static_cast<int>(i)), recv_ref(p, static_cast<int>(i) + 1));
            }

            // Triggering and receive-after-sending.
            for (const auto *s : ss)
            {
                const int trig = trigger[static_cast<std::size_t>(p)][static_cast<std::size_t>(s->ordinal)];
                if (trig > 0)
                {
                    g.hb.add_edge(recv_ref(p, trig), send_ref(p, s->ordinal));
                    for (std::size_t i = static_cast<std::size_t>(trig) + 1; i <= rr.size(); ++i)
                    {
                        g.hb.add_edge(send_ref(p, s->ordinal), recv_ref(p, static_cast<int>(i)));
                    }
                }
            }

            if (!is_adv[static_cast<std::size_t>(p)])
            {
                // Validation-value immediate transfer: recv(h,2i) -> send(h,2i)
                // for every round i where h is not the validator.
                const int my_round = p + 1;
                for (int round = 1; round <= n; ++round)
                {
                    if (round == my_round)
                    {
                        continue;
                    }
                    const EventRef a = recv_ref(p, 2 * round);
                    const EventRef b = send_ref(p, 2 * round);
                    if (g.cd.has_node(a) && g.cd.has_node(b))
                    {
                        g.cd.add_edge(a, b);
                    }
                }
                // Data-value delay: recv(h,2i-1) -> send(h,2i+1), 1 < i < n.
                for (int round = 2; round < n; ++round)
                {
                    const EventRef a = recv_ref(p, 2 * round - 1);
                    const EventRef b = send_ref(p, 2 * round + 1);
                    if (g.cd.has_node(a) && g.cd.has_node(b))
                    {
                        g.cd.add_edge(a, b);
                    }
                }
            }
            else
            {
                // General adversary rule: every receive up to the trigger may
                // feed each triggered send.
                for (const auto *s : ss)
                {
                    const int trig = trigger[static_cast<std::size_t>(p)][static_cast<std::size_t>(s->ordinal)];
                    for (int i = 1; i <= trig; ++i)
                    {
                        g.cd.add_edge(recv_ref(p, i), send_ref(p, s->ordinal));
                    }
                }
            }
        }

        return g;
    }

    // s(h): h's validation send as the round-(h+1) validator.
    inline EventRef validator_send(ProcessorId h) { return send_ref(h, 2 * (h + 1)); }

    // r(h): the predecessor's send of the message h interprets as its own
    // validation value coming back.
    inline EventRef validator_return(ProcessorId h, int n)
    {
        return send_ref((h + n - 1) % n, 2 * (h + 1));
    }

    enum class Validated : std::uint8_t
    {
        No = 0,
        Yes = 1,
        Indeterminate = 2, // s(h) or r(h) missing: execution died early
    };

    inline Validated is_validated(ProcessorId h, const DependencyGraphs &g)
    {
        const EventRef s = validator_send(h);
        const EventRef r = validator_return(h, g.n);
        if (!g.cd.has_node(s) || !g.cd.has_node(r))
        {
            return Validated::Indeterminate;
        }
        return g.cd.reachable(s, r) ? Validated::Yes : Validated::No;
    }
}
