#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "ringlead/core.hpp"
#include "ringlead/protocols.hpp"

namespace ringlead
{
    // One adversary's honest segment: the maximal run of consecutive honest
    // processors between it and the next adversary along the ring.
    struct Segment
    {
        ProcessorId adversary = 0;
        std::vector<ProcessorId> members; // ring order, successor of adversary first
        int length() const { return static_cast<int>(members.size()); }
        bool exposed() const { return !members.empty(); }
    };

    // Segments partition the honest processors; one entry per adversary,
    // ordered by ring position.
    inline std::vector<Segment> segment_map(int n, std::vector<ProcessorId> coalition)
    {
        std::sort(coalition.begin(), coalition.end());
        coalition.erase(std::unique(coalition.begin(), coalition.end()), coalition.end());
        std::vector<Segment> segments;
        const int k = static_cast<int>(coalition.size());
        for (int j = 0; j < k; ++j)
        {
            Segment s;
            s.adversary = coalition[static_cast<std::size_t>(j)];
            const ProcessorId next = coalition[static_cast<std::size_t>((j + 1) % k)];
            for (ProcessorId p = (s.adversary + 1) % n; p != next; p = (p + 1) % n)
            {
                s.members.push_back(p);
            }
            segments.push_back(std::move(s));
        }
        return segments;
    }

    struct Verdict
    {
        bool valid = false;
        Value sum = 0;        // when valid: the common outgoing sum mod n
        int condition = 0;    // when invalid: violated condition 1, 2 or 3
        ProcessorId witness = -1;

        static Verdict make_valid(Value s)
        {
            Verdict v;
            v.valid = true;
            v.sum = s;
            return v;
        }

        static Verdict make_invalid(int cond, ProcessorId w)
        {
            Verdict v;
            v.condition = cond;
            v.witness = w;
            return v;
        }
    };

    // Execution-validity characterization for A-LEAD^uni-family transcripts.
    // The execution succeeds if and only if
    //   1. every exposed adversary sent exactly n messages,
    //   2. the exposed adversaries' outgoing sums agree mod n,
    //   3. each adversary's last l_j messages are the secret values of its
    //      honest segment, in the order the segment validates them.
    // When valid, the sum equals the elected leader.
    inline Verdict validate_execution(const Transcript &t, const std::vector<ProcessorId> &coalition, int n)
    {
        if (t.n != n || n < 2)
        {
            throw std::invalid_argument("validate_execution: transcript/ring size mismatch");
        }
        std::vector<bool> is_adv(static_cast<std::size_t>(n), false);
        for (ProcessorId p : coalition)
        {
            is_adv[static_cast<std::size_t>(p)] = true;
        }

        // Honest secrets are the honest processors' first outgoing values.
        std::vector<std::vector<Value>> sends(static_cast<std::size_t>(n));
        for (const auto &e : t.events)
        {
            if (e.kind == EventKind::Send)
            {
                if (e.tag != MsgTag::Plain)
                {
                    throw std::invalid_argument("validate_execution: not an A-LEAD-family transcript");
                }
                sends[static_cast<std::size_t>(e.proc)].push_back(e.value);
            }
        }
        // An honest processor's secret is its first outgoing value. In a
        // deadlocked run a starved honest processor has no sends; condition 1
        // necessarily fails first in that case, so the secret is never needed.
        auto secret_of = [&](ProcessorId p) -> std::optional<Value> {
            const auto &out = sends[static_cast<std::size_t>(p)];
            if (out.empty())
            {
                return std::nullopt;
            }
            return mod_n(out.front(), n);
        };

        if (coalition.empty())
        {
            Value s = 0;
            for (ProcessorId p = 0; p < n; ++p)
            {
                const auto d = secret_of(p);
                if (!d)
                {
                    throw std::invalid_argument("validate_execution: not an A-LEAD-family transcript");
                }
                s = mod_n(s + *d, n);
            }
            return Verdict::make_valid(s);
        }

        const auto segments = segment_map(n, coalition);
        if (static_cast<int>(coalition.size()) >= n)
        {
            throw std::invalid_argument("validate_execution: no honest processors");
        }

        // Condition 1.
        for (const auto &seg : segments)
        {
            if (!seg.exposed())
            {
                continue;
            }
            if (static_cast<int>(sends[static_cast<std::size_t>(seg.adversary)].size()) != n)
            {
                return Verdict::make_invalid(1, seg.adversary);
            }
        }

        // Condition 2.
        std::optional<Value> common;
        for (const auto &seg : segments)
        {
            if (!seg.exposed())
            {
                continue;
            }
            Value s = 0;
            for (Value v : sends[static_cast<std::size_t>(seg.adversary)])
            {
                s = mod_n(s + v, n);
            }
            if (!common)
            {
                common = s;
            }
            else if (*common != s)
            {
                return Verdict::make_invalid(2, seg.adversary);
            }
        }

        // Condition 3: the last l_j messages, in send order, are the segment
        // secrets farthest-first, so that each segment member receives its
        // own value as its n-th incoming message.
        for (const auto &seg : segments)
        {
            const auto &out = sends[static_cast<std::size_t>(seg.adversary)];
            const int lj = seg.length();
            if (lj == 0)
            {
                continue;
            }
            if (static_cast<int>(out.size()) < lj)
            {
                return Verdict::make_invalid(3, seg.members.front());
            }
            for (int tpos = 1; tpos <= lj; ++tpos)
            {
                const ProcessorId h = seg.members[static_cast<std::size_t>(tpos - 1)];
                const Value sent = mod_n(out[out.size() - static_cast<std::size_t>(tpos)], n);
                const auto d = secret_of(h);
                if (!d || sent != *d)
                {
                    return Verdict::make_invalid(3, h);
                }
            }
        }

        return Verdict::make_valid(common.value_or(0));
    }
}
