#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ringlead/treesim.hpp"

namespace ringlead
{
    // Finite extensive-form coin-toss protocol on a set of processors
    // (two parties or a tree network). Internal nodes name the processor
    // that moves; edges are messages from a finite alphabet; terminals carry
    // the outcome bit. Honest play is a per-processor choice table indexed
    // by (input, node).
    //
    // The deviation model is turn-based: a deviator picks any outgoing edge
    // at its own nodes and may condition on the full history; honest
    // processors follow their tables. A deviator that goes silent at its
    // turn stalls the protocol into FAIL, which a rational deviator never
    // prefers, so the searches quantify over message choices only.
    struct ProtocolTree
    {
        struct Node
        {
            int sender = -1; // -1: terminal
            int terminal_bit = 0;
            std::vector<int> children; // indexed by message
        };

        int parties = 0;
        std::vector<int> input_counts;               // per processor
        std::vector<Node> nodes;                     // 0 is the root
        std::vector<std::vector<std::vector<int>>> choice; // [party][input][node] -> message
        Graph network;                               // empty for plain two-party

        int add_terminal(int bit)
        {
            Node t;
            t.terminal_bit = bit;
            nodes.push_back(t);
            return static_cast<int>(nodes.size()) - 1;
        }

        int add_decision(int sender, std::vector<int> children)
        {
            Node d;
            d.sender = sender;
            d.children = std::move(children);
            nodes.push_back(d);
            return static_cast<int>(nodes.size()) - 1;
        }

        void validate() const
        {
            if (parties < 1 || static_cast<int>(input_counts.size()) != parties)
            {
                throw std::invalid_argument("ProtocolTree: bad party/input configuration");
            }
            if (nodes.empty())
            {
                throw std::invalid_argument("ProtocolTree: empty tree");
            }
            for (const auto &node : nodes)
            {
                if (node.sender >= parties)
                {
                    throw std::invalid_argument("ProtocolTree: sender out of range");
                }
            }
        }
    };

    // A deviation strategy: the chosen message at every deviator node the
    // forced play can reach.
    struct AssureWitness
    {
        int bit = 0;
        std::vector<ProcessorId> coalition;
        std::map<int, int> moves; // node -> message
    };

    namespace detail
    {
        struct AssureSearch
        {
            const ProtocolTree &p;
            const std::vector<char> &deviating;
            int bit;
            std::map<int, int> moves;

            bool run(int node, std::vector<std::vector<int>> &candidates)
            {
                const auto &nd = p.nodes[static_cast<std::size_t>(node)];
                if (nd.sender < 0)
                {
                    return nd.terminal_bit == bit;
                }
                const int s = nd.sender;
                if (deviating[static_cast<std::size_t>(s)])
                {
                    for (int msg = 0; msg < static_cast<int>(nd.children.size()); ++msg)
                    {
                        auto saved = moves;
                        moves[node] = msg;
                        if (run(nd.children[static_cast<std::size_t>(msg)], candidates))
                        {
                            return true;
                        }
                        moves = std::move(saved);
                    }
                    return false;
                }
                // Honest node: the consistent inputs of s partition over the
                // realizable messages; the deviator must win in every
                // non-empty branch.
                auto &cand = candidates[static_cast<std::size_t>(s)];
                std::map<int, std::vector<int>> groups;
                for (int input : cand)
                {
                    groups[p.choice[static_cast<std::size_t>(s)][static_cast<std::size_t>(input)]
                                   [static_cast<std::size_t>(node)]]
                        .push_back(input);
                }
                for (auto &[msg, inputs] : groups)
                {
                    auto saved = cand;
                    cand = inputs;
                    const bool ok = run(nd.children[static_cast<std::size_t>(msg)], candidates);
                    cand = std::move(saved);
                    if (!ok)
                    {
                        return false;
                    }
                }
                return true;
            }
        };
    }

    // Does the coalition have a deviation forcing every honest-input play
    // into outcome `bit`? Returns the witness strategy when it does.
    inline std::optional<AssureWitness> assure(const ProtocolTree &p,
                                               const std::vector<ProcessorId> &coalition, int bit)
    {
        p.validate();
        std::vector<char> deviating(static_cast<std::size_t>(p.parties), 0);
        for (ProcessorId x : coalition)
        {
            deviating[static_cast<std::size_t>(x)] = 1;
        }
        std::vector<std::vector<int>> candidates(static_cast<std::size_t>(p.parties));
        for (int s = 0; s < p.parties; ++s)
        {
            for (int i = 0; i < p.input_counts[static_cast<std::size_t>(s)]; ++i)
            {
                candidates[static_cast<std::size_t>(s)].push_back(i);
            }
        }
        detail::AssureSearch search{p, deviating, bit, {}};
        if (!search.run(0, candidates))
        {
            return std::nullopt;
        }
        AssureWitness w;
        w.bit = bit;
        w.coalition = coalition;
        w.moves = std::move(search.moves);
        return w;
    }

    // Replays a witness against one honest input profile; true iff the play
    // terminates with the witness bit.
    inline bool replay_witness(const ProtocolTree &p, const AssureWitness &w,
                               const std::vector<int> &inputs)
    {
        std::vector<char> deviating(static_cast<std::size_t>(p.parties), 0);
        for (ProcessorId x : w.coalition)
        {
            deviating[static_cast<std::size_t>(x)] = 1;
        }
        int node = 0;
        while (p.nodes[static_cast<std::size_t>(node)].sender >= 0)
        {
            const auto &nd = p.nodes[static_cast<std::size_t>(node)];
            int msg;
            if (deviating[static_cast<std::size_t>(nd.sender)])
            {
                auto it = w.moves.find(node);
                if (it == w.moves.end())
                {
                    return false; // witness does not cover a reachable node
                }
                msg = it->second;
            }
            else
            {
                msg = p.choice[static_cast<std::size_t>(nd.sender)]
                              [static_cast<std::size_t>(inputs[static_cast<std::size_t>(nd.sender)])]
                              [static_cast<std::size_t>(node)];
            }
            node = nd.children[static_cast<std::size_t>(msg)];
        }
        return p.nodes[static_cast<std::size_t>(node)].terminal_bit == w.bit;
    }

    // Replays a witness against every honest input profile.
    inline bool replay_witness_all(const ProtocolTree &p, const AssureWitness &w)
    {
        std::vector<int> inputs(static_cast<std::size_t>(p.parties), 0);
        while (true)
        {
            if (!replay_witness(p, w, inputs))
            {
                return false;
            }
            int pos = 0;
            while (pos < p.parties)
            {
                if (++inputs[static_cast<std::size_t>(pos)] <
                    p.input_counts[static_cast<std::size_t>(pos)])
                {
                    break;
                }
                inputs[static_cast<std::size_t>(pos)] = 0;
                ++pos;
            }
            if (pos == p.parties)
            {
                return true;
            }
        }
    }

    // All (party, bit) pairs a single party can assure in a two-party
    // protocol. Parties are 0 and 1.
    inline std::vector<std::pair<int, int>> assure_search_two_party(const ProtocolTree &p)
    {
        if (p.parties != 2)
        {
            throw std::invalid_argument("assure_search_two_party: need exactly two parties");
        }
        std::vector<std::pair<int, int>> found;
        for (int party = 0; party < 2; ++party)
        {
            for (int bit = 0; bit < 2; ++bit)
            {
                if (assure(p, {party}, bit))
                {
                    found.emplace_back(party, bit);
                }
            }
        }
        return found;
    }

    struct TreeAssureResult
    {
        ProcessorId processor = 0;
        int bit = 0;
        AssureWitness witness;
    };

    // Leaf folding over a tree-network protocol: view a leaf against the
    // rest as a two-party protocol; when the leaf assures nothing, its
    // neighbor absorbs it and the search recurses on the smaller tree.
    // The final witness is re-derived for the surviving processor alone.
    inline TreeAssureResult tree_assure_search(const ProtocolTree &p)
    {
        p.validate();
        if (p.network.n != p.parties)
        {
            throw std::invalid_argument("tree_assure_search: network/parties mismatch");
        }
        if (!p.network.is_tree())
        {
            throw std::invalid_argument("tree_assure_search: network must be a tree");
        }

        // Current merged groups, keyed by representative vertex.
        std::map<int, std::vector<ProcessorId>> groups;
        Graph quotient = p.network;
        std::vector<int> vertex_of(static_cast<std::size_t>(p.parties));
        for (int v = 0; v < p.parties; ++v)
        {
            groups[v] = {v};
            vertex_of[static_cast<std::size_t>(v)] = v;
        }
        std::set<int> alive;
        for (int v = 0; v < p.parties; ++v)
        {
            alive.insert(v);
        }
        std::vector<std::pair<int, int>> edges = p.network.edges;

        // The fold argument pins down a representative; the witness is then
        // re-derived for that single processor on the original protocol. If
        // the representative alone cannot assure the bit (possible only for
        // honest strategies conditioning on messages outside their own
        // edges), scan the remaining processors for the guaranteed one.
        auto finish = [&p](ProcessorId rep, int bit) {
            if (auto w = assure(p, {rep}, bit))
            {
                TreeAssureResult r;
                r.processor = rep;
                r.bit = bit;
                r.witness = std::move(*w);
                return r;
            }
            for (int proc = 0; proc < p.parties; ++proc)
            {
                for (int b = 0; b < 2; ++b)
                {
                    if (auto w = assure(p, {proc}, b))
                    {
                        TreeAssureResult r;
                        r.processor = proc;
                        r.bit = b;
                        r.witness = std::move(*w);
                        return r;
                    }
                }
            }
            throw std::logic_error("tree_assure_search: no single processor assures an outcome");
        };

        while (alive.size() > 1)
        {
            // Pick a leaf of the quotient tree.
            std::map<int, int> degree;
            for (auto [a, b] : edges)
            {
                ++degree[a];
                ++degree[b];
            }
            int leaf = -1, neighbor = -1;
            for (int v : alive)
            {
                if (degree[v] == 1)
                {
                    leaf = v;
                    break;
                }
            }
            for (auto [a, b] : edges)
            {
                if (a == leaf)
                {
                    neighbor = b;
                }
                else if (b == leaf)
                {
                    neighbor = a;
                }
            }

            for (int bit = 0; bit < 2; ++bit)
            {
                if (assure(p, groups[leaf], bit))
                {
                    // The leaf group is a single original processor: merged
                    // groups only ever absorb, keeping their representative.
                    return finish(leaf, bit);
                }
            }

            // Fold the leaf into its neighbor.
            auto &dst = groups[neighbor];
            for (ProcessorId x : groups[leaf])
            {
                dst.push_back(x);
            }
            groups.erase(leaf);
            alive.erase(leaf);
            std::vector<std::pair<int, int>> kept;
            for (auto [a, b] : edges)
            {
                if ((a == leaf && b == neighbor) || (b == leaf && a == neighbor))
                {
                    continue;
                }
                kept.emplace_back(a == leaf ? neighbor : a, b == leaf ? neighbor : b);
            }
            edges = std::move(kept);
        }

        const int last = *alive.begin();
        for (int bit = 1; bit >= 0; --bit)
        {
            if (assure(p, groups[last], bit))
            {
                return finish(last, bit);
            }
        }
        throw std::logic_error("tree_assure_search: no outcome assurable by the full coalition");
    }
}
