#pragma once

#include <algorithm>
#include <queue>
#include <string>
#include <vector>

#include "ringlead/core.hpp"

namespace ringlead
{
    // Simple undirected graph on vertices 0..n-1.
    struct Graph
    {
        int n = 0;
        std::vector<std::pair<int, int>> edges;

        std::vector<std::vector<int>> adjacency() const
        {
            std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
            for (auto [a, b] : edges)
            {
                adj[static_cast<std::size_t>(a)].push_back(b);
                adj[static_cast<std::size_t>(b)].push_back(a);
            }
            return adj;
        }

        bool has_edge(int a, int b) const
        {
            for (auto [x, y] : edges)
            {
                if ((x == a && y == b) || (x == b && y == a))
                {
                    return true;
                }
            }
            return false;
        }

        bool connected() const
        {
            if (n == 0)
            {
                return false;
            }
            const auto adj = adjacency();
            std::vector<char> seen(static_cast<std::size_t>(n), 0);
            std::queue<int> q;
            q.push(0);
            seen[0] = 1;
            int count = 0;
            while (!q.empty())
            {
                const int v = q.front();
                q.pop();
                ++count;
                for (int u : adj[static_cast<std::size_t>(v)])
                {
                    if (!seen[static_cast<std::size_t>(u)])
                    {
                        seen[static_cast<std::size_t>(u)] = 1;
                        q.push(u);
                    }
                }
            }
            return count == n;
        }

        bool is_tree() const { return connected() && static_cast<int>(edges.size()) == n - 1; }
    };

    struct TreeSimulation
    {
        Graph tree;
        std::vector<int> mapping; // vertex of G -> vertex of tree
        int k = 0;
    };

    struct SimulationCheck
    {
        bool ok = true;
        std::string violation;
    };

    // Checks the k-simulated-tree conditions: the map sends every crossing
    // edge of G onto a tree edge, every fiber has at most k vertices, and
    // every fiber is connected in G.
    inline SimulationCheck verify_k_simulation(const Graph &g, const Graph &tree,
                                               const std::vector<int> &mapping, int k)
    {
        SimulationCheck res;
        auto fail = [&res](std::string why) {
            res.ok = false;
            res.violation = std::move(why);
            return res;
        };

        if (static_cast<int>(mapping.size()) != g.n)
        {
            return fail("mapping size mismatch");
        }
        if (!tree.is_tree())
        {
            return fail("target graph is not a tree");
        }
        for (int v : mapping)
        {
            if (v < 0 || v >= tree.n)
            {
                return fail("mapping image out of range");
            }
        }
        for (auto [a, b] : g.edges)
        {
            const int fa = mapping[static_cast<std::size_t>(a)];
            const int fb = mapping[static_cast<std::size_t>(b)];
            if (fa != fb && !tree.has_edge(fa, fb))
            {
                return fail("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") has no tree image");
            }
        }
        const auto adj = g.adjacency();
        for (int t = 0; t < tree.n; ++t)
        {
            std::vector<int> fiber;
            for (int v = 0; v < g.n; ++v)
            {
                if (mapping[static_cast<std::size_t>(v)] == t)
                {
                    fiber.push_back(v);
                }
            }
            if (static_cast<int>(fiber.size()) > k)
            {
                return fail("fiber of " + std::to_string(t) + " exceeds k");
            }
            if (fiber.size() <= 1)
            {
                continue;
            }
            std::vector<char> in_fiber(static_cast<std::size_t>(g.n), 0);
            for (int v : fiber)
            {
                in_fiber[static_cast<std::size_t>(v)] = 1;
            }
            std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
            std::queue<int> q;
            q.push(fiber.front());
            seen[static_cast<std::size_t>(fiber.front())] = 1;
            std::size_t count = 0;
            while (!q.empty())
            {
                const int v = q.front();
                q.pop();
                ++count;
                for (int u : adj[static_cast<std::size_t>(v)])
                {
                    if (in_fiber[static_cast<std::size_t>(u)] && !seen[static_cast<std::size_t>(u)])
                    {
                        seen[static_cast<std::size_t>(u)] = 1;
                        q.push(u);
                    }
                }
            }
            if (count != fiber.size())
            {
                return fail("fiber of " + std::to_string(t) + " is disconnected");
            }
        }
        return res;
    }

    // Every connected graph is a ceil(n/2)-simulated tree: take a connected
    // set of ceil(n/2) vertices as the first part; the remaining parts are
    // the connected components of the rest, each adjacent only to the first
    // part, so the quotient is a star.
    inline TreeSimulation decompose_half(const Graph &g)
    {
        if (!g.connected())
        {
            throw std::invalid_argument("decompose_half: graph must be connected");
        }
        const int half = (g.n + 1) / 2;
        const auto adj = g.adjacency();

        // BFS prefix of size ceil(n/2) is connected.
        std::vector<int> part(static_cast<std::size_t>(g.n), -1);
        {
            std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
            std::queue<int> q;
            q.push(0);
            seen[0] = 1;
            int taken = 0;
            while (!q.empty() && taken < half)
            {
                const int v = q.front();
                q.pop();
                part[static_cast<std::size_t>(v)] = 0;
                ++taken;
                for (int u : adj[static_cast<std::size_t>(v)])
                {
                    if (!seen[static_cast<std::size_t>(u)])
                    {
                        seen[static_cast<std::size_t>(u)] = 1;
                        q.push(u);
                    }
                }
            }
        }

        int parts = 1;
        for (int v = 0; v < g.n; ++v)
        {
            if (part[static_cast<std::size_t>(v)] != -1)
            {
                continue;
            }
            // Flood one remaining component as a new part.
            std::queue<int> q;
            q.push(v);
            part[static_cast<std::size_t>(v)] = parts;
            while (!q.empty())
            {
                const int x = q.front();
                q.pop();
                for (int u : adj[static_cast<std::size_t>(x)])
                {
                    if (part[static_cast<std::size_t>(u)] == -1)
                    {
                        part[static_cast<std::size_t>(u)] = parts;
                        q.push(u);
                    }
                }
            }
            ++parts;
        }

        TreeSimulation sim;
        sim.k = half;
        sim.mapping = part;
        sim.tree.n = parts;
        std::vector<std::vector<char>> linked(static_cast<std::size_t>(parts),
                                              std::vector<char>(static_cast<std::size_t>(parts), 0));
        for (auto [a, b] : g.edges)
        {
            const int pa = part[static_cast<std::size_t>(a)];
            const int pb = part[static_cast<std::size_t>(b)];
            if (pa != pb && !linked[static_cast<std::size_t>(pa)][static_cast<std::size_t>(pb)])
            {
                linked[static_cast<std::size_t>(pa)][static_cast<std::size_t>(pb)] = 1;
                linked[static_cast<std::size_t>(pb)][static_cast<std::size_t>(pa)] = 1;
                sim.tree.edges.emplace_back(pa, pb);
            }
        }
        return sim;
    }
}
