// Test-only reference implementations, independent of the library code paths
// they check.
#pragma once

#include "bitt/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace bitt::testing {

// Literal overlap definitions checked pair-by-pair, with DFS cycle detection
// (the library uses union-find).
inline OverlapFlags classify_oracle(const std::vector<Triple>& triples) {
    auto entity_set = [](const Triple& t) {
        std::set<std::string> s{t.head, t.tail};
        return s;
    };

    OverlapFlags flags;
    bool seo = false;
    for (size_t i = 0; i < triples.size(); ++i) {
        for (size_t j = i + 1; j < triples.size(); ++j) {
            if (triples[i] == triples[j]) continue;
            auto a = entity_set(triples[i]);
            auto b = entity_set(triples[j]);
            if (a == b) {
                flags.epo = true;
            } else {
                std::vector<std::string> shared;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                      std::back_inserter(shared));
                if (!shared.empty()) seo = true;
            }
        }
    }

    // Simple graph of distinct unordered pairs.
    std::set<std::pair<std::string, std::string>> edges;
    std::set<std::string> vertices;
    bool self_loop = false;
    for (const auto& t : triples) {
        vertices.insert(t.head);
        vertices.insert(t.tail);
        if (t.head == t.tail) {
            self_loop = true;
            continue;
        }
        auto e = std::minmax(t.head, t.tail);
        edges.insert({e.first, e.second});
    }

    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    bool cycle = self_loop;
    std::set<std::string> visited;
    for (const auto& start : vertices) {
        if (cycle || visited.count(start)) continue;
        // Iterative DFS carrying the parent vertex.
        std::vector<std::pair<std::string, std::string>> stack{{start, ""}};
        visited.insert(start);
        while (!stack.empty() && !cycle) {
            auto [u, parent] = stack.back();
            stack.pop_back();
            for (const auto& v : adj[u]) {
                if (v == parent) continue;
                if (visited.count(v)) {
                    cycle = true;
                    break;
                }
                visited.insert(v);
                stack.emplace_back(v, u);
            }
        }
    }

    flags.ils = seo && cycle;
    flags.els = seo && !cycle;
    return flags;
}

// The greedy spanning-forest edge set recomputed directly from the occurrence
// order, used as a lower bound on what decoding must recover.
inline std::vector<Triple> forest_edge_oracle(
    const std::vector<std::pair<std::string, int>>& occurrences_sorted,
    const std::vector<Triple>& group) {
    std::set<std::pair<std::string, std::string>> directed;
    for (const auto& t : group) directed.emplace(t.head, t.tail);

    std::vector<Triple> edges;
    std::vector<bool> used(occurrences_sorted.size(), false);
    for (size_t seed = 0; seed < occurrences_sorted.size(); ++seed) {
        if (used[seed]) continue;
        used[seed] = true;
        std::vector<std::string> tree{occurrences_sorted[seed].first};
        for (size_t i = seed + 1; i < occurrences_sorted.size(); ++i) {
            if (used[i]) continue;
            const auto& entity = occurrences_sorted[i].first;
            std::string parent;
            bool found = false;
            for (const auto& node : tree) {
                if (directed.count({node, entity}) || directed.count({entity, node})) {
                    parent = node;
                    found = true;
                    break;
                }
            }
            if (!found) continue;
            used[i] = true;
            tree.push_back(entity);
            if (directed.count({parent, entity}))
                edges.push_back(Triple{parent, group.front().relation, entity});
            else
                edges.push_back(Triple{entity, group.front().relation, parent});
        }
    }
    normalize_triples(edges);
    return edges;
}

}  // namespace bitt::testing
