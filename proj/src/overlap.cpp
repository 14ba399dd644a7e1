#include "bitt/overlap.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

namespace bitt {

int RelationGraph::degree(int vertex) const {
    int d = 0;
    for (const auto& e : edges)
        if (e.u == vertex || e.v == vertex) ++d;
    return d;
}

RelationGraph build_relation_graph(const std::vector<Triple>& triples) {
    RelationGraph g;
    std::map<std::string, int> index;
    auto vertex = [&](const std::string& name) {
        auto [it, inserted] = index.emplace(name, static_cast<int>(g.vertices.size()));
        if (inserted) g.vertices.push_back(name);
        return it->second;
    };

    std::map<std::pair<int, int>, int> edge_index;
    for (const auto& t : triples) {
        int u = vertex(t.head);
        int v = vertex(t.tail);
        if (u > v) std::swap(u, v);
        auto [it, inserted] =
            edge_index.emplace(std::make_pair(u, v), static_cast<int>(g.edges.size()));
        if (inserted)
            g.edges.push_back(RelationGraph::Edge{u, v, 1});
        else
            ++g.edges[static_cast<size_t>(it->second)].multiplicity;
    }
    return g;
}

namespace {

// Union-find with path halving; returns true if u and v were already joined.
struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }

    bool join(int u, int v) {
        int ru = find(u), rv = find(v);
        if (ru == rv) return true;
        parent[static_cast<size_t>(ru)] = rv;
        return false;
    }
};

}  // namespace

OverlapFlags classify_triples(const std::vector<Triple>& triples) {
    if (triples.empty())
        throw ClassifyError("cannot classify a sentence with no triples");

    RelationGraph g = build_relation_graph(triples);

    OverlapFlags flags;
    for (const auto& e : g.edges)
        if (e.multiplicity >= 2) flags.epo = true;

    // SEO: some entity sits on two distinct simple edges, i.e. it is shared
    // by two triples with different entity sets.
    std::vector<int> incident(g.vertices.size(), 0);
    for (const auto& e : g.edges) {
        ++incident[static_cast<size_t>(e.u)];
        if (e.v != e.u) ++incident[static_cast<size_t>(e.v)];
    }
    bool seo = std::any_of(incident.begin(), incident.end(),
                           [](int d) { return d >= 2; });

    bool cycle = false;
    UnionFind uf(g.vertices.size());
    for (const auto& e : g.edges) {
        if (e.u == e.v) {
            cycle = true;   // self-loop
            continue;
        }
        if (uf.join(e.u, e.v)) cycle = true;
    }

    flags.ils = seo && cycle;
    flags.els = seo && !cycle;
    return flags;
}

}  // namespace bitt
