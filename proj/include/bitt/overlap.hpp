#pragma once

#include "bitt/model.hpp"

namespace bitt {

/// Undirected simple graph over the entity strings of a triple set.
/// Parallel triples over the same unordered pair collapse into one edge
/// with a multiplicity count; head == tail becomes a self-loop.
struct RelationGraph {
    std::vector<std::string> vertices;

    struct Edge {
        int u = 0;           // u <= v; u == v for a self-loop
        int v = 0;
        int multiplicity = 1;
    };
    std::vector<Edge> edges;

    int degree(int vertex) const;   // simple-edge degree, self-loop counts once
};

class ClassifyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RelationGraph build_relation_graph(const std::vector<Triple>& triples);

/// Sentence-level overlap flags per the EPO / ELS / ILS division.
/// epo: some unordered entity pair carries >= 2 distinct triples.
/// SEO: two triples with different entity sets share an entity.
/// ils: SEO and the simple graph contains a cycle (self-loops count).
/// els: SEO and not ils.
OverlapFlags classify_triples(const std::vector<Triple>& triples);

inline OverlapFlags classify(const AnnotatedSentence& sentence) {
    return classify_triples(sentence.triples);
}

}  // namespace bitt
