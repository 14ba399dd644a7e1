#pragma once

#include "bitt/model.hpp"

#include <map>

namespace bitt {

/// Strict: only perfectly well-formed runs become spans (gold-tag decoding).
/// Lenient: majority-vote repair for noisy predicted tags.
enum class DecodeMode { Strict, Lenient };

struct DecodeDiagnostics {
    long malformed_spans = 0;
    long missing_root = 0;
    long extra_roots = 0;
    long unresolved_slots = 0;
    long unclaimed_spans = 0;
    long dropped_edges = 0;

    void merge(const DecodeDiagnostics& other);
    std::map<std::string, long> counts() const;
    bool clean() const;
};

/// An extracted entity span with its structural tag parts.
struct TagSpan {
    int begin = 0;
    int end = 0;
    Link p2 = Link::Root;
    Slot p3 = Slot::None;
    Slot p4 = Slot::None;

    bool operator==(const TagSpan&) const = default;
};

std::vector<TagSpan> spans_from_tags(const TagSequence& tags, DecodeMode mode,
                                     DecodeDiagnostics& diag);

/// Rebuilds the binary tree: the RT span is the root; open left/right slots
/// claim the nearest unclaimed span behind the parent (before it for the
/// backward direction) whose p2 matches the complementary role.
BinaryRelationTree tags_to_tree(const TagSequence& tags, DecodeMode mode,
                                DecodeDiagnostics& diag);

/// Inverse left-child/right-sibling transform. Brother right edges split the
/// root chain; a role-bearing right edge hanging off a root is dropped with a
/// diagnostic and its subtree becomes a new root.
RelationForest binary_to_forest(const BinaryRelationTree& tree, Direction direction,
                                DecodeDiagnostics& diag);

/// Fills node entity strings from the token spans.
void fill_forest_entities(RelationForest& forest, const std::vector<Token>& tokens,
                          const std::string& joiner = " ");

/// One triple per forest edge; the child's role decides which endpoint is e1.
std::vector<Triple> forest_to_triples(const RelationForest& forest,
                                      const std::string& relation);

struct DecodeResult {
    std::vector<Triple> triples;   // set semantics
    DecodeDiagnostics diagnostics;
};

DecodeResult decode_sentence(const BiTTEncoding& encoding,
                             const std::vector<Token>& tokens,
                             DecodeMode mode = DecodeMode::Strict,
                             const std::string& joiner = " ");

}  // namespace bitt
