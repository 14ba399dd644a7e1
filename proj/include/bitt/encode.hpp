#pragma once

#include "bitt/model.hpp"

namespace bitt {

/// How an occurrence picks its parent among the eligible nodes already in the
/// tree. Earliest = first-added node (default); Nearest = smallest token
/// distance.
enum class ParentRule { Earliest, Nearest };

struct EncodeOptions {
    ParentRule parent_rule = ParentRule::Earliest;
    std::string joiner = " ";
};

class EncodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EntityNotFoundError : public EncodeError {
public:
    using EncodeError::EncodeError;
};

class SpanOverlapError : public EncodeError {
public:
    using EncodeError::EncodeError;
};

/// One located entity mention.
struct Occurrence {
    std::string entity;
    int begin = 0;
    int end = 0;

    bool operator==(const Occurrence&) const = default;
};

/// All non-overlapping spans of `entity` in the token sequence, leftmost
/// greedy, matched as exact token subsequences under `joiner`.
std::vector<Occurrence> find_occurrences(const std::vector<Token>& tokens,
                                         const std::string& entity,
                                         const std::string& joiner);

/// Partitions the triples by relation label. Group order is the label's first
/// appearance when triples are sorted by (head position, tail position).
std::vector<std::pair<std::string, std::vector<Triple>>>
group_by_relation(const AnnotatedSentence& sentence, const std::string& joiner = " ");

/// Every occurrence of every entity in the group, sorted by begin index
/// (ascending for forward, descending for backward). Throws
/// EntityNotFoundError / SpanOverlapError.
std::vector<Occurrence> locate_occurrences(const AnnotatedSentence& sentence,
                                           const std::vector<Triple>& group,
                                           Direction direction,
                                           const std::string& joiner = " ");

/// Greedy relation-forest construction: repeatedly seed a tree with the first
/// unattached occurrence, then scan the rest in order, attaching any
/// occurrence that has a gold relation with a node already in the tree.
RelationForest build_forest(const std::vector<Occurrence>& occurrences,
                            const std::vector<Triple>& group,
                            Direction direction,
                            ParentRule parent_rule = ParentRule::Earliest);

/// Left-child/right-sibling transform; consecutive roots are chained with
/// Brother-annotated right edges. Node indices are preserved.
BinaryRelationTree forest_to_binary(const RelationForest& forest);

TagSequence tree_to_tags(const BinaryRelationTree& tree,
                         const std::string& relation,
                         Direction direction,
                         int sentence_length);

BiTTEncoding encode_sentence(const AnnotatedSentence& sentence,
                             const EncodeOptions& options = {});

}  // namespace bitt
