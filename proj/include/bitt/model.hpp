#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bitt {

enum class Direction : uint8_t { Forward, Backward };

inline const char* to_string(Direction d) {
    return d == Direction::Forward ? "forward" : "backward";
}

struct Token {
    std::string text;
    int index = 0;

    bool operator==(const Token&) const = default;
};

/// A relational triple (head entity, relation label, tail entity).
struct Triple {
    std::string head;
    std::string relation;
    std::string tail;

    auto operator<=>(const Triple&) const = default;
};

/// Entity mention as a half-open token range [begin, end).
struct MentionSpan {
    std::string entity;
    int begin = 0;
    int end = 0;

    bool operator==(const MentionSpan&) const = default;
};

struct AnnotatedSentence {
    std::string id;
    std::vector<Token> tokens;
    std::vector<Triple> triples;      // set semantics: sorted, no duplicates
    std::vector<MentionSpan> mentions;
};

AnnotatedSentence make_sentence(std::string id,
                                const std::vector<std::string>& words,
                                std::vector<Triple> triples,
                                std::vector<MentionSpan> mentions = {});

/// Keeps `triples` a set: sorts and removes duplicates in place.
void normalize_triples(std::vector<Triple>& triples);

struct OverlapFlags {
    bool epo = false;
    bool els = false;
    bool ils = false;

    bool normal() const { return !epo && !els && !ils; }
    bool operator==(const OverlapFlags&) const = default;
};

// ---------------------------------------------------------------------------
// Tag grammar
// ---------------------------------------------------------------------------

/// Part 1: position of a word inside its entity span.
enum class Pos : uint8_t { B, I, E, S };

/// Part 2: the edge between an entity node and its parent in the binary tree.
/// L/R = left or right child, 1/2 = the node's entity role on that edge.
enum class Link : uint8_t { Root, Brother, L1, L2, R1, R2 };

/// Parts 3 and 4: the edge toward the left/right child, if any.
/// Role1/Role2 carry the parent-side role; Brother is only valid in part 4.
enum class Slot : uint8_t { None, Role1, Role2, Brother };

inline bool link_is_left(Link l) { return l == Link::L1 || l == Link::L2; }
inline bool link_is_right(Link l) { return l == Link::R1 || l == Link::R2; }

/// Entity role carried by an L/R link (1 or 2), 0 for Root/Brother.
inline int link_role(Link l) {
    switch (l) {
        case Link::L1: case Link::R1: return 1;
        case Link::L2: case Link::R2: return 2;
        default: return 0;
    }
}

inline Link make_link(bool left, int role) {
    if (left) return role == 1 ? Link::L1 : Link::L2;
    return role == 1 ? Link::R1 : Link::R2;
}

/// On a relation edge the two endpoints take opposite roles.
inline int complement_role(int role) { return 3 - role; }

inline Slot role_slot(int role) { return role == 1 ? Slot::Role1 : Slot::Role2; }

inline int slot_role(Slot s) {
    switch (s) {
        case Slot::Role1: return 1;
        case Slot::Role2: return 2;
        default: return 0;
    }
}

/// One word's tag: the outside tag O, or a four-part quadruple.
struct BiTTTag {
    struct Quad {
        Pos p1;
        Link p2;
        Slot p3;
        Slot p4;

        auto operator<=>(const Quad&) const = default;
    };

    std::optional<Quad> quad;

    bool outside() const { return !quad.has_value(); }

    static BiTTTag O() { return {}; }
    static BiTTTag make(Pos p1, Link p2, Slot p3, Slot p4) {
        return BiTTTag{Quad{p1, p2, p3, p4}};
    }

    auto operator<=>(const BiTTTag&) const = default;
};

class TagParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses the textual form `O` or `P1-P2-P3-P4`.
/// Throws TagParseError naming the offending part.
BiTTTag parse_tag(std::string_view text);

/// Canonical textual form; inverse of parse_tag.
std::string render_tag(const BiTTTag& tag);

/// Label inventories per tag part for sequence-labeling consumers,
/// including "O" and "PAD". Sizes are 6, 8, 5 and 6.
/// PAD is reserved for downstream models; the codec never emits or accepts it.
std::vector<std::string> part_alphabet(int part);

inline constexpr const char* kPadLabel = "PAD";
inline constexpr const char* kOutsideLabel = "O";

// ---------------------------------------------------------------------------
// Sequences and encodings
// ---------------------------------------------------------------------------

struct TagSequence {
    std::string relation;
    Direction direction = Direction::Forward;
    std::vector<BiTTTag> tags;

    bool operator==(const TagSequence&) const = default;
};

/// FSM check over p1 values: entity spans must be S, or B I* E.
bool bies_well_formed(const TagSequence& seq);

struct BiTTEncoding {
    struct Group {
        std::string relation;
        TagSequence forward;
        TagSequence backward;

        bool operator==(const Group&) const = default;
    };

    std::string id;
    std::vector<Group> groups;   // deterministic group order

    bool operator==(const BiTTEncoding&) const = default;
};

// ---------------------------------------------------------------------------
// Forest and binary tree structures
// ---------------------------------------------------------------------------

/// Node in a relation forest over entity occurrences. `role` is the node's
/// entity role (1 = e1, 2 = e2) in the relation with its forest parent;
/// 0 for roots.
struct ForestNode {
    std::string entity;
    int begin = 0;
    int end = 0;
    int parent = -1;
    std::vector<int> children;   // in attachment order
    int role = 0;
};

struct RelationForest {
    Direction direction = Direction::Forward;
    std::vector<ForestNode> nodes;   // in insertion order
    std::vector<int> roots;          // in seeding order
};

/// Left-child/right-sibling transform of a RelationForest. `role` mirrors the
/// forest role of the node; a right edge flagged `brother` chains two former
/// forest roots and carries no relation.
struct BinaryNode {
    std::string entity;
    int begin = 0;
    int end = 0;
    int left = -1;
    int right = -1;
    bool right_is_brother = false;
    int role = 0;   // on the edge to the binary parent; 0 for root/brother
};

struct BinaryRelationTree {
    std::vector<BinaryNode> nodes;
    int root = -1;
};

/// Joins tokens[begin, end) with the corpus joiner.
std::string span_text(const std::vector<Token>& tokens, int begin, int end,
                      const std::string& joiner);

}  // namespace bitt
