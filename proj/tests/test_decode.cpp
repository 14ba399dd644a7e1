#include "bitt/decode.hpp"

#include "bitt/encode.hpp"
#include "bitt/evalgen.hpp"

#include <doctest.h>

#include <set>

using namespace bitt;

namespace {

TagSequence sequence_of(const std::vector<std::string>& texts,
                        Direction dir = Direction::Forward,
                        const std::string& relation = "rel") {
    TagSequence seq;
    seq.relation = relation;
    seq.direction = dir;
    for (const auto& t : texts) seq.tags.push_back(parse_tag(t));
    return seq;
}

AnnotatedSentence worked_example() {
    return make_sentence(
        "worked",
        {"The", "White", "House", "in", "Washington", ",", "America"},
        {{"Washington", "Contains", "The White House"},
         {"America", "Contains", "The White House"},
         {"America", "Contains", "Washington"}});
}

}  // namespace

TEST_CASE("spans_from_tags strict extracts well-formed runs") {
    DecodeDiagnostics diag;
    auto spans = spans_from_tags(
        sequence_of({"B-RT-2-N", "I-RT-2-N", "E-RT-2-N", "O"}),
        DecodeMode::Strict, diag);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0] == TagSpan{0, 3, Link::Root, Slot::Role2, Slot::None});
    CHECK(diag.malformed_spans == 0);

    spans = spans_from_tags(sequence_of({"S-L1-N-2"}), DecodeMode::Strict, diag);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0] == TagSpan{0, 1, Link::L1, Slot::None, Slot::Role2});
}

TEST_CASE("spans_from_tags strict drops malformed runs with a diagnostic") {
    DecodeDiagnostics diag;
    auto spans = spans_from_tags(sequence_of({"I-RT-2-N", "O"}),
                                 DecodeMode::Strict, diag);
    CHECK(spans.empty());
    CHECK(diag.malformed_spans == 1);

    diag = {};
    // B run that never closes.
    spans = spans_from_tags(sequence_of({"B-RT-2-N", "I-RT-2-N", "O"}),
                            DecodeMode::Strict, diag);
    CHECK(spans.empty());
    CHECK(diag.malformed_spans == 1);

    diag = {};
    // Parts flip inside the run.
    spans = spans_from_tags(sequence_of({"B-RT-2-N", "E-L1-N-N"}),
                            DecodeMode::Strict, diag);
    CHECK(spans.empty());
    CHECK(diag.malformed_spans == 1);
}

TEST_CASE("spans_from_tags lenient repairs by majority vote") {
    DecodeDiagnostics diag;
    // Dangling I promoted to a span.
    auto spans = spans_from_tags(sequence_of({"I-RT-2-N", "O"}),
                                 DecodeMode::Lenient, diag);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].p2 == Link::Root);

    // Majority vote across the run; ties go to the first word.
    spans = spans_from_tags(
        sequence_of({"B-L1-N-N", "I-L1-N-N", "E-R2-N-N"}),
        DecodeMode::Lenient, diag);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].begin == 0);
    CHECK(spans[0].end == 3);
    CHECK(spans[0].p2 == Link::L1);

    // A new B starts a fresh span even without a closing E.
    spans = spans_from_tags(sequence_of({"B-RT-2-N", "B-L1-N-N", "E-L1-N-N"}),
                            DecodeMode::Lenient, diag);
    REQUIRE(spans.size() == 2);
}

TEST_CASE("tags_to_tree reconstructs the worked-example forward tree") {
    DecodeDiagnostics diag;
    auto tree = tags_to_tree(
        sequence_of({"B-RT-2-N", "I-RT-2-N", "E-RT-2-N", "O", "S-L1-N-2", "O",
                     "S-R1-N-N"}),
        DecodeMode::Strict, diag);
    CHECK(diag.clean());
    REQUIRE(tree.root >= 0);
    const auto& root = tree.nodes[static_cast<size_t>(tree.root)];
    CHECK(root.begin == 0);
    CHECK(root.end == 3);
    REQUIRE(root.left >= 0);
    const auto& left = tree.nodes[static_cast<size_t>(root.left)];
    CHECK(left.begin == 4);
    CHECK(left.role == 1);
    REQUIRE(left.right >= 0);
    CHECK(tree.nodes[static_cast<size_t>(left.right)].begin == 6);
}

TEST_CASE("tags_to_tree edge cases") {
    DecodeDiagnostics diag;
    auto empty = tags_to_tree(sequence_of({"O", "O", "O"}), DecodeMode::Strict, diag);
    CHECK(empty.root == -1);
    CHECK(empty.nodes.empty());

    // No root span: strict reports and yields an empty tree.
    diag = {};
    auto no_root = tags_to_tree(sequence_of({"S-L1-N-N"}), DecodeMode::Strict, diag);
    CHECK(no_root.root == -1);
    CHECK(diag.missing_root == 1);

    // Lenient promotes the first span to root.
    diag = {};
    auto promoted =
        tags_to_tree(sequence_of({"S-L1-N-N"}), DecodeMode::Lenient, diag);
    CHECK(promoted.root >= 0);

    // Two roots: first in processing order wins, the other stays unclaimed.
    diag = {};
    auto two_roots = tags_to_tree(sequence_of({"S-RT-N-N", "S-RT-N-N"}),
                                  DecodeMode::Strict, diag);
    CHECK(two_roots.nodes.size() == 1);
    CHECK(diag.extra_roots == 1);
    CHECK(diag.unclaimed_spans == 1);
}

TEST_CASE("ambiguous left children resolve to the nearest span behind the parent") {
    DecodeDiagnostics diag;
    // Root wants an L1 child; both candidates match, the nearer one wins.
    auto tree = tags_to_tree(
        sequence_of({"S-RT-2-N", "O", "S-L1-N-N", "O", "S-L1-N-N"}),
        DecodeMode::Strict, diag);
    REQUIRE(tree.root >= 0);
    const auto& root = tree.nodes[static_cast<size_t>(tree.root)];
    REQUIRE(root.left >= 0);
    CHECK(tree.nodes[static_cast<size_t>(root.left)].begin == 2);
    CHECK(diag.unclaimed_spans == 1);
}

TEST_CASE("binary_to_forest inverts the transform") {
    auto s = worked_example();
    auto encoding = encode_sentence(s);
    DecodeDiagnostics diag;
    auto tree = tags_to_tree(encoding.groups[0].forward, DecodeMode::Strict, diag);
    auto forest = binary_to_forest(tree, Direction::Forward, diag);
    CHECK(diag.clean());

    REQUIRE(forest.roots.size() == 1);
    const auto& root = forest.nodes[static_cast<size_t>(forest.roots[0])];
    CHECK(root.begin == 0);
    REQUIRE(root.children.size() == 2);
    CHECK(forest.nodes[static_cast<size_t>(root.children[0])].begin == 4);
    CHECK(forest.nodes[static_cast<size_t>(root.children[1])].begin == 6);
}

TEST_CASE("binary_to_forest splits Brother chains into separate roots") {
    DecodeDiagnostics diag;
    auto tree = tags_to_tree(sequence_of({"S-RT-N-BR", "S-BR-N-N"}),
                             DecodeMode::Strict, diag);
    auto forest = binary_to_forest(tree, Direction::Forward, diag);
    CHECK(forest.roots.size() == 2);
    CHECK(forest.nodes[0].children.empty());
    CHECK(forest.nodes[1].children.empty());

    // Single node.
    DecodeDiagnostics d2;
    auto single = tags_to_tree(sequence_of({"S-RT-N-N"}), DecodeMode::Strict, d2);
    auto sf = binary_to_forest(single, Direction::Forward, d2);
    CHECK(sf.roots.size() == 1);
    CHECK(sf.nodes.size() == 1);
}

TEST_CASE("role-bearing right edge off a root is dropped with a diagnostic") {
    DecodeDiagnostics diag;
    auto tree = tags_to_tree(sequence_of({"S-RT-N-1", "S-R2-N-N"}),
                             DecodeMode::Strict, diag);
    auto forest = binary_to_forest(tree, Direction::Forward, diag);
    CHECK(diag.dropped_edges == 1);
    CHECK(forest.roots.size() == 2);   // the orphan subtree survives as a root
}

TEST_CASE("forest_to_triples maps edges by child role") {
    auto s = worked_example();
    auto encoding = encode_sentence(s);

    DecodeDiagnostics diag;
    auto fwd_tree = tags_to_tree(encoding.groups[0].forward, DecodeMode::Strict, diag);
    auto fwd_forest = binary_to_forest(fwd_tree, Direction::Forward, diag);
    fill_forest_entities(fwd_forest, s.tokens);
    auto fwd = forest_to_triples(fwd_forest, "Contains");
    CHECK(fwd == std::vector<Triple>{{"America", "Contains", "The White House"},
                                     {"Washington", "Contains", "The White House"}});

    auto bwd_tree = tags_to_tree(encoding.groups[0].backward, DecodeMode::Strict, diag);
    auto bwd_forest = binary_to_forest(bwd_tree, Direction::Backward, diag);
    fill_forest_entities(bwd_forest, s.tokens);
    auto bwd = forest_to_triples(bwd_forest, "Contains");
    CHECK(bwd == std::vector<Triple>{{"America", "Contains", "The White House"},
                                     {"America", "Contains", "Washington"}});

    RelationForest empty;
    CHECK(forest_to_triples(empty, "rel").empty());
}

TEST_CASE("decode_sentence unions both directions into the gold set") {
    auto s = worked_example();
    auto result = decode_sentence(encode_sentence(s), s.tokens);
    CHECK(result.diagnostics.clean());
    CHECK(result.triples == s.triples);
}

TEST_CASE("decode_sentence on the ELS star recovers all three triples") {
    auto s = make_sentence("star",
                           {"In", "Connecticut", ",", "Storrs", ",", "Windsor",
                            "Locks", "and", "North", "Haven", "age"},
                           {{"Connecticut", "contains", "North Haven"},
                            {"Connecticut", "contains", "Storrs"},
                            {"Connecticut", "contains", "Windsor Locks"}});
    auto result = decode_sentence(encode_sentence(s), s.tokens);
    CHECK(result.triples == s.triples);
}

TEST_CASE("decode of a single-triple encoding returns exactly that triple") {
    auto s = make_sentence("s", {"A", "x", "B"}, {{"A", "r", "B"}});
    auto result = decode_sentence(encode_sentence(s), s.tokens);
    CHECK(result.triples == s.triples);
}

TEST_CASE("decoding is deterministic") {
    SyntheticConfig config;
    config.entities = 5;
    config.edge_density = 0.9;
    config.acyclic = false;
    config.seed = 42;
    auto s = generate_synthetic(config);
    auto encoding = encode_sentence(s);
    auto first = decode_sentence(encoding, s.tokens);
    auto second = decode_sentence(encoding, s.tokens);
    CHECK(first.triples == second.triples);
}

TEST_CASE("decoded triples never leave the gold entity vocabulary") {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        SyntheticConfig config;
        config.entities = 3 + static_cast<int>(seed % 4);
        config.relation_labels = 2;
        config.edge_density = 0.8;
        config.acyclic = seed % 2 == 0;
        config.antiparallel_prob = 0.3;
        config.duplicate_mention_prob = 0.2;
        config.seed = seed;
        auto s = generate_synthetic(config);

        std::set<std::pair<std::string, std::string>> group_entities;
        for (const auto& t : s.triples) {
            group_entities.emplace(t.relation, t.head);
            group_entities.emplace(t.relation, t.tail);
        }
        auto result = decode_sentence(encode_sentence(s), s.tokens);
        CAPTURE(seed);
        for (const auto& t : result.triples) {
            REQUIRE(group_entities.count({t.relation, t.head}) == 1);
            REQUIRE(group_entities.count({t.relation, t.tail}) == 1);
        }
    }
}
