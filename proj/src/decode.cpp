#include "bitt/decode.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>

namespace bitt {

void DecodeDiagnostics::merge(const DecodeDiagnostics& other) {
    malformed_spans += other.malformed_spans;
    missing_root += other.missing_root;
    extra_roots += other.extra_roots;
    unresolved_slots += other.unresolved_slots;
    unclaimed_spans += other.unclaimed_spans;
    dropped_edges += other.dropped_edges;
}

std::map<std::string, long> DecodeDiagnostics::counts() const {
    return {{"malformed_spans", malformed_spans},
            {"missing_root", missing_root},
            {"extra_roots", extra_roots},
            {"unresolved_slots", unresolved_slots},
            {"unclaimed_spans", unclaimed_spans},
            {"dropped_edges", dropped_edges}};
}

bool DecodeDiagnostics::clean() const {
    return malformed_spans == 0 && missing_root == 0 && extra_roots == 0 &&
           unresolved_slots == 0 && unclaimed_spans == 0 && dropped_edges == 0;
}

namespace {

std::vector<TagSpan> spans_strict(const std::vector<BiTTTag>& tags,
                                  DecodeDiagnostics& diag) {
    std::vector<TagSpan> spans;
    const int n = static_cast<int>(tags.size());
    int i = 0;
    while (i < n) {
        const auto& tag = tags[static_cast<size_t>(i)];
        if (tag.outside()) {
            ++i;
            continue;
        }
        const auto& q = *tag.quad;
        if (q.p1 == Pos::S) {
            spans.push_back(TagSpan{i, i + 1, q.p2, q.p3, q.p4});
            ++i;
            continue;
        }
        if (q.p1 != Pos::B) {   // dangling I or E
            ++diag.malformed_spans;
            ++i;
            continue;
        }
        int j = i + 1;
        while (j < n && tags[static_cast<size_t>(j)].quad &&
               tags[static_cast<size_t>(j)].quad->p1 == Pos::I)
            ++j;
        if (j < n && tags[static_cast<size_t>(j)].quad &&
            tags[static_cast<size_t>(j)].quad->p1 == Pos::E) {
            bool uniform = true;
            for (int w = i; w <= j; ++w) {
                const auto& wq = *tags[static_cast<size_t>(w)].quad;
                if (wq.p2 != q.p2 || wq.p3 != q.p3 || wq.p4 != q.p4) uniform = false;
            }
            if (uniform)
                spans.push_back(TagSpan{i, j + 1, q.p2, q.p3, q.p4});
            else
                ++diag.malformed_spans;
            i = j + 1;
        } else {
            ++diag.malformed_spans;   // B run without a closing E
            i = j;
        }
    }
    return spans;
}

template <typename T>
T majority(const std::vector<T>& values) {
    T best = values.front();
    size_t best_count = 0;
    for (const auto& candidate : values) {
        size_t count = static_cast<size_t>(
            std::count(values.begin(), values.end(), candidate));
        if (count > best_count) {   // ties keep the earliest word's value
            best_count = count;
            best = candidate;
        }
    }
    return best;
}

std::vector<TagSpan> spans_lenient(const std::vector<BiTTTag>& tags) {
    std::vector<TagSpan> spans;
    const int n = static_cast<int>(tags.size());
    int i = 0;
    while (i < n) {
        if (tags[static_cast<size_t>(i)].outside()) {
            ++i;
            continue;
        }
        int begin = i;
        Pos p1 = tags[static_cast<size_t>(i)].quad->p1;
        ++i;
        if (p1 != Pos::S && p1 != Pos::E) {
            // Extend over I/E words until the span closes or a new one begins.
            while (i < n && tags[static_cast<size_t>(i)].quad) {
                Pos p = tags[static_cast<size_t>(i)].quad->p1;
                if (p == Pos::B || p == Pos::S) break;
                ++i;
                if (p == Pos::E) break;
            }
        }
        std::vector<Link> p2s;
        std::vector<Slot> p3s, p4s;
        for (int w = begin; w < i; ++w) {
            const auto& q = *tags[static_cast<size_t>(w)].quad;
            p2s.push_back(q.p2);
            p3s.push_back(q.p3);
            p4s.push_back(q.p4);
        }
        spans.push_back(
            TagSpan{begin, i, majority(p2s), majority(p3s), majority(p4s)});
    }
    return spans;
}

}  // namespace

std::vector<TagSpan> spans_from_tags(const TagSequence& tags, DecodeMode mode,
                                     DecodeDiagnostics& diag) {
    return mode == DecodeMode::Strict ? spans_strict(tags.tags, diag)
                                      : spans_lenient(tags.tags);
}

BinaryRelationTree tags_to_tree(const TagSequence& tags, DecodeMode mode,
                                DecodeDiagnostics& diag) {
    auto spans = spans_from_tags(tags, mode, diag);
    const bool forward = tags.direction == Direction::Forward;

    // Processing order: ascending position for forward, descending for backward.
    std::sort(spans.begin(), spans.end(), [&](const TagSpan& a, const TagSpan& b) {
        return forward ? a.begin < b.begin : a.begin > b.begin;
    });

    BinaryRelationTree tree;
    if (spans.empty()) return tree;

    int root_span = -1;
    for (size_t s = 0; s < spans.size(); ++s) {
        if (spans[s].p2 != Link::Root) continue;
        if (root_span < 0)
            root_span = static_cast<int>(s);
        else
            ++diag.extra_roots;   // first one wins, the rest stay unclaimed
    }
    if (root_span < 0) {
        ++diag.missing_root;
        if (mode == DecodeMode::Strict) return tree;
        root_span = 0;   // lenient: promote the first span to root
    }

    std::vector<bool> claimed(spans.size(), false);
    std::vector<int> node_span;   // tree node -> span index

    auto place = [&](int span_idx, int role) {
        claimed[static_cast<size_t>(span_idx)] = true;
        const auto& sp = spans[static_cast<size_t>(span_idx)];
        tree.nodes.push_back(BinaryNode{"", sp.begin, sp.end, -1, -1, false, role});
        node_span.push_back(span_idx);
        return static_cast<int>(tree.nodes.size()) - 1;
    };

    // Claims the nearest unclaimed span behind the parent (before it for
    // backward) whose p2 matches; -1 when none exists.
    auto claim = [&](int parent_begin, Link wanted) {
        int best = -1;
        int best_distance = 0;
        for (size_t s = 0; s < spans.size(); ++s) {
            if (claimed[s] || spans[s].p2 != wanted) continue;
            int delta = spans[s].begin - parent_begin;
            if (forward ? delta <= 0 : delta >= 0) continue;
            int distance = std::abs(delta);
            if (best < 0 || distance < best_distance) {
                best = static_cast<int>(s);
                best_distance = distance;
            }
        }
        return best;
    };

    auto order = [&](int begin) { return forward ? begin : -begin; };
    using Entry = std::pair<int, int>;   // (processing key, tree node)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pending;

    int root_node = place(root_span, 0);
    tree.root = root_node;
    pending.emplace(order(spans[static_cast<size_t>(root_span)].begin), root_node);

    while (!pending.empty()) {
        int n = pending.top().second;
        pending.pop();
        const TagSpan& sp = spans[static_cast<size_t>(node_span[static_cast<size_t>(n)])];

        if (sp.p3 != Slot::None) {
            int s = claim(sp.begin, make_link(true, complement_role(slot_role(sp.p3))));
            if (s < 0) {
                ++diag.unresolved_slots;
            } else {
                int child = place(s, link_role(spans[static_cast<size_t>(s)].p2));
                tree.nodes[static_cast<size_t>(n)].left = child;
                pending.emplace(order(spans[static_cast<size_t>(s)].begin), child);
            }
        }
        if (sp.p4 != Slot::None) {
            Link wanted = sp.p4 == Slot::Brother
                              ? Link::Brother
                              : make_link(false, complement_role(slot_role(sp.p4)));
            int s = claim(sp.begin, wanted);
            if (s < 0) {
                ++diag.unresolved_slots;
            } else {
                int child = place(s, link_role(spans[static_cast<size_t>(s)].p2));
                tree.nodes[static_cast<size_t>(n)].right = child;
                tree.nodes[static_cast<size_t>(n)].right_is_brother =
                    sp.p4 == Slot::Brother;
                pending.emplace(order(spans[static_cast<size_t>(s)].begin), child);
            }
        }
    }

    diag.unclaimed_spans +=
        static_cast<long>(std::count(claimed.begin(), claimed.end(), false));
    return tree;
}

RelationForest binary_to_forest(const BinaryRelationTree& tree, Direction direction,
                                DecodeDiagnostics& diag) {
    RelationForest forest;
    forest.direction = direction;
    if (tree.root < 0) return forest;

    // (binary node, forest parent index or -1 for a new root)
    std::vector<std::pair<int, int>> stack{{tree.root, -1}};
    while (!stack.empty()) {
        auto [b, forest_parent] = stack.back();
        stack.pop_back();
        const auto& bn = tree.nodes[static_cast<size_t>(b)];

        int self = static_cast<int>(forest.nodes.size());
        forest.nodes.push_back(ForestNode{bn.entity, bn.begin, bn.end, forest_parent,
                                          {}, forest_parent >= 0 ? bn.role : 0});
        if (forest_parent >= 0)
            forest.nodes[static_cast<size_t>(forest_parent)].children.push_back(self);
        else
            forest.roots.push_back(self);

        // Right first so the left subtree is processed before the sibling
        // chain grows the parent's child list out of order.
        if (bn.right >= 0) {
            if (bn.right_is_brother) {
                stack.emplace_back(bn.right, -1);
            } else if (forest_parent >= 0) {
                stack.emplace_back(bn.right, forest_parent);
            } else {
                ++diag.dropped_edges;   // role edge off a root has no forest parent
                stack.emplace_back(bn.right, -1);
            }
        }
        if (bn.left >= 0) stack.emplace_back(bn.left, self);
    }
    return forest;
}

void fill_forest_entities(RelationForest& forest, const std::vector<Token>& tokens,
                          const std::string& joiner) {
    for (auto& node : forest.nodes)
        if (node.entity.empty())
            node.entity = span_text(tokens, node.begin, node.end, joiner);
}

std::vector<Triple> forest_to_triples(const RelationForest& forest,
                                      const std::string& relation) {
    std::vector<Triple> out;
    for (const auto& node : forest.nodes) {
        if (node.parent < 0 || node.role == 0) continue;
        const auto& parent = forest.nodes[static_cast<size_t>(node.parent)];
        if (node.role == 1)
            out.push_back(Triple{node.entity, relation, parent.entity});
        else
            out.push_back(Triple{parent.entity, relation, node.entity});
    }
    normalize_triples(out);
    return out;
}

DecodeResult decode_sentence(const BiTTEncoding& encoding,
                             const std::vector<Token>& tokens,
                             DecodeMode mode,
                             const std::string& joiner) {
    DecodeResult result;
    for (const auto& group : encoding.groups) {
        for (const auto* seq : {&group.forward, &group.backward}) {
            DecodeDiagnostics diag;
            auto tree = tags_to_tree(*seq, mode, diag);
            auto forest = binary_to_forest(tree, seq->direction, diag);
            fill_forest_entities(forest, tokens, joiner);
            auto triples = forest_to_triples(forest, group.relation);
            result.triples.insert(result.triples.end(), triples.begin(),
                                  triples.end());
            result.diagnostics.merge(diag);
        }
    }
    normalize_triples(result.triples);
    return result;
}

}  // namespace bitt
