#include "bitt/encode.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <map>
#include <set>

namespace bitt {

std::vector<Occurrence> find_occurrences(const std::vector<Token>& tokens,
                                         const std::string& entity,
                                         const std::string& joiner) {
    std::vector<Occurrence> out;
    if (entity.empty()) return out;
    const int n = static_cast<int>(tokens.size());
    int b = 0;
    while (b < n) {
        std::string acc;
        bool matched = false;
        for (int e = b; e < n; ++e) {
            if (e > b) acc += joiner;
            acc += tokens[static_cast<size_t>(e)].text;
            if (acc.size() > entity.size()) break;
            if (acc == entity) {
                out.push_back(Occurrence{entity, b, e + 1});
                b = e + 1;   // greedy, non-overlapping
                matched = true;
                break;
            }
        }
        if (!matched) ++b;
    }
    return out;
}

namespace {

std::vector<Occurrence> entity_occurrences(const AnnotatedSentence& sentence,
                                           const std::string& entity,
                                           const std::string& joiner) {
    std::vector<Occurrence> out;
    for (const auto& m : sentence.mentions)
        if (m.entity == entity) out.push_back(Occurrence{entity, m.begin, m.end});
    if (!out.empty()) return out;
    return find_occurrences(sentence.tokens, entity, joiner);
}

int first_position(const AnnotatedSentence& sentence, const std::string& entity,
                   const std::string& joiner,
                   std::map<std::string, int>& cache) {
    auto it = cache.find(entity);
    if (it != cache.end()) return it->second;
    auto occ = entity_occurrences(sentence, entity, joiner);
    int pos = occ.empty() ? INT_MAX : occ.front().begin;
    for (const auto& o : occ) pos = std::min(pos, o.begin);
    cache[entity] = pos;
    return pos;
}

}  // namespace

std::vector<std::pair<std::string, std::vector<Triple>>>
group_by_relation(const AnnotatedSentence& sentence, const std::string& joiner) {
    std::map<std::string, int> pos_cache;
    std::vector<Triple> ordered = sentence.triples;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [&](const Triple& a, const Triple& b) {
                         auto key = [&](const Triple& t) {
                             return std::tuple(
                                 first_position(sentence, t.head, joiner, pos_cache),
                                 first_position(sentence, t.tail, joiner, pos_cache),
                                 t.relation);
                         };
                         return key(a) < key(b);
                     });

    std::vector<std::pair<std::string, std::vector<Triple>>> groups;
    std::map<std::string, size_t> index;
    for (const auto& t : ordered) {
        auto [it, inserted] = index.emplace(t.relation, groups.size());
        if (inserted) groups.push_back({t.relation, {}});
        groups[it->second].second.push_back(t);
    }
    for (auto& [rel, triples] : groups) normalize_triples(triples);
    return groups;
}

std::vector<Occurrence> locate_occurrences(const AnnotatedSentence& sentence,
                                           const std::vector<Triple>& group,
                                           Direction direction,
                                           const std::string& joiner) {
    std::set<std::string> entities;
    for (const auto& t : group) {
        entities.insert(t.head);
        entities.insert(t.tail);
    }

    std::vector<Occurrence> all;
    for (const auto& entity : entities) {
        auto occ = entity_occurrences(sentence, entity, joiner);
        if (occ.empty())
            throw EntityNotFoundError("entity '" + entity +
                                      "' not found in sentence '" + sentence.id + "'");
        all.insert(all.end(), occ.begin(), occ.end());
    }

    std::sort(all.begin(), all.end(), [](const Occurrence& a, const Occurrence& b) {
        return std::tie(a.begin, a.end) < std::tie(b.begin, b.end);
    });
    for (size_t i = 1; i < all.size(); ++i)
        if (all[i].begin < all[i - 1].end)
            throw SpanOverlapError("overlapping mention spans of '" + all[i - 1].entity +
                                   "' and '" + all[i].entity + "' in sentence '" +
                                   sentence.id + "'");

    if (direction == Direction::Backward)
        std::reverse(all.begin(), all.end());
    return all;
}

RelationForest build_forest(const std::vector<Occurrence>& occurrences,
                            const std::vector<Triple>& group,
                            Direction direction,
                            ParentRule parent_rule) {
    std::set<std::pair<std::string, std::string>> directed;
    for (const auto& t : group) directed.emplace(t.head, t.tail);
    auto has_triple = [&](const std::string& a, const std::string& b) {
        return directed.count({a, b}) > 0;
    };
    auto related = [&](const std::string& a, const std::string& b) {
        return has_triple(a, b) || has_triple(b, a);
    };

    RelationForest forest;
    forest.direction = direction;

    std::vector<bool> attached(occurrences.size(), false);
    for (size_t seed = 0; seed < occurrences.size(); ++seed) {
        if (attached[seed]) continue;
        attached[seed] = true;
        int root = static_cast<int>(forest.nodes.size());
        forest.nodes.push_back(ForestNode{occurrences[seed].entity,
                                          occurrences[seed].begin,
                                          occurrences[seed].end,
                                          -1, {}, 0});
        forest.roots.push_back(root);
        int tree_first = root;

        // Single scan in occurrence order: each candidate sees only nodes
        // added before it, so parents always precede children (forward) or
        // follow them (backward).
        for (size_t i = seed + 1; i < occurrences.size(); ++i) {
            if (attached[i]) continue;
            const auto& occ = occurrences[i];

            int parent = -1;
            int best_distance = INT_MAX;
            for (int n = tree_first; n < static_cast<int>(forest.nodes.size()); ++n) {
                const auto& node = forest.nodes[static_cast<size_t>(n)];
                if (!related(occ.entity, node.entity)) continue;
                if (parent_rule == ParentRule::Earliest) {
                    parent = n;
                    break;
                }
                int distance = std::abs(occ.begin - node.begin);
                if (distance < best_distance) {
                    best_distance = distance;
                    parent = n;
                }
            }
            if (parent < 0) continue;

            attached[i] = true;
            auto& parent_node = forest.nodes[static_cast<size_t>(parent)];
            // The edge encodes the triple whose e1 is the parent when both
            // orientations exist; the opposite pass picks up the other.
            int role = has_triple(parent_node.entity, occ.entity) ? 2 : 1;
            int child = static_cast<int>(forest.nodes.size());
            forest.nodes.push_back(
                ForestNode{occ.entity, occ.begin, occ.end, parent, {}, role});
            forest.nodes[static_cast<size_t>(parent)].children.push_back(child);
        }
    }
    return forest;
}

BinaryRelationTree forest_to_binary(const RelationForest& forest) {
    BinaryRelationTree tree;
    tree.nodes.reserve(forest.nodes.size());
    for (const auto& fn : forest.nodes)
        tree.nodes.push_back(
            BinaryNode{fn.entity, fn.begin, fn.end, -1, -1, false, fn.role});

    for (size_t i = 1; i < forest.roots.size(); ++i) {
        auto& prev = tree.nodes[static_cast<size_t>(forest.roots[i - 1])];
        prev.right = forest.roots[i];
        prev.right_is_brother = true;
    }
    for (size_t n = 0; n < forest.nodes.size(); ++n) {
        const auto& children = forest.nodes[n].children;
        if (children.empty()) continue;
        tree.nodes[n].left = children.front();
        for (size_t c = 1; c < children.size(); ++c)
            tree.nodes[static_cast<size_t>(children[c - 1])].right = children[c];
    }
    tree.root = forest.roots.empty() ? -1 : forest.roots.front();
    return tree;
}

TagSequence tree_to_tags(const BinaryRelationTree& tree,
                         const std::string& relation,
                         Direction direction,
                         int sentence_length) {
    TagSequence seq;
    seq.relation = relation;
    seq.direction = direction;
    seq.tags.assign(static_cast<size_t>(sentence_length), BiTTTag::O());
    if (tree.root < 0) return seq;

    // p2 per node from the edge to the binary parent.
    std::vector<Link> p2(tree.nodes.size(), Link::Root);
    std::vector<int> stack{tree.root};
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        const auto& node = tree.nodes[static_cast<size_t>(n)];
        if (node.left >= 0) {
            p2[static_cast<size_t>(node.left)] =
                make_link(true, tree.nodes[static_cast<size_t>(node.left)].role);
            stack.push_back(node.left);
        }
        if (node.right >= 0) {
            p2[static_cast<size_t>(node.right)] =
                node.right_is_brother
                    ? Link::Brother
                    : make_link(false, tree.nodes[static_cast<size_t>(node.right)].role);
            stack.push_back(node.right);
        }
    }

    for (size_t n = 0; n < tree.nodes.size(); ++n) {
        const auto& node = tree.nodes[n];
        Slot p3 = node.left < 0
                      ? Slot::None
                      : role_slot(complement_role(
                            tree.nodes[static_cast<size_t>(node.left)].role));
        Slot p4 = Slot::None;
        if (node.right >= 0)
            p4 = node.right_is_brother
                     ? Slot::Brother
                     : role_slot(complement_role(
                           tree.nodes[static_cast<size_t>(node.right)].role));

        if (node.begin < 0 || node.end > sentence_length || node.begin >= node.end)
            throw EncodeError("entity span out of range in tree_to_tags");
        for (int w = node.begin; w < node.end; ++w) {
            if (!seq.tags[static_cast<size_t>(w)].outside())
                throw SpanOverlapError("entity span collision at token " +
                                       std::to_string(w));
            Pos p1;
            if (node.end - node.begin == 1) p1 = Pos::S;
            else if (w == node.begin) p1 = Pos::B;
            else if (w == node.end - 1) p1 = Pos::E;
            else p1 = Pos::I;
            seq.tags[static_cast<size_t>(w)] = BiTTTag::make(p1, p2[n], p3, p4);
        }
    }
    return seq;
}

BiTTEncoding encode_sentence(const AnnotatedSentence& sentence,
                             const EncodeOptions& options) {
    BiTTEncoding encoding;
    encoding.id = sentence.id;
    const int length = static_cast<int>(sentence.tokens.size());

    for (const auto& [relation, triples] : group_by_relation(sentence, options.joiner)) {
        BiTTEncoding::Group group;
        group.relation = relation;
        for (Direction dir : {Direction::Forward, Direction::Backward}) {
            auto occurrences = locate_occurrences(sentence, triples, dir, options.joiner);
            auto forest = build_forest(occurrences, triples, dir, options.parent_rule);
            auto tree = forest_to_binary(forest);
            auto tags = tree_to_tags(tree, relation, dir, length);
            (dir == Direction::Forward ? group.forward : group.backward) =
                std::move(tags);
        }
        encoding.groups.push_back(std::move(group));
    }
    return encoding;
}

}  // namespace bitt
