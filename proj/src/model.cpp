#include "bitt/model.hpp"

#include <algorithm>
#include <array>

namespace bitt {

AnnotatedSentence make_sentence(std::string id,
                                const std::vector<std::string>& words,
                                std::vector<Triple> triples,
                                std::vector<MentionSpan> mentions) {
    AnnotatedSentence s;
    s.id = std::move(id);
    s.tokens.reserve(words.size());
    for (size_t i = 0; i < words.size(); ++i)
        s.tokens.push_back(Token{words[i], static_cast<int>(i)});
    normalize_triples(triples);
    s.triples = std::move(triples);
    s.mentions = std::move(mentions);
    return s;
}

void normalize_triples(std::vector<Triple>& triples) {
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
}

namespace {

const char* pos_name(Pos p) {
    switch (p) {
        case Pos::B: return "B";
        case Pos::I: return "I";
        case Pos::E: return "E";
        case Pos::S: return "S";
    }
    return "?";
}

const char* link_name(Link l) {
    switch (l) {
        case Link::Root: return "RT";
        case Link::Brother: return "BR";
        case Link::L1: return "L1";
        case Link::L2: return "L2";
        case Link::R1: return "R1";
        case Link::R2: return "R2";
    }
    return "?";
}

const char* slot_name(Slot s) {
    switch (s) {
        case Slot::None: return "N";
        case Slot::Role1: return "1";
        case Slot::Role2: return "2";
        case Slot::Brother: return "BR";
    }
    return "?";
}

std::optional<Pos> pos_from(std::string_view t) {
    if (t == "B") return Pos::B;
    if (t == "I") return Pos::I;
    if (t == "E") return Pos::E;
    if (t == "S") return Pos::S;
    return std::nullopt;
}

std::optional<Link> link_from(std::string_view t) {
    if (t == "RT") return Link::Root;
    if (t == "BR") return Link::Brother;
    if (t == "L1") return Link::L1;
    if (t == "L2") return Link::L2;
    if (t == "R1") return Link::R1;
    if (t == "R2") return Link::R2;
    return std::nullopt;
}

std::optional<Slot> slot_from(std::string_view t, bool allow_brother) {
    if (t == "N") return Slot::None;
    if (t == "1") return Slot::Role1;
    if (t == "2") return Slot::Role2;
    if (t == "BR" && allow_brother) return Slot::Brother;
    return std::nullopt;
}

}  // namespace

BiTTTag parse_tag(std::string_view text) {
    if (text == "O") return BiTTTag::O();

    std::array<std::string_view, 4> part;
    size_t start = 0;
    int n = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '-') {
            if (n == 4)
                throw TagParseError("tag has more than four parts: '" +
                                    std::string(text) + "'");
            part[n++] = text.substr(start, i - start);
            start = i + 1;
        }
    }
    if (n != 4)
        throw TagParseError("tag must be 'O' or four hyphen-joined parts: '" +
                            std::string(text) + "'");

    auto p1 = pos_from(part[0]);
    if (!p1)
        throw TagParseError("bad part 1 '" + std::string(part[0]) +
                            "': expected B, I, E or S");
    auto p2 = link_from(part[1]);
    if (!p2)
        throw TagParseError("bad part 2 '" + std::string(part[1]) +
                            "': expected RT, BR, L1, L2, R1 or R2");
    auto p3 = slot_from(part[2], /*allow_brother=*/false);
    if (!p3)
        throw TagParseError("bad part 3 '" + std::string(part[2]) +
                            "': expected N, 1 or 2");
    auto p4 = slot_from(part[3], /*allow_brother=*/true);
    if (!p4)
        throw TagParseError("bad part 4 '" + std::string(part[3]) +
                            "': expected N, BR, 1 or 2");

    return BiTTTag::make(*p1, *p2, *p3, *p4);
}

std::string render_tag(const BiTTTag& tag) {
    if (tag.outside()) return "O";
    const auto& q = *tag.quad;
    std::string out;
    out.reserve(10);
    out += pos_name(q.p1);
    out += '-';
    out += link_name(q.p2);
    out += '-';
    out += slot_name(q.p3);
    out += '-';
    out += slot_name(q.p4);
    return out;
}

std::vector<std::string> part_alphabet(int part) {
    switch (part) {
        case 1: return {"B", "I", "E", "S", kOutsideLabel, kPadLabel};
        case 2: return {"RT", "BR", "L1", "L2", "R1", "R2", kOutsideLabel, kPadLabel};
        case 3: return {"N", "1", "2", kOutsideLabel, kPadLabel};
        case 4: return {"N", "BR", "1", "2", kOutsideLabel, kPadLabel};
        default: throw std::invalid_argument("tag part must be 1..4");
    }
}

bool bies_well_formed(const TagSequence& seq) {
    // States: 0 = outside, 1 = inside an open span (after B or I).
    int state = 0;
    const BiTTTag::Quad* open = nullptr;
    for (const auto& tag : seq.tags) {
        if (tag.outside()) {
            if (state != 0) return false;
            continue;
        }
        const auto& q = *tag.quad;
        switch (q.p1) {
            case Pos::S:
                if (state != 0) return false;
                break;
            case Pos::B:
                if (state != 0) return false;
                state = 1;
                open = &q;
                break;
            case Pos::I:
            case Pos::E:
                if (state != 1) return false;
                if (q.p2 != open->p2 || q.p3 != open->p3 || q.p4 != open->p4)
                    return false;
                if (q.p1 == Pos::E) {
                    state = 0;
                    open = nullptr;
                }
                break;
        }
    }
    if (state != 0) return false;

    int roots = 0;
    for (const auto& tag : seq.tags)
        if (tag.quad && tag.quad->p2 == Link::Root &&
            (tag.quad->p1 == Pos::B || tag.quad->p1 == Pos::S))
            ++roots;
    return roots <= 1;
}

std::string span_text(const std::vector<Token>& tokens, int begin, int end,
                      const std::string& joiner) {
    std::string out;
    for (int i = begin; i < end; ++i) {
        if (i > begin) out += joiner;
        out += tokens[static_cast<size_t>(i)].text;
    }
    return out;
}

}  // namespace bitt
