#include "bitt/model.hpp"

#include <doctest.h>

#include <set>

using namespace bitt;

TEST_CASE("parse_tag accepts the outside tag") {
    CHECK(parse_tag("O") == BiTTTag::O());
    CHECK(parse_tag("O").outside());
}

TEST_CASE("parse_tag on worked-example tags") {
    auto t = parse_tag("B-RT-2-N");
    REQUIRE(t.quad.has_value());
    CHECK(t.quad->p1 == Pos::B);
    CHECK(t.quad->p2 == Link::Root);
    CHECK(t.quad->p3 == Slot::Role2);
    CHECK(t.quad->p4 == Slot::None);

    auto u = parse_tag("S-L1-N-2");
    REQUIRE(u.quad.has_value());
    CHECK(u.quad->p1 == Pos::S);
    CHECK(u.quad->p2 == Link::L1);
    CHECK(u.quad->p3 == Slot::None);
    CHECK(u.quad->p4 == Slot::Role2);
}

TEST_CASE("render_tag canonical forms") {
    CHECK(render_tag(BiTTTag::O()) == "O");
    CHECK(render_tag(BiTTTag::make(Pos::S, Link::R1, Slot::None, Slot::None)) ==
          "S-R1-N-N");
    CHECK(render_tag(BiTTTag::make(Pos::E, Link::R2, Slot::None, Slot::None)) ==
          "E-R2-N-N");
}

TEST_CASE("parse errors name the offending part") {
    CHECK_THROWS_WITH_AS(parse_tag("X-RT-N-N"),
                         doctest::Contains("part 1"), TagParseError);
    CHECK_THROWS_WITH_AS(parse_tag("B-XX-N-N"),
                         doctest::Contains("part 2"), TagParseError);
    CHECK_THROWS_WITH_AS(parse_tag("B-RT-BR-N"),
                         doctest::Contains("part 3"), TagParseError);
    CHECK_THROWS_WITH_AS(parse_tag("B-RT-N-X"),
                         doctest::Contains("part 4"), TagParseError);
    CHECK_THROWS_AS(parse_tag("B-RT-N"), TagParseError);
    CHECK_THROWS_AS(parse_tag("B-RT-N-N-N"), TagParseError);
    CHECK_THROWS_AS(parse_tag(""), TagParseError);
}

TEST_CASE("round trip over every structurally valid tag") {
    std::set<std::string> rendered;
    for (Pos p1 : {Pos::B, Pos::I, Pos::E, Pos::S})
        for (Link p2 : {Link::Root, Link::Brother, Link::L1, Link::L2, Link::R1,
                        Link::R2})
            for (Slot p3 : {Slot::None, Slot::Role1, Slot::Role2})
                for (Slot p4 :
                     {Slot::None, Slot::Brother, Slot::Role1, Slot::Role2}) {
                    auto tag = BiTTTag::make(p1, p2, p3, p4);
                    auto text = render_tag(tag);
                    CHECK(parse_tag(text) == tag);
                    rendered.insert(text);
                }
    CHECK(parse_tag(render_tag(BiTTTag::O())) == BiTTTag::O());
    CHECK(rendered.size() == 4u * 6u * 3u * 4u);
}

TEST_CASE("part alphabets have sizes 6, 8, 5, 6") {
    CHECK(part_alphabet(1).size() == 6);
    CHECK(part_alphabet(2).size() == 8);
    CHECK(part_alphabet(3).size() == 5);
    CHECK(part_alphabet(4).size() == 6);
    for (int part = 1; part <= 4; ++part) {
        auto alphabet = part_alphabet(part);
        std::set<std::string> unique(alphabet.begin(), alphabet.end());
        CHECK(unique.size() == alphabet.size());
        CHECK(unique.count(kPadLabel) == 1);
        CHECK(unique.count(kOutsideLabel) == 1);
    }
}

namespace {

TagSequence sequence_of(const std::vector<std::string>& texts) {
    TagSequence seq;
    seq.relation = "rel";
    for (const auto& t : texts) seq.tags.push_back(parse_tag(t));
    return seq;
}

}  // namespace

TEST_CASE("BIES well-formedness checker") {
    CHECK(bies_well_formed(sequence_of({"O", "O"})));
    CHECK(bies_well_formed(sequence_of({"S-RT-N-N", "O"})));
    CHECK(bies_well_formed(
        sequence_of({"B-RT-2-N", "I-RT-2-N", "E-RT-2-N", "O", "S-L1-N-2"})));
    // dangling I
    CHECK_FALSE(bies_well_formed(sequence_of({"I-RT-N-N", "O"})));
    // B without E
    CHECK_FALSE(bies_well_formed(sequence_of({"B-RT-N-N", "O"})));
    // parts change inside a span
    CHECK_FALSE(bies_well_formed(sequence_of({"B-RT-2-N", "E-RT-1-N"})));
    // two roots
    CHECK_FALSE(bies_well_formed(sequence_of({"S-RT-N-N", "S-RT-N-N"})));
}

TEST_CASE("normalize_triples deduplicates") {
    std::vector<Triple> triples{{"A", "r", "B"}, {"A", "r", "B"}, {"A", "q", "B"}};
    normalize_triples(triples);
    CHECK(triples.size() == 2);
    CHECK(std::is_sorted(triples.begin(), triples.end()));
}

TEST_CASE("span_text joins with the corpus joiner") {
    auto s = make_sentence("s", {"New", "York", "City"}, {});
    CHECK(span_text(s.tokens, 0, 2, " ") == "New York");
    CHECK(span_text(s.tokens, 0, 3, "") == "NewYorkCity");
    CHECK(span_text(s.tokens, 2, 3, " ") == "City");
}
