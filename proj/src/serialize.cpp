#include "bitt/serialize.hpp"

using nlohmann::json;
using nlohmann::ordered_json;

namespace bitt {

namespace {

ordered_json sequence_to_json(const TagSequence& seq) {
    ordered_json arr = ordered_json::array();
    for (const auto& tag : seq.tags) arr.push_back(render_tag(tag));
    return arr;
}

TagSequence sequence_from_json(const json& arr, std::string relation,
                               Direction direction) {
    TagSequence seq;
    seq.relation = std::move(relation);
    seq.direction = direction;
    for (const auto& t : arr) seq.tags.push_back(parse_tag(t.get<std::string>()));
    return seq;
}

}  // namespace

ordered_json encoding_to_json(const BiTTEncoding& encoding,
                              const std::vector<Token>& tokens) {
    ordered_json j;
    j["id"] = encoding.id;
    ordered_json toks = ordered_json::array();
    for (const auto& t : tokens) toks.push_back(t.text);
    j["tokens"] = std::move(toks);
    ordered_json groups = ordered_json::object();
    for (const auto& g : encoding.groups) {
        ordered_json pair;
        pair["forward"] = sequence_to_json(g.forward);
        pair["backward"] = sequence_to_json(g.backward);
        groups[g.relation] = std::move(pair);
    }
    j["groups"] = std::move(groups);
    return j;
}

BiTTEncoding encoding_from_json(const json& j, std::vector<Token>& tokens) {
    BiTTEncoding encoding;
    encoding.id = j.at("id").get<std::string>();
    tokens.clear();
    int index = 0;
    for (const auto& t : j.at("tokens"))
        tokens.push_back(Token{t.get<std::string>(), index++});
    for (const auto& [relation, pair] : j.at("groups").items()) {
        BiTTEncoding::Group g;
        g.relation = relation;
        g.forward = sequence_from_json(pair.at("forward"), relation,
                                       Direction::Forward);
        g.backward = sequence_from_json(pair.at("backward"), relation,
                                        Direction::Backward);
        encoding.groups.push_back(std::move(g));
    }
    return encoding;
}

ordered_json triples_to_json(const std::string& id,
                             const std::vector<Triple>& triples,
                             const DecodeDiagnostics* diagnostics) {
    ordered_json j;
    j["id"] = id;
    ordered_json arr = ordered_json::array();
    for (const auto& t : triples) {
        ordered_json triple;
        triple["head"] = t.head;
        triple["relation"] = t.relation;
        triple["tail"] = t.tail;
        arr.push_back(std::move(triple));
    }
    j["triples"] = std::move(arr);
    if (diagnostics) {
        ordered_json d = ordered_json::object();
        for (const auto& [key, count] : diagnostics->counts()) d[key] = count;
        j["diagnostics"] = std::move(d);
    }
    return j;
}

std::vector<Triple> triples_from_json(const json& j, std::string* id) {
    if (id && j.contains("id")) *id = j.at("id").get<std::string>();
    std::vector<Triple> out;
    for (const auto& t : j.at("triples"))
        out.push_back(Triple{t.at("head").get<std::string>(),
                             t.at("relation").get<std::string>(),
                             t.at("tail").get<std::string>()});
    normalize_triples(out);
    return out;
}

ordered_json flags_to_json(const std::string& id, const OverlapFlags& flags) {
    ordered_json j;
    j["id"] = id;
    j["epo"] = flags.epo;
    j["els"] = flags.els;
    j["ils"] = flags.ils;
    return j;
}

ordered_json stats_to_json(const StatsReport& report) {
    ordered_json j;
    j["epo"] = report.epo;
    j["els"] = report.els;
    j["ils"] = report.ils;
    j["overlap_union"] = report.overlap_union;
    j["total"] = report.total;
    j["overlap_fraction"] = report.overlap_fraction();
    return j;
}

ordered_json coverage_to_json(const CoverageReport& report) {
    ordered_json j;
    ordered_json classes = ordered_json::object();
    for (int c = 0; c < 4; ++c) {
        const auto& s = report.by_class[c];
        ordered_json cls;
        cls["sentences"] = s.sentences;
        cls["gold_triples"] = s.gold_triples;
        cls["recovered_triples"] = s.recovered_triples;
        cls["lossless_sentences"] = s.lossless_sentences;
        classes[to_string(static_cast<OverlapClass>(c))] = std::move(cls);
    }
    j["classes"] = std::move(classes);
    j["micro"] = score_to_json(report.micro());
    j["failed_sentences"] = report.failed_sentences;
    ordered_json diag = ordered_json::object();
    for (const auto& [key, count] : report.diagnostics) diag[key] = count;
    j["diagnostics"] = std::move(diag);
    return j;
}

ordered_json score_to_json(const Score& score) {
    ordered_json j;
    j["precision"] = score.precision;
    j["recall"] = score.recall;
    j["f1"] = score.f1;
    return j;
}

}  // namespace bitt
