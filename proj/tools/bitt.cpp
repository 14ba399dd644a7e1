#include "bitt/batch.hpp"
#include "bitt/corpus_io.hpp"
#include "bitt/decode.hpp"
#include "bitt/encode.hpp"
#include "bitt/evalgen.hpp"
#include "bitt/overlap.hpp"
#include "bitt/serialize.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;
constexpr int kExitUsage = 64;
constexpr size_t kChunk = 4096;

void diagnostic(const std::string& level, const std::string& code,
                const std::string& sentence_id, const std::string& message) {
    ordered_json j;
    j["level"] = level;
    j["code"] = code;
    if (!sentence_id.empty()) j["sentence_id"] = sentence_id;
    j["message"] = message;
    std::cerr << j.dump() << '\n';
}

struct CommonOptions {
    std::string input;
    std::string output;
    std::string format_config;
    std::string direction = "both";
    std::string mode = "strict";
    std::string parent_rule = "earliest";
    uint64_t seed = 0;
    int jobs = 0;

    bitt::FormatConfig format() const {
        return format_config.empty()
                   ? bitt::FormatConfig{}
                   : bitt::FormatConfig::from_json_file(format_config);
    }
    bitt::EncodeOptions encode_options() const {
        bitt::EncodeOptions o;
        o.parent_rule = parent_rule == "nearest" ? bitt::ParentRule::Nearest
                                                 : bitt::ParentRule::Earliest;
        o.joiner = format().joiner;
        return o;
    }
    bitt::DecodeMode decode_mode() const {
        return mode == "lenient" ? bitt::DecodeMode::Lenient
                                 : bitt::DecodeMode::Strict;
    }
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_input = true) {
    auto* in = cmd->add_option("--input", opt.input, "input JSONL file");
    if (needs_input) in->required();
    cmd->add_option("--output", opt.output, "output file (default stdout)");
    cmd->add_option("--format-config", opt.format_config,
                    "JSON file mapping corpus field names");
    cmd->add_option("--direction", opt.direction, "tag direction to use")
        ->check(CLI::IsMember({"both", "forward", "backward"}));
    cmd->add_option("--mode", opt.mode, "decoding mode")
        ->check(CLI::IsMember({"strict", "lenient"}));
    cmd->add_option("--parent-rule", opt.parent_rule,
                    "forest attachment rule")
        ->check(CLI::IsMember({"earliest", "nearest"}));
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--jobs", opt.jobs, "worker threads (0 = auto)");
}

class OutputStream {
public:
    explicit OutputStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw bitt::CorpusError("cannot open output: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// Streams the corpus in chunks through a per-sentence worker, preserving
// input order in the output.
template <typename Fn>
void stream_corpus(const CommonOptions& opt, Fn&& per_sentence) {
    std::ifstream in(opt.input);
    if (!in) throw bitt::CorpusError("cannot open corpus: " + opt.input);
    OutputStream out(opt.output);
    bitt::CorpusReader reader(in, opt.format());

    std::vector<bitt::AnnotatedSentence> chunk;
    auto flush = [&] {
        auto lines = bitt::map_ordered(chunk, per_sentence, opt.jobs);
        for (const auto& line : lines)
            if (!line.empty()) out.get() << line << '\n';
        chunk.clear();
    };
    while (auto s = reader.next()) {
        chunk.push_back(std::move(*s));
        if (chunk.size() >= kChunk) flush();
    }
    flush();

    const auto& d = reader.diagnostics();
    if (d.skipped_sentences > 0)
        diagnostic("warning", "skipped_sentences", "",
                   std::to_string(d.skipped_sentences) +
                       " sentence(s) had no locatable triple");
    if (d.dropped_triples > 0)
        diagnostic("warning", "dropped_triples", "",
                   std::to_string(d.dropped_triples) +
                       " triple(s) had unlocatable entities");
}

bitt::BiTTEncoding filter_direction(bitt::BiTTEncoding encoding,
                                    const std::string& direction) {
    if (direction == "both") return encoding;
    for (auto& g : encoding.groups) {
        if (direction == "forward") g.backward.tags.clear();
        if (direction == "backward") g.forward.tags.clear();
    }
    return encoding;
}

int run_classify(const CommonOptions& opt) {
    stream_corpus(opt, [&](const bitt::AnnotatedSentence& s) {
        return bitt::flags_to_json(s.id, bitt::classify(s)).dump();
    });
    return kExitOk;
}

int run_encode(const CommonOptions& opt) {
    auto options = opt.encode_options();
    std::string direction = opt.direction;
    stream_corpus(opt, [&](const bitt::AnnotatedSentence& s) -> std::string {
        try {
            auto encoding =
                filter_direction(bitt::encode_sentence(s, options), direction);
            ordered_json j = bitt::encoding_to_json(encoding, s.tokens);
            if (direction != "both") {
                for (auto& [rel, pair] : j.at("groups").items())
                    pair.erase(direction == "forward" ? "backward" : "forward");
            }
            return j.dump();
        } catch (const bitt::EncodeError& e) {
            diagnostic("warning", "encode_error", s.id, e.what());
            return {};
        }
    });
    return kExitOk;
}

int run_decode(const CommonOptions& opt) {
    std::ifstream in(opt.input);
    if (!in) throw bitt::CorpusError("cannot open input: " + opt.input);
    OutputStream out(opt.output);
    auto mode = opt.decode_mode();
    auto joiner = opt.format().joiner;

    struct Item {
        bitt::BiTTEncoding encoding;
        std::vector<bitt::Token> tokens;
    };
    std::vector<Item> chunk;
    auto flush = [&] {
        auto lines = bitt::map_ordered(
            chunk,
            [&](const Item& item) {
                auto result = bitt::decode_sentence(item.encoding, item.tokens,
                                                    mode, joiner);
                return bitt::triples_to_json(item.encoding.id, result.triples,
                                             &result.diagnostics)
                    .dump();
            },
            opt.jobs);
        for (const auto& line : lines) out.get() << line << '\n';
        chunk.clear();
    };

    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Item item;
        try {
            json j = json::parse(line);
            item.encoding = bitt::encoding_from_json(j, item.tokens);
        } catch (const std::exception& e) {
            throw bitt::CorpusError("line " + std::to_string(line_no) + ": " +
                                    e.what());
        }
        if (opt.direction != "both")
            item.encoding = filter_direction(std::move(item.encoding), opt.direction);
        chunk.push_back(std::move(item));
        if (chunk.size() >= kChunk) flush();
    }
    flush();
    return kExitOk;
}

int run_stats(const CommonOptions& opt) {
    std::ifstream in(opt.input);
    if (!in) throw bitt::CorpusError("cannot open corpus: " + opt.input);
    bitt::CorpusReader reader(in, opt.format());
    bitt::StatsReport report;
    while (auto s = reader.next()) report.add(bitt::classify(*s));

    OutputStream out(opt.output);
    out.get() << bitt::stats_to_json(report).dump() << '\n'
              << bitt::stats_table(report);
    return kExitOk;
}

int run_roundtrip(const CommonOptions& opt) {
    bitt::LoadDiagnostics load_diag;
    auto sentences = bitt::load_corpus(opt.input, opt.format(), &load_diag);
    auto report = bitt::roundtrip_report(sentences, opt.encode_options(),
                                         opt.decode_mode(), opt.jobs);
    OutputStream out(opt.output);
    out.get() << bitt::coverage_to_json(report).dump() << '\n'
              << bitt::coverage_table(report);
    if (load_diag.skipped_sentences > 0)
        diagnostic("warning", "skipped_sentences", "",
                   std::to_string(load_diag.skipped_sentences) +
                       " sentence(s) had no locatable triple");
    return kExitOk;
}

int run_score(const CommonOptions& opt, const std::string& gold_path) {
    auto read_triples = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw bitt::CorpusError("cannot open file: " + path);
        std::map<std::string, std::vector<bitt::Triple>> by_id;
        std::string line;
        long line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            try {
                json j = json::parse(line);
                std::string id = "line-" + std::to_string(line_no);
                auto triples = bitt::triples_from_json(j, &id);
                auto& bucket = by_id[id];
                bucket.insert(bucket.end(), triples.begin(), triples.end());
                bitt::normalize_triples(bucket);
            } catch (const std::exception& e) {
                throw bitt::CorpusError(path + " line " + std::to_string(line_no) +
                                        ": " + e.what());
            }
        }
        return by_id;
    };

    auto predicted = read_triples(opt.input);
    auto gold = read_triples(gold_path);

    long correct = 0, total_predicted = 0, total_gold = 0;
    for (const auto& [id, triples] : gold) total_gold += triples.size();
    for (const auto& [id, triples] : predicted) {
        total_predicted += triples.size();
        auto it = gold.find(id);
        if (it == gold.end()) continue;
        for (const auto& t : triples)
            if (std::binary_search(it->second.begin(), it->second.end(), t))
                ++correct;
    }

    bitt::Score s;
    s.precision = total_predicted == 0
                      ? 0.0
                      : static_cast<double>(correct) / total_predicted;
    s.recall = total_gold == 0 ? 0.0 : static_cast<double>(correct) / total_gold;
    s.f1 = (s.precision + s.recall) == 0.0
               ? 0.0
               : 2.0 * s.precision * s.recall / (s.precision + s.recall);

    OutputStream out(opt.output);
    out.get() << bitt::score_to_json(s).dump() << '\n';
    return kExitOk;
}

int run_generate(const CommonOptions& opt, long count,
                 bitt::SyntheticConfig config) {
    OutputStream out(opt.output);
    for (long i = 0; i < count; ++i) {
        config.seed = opt.seed + static_cast<uint64_t>(i);
        auto s = bitt::generate_synthetic(config);
        ordered_json j;
        j["id"] = s.id;
        ordered_json toks = ordered_json::array();
        for (const auto& t : s.tokens) toks.push_back(t.text);
        j["tokens"] = std::move(toks);
        ordered_json triples = ordered_json::array();
        for (const auto& t : s.triples) {
            ordered_json triple;
            triple["head"] = t.head;
            triple["relation"] = t.relation;
            triple["tail"] = t.tail;
            triples.push_back(std::move(triple));
        }
        j["triples"] = std::move(triples);
        out.get() << j.dump() << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bidirectional tree tagging codec for relational triples"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string gold_path;
    long generate_count = 1;
    bitt::SyntheticConfig synth;
    bool cyclic = false;

    auto* classify_cmd = app.add_subcommand("classify", "overlap flags per sentence");
    add_common(classify_cmd, opt);
    auto* encode_cmd = app.add_subcommand("encode", "triples to tag sequences");
    add_common(encode_cmd, opt);
    auto* decode_cmd = app.add_subcommand("decode", "tag sequences to triples");
    add_common(decode_cmd, opt);
    auto* stats_cmd = app.add_subcommand("stats", "corpus overlap statistics");
    add_common(stats_cmd, opt);
    auto* roundtrip_cmd =
        app.add_subcommand("roundtrip", "encode/decode fidelity report");
    add_common(roundtrip_cmd, opt);
    auto* score_cmd = app.add_subcommand("score", "exact-match P/R/F1");
    add_common(score_cmd, opt);
    score_cmd->add_option("--gold", gold_path, "gold triple JSONL")->required();
    auto* generate_cmd = app.add_subcommand("generate", "synthetic corpus");
    add_common(generate_cmd, opt, /*needs_input=*/false);
    generate_cmd->add_option("--count", generate_count, "number of sentences");
    generate_cmd->add_option("--entities", synth.entities, "entities per sentence");
    generate_cmd->add_option("--relations", synth.relation_labels,
                             "relation labels");
    generate_cmd->add_option("--density", synth.edge_density, "edge density");
    generate_cmd->add_flag("--cyclic", cyclic, "allow relation-graph cycles");
    generate_cmd->add_option("--antiparallel-prob", synth.antiparallel_prob,
                             "reverse-triple probability");
    generate_cmd->add_option("--duplicate-prob", synth.duplicate_mention_prob,
                             "duplicate-mention probability");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (classify_cmd->parsed()) return run_classify(opt);
        if (encode_cmd->parsed()) return run_encode(opt);
        if (decode_cmd->parsed()) return run_decode(opt);
        if (stats_cmd->parsed()) return run_stats(opt);
        if (roundtrip_cmd->parsed()) return run_roundtrip(opt);
        if (score_cmd->parsed()) return run_score(opt, gold_path);
        if (generate_cmd->parsed()) {
            synth.acyclic = !cyclic;
            return run_generate(opt, generate_count, synth);
        }
    } catch (const bitt::CorpusError& e) {
        diagnostic("error", "input_error", "", e.what());
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        diagnostic("error", "input_error", "", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        diagnostic("error", "internal_error", "", e.what());
        return kExitInternal;
    }
    return kExitOk;
}
