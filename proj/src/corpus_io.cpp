#include "bitt/corpus_io.hpp"

#include "bitt/encode.hpp"
#include "bitt/overlap.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

using nlohmann::json;

namespace bitt {

FormatConfig FormatConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open format config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw CorpusError("malformed format config " + path + ": " + e.what());
    }
    FormatConfig c;
    auto get = [&](const char* key, std::string& field) {
        if (j.contains(key)) field = j.at(key).get<std::string>();
    };
    get("id", c.id_field);
    get("tokens", c.tokens_field);
    get("text", c.text_field);
    get("triples", c.triples_field);
    get("head", c.head_field);
    get("relation", c.relation_field);
    get("tail", c.tail_field);
    get("mentions", c.mentions_field);
    get("entity", c.entity_field);
    get("begin", c.begin_field);
    get("end", c.end_field);
    get("joiner", c.joiner);
    return c;
}

void LoadDiagnostics::merge(const LoadDiagnostics& other) {
    lines += other.lines;
    loaded += other.loaded;
    skipped_sentences += other.skipped_sentences;
    dropped_triples += other.dropped_triples;
}

namespace {

std::vector<std::string> whitespace_split(const std::string& text) {
    std::vector<std::string> words;
    std::istringstream in(text);
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

bool locatable(const AnnotatedSentence& s, const std::string& entity,
               const std::string& joiner) {
    for (const auto& m : s.mentions)
        if (m.entity == entity) return true;
    return !find_occurrences(s.tokens, entity, joiner).empty();
}

}  // namespace

struct CorpusReader::Impl {
    std::istream& in;
    FormatConfig config;
    LoadDiagnostics diag;

    Impl(std::istream& stream, FormatConfig cfg)
        : in(stream), config(std::move(cfg)) {}

    std::optional<AnnotatedSentence> parse_line(const std::string& line) {
        const auto& c = config;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw CorpusError("line " + std::to_string(diag.lines) +
                              ": malformed JSON: " + e.what());
        }

        AnnotatedSentence s;
        if (j.contains(c.id_field))
            s.id = j.at(c.id_field).is_string()
                       ? j.at(c.id_field).get<std::string>()
                       : j.at(c.id_field).dump();
        else
            s.id = "line-" + std::to_string(diag.lines);

        std::vector<std::string> words;
        if (j.contains(c.tokens_field))
            words = j.at(c.tokens_field).get<std::vector<std::string>>();
        else if (j.contains(c.text_field))
            words = whitespace_split(j.at(c.text_field).get<std::string>());
        else
            throw CorpusError("line " + std::to_string(diag.lines) +
                              ": neither '" + c.tokens_field + "' nor '" +
                              c.text_field + "' present");
        for (size_t i = 0; i < words.size(); ++i)
            s.tokens.push_back(Token{words[i], static_cast<int>(i)});

        if (j.contains(c.mentions_field)) {
            for (const auto& m : j.at(c.mentions_field)) {
                MentionSpan span;
                span.entity = m.at(c.entity_field).get<std::string>();
                span.begin = m.at(c.begin_field).get<int>();
                span.end = m.at(c.end_field).get<int>();
                if (span.begin < 0 || span.begin >= span.end ||
                    span.end > static_cast<int>(s.tokens.size()))
                    throw CorpusError("line " + std::to_string(diag.lines) +
                                      ": mention span out of range");
                s.mentions.push_back(std::move(span));
            }
        }

        std::vector<Triple> triples;
        if (j.contains(c.triples_field)) {
            for (const auto& t : j.at(c.triples_field)) {
                Triple triple;
                triple.head = t.at(c.head_field).get<std::string>();
                triple.relation = t.at(c.relation_field).get<std::string>();
                triple.tail = t.at(c.tail_field).get<std::string>();
                triples.push_back(std::move(triple));
            }
        }
        normalize_triples(triples);

        for (const auto& t : triples) {
            if (locatable(s, t.head, c.joiner) && locatable(s, t.tail, c.joiner))
                s.triples.push_back(t);
            else
                ++diag.dropped_triples;
        }
        if (s.triples.empty()) {
            ++diag.skipped_sentences;
            return std::nullopt;
        }
        ++diag.loaded;
        return s;
    }
};

CorpusReader::CorpusReader(std::istream& in, FormatConfig config)
    : impl_(std::make_unique<Impl>(in, std::move(config))) {}

CorpusReader::~CorpusReader() = default;

std::optional<AnnotatedSentence> CorpusReader::next() {
    std::string line;
    while (std::getline(impl_->in, line)) {
        ++impl_->diag.lines;
        if (line.empty()) continue;
        if (auto sentence = impl_->parse_line(line)) return sentence;
    }
    return std::nullopt;
}

const LoadDiagnostics& CorpusReader::diagnostics() const { return impl_->diag; }

std::vector<AnnotatedSentence> load_corpus(const std::string& path,
                                           const FormatConfig& config,
                                           LoadDiagnostics* diagnostics) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open corpus: " + path);
    CorpusReader reader(in, config);
    std::vector<AnnotatedSentence> out;
    while (auto s = reader.next()) out.push_back(std::move(*s));
    if (diagnostics) diagnostics->merge(reader.diagnostics());
    return out;
}

void StatsReport::add(const OverlapFlags& flags) {
    ++total;
    if (flags.epo) ++epo;
    if (flags.els) ++els;
    if (flags.ils) ++ils;
    if (!flags.normal()) ++overlap_union;
}

void StatsReport::merge(const StatsReport& other) {
    epo += other.epo;
    els += other.els;
    ils += other.ils;
    overlap_union += other.overlap_union;
    total += other.total;
}

StatsReport corpus_stats(const std::vector<AnnotatedSentence>& sentences) {
    StatsReport report;
    for (const auto& s : sentences) report.add(classify(s));
    return report;
}

std::string stats_table(const StatsReport& report) {
    std::ostringstream out;
    auto row = [&](const char* name, long value) {
        out << std::left << std::setw(16) << name << std::right << std::setw(10)
            << value << '\n';
    };
    row("EPO", report.epo);
    row("ELS", report.els);
    row("ILS", report.ils);
    row("EPO+ELS+ILS", report.overlap_union);
    row("All sentences", report.total);
    out << std::left << std::setw(16) << "Overlap" << std::right << std::setw(10)
        << std::fixed << std::setprecision(1) << report.overlap_fraction() * 100.0
        << "%\n";
    return out.str();
}

}  // namespace bitt
