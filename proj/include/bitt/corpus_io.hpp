#pragma once

#include "bitt/model.hpp"

#include <iosfwd>
#include <memory>
#include <optional>

namespace bitt {

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Maps source field names onto the canonical schema and carries the
/// token joiner used for entity matching.
struct FormatConfig {
    std::string id_field = "id";
    std::string tokens_field = "tokens";
    std::string text_field = "text";
    std::string triples_field = "triples";
    std::string head_field = "head";
    std::string relation_field = "relation";
    std::string tail_field = "tail";
    std::string mentions_field = "mentions";
    std::string entity_field = "entity";
    std::string begin_field = "begin";
    std::string end_field = "end";
    std::string joiner = " ";

    static FormatConfig from_json_file(const std::string& path);
};

struct LoadDiagnostics {
    long lines = 0;
    long loaded = 0;
    long skipped_sentences = 0;   // zero locatable triples
    long dropped_triples = 0;     // unlocatable entities in a kept sentence

    void merge(const LoadDiagnostics& other);
};

/// Streaming JSONL reader; one sentence object per line.
class CorpusReader {
public:
    CorpusReader(std::istream& in, FormatConfig config = {});
    ~CorpusReader();

    /// Next loadable sentence, or nullopt at end of input.
    /// Throws CorpusError (with line number) on malformed lines.
    std::optional<AnnotatedSentence> next();

    const LoadDiagnostics& diagnostics() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<AnnotatedSentence> load_corpus(const std::string& path,
                                           const FormatConfig& config = {},
                                           LoadDiagnostics* diagnostics = nullptr);

struct StatsReport {
    long epo = 0;
    long els = 0;
    long ils = 0;
    long overlap_union = 0;   // |{s : epo or els or ils}|
    long total = 0;

    double overlap_fraction() const {
        return total == 0 ? 0.0 : static_cast<double>(overlap_union) / total;
    }
    void add(const OverlapFlags& flags);
    void merge(const StatsReport& other);
};

StatsReport corpus_stats(const std::vector<AnnotatedSentence>& sentences);

/// Aligned plain-text rendering of the report.
std::string stats_table(const StatsReport& report);

}  // namespace bitt
