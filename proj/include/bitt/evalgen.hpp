#pragma once

#include "bitt/decode.hpp"
#include "bitt/encode.hpp"
#include "bitt/model.hpp"

#include <cstdint>
#include <map>

namespace bitt {

struct Score {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Exact-match set metrics: a predicted triple is correct only if head,
/// relation and tail all match. Empty prediction scores precision 0.
Score score(const std::vector<Triple>& predicted, const std::vector<Triple>& gold);

struct SyntheticConfig {
    int entities = 4;
    int relation_labels = 1;
    double edge_density = 0.5;
    bool acyclic = true;
    double antiparallel_prob = 0.0;
    double duplicate_mention_prob = 0.0;
    uint64_t seed = 0;
};

/// Deterministic synthetic sentence: multi-token entities embedded between
/// filler words, triples sampled per config. With acyclic=true every
/// per-relation simple graph is a position-increasing forest (each entity
/// relates to at most one earlier-appearing entity), and reversed triples are
/// placed only on a parent's last-appearing child edge — the one edge where
/// the backward pass can carry the reversal.
AnnotatedSentence generate_synthetic(const SyntheticConfig& config);

enum class OverlapClass { Normal = 0, EPO = 1, ELS = 2, ILS = 3 };

inline const char* to_string(OverlapClass c) {
    switch (c) {
        case OverlapClass::Normal: return "Normal";
        case OverlapClass::EPO: return "EPO";
        case OverlapClass::ELS: return "ELS";
        case OverlapClass::ILS: return "ILS";
    }
    return "?";
}

struct CoverageReport {
    struct ClassStats {
        long sentences = 0;
        long gold_triples = 0;
        long recovered_triples = 0;
        long lossless_sentences = 0;
    };
    ClassStats by_class[4];   // indexed by OverlapClass

    long total_gold = 0;
    long total_predicted = 0;
    long total_correct = 0;
    long failed_sentences = 0;
    std::map<std::string, long> diagnostics;

    Score micro() const;
    void merge(const CoverageReport& other);
};

/// Encode, decode and score one sentence; a sentence counts in every overlap
/// class it flags.
void roundtrip_accumulate(const AnnotatedSentence& sentence,
                          const EncodeOptions& options, DecodeMode mode,
                          CoverageReport& report);

CoverageReport roundtrip_report_serial(const std::vector<AnnotatedSentence>& sentences,
                                       const EncodeOptions& options = {},
                                       DecodeMode mode = DecodeMode::Strict);

/// OpenMP version; merges per-thread partial reports. jobs <= 0 uses the
/// runtime default thread count.
CoverageReport roundtrip_report(const std::vector<AnnotatedSentence>& sentences,
                                const EncodeOptions& options = {},
                                DecodeMode mode = DecodeMode::Strict,
                                int jobs = 0);

std::string coverage_table(const CoverageReport& report);

}  // namespace bitt
