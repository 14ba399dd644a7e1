#include "bitt/evalgen.hpp"

#include "bitt/overlap.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bitt {

Score score(const std::vector<Triple>& predicted, const std::vector<Triple>& gold) {
    std::set<Triple> pred(predicted.begin(), predicted.end());
    std::set<Triple> ref(gold.begin(), gold.end());
    size_t correct = 0;
    for (const auto& t : pred)
        if (ref.count(t)) ++correct;

    Score s;
    s.precision = pred.empty() ? 0.0 : static_cast<double>(correct) / pred.size();
    s.recall = ref.empty() ? 0.0 : static_cast<double>(correct) / ref.size();
    s.f1 = (s.precision + s.recall) == 0.0
               ? 0.0
               : 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

AnnotatedSentence generate_synthetic(const SyntheticConfig& config) {
    if (config.entities < 1)
        throw std::invalid_argument("generate_synthetic: entities must be >= 1");
    if (config.relation_labels < 1)
        throw std::invalid_argument("generate_synthetic: relation_labels must be >= 1");
    if (config.edge_density < 0.0 || config.edge_density > 1.0)
        throw std::invalid_argument("generate_synthetic: edge_density must be in [0,1]");
    if (config.entities == 1 && config.edge_density > 0.0 && config.acyclic)
        throw std::invalid_argument(
            "generate_synthetic: a single entity admits no acyclic edges");

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const int n = config.entities;

    std::vector<std::string> entity_names;
    for (int i = 0; i < n; ++i) {
        std::string base = "ent" + std::to_string(i);
        entity_names.push_back(coin(rng) < 0.5 ? base + "_a"
                                               : base + "_a " + base + "_b");
    }

    // Token layout first: entity runs (some duplicated) in random order, with
    // a little filler between them. The layout fixes each entity's sentence
    // position, which the acyclic sampler below depends on.
    std::vector<int> slots;
    for (int i = 0; i < n; ++i) {
        slots.push_back(i);
        if (coin(rng) < config.duplicate_mention_prob) slots.push_back(i);
    }
    std::shuffle(slots.begin(), slots.end(), rng);

    // Entities ranked by first appearance in the layout.
    std::vector<int> by_rank;
    {
        std::vector<bool> seen(static_cast<size_t>(n), false);
        for (int slot : slots) {
            if (seen[static_cast<size_t>(slot)]) continue;
            seen[static_cast<size_t>(slot)] = true;
            by_rank.push_back(slot);
        }
    }

    std::vector<Triple> triples;
    auto add_edge = [&](int u, int v, const std::string& rel, bool reversed) {
        bool head_first = coin(rng) < 0.5;
        const auto& a = entity_names[static_cast<size_t>(head_first ? u : v)];
        const auto& b = entity_names[static_cast<size_t>(head_first ? v : u)];
        triples.push_back(Triple{a, rel, b});
        if (reversed) triples.push_back(Triple{b, rel, a});
    };

    for (int j = 0; j < config.relation_labels; ++j) {
        std::string rel = "rel" + std::to_string(j);
        if (config.acyclic) {
            // One connected tree per group, shaped as a chain or a star over
            // a density-selected subset of entities, linked in sentence
            // order. These are exactly the tree shapes both tagging passes
            // reconstruct without ambiguity: at any step of span claiming at
            // most one left-child slot is open. (General trees are not
            // recoverable — two parent/child pairs interleaved with equal
            // roles produce identical tags for different triple sets.)
            //
            // A reversed triple survives the round trip only on the edge the
            // backward pass picks for a parent — the one to its last
            // appearing child — so reversals go there and nowhere else.
            std::vector<int> members;
            for (int i = 0; i < n; ++i)
                if (coin(rng) < config.edge_density) members.push_back(i);
            if (members.size() < 2) continue;
            bool star = members.size() >= 3 && coin(rng) < 0.5;
            for (size_t i = 1; i < members.size(); ++i) {
                size_t parent = star ? 0 : i - 1;
                bool last_child_edge = star ? i + 1 == members.size() : true;
                bool reversed = last_child_edge &&
                                coin(rng) < config.antiparallel_prob;
                add_edge(by_rank[static_cast<size_t>(members[parent])],
                         by_rank[static_cast<size_t>(members[i])], rel, reversed);
            }
        } else {
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (coin(rng) < config.edge_density)
                        add_edge(u, v, rel, coin(rng) < config.antiparallel_prob);
        }
    }
    if (triples.empty()) {
        if (n >= 2)
            add_edge(by_rank[0], by_rank[1], "rel0", false);
        else
            triples.push_back(Triple{entity_names[0], "rel0", entity_names[0]});
    }

    std::vector<std::string> words;
    int filler = 0;
    std::uniform_int_distribution<int> gap(0, 2);
    for (int slot : slots) {
        for (int g = gap(rng); g > 0; --g)
            words.push_back("w" + std::to_string(filler++));
        std::istringstream entity(entity_names[static_cast<size_t>(slot)]);
        std::string piece;
        while (entity >> piece) words.push_back(piece);
    }
    words.push_back("w" + std::to_string(filler));

    return make_sentence("synthetic-" + std::to_string(config.seed), words,
                         std::move(triples));
}

Score CoverageReport::micro() const {
    Score s;
    s.precision = total_predicted == 0
                      ? 0.0
                      : static_cast<double>(total_correct) / total_predicted;
    s.recall =
        total_gold == 0 ? 0.0 : static_cast<double>(total_correct) / total_gold;
    s.f1 = (s.precision + s.recall) == 0.0
               ? 0.0
               : 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

void CoverageReport::merge(const CoverageReport& other) {
    for (int c = 0; c < 4; ++c) {
        by_class[c].sentences += other.by_class[c].sentences;
        by_class[c].gold_triples += other.by_class[c].gold_triples;
        by_class[c].recovered_triples += other.by_class[c].recovered_triples;
        by_class[c].lossless_sentences += other.by_class[c].lossless_sentences;
    }
    total_gold += other.total_gold;
    total_predicted += other.total_predicted;
    total_correct += other.total_correct;
    failed_sentences += other.failed_sentences;
    for (const auto& [key, count] : other.diagnostics) diagnostics[key] += count;
}

void roundtrip_accumulate(const AnnotatedSentence& sentence,
                          const EncodeOptions& options, DecodeMode mode,
                          CoverageReport& report) {
    OverlapFlags flags = classify(sentence);
    std::vector<OverlapClass> classes;
    if (flags.normal()) classes.push_back(OverlapClass::Normal);
    if (flags.epo) classes.push_back(OverlapClass::EPO);
    if (flags.els) classes.push_back(OverlapClass::ELS);
    if (flags.ils) classes.push_back(OverlapClass::ILS);

    long gold = static_cast<long>(sentence.triples.size());
    long correct = 0;
    long predicted = 0;
    bool lossless = false;

    try {
        auto encoding = encode_sentence(sentence, options);
        auto decoded = decode_sentence(encoding, sentence.tokens, mode, options.joiner);
        predicted = static_cast<long>(decoded.triples.size());
        std::set<Triple> ref(sentence.triples.begin(), sentence.triples.end());
        for (const auto& t : decoded.triples)
            if (ref.count(t)) ++correct;
        lossless = decoded.triples == sentence.triples;   // both sorted sets
        for (const auto& [key, count] : decoded.diagnostics.counts())
            if (count > 0) report.diagnostics[key] += count;
    } catch (const EncodeError& e) {
        ++report.failed_sentences;
        ++report.diagnostics["encode_error"];
    }

    for (OverlapClass c : classes) {
        auto& stats = report.by_class[static_cast<int>(c)];
        ++stats.sentences;
        stats.gold_triples += gold;
        stats.recovered_triples += correct;
        if (lossless) ++stats.lossless_sentences;
    }
    report.total_gold += gold;
    report.total_predicted += predicted;
    report.total_correct += correct;
}

CoverageReport roundtrip_report_serial(const std::vector<AnnotatedSentence>& sentences,
                                       const EncodeOptions& options,
                                       DecodeMode mode) {
    CoverageReport report;
    for (const auto& s : sentences) roundtrip_accumulate(s, options, mode, report);
    return report;
}

CoverageReport roundtrip_report(const std::vector<AnnotatedSentence>& sentences,
                                const EncodeOptions& options, DecodeMode mode,
                                int jobs) {
#ifdef _OPENMP
    int threads = jobs > 0 ? jobs : omp_get_max_threads();
    std::vector<CoverageReport> partial(static_cast<size_t>(threads));
#pragma omp parallel num_threads(threads)
    {
        CoverageReport& local = partial[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
        for (long i = 0; i < static_cast<long>(sentences.size()); ++i)
            roundtrip_accumulate(sentences[static_cast<size_t>(i)], options, mode,
                                 local);
    }
    CoverageReport report;
    for (const auto& p : partial) report.merge(p);
    return report;
#else
    (void)jobs;
    return roundtrip_report_serial(sentences, options, mode);
#endif
}

std::string coverage_table(const CoverageReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(8) << "Class" << std::right << std::setw(10)
        << "Sents" << std::setw(10) << "Gold" << std::setw(10) << "Recov"
        << std::setw(10) << "Lossless" << std::setw(10) << "Rate" << '\n';
    for (int c = 0; c < 4; ++c) {
        const auto& s = report.by_class[c];
        double rate = s.gold_triples == 0
                          ? 1.0
                          : static_cast<double>(s.recovered_triples) / s.gold_triples;
        out << std::left << std::setw(8) << to_string(static_cast<OverlapClass>(c))
            << std::right << std::setw(10) << s.sentences << std::setw(10)
            << s.gold_triples << std::setw(10) << s.recovered_triples
            << std::setw(10) << s.lossless_sentences << std::setw(10) << std::fixed
            << std::setprecision(4) << rate << '\n';
    }
    Score micro = report.micro();
    out << "micro P=" << std::fixed << std::setprecision(4) << micro.precision
        << " R=" << micro.recall << " F1=" << micro.f1 << '\n';
    return out.str();
}

}  // namespace bitt
