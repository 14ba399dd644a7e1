// Compares the serial reference round-trip path against the OpenMP one on a
// synthetic corpus and reports throughput.

#include "bitt/evalgen.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

bool reports_equal(const bitt::CoverageReport& a, const bitt::CoverageReport& b) {
    for (int c = 0; c < 4; ++c) {
        if (a.by_class[c].sentences != b.by_class[c].sentences) return false;
        if (a.by_class[c].gold_triples != b.by_class[c].gold_triples) return false;
        if (a.by_class[c].recovered_triples != b.by_class[c].recovered_triples)
            return false;
        if (a.by_class[c].lossless_sentences != b.by_class[c].lossless_sentences)
            return false;
    }
    return a.total_gold == b.total_gold && a.total_predicted == b.total_predicted &&
           a.total_correct == b.total_correct &&
           a.diagnostics == b.diagnostics;
}

}  // namespace

int main(int argc, char** argv) {
    long count = argc > 1 ? std::atol(argv[1]) : 20000;

    std::vector<bitt::AnnotatedSentence> sentences;
    sentences.reserve(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) {
        bitt::SyntheticConfig config;
        config.entities = 3 + static_cast<int>(i % 5);
        config.edge_density = 0.6;
        config.acyclic = (i % 3) != 0;
        config.seed = static_cast<uint64_t>(i);
        sentences.push_back(bitt::generate_synthetic(config));
    }

    auto t0 = clock_type::now();
    auto serial = bitt::roundtrip_report_serial(sentences);
    double serial_s = seconds_since(t0);

    t0 = clock_type::now();
    auto parallel = bitt::roundtrip_report(sentences);
    double parallel_s = seconds_since(t0);

    std::cout << "sentences:          " << count << '\n'
              << "serial:             " << serial_s << " s  ("
              << static_cast<long>(count / serial_s) << " sents/s)\n"
              << "openmp:             " << parallel_s << " s  ("
              << static_cast<long>(count / parallel_s) << " sents/s)\n"
              << "speedup:            " << serial_s / parallel_s << "x\n";

    if (!reports_equal(serial, parallel)) {
        std::cerr << "FAIL: serial and parallel reports differ\n";
        return 1;
    }
    std::cout << "reports identical:  yes\n";
    return 0;
}
