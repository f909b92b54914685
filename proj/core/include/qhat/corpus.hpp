// Built-in algebra corpus: bound-quiver sources with machine-checkable
// expected facts, used by the regression driver and the test suites.
#pragma once

#include "qhat/algebra.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qhat {

struct CorpusFactResult {
    std::string fact_id;
    std::string description;
    bool pass = false;
    std::string detail; // populated on failure, or informational notes
};

struct CorpusEntry {
    std::string id;
    std::string title;
    std::string source; // DSL text (field 101 by default)
};

// The shipped parameterizations, in run order.
const std::vector<CorpusEntry>& corpus_entries();

bool is_corpus_id(const std::string& id);
std::string corpus_source(const std::string& id, std::uint32_t p = 101);
AlgebraPtr corpus_algebra(const std::string& id, std::uint32_t p = 101);

struct CorpusRunOptions {
    std::uint32_t p = 101;
    std::uint64_t seed = 0xA1;
    std::string filter; // substring of entry id; empty = all
    // Test fixture: corrupt one expected value so the harness provably
    // reports mismatches by fact id.
    bool self_test_corrupt = false;
};

struct CorpusReport {
    std::vector<std::pair<std::string, std::vector<CorpusFactResult>>> entries;
    std::size_t checked = 0, failed = 0;
    bool pass() const { return failed == 0; }
};

// Verifies every expected fact of every (filtered) entry.
CorpusReport run_corpus(const CorpusRunOptions& opts = {});

} // namespace qhat
