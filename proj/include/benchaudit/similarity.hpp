#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace benchaudit {

// BLEU-4: geometric mean of modified 1..4-gram precisions with brevity
// penalty min(1, e^(1 - r/c)). Zero matches for n >= 2 are add-one
// smoothed; zero unigram overlap short-circuits to 0. Tokens are
// lowercased words.
double bleu4(const std::string& reference, const std::string& candidate);

// Sample Pearson correlation; throws on length mismatch, fewer than two
// points, or zero variance.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

struct SimilarityRow {
  std::string id;
  double bleu = 0.0;
  std::optional<double> semantic;
};

// One original/back-translated pair, as persisted by caption runs.
struct PairRecord {
  std::string id;
  std::string original;
  std::string back_translated;
};

std::vector<PairRecord> load_pair_records(const std::string& path);
void write_pair_records(const std::string& path, const std::vector<PairRecord>& pairs);

// Line-delimited (id, score) records from an external embedder.
std::map<std::string, double> load_semantic_scores(const std::string& path);

struct SimilaritySummary {
  std::int64_t n = 0;
  double mean_bleu = 0.0;
  std::optional<double> mean_semantic;
  std::optional<double> pearson_r;  // lexical vs semantic, when scores given
  std::vector<SimilarityRow> rows;
};

// Aggregates lexical similarity over all pairs; the semantic column and
// the correlation appear only when scores are supplied. Ids missing from
// the score file are an error listing every missing id.
SimilaritySummary similarity_report(const std::vector<PairRecord>& pairs,
                                    const std::optional<std::map<std::string, double>>& semantic);

void write_similarity_outputs(const std::string& out_prefix, const SimilaritySummary& summary);

}  // namespace benchaudit
