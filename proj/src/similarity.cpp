#include "benchaudit/similarity.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

#include "benchaudit/text.hpp"

namespace benchaudit {

namespace {

std::vector<std::string> bleu_tokens(const std::string& text) {
  return tokenize(to_lower(text));
}

std::unordered_map<std::string, int> ngram_counts(const std::vector<std::string>& tokens,
                                                  std::size_t n) {
  std::unordered_map<std::string, int> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < n; ++k) {
      key += tokens[i + k];
      key.push_back('\x1f');
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

double bleu4(const std::string& reference, const std::string& candidate) {
  const std::vector<std::string> ref = bleu_tokens(reference);
  const std::vector<std::string> cand = bleu_tokens(candidate);
  if (cand.empty()) return 0.0;

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto ref_counts = ngram_counts(ref, n);
    const auto cand_counts = ngram_counts(cand, n);
    std::int64_t total = 0;
    std::int64_t matched = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }

    double precision;
    if (n == 1) {
      if (matched == 0) return 0.0;  // no lexical overlap at all
      precision = static_cast<double>(matched) / static_cast<double>(total);
    } else if (matched == 0) {
      precision = 1.0 / static_cast<double>(total + 1);  // add-one smoothing
    } else {
      precision = static_cast<double>(matched) / static_cast<double>(total);
    }
    log_sum += std::log(precision);
  }

  const double r = static_cast<double>(ref.size());
  const double c = static_cast<double>(cand.size());
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum / 4.0);
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
  if (xs.size() < 2) throw std::invalid_argument("pearson: need at least 2 points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("pearson: zero variance");
  return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

std::vector<PairRecord> load_pair_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open pairs file: " + path);
  std::vector<PairRecord> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("id") || !j.contains("original") ||
        !j.contains("back_translated")) {
      throw std::invalid_argument("pairs file line " + std::to_string(line_no) +
                                  ": expected id/original/back_translated");
    }
    pairs.push_back(PairRecord{j["id"].get<std::string>(), j["original"].get<std::string>(),
                               j["back_translated"].get<std::string>()});
  }
  return pairs;
}

void write_pair_records(const std::string& path, const std::vector<PairRecord>& pairs) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write pairs file: " + path);
  for (const auto& p : pairs) {
    nlohmann::ordered_json j;
    j["id"] = p.id;
    j["original"] = p.original;
    j["back_translated"] = p.back_translated;
    out << j.dump() << "\n";
  }
}

std::map<std::string, double> load_semantic_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open semantic score file: " + path);
  std::map<std::string, double> scores;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("id") || !j.contains("score")) {
      throw std::invalid_argument("semantic score file line " + std::to_string(line_no) +
                                  ": expected id/score");
    }
    scores[j["id"].get<std::string>()] = j["score"].get<double>();
  }
  return scores;
}

SimilaritySummary similarity_report(
    const std::vector<PairRecord>& pairs,
    const std::optional<std::map<std::string, double>>& semantic) {
  if (pairs.empty()) throw std::invalid_argument("similarity_report: no pairs");

  if (semantic) {
    std::string missing;
    for (const auto& p : pairs) {
      if (semantic->find(p.id) == semantic->end()) {
        if (!missing.empty()) missing += ", ";
        missing += p.id;
      }
    }
    if (!missing.empty()) {
      throw std::invalid_argument("semantic scores missing for ids: " + missing);
    }
  }

  SimilaritySummary summary;
  std::vector<double> bleus;
  std::vector<double> sems;
  bleus.reserve(pairs.size());
  for (const auto& p : pairs) {
    SimilarityRow row;
    row.id = p.id;
    row.bleu = bleu4(p.original, p.back_translated);
    bleus.push_back(row.bleu);
    if (semantic) {
      row.semantic = semantic->at(p.id);
      sems.push_back(*row.semantic);
    }
    summary.rows.push_back(std::move(row));
  }

  summary.n = static_cast<std::int64_t>(pairs.size());
  double sum = 0.0;
  for (double b : bleus) sum += b;
  summary.mean_bleu = sum / static_cast<double>(bleus.size());
  if (semantic) {
    double ssum = 0.0;
    for (double s : sems) ssum += s;
    summary.mean_semantic = ssum / static_cast<double>(sems.size());
    summary.pearson_r = pearson(bleus, sems);
  }
  return summary;
}

void write_similarity_outputs(const std::string& out_prefix, const SimilaritySummary& summary) {
  {
    std::ofstream rows(out_prefix + ".rows.jsonl");
    if (!rows) {
      throw std::invalid_argument("cannot write similarity rows: " + out_prefix + ".rows.jsonl");
    }
    for (const auto& row : summary.rows) {
      nlohmann::ordered_json j;
      j["id"] = row.id;
      j["bleu4"] = row.bleu;
      if (row.semantic) j["semantic"] = *row.semantic;
      rows << j.dump() << "\n";
    }
  }
  std::ofstream out(out_prefix + ".summary.json");
  if (!out) {
    throw std::invalid_argument("cannot write similarity summary: " + out_prefix +
                                ".summary.json");
  }
  nlohmann::ordered_json j;
  j["n"] = summary.n;
  j["mean_bleu4"] = summary.mean_bleu;
  if (summary.mean_semantic) j["mean_semantic"] = *summary.mean_semantic;
  if (summary.pearson_r) j["pearson_r"] = *summary.pearson_r;
  out << j.dump(2) << "\n";
}

}  // namespace benchaudit
