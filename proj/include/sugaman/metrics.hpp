#pragma once

#include "sugaman/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace sugaman {

using TokenSequence = std::vector<std::string>;

/// Lowercase, split on whitespace, detach terminal . , ; : ! ? as their own
/// tokens. Decimals like 25.50 stay whole.
TokenSequence tokenize(const std::string& text);

struct RougeScore {
  Scalar recall = 0;
  Scalar precision = 0;
  Scalar f1 = 0;
};

RougeScore rouge_n(const TokenSequence& candidate, const std::vector<TokenSequence>& references,
                   int n);

/// Modified n-gram precision with clipping, brevity penalty against the
/// closest reference length (ties prefer the shorter), zero if any p_n = 0.
Scalar bleu(const TokenSequence& candidate, const std::vector<TokenSequence>& references, int max_n,
            const std::vector<Scalar>& weights);

/// Clipped modified precisions p_1..p_max_n (0 where the candidate has no
/// n-grams of that order).
std::vector<Scalar> bleu_precisions(const TokenSequence& candidate,
                                    const std::vector<TokenSequence>& references, int max_n);

struct MeteorScore {
  Scalar precision = 0;
  Scalar recall = 0;
  Scalar penalty = 0;  // PN = (chunks / matches) / 2
  Scalar score = 0;
  Scalar f1 = 0;
  Scalar f_mean = 0;  // 10PR / (R + 9P)
  int matches = 0;
  int chunks = 0;
};

/// Exact-token alignment maximizing matches, then minimizing chunks
/// (exhaustive for <= 12 matches, greedy longest-run otherwise).
MeteorScore meteor(const TokenSequence& candidate, const TokenSequence& reference);

struct MetricReport {
  std::array<RougeScore, 3> rouge;   // ROUGE-1..3
  std::array<Scalar, 4> bleu_avg;    // BLEU-1..4, mean of per-item scores
  std::array<Scalar, 4> bleu_corpus; // BLEU-1..4, pooled counts and lengths
  MeteorScore meteor;                // per-item best reference, averaged
};

MetricReport evaluate_corpus(const std::vector<TokenSequence>& candidates,
                             const std::vector<std::vector<TokenSequence>>& reference_sets);

/// Tab-separated rendering in the usual three-block report layout.
std::string format_report(const MetricReport& report);

}  // namespace sugaman
