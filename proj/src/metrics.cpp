#include "sugaman/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace sugaman {

TokenSequence tokenize(const std::string& text) {
  static const std::string punct = ".,;:!?";
  TokenSequence out;
  std::istringstream in(text);
  std::string word;
  while (in >> word) {
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    std::vector<std::string> trailing;
    while (word.size() > 1 && punct.find(word.back()) != std::string::npos) {
      trailing.emplace_back(1, word.back());
      word.pop_back();
    }
    if (!word.empty()) out.push_back(word);
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) out.push_back(*it);
  }
  return out;
}

namespace {

using NgramCounts = std::map<std::string, long>;

NgramCounts ngram_counts(const TokenSequence& tokens, int n) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

long total(const NgramCounts& c) {
  long t = 0;
  for (const auto& [_, v] : c) t += v;
  return t;
}

}  // namespace

RougeScore rouge_n(const TokenSequence& candidate, const std::vector<TokenSequence>& references,
                   int n) {
  if (n < 1) throw Error(ErrorCategory::invalid_input, "rouge_n: n must be >= 1");
  if (references.empty()) throw Error(ErrorCategory::invalid_input, "rouge_n: no references");
  const NgramCounts cand = ngram_counts(candidate, n);

  long matches = 0, ref_total = 0;
  for (const auto& ref : references) {
    const NgramCounts rc = ngram_counts(ref, n);
    ref_total += total(rc);
    for (const auto& [gram, count] : rc) {
      auto it = cand.find(gram);
      if (it != cand.end()) matches += std::min(count, it->second);
    }
  }
  const long cand_total = total(cand) * static_cast<long>(references.size());

  RougeScore s;
  s.recall = ref_total > 0 ? static_cast<Scalar>(matches) / ref_total : 0;
  s.precision = cand_total > 0 ? static_cast<Scalar>(matches) / cand_total : 0;
  s.f1 = (s.recall + s.precision) > 0 ? 2 * s.recall * s.precision / (s.recall + s.precision) : 0;
  return s;
}

namespace {

struct BleuStats {
  std::vector<long> matches;  // clipped, per n
  std::vector<long> totals;   // candidate n-gram totals, per n
  long cand_len = 0;
  long ref_len = 0;  // closest reference length
};

BleuStats bleu_stats(const TokenSequence& candidate, const std::vector<TokenSequence>& references,
                     int max_n) {
  BleuStats st;
  st.matches.assign(max_n, 0);
  st.totals.assign(max_n, 0);
  st.cand_len = static_cast<long>(candidate.size());

  long best_ref = 0;
  bool first = true;
  for (const auto& ref : references) {
    const long rl = static_cast<long>(ref.size());
    if (first || std::abs(rl - st.cand_len) < std::abs(best_ref - st.cand_len) ||
        (std::abs(rl - st.cand_len) == std::abs(best_ref - st.cand_len) && rl < best_ref)) {
      best_ref = rl;
      first = false;
    }
  }
  st.ref_len = best_ref;

  for (int n = 1; n <= max_n; ++n) {
    const NgramCounts cand = ngram_counts(candidate, n);
    NgramCounts max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : ngram_counts(ref, n)) {
        long& m = max_ref[gram];
        m = std::max(m, count);
      }
    }
    st.totals[n - 1] = total(cand);
    for (const auto& [gram, count] : cand) {
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) st.matches[n - 1] += std::min(count, it->second);
    }
  }
  return st;
}

Scalar bleu_from_stats(const BleuStats& st, int max_n, const std::vector<Scalar>& weights) {
  Scalar log_sum = 0;
  for (int n = 1; n <= max_n; ++n) {
    if (st.totals[n - 1] == 0 || st.matches[n - 1] == 0) return 0;
    const Scalar pn = static_cast<Scalar>(st.matches[n - 1]) / st.totals[n - 1];
    log_sum += weights[n - 1] * std::log(pn);
  }
  Scalar bp = 1;
  if (st.cand_len < st.ref_len) {
    if (st.cand_len == 0) return 0;
    bp = std::exp(static_cast<Scalar>(1 - st.ref_len) / st.cand_len);
  }
  return bp * std::exp(log_sum);
}

void check_weights(int max_n, const std::vector<Scalar>& weights) {
  if (static_cast<int>(weights.size()) != max_n)
    throw Error(ErrorCategory::invalid_config, "bleu: need one weight per n-gram order");
  Scalar sum = 0;
  for (Scalar w : weights) sum += w;
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorCategory::invalid_config, "bleu: weights must sum to 1");
}

}  // namespace

Scalar bleu(const TokenSequence& candidate, const std::vector<TokenSequence>& references, int max_n,
            const std::vector<Scalar>& weights) {
  if (max_n < 1) throw Error(ErrorCategory::invalid_input, "bleu: N must be >= 1");
  if (references.empty()) throw Error(ErrorCategory::invalid_input, "bleu: no references");
  check_weights(max_n, weights);
  return bleu_from_stats(bleu_stats(candidate, references, max_n), max_n, weights);
}

std::vector<Scalar> bleu_precisions(const TokenSequence& candidate,
                                    const std::vector<TokenSequence>& references, int max_n) {
  const BleuStats st = bleu_stats(candidate, references, max_n);
  std::vector<Scalar> out(max_n, 0);
  for (int n = 0; n < max_n; ++n)
    if (st.totals[n] > 0) out[n] = static_cast<Scalar>(st.matches[n]) / st.totals[n];
  return out;
}

// ---------------------------------------------------------------------------
// METEOR alignment
// ---------------------------------------------------------------------------

namespace {

struct AlignmentSearch {
  const TokenSequence& cand;
  const TokenSequence& ref;
  std::map<std::string, int> need;      // remaining matches per type
  std::map<std::string, int> cand_left; // unseen candidate occurrences per type
  std::vector<char> ref_used;
  int best_chunks = 1 << 30;
  long nodes = 0;
  bool aborted = false;
  static constexpr long kNodeBudget = 4000000;

  AlignmentSearch(const TokenSequence& c, const TokenSequence& r) : cand(c), ref(r) {
    ref_used.assign(ref.size(), 0);
  }

  // ci: next candidate index; prev_ci/prev_rj: last matched pair; chunks so far.
  void search(size_t ci, int prev_ci, int prev_rj, int chunks) {
    if (aborted) return;
    if (++nodes > kNodeBudget) {
      aborted = true;
      return;
    }
    if (chunks >= best_chunks) return;  // chunks never decrease
    bool all_done = true;
    for (const auto& [_, v] : need)
      if (v > 0) all_done = false;
    if (all_done) {
      best_chunks = std::min(best_chunks, chunks);
      return;
    }
    if (ci >= cand.size()) return;

    const std::string& tok = cand[ci];
    auto nit = need.find(tok);
    const int remaining_after = --cand_left[tok];

    if (nit != need.end() && nit->second > 0) {
      // Try every unused reference occurrence of this token.
      for (size_t rj = 0; rj < ref.size(); ++rj) {
        if (ref_used[rj] || ref[rj] != tok) continue;
        const bool adjacent =
            prev_ci >= 0 && static_cast<int>(ci) == prev_ci + 1 && static_cast<int>(rj) == prev_rj + 1;
        ref_used[rj] = 1;
        --nit->second;
        search(ci + 1, static_cast<int>(ci), static_cast<int>(rj), chunks + (adjacent ? 0 : 1));
        ++nit->second;
        ref_used[rj] = 0;
      }
      // Skipping this occurrence is allowed only if later ones can still fill the quota.
      if (remaining_after >= nit->second) search(ci + 1, prev_ci, prev_rj, chunks);
    } else {
      search(ci + 1, prev_ci, prev_rj, chunks);
    }
    ++cand_left[tok];
  }
};

int greedy_chunks(const TokenSequence& cand, const TokenSequence& ref,
                  std::map<std::string, int> need) {
  // Repeatedly take the longest contiguous common run of still-needed tokens;
  // ties prefer the leftmost candidate, then leftmost reference position.
  std::vector<char> cand_used(cand.size(), 0), ref_used(ref.size(), 0);
  int chunks = 0;
  while (true) {
    int best_len = 0;
    size_t best_ci = 0, best_rj = 0;
    for (size_t ci = 0; ci < cand.size(); ++ci) {
      for (size_t rj = 0; rj < ref.size(); ++rj) {
        int len = 0;
        std::map<std::string, int> local;
        while (ci + len < cand.size() && rj + len < ref.size() && !cand_used[ci + len] &&
               !ref_used[rj + len] && cand[ci + len] == ref[rj + len]) {
          const std::string& t = cand[ci + len];
          auto it = need.find(t);
          if (it == need.end() || it->second - local[t] <= 0) break;
          ++local[t];
          ++len;
        }
        if (len > best_len) {
          best_len = len;
          best_ci = ci;
          best_rj = rj;
        }
      }
    }
    if (best_len == 0) break;
    ++chunks;
    for (int k = 0; k < best_len; ++k) {
      cand_used[best_ci + k] = 1;
      ref_used[best_rj + k] = 1;
      --need[cand[best_ci + k]];
    }
  }
  // Any leftover quota pairs up isolated occurrences, one chunk each.
  for (const auto& [tok, left] : need) {
    (void)tok;
    chunks += std::max(0, left);
  }
  return chunks;
}

}  // namespace

MeteorScore meteor(const TokenSequence& candidate, const TokenSequence& reference) {
  MeteorScore s;
  if (candidate.empty() || reference.empty()) return s;

  std::map<std::string, int> cand_counts, ref_counts;
  for (const auto& t : candidate) ++cand_counts[t];
  for (const auto& t : reference) ++ref_counts[t];

  std::map<std::string, int> need;
  int m = 0;
  for (const auto& [tok, c] : cand_counts) {
    auto it = ref_counts.find(tok);
    if (it == ref_counts.end()) continue;
    const int k = std::min(c, it->second);
    need[tok] = k;
    m += k;
  }
  if (m == 0) return s;

  int chunks;
  if (m <= 12) {
    AlignmentSearch as(candidate, reference);
    as.need = need;
    for (const auto& t : candidate) ++as.cand_left[t];
    as.search(0, -1, -1, 0);
    chunks = as.aborted ? greedy_chunks(candidate, reference, need) : as.best_chunks;
  } else {
    chunks = greedy_chunks(candidate, reference, need);
  }

  s.matches = m;
  s.chunks = chunks;
  s.precision = static_cast<Scalar>(m) / candidate.size();
  s.recall = static_cast<Scalar>(m) / reference.size();
  s.penalty = 0.5 * static_cast<Scalar>(chunks) / m;
  s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  s.f_mean = 10 * s.precision * s.recall / (s.recall + 9 * s.precision);
  s.score = s.f_mean * (1 - s.penalty);
  return s;
}

MetricReport evaluate_corpus(const std::vector<TokenSequence>& candidates,
                             const std::vector<std::vector<TokenSequence>>& reference_sets) {
  if (candidates.size() != reference_sets.size())
    throw Error(ErrorCategory::invalid_input, "evaluate_corpus: list length mismatch");
  if (candidates.empty())
    throw Error(ErrorCategory::invalid_input, "evaluate_corpus: empty corpus");

  MetricReport rep{};
  const size_t items = candidates.size();

  for (int n = 1; n <= 3; ++n) {
    RougeScore acc;
    for (size_t i = 0; i < items; ++i) {
      const RougeScore s = rouge_n(candidates[i], reference_sets[i], n);
      acc.recall += s.recall;
      acc.precision += s.precision;
      acc.f1 += s.f1;
    }
    rep.rouge[n - 1] = {acc.recall / items, acc.precision / items, acc.f1 / items};
  }

  for (int max_n = 1; max_n <= 4; ++max_n) {
    const std::vector<Scalar> weights(max_n, Scalar(1) / max_n);
    Scalar acc = 0;
    BleuStats pooled;
    pooled.matches.assign(max_n, 0);
    pooled.totals.assign(max_n, 0);
    for (size_t i = 0; i < items; ++i) {
      const BleuStats st = bleu_stats(candidates[i], reference_sets[i], max_n);
      acc += bleu_from_stats(st, max_n, weights);
      for (int n = 0; n < max_n; ++n) {
        pooled.matches[n] += st.matches[n];
        pooled.totals[n] += st.totals[n];
      }
      pooled.cand_len += st.cand_len;
      pooled.ref_len += st.ref_len;
    }
    rep.bleu_avg[max_n - 1] = acc / items;
    rep.bleu_corpus[max_n - 1] = bleu_from_stats(pooled, max_n, weights);
  }

  MeteorScore macc;
  for (size_t i = 0; i < items; ++i) {
    MeteorScore best;
    for (const auto& ref : reference_sets[i]) {
      const MeteorScore s = meteor(candidates[i], ref);
      if (s.score > best.score) best = s;
    }
    macc.precision += best.precision;
    macc.recall += best.recall;
    macc.penalty += best.penalty;
    macc.score += best.score;
    macc.f1 += best.f1;
    macc.f_mean += best.f_mean;
  }
  rep.meteor.precision = macc.precision / items;
  rep.meteor.recall = macc.recall / items;
  rep.meteor.penalty = macc.penalty / items;
  rep.meteor.score = macc.score / items;
  rep.meteor.f1 = macc.f1 / items;
  rep.meteor.f_mean = macc.f_mean / items;
  return rep;
}

std::string format_report(const MetricReport& rep) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << "METRIC\tAverage Recall\tAverage Precision\tF score\n";
  for (int n = 1; n <= 3; ++n) {
    const RougeScore& s = rep.rouge[n - 1];
    out << "ROUGE-" << n << '\t' << s.recall << '\t' << s.precision << '\t' << s.f1 << '\n';
  }
  out << "\nMETRIC\tScore\tCorpus\n";
  for (int n = 1; n <= 4; ++n)
    out << "BLEU-" << n << '\t' << rep.bleu_avg[n - 1] << '\t' << rep.bleu_corpus[n - 1] << '\n';
  out << "\nAverage Recall\tAverage Precision\tF1\tF mean\tFinal Score\n";
  out << rep.meteor.recall << '\t' << rep.meteor.precision << '\t' << rep.meteor.f1 << '\t'
      << rep.meteor.f_mean << '\t' << rep.meteor.score << '\n';
  return out.str();
}

}  // namespace sugaman
