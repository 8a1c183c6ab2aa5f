#pragma once

// Reference implementations used only by the tests. They are written
// independently of the library (plain loops over std containers) so that
// agreement means something.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sumscope/corpus.hpp"

namespace oracle {

using Seq = std::vector<std::string>;
using Vec = std::vector<double>;

// Full (m+1) x (n+1) LCS table.
inline std::size_t lcs(const Seq& a, const Seq& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t[a.size()][b.size()];
}

struct Prf {
  double p = 0.0;
  double r = 0.0;
  double f = 0.0;
};

inline Prf prf(double hits, double cand_total, double ref_total) {
  Prf out;
  if (cand_total == 0.0 || ref_total == 0.0) return out;
  out.p = hits / cand_total;
  out.r = hits / ref_total;
  out.f = out.p + out.r > 0.0 ? 2.0 * out.p * out.r / (out.p + out.r) : 0.0;
  return out;
}

inline std::multimap<Seq, int> ngram_multiset(const Seq& s, std::size_t n) {
  std::multimap<Seq, int> out;
  for (std::size_t i = 0; i + n <= s.size(); ++i) out.emplace(Seq(s.begin() + i, s.begin() + i + n), 0);
  return out;
}

// Multiset intersection size, counted by removing matched elements one at a time.
inline Prf rouge_n(const Seq& cand, const Seq& ref, std::size_t n) {
  auto c = ngram_multiset(cand, n);
  auto r = ngram_multiset(ref, n);
  const double cand_total = static_cast<double>(c.size());
  const double ref_total = static_cast<double>(r.size());
  double hits = 0.0;
  for (auto it = c.begin(); it != c.end(); ++it) {
    const auto match = r.find(it->first);
    if (match != r.end()) {
      r.erase(match);
      hits += 1.0;
    }
  }
  return prf(hits, cand_total, ref_total);
}

inline Prf rouge_l(const Seq& cand, const Seq& ref) {
  return prf(static_cast<double>(lcs(cand, ref)), static_cast<double>(cand.size()), static_cast<double>(ref.size()));
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double cos(const Vec& a, const Vec& b) {
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

inline double db(double x, double n, double alpha) { return std::min(x, alpha * (n - x)); }

struct Centrality {
  Vec intra;
  Vec inter;
  Vec combined;
};

// Exhaustive double loop. sections[s] lists the sentence vectors of section s.
inline Centrality centrality(const std::vector<std::vector<Vec>>& sections, double l1, double l2, double alpha,
                             double mu1) {
  Centrality out;
  const double ns = static_cast<double>(sections.size());
  std::vector<Vec> means;
  for (const auto& sec : sections) {
    Vec m(sec.front().size(), 0.0);
    for (const auto& v : sec) {
      for (std::size_t k = 0; k < v.size(); ++k) m[k] += v[k];
    }
    for (auto& x : m) x /= static_cast<double>(sec.size());
    means.push_back(m);
  }
  for (std::size_t s = 0; s < sections.size(); ++s) {
    const double n = static_cast<double>(sections[s].size());
    for (std::size_t i = 0; i < sections[s].size(); ++i) {
      double intra = 0.0;
      for (std::size_t j = 0; j < sections[s].size(); ++j) {
        if (i == j) continue;
        const double w = db(double(i + 1), n, alpha) >= db(double(j + 1), n, alpha) ? l1 : l2;
        intra += w * cos(sections[s][i], sections[s][j]);
      }
      double inter = 0.0;
      for (std::size_t t = 0; t < sections.size(); ++t) {
        if (t == s) continue;
        const double w = db(double(s + 1), ns, alpha) >= db(double(t + 1), ns, alpha) ? l1 : l2;
        inter += w * cos(sections[s][i], means[t]);
      }
      out.intra.push_back(intra);
      out.inter.push_back(inter);
      out.combined.push_back(mu1 * inter + intra);
    }
  }
  return out;
}

inline Vec random_unit(std::mt19937_64& gen, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(dim);
  double n = 0.0;
  while (n == 0.0) {
    for (auto& x : v) x = normal(gen);
    n = std::sqrt(dot(v, v));
  }
  for (auto& x : v) x /= n;
  return v;
}

inline Seq random_tokens(std::mt19937_64& gen, std::size_t max_len, std::size_t alphabet, std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> sym(0, alphabet - 1);
  Seq s(len(gen));
  for (auto& t : s) t = std::string(1, static_cast<char>('a' + sym(gen)));
  return s;
}

// A document with the given number of sentences per section, each sentence
// a random token run over a small alphabet.
inline sumscope::Document random_document(std::mt19937_64& gen, const std::vector<std::size_t>& shape,
                                          std::size_t max_len = 6, std::size_t alphabet = 5) {
  std::vector<sumscope::Section> sections;
  for (const auto count : shape) {
    sumscope::Section sec;
    for (std::size_t k = 0; k < count; ++k) {
      const auto toks = random_tokens(gen, max_len, alphabet, 1);
      std::string raw;
      for (const auto& t : toks) raw += (raw.empty() ? "" : " ") + t;
      sec.sentences.push_back(sumscope::make_sentence(raw));
    }
    sections.push_back(std::move(sec));
  }
  return sumscope::Document("rand", std::move(sections));
}

inline std::vector<std::size_t> random_shape(std::mt19937_64& gen, std::size_t max_sentences,
                                             std::size_t max_sections) {
  std::uniform_int_distribution<std::size_t> sections_dist(1, max_sections);
  const std::size_t ns = sections_dist(gen);
  std::uniform_int_distribution<std::size_t> total_dist(ns, max_sentences);
  std::size_t total = total_dist(gen);
  std::vector<std::size_t> shape(ns, 1);
  total -= ns;
  std::uniform_int_distribution<std::size_t> pick(0, ns - 1);
  while (total-- > 0) ++shape[pick(gen)];
  return shape;
}

}  // namespace oracle
