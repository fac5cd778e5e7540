#include "carnot/hall.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carnot {

namespace {

int moebius(int n) {
  int m = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  }
  if (n > 1) m = -m;
  return m;
}

long ipow(long base, int e) {
  long v = 1;
  while (e-- > 0) v *= base;
  return v;
}

}  // namespace

long witt_dimension(int r, int d) {
  long sum = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    sum += moebius(e) * ipow(r, d / e);
  }
  return sum / d;
}

std::vector<HallWord> hall_words(int r, int step) {
  if (r < 1 || step < 1) throw std::invalid_argument("hall_words: rank and step must be >= 1");

  std::vector<HallWord> words;
  std::vector<size_t> degree_start;  // first index of each degree, 0-based

  degree_start.push_back(0);
  for (int g = 1; g <= r; ++g) {
    HallWord w;
    w.generator = g;
    w.degree = 1;
    w.label = "X" + std::to_string(g);
    words.push_back(std::move(w));
  }

  // Admissibility for [u,v]: u > v in the word order, and u either is a
  // generator or has right child <= v.
  auto admissible = [&](size_t u, size_t v) {
    if (u <= v) return false;
    return words[u].left < 0 || static_cast<size_t>(words[u].right) <= v;
  };

  for (int d = 2; d <= step; ++d) {
    degree_start.push_back(words.size());
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t u = 0; u < degree_start[d - 1]; ++u) {
      const int du = words[u].degree;
      if (du >= d) break;
      const int dv = d - du;
      if (dv > du) continue;  // u > v forces deg(u) >= deg(v)
      const size_t v_begin = degree_start[dv - 1];
      const size_t v_end = dv < d - 1 ? degree_start[dv] : words.size();
      for (size_t v = v_begin; v < v_end && words[v].degree == dv; ++v)
        if (admissible(u, v)) pairs.emplace_back(u, v);
    }
    std::sort(pairs.begin(), pairs.end());
    for (auto [u, v] : pairs) {
      HallWord w;
      w.left = static_cast<int>(u);
      w.right = static_cast<int>(v);
      w.degree = d;
      w.label = words[u].label + words[v].label.substr(1);
      words.push_back(std::move(w));
    }
  }
  return words;
}

}  // namespace carnot
