#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "cirq/cirquent.hpp"

namespace cirq {
namespace {

struct Dense {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> kids;
  std::vector<std::vector<int>> pars;
  int root = 0;
};

Dense densify(const Cirquent& c) {
  Dense d;
  std::map<std::string, int> idx;
  for (const auto& [name, node] : c.nodes()) {
    idx[name] = static_cast<int>(d.labels.size());
    d.labels.push_back(node.label.str());
  }
  d.kids.resize(d.labels.size());
  d.pars.resize(d.labels.size());
  for (const auto& [p, ch] : c.edges()) {
    d.kids[idx[p]].push_back(idx[ch]);
    d.pars[idx[ch]].push_back(idx[p]);
  }
  d.root = idx[c.root()];
  return d;
}

// Renumbers colors by the sorted order of their signatures until stable.
void refine(const Dense& d, std::vector<int>& color) {
  const std::size_t n = color.size();
  std::size_t classes = 0;
  for (;;) {
    std::vector<std::vector<int>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.push_back(color[v]);
      std::vector<int> k, p;
      for (int x : d.kids[v]) k.push_back(color[x]);
      for (int x : d.pars[v]) p.push_back(color[x]);
      std::sort(k.begin(), k.end());
      std::sort(p.begin(), p.end());
      s.push_back(static_cast<int>(k.size()));
      s.insert(s.end(), k.begin(), k.end());
      s.push_back(-1);
      s.insert(s.end(), p.begin(), p.end());
    }
    std::map<std::vector<int>, int> rank;
    for (auto& s : sig) rank.emplace(s, 0);
    int r = 0;
    for (auto& [_, v] : rank) v = r++;
    for (std::size_t v = 0; v < n; ++v) color[v] = rank[sig[v]];
    if (rank.size() == classes) return;
    classes = rank.size();
  }
}

std::string encode(const Dense& d, const std::vector<int>& color) {
  const std::size_t n = color.size();
  std::vector<int> at(n);
  for (std::size_t v = 0; v < n; ++v) at[color[v]] = static_cast<int>(v);
  std::string out = std::to_string(n) + ";";
  for (std::size_t i = 0; i < n; ++i) out += d.labels[at[i]] + ",";
  std::vector<std::pair<int, int>> es;
  for (std::size_t v = 0; v < n; ++v)
    for (int ch : d.kids[v]) es.emplace_back(color[v], color[ch]);
  std::sort(es.begin(), es.end());
  out += ";";
  for (auto [p, ch] : es) out += std::to_string(p) + ">" + std::to_string(ch) + ",";
  return out;
}

void search(const Dense& d, std::vector<int> color, std::string& best) {
  refine(d, color);
  const std::size_t n = color.size();
  std::vector<int> count(n, 0);
  for (int c : color) ++count[c];
  int target = -1;
  for (std::size_t c = 0; c < n; ++c)
    if (count[c] > 1) {
      target = static_cast<int>(c);
      break;
    }
  if (target < 0) {
    std::string e = encode(d, color);
    if (best.empty() || e < best) best = std::move(e);
    return;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (color[v] != target) continue;
    std::vector<int> next(n);
    for (std::size_t u = 0; u < n; ++u) next[u] = 2 * color[u] + (u == v ? 0 : 1);
    search(d, std::move(next), best);
  }
}

}  // namespace

std::string canonical_key(const Cirquent& c) {
  Dense d = densify(c);
  std::vector<std::string> sorted = d.labels;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> color(d.labels.size());
  for (std::size_t v = 0; v < color.size(); ++v)
    color[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), d.labels[v]) -
                                sorted.begin());
  std::string best;
  search(d, std::move(color), best);
  return best;
}

}  // namespace cirq
