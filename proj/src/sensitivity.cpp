// Exhaustive sensitivity check at tiny depths. For every word, enumerate the
// list L, pick a valid root path per vertex of every subset, turn each
// selection into a prefix tree with the deficit-minimising prefix swap, and
// count label agreement on the tree's edges.

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "ics/errors.hpp"
#include "ics/layered_code.hpp"

namespace ics {
namespace {

struct RootPath {
  std::vector<EdgeLabel> edges;
  std::vector<Vertex> verts;  // verts[k] = vertex after k edges
  std::vector<Symbol> labels;
};

void enumerate_paths(const LayeredCode& code, int max_len, RootPath& cur, std::vector<RootPath>& out) {
  if (!cur.edges.empty()) out.push_back(cur);
  if (static_cast<int>(cur.edges.size()) == max_len) return;
  const Vertex v = cur.verts.back();
  for (auto e : kAllEdges) {
    Vertex u;
    if (!try_apply_edge(v, e, code.params(), u)) continue;
    cur.edges.push_back(e);
    cur.verts.push_back(u);
    cur.labels.push_back(code.label(v, e));
    enumerate_paths(code, max_len, cur, out);
    cur.edges.pop_back();
    cur.verts.pop_back();
    cur.labels.pop_back();
  }
}

struct Scaled {
  std::int64_t match;
  std::int64_t mismatch;
};

// Largest scaled suffix deficit of labels[0..k) against w[0..k).
std::int64_t deficit(const std::vector<Symbol>& labels, std::span<const Symbol> w, int k, Scaled s) {
  std::int64_t m = 0;
  for (int i = 0; i < k; ++i) m = std::max<std::int64_t>(m, 0) + (labels[i] == w[i] ? s.match : s.mismatch);
  return m;
}

// Working path: edges plus the derived vertex / label sequences.
struct Selected {
  std::vector<EdgeLabel> edges;
  std::vector<Vertex> verts;
  std::vector<Symbol> labels;
};

Selected materialise(const LayeredCode& code, const std::vector<EdgeLabel>& edges) {
  Selected s;
  s.edges = edges;
  s.verts.push_back(root_vertex());
  for (auto e : edges) {
    s.labels.push_back(code.label(s.verts.back(), e));
    s.verts.push_back(apply_edge(s.verts.back(), e, code.params()));
  }
  return s;
}

bool same_prefix(const Selected& a, const Selected& b, int k) {
  return std::equal(a.edges.begin(), a.edges.begin() + k, b.edges.begin());
}

// One rewrite step; returns false when the selection already forms a tree.
bool rewrite_once(const LayeredCode& code, std::vector<Selected>& sel, std::span<const Symbol> w, Scaled sc) {
  int max_len = 0;
  for (const auto& p : sel) max_len = std::max(max_len, static_cast<int>(p.edges.size()));
  for (int k = max_len; k >= 1; --k) {
    std::optional<Vertex> y_max;
    for (std::size_t a = 0; a < sel.size(); ++a) {
      if (static_cast<int>(sel[a].edges.size()) < k) continue;
      for (std::size_t b = a + 1; b < sel.size(); ++b) {
        if (static_cast<int>(sel[b].edges.size()) < k) continue;
        if (sel[a].verts[k] == sel[b].verts[k] && !same_prefix(sel[a], sel[b], k)) {
          if (!y_max || sel[a].verts[k] < *y_max) y_max = sel[a].verts[k];
        }
      }
    }
    if (!y_max) continue;
    std::vector<std::size_t> through;
    for (std::size_t a = 0; a < sel.size(); ++a)
      if (static_cast<int>(sel[a].edges.size()) >= k && sel[a].verts[k] == *y_max) through.push_back(a);
    std::size_t best = through.front();
    std::int64_t best_def = deficit(sel[best].labels, w, k, sc);
    for (std::size_t a : through) {
      const std::int64_t d = deficit(sel[a].labels, w, k, sc);
      if (d < best_def) {
        best_def = d;
        best = a;
      }
    }
    const std::vector<EdgeLabel> q(sel[best].edges.begin(), sel[best].edges.begin() + k);
    for (std::size_t a : through) {
      std::vector<EdgeLabel> edges = q;
      edges.insert(edges.end(), sel[a].edges.begin() + k, sel[a].edges.end());
      sel[a] = materialise(code, edges);
    }
    return true;
  }
  return false;
}

bool is_tree(const std::vector<Selected>& sel) {
  for (std::size_t a = 0; a < sel.size(); ++a)
    for (std::size_t b = a + 1; b < sel.size(); ++b) {
      const int common = static_cast<int>(std::min(sel[a].edges.size(), sel[b].edges.size()));
      for (int k = 1; k <= common; ++k)
        if (sel[a].verts[k] == sel[b].verts[k] && !same_prefix(sel[a], sel[b], k)) return false;
    }
  return true;
}

int tree_agreement(const std::vector<Selected>& sel, std::span<const Symbol> w) {
  // An edge of the tree is identified by its source vertex and label.
  std::set<std::pair<Vertex, EdgeLabel>> seen;
  int agr = 0;
  for (const auto& p : sel)
    for (std::size_t k = 0; k < p.edges.size(); ++k)
      if (seen.emplace(p.verts[k], p.edges[k]).second && p.labels[k] == w[k]) ++agr;
  return agr;
}

}  // namespace

SensitivityReport check_sensitivity_exhaustive(const LayeredCode& code, int depth, Fraction epsilon,
                                               const SensitivityOptions& options) {
  if (depth < 1 || depth > code.params().depth) throw ConfigError("sensitivity depth outside code depth");
  if (epsilon.num <= 0 || epsilon.num >= epsilon.den) throw ConfigError("epsilon must lie in (0,1)");
  const std::uint64_t q = code.alphabet_size();
  std::uint64_t words = 1;
  for (int i = 0; i < depth; ++i) {
    if (words > options.word_budget / q) throw BudgetExceeded("alphabet^depth exceeds the word budget");
    words *= q;
  }

  SensitivityReport report;
  report.epsilon = epsilon;
  report.depth = depth;

  const Scaled sc{-(epsilon.den - epsilon.num), epsilon.num};
  std::vector<RootPath> paths;
  RootPath cur;
  cur.verts.push_back(root_vertex());
  enumerate_paths(code, depth, cur, paths);

  std::vector<Symbol> w(depth, 0);
  for (std::uint64_t index = 0; index < words; ++index) {
    std::uint64_t rem = index;
    for (int i = depth - 1; i >= 0; --i) {
      w[i] = static_cast<Symbol>(rem % q);
      rem /= q;
    }
    ++report.checked_words;

    // Valid root paths grouped by end vertex.
    std::map<Vertex, std::vector<const RootPath*>> valid;
    for (const auto& p : paths)
      if (deficit(p.labels, w, static_cast<int>(p.edges.size()), sc) < 0) valid[p.verts.back()].push_back(&p);
    if (valid.empty()) continue;

    std::vector<const std::vector<const RootPath*>*> groups;
    for (const auto& [v, ps] : valid) groups.push_back(&ps);
    const int n_list = static_cast<int>(groups.size());

    auto check_selection = [&](std::vector<Selected> sel) -> bool {
      for (int guard = 0; rewrite_once(code, sel, w, sc); ++guard)
        if (guard > 10000) throw InvariantViolation("prefix-tree rewrite did not terminate");
      if (!is_tree(sel)) throw InvariantViolation("prefix-tree rewrite left a non-tree");
      const int agr = tree_agreement(sel, w);
      if (static_cast<std::int64_t>(agr) * epsilon.den <= (epsilon.den + epsilon.num) * std::int64_t{depth})
        return false;
      ++report.violation_count;
      if (report.violations.size() < options.max_witnesses) {
        PrefixTreeWitness wit{w, {}, agr};
        for (const auto& s : sel) wit.paths.push_back(s.edges);
        report.violations.push_back(std::move(wit));
      }
      return true;
    };

    std::vector<std::uint32_t> subsets;
    if (n_list <= options.max_subset_bits) {
      for (std::uint32_t m = 1; m < (1u << n_list); ++m) subsets.push_back(m);
    }
    bool violated = false;
    auto run_subset = [&](const std::vector<int>& members) {
      // Enumerate every choice of valid path per member (all prefix trees),
      // bounded; each choice is rewritten into a tree if it is not one.
      std::uint64_t combos = 1;
      for (int m : members) combos = std::min<std::uint64_t>(combos * groups[m]->size(), 1u << 16);
      const bool all_choices = combos < (1u << 16);
      std::vector<std::size_t> choice(members.size(), 0);
      while (true) {
        std::vector<Selected> sel;
        for (std::size_t j = 0; j < members.size(); ++j) {
          const RootPath* p = (*groups[members[j]])[choice[j]];
          sel.push_back(Selected{p->edges, p->verts, p->labels});
        }
        if (check_selection(std::move(sel))) {
          violated = true;
          return;
        }
        if (!all_choices) return;
        std::size_t j = 0;
        while (j < members.size() && ++choice[j] == groups[members[j]]->size()) choice[j++] = 0;
        if (j == members.size()) return;
      }
    };
    if (subsets.empty()) {
      std::vector<int> all(n_list);
      for (int i = 0; i < n_list; ++i) all[i] = i;
      run_subset(all);
    } else {
      for (auto m : subsets) {
        std::vector<int> members;
        for (int i = 0; i < n_list; ++i)
          if (m >> i & 1u) members.push_back(i);
        run_subset(members);
        if (violated) break;  // one witness per word is enough
      }
    }
    if (violated && options.stop_at_first) break;
  }
  return report;
}

}  // namespace ics
