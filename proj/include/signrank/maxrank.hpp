#pragma once

// Maximum rank of a generalized sign pattern matrix: the size of a maximum
// matching between rows and columns over the nonzero entries.

#include <vector>

#include "signrank/sign.hpp"

namespace signrank {

struct NonzeroBipartiteGraph {
  std::size_t left = 0, right = 0;
  std::vector<std::vector<std::size_t>> adj;  // row -> columns with nonzero entry

  explicit NonzeroBipartiteGraph(const SignMatrix& s)
      : left(s.rows()), right(s.cols()), adj(s.rows()) {
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j)
        if (s.at(i, j) != Sign::zero) adj[i].push_back(j);
  }
};

namespace detail {

inline bool augment(const NonzeroBipartiteGraph& g, std::size_t row,
                    std::vector<int>& match_col, std::vector<bool>& visited) {
  for (std::size_t col : g.adj[row]) {
    if (visited[col]) continue;
    visited[col] = true;
    if (match_col[col] < 0 ||
        augment(g, static_cast<std::size_t>(match_col[col]), match_col, visited)) {
      match_col[col] = static_cast<int>(row);
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline std::size_t maxrank(const SignMatrix& s) {
  NonzeroBipartiteGraph g(s);
  std::vector<int> match_col(g.right, -1);
  std::size_t size = 0;
  for (std::size_t row = 0; row < g.left; ++row) {
    std::vector<bool> visited(g.right, false);
    if (detail::augment(g, row, match_col, visited)) ++size;
  }
  return size;
}

}  // namespace signrank
