#include "gitkit/puzzles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <thread>

#include "gitkit/characters.hpp"
#include "gitkit/error.hpp"

namespace gitkit::puzzles {

namespace {

using Labels = std::vector<int>;

struct Sides {
  Labels nw, ne, s;  // indexed by position − 1
};

Labels indicator(int r, const std::vector<int>& positions) {
  Labels out(r, 0);
  for (int p : positions) out[p - 1] = 1;
  return out;
}

Sides sides_of(int r, const BoundaryTriple& b) { return {indicator(r, b.I), indicator(r, b.J), indicator(r, b.K)}; }

int left_label(const Sides& sd, int r, int row) { return sd.nw[r - 1 - row]; }
int right_label(const Sides& sd, int row) { return sd.ne[row]; }

struct RowFill {
  Labels bottoms;
  Labels lefts, rights;  // of the up triangles in the row
};

// Given the row's top edges (bottoms of the previous row) and its two
// boundary labels, enumerate every legal filling. The left label of each up
// triangle is forced by its left neighbour, so only the up pieces branch.
void fill_row(int row, int left_boundary, int right_boundary, const Labels& tops,
              const std::function<void(const RowFill&)>& emit) {
  RowFill cur;
  cur.bottoms.resize(row + 1);
  cur.lefts.resize(row + 1);
  cur.rights.resize(row + 1);
  std::function<void(int, int)> place = [&](int j, int left) {
    for (int bottom = 0; bottom < 3; ++bottom)
      for (int right = 0; right < 3; ++right) {
        if (!legal_up(bottom, left, right)) continue;
        cur.bottoms[j] = bottom;
        cur.lefts[j] = left;
        cur.rights[j] = right;
        if (j == row) {
          if (right == right_boundary) emit(cur);
          continue;
        }
        // Down triangle between up (row, j) and up (row, j+1).
        for (int down_right = 0; down_right < 3; ++down_right)
          if (legal_down(tops[j], down_right, right)) place(j + 1, down_right);
      }
  };
  place(0, left_boundary);
}

using StateMap = std::map<Labels, std::int64_t>;

StateMap advance(int r, int row, const Sides& sd, const std::vector<std::pair<Labels, std::int64_t>>& states) {
  StateMap next;
  for (const auto& [tops, ways] : states)
    fill_row(row, left_label(sd, r, row), right_label(sd, row), tops, [&](const RowFill& f) {
      if (row == r - 1 && f.bottoms != sd.s) return;
      auto& slot = next[f.bottoms];
      slot = checked_add(slot, ways);
    });
  return next;
}

}  // namespace

bool legal_up(int bottom, int left, int right) {
  if (bottom == left && left == right) return bottom != 2;
  // Rhombus halves: clockwise (bottom, left, right) is a cyclic shift of (2, 1, 0).
  return (bottom == 2 && left == 1 && right == 0) || (bottom == 0 && left == 2 && right == 1) ||
         (bottom == 1 && left == 0 && right == 2);
}

bool legal_down(int top, int right, int left) {
  // 180° rotation of an up piece: bottom→top, left→right, right→left.
  return legal_up(top, right, left);
}

void validate_boundary(int r, const BoundaryTriple& b) {
  if (r < 1) throw DomainError("bad_size", "puzzle size must be at least 1");
  if (b.I.size() != b.J.size() || b.J.size() != b.K.size())
    throw DomainError("size_mismatch", "boundary subsets must have equal size");
  for (const auto* side : {&b.I, &b.J, &b.K}) {
    std::vector<int> sorted = *side;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DomainError("bad_subset", "boundary subset has repeated entries");
    for (int p : sorted)
      if (p < 1 || p > r) throw DomainError("bad_subset", "boundary position out of range 1.." + std::to_string(r));
  }
}

PuzzleBoard::PuzzleBoard(int r)
    : r_(r), bottom_(static_cast<std::size_t>(r) * (r + 1) / 2), left_(bottom_.size()), right_(bottom_.size()) {}

bool PuzzleBoard::is_legal() const {
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j <= i; ++j)
      if (!legal_up(bottom(i, j), left(i, j), right(i, j))) return false;
    for (int j = 0; j < i; ++j)
      if (!legal_down(bottom(i - 1, j), left(i, j + 1), right(i, j))) return false;
  }
  for (int i = 0; i < r_; ++i) {
    if (left(i, 0) == 2 || right(i, i) == 2 || bottom(r_ - 1, i) == 2) return false;
  }
  return true;
}

BoundaryTriple PuzzleBoard::boundary() const {
  BoundaryTriple b;
  for (int p = 1; p <= r_; ++p) {
    if (left(r_ - p, 0) == 1) b.I.push_back(p);
    if (right(p - 1, p - 1) == 1) b.J.push_back(p);
    if (bottom(r_ - 1, p - 1) == 1) b.K.push_back(p);
  }
  return b;
}

std::int64_t count_puzzles(int r, const BoundaryTriple& b, int jobs) {
  validate_boundary(r, b);
  if (r > 8) throw DomainError("bad_size", "count_puzzles supports r ≤ 8");
  jobs = std::max(1, jobs);
  const Sides sd = sides_of(r, b);
  StateMap states{{Labels{}, 1}};
  for (int row = 0; row < r; ++row) {
    std::vector<std::pair<Labels, std::int64_t>> flat(states.begin(), states.end());
    if (jobs == 1 || flat.size() < 2) {
      states = advance(r, row, sd, flat);
      continue;
    }
    const std::size_t workers = std::min<std::size_t>(jobs, flat.size());
    std::vector<StateMap> partial(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        std::vector<std::pair<Labels, std::int64_t>> chunk;
        for (std::size_t k = w; k < flat.size(); k += workers) chunk.push_back(flat[k]);
        partial[w] = advance(r, row, sd, chunk);
      });
    }
    for (auto& t : pool) t.join();
    states.clear();
    for (const auto& part : partial)
      for (const auto& [labels, ways] : part) states[labels] = checked_add(states[labels], ways);
  }
  auto it = states.find(sd.s);
  return it == states.end() ? 0 : it->second;
}

std::vector<PuzzleBoard> list_puzzles(int r, const BoundaryTriple& b) {
  validate_boundary(r, b);
  if (r > 8) throw DomainError("bad_size", "list_puzzles supports r ≤ 8");
  const Sides sd = sides_of(r, b);

  // Backward memo: number of completions from the top edges of `row`.
  std::map<std::pair<int, Labels>, std::int64_t> memo;
  std::function<std::int64_t(int, const Labels&)> completions = [&](int row, const Labels& tops) -> std::int64_t {
    if (row == r) return tops == sd.s ? 1 : 0;
    auto key = std::make_pair(row, tops);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::int64_t total = 0;
    fill_row(row, left_label(sd, r, row), right_label(sd, row), tops,
             [&](const RowFill& f) { total = checked_add(total, completions(row + 1, f.bottoms)); });
    memo.emplace(std::move(key), total);
    return total;
  };

  std::vector<PuzzleBoard> out;
  PuzzleBoard board(r);
  std::function<void(int, const Labels&)> descend = [&](int row, const Labels& tops) {
    if (row == r) {
      out.push_back(board);
      return;
    }
    std::vector<RowFill> fills;
    fill_row(row, left_label(sd, r, row), right_label(sd, row), tops, [&](const RowFill& f) { fills.push_back(f); });
    for (const auto& f : fills) {
      if (completions(row + 1, f.bottoms) == 0) continue;
      for (int j = 0; j <= row; ++j) {
        board.bottom(row, j) = f.bottoms[j];
        board.left(row, j) = f.lefts[j];
        board.right(row, j) = f.rights[j];
      }
      descend(row + 1, f.bottoms);
    }
  };
  descend(0, Labels{});
  return out;
}

std::vector<int> partition_to_subset(int r, int s, const std::vector<int>& lambda) {
  if (s < 0 || s > r) throw DomainError("bad_size", "need 0 ≤ s ≤ r");
  if (static_cast<int>(lambda.size()) > s && std::any_of(lambda.begin() + s, lambda.end(), [](int x) { return x != 0; }))
    throw DomainError("out_of_box", "partition has more than s nonzero parts");
  std::vector<int> parts(s, 0);
  for (int k = 0; k < s && k < static_cast<int>(lambda.size()); ++k) parts[k] = lambda[k];
  for (int k = 0; k < s; ++k) {
    if (parts[k] < 0 || parts[k] > r - s) throw DomainError("out_of_box", "partition does not fit in the s×(r−s) box");
    if (k + 1 < s && parts[k] < parts[k + 1]) throw DomainError("not_partition", "parts must be weakly decreasing");
  }
  std::vector<int> subset(s);
  for (int k = 1; k <= s; ++k) subset[k - 1] = (r - s) + k - parts[k - 1];
  return subset;
}

std::vector<int> subset_to_partition(int r, const std::vector<int>& subset) {
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  const int s = static_cast<int>(sorted.size());
  std::vector<int> lambda(s);
  for (int k = 1; k <= s; ++k) lambda[k - 1] = (r - s) + k - sorted[k - 1];
  return lambda;
}

std::vector<std::vector<int>> subsets(int r, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == s) {
      out.push_back(cur);
      return;
    }
    for (int p = next; p <= r; ++p) {
      cur.push_back(p);
      rec(p + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

std::int64_t lr_coefficient(int r, int s, const std::vector<int>& lambda, const std::vector<int>& mu,
                            const std::vector<int>& nu) {
  BoundaryTriple b{partition_to_subset(r, s, lambda), partition_to_subset(r, s, mu), partition_to_subset(r, s, nu)};
  return count_puzzles(r, b);
}

AssociativityReport associativity_check(int r, int s, std::int64_t trials, std::uint64_t seed) {
  if (r < 1 || r > 6) throw DomainError("bad_size", "associativity_check supports 1 ≤ r ≤ 6");
  if (s < 0 || s > r) throw DomainError("bad_size", "need 0 ≤ s ≤ r");
  const auto subs = subsets(r, s);
  const std::size_t n = subs.size();
  std::vector<std::int64_t> table(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) table[(a * n + b) * n + c] = count_puzzles(r, {subs[a], subs[b], subs[c]});
  auto coef = [&](std::size_t a, std::size_t b, std::size_t c) { return table[(a * n + b) * n + c]; };

  AssociativityReport report;
  auto check = [&](std::size_t i, std::size_t j, std::size_t l, std::size_t m) {
    std::int64_t lhs = 0, rhs = 0;
    for (std::size_t k = 0; k < n; ++k) {
      lhs = checked_add(lhs, checked_mul(coef(i, j, k), coef(k, l, m)));
      rhs = checked_add(rhs, checked_mul(coef(j, l, k), coef(i, k, m)));
    }
    ++report.tuples_checked;
    if (lhs != rhs && report.pass) {
      report.pass = false;
      report.counterexample = std::vector<std::vector<int>>{subs[i], subs[j], subs[l], subs[m]};
    }
  };
  const std::int64_t total = static_cast<std::int64_t>(n * n * n * n);
  if (trials <= 0 || trials >= total) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t m = 0; m < n; ++m) check(i, j, l, m);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::int64_t t = 0; t < trials; ++t) check(pick(rng), pick(rng), pick(rng), pick(rng));
  }
  return report;
}

}  // namespace gitkit::puzzles
