#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Knutson–Tao puzzles on the size-r triangular board.
//
// Rows are numbered 0..r−1 from the apex; row i has i+1 upward and i
// downward unit triangles. Every edge belongs to exactly one upward triangle
// (i, j), j = 0..i: its bottom, left (NW-facing) or right (NE-facing) side.
//
// Edge labels are 0 and 1, plus 2 for the diagonal shared by the two halves
// of a rhombus piece. Label 2 never appears on the outer boundary.
//
// Boundary reading: the NW side is read from the bottom-left corner up to
// the apex, the NE side from the apex down to the bottom-right corner, and
// the S side from left to right. I, J, K are the 1-based positions of the
// 1-labels on those sides.
namespace gitkit::puzzles {

struct BoundaryTriple {
  std::vector<int> I, J, K;  // sorted, 1-based
};

/// Throws DomainError unless |I| = |J| = |K| and all entries are distinct and in 1..r.
void validate_boundary(int r, const BoundaryTriple& b);

class PuzzleBoard {
 public:
  explicit PuzzleBoard(int r);

  int size() const noexcept { return r_; }
  int& bottom(int i, int j) { return bottom_[index(i, j)]; }
  int& left(int i, int j) { return left_[index(i, j)]; }
  int& right(int i, int j) { return right_[index(i, j)]; }
  int bottom(int i, int j) const { return bottom_[index(i, j)]; }
  int left(int i, int j) const { return left_[index(i, j)]; }
  int right(int i, int j) const { return right_[index(i, j)]; }

  /// True iff every up and down unit triangle is a legal piece and the
  /// outer boundary carries only 0/1.
  bool is_legal() const;
  BoundaryTriple boundary() const;

 private:
  static std::size_t index(int i, int j) { return static_cast<std::size_t>(i) * (i + 1) / 2 + j; }
  int r_;
  std::vector<int> bottom_, left_, right_;
};

/// Up triangle with (bottom, left, right) labels is a legal piece.
bool legal_up(int bottom, int left, int right);
/// Down triangle with (top, right, left) labels is a legal piece.
bool legal_down(int top, int right, int left);

/// Number of puzzles with the given boundary. r ≤ 8. The work of each row is
/// split across `jobs` threads; the count does not depend on `jobs`.
std::int64_t count_puzzles(int r, const BoundaryTriple& b, int jobs = 1);

/// All puzzles with the given boundary, in lexicographic order of row fillings.
std::vector<PuzzleBoard> list_puzzles(int r, const BoundaryTriple& b);

/// Partition in the s×(r−s) box ↔ s-subset of {1..r}: I_k = (r−s) + k − λ_k.
std::vector<int> partition_to_subset(int r, int s, const std::vector<int>& lambda);
std::vector<int> subset_to_partition(int r, const std::vector<int>& subset);

/// All s-subsets of {1..r} in lexicographic order.
std::vector<std::vector<int>> subsets(int r, int s);

/// Littlewood–Richardson number c^ν_{λμ} for the Grassmannian G(s, r), via puzzles.
std::int64_t lr_coefficient(int r, int s, const std::vector<int>& lambda, const std::vector<int>& mu,
                            const std::vector<int>& nu);

struct AssociativityReport {
  bool pass = true;
  std::int64_t tuples_checked = 0;
  std::optional<std::vector<std::vector<int>>> counterexample;  // (I, J, L, M)
};

/// Checks Σ_K n_{IJ}^K n_{KL}^M = Σ_K n_{JL}^K n_{IK}^M. trials ≤ 0 (or at
/// least the number of tuples) enumerates every tuple; otherwise samples with `seed`.
AssociativityReport associativity_check(int r, int s, std::int64_t trials, std::uint64_t seed = 0);

}  // namespace gitkit::puzzles
