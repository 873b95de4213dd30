#ifndef SPRAYLAB_CORE_HOLONOMY_HPP
#define SPRAYLAB_CORE_HOLONOMY_HPP

#include <memory>
#include <string>
#include <vector>

#include "core/spray.hpp"
#include "core/transport.hpp"
#include "core/types.hpp"

namespace spraylab {

/// A nested-bracket expression over the connection fields X_i = N(., e_i).
/// Leaves are 1-based basis indices in text form ("[1,[2,3]]") and 0-based
/// in the `leaf` member.
struct BracketWord {
  int leaf = -1;  // >= 0 for a leaf; -1 for a bracket node
  std::unique_ptr<BracketWord> left;
  std::unique_ptr<BracketWord> right;

  BracketWord() = default;
  explicit BracketWord(int leaf_index) : leaf(leaf_index) {}
  BracketWord(BracketWord a, BracketWord b);

  BracketWord(const BracketWord& other);
  BracketWord& operator=(const BracketWord& other);
  BracketWord(BracketWord&&) = default;
  BracketWord& operator=(BracketWord&&) = default;

  bool is_leaf() const { return leaf >= 0; }
  /// Leaves have depth 1; a bracket node is 1 + max of its children.
  int depth() const;
  /// Text form with 1-based leaves, e.g. "[[1,2],3]".
  std::string to_string() const;
  /// Parse the text form; throws ValidationError on malformed input or
  /// leaf indices outside 1..dim.
  static BracketWord parse(const std::string& text, int dim);
};

bool operator==(const BracketWord& a, const BracketWord& b);

/// All canonical bracket words over `dim` generators up to `max_depth`,
/// ordered by depth then lexicographically.  Canonical form: brackets of
/// structurally equal operands are dropped, and operands are ordered
/// deeper-first (ties broken toward the smaller leaf pattern), so exactly
/// one representative per antisymmetry class survives.  Throws
/// CapacityError when the list would exceed `cap` entries.
std::vector<BracketWord> generate_words(int dim, int max_depth, std::size_t cap = 2000);

/// Deepest nesting the evaluator is compiled for (word depth max_depth+1).
inline constexpr int kMaxBracketLevels = 6;

/// Evaluate the iterated Jacobi-Lie bracket of connection fields named by
/// `word` at the point y.  [X,Y](y) = DY(y;X(y)) - DX(y;Y(y)).
Vec vf_eval(const SprayField& s, const BracketWord& word, const Vec& y);

/// Rank data for the span of bracket-word values at one nesting depth.
struct DimensionEstimate {
  int depth = 0;
  int words = 0;      // words of depth <= this depth
  int samples = 0;    // base points used
  int rank = 0;       // numerical rank; a lower bound for the true span
  std::vector<double> singular_values;
};

/// Estimate the holonomy-algebra dimension by sampling the connection
/// fields and their iterated brackets at `samples` quasi-random unit
/// points and ranking the stacked value matrix, one estimate per depth
/// from 1 to `max_depth`.  `depth_cap` bounds requests (default 5);
/// deeper words would exceed the compiled nesting budget.
std::vector<DimensionEstimate> dim_estimate(const SprayField& s, int max_depth, int samples,
                                            double svd_tol = 1e-8,
                                            unsigned long long seed = 20240901ULL,
                                            int depth_cap = 5);

/// Transport y0 around the parallelogram loop (s*w1, s*w2, -s*w1, -s*w2)
/// with unit-time legs and return (endpoint - y0).
Vec loop_defect(const SprayField& s, const Vec& w1, const Vec& w2, double scale, const Vec& y0,
                const IntegratorConfig& cfg);

struct LoopDefectLadder {
  std::vector<double> scales;
  std::vector<double> defect_norms;
  std::vector<Vec> defects;
  double slope = 0.0;  // least-squares slope of log|defect| vs log(scale)
};

/// Loop defects over a ladder of scales plus the log-log slope; quadratic
/// shrinkage (slope near 2) is the expected signature when the leading
/// bracket term does not vanish at y0.
LoopDefectLadder loop_defect_ladder(const SprayField& s, const Vec& w1, const Vec& w2,
                                    const std::vector<double>& scales, const Vec& y0,
                                    const IntegratorConfig& cfg);

}  // namespace spraylab

#endif
