#include "core/holonomy.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "core/dual.hpp"

namespace spraylab {

namespace {

// Structural total order used both to orient bracket operands and to sort
// word lists: shallower first, leaves before brackets, then recursively by
// operands (so leaf order is numeric, not textual).
int compare_words(const BracketWord& a, const BracketWord& b) {
  int da = a.depth(), db = b.depth();
  if (da != db) return da < db ? -1 : 1;
  if (a.is_leaf() && b.is_leaf()) return a.leaf == b.leaf ? 0 : (a.leaf < b.leaf ? -1 : 1);
  if (a.is_leaf()) return -1;
  if (b.is_leaf()) return 1;
  int c = compare_words(*a.left, *b.left);
  if (c != 0) return c;
  return compare_words(*a.right, *b.right);
}

}  // namespace

BracketWord::BracketWord(BracketWord a, BracketWord b)
    : leaf(-1),
      left(std::make_unique<BracketWord>(std::move(a))),
      right(std::make_unique<BracketWord>(std::move(b))) {}

BracketWord::BracketWord(const BracketWord& other) : leaf(other.leaf) {
  if (other.left) left = std::make_unique<BracketWord>(*other.left);
  if (other.right) right = std::make_unique<BracketWord>(*other.right);
}

BracketWord& BracketWord::operator=(const BracketWord& other) {
  if (this == &other) return *this;
  leaf = other.leaf;
  left = other.left ? std::make_unique<BracketWord>(*other.left) : nullptr;
  right = other.right ? std::make_unique<BracketWord>(*other.right) : nullptr;
  return *this;
}

int BracketWord::depth() const {
  if (is_leaf()) return 1;
  return 1 + std::max(left->depth(), right->depth());
}

std::string BracketWord::to_string() const {
  if (is_leaf()) return std::to_string(leaf + 1);
  return "[" + left->to_string() + "," + right->to_string() + "]";
}

bool operator==(const BracketWord& a, const BracketWord& b) {
  return compare_words(a, b) == 0;
}

namespace {

BracketWord parse_rec(const std::string& text, std::size_t& pos, int dim) {
  auto fail = [&](const std::string& why) {
    throw ValidationError("bracket word \"" + text + "\": " + why + " at position " +
                          std::to_string(pos));
  };
  if (pos >= text.size()) fail("unexpected end of input");
  if (text[pos] == '[') {
    ++pos;
    BracketWord a = parse_rec(text, pos, dim);
    if (pos >= text.size() || text[pos] != ',') fail("expected ','");
    ++pos;
    BracketWord b = parse_rec(text, pos, dim);
    if (pos >= text.size() || text[pos] != ']') fail("expected ']'");
    ++pos;
    return BracketWord(std::move(a), std::move(b));
  }
  if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected '[' or a basis index");
  std::size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  int idx = std::stoi(text.substr(start, pos - start));
  if (idx < 1 || idx > dim) {
    throw ValidationError("bracket word \"" + text + "\": leaf index " + std::to_string(idx) +
                          " outside 1.." + std::to_string(dim));
  }
  return BracketWord(idx - 1);
}

}  // namespace

BracketWord BracketWord::parse(const std::string& text, int dim) {
  std::string compact;
  compact.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  std::size_t pos = 0;
  BracketWord w = parse_rec(compact, pos, dim);
  if (pos != compact.size()) {
    throw ValidationError("bracket word \"" + text + "\": trailing characters");
  }
  return w;
}

std::vector<BracketWord> generate_words(int dim, int max_depth, std::size_t cap) {
  if (dim < 1) throw ValidationError("generate_words: dimension must be positive");
  if (max_depth < 1) throw ValidationError("generate_words: depth must be positive");
  std::vector<BracketWord> all;
  all.reserve(std::min<std::size_t>(cap, 256));
  for (int i = 0; i < dim; ++i) all.emplace_back(i);
  if (static_cast<std::size_t>(dim) > cap) {
    throw CapacityError("generate_words: " + std::to_string(dim) +
                        " words exceed the cap of " + std::to_string(cap));
  }
  std::size_t depth_begin = 0;  // index where the previous depth starts
  for (int d = 2; d <= max_depth; ++d) {
    std::vector<BracketWord> fresh;
    const std::size_t total = all.size();
    for (std::size_t i = 0; i < total; ++i) {
      for (std::size_t j = i + 1; j < total; ++j) {
        // A new word of depth d needs at least one operand of depth d-1;
        // entries before depth_begin are all shallower than that.
        if (i < depth_begin && j < depth_begin) continue;
        const BracketWord& a = all[i];
        const BracketWord& b = all[j];
        if (std::max(a.depth(), b.depth()) != d - 1) continue;
        // Orient: deeper operand left; equal depth resolved by structure.
        if (compare_words(a, b) < 0 && a.depth() >= b.depth()) {
          fresh.emplace_back(a, b);
        } else if (a.depth() > b.depth()) {
          fresh.emplace_back(a, b);
        } else {
          fresh.emplace_back(b, a);
        }
        if (all.size() + fresh.size() > cap) {
          throw CapacityError("generate_words: depth " + std::to_string(d) + " exceeds the cap of " +
                              std::to_string(cap) +
                              " words; lower the depth or raise the cap");
        }
      }
    }
    std::sort(fresh.begin(), fresh.end(),
              [](const BracketWord& x, const BracketWord& y) { return compare_words(x, y) < 0; });
    depth_begin = all.size();
    for (BracketWord& w : fresh) all.push_back(std::move(w));
  }
  return all;
}

namespace {

// Compile-time-bounded evaluator: every bracket level peels one L and wraps
// the scalar type in one more Dual, so the template recursion terminates.
template <class T, int L>
struct WordEval {
  static VecT<T> eval(const SprayField& s, const BracketWord& w, const VecT<T>& y) {
    const int n = s.algebra().dim();
    if (w.is_leaf()) {
      VecT<T> e(n, T(0.0));
      e[w.leaf] = T(1.0);
      return s.connection_t<T>(y, e);
    }
    if constexpr (L <= 0) {
      throw CapacityError("bracket word exceeds the compiled nesting budget of " +
                          std::to_string(kMaxBracketLevels) + " levels");
    } else {
      VecT<T> a = WordEval<T, L - 1>::eval(s, *w.left, y);
      VecT<T> b = WordEval<T, L - 1>::eval(s, *w.right, y);
      // Jacobi-Lie bracket: [A,B](y) = DB(y; A(y)) - DA(y; B(y)).
      VecT<Dual<T>> ya(n), yb(n);
      for (int i = 0; i < n; ++i) {
        ya[i] = Dual<T>(y[i], a[i]);
        yb[i] = Dual<T>(y[i], b[i]);
      }
      VecT<Dual<T>> db = WordEval<Dual<T>, L - 1>::eval(s, *w.right, ya);
      VecT<Dual<T>> da = WordEval<Dual<T>, L - 1>::eval(s, *w.left, yb);
      VecT<T> out(n);
      for (int i = 0; i < n; ++i) out[i] = db[i].b - da[i].b;
      return out;
    }
  }
};

}  // namespace

Vec vf_eval(const SprayField& s, const BracketWord& word, const Vec& y) {
  const int n = s.algebra().dim();
  if (static_cast<int>(y.size()) != n) {
    throw ValidationError("vf_eval: point size does not match the algebra dimension");
  }
  if (word.depth() > kMaxBracketLevels + 1) {
    throw CapacityError("vf_eval: word depth " + std::to_string(word.depth()) +
                        " exceeds the compiled nesting budget (max depth " +
                        std::to_string(kMaxBracketLevels + 1) + ")");
  }
  return WordEval<double, kMaxBracketLevels>::eval(s, word, y);
}

namespace {

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic quasi-random unit vectors: a Weyl sequence (irrational
// increments, seeded offsets) feeding Box-Muller, then normalization.
// Avoids std::normal_distribution, whose output is not pinned across
// standard library implementations.
class SphereSampler {
 public:
  SphereSampler(int dim, unsigned long long seed) : dim_(dim) {
    static const double kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                     29, 31, 37, 41, 43, 47, 53, 59, 61};
    const int uniforms = 2 * ((dim + 1) / 2);
    uint64_t state = seed;
    for (int i = 0; i < uniforms; ++i) {
      double a = std::sqrt(kPrimes[i % 18]);
      alpha_.push_back(a - std::floor(a));
      offset_.push_back(static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53);
    }
  }

  Vec next() {
    for (int guard = 0; guard < 64; ++guard) {
      ++k_;
      Vec z(dim_);
      for (int t = 0; 2 * t < dim_; ++t) {
        double u = uniform(2 * t);
        double v = uniform(2 * t + 1);
        u = std::max(u, 1e-16);
        double r = std::sqrt(-2.0 * std::log(u));
        z[2 * t] = r * std::cos(2.0 * M_PI * v);
        if (2 * t + 1 < dim_) z[2 * t + 1] = r * std::sin(2.0 * M_PI * v);
      }
      double nrm = norm2(z);
      if (nrm > 1e-8) {
        for (double& c : z) c /= nrm;
        return z;
      }
    }
    throw Error("sphere sampler failed to produce a usable point");
  }

 private:
  double uniform(int i) const {
    double v = offset_[i] + static_cast<double>(k_) * alpha_[i];
    return v - std::floor(v);
  }

  int dim_;
  long long k_ = 0;
  std::vector<double> alpha_;
  std::vector<double> offset_;
};

}  // namespace

std::vector<DimensionEstimate> dim_estimate(const SprayField& s, int max_depth, int samples,
                                            double svd_tol, unsigned long long seed,
                                            int depth_cap) {
  const int n = s.algebra().dim();
  if (max_depth < 1) throw ValidationError("dim_estimate: depth must be positive");
  if (samples < 1) throw ValidationError("dim_estimate: sample count must be positive");
  if (!(svd_tol > 0.0)) throw ValidationError("dim_estimate: svd tolerance must be positive");
  if (max_depth > depth_cap) {
    throw CapacityError("dim_estimate: depth " + std::to_string(max_depth) +
                        " exceeds the cap of " + std::to_string(depth_cap) +
                        "; lower the depth");
  }
  std::vector<BracketWord> words = generate_words(n, max_depth);
  const std::size_t nwords = words.size();

  // Evaluate every word at every sample point; points where any evaluation
  // leaves the spray's domain are discarded and redrawn.
  SphereSampler sampler(n, seed);
  Eigen::MatrixXd values(static_cast<Eigen::Index>(nwords),
                         static_cast<Eigen::Index>(n) * samples);
  int accepted = 0;
  int attempts = 0;
  const int max_attempts = 100 * samples + 100;
  while (accepted < samples) {
    if (++attempts > max_attempts) {
      throw DomainError("dim_estimate: could not find enough sample points inside the spray domain");
    }
    Vec p = sampler.next();
    std::vector<Vec> rows(nwords);
    bool ok = true;
    try {
      for (std::size_t wi = 0; wi < nwords; ++wi) rows[wi] = vf_eval(s, words[wi], p);
    } catch (const DomainError&) {
      ok = false;
    } catch (const RegularityError&) {
      ok = false;
    }
    if (!ok) continue;
    for (std::size_t wi = 0; wi < nwords; ++wi)
      for (int c = 0; c < n; ++c)
        values(static_cast<Eigen::Index>(wi), static_cast<Eigen::Index>(accepted) * n + c) =
            rows[wi][c];
    ++accepted;
  }

  std::vector<DimensionEstimate> out;
  for (int d = 1; d <= max_depth; ++d) {
    std::size_t mrows = 0;
    while (mrows < nwords && words[mrows].depth() <= d) ++mrows;
    DimensionEstimate est;
    est.depth = d;
    est.words = static_cast<int>(mrows);
    est.samples = samples;
    if (mrows > 0) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(values.topRows(static_cast<Eigen::Index>(mrows)));
      const auto& sv = svd.singularValues();
      est.singular_values.assign(sv.data(), sv.data() + sv.size());
      double smax = est.singular_values.empty() ? 0.0 : est.singular_values.front();
      for (double v : est.singular_values)
        if (v > svd_tol * smax && smax > 0.0) ++est.rank;
    }
    out.push_back(std::move(est));
  }
  return out;
}

Vec loop_defect(const SprayField& s, const Vec& w1, const Vec& w2, double scale, const Vec& y0,
                const IntegratorConfig& cfg) {
  const int n = s.algebra().dim();
  if (static_cast<int>(w1.size()) != n || static_cast<int>(w2.size()) != n ||
      static_cast<int>(y0.size()) != n) {
    throw ValidationError("loop_defect: vector size does not match the algebra dimension");
  }
  if (!(scale > 0.0)) throw ValidationError("loop_defect: scale must be positive");
  std::vector<LoopLeg> legs = {{scaled(w1, scale), 1.0},
                               {scaled(w2, scale), 1.0},
                               {scaled(w1, -scale), 1.0},
                               {scaled(w2, -scale), 1.0}};
  Vec end = loop_transport(s, legs, y0, cfg);
  return sub(end, y0);
}

LoopDefectLadder loop_defect_ladder(const SprayField& s, const Vec& w1, const Vec& w2,
                                    const std::vector<double>& scales, const Vec& y0,
                                    const IntegratorConfig& cfg) {
  if (scales.empty()) throw ValidationError("loop_defect_ladder: need at least one scale");
  LoopDefectLadder ladder;
  ladder.scales = scales;
  for (double sc : scales) {
    Vec d = loop_defect(s, w1, w2, sc, y0, cfg);
    ladder.defect_norms.push_back(norm2(d));
    ladder.defects.push_back(std::move(d));
  }
  // Least-squares slope of log|defect| against log(scale), using only
  // scales whose defect is numerically nonzero.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (ladder.defect_norms[i] < 1e-300) continue;
    double x = std::log(scales[i]);
    double y = std::log(ladder.defect_norms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  double denom = m * sxx - sx * sx;
  ladder.slope = (m >= 2 && std::abs(denom) > 1e-300)
                     ? (m * sxy - sx * sy) / denom
                     : std::numeric_limits<double>::quiet_NaN();
  return ladder;
}

}  // namespace spraylab
