#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tropid/matrix.hpp"

namespace tropid {

enum class Letter : std::uint8_t { a = 0, b = 1 };

char to_char(Letter x);

struct Run {
  Letter letter = Letter::a;
  std::uint64_t count = 0;
  friend bool operator==(const Run&, const Run&) = default;
};

/// Nonempty word over {a, b}, stored run-length compressed so that
/// constructed identities with 10^5 letters stay cheap.
class Word {
 public:
  /// Accepts plain "abba" and compressed "a^6 b^6 a" (whitespace ignored).
  /// Throws std::invalid_argument on the empty word or foreign symbols.
  static Word parse(std::string_view text);
  static Word letter(Letter x, std::uint64_t count = 1);
  explicit Word(std::vector<Run> runs);

  [[nodiscard]] std::uint64_t length() const { return length_; }
  [[nodiscard]] std::uint64_t count(Letter x) const { return x == Letter::a ? count_a_ : length_ - count_a_; }
  [[nodiscard]] const std::vector<Run>& runs() const { return runs_; }

  /// Letter-by-letter expansion; only for short words.
  [[nodiscard]] std::string to_plain() const;
  /// "a^2 b a" form.
  [[nodiscard]] std::string to_compressed() const;
  /// Plain form up to `plain_limit` letters, compressed beyond.
  [[nodiscard]] std::string to_string(std::uint64_t plain_limit = 64) const;

  [[nodiscard]] Word power(std::uint64_t k) const;
  friend Word operator+(const Word& x, const Word& y);
  friend bool operator==(const Word&, const Word&) = default;
  friend bool operator<(const Word& x, const Word& y) { return x.to_compressed() < y.to_compressed(); }

 private:
  Word() = default;
  std::vector<Run> runs_;
  std::uint64_t length_ = 0;
  std::uint64_t count_a_ = 0;
};

std::uint64_t occurrences(const Word& w, Letter x);

/// w<u, v>: every a replaced by u and every b by v.
Word substitute(const Word& w, const Word& u, const Word& v);

/// w<A, B>, left to right; runs use repeated squaring.
TropMatrix evaluate(const Word& w, const TropMatrix& a, const TropMatrix& b);

/// Labeled-weighted digraph G(A, B): a-arcs from A, b-arcs from B.
struct LWDigraph {
  struct LabeledArc {
    std::size_t from = 0;
    std::size_t to = 0;
    Letter label = Letter::a;
    Rational weight;
  };
  std::size_t node_count = 0;
  std::vector<LabeledArc> arcs;

  static LWDigraph from_pair(const TropMatrix& a, const TropMatrix& b);
};

/// Heaviest w-labeled walks over G(A, B), one letter at a time.
TropMatrix evaluate_by_walks(const Word& w, const LWDigraph& g);

/// Word given as a substitution tree: outer<a_sub, b_sub>, with null
/// children meaning the letters themselves. Shared subtrees are evaluated
/// once per evaluation call.
struct WordTerm {
  Word outer;
  std::shared_ptr<const WordTerm> a_sub;
  std::shared_ptr<const WordTerm> b_sub;

  static std::shared_ptr<const WordTerm> leaf(Word w);
  static std::shared_ptr<const WordTerm> compose(Word outer, std::shared_ptr<const WordTerm> a_sub,
                                                 std::shared_ptr<const WordTerm> b_sub);

  [[nodiscard]] bool is_leaf() const { return !a_sub; }
  [[nodiscard]] Word flatten() const;
  [[nodiscard]] std::uint64_t length() const;
  [[nodiscard]] std::uint64_t count(Letter x) const;
};

TropMatrix evaluate(const WordTerm& w, const TropMatrix& a, const TropMatrix& b);

struct PrDiagnostics {
  bool per_a_is_trace = false;
  bool per_b_is_trace = false;
  bool product_full_rank = false;
  [[nodiscard]] bool holds() const { return per_a_is_trace && per_b_is_trace && product_full_rank; }
};

/// per(A) = tr(A), per(B) = tr(B) and rk_tr(w<A, B>) = n.
PrDiagnostics pr_condition(const TropMatrix& a, const TropMatrix& b, const Word& w);

/// (w<A,B>)_ii = |w|_a A_ii + |w|_b B_ii for every i. Throws
/// PreconditionError unless pr_condition holds.
bool diagonal_formula_check(const TropMatrix& a, const TropMatrix& b, const Word& w);

/// Heaviest w-labeled walk i -> j that never returns to a node it has left:
/// the best triangularized evaluation over all node orderings. n <= 8.
TropScalar one_cyclic_optimum(const Word& w, const TropMatrix& a, const TropMatrix& b, std::size_t i,
                              std::size_t j);

/// If rk_tr(A^nbar) = n, checks per(A^nbar) = tr(A^nbar); true otherwise.
bool perm_trace_power_check(const TropMatrix& a);

}  // namespace tropid
