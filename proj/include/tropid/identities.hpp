#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tropid/lp.hpp"
#include "tropid/matrix.hpp"
#include "tropid/random.hpp"
#include "tropid/words.hpp"

namespace tropid {

enum class MonoidKind { full, upper_triangular };

/// M_n (all n x n tropical matrices) or U_n (upper triangular ones).
struct Monoid {
  MonoidKind kind = MonoidKind::full;
  std::size_t n = 1;

  /// "M3", "U2".
  [[nodiscard]] std::string name() const;
  static Monoid parse(const std::string& text);
  friend bool operator==(const Monoid&, const Monoid&) = default;
};

struct Identity {
  Word u;
  Word v;
  std::optional<Monoid> intended;
  /// Substitution-tree forms of u and v when the identity was constructed;
  /// they flatten to u and v.
  std::shared_ptr<const WordTerm> u_term;
  std::shared_ptr<const WordTerm> v_term;

  /// Throws std::invalid_argument if u == v.
  Identity(Word u, Word v, std::optional<Monoid> intended = std::nullopt);
  [[nodiscard]] std::uint64_t length() const { return std::max(u.length(), v.length()); }
  [[nodiscard]] bool balanced() const {
    return u.count(Letter::a) == v.count(Letter::a) && u.count(Letter::b) == v.count(Letter::b);
  }
};

/// (p q_hat p, p r_hat p), the shape of the triangular identities used by
/// the second construction variant.
struct TriangularTriple {
  Word p;
  Word q_hat;
  Word r_hat;
  [[nodiscard]] Word q() const { return p + q_hat + p; }
  [[nodiscard]] Word r() const { return p + r_hat + p; }
};

/// Triangular base: an identity (q, r), possibly of the triple shape.
struct TriangularBase {
  Word q;
  Word r;
  std::optional<TriangularTriple> triple;

  static TriangularBase from_pair(Word q, Word r) { return {std::move(q), std::move(r), std::nullopt}; }
  static TriangularBase from_triple(const TriangularTriple& t) { return {t.q(), t.r(), t}; }
};

enum class Variant { i, ii };

std::string to_string(Variant v);
Variant parse_variant(const std::string& text);

struct ConstructionOptions {
  Variant variant = Variant::ii;
  /// Defaults to (n-1)^2 + 1.
  std::optional<std::uint64_t> t;
  /// Defaults to lcm(1..n).
  std::optional<std::uint64_t> nbar;
  /// Permit t below (n-1)^2 + 1, for experiments.
  bool allow_below_threshold = false;
};

/// Identity for M_n from an identity (u, v) for M_{n-1} and a triangular
/// identity for U_n: (ua, va)<X, Y> with
///   variant i:  X = ((qr)^t)<a^nbar, b^nbar>, Y = ((qr)^t r)<a^nbar, b^nbar>
///   variant ii: w = (p q^ p r^ p)^t, X = (w q^ p)<..>, Y = (w r^ p)<..>.
Identity construct_identity(std::size_t n, const Identity& base_prev, const TriangularBase& tri,
                            const ConstructionOptions& options);

struct LengthParams {
  Variant variant = Variant::ii;
  std::size_t n = 2;
  std::optional<std::uint64_t> t;
  std::optional<std::uint64_t> nbar;
  mpz_class len_u;
  mpz_class len_v;
  /// Letter counts of ua (equal to those of va for a balanced base). Needed
  /// only when len(X) != len(Y).
  std::optional<mpz_class> a_count;
  std::optional<mpz_class> b_count;
  /// Variant i: len_q, len_r. Variant ii: len_p, len_q_hat, len_r_hat.
  mpz_class len_q;
  mpz_class len_r;
  mpz_class len_p;
  mpz_class len_q_hat;
  mpz_class len_r_hat;
};

struct LengthReport {
  mpz_class len_w;  // variant ii only
  mpz_class len_x;
  mpz_class len_y;
  mpz_class len_u;
  mpz_class len_v;
  [[nodiscard]] mpz_class length() const { return len_u > len_v ? len_u : len_v; }
};

/// Closed-form lengths of construct_identity's output. Throws
/// std::invalid_argument on inconsistent letter counts.
LengthReport construction_length(const LengthParams& params);

struct Counterexample {
  TropMatrix a;
  TropMatrix b;
  std::size_t row = 0;
  std::size_t col = 0;
  TropScalar u_value;
  TropScalar v_value;
  std::uint64_t trial = 0;
};

struct FalsifyOptions {
  std::size_t n = 2;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
  EntryDistribution dist;
  /// Evaluate through u_term / v_term when the identity carries them.
  bool use_terms = true;
};

/// Evaluates both sides on seeded random pairs; returns the counterexample
/// with the smallest trial index, if any.
std::optional<Counterexample> falsify(const Identity& id, const FalsifyOptions& options);

enum class ExactStatus { proof, refuted, budget_exceeded };

std::string to_string(ExactStatus s);

struct ExactOptions {
  std::size_t n = 1;
  bool upper_triangular = false;
  /// Maximum number of distinct exponent vectors held at once.
  std::size_t budget = 200'000;
};

struct ExactResult {
  ExactStatus status = ExactStatus::proof;
  /// Entry that was refuted or over budget.
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t monomials = 0;
  std::size_t hull_checks = 0;
  /// Separating direction over the variable slots, when refuted.
  std::vector<mpq_class> direction;
  std::optional<Counterexample> counterexample;
};

/// Decides (u, v) over all finite matrices of the given support by comparing
/// the convex hulls of walk exponent vectors entry by entry.
ExactResult verify_exact(const Identity& id, const ExactOptions& options);

/// Exponent vectors of all w-labeled walks i -> j over the variable slots
/// (letter, row, col); slot order is a-slots then b-slots, row-major, with
/// only upper-triangular slots when `upper_triangular`. Throws
/// BudgetExceeded past `budget` vectors.
std::vector<std::vector<ExponentVector>> walk_exponents(const Word& w, std::size_t n, bool upper_triangular,
                                                        std::size_t budget);

struct Separator {
  TropMatrix r;  // 1 x n
  TropMatrix a;
  TropMatrix b;
  TropMatrix c;  // n x 1
  TropScalar u_weight;
  TropScalar v_weight;
  std::uint64_t trial = 0;
};

/// Weighted automaton (r, A, B, c) with r u<A,B> c != r v<A,B> c.
std::optional<Separator> try_separate(const Word& u, const Word& v, std::size_t n, std::uint64_t trials,
                                      std::uint64_t seed, const EntryDistribution& dist = {});

class AdmissionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AdmissionOptions {
  std::uint64_t trials = 2'000;
  std::uint64_t seed = 1;
  /// Also run verify_exact when the walk count fits this budget.
  std::size_t exact_budget = 50'000;
};

/// Base identities the construction starts from. Entries are data, and each
/// is falsified on its intended monoid before it is accepted.
class BaseLibrary {
 public:
  struct Entry {
    Identity identity;
    std::optional<TriangularTriple> triple;
    std::string note;
    /// verify_exact outcome if it ran within budget.
    std::optional<ExactStatus> exact;
  };

  /// Throws AdmissionError if falsification (or exact refutation) succeeds.
  void admit(Entry entry, const AdmissionOptions& options = {});

  [[nodiscard]] const Entry* full(std::size_t n) const;
  [[nodiscard]] const Entry* triangular(std::size_t n) const;
  /// Declared slots whose words are not supplied yet, by monoid name.
  [[nodiscard]] const std::map<std::string, std::string>& pending() const { return pending_; }

  /// Loads every *.json in `dir` (see data/bases). Entries with null words
  /// are recorded as pending.
  static BaseLibrary load(const std::filesystem::path& dir, const AdmissionOptions& options = {});

 private:
  std::map<std::size_t, Entry> full_;
  std::map<std::size_t, Entry> triangular_;
  std::map<std::string, std::string> pending_;
};

}  // namespace tropid
