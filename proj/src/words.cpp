#include "tropid/words.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "tropid/errors.hpp"
#include "tropid/permanent.hpp"
#include "tropid/ranks.hpp"

namespace tropid {

char to_char(Letter x) { return x == Letter::a ? 'a' : 'b'; }

Word::Word(std::vector<Run> runs) {
  for (const Run& r : runs) {
    if (r.count == 0) continue;
    if (!runs_.empty() && runs_.back().letter == r.letter) {
      runs_.back().count += r.count;
    } else {
      runs_.push_back(r);
    }
    length_ += r.count;
    if (r.letter == Letter::a) count_a_ += r.count;
  }
  if (length_ == 0) throw std::invalid_argument("the empty word is not allowed");
}

Word Word::letter(Letter x, std::uint64_t count) { return Word({Run{x, count}}); }

Word Word::parse(std::string_view text) {
  std::vector<Run> runs;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  for (skip_space(); pos < text.size(); skip_space()) {
    const char c = text[pos++];
    if (c != 'a' && c != 'b') throw std::invalid_argument(std::string("unexpected symbol '") + c + "' in word");
    std::uint64_t count = 1;
    skip_space();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      skip_space();
      const std::size_t start = pos;
      count = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        count = count * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        ++pos;
      }
      if (pos == start) throw std::invalid_argument("missing exponent after '^'");
    }
    runs.push_back({c == 'a' ? Letter::a : Letter::b, count});
  }
  return Word(std::move(runs));
}

std::string Word::to_plain() const {
  std::string out;
  out.reserve(length_);
  for (const Run& r : runs_) out.append(r.count, to_char(r.letter));
  return out;
}

std::string Word::to_compressed() const {
  std::string out;
  for (const Run& r : runs_) {
    if (!out.empty()) out += ' ';
    out += to_char(r.letter);
    if (r.count > 1) out += '^' + std::to_string(r.count);
  }
  return out;
}

std::string Word::to_string(std::uint64_t plain_limit) const {
  return length_ <= plain_limit ? to_plain() : to_compressed();
}

Word Word::power(std::uint64_t k) const {
  if (k == 0) throw std::invalid_argument("Word::power: exponent 0 gives the empty word");
  std::vector<Run> runs;
  runs.reserve(runs_.size() * k);
  for (std::uint64_t i = 0; i < k; ++i) runs.insert(runs.end(), runs_.begin(), runs_.end());
  return Word(std::move(runs));
}

Word operator+(const Word& x, const Word& y) {
  std::vector<Run> runs = x.runs_;
  runs.insert(runs.end(), y.runs_.begin(), y.runs_.end());
  return Word(std::move(runs));
}

std::uint64_t occurrences(const Word& w, Letter x) { return w.count(x); }

Word substitute(const Word& w, const Word& u, const Word& v) {
  std::vector<Run> runs;
  for (const Run& r : w.runs()) {
    const Word& image = r.letter == Letter::a ? u : v;
    for (std::uint64_t k = 0; k < r.count; ++k) runs.insert(runs.end(), image.runs().begin(), image.runs().end());
  }
  return Word(std::move(runs));
}

TropMatrix evaluate(const Word& w, const TropMatrix& a, const TropMatrix& b) {
  require_square(a, "evaluate");
  if (a.rows() != b.rows() || !b.is_square()) throw ShapeError("evaluate: A and B must be square of equal size");
  std::optional<TropMatrix> acc;
  for (const Run& r : w.runs()) {
    TropMatrix step = mat_pow_fast(r.letter == Letter::a ? a : b, r.count);
    acc = acc ? mat_mul(*acc, step) : std::move(step);
  }
  return *acc;
}

LWDigraph LWDigraph::from_pair(const TropMatrix& a, const TropMatrix& b) {
  require_square(a, "LWDigraph");
  if (a.rows() != b.rows() || !b.is_square()) throw ShapeError("LWDigraph: A and B must be square of equal size");
  LWDigraph g;
  g.node_count = a.rows();
  for (std::size_t i = 0; i < g.node_count; ++i) {
    for (std::size_t j = 0; j < g.node_count; ++j) {
      if (a(i, j).is_finite()) g.arcs.push_back({i, j, Letter::a, a(i, j).value()});
      if (b(i, j).is_finite()) g.arcs.push_back({i, j, Letter::b, b(i, j).value()});
    }
  }
  return g;
}

TropMatrix evaluate_by_walks(const Word& w, const LWDigraph& g) {
  const std::size_t n = g.node_count;
  // best[s][v]: heaviest walk from s to v labeled by the prefix read so far.
  TropMatrix best = TropMatrix::identity(n);
  for (const Run& r : w.runs()) {
    for (std::uint64_t k = 0; k < r.count; ++k) {
      TropMatrix next(n, n);
      for (const auto& arc : g.arcs) {
        if (arc.label != r.letter) continue;
        for (std::size_t s = 0; s < n; ++s) {
          if (best(s, arc.from).is_bottom()) continue;
          next(s, arc.to) = tmax(next(s, arc.to), best(s, arc.from) + arc.weight);
        }
      }
      best = std::move(next);
    }
  }
  return best;
}

std::shared_ptr<const WordTerm> WordTerm::leaf(Word w) {
  return std::make_shared<const WordTerm>(WordTerm{std::move(w), nullptr, nullptr});
}

std::shared_ptr<const WordTerm> WordTerm::compose(Word outer, std::shared_ptr<const WordTerm> a_sub,
                                                  std::shared_ptr<const WordTerm> b_sub) {
  if (!a_sub || !b_sub) throw std::invalid_argument("WordTerm::compose: both substitutions are required");
  return std::make_shared<const WordTerm>(WordTerm{std::move(outer), std::move(a_sub), std::move(b_sub)});
}

Word WordTerm::flatten() const {
  if (is_leaf()) return outer;
  return substitute(outer, a_sub->flatten(), b_sub->flatten());
}

std::uint64_t WordTerm::count(Letter x) const {
  if (is_leaf()) return outer.count(x);
  return outer.count(Letter::a) * a_sub->count(x) + outer.count(Letter::b) * b_sub->count(x);
}

std::uint64_t WordTerm::length() const { return count(Letter::a) + count(Letter::b); }

namespace {

TropMatrix evaluate_term(const WordTerm& w, const TropMatrix& a, const TropMatrix& b,
                         std::unordered_map<const WordTerm*, TropMatrix>& memo) {
  if (w.is_leaf()) return evaluate(w.outer, a, b);
  if (auto it = memo.find(&w); it != memo.end()) return it->second;
  TropMatrix x = evaluate_term(*w.a_sub, a, b, memo);
  TropMatrix y = evaluate_term(*w.b_sub, a, b, memo);
  TropMatrix value = evaluate(w.outer, x, y);
  memo.emplace(&w, value);
  return value;
}

}  // namespace

TropMatrix evaluate(const WordTerm& w, const TropMatrix& a, const TropMatrix& b) {
  std::unordered_map<const WordTerm*, TropMatrix> memo;
  return evaluate_term(w, a, b, memo);
}

PrDiagnostics pr_condition(const TropMatrix& a, const TropMatrix& b, const Word& w) {
  PrDiagnostics d;
  d.per_a_is_trace = permanent(a).value == trace(a);
  d.per_b_is_trace = permanent(b).value == trace(b);
  d.product_full_rank = tropical_rank(evaluate(w, a, b)).value == a.rows();
  return d;
}

bool diagonal_formula_check(const TropMatrix& a, const TropMatrix& b, const Word& w) {
  if (!pr_condition(a, b, w).holds()) throw PreconditionError("diagonal_formula_check: (PR) does not hold");
  const TropMatrix value = evaluate(w, a, b);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const TropScalar expected = a(i, i).times(static_cast<std::int64_t>(w.count(Letter::a))) +
                                  b(i, i).times(static_cast<std::int64_t>(w.count(Letter::b)));
    if (value(i, i) != expected) return false;
  }
  return true;
}

TropScalar one_cyclic_optimum(const Word& w, const TropMatrix& a, const TropMatrix& b, std::size_t i,
                              std::size_t j) {
  require_square(a, "one_cyclic_optimum");
  const std::size_t n = a.rows();
  if (n > 8) throw PreconditionError("one_cyclic_optimum: n > 8");
  std::vector<std::vector<std::size_t>> orders;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  do orders.push_back(order);
  while (std::next_permutation(order.begin(), order.end()));

  std::vector<TropScalar> best(orders.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < orders.size(); ++k) {
    std::vector<std::size_t> pos(n);
    for (std::size_t r = 0; r < n; ++r) pos[orders[k][r]] = r;
    TropMatrix ta = a;
    TropMatrix tb = b;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (pos[u] > pos[v]) {
          ta(u, v) = kBottom;
          tb(u, v) = kBottom;
        }
      }
    }
    best[k] = evaluate(w, ta, tb)(i, j);
  }
  TropScalar out;
  for (const auto& x : best) out = tmax(out, x);
  return out;
}

bool perm_trace_power_check(const TropMatrix& a) {
  require_square(a, "perm_trace_power_check");
  const TropMatrix p = mat_pow_fast(a, lcm_upto(static_cast<unsigned>(a.rows())));
  if (tropical_rank(p).value < a.rows()) return true;
  return permanent(p).value == trace(p);
}

}  // namespace tropid
