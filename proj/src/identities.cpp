#include "tropid/identities.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "tropid/errors.hpp"
#include "tropid/io.hpp"
#include "tropid/kernels.hpp"

namespace tropid {

std::string Monoid::name() const { return (kind == MonoidKind::full ? "M" : "U") + std::to_string(n); }

Monoid Monoid::parse(const std::string& text) {
  if (text.size() < 2 || (text[0] != 'M' && text[0] != 'U')) {
    throw std::invalid_argument("monoid must look like M3 or U2, got '" + text + "'");
  }
  std::size_t used = 0;
  const unsigned long n = std::stoul(text.substr(1), &used);
  if (used != text.size() - 1 || n == 0) throw std::invalid_argument("bad monoid size in '" + text + "'");
  return {text[0] == 'M' ? MonoidKind::full : MonoidKind::upper_triangular, n};
}

Identity::Identity(Word u_, Word v_, std::optional<Monoid> intended_)
    : u(std::move(u_)), v(std::move(v_)), intended(intended_) {
  if (u == v) throw std::invalid_argument("an identity needs two different words");
}

std::string to_string(Variant v) { return v == Variant::i ? "i" : "ii"; }

Variant parse_variant(const std::string& text) {
  if (text == "i" || text == "1") return Variant::i;
  if (text == "ii" || text == "2") return Variant::ii;
  throw std::invalid_argument("variant must be i or ii, got '" + text + "'");
}

std::string to_string(ExactStatus s) {
  switch (s) {
    case ExactStatus::proof: return "proof";
    case ExactStatus::refuted: return "refuted";
    case ExactStatus::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

namespace {

std::uint64_t default_t(std::size_t n) { return static_cast<std::uint64_t>((n - 1) * (n - 1) + 1); }

}  // namespace

Identity construct_identity(std::size_t n, const Identity& base_prev, const TriangularBase& tri,
                            const ConstructionOptions& options) {
  if (n < 2) throw PreconditionError("construct_identity: n must be at least 2");
  const std::uint64_t t = options.t.value_or(default_t(n));
  if (t == 0) throw PreconditionError("construct_identity: t must be positive");
  if (t < default_t(n) && !options.allow_below_threshold) {
    throw PreconditionError("construct_identity: t=" + std::to_string(t) + " is below (n-1)^2+1=" +
                            std::to_string(default_t(n)) + "; pass the override to experiment");
  }
  if (!base_prev.balanced()) throw PreconditionError("construct_identity: base identity is not balanced");
  const std::uint64_t nbar = options.nbar.value_or(lcm_upto(static_cast<unsigned>(n)));

  const Word a = Word::letter(Letter::a);
  Word x = a;
  Word y = a;
  if (options.variant == Variant::i) {
    const Word body = (tri.q + tri.r).power(t);
    x = body;
    y = body + tri.r;
  } else {
    if (!tri.triple) throw PreconditionError("construct_identity: variant ii needs the (p, q^, r^) form");
    const TriangularTriple& s = *tri.triple;
    const Word w = (s.p + s.q_hat + s.p + s.r_hat + s.p).power(t);
    x = w + s.q_hat + s.p;
    y = w + s.r_hat + s.p;
  }
  auto big_a = WordTerm::leaf(Word::letter(Letter::a, nbar));
  auto big_b = WordTerm::leaf(Word::letter(Letter::b, nbar));
  auto x_term = WordTerm::compose(x, big_a, big_b);
  auto y_term = WordTerm::compose(y, big_a, big_b);
  auto u_term = WordTerm::compose(base_prev.u + a, x_term, y_term);
  auto v_term = WordTerm::compose(base_prev.v + a, x_term, y_term);

  Identity out(u_term->flatten(), v_term->flatten(), Monoid{MonoidKind::full, n});
  out.u_term = std::move(u_term);
  out.v_term = std::move(v_term);
  if (!out.balanced()) throw FalsificationAlarm("constructed identity is not balanced");
  return out;
}

LengthReport construction_length(const LengthParams& prm) {
  if (prm.n < 1) throw std::invalid_argument("construction_length: n must be positive");
  const mpz_class t = static_cast<unsigned long>(prm.t.value_or(default_t(prm.n)));
  const mpz_class nbar = static_cast<unsigned long>(prm.nbar.value_or(lcm_upto(static_cast<unsigned>(prm.n))));
  LengthReport out;
  if (prm.variant == Variant::i) {
    out.len_x = nbar * t * (prm.len_q + prm.len_r);
    out.len_y = nbar * (t * (prm.len_q + prm.len_r) + prm.len_r);
  } else {
    out.len_w = t * (3 * prm.len_p + prm.len_q_hat + prm.len_r_hat);
    out.len_x = nbar * (out.len_w + prm.len_q_hat + prm.len_p);
    out.len_y = nbar * (out.len_w + prm.len_r_hat + prm.len_p);
  }
  if (prm.a_count || prm.b_count) {
    if (!prm.a_count || !prm.b_count) throw std::invalid_argument("construction_length: give both letter counts");
    if (*prm.a_count + *prm.b_count != prm.len_u + 1) {
      throw std::invalid_argument("construction_length: letter counts do not sum to len_u + 1");
    }
    if (prm.len_u != prm.len_v) {
      throw std::invalid_argument("construction_length: a balanced base needs len_u == len_v");
    }
    out.len_u = *prm.a_count * out.len_x + *prm.b_count * out.len_y;
    out.len_v = out.len_u;
  } else {
    if (out.len_x != out.len_y) {
      throw std::invalid_argument("construction_length: len(X) != len(Y), letter counts are required");
    }
    out.len_u = (prm.len_u + 1) * out.len_x;
    out.len_v = (prm.len_v + 1) * out.len_x;
  }
  return out;
}

namespace {

std::optional<std::pair<std::size_t, std::size_t>> first_difference(const IntTropMatrix& x, const IntTropMatrix& y) {
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (x(i, j) != y(i, j)) return std::pair(i, j);
  return std::nullopt;
}

TropScalar int_to_scalar(std::int64_t x) { return x == kIntBottom ? kBottom : TropScalar(x); }

void check_int_range(const EntryDistribution& dist, std::uint64_t length, const char* op) {
  const auto bound = static_cast<unsigned __int128>(std::max(std::abs(dist.lo), std::abs(dist.hi)));
  if (bound * length >= (static_cast<unsigned __int128>(1) << 62U)) {
    throw PreconditionError(std::string(op) + ": entry range times word length exceeds the int64 kernel");
  }
}

constexpr std::uint64_t kBlock = 256;

}  // namespace

std::optional<Counterexample> falsify(const Identity& id, const FalsifyOptions& options) {
  if (options.trials == 0) throw PreconditionError("falsify: trials must be at least 1");
  check_int_range(options.dist, id.length(), "falsify");
  const bool structured = options.use_terms && id.u_term && id.v_term;

  for (std::uint64_t start = 0; start < options.trials; start += kBlock) {
    const std::uint64_t stop = std::min(options.trials, start + kBlock);
    std::vector<std::optional<Counterexample>> found(stop - start);
#pragma omp parallel for schedule(dynamic)
    for (std::uint64_t k = start; k < stop; ++k) {
      Rng rng = trial_rng(options.seed, k);
      IntTropMatrix a = random_int_matrix(rng, options.n, options.dist);
      IntTropMatrix b = random_int_matrix(rng, options.n, options.dist);
      IntTropMatrix x;
      IntTropMatrix y;
      if (structured) {
        IntTermEvaluator eval(a, b);
        x = eval(*id.u_term);
        y = eval(*id.v_term);
      } else {
        x = evaluate_int(id.u, a, b);
        y = evaluate_int(id.v, a, b);
      }
      if (auto diff = first_difference(x, y)) {
        const auto [i, j] = *diff;
        found[k - start] = Counterexample{a.to_trop(), b.to_trop(), i, j, int_to_scalar(x(i, j)),
                                          int_to_scalar(y(i, j)), k};
      }
    }
    for (auto& f : found)
      if (f) return std::move(f);
  }
  return std::nullopt;
}

namespace {

struct SlotMap {
  std::size_t n = 0;
  std::size_t count = 0;
  // index[letter][row * n + col], or npos outside the support.
  std::vector<std::size_t> index[2];
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  SlotMap(std::size_t n_, bool upper) : n(n_) {
    for (auto& idx : index) {
      idx.assign(n * n, npos);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (!upper || r <= c) idx[r * n + c] = count++;
    }
  }
};

struct WalkBudgetExceeded {
  std::size_t start = 0;
  std::size_t node = 0;
  std::size_t monomials = 0;
};

std::vector<std::vector<ExponentVector>> walk_exponents_impl(const Word& w, const SlotMap& slots,
                                                             std::size_t budget) {
  const std::size_t n = slots.n;
  std::vector<std::vector<ExponentVector>> out(n * n);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::set<ExponentVector>> cur(n);
    cur[s].insert(ExponentVector(slots.count, 0));
    for (const Run& run : w.runs()) {
      const auto& idx = slots.index[static_cast<int>(run.letter)];
      for (std::uint64_t step = 0; step < run.count; ++step) {
        std::vector<std::set<ExponentVector>> next(n);
        std::size_t total = 0;
        for (std::size_t u = 0; u < n; ++u) {
          for (std::size_t v = 0; v < n; ++v) {
            const std::size_t slot = idx[u * n + v];
            if (slot == SlotMap::npos) continue;
            for (ExponentVector e : cur[u]) {
              ++e[slot];
              next[v].insert(std::move(e));
            }
          }
        }
        for (std::size_t v = 0; v < n; ++v) {
          total += next[v].size();
          if (total > budget) throw WalkBudgetExceeded{s, v, total};
        }
        cur = std::move(next);
      }
    }
    for (std::size_t j = 0; j < n; ++j) out[s * n + j].assign(cur[j].begin(), cur[j].end());
  }
  return out;
}

// Rescales a rational direction to integers and assigns it to the slots;
// slots outside the support stay bottom.
std::pair<TropMatrix, TropMatrix> assignment_matrices(const std::vector<mpq_class>& x, const SlotMap& slots) {
  mpz_class scale = 1;
  for (const auto& q : x) scale = lcm(scale, mpz_class(q.get_den()));
  TropMatrix a(slots.n, slots.n);
  TropMatrix b(slots.n, slots.n);
  for (int letter = 0; letter < 2; ++letter) {
    TropMatrix& m = letter == 0 ? a : b;
    for (std::size_t r = 0; r < slots.n; ++r) {
      for (std::size_t c = 0; c < slots.n; ++c) {
        const std::size_t slot = slots.index[letter][r * slots.n + c];
        if (slot == SlotMap::npos) continue;
        const mpz_class value = mpz_class(x[slot] * scale);
        if (!value.fits_slong_p()) throw ArithmeticOverflow("separating direction does not fit int64");
        m(r, c) = TropScalar(static_cast<std::int64_t>(value.get_si()));
      }
    }
  }
  return {a, b};
}

}  // namespace

std::vector<std::vector<ExponentVector>> walk_exponents(const Word& w, std::size_t n, bool upper_triangular,
                                                        std::size_t budget) {
  try {
    return walk_exponents_impl(w, SlotMap(n, upper_triangular), budget);
  } catch (const WalkBudgetExceeded& e) {
    throw BudgetExceeded("walk_exponents: " + std::to_string(e.monomials) + " exponent vectors from node " +
                         std::to_string(e.start + 1));
  }
}

ExactResult verify_exact(const Identity& id, const ExactOptions& options) {
  const SlotMap slots(options.n, options.upper_triangular);
  ExactResult result;
  std::vector<std::vector<ExponentVector>> pu;
  std::vector<std::vector<ExponentVector>> pv;
  try {
    pu = walk_exponents_impl(id.u, slots, options.budget);
    pv = walk_exponents_impl(id.v, slots, options.budget);
  } catch (const WalkBudgetExceeded& e) {
    result.status = ExactStatus::budget_exceeded;
    result.row = e.start;
    result.col = e.node;
    result.monomials = e.monomials;
    return result;
  }

  const std::size_t n = options.n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& su = pu[i * n + j];
      const auto& sv = pv[i * n + j];
      result.monomials = std::max(result.monomials, std::max(su.size(), sv.size()));
      std::optional<std::vector<mpq_class>> direction;
      if (su.empty() != sv.empty()) {
        direction = std::vector<mpq_class>(slots.count);
      } else if (!su.empty()) {
        // Each side's points against the other side's hull; points present
        // on both sides are trivially members.
        std::vector<std::pair<const ExponentVector*, const std::vector<ExponentVector>*>> queries;
        for (const auto& p : su)
          if (!std::binary_search(sv.begin(), sv.end(), p)) queries.emplace_back(&p, &sv);
        for (const auto& p : sv)
          if (!std::binary_search(su.begin(), su.end(), p)) queries.emplace_back(&p, &su);
        std::vector<std::optional<std::vector<mpq_class>>> answers(queries.size());
#pragma omp parallel for schedule(dynamic)
        for (std::size_t q = 0; q < queries.size(); ++q) answers[q] = separate_point(*queries[q].first, *queries[q].second);
        result.hull_checks += queries.size();
        for (auto& ans : answers) {
          if (ans) {
            direction = std::move(ans);
            break;
          }
        }
      }
      if (!direction) continue;

      result.status = ExactStatus::refuted;
      result.row = i;
      result.col = j;
      result.direction = *direction;
      auto [a, b] = assignment_matrices(*direction, slots);
      const TropMatrix eu = evaluate(id.u, a, b);
      const TropMatrix ev = evaluate(id.v, a, b);
      if (eu(i, j) == ev(i, j)) {
        throw FalsificationAlarm("separating direction does not separate the evaluations at (" +
                                 std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
      result.counterexample = Counterexample{std::move(a), std::move(b), i, j, eu(i, j), ev(i, j), 0};
      return result;
    }
  }
  return result;
}

std::optional<Separator> try_separate(const Word& u, const Word& v, std::size_t n, std::uint64_t trials,
                                      std::uint64_t seed, const EntryDistribution& dist) {
  if (u == v) throw PreconditionError("try_separate: the words are equal");
  check_int_range(dist, std::max(u.length(), v.length()) + 2, "try_separate");
  for (std::uint64_t k = 0; k < trials; ++k) {
    Rng rng = trial_rng(seed, k);
    const IntTropMatrix a = random_int_matrix(rng, n, dist);
    const IntTropMatrix b = random_int_matrix(rng, n, dist);
    TropMatrix r = random_matrix(rng, 1, n, dist);
    TropMatrix c = random_matrix(rng, n, 1, dist);
    if (r.all_bottom()) r(0, 0) = TropScalar(0);
    if (c.all_bottom()) c(0, 0) = TropScalar(0);
    const TropMatrix eu = evaluate_int(u, a, b).to_trop();
    const TropMatrix ev = evaluate_int(v, a, b).to_trop();
    const TropScalar wu = mat_mul(mat_mul(r, eu), c)(0, 0);
    const TropScalar wv = mat_mul(mat_mul(r, ev), c)(0, 0);
    if (wu != wv) return Separator{std::move(r), a.to_trop(), b.to_trop(), std::move(c), wu, wv, k};
  }
  return std::nullopt;
}

void BaseLibrary::admit(Entry entry, const AdmissionOptions& options) {
  const Identity& id = entry.identity;
  if (!id.intended) throw AdmissionError("base identity has no intended monoid");
  const Monoid m = *id.intended;
  const std::string label = m.name() + " identity (" + id.u.to_string() + ", " + id.v.to_string() + ")";

  FalsifyOptions fo;
  fo.n = m.n;
  fo.seed = options.seed;
  fo.dist.upper_triangular = m.kind == MonoidKind::upper_triangular;
  for (double mass : {0.0, 0.3}) {
    fo.dist.bottom_mass = mass;
    fo.trials = std::max<std::uint64_t>(1, options.trials / 2);
    if (auto cex = falsify(id, fo)) {
      throw AdmissionError(label + " refuted by falsification at trial " + std::to_string(cex->trial) +
                           ", entry (" + std::to_string(cex->row + 1) + "," + std::to_string(cex->col + 1) + ")");
    }
  }
  ExactOptions eo;
  eo.n = m.n;
  eo.upper_triangular = fo.dist.upper_triangular;
  eo.budget = options.exact_budget;
  const ExactResult exact = verify_exact(id, eo);
  if (exact.status == ExactStatus::refuted) throw AdmissionError(label + " refuted by exact hull check");
  entry.exact = exact.status;
  auto& target = m.kind == MonoidKind::full ? full_ : triangular_;
  target.insert_or_assign(m.n, std::move(entry));
}

const BaseLibrary::Entry* BaseLibrary::full(std::size_t n) const {
  auto it = full_.find(n);
  return it == full_.end() ? nullptr : &it->second;
}

const BaseLibrary::Entry* BaseLibrary::triangular(std::size_t n) const {
  auto it = triangular_.find(n);
  return it == triangular_.end() ? nullptr : &it->second;
}

BaseLibrary BaseLibrary::load(const std::filesystem::path& dir, const AdmissionOptions& options) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  BaseLibrary lib;
  for (const auto& path : files) {
    const Json j = read_json(path);
    const Monoid m = Monoid::parse(j.at("monoid").get<std::string>());
    const std::string note = j.value("note", std::string());
    std::optional<TriangularTriple> triple;
    if (j.contains("p") && !j["p"].is_null()) {
      triple = TriangularTriple{Word::parse(j["p"].get<std::string>()), Word::parse(j.at("q_hat").get<std::string>()),
                                Word::parse(j.at("r_hat").get<std::string>())};
    }
    const bool has_words = j.contains("u") && !j["u"].is_null();
    if (!has_words && !triple) {
      lib.pending_[m.name()] = note;
      continue;
    }
    Word u = has_words ? Word::parse(j["u"].get<std::string>()) : triple->q();
    Word v = has_words ? Word::parse(j.at("v").get<std::string>()) : triple->r();
    if (triple && (u != triple->q() || v != triple->r())) {
      throw AdmissionError(path.filename().string() + ": u, v disagree with (p q^ p, p r^ p)");
    }
    try {
      lib.admit(Entry{Identity(std::move(u), std::move(v), m), triple, note, std::nullopt}, options);
    } catch (const AdmissionError& e) {
      throw AdmissionError(path.filename().string() + ": " + e.what());
    }
  }
  return lib;
}

}  // namespace tropid
