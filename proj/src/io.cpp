#include "tropid/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tropid {

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

Word read_word(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return Word::parse(ss.str());
}

Json to_json(const TropScalar& x) { return x.to_string(); }

TropScalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return TropScalar(j.get<std::int64_t>());
  if (j.is_string()) return TropScalar::parse(j.get<std::string>());
  if (j.is_null()) return kBottom;
  throw std::invalid_argument("matrix entries must be integers or exact strings, got " + j.dump());
}

Json to_json(const TropMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(rows)}};
}

TropMatrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? j.at("entries") : j;
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument("matrix must be a nonempty array of rows");
  const std::size_t cols = rows.front().size();
  if (j.is_object() && (j.value("rows", rows.size()) != rows.size() || j.value("cols", cols) != cols)) {
    throw std::invalid_argument("matrix rows/cols disagree with its entries");
  }
  TropMatrix a(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) throw std::invalid_argument("matrix rows differ in length");
    for (std::size_t k = 0; k < cols; ++k) a(i, k) = scalar_from_json(rows[i][k]);
  }
  return a;
}

TropMatrix read_matrix(const std::filesystem::path& path) {
  try {
    return matrix_from_json(read_json(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

namespace {

Json indices(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (std::size_t x : v) out.push_back(x + 1);
  return out;
}

}  // namespace

Json to_json(const RankOneTerm& t) { return {{"column", to_json(t.column)}, {"row", to_json(t.row)}}; }

Json to_json(const RankReport& r) {
  Json out{{"kind", to_string(r.kind)}, {"value", r.value}};
  if (r.lower_bound) out["lower_bound"] = *r.lower_bound;
  if (r.submatrix) out["submatrix"] = {{"rows", indices(r.submatrix->rows)}, {"cols", indices(r.submatrix->cols)}};
  if (r.factors) out["factors"] = {{"left", to_json(r.factors->left)}, {"right", to_json(r.factors->right)}};
  if (!r.summands.empty()) {
    Json terms = Json::array();
    for (const auto& t : r.summands) terms.push_back(to_json(t));
    out["summands"] = std::move(terms);
  }
  if (r.support_branching) out["support_branching"] = true;
  return out;
}

Json to_json(const CsrMismatch& m) {
  return {{"row", m.row + 1}, {"col", m.col + 1}, {"power", to_json(m.power)}, {"expansion", to_json(m.expansion)}};
}

Json to_json(const FactorCertificate& c) {
  Json cycles = Json::array();
  for (std::size_t k = 0; k < c.cycles.size(); ++k) {
    cycles.push_back({{"nodes", indices(c.cycles[k].nodes)},
                      {"level", c.cycles[k].level},
                      {"lambda", to_json(c.terms[k].lambda)},
                      {"cyc", c.terms[k].cyc},
                      {"C", to_json(c.terms[k].c)},
                      {"S", to_json(c.terms[k].s)},
                      {"R", to_json(c.terms[k].r)}});
  }
  return {{"t", c.t}, {"sum_of_lengths", c.sum_of_lengths}, {"reconstruction_ok", c.reconstruction_ok},
          {"cycles", std::move(cycles)}};
}

Json to_json(const SingularPowerDecomposition& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms) terms.push_back(to_json(t));
  Json out{{"nbar", d.nbar}, {"t", d.t}, {"excluded_node", d.excluded_node + 1}, {"terms", std::move(terms)}};
  if (d.cycle) out["cycle"] = indices(*d.cycle);
  return out;
}

Json to_json(const Identity& id) {
  Json out{{"u", id.u.to_string()}, {"v", id.v.to_string()}, {"length", id.length()}};
  if (id.intended) out["monoid"] = id.intended->name();
  return out;
}

Identity identity_from_json(const Json& j) {
  std::optional<Monoid> m;
  if (j.contains("monoid") && !j["monoid"].is_null()) m = Monoid::parse(j["monoid"].get<std::string>());
  return Identity(Word::parse(j.at("u").get<std::string>()), Word::parse(j.at("v").get<std::string>()), m);
}

Json to_json(const Counterexample& c) {
  return {{"A", to_json(c.a)},        {"B", to_json(c.b)},       {"row", c.row + 1}, {"col", c.col + 1},
          {"u_value", to_json(c.u_value)}, {"v_value", to_json(c.v_value)}, {"trial", c.trial}};
}

Json to_json(const ExactResult& r) {
  Json out{{"status", to_string(r.status)}, {"monomials", r.monomials}, {"hull_checks", r.hull_checks}};
  if (r.status != ExactStatus::proof) {
    out["row"] = r.row + 1;
    out["col"] = r.col + 1;
  }
  if (!r.direction.empty()) {
    Json dir = Json::array();
    for (const auto& q : r.direction) dir.push_back(q.get_str());
    out["direction"] = std::move(dir);
  }
  if (r.counterexample) out["counterexample"] = to_json(*r.counterexample);
  return out;
}

Json to_json(const Separator& s) {
  return {{"r", to_json(s.r)},
          {"A", to_json(s.a)},
          {"B", to_json(s.b)},
          {"c", to_json(s.c)},
          {"u_weight", to_json(s.u_weight)},
          {"v_weight", to_json(s.v_weight)},
          {"trial", s.trial}};
}

Json to_json(const LengthReport& r) {
  return {{"len_w", r.len_w.get_str()}, {"len_x", r.len_x.get_str()}, {"len_y", r.len_y.get_str()},
          {"len_u", r.len_u.get_str()}, {"len_v", r.len_v.get_str()}, {"length", r.length().get_str()}};
}

namespace {

mpz_class big(const Json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

mpz_class big_or_zero(const Json& j, const char* key) { return j.contains(key) ? big(j[key]) : mpz_class(0); }

}  // namespace

LengthParams length_params_from_json(const Json& j) {
  LengthParams p;
  p.variant = parse_variant(j.value("variant", std::string("ii")));
  p.n = j.at("n").get<std::size_t>();
  if (j.contains("t")) p.t = j["t"].get<std::uint64_t>();
  if (j.contains("nbar")) p.nbar = j["nbar"].get<std::uint64_t>();
  p.len_u = big(j.at("len_u"));
  p.len_v = j.contains("len_v") ? big(j["len_v"]) : p.len_u;
  if (j.contains("a_count")) p.a_count = big(j["a_count"]);
  if (j.contains("b_count")) p.b_count = big(j["b_count"]);
  p.len_q = big_or_zero(j, "len_q");
  p.len_r = big_or_zero(j, "len_r");
  p.len_p = big_or_zero(j, "len_p");
  p.len_q_hat = big_or_zero(j, "len_q_hat");
  p.len_r_hat = big_or_zero(j, "len_r_hat");
  return p;
}

}  // namespace tropid
