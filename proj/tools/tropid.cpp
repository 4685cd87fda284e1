// tropid: command-line front end.
//
// Exit codes: 0 success or verified, 1 claim refuted / counterexample found
// (artifact written), 2 usage or input error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tropid/acceptance.hpp"
#include "tropid/csr.hpp"
#include "tropid/errors.hpp"
#include "tropid/identities.hpp"
#include "tropid/io.hpp"
#include "tropid/ranks.hpp"

using namespace tropid;

namespace {

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUsage = 2;

void emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("TROPID_SEED")) return std::stoull(s);
  return 0;
}

std::uint64_t resolve_t(const std::string& text, std::uint64_t automatic) {
  if (text == "auto") return automatic;
  std::size_t used = 0;
  const unsigned long long t = std::stoull(text, &used);
  if (used != text.size()) throw std::invalid_argument("--t must be 'auto' or a nonnegative integer");
  return t;
}

RankKind parse_kind(const std::string& s) {
  if (s == "tropical") return RankKind::tropical;
  if (s == "factor") return RankKind::factor_exact;
  throw std::invalid_argument("--kind must be tropical or factor");
}

TriangularBase read_triangular(const std::string& path) {
  const Json j = read_json(path);
  if (j.contains("p") && !j["p"].is_null()) {
    return TriangularBase::from_triple({Word::parse(j["p"].get<std::string>()), Word::parse(j.at("q_hat").get<std::string>()),
                                        Word::parse(j.at("r_hat").get<std::string>())});
  }
  const Identity id = identity_from_json(j);
  return TriangularBase::from_pair(id.u, id.v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tropical matrix ranks, CSR expansions and semigroup identities"};
  app.require_subcommand(1);
  app.fallthrough();  // --output may follow the subcommand
  std::string output;
  app.add_option("--output,-o", output, "Write the JSON artifact here ('-' for stdout)");

  // rank
  auto* rank = app.add_subcommand("rank", "Tropical or factor rank of a matrix");
  std::string kind = "tropical";
  std::string rank_input;
  rank->add_option("--kind", kind, "tropical | factor")->capture_default_str();
  rank->add_option("--input", rank_input, "Matrix JSON")->required();

  // csr
  auto* csr = app.add_subcommand("csr", "CSR expansions of matrix powers");
  csr->require_subcommand(1);
  std::string csr_input;
  std::string csr_t = "auto";
  bool no_minimize = false;
  auto* csr_verify = csr->add_subcommand("verify", "Check A^t = C S^t R | B[A]^t");
  auto* csr_certify = csr->add_subcommand("certify", "Nested expansion certificate for rk_fc(A^t) <= rk_tr(A)");
  auto* csr_singular = csr->add_subcommand("singular", "Rank-one decomposition of (A^nbar)^t when A^nbar is singular");
  for (auto* sub : {csr_verify, csr_certify, csr_singular}) {
    sub->add_option("--input", csr_input, "Matrix JSON")->required();
    sub->add_option("--t", csr_t, "Power, or 'auto' for the threshold")->capture_default_str();
  }
  csr_certify->add_flag("--no-minimize", no_minimize, "Keep every cycle of the nested expansion");

  // identity
  auto* identity = app.add_subcommand("identity", "Build, check and measure semigroup identities");
  identity->require_subcommand(1);
  auto* build = identity->add_subcommand("build", "Construct an identity for M_n");
  std::size_t build_n = 2;
  std::string variant = "ii";
  std::string base_prev;
  std::string base_tri;
  std::optional<std::uint64_t> build_t;
  std::optional<std::uint64_t> build_nbar;
  bool allow_below = false;
  build->add_option("--n", build_n)->required();
  build->add_option("--variant", variant, "i | ii")->capture_default_str();
  build->add_option("--base-prev,--base-m2", base_prev, "Identity JSON for M_{n-1}")->required();
  build->add_option("--base-tri,--base-u3", base_tri, "Triangular identity JSON (u/v or p/q_hat/r_hat)")->required();
  build->add_option("--t", build_t);
  build->add_option("--nbar", build_nbar);
  build->add_flag("--allow-below-threshold", allow_below, "Permit t < (n-1)^2+1");

  auto* check = identity->add_subcommand("check", "Falsify, and optionally decide exactly, an identity");
  std::string check_file;
  FalsifyOptions fo;
  fo.trials = 10'000;
  fo.seed = default_seed();
  bool triangular = false;
  bool exact = false;
  std::size_t budget = 200'000;
  check->add_option("--file", check_file, "Identity JSON")->required();
  check->add_option("--n", fo.n)->required();
  check->add_option("--trials", fo.trials)->capture_default_str();
  check->add_option("--seed", fo.seed, "Defaults to $TROPID_SEED or 0");
  check->add_option("--lo", fo.dist.lo)->capture_default_str();
  check->add_option("--hi", fo.dist.hi)->capture_default_str();
  check->add_option("--bottom-mass", fo.dist.bottom_mass)->capture_default_str();
  check->add_flag("--triangular", triangular, "Sample upper triangular matrices (U_n)");
  check->add_flag("--exact", exact, "Also run the exact hull verifier");
  check->add_option("--budget", budget, "Exponent-vector budget for --exact")->capture_default_str();

  auto* length = identity->add_subcommand("length", "Closed-form construction lengths");
  std::string params_file;
  length->add_option("--params", params_file, "Parameter JSON")->required();

  // separate
  auto* separate = app.add_subcommand("separate", "Search a weighted automaton telling two words apart");
  std::string sep_u;
  std::string sep_v;
  std::size_t sep_n = 2;
  std::uint64_t sep_trials = 1000;
  std::uint64_t sep_seed = default_seed();
  separate->add_option("--u", sep_u, "Word file")->required();
  separate->add_option("--v", sep_v, "Word file")->required();
  separate->add_option("--n", sep_n)->required();
  separate->add_option("--trials", sep_trials)->capture_default_str();
  separate->add_option("--seed", sep_seed, "Defaults to $TROPID_SEED or 0");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  AcceptanceOptions acc;
  acc.bases_dir = TROPID_BASES_DIR;
  acc.seed = std::getenv("TROPID_SEED") ? default_seed() : acc.seed;
  std::string bases = acc.bases_dir.string();
  selftest->add_flag("--quick", acc.quick, "Reduced sample counts");
  selftest->add_option("--bases", bases, "Base identity directory")->capture_default_str();
  selftest->add_option("criteria", acc.only, "Criterion numbers to run (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*rank) {
      const TropMatrix a = read_matrix(rank_input);
      const RankReport r = parse_kind(kind) == RankKind::tropical ? tropical_rank(a) : factor_rank_exact(a);
      if (output.empty()) {
        std::cout << r.value << (r.kind == RankKind::factor_upper ? " (upper bound)" : "")
                  << (r.kind == RankKind::factor_lower ? " (lower bound)" : "") << '\n';
      } else {
        emit(to_json(r), output);
      }
      return kOk;
    }

    if (*csr) {
      const TropMatrix a = read_matrix(csr_input);
      const std::size_t n = a.rows();
      if (*csr_verify) {
        const std::uint64_t t = resolve_t(csr_t, weak_csr_threshold(n));
        if (auto mismatch = weak_csr_verify(a, t)) {
          std::cout << "differ\n";
          emit(to_json(*mismatch), output);
          return kRefuted;
        }
        std::cout << "equal\n";
        return kOk;
      }
      if (*csr_certify) {
        const std::uint64_t t = resolve_t(csr_t, weak_csr_threshold(n));
        FactorCertificate cert = nested_csr_expansion(a, t);
        if (!no_minimize) cert = minimize_certificate(cert, a);
        Json j = to_json(cert);
        j["rank_one_terms"] = certificate_rank_one_terms(cert).size();
        emit(j, output);
        return cert.reconstruction_ok ? kOk : kRefuted;
      }
      const std::uint64_t nbar = lcm_upto(static_cast<unsigned>(n));
      const std::uint64_t t = resolve_t(csr_t, singular_power_threshold(n));
      std::cerr << "B = A^" << nbar << ", t = " << t << '\n';
      emit(to_json(singular_power_decomposition(a, t)), output);
      return kOk;
    }

    if (*build) {
      ConstructionOptions opts;
      opts.variant = parse_variant(variant);
      opts.t = build_t;
      opts.nbar = build_nbar;
      opts.allow_below_threshold = allow_below;
      if (build_t && *build_t < weak_csr_threshold(build_n)) {
        std::cerr << "warning: t=" << *build_t << " is below (n-1)^2+1=" << weak_csr_threshold(build_n) << '\n';
      }
      const Identity prev = identity_from_json(read_json(base_prev));
      const Identity built = construct_identity(build_n, prev, read_triangular(base_tri), opts);
      emit(to_json(built), output);
      return kOk;
    }

    if (*check) {
      const Identity id = identity_from_json(read_json(check_file));
      fo.dist.upper_triangular = triangular;
      std::cerr << "seed: " << fo.seed << '\n';
      Json report{{"identity_length", id.length()}, {"n", fo.n}, {"trials", fo.trials}, {"seed", fo.seed}};
      // --trials 0 with --exact skips the random search
      const bool search = fo.trials > 0 || !exact;
      if (auto cex = search ? falsify(id, fo) : std::nullopt) {
        report["status"] = "counterexample";
        report["counterexample"] = to_json(*cex);
        emit(report, output);
        return kRefuted;
      }
      report["status"] = search ? "survived" : "not_searched";
      if (exact) {
        ExactOptions eo;
        eo.n = fo.n;
        eo.upper_triangular = triangular;
        eo.budget = budget;
        const ExactResult r = verify_exact(id, eo);
        report["exact"] = to_json(r);
        emit(report, output);
        if (r.status == ExactStatus::refuted) return kRefuted;
        if (r.status == ExactStatus::budget_exceeded) return kUsage;
        return kOk;
      }
      emit(report, output);
      return kOk;
    }

    if (*length) {
      emit(to_json(construction_length(length_params_from_json(read_json(params_file)))), output);
      return kOk;
    }

    if (*separate) {
      std::cerr << "seed: " << sep_seed << '\n';
      const Word u = read_word(sep_u);
      const Word v = read_word(sep_v);
      if (auto s = try_separate(u, v, sep_n, sep_trials, sep_seed)) {
        emit(to_json(*s), output);
        return kRefuted;
      }
      std::cout << "no separator in " << sep_trials << " trials\n";
      return kOk;
    }

    if (*selftest) {
      acc.bases_dir = bases;
      acc.on_result = [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; };
      bool ok = true;
      for (const auto& r : run_acceptance(acc)) ok = ok && r.passed;
      std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
      return ok ? kOk : kRefuted;
    }
  } catch (const std::exception& e) {
    std::cerr << "tropid: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
