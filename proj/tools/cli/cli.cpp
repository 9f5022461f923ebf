#include "cli.hpp"

#include "qwalk/cylinder.hpp"
#include "qwalk/decoherence.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/qintegral.hpp"
#include "qwalk/qmeasure.hpp"
#include "qwalk/quadratic.hpp"
#include "qwalk/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace qwalk::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string format = "json";
  bool force = false;
  bool meta = false;
};

bool csv(const Common& c) { return c.format == "csv"; }

// --- serialization ----------------------------------------------------------

Json integer_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min())
    return v.convert_to<std::int64_t>();
  return v.str();
}

Json dyadic_json(const DyadicRational& d) {
  Json j;
  j["num"] = integer_json(d.numerator());
  j["log2_den"] = d.log2_denom();
  j["exact"] = d.to_string();
  j["decimal"] = decimal_string(d.to_double());
  return j;
}

std::optional<int> log2_exact(const BigInt& v) {
  if (v <= 0) return std::nullopt;
  const auto msb = boost::multiprecision::msb(v);
  if (BigInt(1) << msb != v) return std::nullopt;
  return static_cast<int>(msb);
}

Json rational_json(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  Json j;
  j["num"] = integer_json(num);
  j["den"] = integer_json(den);
  if (const auto k = log2_exact(den)) j["log2_den"] = *k;
  j["exact"] = to_string(r);
  j["decimal"] = decimal_string(to_double(r));
  return j;
}

std::string dyadic_csv(const DyadicRational& d) {
  return d.numerator().str() + "," + std::to_string(d.log2_denom()) + "," + d.to_string() + "," +
         decimal_string(d.to_double());
}

Json members_json(const Event& e) {
  Json arr = Json::array();
  for (const PathIndex j : e.members()) arr.push_back(j);
  return arr;
}

std::string join(const std::vector<PathIndex>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

void emit(std::ostream& out, const std::string& command, Json parameters, Json result) {
  Json doc;
  doc["command"] = command;
  doc["parameters"] = std::move(parameters);
  doc["result"] = std::move(result);
  out << doc.dump(2) << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Enforces a default cap; with --force, states the estimated cost instead.
void guard(const Common& c, bool within, const std::string& what, double cost, std::ostream& err) {
  if (within) return;
  if (!c.force) throw ResourceError(what + " (pass --force to run anyway)");
  err << "estimated cost: ~" << decimal_string(cost) << " operations for " << what << "\n";
}

// --- subcommands -------------------------------------------------------------

int run_matrix(int n, const Common& c, std::ostream& out, std::ostream& err) {
  const DecoherenceState state(n);
  guard(c, n <= 8, "matrix output at n=" + std::to_string(n) + " exceeds the default cap n <= 8",
        std::ldexp(1.0, 2 * n), err);
  if (n > kDenseMaxSteps) throw ResourceError("matrix output needs n <= " + std::to_string(kDenseMaxSteps));
  const std::uint64_t size = state.space().size();
  if (csv(c)) {
    out << "# denominator=2^" << n << "\n";
    out << "row,col,re,im\n";
    for (PathIndex j = 0; j < size; ++j)
      for (PathIndex k = 0; k < size; ++k) out << j << "," << k << "," << state.scaled_entry(j, k) << ",0\n";
    return kOk;
  }
  Json rows = Json::array();
  for (PathIndex j = 0; j < size; ++j) {
    Json row = Json::array();
    for (PathIndex k = 0; k < size; ++k) row.push_back(Json::array({state.scaled_entry(j, k), 0}));
    rows.push_back(std::move(row));
  }
  Json result;
  result["denominator_log2"] = n;
  result["denominator"] = std::uint64_t{1} << n;
  result["entries"] = std::move(rows);
  emit(out, "matrix", {{"n", n}}, std::move(result));
  return kOk;
}

MeasureStrategy parse_measure_strategy(const std::string& s) {
  if (s == "dense") return MeasureStrategy::Dense;
  if (s == "pairwise") return MeasureStrategy::Pairwise;
  return MeasureStrategy::Rank2;
}

int run_measure(int n, const std::string& event_text, bool complement, const std::string& strategy, const Common& c,
                std::ostream& out) {
  const DecoherenceState state(n);
  const Event e(state.space(), parse_index_list(event_text), complement);
  const auto value = mu(state, e, parse_measure_strategy(strategy));
  if (csv(c)) {
    out << "num,log2_den,exact,decimal,precluded\n" << dyadic_csv(value) << "," << (value.is_zero() ? 1 : 0) << "\n";
    return kOk;
  }
  Json params;
  params["n"] = n;
  params["event"] = event_text;
  params["complement"] = complement;
  params["strategy"] = strategy;
  Json result;
  result["mu"] = dyadic_json(value);
  result["precluded"] = value.is_zero();
  emit(out, "measure", std::move(params), std::move(result));
  return kOk;
}

int run_interference(int n, const Common& c, std::ostream& out, std::ostream& err) {
  const DecoherenceState state(n);
  guard(c, n <= 8, "interference table at n=" + std::to_string(n) + " exceeds the default cap n <= 8",
        std::ldexp(1.0, 2 * n - 1), err);
  if (n > 12) throw ResourceError("interference table needs n <= 12");
  const std::uint64_t size = state.space().size();
  if (csv(c)) out << "i,j,I_num,log2_den,class,pair_mu_num\n";
  Json rows = Json::array();
  for (PathIndex i = 0; i < size; ++i)
    for (PathIndex j = i + 1; j < size; ++j) {
      const auto r = interference(state, i, j);
      if (csv(c)) {
        out << i << "," << j << "," << r.term.numerator() << "," << n << "," << to_string(r.kind) << ","
            << r.pair_measure.numerator() << "\n";
        continue;
      }
      Json row;
      row["i"] = i;
      row["j"] = j;
      row["I"] = dyadic_json(r.term);
      row["class"] = std::string(to_string(r.kind));
      row["pair_mu"] = dyadic_json(r.pair_measure);
      rows.push_back(std::move(row));
    }
  if (!csv(c)) emit(out, "interference", {{"n", n}}, {{"pairs", std::move(rows)}});
  return kOk;
}

int run_preclusion(int n, std::optional<int> max_card, const Common& c, std::ostream& out, std::ostream& err) {
  const DecoherenceState state(n);
  PreclusionOptions opt;
  opt.max_cardinality = max_card;
  opt.force = c.force;
  const bool default_bounds = n <= 4 || (max_card && n <= 6 && *max_card <= 4);
  if (!default_bounds && c.force)
    err << "estimated cost: ~" << decimal_string(preclusion_search_cost(n, max_card)) << " subsets\n";
  const auto events = enumerate_precluded(state, opt);
  if (csv(c)) {
    out << "cardinality,members\n";
    for (const auto& e : events) out << e.cardinality() << "," << join(e.members(), " ") << "\n";
    return kOk;
  }
  Json list = Json::array();
  for (const auto& e : events) list.push_back(members_json(e));
  Json params;
  params["n"] = n;
  params["max_card"] = max_card ? Json(*max_card) : Json(nullptr);
  Json result;
  result["count"] = events.size();
  result["events"] = std::move(list);
  emit(out, "preclusion", std::move(params), std::move(result));
  return kOk;
}

SymbolicEvent parse_symbolic_event(const std::string& text) {
  if (text == "return-to-zero") return SymbolicEvent::finite_paths({{{}, 1}}).complement();
  if (text == "complement-constant") return SymbolicEvent::finite_paths({{{}, 0}}).complement();
  if (text == "finitely-many-ones") return SymbolicEvent::finitely_many_ones();
  const std::string prefix = "at-most-ones:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const std::string rest = text.substr(prefix.size());
      const int k = std::stoi(rest, &used);
      if (used == rest.size()) return SymbolicEvent::at_most_k_ones(k);
    } catch (const std::exception&) {
    }
  }
  throw DomainError("unknown event '" + text +
                    "'; expected return-to-zero, complement-constant, finitely-many-ones or at-most-ones:K");
}

Json verdict_json(const LimitReport& r) {
  Json v;
  v["kind"] = to_string(r.verdict);
  if (r.verdict == Verdict::Converged) {
    v["estimate"] = decimal_string(r.estimate);
    v["at_n"] = r.at_n;
  }
  v["label"] = "numerical";
  v["window"] = r.window;
  v["tol"] = decimal_string(r.tol);
  v["range"] = Json::array({r.n_first, r.n_last});
  return v;
}

void verdict_csv(std::ostream& out, const LimitReport& r) {
  out << "# verdict=" << to_string(r.verdict);
  if (r.verdict == Verdict::Converged) out << " estimate=" << decimal_string(r.estimate) << " at_n=" << r.at_n;
  out << " window=" << r.window << " tol=" << decimal_string(r.tol) << " (numerical)\n";
}

int run_limit(const std::string& event_text, int n_max, const LimitOptions& opt, const std::string& side,
              const Common& c, std::ostream& out) {
  const auto s = parse_symbolic_event(event_text);
  const auto report = limit_mu_hat(s, n_max, opt);
  const bool upper = opt.side == ApproximantSide::Upper || (opt.side == ApproximantSide::Auto && s.complemented());
  if (csv(c)) {
    out << "n,num,log2_den,exact,decimal\n";
    for (const auto& p : report.values) out << p.n << "," << dyadic_csv(p.value) << "\n";
    verdict_csv(out, report);
    return kOk;
  }
  Json rows = Json::array();
  for (const auto& p : report.values) rows.push_back({{"n", p.n}, {"mu", dyadic_json(p.value)}});
  Json params;
  params["event"] = event_text;
  params["n_max"] = n_max;
  params["tol"] = decimal_string(opt.tol);
  params["window"] = opt.window;
  params["side"] = side;
  Json result;
  result["event"] = s.describe();
  result["approximant"] = upper ? "upper" : "lower";
  result["values"] = std::move(rows);
  result["verdict"] = verdict_json(report);
  emit(out, "limit", std::move(params), std::move(result));
  return kOk;
}

int run_variation(int n_max, const Common& c, std::ostream& out) {
  if (n_max < 1) throw DomainError("--n-max must be at least 1");
  if (n_max > kMaxSteps) throw ResourceError("--n-max above " + std::to_string(kMaxSteps) + " is not supported");
  if (csv(c)) out << "n,num,log2_den,exact,decimal\n";
  Json rows = Json::array();
  for (int n = 1; n <= n_max; ++n) {
    const auto b = variation_lower_bound(n);
    if (csv(c))
      out << n << "," << dyadic_csv(b) << "\n";
    else
      rows.push_back({{"n", n}, {"bound", dyadic_json(b)}});
  }
  if (!csv(c)) emit(out, "variation", {{"n_max", n_max}}, {{"series", std::move(rows)}});
  return kOk;
}

int run_example8(int i_max, const Common& c, std::ostream& out, std::ostream& err) {
  guard(c, i_max <= 1000, "--i-max above 1000", static_cast<double>(i_max) * i_max, err);
  const auto seq = example8_sequence(i_max);
  std::vector<LimitPoint> points;
  for (const auto& t : seq) points.push_back({t.i, t.value, t.value.to_double()});
  const auto report = assess_limit(points, LimitOptions{});
  if (csv(c)) {
    out << "i,num,log2_den,exact,decimal,provenance\n";
    for (const auto& t : seq) out << t.i << "," << dyadic_csv(t.value) << "," << (t.direct ? "direct" : "extrapolated") << "\n";
    verdict_csv(out, report);
    return kOk;
  }
  Json rows = Json::array();
  for (const auto& t : seq)
    rows.push_back({{"i", t.i}, {"mu", dyadic_json(t.value)}, {"provenance", t.direct ? "direct" : "extrapolated"}});
  Json result;
  result["series"] = std::move(rows);
  result["verdict"] = verdict_json(report);
  emit(out, "example8", {{"i_max", i_max}}, std::move(result));
  return kOk;
}

Json subset_json(SubsetMask a) {
  Json arr = Json::array();
  for (int e = 0; e < 32; ++e)
    if (a >> e & 1U) arr.push_back(e);
  return arr;
}

int run_quadratic(const std::string& builtin, const std::string& file, bool check_measure, int nx, int ny,
                  const Common& c, std::ostream& out) {
  if (csv(c)) throw DomainError("quadratic has no tabular output; use --format json");
  if (builtin.empty() == file.empty()) throw DomainError("give exactly one of --builtin or --file");
  std::optional<SetSystem> q;
  std::string name;
  if (builtin == "example12") {
    q = example12_system();
    name = "example12";
  } else if (builtin == "example13") {
    q = example13_system(nx, ny);
    name = "example13";
  } else if (!builtin.empty()) {
    throw DomainError("unknown builtin '" + builtin + "'");
  } else {
    q = parse_set_system(read_file(file));
    name = file;
  }
  const auto report = is_quadratic_algebra(*q);
  Json qa;
  qa["holds"] = report.holds;
  qa["missing_empty"] = report.missing_empty;
  qa["missing_universe"] = report.missing_universe;
  if (report.counterexample) {
    Json triple = Json::array();
    for (const SubsetMask a : *report.counterexample) triple.push_back(subset_json(a));
    qa["counterexample"] = std::move(triple);
  } else {
    qa["counterexample"] = nullptr;
  }
  Json result;
  result["system"] = name;
  result["universe_size"] = q->universe_size();
  result["members"] = q->size();
  result["quadratic_algebra"] = std::move(qa);
  if (check_measure) {
    const bool nine = builtin == "example12";
    const auto nu = nine ? example12_measure(*q) : squared_cardinality(*q);
    Json qm;
    qm["measure"] = nine ? "0, 1/6, 1/2, 1 by size" : "|A|^2";
    if (!report.holds) {
      qm["checked"] = false;
      qm["reason"] = "not a quadratic algebra";
    } else {
      const auto m = is_q_measure(*q, nu);
      qm["checked"] = true;
      qm["holds"] = m.holds;
      if (m.counterexample) {
        Json triple = Json::array();
        for (const SubsetMask a : *m.counterexample) triple.push_back(subset_json(a));
        qm["counterexample"] = std::move(triple);
        qm["lhs"] = to_string(m.lhs);
        qm["rhs"] = to_string(m.rhs);
      }
    }
    if (nine) {
      // {u1,d1,d2} and {u2,u3,s1}
      const SubsetMask a = 0b000001011, b = 0b001110000;
      Json gap;
      gap["pair"] = Json::array({subset_json(a), subset_json(b)});
      gap["sum"] = to_string(nu.values[q->index_of(a)] + nu.values[q->index_of(b)]);
      gap["union"] = to_string(nu.values[q->index_of(a | b)]);
      qm["additivity_gap"] = std::move(gap);
    }
    result["q_measure"] = std::move(qm);
  }
  Json params;
  params["builtin"] = builtin.empty() ? Json(nullptr) : Json(builtin);
  params["file"] = file.empty() ? Json(nullptr) : Json(file);
  params["check_measure"] = check_measure;
  if (builtin == "example13") {
    params["nx"] = nx;
    params["ny"] = ny;
  }
  emit(out, "quadratic", std::move(params), std::move(result));
  return kOk;
}

IntegralStrategy parse_integral_strategy(const std::string& s) {
  if (s == "def") return IntegralStrategy::Definition;
  if (s == "trace") return IntegralStrategy::Trace;
  return IntegralStrategy::Eigen;
}

int run_integral(int n, const std::string& variable, const std::string& file, const std::string& strategy,
                 const Common& c, std::ostream& out, std::ostream& err) {
  const DecoherenceState state(n);
  guard(c, n <= 20, "integral at n=" + std::to_string(n) + " exceeds the default cap n <= 20",
        std::ldexp(1.0, n) * n, err);
  std::optional<RandomVariable> f;
  if (variable == "ones")
    f = RandomVariable::ones(state.space());
  else if (variable == "changes")
    f = RandomVariable::changes(state.space());
  else {
    if (file.empty()) throw DomainError("--variable custom needs --file");
    f = parse_random_variable(state.space(), read_file(file));
  }
  const auto value = integral(state, *f, parse_integral_strategy(strategy));
  if (csv(c)) {
    out << "num,den,exact,decimal\n"
        << boost::multiprecision::numerator(value) << "," << boost::multiprecision::denominator(value) << ","
        << to_string(value) << "," << decimal_string(to_double(value)) << "\n";
    return kOk;
  }
  Json params;
  params["n"] = n;
  params["variable"] = variable;
  if (!file.empty()) params["file"] = file;
  params["strategy"] = strategy;
  emit(out, "integral", std::move(params), {{"integral", rational_json(value)}});
  return kOk;
}

int run_eigen(int n, const Common& c, std::ostream& out, std::ostream& err) {
  const DecoherenceState state(n);
  guard(c, n <= 10, "eigenvector output at n=" + std::to_string(n) + " exceeds the default cap n <= 10",
        std::ldexp(1.0, 2 * n), err);
  const auto pair = eigenpair(state);
  const bool checked = n <= kDenseMaxSteps;
  if (csv(c)) {
    out << "# scale=sqrt(2)^" << pair.root2_power << "\n";
    out << "j,psi0_re,psi0_im,psi1_re,psi1_im\n";
    for (std::size_t j = 0; j < pair.scaled0.size(); ++j)
      out << j << "," << pair.scaled0[j].re << "," << pair.scaled0[j].im << "," << pair.scaled1[j].re << ","
          << pair.scaled1[j].im << "\n";
    return kOk;
  }
  auto vec = [](const std::vector<GaussianInt>& v) {
    Json arr = Json::array();
    for (const auto& z : v) arr.push_back(Json::array({z.re, z.im}));
    return arr;
  };
  Json result;
  result["root2_power"] = pair.root2_power;
  result["eigenvalue"] = "1/2";
  result["psi0_scaled"] = vec(pair.scaled0);
  result["psi1_scaled"] = vec(pair.scaled1);
  if (checked) {
    result["eigen_equation_exact"] = verify_eigen_equation(state);
    result["rank_two_reconstruction"] = verify_rank_two_reconstruction(state);
  }
  emit(out, "eigen", {{"n", n}}, std::move(result));
  return kOk;
}

int run_verify(const Common& c, std::ostream& out, std::ostream& err) {
  const auto items = run_verification_suite();
  std::size_t passed = 0;
  for (const auto& i : items) passed += i.passed ? 1 : 0;
  if (c.meta) {
    Json timing = Json::object();
    for (const auto& i : items) timing[i.name] = decimal_string(i.seconds);
    err << Json{{"verify_seconds", std::move(timing)}}.dump() << "\n";
  }
  if (csv(c)) {
    out << "name,passed,detail\n";
    for (const auto& i : items) out << i.name << "," << (i.passed ? "pass" : "fail") << ",\"" << i.detail << "\"\n";
  } else {
    Json list = Json::array();
    for (const auto& i : items) list.push_back({{"name", i.name}, {"passed", i.passed}, {"detail", i.detail}});
    Json result;
    result["passed"] = passed;
    result["total"] = items.size();
    result["items"] = std::move(list);
    emit(out, "verify", Json::object(), std::move(result));
  }
  return passed == items.size() ? kOk : kVerifyFailed;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact quantum measure computations for the two-site walk", "qwalk"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Common common;
  app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--force", common.force, "lift default size caps (prints an estimated cost first)");
  app.add_flag("--meta", common.meta, "write run information to stderr");

  int n = 0;
  auto* matrix = app.add_subcommand("matrix", "scaled decoherence matrix 2^n D^n");
  matrix->add_option("--n", n, "number of steps")->required();

  std::string event_text;
  std::string measure_strategy = "rank2";
  bool complement = false;
  auto* measure = app.add_subcommand("measure", "q-measure of an event");
  measure->add_option("--n", n, "number of steps")->required();
  measure->add_option("--event", event_text, "comma separated path indices")->required();
  measure->add_flag("--complement", complement, "measure Omega_n minus the listed paths");
  measure->add_option("--strategy", measure_strategy, "dense|pairwise|rank2")
      ->check(CLI::IsMember({"dense", "pairwise", "rank2"}));

  auto* interference_cmd = app.add_subcommand("interference", "pair interference table");
  interference_cmd->add_option("--n", n, "number of steps")->required();

  std::optional<int> max_card;
  auto* preclusion = app.add_subcommand("preclusion", "enumerate precluded events");
  preclusion->add_option("--n", n, "number of steps")->required();
  preclusion->add_option("--max-card", max_card, "largest cardinality searched");

  std::string limit_event;
  int n_max = 0;
  LimitOptions limit_opt;
  std::string side = "auto";
  auto* limit = app.add_subcommand("limit", "mu along approximants with a convergence verdict");
  limit->add_option("--event", limit_event, "return-to-zero|complement-constant|finitely-many-ones|at-most-ones:K")
      ->required();
  limit->add_option("--n-max", n_max, "last n")->required();
  limit->add_option("--tol", limit_opt.tol, "Cauchy tolerance");
  limit->add_option("--window", limit_opt.window, "values that must agree within tol");
  limit->add_option("--side", side, "auto|lower|upper approximants")->check(CLI::IsMember({"auto", "lower", "upper"}));

  auto* variation = app.add_subcommand("variation", "elementary-cylinder variation bound 2^n");
  variation->add_option("--n-max", n_max, "last n")->required();

  int i_max = 0;
  auto* example8 = app.add_subcommand("example8", "nested cylinders with measure (9/8)^i");
  example8->add_option("--i-max", i_max, "last i")->required();

  std::string builtin, system_file;
  bool check_measure = false;
  int nx = 3, ny = 2;
  auto* quadratic = app.add_subcommand("quadratic", "quadratic algebra and q-measure checks");
  quadratic->add_option("--builtin", builtin, "example12|example13");
  quadratic->add_option("--file", system_file, "set system file");
  quadratic->add_flag("--check-measure", check_measure, "also check the q-measure axiom");
  quadratic->add_option("--nx", nx, "x elements for example13 (odd)");
  quadratic->add_option("--ny", ny, "y elements for example13");

  std::string variable = "ones", variable_file, integral_strategy = "eigen";
  auto* integral_cmd = app.add_subcommand("integral", "quantum integral of a random variable");
  integral_cmd->add_option("--n", n, "number of steps")->required();
  integral_cmd->add_option("--variable", variable, "ones|changes|custom")
      ->check(CLI::IsMember({"ones", "changes", "custom"}));
  integral_cmd->add_option("--file", variable_file, "values for --variable custom, one per line");
  integral_cmd->add_option("--strategy", integral_strategy, "def|trace|eigen")
      ->check(CLI::IsMember({"def", "trace", "eigen"}));

  auto* eigen = app.add_subcommand("eigen", "eigenvectors psi_0, psi_1 of D^n");
  eigen->add_option("--n", n, "number of steps")->required();

  auto* verify = app.add_subcommand("verify", "run the reproduction and property suite");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("qwalk");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  std::string command;
  try {
    if (matrix->parsed()) {
      command = "matrix";
      code = run_matrix(n, common, out, err);
    } else if (measure->parsed()) {
      command = "measure";
      code = run_measure(n, event_text, complement, measure_strategy, common, out);
    } else if (interference_cmd->parsed()) {
      command = "interference";
      code = run_interference(n, common, out, err);
    } else if (preclusion->parsed()) {
      command = "preclusion";
      code = run_preclusion(n, max_card, common, out, err);
    } else if (limit->parsed()) {
      command = "limit";
      limit_opt.side = side == "lower" ? ApproximantSide::Lower
                                       : (side == "upper" ? ApproximantSide::Upper : ApproximantSide::Auto);
      code = run_limit(limit_event, n_max, limit_opt, side, common, out);
    } else if (variation->parsed()) {
      command = "variation";
      code = run_variation(n_max, common, out);
    } else if (example8->parsed()) {
      command = "example8";
      code = run_example8(i_max, common, out, err);
    } else if (quadratic->parsed()) {
      command = "quadratic";
      code = run_quadratic(builtin, system_file, check_measure, nx, ny, common, out);
    } else if (integral_cmd->parsed()) {
      command = "integral";
      code = run_integral(n, variable, variable_file, integral_strategy, common, out, err);
    } else if (eigen->parsed()) {
      command = "eigen";
      code = run_eigen(n, common, out, err);
    } else if (verify->parsed()) {
      command = "verify";
      code = run_verify(common, out, err);
    }
  } catch (const ResourceError& e) {
    err << "resource bound: " << e.what() << "\n";
    return kResource;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (common.meta) {
    Json meta;
    meta["command"] = command;
    meta["version"] = kVersion;
    meta["threads"] = worker_count();
    meta["elapsed_seconds"] = decimal_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    err << meta.dump() << "\n";
  }
  return code;
}

}  // namespace qwalk::cli
