#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rgb/bell.hpp"
#include "rgb/box_io.hpp"
#include "rgb/family.hpp"
#include "rgb/game.hpp"
#include "rgb/locality.hpp"
#include "rgb/quantum.hpp"
#include "rgb/sdp.hpp"
#include "rgb/wiring.hpp"

namespace rgb::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad user input: exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  bool timing = false;
  std::string game = "rgb";
  double tolerance = 1e-10;
};

// Everything a command produces. Table mode prints `text`; JSON mode prints
// the structured fields. Both are filled from the same values.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<std::string> text{};
  int status = kExitOk;
  std::string raw{};  // document output (box/wiring), printed verbatim in table mode
};

std::string display(const Rat& r) { return r.denominator() == "1" ? r.numerator() : r.str(); }

// Small-denominator rational within tol of v, if any.
std::optional<Rat> recognize(double v, double tol = 1e-12, long max_den = 1000) {
  for (long d = 1; d <= max_den; ++d) {
    const double n = std::round(v * static_cast<double>(d));
    if (std::abs(n / static_cast<double>(d) - v) <= tol) return Rat(static_cast<long>(n), d);
  }
  return std::nullopt;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_decimal(v[i]);
  return s;
}

Json decimals(const std::vector<double>& v) {
  Json a = Json::array();
  for (double d : v) a.push_back(d);
  return a;
}

void put(Report& r, const std::string& key, const std::string& label, const Rat& v) {
  r.results[key] = v.str();
  r.text.push_back(label + ": " + display(v));
}

void put(Report& r, const std::string& key, const std::string& label, double v) {
  r.results[key] = v;
  r.text.push_back(label + ": " + format_decimal(v));
}

std::vector<std::string> matrix_lines(const SymMatrix& m) {
  std::vector<std::string> lines;
  for (int i = 0; i < m.dim(); ++i) {
    std::string line;
    char buf[16];
    for (int j = 0; j < m.dim(); ++j) {
      std::snprintf(buf, sizeof buf, "%6.2f", m(i, j) == 0.0 ? 0.0 : m(i, j));
      line += buf;
    }
    lines.push_back(line);
  }
  return lines;
}

Json matrix_json(const SymMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.dense()) rows.push_back(decimals(row));
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Game selected_game(const Options& o) {
  if (o.game == "rgb") return rgb_game();
  if (o.game == "chsh") return chsh_game();
  throw InputError("unknown game '" + o.game + "'");
}

void require_rgb(const Options& o, const std::string& command) {
  if (o.game != "rgb") throw InputError(command + " is only defined for the rgb game");
}

// A box file, exact if every probability is a rational string.
struct LoadedBox {
  std::optional<StrategyTable> exact;
  std::optional<RealTable> real;
};

LoadedBox load_box(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return {read_box(text), std::nullopt};
  } catch (const FormatError& exact_error) {
    try {
      return {std::nullopt, read_real_box(text)};
    } catch (const FormatError&) {
      throw FormatError(path + ": " + exact_error.where(),
                        std::string(exact_error.what()).substr(exact_error.where().size() + 2));
    }
  }
}

RealTable as_real(const LoadedBox& b) { return b.exact ? to_real(*b.exact) : *b.real; }

std::optional<StrategyTable> named_box(const std::string& name) {
  if (name == "rgrb") return rgrb();
  if (name == "rgb0") return rgb0();
  if (name == "pr") return pr_box();
  if (name == "id") return id_box();
  if (name == "r-sig") return r_sig_box();
  if (name == "l-sig") return l_sig_box();
  if (name == "sig") return sig_box();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Commands

Report cmd_bounds(const Options& o) {
  require_rgb(o, "bounds");
  Report r{"bounds"};
  const Game game = rgb_game();

  const LocalBound local = local_bound(game);
  const LocalBellSweep sweep = local_bell_sweep();

  const RealTable q = quantum_strategy_table(singlet(), trine_strategy(), trine_strategy());
  const double q_win = win_probability(q, game);
  const double q_bell = bell_quantity(correlations_from_table(reduce_to_binary(q)));
  const CertificateReport cert = certify_quantum_bound();

  const StrategyTable ns = rgrb();
  const Rat ns_win = win_probability(ns, game);
  const Rat ns_bell = bell_quantity(correlations_from_table(reduce_to_binary(ns)));

  const auto q_win_exact = recognize(q_win);
  const auto q_bell_exact = recognize(cert.bound, kSdpTol);
  const std::string q_win_s = q_win_exact ? display(*q_win_exact) : format_decimal(q_win);
  const std::string q_bell_s = q_bell_exact ? display(*q_bell_exact) : format_decimal(cert.bound);

  r.results["local"] = {{"win", local.value.str()}, {"bell", sweep.max_bell.str()}};
  r.results["quantum"] = {{"win", q_win_exact ? q_win_exact->str() : format_decimal(q_win)},
                          {"win_decimal", q_win},
                          {"bell", q_bell_exact ? q_bell_exact->str() : format_decimal(cert.bound)},
                          {"bell_decimal", q_bell},
                          {"certified_win_bound", cert.implied_win_bound}};
  r.results["no-signalling"] = {{"win", ns_win.str()}, {"bell", ns_bell.str()}};
  r.text = {"class | win | bell",
            "local | " + display(local.value) + " | " + display(sweep.max_bell),
            "quantum | " + q_win_s + " | " + q_bell_s,
            "no-signalling | " + display(ns_win) + " | " + display(ns_bell)};
  if (std::abs(q_win - cert.implied_win_bound) > 1e-12) r.status = kExitCheckFailed;
  return r;
}

Report cmd_enumerate(const Options& o) {
  Report r{"enumerate"};
  const Game g = selected_game(o);
  r.inputs["game"] = o.game;
  const auto n = enumerate_winning_deterministic_boxes(g);
  r.results["count"] = n;
  r.text.push_back("winning deterministic boxes: " + std::to_string(n));
  return r;
}

Report cmd_local_bound(const Options& o) {
  Report r{"local-bound"};
  const Game g = selected_game(o);
  r.inputs["game"] = o.game;
  const LocalBound b = local_bound(g);
  put(r, "value", "local bound", b.value);
  r.results["f_a"] = b.fa;
  r.results["f_b"] = b.fb;
  r.text.push_back("f_a: " + join(b.fa));
  r.text.push_back("f_b: " + join(b.fb));
  return r;
}

Report cmd_verify_reduction(const Options& o, const std::string& name) {
  require_rgb(o, "verify-reduction");
  Report r{"verify-reduction"};
  r.inputs["reduction"] = name;
  std::optional<WiringProtocol> w;
  StrategyTable base = pr_box(), target = pr_box();
  if (name == "pr-from-rgrb") {
    w = pr_from_rgrb();
    base = rgrb();
  } else if (name == "rgrb-from-pr") {
    w = rgrb_from_pr();
    target = rgrb();
  } else {
    throw InputError("unknown reduction '" + name + "' (expected pr-from-rgrb or rgrb-from-pr)");
  }
  const Rat d = l1_distance(evaluate_wiring(*w, base), target);
  const bool pass = d == Rat(0);
  r.results["calls"] = w->calls();
  r.results["distance"] = d.str();
  r.results["pass"] = pass;
  r.text.push_back("calls: " + std::to_string(w->calls()));
  r.text.push_back("distance " + display(d) + ", " + (pass ? "PASS" : "FAIL"));
  r.status = pass ? kExitOk : kExitCheckFailed;
  return r;
}

Report cmd_wiring(const std::string& name) {
  Report r{"wiring"};
  r.inputs["name"] = name;
  if (name == "pr-from-rgrb") r.raw = write_wiring(pr_from_rgrb());
  else if (name == "rgrb-from-pr") r.raw = write_wiring(rgrb_from_pr());
  else throw InputError("unknown wiring '" + name + "' (expected pr-from-rgrb or rgrb-from-pr)");
  r.results["wiring"] = Json::parse(r.raw);
  return r;
}

Report cmd_evaluate_wiring(const std::string& wiring_path, const std::string& box_path) {
  Report r{"evaluate-wiring"};
  r.inputs["wiring"] = wiring_path;
  r.inputs["box"] = box_path;
  const WiringProtocol w = read_wiring(read_file(wiring_path));
  const LoadedBox box = load_box(box_path);
  try {
    if (box.exact) r.raw = write_box(evaluate_wiring(w, *box.exact));
    else r.raw = write_real_box(evaluate_wiring(w, *box.real));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  r.results["box"] = Json::parse(r.raw);
  return r;
}

template <class T>
void describe_ns(Report& r, const NoSignallingCheck<T>& check) {
  r.results["no_signalling"] = check.no_signalling;
  if (check.no_signalling) {
    r.text.push_back("NO-SIGNALLING");
    return;
  }
  const auto& w = *check.witness;
  std::ostringstream m1, m2;
  m1 << w.marginal1;
  m2 << w.marginal2;
  r.results["witness"] = {{"side", to_string(w.side)},
                          {"fixed_input", w.fixed_input},
                          {"output", w.output},
                          {"inputs", {w.input1, w.input2}},
                          {"marginals", {m1.str(), m2.str()}}};
  r.text.push_back("SIGNALS, witness: " + w.describe());
  r.status = kExitCheckFailed;
}

Report cmd_ns_check(const Options& o, const std::string& path) {
  Report r{"ns-check"};
  r.inputs["file"] = path;
  const LoadedBox box = load_box(path);
  if (box.exact) {
    describe_ns(r, is_no_signalling(*box.exact));
  } else {
    r.inputs["tolerance"] = o.tolerance;
    describe_ns(r, is_no_signalling(*box.real, o.tolerance));
  }
  return r;
}

Report cmd_ns_unique() {
  Report r{"ns-unique"};
  const NsSolveTrace t = solve_ns_unique_traced();
  r.results["rank_after_equalities"] = t.rank_after_equalities;
  r.results["free_after_equalities"] = t.free_after_equalities;
  r.results["forced_zero"] = t.forced_zero;
  r.text.push_back("rank after equalities: " + std::to_string(t.rank_after_equalities));
  std::string free;
  for (const auto& f : t.free_after_equalities) free += " " + f;
  r.text.push_back("free after equalities:" + free);
  r.text.push_back("inequalities forced to equality: " + std::to_string(t.forced_zero.size()));
  const auto values = t.params.to_vector();
  const auto& names = WinningFamilyParams::variable_names();
  Json params = Json::object();
  for (std::size_t i = 0; i < values.size(); ++i) {
    params[names[i]] = values[i].str();
    r.text.push_back(names[i] + " = " + display(values[i]));
  }
  r.results["params"] = params;
  const bool matches = family_strategy(t.params) == rgrb();
  r.results["equals_rgrb"] = matches;
  r.text.push_back(std::string("family strategy equals rgrb: ") + (matches ? "yes" : "no"));
  r.status = matches ? kExitOk : kExitCheckFailed;
  return r;
}

Report cmd_quantum(const Options& o, const std::vector<double>& alice, const std::vector<double>& bob,
                   const std::string& state_name, bool box_only) {
  require_rgb(o, "quantum");
  Report r{"quantum"};
  auto angles = [](const std::vector<double>& v, const char* who) {
    if (v.size() != 3) throw InputError(std::string(who) + " needs exactly three angles");
    return std::array<double, 3>{v[0], v[1], v[2]};
  };
  std::optional<SharedState> state;
  if (state_name == "singlet") state = singlet();
  else if (state_name == "product") state = product_zero();
  else throw InputError("unknown state '" + state_name + "' (expected singlet or product)");
  r.inputs["state"] = state_name;
  r.inputs["alice_angles"] = alice;
  r.inputs["bob_angles"] = bob;

  const RealTable t =
      quantum_strategy_table(*state, bloch_strategy(angles(alice, "--alice")), bloch_strategy(angles(bob, "--bob")));
  if (box_only) {
    r.raw = write_real_box(t);
    r.results["box"] = Json::parse(r.raw);
    return r;
  }
  const ErrorTerms e = error_terms(t);
  put(r, "win", "win", win_probability(t, rgb_game()));
  put(r, "error_equal", "E(a=b)", e.equal);
  put(r, "error_plus", "E(a+1=b)", e.plus);
  put(r, "error_minus", "E(a-1=b)", e.minus);
  const auto c = correlations_from_table(reduce_to_binary(t));
  put(r, "bell", "bell quantity", bell_quantity(c));
  const auto ns = is_no_signalling(t, o.tolerance);
  r.results["no_signalling"] = ns.no_signalling;
  r.text.push_back(std::string("no-signalling: ") + (ns.no_signalling ? "yes" : "no"));
  return r;
}

Report cmd_sdp_certify() {
  Report r{"sdp-certify"};
  CertificateReport c;
  try {
    c = certify_quantum_bound();
  } catch (const CertificateError& e) {
    r.results["error"] = e.what();
    r.text.push_back(std::string("certificate FAILED: ") + e.what());
    r.status = kExitCheckFailed;
    return r;
  }
  r.results["primal_value"] = c.primal_value;
  r.results["dual_value"] = c.dual_value;
  r.results["gap"] = c.gap;
  r.results["primal_eigenvalues"] = decimals(c.primal_eigenvalues);
  r.results["dual_slack_eigenvalues"] = decimals(c.dual_slack_eigenvalues);
  r.results["bound"] = c.bound;
  r.results["implied_win_bound"] = c.implied_win_bound;
  r.results["primal_witness"] = matrix_json(g_prime());
  r.results["dual_witness"] = matrix_json(lambda_prime());

  r.text.push_back("primal witness G':");
  for (auto& l : matrix_lines(g_prime())) r.text.push_back(l);
  r.text.push_back("W:");
  for (auto& l : matrix_lines(w_matrix())) r.text.push_back(l);
  r.text.push_back("dual witness Lambda':");
  for (auto& l : matrix_lines(lambda_prime())) r.text.push_back(l);
  r.text.push_back("primal value: " + format_decimal(c.primal_value));
  r.text.push_back("dual value: " + format_decimal(c.dual_value));
  r.text.push_back("gap: " + format_decimal(c.gap));
  r.text.push_back("primal eigenvalues: " + join(c.primal_eigenvalues));
  r.text.push_back("dual slack eigenvalues: " + join(c.dual_slack_eigenvalues));
  r.text.push_back("bound: " + format_decimal(c.bound));
  r.text.push_back("implied win bound: " + format_decimal(c.implied_win_bound));
  return r;
}

Report cmd_sdp_optimize(std::uint64_t seed, int restarts) {
  if (restarts < 1) throw InputError("--restarts must be >= 1");
  Report r{"sdp-optimize"};
  r.inputs["seed"] = seed;
  r.inputs["restarts"] = restarts;
  const AscentResult a = alternating_ascent(seed, restarts);
  put(r, "best_value", "best value", a.best_value);
  r.results["best_restart"] = a.best_restart;
  r.results["gram_rank"] = a.gram_rank;
  r.results["monotone"] = a.monotone;
  std::vector<int> sweeps;
  for (const auto& t : a.restarts) sweeps.push_back(t.sweeps);
  r.results["sweeps"] = sweeps;
  const SymMatrix g = gram_from_vectors(a.best);
  const PrimalCheck p = verify_primal(g);
  r.results["gram_feasible"] = p.feasible;
  r.results["gram"] = matrix_json(g);
  r.text.push_back("best restart: " + std::to_string(a.best_restart));
  r.text.push_back("sweeps: " + join(sweeps));
  r.text.push_back(std::string("monotone: ") + (a.monotone ? "yes" : "no"));
  r.text.push_back("gram rank: " + std::to_string(a.gram_rank));
  r.text.push_back(std::string("gram feasible: ") + (p.feasible ? "yes" : "no"));
  r.text.push_back("gram matrix:");
  for (auto& l : matrix_lines(g)) r.text.push_back(l);
  const bool within_bound = a.best_value <= 9.0 + kSdpTol;
  r.results["within_certified_bound"] = within_bound;
  if (!a.monotone || !within_bound || !p.feasible) r.status = kExitCheckFailed;
  return r;
}

Report cmd_distance(const std::string& pa, const std::string& pb) {
  Report r{"distance"};
  r.inputs["a"] = pa;
  r.inputs["b"] = pb;
  const LoadedBox a = load_box(pa);
  const LoadedBox b = load_box(pb);
  try {
    if (a.exact && b.exact) put(r, "distance", "distance", l1_distance(*a.exact, *b.exact));
    else put(r, "distance", "distance", l1_distance(as_real(a), as_real(b)));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return r;
}

Report cmd_box(const std::string& name) {
  Report r{"box"};
  r.inputs["name"] = name;
  const auto b = named_box(name);
  if (!b) throw InputError("unknown box '" + name + "' (expected rgrb, rgb0, pr, id, r-sig, l-sig or sig)");
  r.raw = write_box(*b);
  r.results["box"] = Json::parse(r.raw);
  return r;
}

void emit(const Report& r, const Options& o, double seconds, std::ostream& out) {
  if (o.json) {
    Json doc = Json::object();
    doc["command"] = r.command;
    doc["inputs"] = r.inputs;
    doc["results"] = r.results;
    doc["status"] = r.status;
    if (o.timing) doc["wall_time_s"] = seconds;
    out << doc.dump(2) << "\n";
    return;
  }
  if (!r.raw.empty()) {
    out << r.raw;
  } else {
    for (const auto& line : r.text) out << line << "\n";
  }
  if (o.timing) out << "wall time: " << format_decimal(seconds) << " s\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"RGB nonlocal game toolkit"};
  app.name("rgbgame");
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Structured JSON output");
  app.add_flag("--timing", o.timing, "Append wall time (output is then no longer reproducible)");
  app.add_option("--game", o.game, "Game for enumerate and local-bound")->check(CLI::IsMember({"rgb", "chsh"}));
  app.add_option("--tolerance", o.tolerance, "Float tolerance for quantum checks and decimal boxes")
      ->check(CLI::PositiveNumber);

  std::function<Report()> action;

  auto* bounds = app.add_subcommand("bounds", "Local, quantum and no-signalling bounds");
  bounds->callback([&] { action = [&] { return cmd_bounds(o); }; });

  auto* enumerate = app.add_subcommand("enumerate", "Count deterministic boxes that always win");
  enumerate->callback([&] { action = [&] { return cmd_enumerate(o); }; });

  auto* local = app.add_subcommand("local-bound", "Best deterministic strategy pair");
  local->callback([&] { action = [&] { return cmd_local_bound(o); }; });

  std::string reduction;
  auto* verify = app.add_subcommand("verify-reduction", "Check a wiring reduction exactly");
  verify->add_option("name", reduction, "pr-from-rgrb or rgrb-from-pr")->required();
  verify->callback([&] { action = [&] { return cmd_verify_reduction(o, reduction); }; });

  std::string wiring_name;
  auto* wiring = app.add_subcommand("wiring", "Print a built-in wiring in the wiring file format");
  wiring->add_option("name", wiring_name, "pr-from-rgrb or rgrb-from-pr")->required();
  wiring->callback([&] { action = [&] { return cmd_wiring(wiring_name); }; });

  std::string wiring_file, wiring_box;
  auto* evaluate = app.add_subcommand("evaluate-wiring", "Compose a wiring file with a box file");
  evaluate->add_option("wiring", wiring_file, "Wiring file")->required();
  evaluate->add_option("box", wiring_box, "Box file")->required();
  evaluate->callback([&] { action = [&] { return cmd_evaluate_wiring(wiring_file, wiring_box); }; });

  std::string ns_file;
  auto* ns_check = app.add_subcommand("ns-check", "No-signalling check of a box file");
  ns_check->add_option("file", ns_file, "Box file")->required();
  ns_check->callback([&] { action = [&] { return cmd_ns_check(o, ns_file); }; });

  auto* ns_unique = app.add_subcommand("ns-unique", "Solve for the unique no-signalling winning strategy");
  ns_unique->callback([&] { action = [] { return cmd_ns_unique(); }; });

  std::vector<double> alice(kTrineAngles.begin(), kTrineAngles.end());
  std::vector<double> bob = alice;
  std::string state = "singlet";
  bool box_only = false;
  auto* quantum = app.add_subcommand("quantum", "Simulate a qubit measurement strategy");
  quantum->add_option("--alice", alice, "Alice's Bloch angles in degrees (R G B)")->expected(3)->delimiter(',');
  quantum->add_option("--bob", bob, "Bob's Bloch angles in degrees (R G B)")->expected(3)->delimiter(',');
  quantum->add_option("--state", state, "singlet or product");
  quantum->add_flag("--box", box_only, "Print the strategy table as a box file");
  quantum->callback([&] { action = [&] { return cmd_quantum(o, alice, bob, state, box_only); }; });

  auto* certify = app.add_subcommand("sdp-certify", "Verify the primal and dual certificates");
  certify->callback([&] { action = [] { return cmd_sdp_certify(); }; });

  std::uint64_t seed = 0;
  int restarts = 20;
  auto* optimize = app.add_subcommand("sdp-optimize", "Alternating ascent over unit vectors");
  optimize->add_option("--seed", seed, "Random seed")->required();
  optimize->add_option("--restarts", restarts, "Number of restarts");
  optimize->callback([&] { action = [&] { return cmd_sdp_optimize(seed, restarts); }; });

  std::string dist_a, dist_b;
  auto* distance = app.add_subcommand("distance", "L1 distance between two box files");
  distance->add_option("a", dist_a, "First box file")->required();
  distance->add_option("b", dist_b, "Second box file")->required();
  distance->callback([&] { action = [&] { return cmd_distance(dist_a, dist_b); }; });

  std::string box_name;
  auto* box = app.add_subcommand("box", "Print a named box in the box file format");
  box->add_option("name", box_name, "rgrb, rgb0, pr, id, r-sig, l-sig or sig")->required();
  box->callback([&] { action = [&] { return cmd_box(box_name); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    const Report r = action();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(r, o, seconds, out);
    return r.status;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace rgb::cli
