#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "engel/engelmaps.hpp"
#include "engel/envelope.hpp"
#include "engel/errors.hpp"
#include "engel/format.hpp"
#include "engel/io.hpp"
#include "engel/logic.hpp"
#include "engel/oracle.hpp"
#include "engel/quotient.hpp"
#include "engel/witness.hpp"

namespace engel::cli {

using nlohmann::json;
using quotient::AlgebraTable;

namespace {

struct Flags {
  std::uint32_t p = 5;
  std::size_t rank = 2;
  unsigned engel = 3;
  unsigned cap = 6;
  int mdegcap = -1;
  bool allow_small = false;
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 0;  // 0: command default
  std::size_t budget = 0;  // 0: command default
  std::string out_path;
  bool as_json = false;
  bool serial = false;
  // command specific
  std::string file;
  std::string id;
  unsigned k = 2;
  unsigned l = 3;
  std::string formula = "phi";
  std::string tuple_file;
  bool exhaustive = false;
  bool force = false;
  bool printed = false;
};

std::string hex(std::uint64_t s) {
  std::ostringstream o;
  o << "0x" << std::hex << s;
  return o.str();
}

Execution exec(const Flags& f) { return f.serial ? Execution::serial : Execution::parallel; }

json dims_json(const AlgebraTable& t) { return t.dims_by_degree(); }

std::string dims_text(const AlgebraTable& t) {
  std::string s;
  for (std::size_t d : t.dims_by_degree()) s += (s.empty() ? "" : " ") + std::to_string(d);
  return s;
}

json header_json(const AlgebraTable& t) {
  const auto& h = t.header();
  json j{{"p", h.p}, {"rank", h.rank}, {"engel", h.engel_n}, {"cap", h.class_cap}, {"dim", t.dim()}};
  j["mdegcap"] = h.multidegree_cap ? json(*h.multidegree_cap) : json(nullptr);
  if (h.weight_bound) j["wbound"] = h.weight_bound->to_string();
  return j;
}

void emit(std::ostream& out, const Flags& f, const json& j, const std::string& text) {
  if (f.as_json)
    out << j.dump(2) << '\n';
  else
    out << text;
}

int cmd_free(const Flags& f, std::ostream& out) {
  quotient::BuildOptions o;
  o.p = f.p;
  o.rank = f.rank;
  o.engel_n = f.engel;
  o.class_cap = f.cap;
  if (f.mdegcap >= 0) o.multidegree_cap = static_cast<unsigned>(f.mdegcap);
  o.allow_small_characteristic = f.allow_small;
  o.execution = exec(f);
  o.max_dim = f.budget;
  const AlgebraTable t = quotient::build_quotient(o);
  if (!f.out_path.empty()) io::save(t, f.out_path);
  const auto c = quotient::nilpotency_class(t);
  json j{{"check", "quotient.build_quotient"}, {"header", header_json(t)}, {"dims", dims_json(t)},
         {"class", c.nilpotency_class}, {"cap_reached", c.cap_reached}};
  if (!f.out_path.empty()) j["out"] = f.out_path;
  std::ostringstream s;
  s << "[quotient.build_quotient] p=" << f.p << " rank=" << f.rank << " engel=" << f.engel << " cap=" << f.cap
    << " dim=" << t.dim() << '\n'
    << "dims by degree: " << dims_text(t) << '\n';
  if (!f.out_path.empty()) s << "written to " << f.out_path << '\n';
  emit(out, f, j, s.str());
  return kOk;
}

int cmd_class(const Flags& f, std::ostream& out) {
  const AlgebraTable t = io::load(f.file);
  const auto c = quotient::nilpotency_class(t);
  json j{{"check", "quotient.nilpotency_class"}, {"header", header_json(t)}, {"dims", dims_json(t)},
         {"class", c.nilpotency_class}, {"cap_reached", c.cap_reached}};
  std::ostringstream s;
  s << "[quotient.nilpotency_class] class " << c.nilpotency_class << " (cap_reached "
    << (c.cap_reached ? "true" : "false") << ")\n"
    << "dims by degree: " << dims_text(t) << '\n';
  emit(out, f, j, s.str());
  return kOk;
}

int cmd_check(const Flags& f, std::ostream& out) {
  const AlgebraTable t = io::load(f.file);
  const envelope::Identity id = envelope::parse_identity(f.id);
  envelope::CheckOptions o;
  o.seed = f.seed;
  o.random_pairs = f.trials ? f.trials : 200;
  o.enforce_characteristic = !f.force;
  o.execution = exec(f);
  const envelope::IdentityReport r = envelope::check_identity(t, id, o);
  json j{{"check", "envelope.check_identity"}, {"identity", f.id}, {"holds", r.holds},
         {"pairs_checked", r.pairs_checked}, {"seed", hex(r.seed)}};
  std::ostringstream s;
  s << "[envelope.check_identity] " << f.id << ": " << (r.holds ? "holds" : "FAILS") << " (pairs "
    << r.pairs_checked << ", seed " << hex(r.seed) << ")\n";
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"origin", c.origin},
                           {"b", format_element(t, c.b)},
                           {"c", format_element(t, c.c)},
                           {"lhs", format_matrix(c.lhs.matrix())},
                           {"rhs", format_matrix(c.rhs.matrix())}};
    s << "counterexample (" << c.origin << "): b = " << format_element(t, c.b)
      << ", c = " << format_element(t, c.c) << '\n'
      << "lhs matrix:\n"
      << format_matrix(c.lhs.matrix()) << "rhs matrix:\n"
      << format_matrix(c.rhs.matrix());
  }
  emit(out, f, j, s.str());
  return r.holds ? kOk : kCheckFailed;
}

int cmd_traustason(const Flags& f, std::ostream& out) {
  const AlgebraTable t = io::load(f.file);
  const std::size_t randoms = f.trials ? f.trials : 20;
  Rng rng(f.seed);
  std::size_t checked = 0;
  std::optional<std::string> bad;
  for (std::size_t i = 0; i < t.dim() && !bad; ++i, ++checked)
    if (!envelope::traustason_check(t, t.basis_element(i))) bad = t.basis()[i].word;
  for (std::size_t i = 0; i < randoms && !bad; ++i, ++checked) {
    const LieElement a = random_element(t, rng);
    if (!envelope::traustason_check(t, a)) bad = format_element(t, a);
  }
  json j{{"check", "envelope.traustason_check"}, {"elements", checked}, {"seed", hex(f.seed)},
         {"holds", !bad}};
  std::ostringstream s;
  s << "[envelope.traustason_check] [[I(a),I(a)],I(a)] = 0 for " << t.dim() << " basis and " << randoms
    << " random a (seed " << hex(f.seed) << "): " << (bad ? "FAILS" : "holds") << '\n';
  if (bad) {
    j["counterexample"] = *bad;
    s << "fails at a = " << *bad << '\n';
  }
  emit(out, f, j, s.str());
  return bad ? kCheckFailed : kOk;
}

int cmd_flaws(const Flags& f, std::ostream& out) {
  const AlgebraTable t = io::load(f.file);
  const maps::ProbeContext ctx(t, t.generator(0));
  const maps::FLawReport r = maps::check_f_laws(ctx, f.trials ? f.trials : 500, f.seed, exec(f));
  json j{{"check", "maps.check_f_laws"}, {"samples", r.samples}, {"seed", hex(r.seed)},
         {"all_passed", r.all_passed()}};
  std::ostringstream s;
  s << "[maps.check_f_laws] a = g1, " << r.samples << " samples, seed " << hex(r.seed) << '\n';
  for (const auto& law : r.laws) {
    json lj{{"law", law.law}, {"passed", law.passed}, {"checked", law.checked}};
    s << (law.passed ? "  pass  " : "  FAIL  ") << law.law << " (" << law.checked << ")\n";
    if (law.counterexample) {
      lj["counterexample"] = *law.counterexample;
      s << "        " << *law.counterexample << '\n';
    }
    j["laws"].push_back(lj);
  }
  emit(out, f, j, s.str());
  return r.all_passed() ? kOk : kCheckFailed;
}

json chain_json(const witness::ChainReport& r) {
  json a = json::array();
  for (const auto& c : r.checks)
    a.push_back({{"name", c.name}, {"passed", c.passed}, {"required", c.required}, {"detail", c.detail}});
  return a;
}

void chain_text(std::ostream& s, const std::string& title, const witness::ChainReport& r) {
  s << title << '\n';
  for (const auto& c : r.checks)
    s << (c.passed ? "  pass  " : "  FAIL  ") << (c.required ? "" : "(intermediate) ") << c.name << "   "
      << c.detail << '\n';
}

int cmd_witness(const Flags& f, std::ostream& out) {
  witness::WitnessOptions o;
  o.execution = exec(f);
  if (f.budget) o.max_dim = f.budget;
  if (f.printed) o.ys = witness::YReading::printed;
  if (f.k > 2 && !f.budget)
    throw ConfigError("k > 2 builds a much larger algebra; pass --budget <max dim> to allow it");
  const auto t0 = std::chrono::steady_clock::now();
  const witness::WitnessData w = witness::build_witness(f.k, o);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto phi = witness::verify_phi_chain(w);
  const auto psi = witness::verify_psi_chain(w);
  const auto phi_p = witness::verify_phi_chain(witness::perturb_A1(w));
  const auto psi_p = witness::verify_psi_chain(witness::perturb_x1(w));
  const bool psi_first_broken = !psi_p.checks.front().passed;
  const bool ok = phi.required_passed() && psi.required_passed() && !phi_p.required_passed() && psi_first_broken;

  json j{{"check", "witness.verify_phi_chain+verify_psi_chain"},
         {"k", w.k},
         {"ys", f.printed ? "printed" : "repaired"},
         {"header", header_json(*w.algebra)},
         {"dims", dims_json(*w.algebra)},
         {"phi", chain_json(phi)},
         {"psi", chain_json(psi)},
         {"perturb_A1_breaks_phi", !phi_p.required_passed()},
         {"perturb_x1_breaks_psi_head", psi_first_broken},
         {"passed", ok}};
  std::ostringstream s;
  s << "[witness.build_witness] k=" << w.k << " n=" << w.n << " ys=" << (f.printed ? "printed" : "repaired")
    << " dim=" << w.algebra->dim() << " (" << std::fixed << std::setprecision(1) << secs << "s)\n"
    << "dims by degree: " << dims_text(*w.algebra) << '\n';
  chain_text(s, "[witness.verify_phi_chain] Step 1", phi);
  chain_text(s, "[witness.verify_psi_chain] Step 2", psi);
  s << "[witness.perturb_A1] A1 + b1 breaks phi: " << (!phi_p.required_passed() ? "yes" : "NO") << '\n'
    << "[witness.perturb_x1] x1 + b" << w.k << " breaks f(A2,A3) = f(x1,A1): " << (psi_first_broken ? "yes" : "NO")
    << '\n'
    << (ok ? "all witness checks passed\n" : "witness checks FAILED\n");
  emit(out, f, j, s.str());
  return ok ? kOk : kCheckFailed;
}

int cmd_pipeline(const Flags& f, std::ostream& out) {
  const AlgebraTable t = io::load(f.file);
  const unsigned max_n = f.budget ? static_cast<unsigned>(f.budget) : 16;
  const witness::PipelineReport r = witness::theorem_pipeline(t, max_n, exec(f));
  const bool ok = r.ideal_closed && r.quotient_class <= 2 && r.minimal_n && r.bound_satisfied;
  json j{{"check", "witness.theorem_pipeline"}, {"ideal_dim", r.ideal_dim}, {"ideal_closed", r.ideal_closed},
         {"quotient_class", r.quotient_class}, {"class_of_L", r.class_of_L}, {"bound", r.bound},
         {"bound_satisfied", r.bound_satisfied}, {"passed", ok}};
  j["minimal_n"] = r.minimal_n ? json(*r.minimal_n) : json(nullptr);
  if (r.crucial_1_holds) j["crucial_1_holds"] = *r.crucial_1_holds;
  std::ostringstream s;
  s << "[witness.theorem_pipeline]\n"
    << "  I = span{[x,u,u]}: dim " << r.ideal_dim << ", ideal " << (r.ideal_closed ? "yes" : "NO") << '\n';
  if (r.crucial_1_holds) s << "  crucial_1 on this table: " << (*r.crucial_1_holds ? "holds" : "FAILS") << '\n';
  s << "  class(L/I) = " << r.quotient_class << '\n'
    << "  minimal n with [x,u1^2,...,un^2] = 0: " << (r.minimal_n ? std::to_string(*r.minimal_n) : "not found")
    << '\n'
    << "  class(L) = " << r.class_of_L << ", bound 3+2(n-1) = " << r.bound << ": "
    << (r.bound_satisfied ? "satisfied" : "NOT satisfied") << '\n';
  emit(out, f, j, s.str());
  return ok ? kOk : kCheckFailed;
}

int cmd_probe(const Flags& f, std::ostream& out) {
  const AlgebraTable t = io::load(f.file);
  const std::size_t budget = f.trials ? f.trials : 100000;
  const logic::ProbeResult r = logic::joint_probe(t, f.k, f.l, budget, f.seed, std::nullopt, exec(f));
  json j{{"check", "logic.joint_probe"}, {"k", f.k}, {"l", f.l}, {"trials", r.trials},
         {"seed", hex(r.seed)}, {"found", r.found}};
  std::ostringstream s;
  s << "[logic.joint_probe] phi_" << f.k << " and psi_" << f.l << ", " << r.trials << " trials, seed "
    << hex(r.seed) << ": " << (r.found ? "realisation FOUND" : "none found") << '\n';
  if (r.found) {
    const auto& z = r.realisation->tuple;
    s << "  z0 = " << format_element(t, z.z0) << "\n  z1 = " << format_element(t, z.z1)
      << "\n  z2 = " << format_element(t, z.z2) << "\n  z3 = " << format_element(t, z.z3) << '\n';
  }
  emit(out, f, j, s.str());
  return r.found && f.l > f.k ? kCheckFailed : kOk;
}

int cmd_oracle(const Flags& f, std::ostream& out) {
  const std::vector<std::size_t> od = oracle::oracle_dims(f.p, f.rank, f.engel, f.cap, f.allow_small);
  quotient::BuildOptions o;
  o.p = f.p;
  o.rank = f.rank;
  o.engel_n = f.engel;
  o.class_cap = f.cap;
  o.allow_small_characteristic = f.allow_small;
  o.execution = exec(f);
  const std::vector<std::size_t> qd = quotient::build_quotient(o).dims_by_degree();
  const bool same = od == qd;
  json j{{"check", "oracle.oracle_dims"}, {"oracle", od}, {"quotient", qd}, {"agree", same}};
  auto line = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t d : v) s += (s.empty() ? "" : " ") + std::to_string(d);
    return s;
  };
  std::ostringstream s;
  s << "[oracle.oracle_dims] " << line(od) << "\n[quotient.build_quotient] " << line(qd) << '\n'
    << (same ? "agree\n" : "DISAGREE\n");
  emit(out, f, j, s.str());
  return same ? kOk : kCheckFailed;
}

// Tuple file: four lines "i:c i:c ..." (an empty line is zero), then
// optionally more lines giving injected inner witnesses.
std::vector<LieElement> read_elements(const AlgebraTable& t, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::vector<LieElement> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::istringstream ss(line);
    std::string term;
    std::vector<gf::Entry> e;
    while (ss >> term) {
      const auto colon = term.find(':');
      if (colon == std::string::npos) throw ParseError(n, "expected <index>:<coeff>");
      const unsigned long i = std::stoul(term.substr(0, colon));
      const long c = std::stol(term.substr(colon + 1));
      if (i >= t.dim()) throw ParseError(n, "basis index out of range");
      e.push_back({static_cast<std::uint32_t>(i), t.field().reduce(c)});
    }
    out.push_back(t.element(gf::FpVector::from_entries(t.dim(), std::move(e), t.field())));
  }
  if (out.size() < 4) throw ParseError(n + 1, "tuple file needs four elements z0..z3");
  return out;
}

int cmd_eval(const Flags& f, std::ostream& out) {
  const AlgebraTable t = io::load(f.file);
  const std::vector<LieElement> els = read_elements(t, f.tuple_file);
  logic::FormulaQuery q;
  q.algebra = &t;
  q.k = f.k;
  q.tuple = {els[0], els[1], els[2], els[3]};
  q.mode = f.exhaustive ? logic::Mode::exhaustive : logic::Mode::randomized;
  q.trials = f.trials ? f.trials : 10000;
  q.seed = f.seed;
  q.execution = exec(f);
  if (els.size() > 4) q.injected = std::vector<LieElement>(els.begin() + 4, els.end());
  if (f.formula != "phi" && f.formula != "psi") throw ConfigError("--formula must be phi or psi");
  const logic::FormulaResult r = f.formula == "phi" ? logic::eval_phi(q) : logic::eval_psi(q);
  json j{{"check", "logic.eval_" + f.formula}, {"k", f.k}, {"verdict", logic::verdict_name(r.verdict)},
         {"how", r.how}, {"trials", r.trials}, {"seed", hex(r.seed)}};
  std::ostringstream s;
  s << "[logic.eval_" << f.formula << "] k=" << f.k << ": " << logic::verdict_name(r.verdict) << " (" << r.how;
  if (r.how == "randomized") s << ", " << r.trials << " trials, seed " << hex(r.seed);
  s << ")\n";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    j["witnesses"].push_back(format_element(t, r.witnesses[i]));
    s << "  w" << i + 1 << " = " << format_element(t, r.witnesses[i]) << '\n';
  }
  emit(out, f, j, s.str());
  return r.verdict == logic::Verdict::unknown ? kBudget : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Engel Lie algebras over prime fields: tables, identities and witnesses", "engel"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* c) {
    c->add_option("--seed", f.seed, "random seed");
    c->add_option("--trials", f.trials, "sample or trial count");
    c->add_option("--budget", f.budget, "resource budget (max dim, max n)");
    c->add_flag("--json", f.as_json, "print the report as JSON");
    c->add_flag("--serial", f.serial, "use the serial reference paths");
  };
  auto algebra_flags = [&](CLI::App* c) {
    c->add_option("--p", f.p, "characteristic");
    c->add_option("--rank", f.rank, "number of generators");
    c->add_option("--engel", f.engel, "Engel degree n (0: free)");
    c->add_option("--cap", f.cap, "class cap");
    c->add_flag("--allow-small", f.allow_small, "allow n >= p (partial linearizations)");
  };
  auto table_arg = [&](CLI::App* c) { c->add_option("table", f.file, "table file")->required(); };

  CLI::App* free = app.add_subcommand("free", "build a free n-Engel table");
  algebra_flags(free);
  free->add_option("--mdegcap", f.mdegcap, "per-generator weight cap");
  free->add_option("--out", f.out_path, "write the table here");
  common(free);

  CLI::App* cls = app.add_subcommand("class", "nilpotency class of a table");
  table_arg(cls);
  common(cls);

  CLI::App* check = app.add_subcommand("check", "verify an operator identity");
  table_arg(check);
  check->add_option("--id", f.id, "identity name")->required();
  check->add_flag("--force", f.force, "run outside the stated characteristic");
  common(check);

  CLI::App* tr = app.add_subcommand("traustason", "[[I(a),I(a)],I(a)] = 0 for basis and random a");
  table_arg(tr);
  common(tr);

  CLI::App* fl = app.add_subcommand("flaws", "laws of the maps B, q, f");
  table_arg(fl);
  common(fl);

  CLI::App* wit = app.add_subcommand("witness", "build and verify the phi_k / psi_k witnesses");
  wit->add_option("--k", f.k, "k >= 2");
  wit->add_flag("--printed", f.printed, "use the y_i exactly as printed");
  common(wit);

  CLI::App* pipe = app.add_subcommand("pipeline", "nilpotency bound pipeline");
  table_arg(pipe);
  common(pipe);

  CLI::App* probe = app.add_subcommand("probe", "randomized joint probe for phi_k and psi_l");
  table_arg(probe);
  probe->add_option("--k", f.k, "k");
  probe->add_option("--l", f.l, "l");
  common(probe);

  CLI::App* orc = app.add_subcommand("oracle", "compare per-degree dims with the associative oracle");
  algebra_flags(orc);
  common(orc);

  CLI::App* ev = app.add_subcommand("eval", "evaluate phi_k or psi_k on a tuple");
  table_arg(ev);
  ev->add_option("--tuple", f.tuple_file, "tuple file")->required();
  ev->add_option("--k", f.k, "k");
  ev->add_option("--formula", f.formula, "phi or psi");
  ev->add_flag("--exhaustive", f.exhaustive, "exhaustive search (bounded)");
  common(ev);

  std::vector<std::string> store = args;
  std::vector<char*> argv;
  static char prog[] = "engel";
  argv.push_back(prog);
  for (std::string& s : store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*free) return cmd_free(f, out);
    if (*cls) return cmd_class(f, out);
    if (*check) return cmd_check(f, out);
    if (*tr) return cmd_traustason(f, out);
    if (*fl) return cmd_flaws(f, out);
    if (*wit) return cmd_witness(f, out);
    if (*pipe) return cmd_pipeline(f, out);
    if (*probe) return cmd_probe(f, out);
    if (*orc) return cmd_oracle(f, out);
    if (*ev) return cmd_eval(f, out);
  } catch (const BudgetError& e) {
    err << "budget: " << e.what() << '\n';
    return kBudget;
  } catch (const Inconclusive& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kBudget;
  } catch (const InvariantError& e) {
    err << "invariant: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace engel::cli
