#include "CLI11.hpp"
#include "json.hpp"

#include "wb/godel.hpp"
#include "wb/janiczak.hpp"
#include "wb/machine.hpp"
#include "wb/proptheory.hpp"
#include "wb/pvx.hpp"
#include "wb/resets.hpp"
#include "wb/theories.hpp"
#include "wb/theoryalg.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace wb;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "wb-cli 1.0 (schema 1)";

enum Exit { kOk = 0, kUsage = 2, kUnknown = 3 };

struct Options {
  std::uint64_t fuel = 10000;
  std::uint64_t bound = 20;
  std::uint64_t seed = 0;
  bool json = false;
};

// Every command fills one of these; printed as text or as the JSON certificate.
struct Report {
  std::string command;
  json inputs = json::object();
  std::optional<std::string> verdict;
  json value;
  json evidence = json::array();
  std::vector<std::string> lines;
  int exit = kOk;

  void unknown(const std::string& why) {
    verdict = "unknown";
    lines.push_back("unknown: " + why);
    evidence.push_back(why);
    exit = kUnknown;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json nat_json(const Nat& n) {
  if (auto v = to_u64(n)) return *v;
  return to_string(n);
}

json nats_json(const std::vector<Nat>& v) {
  json out = json::array();
  for (const auto& n : v) out.push_back(nat_json(n));
  return out;
}

std::string join(const std::vector<Nat>& v, std::size_t limit = 50) {
  std::string out;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) out += (i ? " " : "") + to_string(v[i]);
  if (v.size() > limit) out += " ...";
  return out;
}

Nat nat_arg(const std::string& s, const std::string& what) {
  try {
    return parse_nat(s);
  } catch (const std::invalid_argument&) {
    throw UsageError(what + ": not a natural number: '" + s + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A program given either as an index or as a file of instructions.
Nat program_arg(const std::string& s) {
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    return parse_nat(s);
  return machine::encode(machine::parse_program(read_file(s)));
}

theoryalg::TheoryPresentation theory_arg(const std::string& s) {
  if (std::filesystem::exists(s)) return theoryalg::load_thy(s);
  try {
    return theoryalg::scheme(s);
  } catch (const std::invalid_argument&) {
    throw UsageError("no theory file or scheme named '" + s + "'");
  }
}

folog::Formula sentence_arg(const std::string& file, const std::string& text, const folog::Signature& sig) {
  if (file.empty() == text.empty()) throw UsageError("give exactly one of --sentence FILE or --formula TEXT");
  return folog::parse_formula(file.empty() ? text : read_file(file), sig);
}

std::string verdict_text(TriState t) { return std::string(to_string(t)); }

// Oracle from an enumeration prefix of W_e at the given fuel.
resets::OracleHandle prefix_oracle(const Nat& e, machine::Fuel fuel, const std::string& label) {
  auto p = resets::enumerate_without_reps(e, fuel);
  std::set<Nat> members(p.elements.begin(), p.elements.end());
  return {label, [members](const Nat& x) { return members.count(x) != 0; }};
}

resets::OracleHandle list_oracle(const std::vector<std::string>& items, const std::string& label) {
  std::set<Nat> members;
  for (const auto& s : items) members.insert(nat_arg(s, label));
  return {label, [members](const Nat& x) { return members.count(x) != 0; }};
}

void emit(const Report& r, const Options& o) {
  if (o.json) {
    json out;
    out["command"] = r.command;
    out["inputs"] = r.inputs;
    out["inputs"]["seed"] = o.seed;
    out["inputs"]["bound"] = o.bound;
    out["fuel"] = o.fuel;
    if (r.verdict)
      out["verdict"] = *r.verdict;
    else
      out["value"] = r.value;
    out["evidence"] = r.evidence;
    out["version"] = kVersion;
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (const auto& l : r.lines) std::cout << l << "\n";
}

// ---- machine ----

void cmd_run(Report& r, const Options& o, const std::string& prog, const std::string& input) {
  Nat e = program_arg(prog), x = nat_arg(input, "input");
  r.inputs = {{"e", nat_json(e)}, {"x", nat_json(x)}};
  auto res = machine::run(e, x, machine::Fuel{o.fuel});
  if (auto* h = std::get_if<machine::Halted>(&res)) {
    r.verdict = "halted";
    r.evidence.push_back({{"steps", h->steps}, {"output", nat_json(h->output)}});
    r.lines.push_back("halted after " + std::to_string(h->steps) + " steps, output " + to_string(h->output));
  } else {
    r.unknown("no halt within " + std::to_string(o.fuel) + " steps");
  }
}

void cmd_t1(Report& r, const std::string& prog, const std::string& input, const std::string& y) {
  Nat e = program_arg(prog), x = nat_arg(input, "input");
  std::uint64_t steps = saturate_u64(nat_arg(y, "y"));
  r.inputs = {{"e", nat_json(e)}, {"x", nat_json(x)}, {"y", steps}};
  bool v = machine::t1(e, x, steps);
  r.verdict = v ? "true" : "false";
  r.lines.push_back(*r.verdict);
}

void cmd_pair(Report& r, const std::string& a, const std::string& b) {
  Nat x = nat_arg(a, "x"), y = nat_arg(b, "y");
  r.inputs = {{"x", nat_json(x)}, {"y", nat_json(y)}};
  Nat z = pair(x, y);
  r.value = nat_json(z);
  r.lines.push_back(to_string(z));
}

void cmd_enum(Report& r, const Options& o, const std::string& prog) {
  Nat e = program_arg(prog);
  r.inputs = {{"e", nat_json(e)}};
  auto p = resets::enumerate_without_reps(e, machine::Fuel{o.fuel});
  std::vector<Nat> shown(p.elements.begin(), p.elements.begin() + std::min<std::size_t>(p.elements.size(), o.bound));
  r.value = nats_json(shown);
  r.evidence.push_back({{"listed", p.elements.size()}, {"stages", json(std::vector<std::uint64_t>(
                                                                       p.stages.begin(), p.stages.begin() + shown.size()))}});
  r.lines.push_back(std::to_string(p.elements.size()) + " listed: " + join(shown, o.bound));
}

// ---- resets ----

void cmd_shoenfield(Report& r, const Options& o, const std::string& prog) {
  Nat e = program_arg(prog);
  auto sp = resets::shoenfield_pair(e);
  r.inputs = {{"e", nat_json(e)}};
  auto b = resets::enumerate_without_reps(sp.iB, machine::Fuel{o.fuel}).elements;
  auto c = resets::enumerate_without_reps(sp.iC, machine::Fuel{o.fuel}).elements;
  std::set<Nat> in_b(b.begin(), b.end());
  bool disjoint = std::none_of(c.begin(), c.end(), [&](const Nat& x) { return in_b.count(x) != 0; });
  r.evidence.push_back({{"B_listed", b.size()}, {"C_listed", c.size()}});
  if (b.size() > o.bound) b.resize(o.bound);
  if (c.size() > o.bound) c.resize(o.bound);
  r.value = {{"iB", nat_json(sp.iB)}, {"iC", nat_json(sp.iC)}, {"prefixB", nats_json(b)}, {"prefixC", nats_json(c)},
             {"disjoint", disjoint}};
  r.lines.push_back("iB = " + to_string(sp.iB));
  r.lines.push_back("iC = " + to_string(sp.iC));
  r.lines.push_back("B: " + join(b));
  r.lines.push_back("C: " + join(c));
  r.lines.push_back(disjoint ? "prefixes disjoint" : "prefixes NOT disjoint");
}

void cmd_separator(Report& r, const Options& o, const std::string& prog, std::uint64_t modulus, std::uint64_t residue) {
  Nat e = program_arg(prog);
  auto sp = resets::shoenfield_pair(e);
  r.inputs = {{"e", nat_json(e)}, {"candidate", "x mod " + std::to_string(modulus) + " == " + std::to_string(residue)}};
  resets::OracleHandle cand{"mod", [=](const Nat& x) { return x % modulus == residue; }};
  auto v = resets::test_separator(sp.iB, sp.iC, cand, o.bound, machine::Fuel{o.fuel});
  if (std::holds_alternative<resets::Pass>(v)) {
    r.verdict = "pass";
    r.lines.push_back("pass (no counterexample up to " + std::to_string(o.bound) + ")");
  } else {
    const auto& c = std::get<resets::Counterexample>(v);
    r.verdict = "counterexample";
    r.evidence.push_back({{"x", nat_json(c.x)}, {"certified_in", c.in_b ? "B" : "C"}});
    r.lines.push_back("counterexample x = " + to_string(c.x) + (c.in_b ? " (in B, rejected)" : " (in C, accepted)"));
  }
}

// ---- janiczak ----

void cmd_qe(Report& r, const std::string& file, const std::string& text) {
  auto f = sentence_arg(file, text, folog::signature_J());
  r.inputs = {{"sentence", folog::print(f)}};
  auto b = janiczak::qe(f).reduced();
  r.value = b.to_string();
  // Satisfying profiles: for each true row, the atoms n with Phi_n true.
  json profiles = json::array();
  for (std::size_t row = 0; row < b.table().size(); ++row) {
    if (!b.table()[row]) continue;
    json on = json::array();
    for (std::size_t i = 0; i < b.atoms().size(); ++i)
      if (row >> i & 1) on.push_back(nat_json(b.atoms()[i]));
    profiles.push_back(on);
  }
  r.evidence.push_back({{"support", nats_json(b.support())},
                        {"sup_plus", nat_json(b.sup_plus())},
                        {"profiles", profiles}});
  r.lines.push_back(b.to_string());
}

janiczak::Pins parse_pins(const std::vector<std::string>& items) {
  janiczak::Pins pins;
  for (const auto& s : items) {
    bool neg = !s.empty() && (s[0] == '-' || s[0] == '~');
    pins[nat_arg(neg ? s.substr(1) : s, "--pin")] = !neg;
  }
  return pins;
}

void cmd_decide_j(Report& r, const std::string& file, const std::string& text, const std::vector<std::string>& pins) {
  auto f = sentence_arg(file, text, folog::signature_J());
  auto p = parse_pins(pins);
  r.inputs = {{"sentence", folog::print(f)}, {"pins", pins}};
  auto b = janiczak::qe(f);
  TriState t = janiczak::decide_combo(b, p);
  r.verdict = verdict_text(t);
  r.evidence.push_back({{"combo", b.reduced().to_string()}});
  r.lines.push_back(*r.verdict);
}

void cmd_tbc(Report& r, const Options& o, const std::string& ib, const std::string& ic, const std::string& file,
             const std::string& text) {
  Nat iB = program_arg(ib), iC = program_arg(ic);
  machine::Fuel fuel{o.fuel};
  r.inputs = {{"iB", nat_json(iB)}, {"iC", nat_json(iC)}};
  if (file.empty() && text.empty()) {
    auto codes = janiczak::tbc_enumerate(iB, iC, fuel);
    if (codes.size() > o.bound) codes.resize(o.bound);
    r.value = nats_json(codes);
    r.lines.push_back("theorem codes: " + join(codes));
    return;
  }
  auto f = sentence_arg(file, text, folog::signature_J());
  r.inputs["sentence"] = folog::print(f);
  auto d = janiczak::tbc_decide(f, prefix_oracle(iB, fuel, "B"), prefix_oracle(iC, fuel, "C"));
  r.verdict = verdict_text(d.verdict);
  json lits = json::object();
  for (const auto& [n, v] : d.literals_used) lits[to_string(n)] = v;
  r.evidence.push_back({{"literals_used", lits}});
  r.lines.push_back(*r.verdict);
}

// ---- theory algebra ----

void print_axioms(Report& r, const theoryalg::TheoryPresentation& t, std::uint64_t k) {
  json ax = json::array();
  for (const auto& f : t.prefix(k)) {
    ax.push_back(folog::print(f));
    r.lines.push_back(folog::print(f));
  }
  r.value = {{"signature", t.signature.header()}, {"axioms", ax}};
}

void cmd_theory(Report& r, const Options& o, const std::string& op, const std::vector<std::string>& files,
                const std::string& sample_file, std::uint64_t emit_k) {
  auto need = [&](std::size_t n) {
    if (files.size() != n) throw UsageError("theory " + op + " takes " + std::to_string(n) + " theories");
  };
  r.inputs = {{"op", op}, {"theories", files}};
  if (op == "oplus" || op == "otimes") {
    need(2);
    auto a = theory_arg(files[0]), b = theory_arg(files[1]);
    print_axioms(r, op == "oplus" ? theoryalg::infimum(a, b) : theoryalg::supremum(a, b), emit_k);
    return;
  }
  auto a = (need(op == "split" ? 2 : 1), theory_arg(files[0]));
  // X = the first 2*bound axioms of the theory under test.
  auto accept_prefix = [](std::vector<folog::Formula> ax, std::string label) {
    return theoryalg::SentenceSetOracle{label, [ax](const folog::Formula& f) {
                                          return std::find(ax.begin(), ax.end(), f) != ax.end();
                                        }};
  };
  if (op == "split") {
    auto b = theory_arg(files[1]);
    auto inf = theoryalg::infimum(a, b);
    auto parts = theoryalg::oplus_split(accept_prefix(inf.prefix(2 * o.bound), "oplus prefix"));
    std::uint64_t ok0 = 0, ok1 = 0;
    auto pa = a.prefix(o.bound), pb = b.prefix(o.bound);
    for (const auto& f : pa) ok0 += parts.c0(f);
    for (const auto& f : pb) ok1 += parts.c1(f);
    bool pass = ok0 == pa.size() && ok1 == pb.size();
    r.verdict = pass ? "pass" : "fail";
    r.evidence.push_back({{"left_recovered", ok0}, {"left_total", pa.size()}, {"right_recovered", ok1},
                          {"right_total", pb.size()}});
    r.lines.push_back("left " + std::to_string(ok0) + "/" + std::to_string(pa.size()) + ", right " +
                      std::to_string(ok1) + "/" + std::to_string(pb.size()) + ": " + *r.verdict);
    return;
  }
  if (op == "pullback") {
    // X = image of the prefix under the identity translation; Y must give the prefix back.
    auto id = folog::Translation::identity(a.signature);
    auto ax = a.prefix(o.bound);
    std::vector<folog::Formula> image;
    for (const auto& f : ax) image.push_back(folog::translate(f, id));
    auto y = theoryalg::pullback(accept_prefix(image, "image"), id);
    std::uint64_t kept = 0;
    for (const auto& f : ax) kept += y(f);
    r.verdict = kept == ax.size() ? "pass" : "fail";
    r.evidence.push_back({{"kept", kept}, {"total", ax.size()}});
    r.lines.push_back("identity pullback keeps " + std::to_string(kept) + "/" + std::to_string(ax.size()));
    return;
  }
  if (op == "probe") {
    auto ax = a.prefix(o.bound);
    std::vector<folog::Formula> samples = ax;
    if (!sample_file.empty()) {
      std::istringstream in(read_file(sample_file));
      for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != ';') samples.push_back(folog::parse_formula(line, a.signature));
    }
    auto v = theoryalg::closure_probe(accept_prefix(ax, "prefix"), samples, machine::Fuel{o.fuel});
    if (std::holds_alternative<theoryalg::ClosurePass>(v)) {
      r.verdict = "pass";
      r.lines.push_back("pass");
    } else {
      const auto& c = std::get<theoryalg::ClosureViolation>(v);
      r.verdict = "violation";
      json w = json::array();
      for (const auto& f : c.witnesses) w.push_back(folog::print(f));
      r.evidence.push_back({{"kind", theoryalg::to_string(c.kind)}, {"witnesses", w}});
      r.lines.push_back(theoryalg::to_string(c.kind) + " violation");
      for (const auto& f : c.witnesses) r.lines.push_back("  " + folog::print(f));
    }
    return;
  }
  throw UsageError("unknown theory operation '" + op + "'");
}

// ---- propositional ----

void cmd_prop(Report& r, const Options& o, const std::string& op, const std::string& formula,
              const std::vector<std::string>& b, const std::vector<std::string>& c, const std::string& ib,
              const std::string& ic, const std::string& source) {
  r.inputs = {{"op", op}};
  if (op == "decide") {
    if (formula.empty()) throw UsageError("prop decide needs --formula (or --sentence)");
    auto f = proptheory::parse_prop(formula);
    r.inputs.update({{"formula", proptheory::print(f)}, {"B", b}, {"C", c}});
    proptheory::UDecision d;
    if (!source.empty()) {
      if (!b.empty() || !c.empty()) throw UsageError("give either --source or --b/--c");
      auto sp = resets::shoenfield_pair(program_arg(source));
      machine::Fuel fuel{o.fuel};
      r.inputs["source"] = source;
      d = proptheory::u_decide(f, prefix_oracle(sp.iB, fuel, "B"), prefix_oracle(sp.iC, fuel, "C"));
    } else {
      d = proptheory::u_decide(f, list_oracle(b, "--b"), list_oracle(c, "--c"));
    }
    r.verdict = verdict_text(d.verdict);
    json pins = json::object();
    for (const auto& [n, v] : d.pins) pins[to_string(n)] = v;
    r.evidence.push_back({{"pins", pins}});
    r.lines.push_back(*r.verdict);
    return;
  }
  if (op == "probe") {
    if (ib.empty() || ic.empty()) throw UsageError("prop probe needs --ib and --ic");
    Nat iB = program_arg(ib), iC = program_arg(ic);
    r.inputs.update({{"iB", nat_json(iB)}, {"iC", nat_json(iC)}});
    proptheory::TheoremEnumerator ext = [&](machine::Fuel f) { return proptheory::u_enumerate(iB, iC, f); };
    auto p = proptheory::incompleteness_probe(ext, o.bound, machine::Fuel{o.fuel});
    if (auto* u = std::get_if<proptheory::Undecided>(&p)) {
      r.verdict = "undecided";
      r.value = nat_json(u->n);
      r.evidence.push_back({{"n", nat_json(u->n)}});
      r.lines.push_back("undecided: p" + to_string(u->n));
    } else {
      r.verdict = "all-decided";
      r.lines.push_back("every p_n with n <= " + std::to_string(o.bound) + " decided");
    }
    return;
  }
  throw UsageError("unknown prop operation '" + op + "'");
}

// ---- pvx ----

json record_json(const pvx::StepRecord& s) {
  return {{"n", s.n},
          {"i", nat_json(s.i)},
          {"j", nat_json(s.representative)},
          {"mask", nat_json(s.mask)},
          {"m", s.m},
          {"theorem", folog::print(s.theorem)},
          {"proof_steps", s.proof.steps.size()},
          {"translated_size", folog::formula_size(s.translated)},
          {"combo_support", nats_json(s.support)},
          {"t", nat_json(s.t)}};
}

void cmd_pvx(Report& r, const Options& o, const std::string& op, const std::string& theory, std::uint64_t upto,
             std::uint64_t emit_k, const std::vector<std::string>& args) {
  r.inputs = {{"op", op}};
  if (op == "h") {
    if (args.size() != 2) throw UsageError("pvx h takes i j");
    Nat i = program_arg(args[0]), j = program_arg(args[1]);
    auto h = pvx::h_ei(i, j);
    r.inputs.update({{"i", nat_json(i)}, {"j", nat_json(j)}});
    r.value = nat_json(h.code);
    r.evidence.push_back({{"witness", nat_json(h.witness)}});
    r.lines.push_back("h = " + to_string(h.code) + " (code of Phi_" + to_string(h.witness) + ")");
    return;
  }
  if (op == "s-index") {
    if (args.size() != 1) throw UsageError("pvx s-index takes e");
    Nat e = program_arg(args[0]);
    r.inputs["e"] = nat_json(e);
    Nat s = pvx::s_index(e);
    r.value = nat_json(s);
    r.lines.push_back(to_string(s));
    return;
  }
  auto u = theory_arg(theory);
  r.inputs["theory"] = u.name;
  pvx::Construction c(u, machine::Fuel{o.fuel});
  if (op == "F") {
    r.inputs["upto"] = upto;
    auto cert = c.certificate(upto);
    if (!cert) {
      json partial = json::array();
      for (std::uint64_t k = 0; k <= upto; ++k) {
        auto v = c.big_F(k);
        if (!v) break;
        partial.push_back(nat_json(*v));
        r.lines.push_back("F(" + std::to_string(k) + ")=" + to_string(*v));
      }
      r.evidence.push_back({{"computed", partial}});
      r.unknown("F(" + std::to_string(partial.size()) + ") not reached within fuel");
      return;
    }
    r.value = nats_json(cert->values);
    for (std::size_t k = 0; k < cert->values.size(); ++k)
      r.lines.push_back("F(" + std::to_string(k) + ")=" + to_string(cert->values[k]));
    for (const auto& s : cert->records) r.evidence.push_back(record_json(s));
    bool ok = pvx::verify_certificate(*cert, u, machine::Fuel{o.fuel});
    r.evidence.push_back({{"certificate_verified", ok}});
    r.lines.push_back(std::string("certificate ") + (ok ? "verified" : "REJECTED"));
    return;
  }
  if (op == "weaker") {
    r.inputs["emit"] = emit_k;
    auto p = pvx::ei_pair_in_X(c, machine::Fuel{o.fuel});
    r.evidence.push_back({{"Y", nats_json(p.y)}, {"Z", nats_json(p.z)}, {"pending", nats_json(p.pending)}});
    print_axioms(r, theoryalg::infimum(u, pvx::build_V(p.y, p.z)), emit_k);
    return;
  }
  throw UsageError("unknown pvx operation '" + op + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuel-bounded computability and theory constructions"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--fuel", o.fuel, "step / addition budget")->check(CLI::PositiveNumber);
  app.add_option("--bound", o.bound, "listing or search bound")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "seed (reported; every command is deterministic)");
  app.add_flag("--json", o.json, "emit a JSON certificate");
  app.fallthrough();

  Report r;
  std::function<void()> action;
  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  std::string a1, a2, a3, file, text, source, left, right;
  std::vector<std::string> list1, list2, rest;
  std::uint64_t modulus = 2, residue = 0, upto = 0, emit_k = 10;

  auto* run = sub("run", "run program e on x");
  run->add_option("e", a1, "index or program file")->required();
  run->add_option("x", a2)->required();
  run->callback([&] { action = [&] { cmd_run(r, o, a1, a2); }; });

  auto* t1 = sub("t1", "Kleene predicate t1(e, x, y)");
  t1->add_option("e", a1)->required();
  t1->add_option("x", a2)->required();
  t1->add_option("y", a3)->required();
  t1->callback([&] { action = [&] { cmd_t1(r, a1, a2, a3); }; });

  auto* pr = sub("pair", "Cantor pairing");
  pr->add_option("x", a1)->required();
  pr->add_option("y", a2)->required();
  pr->callback([&] { action = [&] { cmd_pair(r, a1, a2); }; });

  auto* en = sub("enum", "list W_e without repetitions");
  en->add_option("e", a1)->required();
  en->callback([&] { action = [&] { cmd_enum(r, o, a1); }; });

  auto* sh = sub("shoenfield", "Shoenfield pair of W_e");
  auto* sh_e = sh->add_option("e", a1, "index or program file");
  sh->add_option("--source", a1, "same as e")->excludes(sh_e);
  sh->callback([&] {
    if (a1.empty()) throw CLI::RequiredError("e or --source");
    action = [&] { cmd_shoenfield(r, o, a1); };
  });

  auto* sep = sub("separator", "test 'x mod k == r' as a separator of the Shoenfield pair");
  sep->add_option("e", a1)->required();
  sep->add_option("--modulus", modulus)->check(CLI::PositiveNumber);
  sep->add_option("--residue", residue);
  sep->callback([&] { action = [&] { cmd_separator(r, o, a1, modulus, residue); }; });

  auto* qe = sub("qe", "quantifier elimination over J");
  qe->add_option("--sentence", file, "s-expression file");
  qe->add_option("--formula", text, "s-expression text");
  qe->callback([&] { action = [&] { cmd_qe(r, file, text); }; });

  auto* dj = sub("decide-j", "decide a sentence in J plus pinned literals");
  dj->add_option("--sentence", file);
  dj->add_option("--formula", text);
  dj->add_option("--pin", list1, "n or -n: Phi_n or its negation");
  dj->callback([&] { action = [&] { cmd_decide_j(r, file, text, list1); }; });

  auto* tbc = sub("tbc", "T_(B,C): decide a sentence, or list theorem codes");
  auto* tbc_b = tbc->add_option("index_B", a1, "index of B");
  auto* tbc_c = tbc->add_option("index_C", a2, "index of C");
  tbc->add_option("--iB", a1, "same as index_B")->excludes(tbc_b);
  tbc->add_option("--iC", a2, "same as index_C")->excludes(tbc_c);
  tbc->add_option("--sentence", file);
  tbc->add_option("--formula", text);
  tbc->callback([&] {
    if (a1.empty() || a2.empty()) throw CLI::RequiredError("iB and iC");
    action = [&] { cmd_tbc(r, o, a1, a2, file, text); };
  });

  auto* th = sub("theory", "theory algebra: oplus, otimes, split, pullback, probe");
  th->add_option("op", a1)->required()->check(CLI::IsMember({"oplus", "otimes", "split", "pullback", "probe"}));
  th->add_option("theories", list1, ".thy files or Q/R/J/VS");
  th->add_option("--left", left, "first theory (before the positional ones)");
  th->add_option("--right", right, "second theory");
  auto* th_emit = th->add_option("--emit", emit_k, "axioms to print for oplus/otimes (default --bound)");
  th->add_option("--samples", file, "extra sample sentences for probe, one per line");
  th->callback([&] {
    std::vector<std::string> named;
    if (!left.empty()) named.push_back(left);
    if (!right.empty()) named.push_back(right);
    list1.insert(list1.begin(), named.begin(), named.end());
    if (list1.empty()) throw CLI::RequiredError("theories");
    action = [&] { cmd_theory(r, o, a1, list1, file, th_emit->count() > 0 ? emit_k : o.bound); };
  });

  auto* pp = sub("prop", "propositional U_d: decide, probe");
  pp->add_option("op", a1)->required()->check(CLI::IsMember({"decide", "probe"}));
  pp->add_option("--formula,--sentence", text, "propositional formula, e.g. (or p0 (not p0))");
  pp->add_option("--source", source, "W_e whose Shoenfield pair supplies B and C");
  pp->add_option("--b", list1, "members of B");
  pp->add_option("--c", list2, "members of C");
  pp->add_option("--ib", a2, "index of B");
  pp->add_option("--ic", a3, "index of C");
  pp->callback([&] { action = [&] { cmd_prop(r, o, a1, text, list1, list2, a2, a3, source); }; });

  auto* pv = sub("pvx", "the X / EI pair / weaker theory construction: F, weaker, h, s-index");
  pv->add_option("op", a1)->required()->check(CLI::IsMember({"F", "weaker", "h", "s-index"}));
  pv->add_option("args", rest);
  pv->add_option("--theory", a2, ".thy file or scheme name")->default_val("Q");
  pv->add_option("--upto", upto);
  pv->add_option("--emit", emit_k);
  pv->callback([&] { action = [&] { cmd_pvx(r, o, a1, a2, upto, emit_k, rest); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  r.command = app.get_subcommands().front()->get_name();
  try {
    action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const folog::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const folog::SignatureError& e) {
    std::cerr << "signature error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  emit(r, o);
  return r.exit;
}
