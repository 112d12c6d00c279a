#include "wb/machine.hpp"

#include "builtins.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wb::machine {

namespace {

constexpr unsigned kTagConst = 0;
constexpr unsigned kTagSmn = 1;
constexpr unsigned kTagInterp = 2;
constexpr unsigned kTagFiniteSet = 3;

Nat encode_instruction(const Instruction& ins) {
  return std::visit(
      [](const auto& i) -> Nat {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, Halt>) {
          return 0;
        } else if constexpr (std::is_same_v<T, Inc>) {
          return 1 + 2 * i.reg;
        } else {
          return 2 + 2 * pair(i.reg, i.target);
        }
      },
      ins);
}

Instruction decode_instruction(const Nat& c) {
  if (c == 0) return Halt{};
  Nat k = c - 1;
  if (k % 2 == 0) return Inc{k / 2};
  auto [r, t] = unpair(k / 2);
  return DecJz{r, t};
}

Nat odd_index(unsigned tag, const Nat& arg) { return 2 * pair(Nat(tag), arg) + 1; }

// Compiled form of a raw program: registers renumbered densely, jump
// targets clamped to the program length (= halt).
struct Compiled {
  enum class Op : std::uint8_t { Inc, DecJz, Halt };
  struct Ins {
    Op op;
    std::uint32_t reg;
    std::uint32_t target;
  };
  std::vector<Ins> code;
  std::uint32_t input_slot = 0;
  std::uint32_t slots = 1;
};

Compiled compile(const RawProgram& p) {
  Compiled c;
  std::map<Nat, std::uint32_t> slot_of;
  slot_of.emplace(Nat(0), 0);
  auto slot = [&](const Nat& r) {
    auto [it, fresh] = slot_of.emplace(r, static_cast<std::uint32_t>(slot_of.size()));
    (void)fresh;
    return it->second;
  };
  const auto n = static_cast<std::uint32_t>(p.code.size());
  for (const auto& ins : p.code) {
    if (std::holds_alternative<Halt>(ins)) {
      c.code.push_back({Compiled::Op::Halt, 0, 0});
    } else if (const auto* inc = std::get_if<Inc>(&ins)) {
      c.code.push_back({Compiled::Op::Inc, slot(inc->reg), 0});
    } else {
      const auto& d = std::get<DecJz>(ins);
      std::uint32_t target = d.target >= n ? n : static_cast<std::uint32_t>(d.target);
      c.code.push_back({Compiled::Op::DecJz, slot(d.reg), target});
    }
  }
  c.slots = static_cast<std::uint32_t>(slot_of.size());
  return c;
}

detail::Exec exec_raw(const RawProgram& p, const Nat& x, std::uint64_t limit) {
  const Compiled c = compile(p);
  std::vector<Nat> regs(c.slots);
  regs[0] = x;
  std::uint64_t steps = 0;
  std::size_t pc = 0;
  const std::size_t n = c.code.size();
  while (pc < n) {
    const auto& ins = c.code[pc];
    if (ins.op == Compiled::Op::Halt) break;
    if (steps == limit) return {false, limit, 0};
    ++steps;
    if (ins.op == Compiled::Op::Inc) {
      ++regs[ins.reg];
      ++pc;
    } else if (regs[ins.reg] == 0) {
      pc = ins.target;
    } else {
      --regs[ins.reg];
      ++pc;
    }
  }
  return {true, steps, std::move(regs[0])};
}

detail::Exec exec_finite_set(const Nat& mask, const Nat& x, std::uint64_t limit) {
  if (limit == 0) return {false, 0, 0};
  if (mask > 0 && x <= boost::multiprecision::msb(mask) &&
      boost::multiprecision::bit_test(mask, static_cast<unsigned>(x)))
    return {true, 1, 0};
  return {false, limit, 0};
}

}  // namespace

Nat encode(std::span<const Instruction> code) {
  Nat list = 0;
  for (auto it = code.rbegin(); it != code.rend(); ++it) list = 1 + pair(encode_instruction(*it), list);
  return 2 * list;
}

Nat encode(const Program& p) {
  return std::visit(
      [](const auto& q) -> Nat {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, RawProgram>) {
          return encode(std::span<const Instruction>(q.code));
        } else if constexpr (std::is_same_v<T, ConstProgram>) {
          return odd_index(kTagConst, q.value);
        } else if constexpr (std::is_same_v<T, SmnProgram>) {
          return odd_index(kTagSmn, pair(q.inner, q.fixed));
        } else if constexpr (std::is_same_v<T, InterpProgram>) {
          return odd_index(kTagInterp, q.id);
        } else {
          return odd_index(kTagFiniteSet, q.mask);
        }
      },
      p);
}

Program decode(const Nat& e) {
  if (e % 2 == 0) {
    RawProgram raw;
    Nat list = e / 2;
    while (list != 0) {
      auto [head, tail] = unpair(list - 1);
      raw.code.push_back(decode_instruction(head));
      list = std::move(tail);
    }
    return raw;
  }
  auto [tag, arg] = unpair((e - 1) / 2);
  if (tag == kTagConst) return ConstProgram{arg};
  if (tag == kTagSmn) {
    auto [inner, fixed] = unpair(arg);
    return SmnProgram{inner, fixed};
  }
  if (tag == kTagInterp) return InterpProgram{arg};
  if (tag == kTagFiniteSet) return FiniteSetProgram{arg};
  return RawProgram{};
}

namespace detail {

Exec exec(const Program& p, const Nat& x, std::uint64_t limit) {
  if (const auto* raw = std::get_if<RawProgram>(&p)) return exec_raw(*raw, x, limit);
  if (const auto* c = std::get_if<ConstProgram>(&p)) {
    if (limit == 0) return {false, 0, 0};
    return {true, 1, c->value};
  }
  if (const auto* s = std::get_if<SmnProgram>(&p)) {
    if (limit == 0) return {false, 0, 0};
    Exec inner = exec(s->inner, pair(s->fixed, x), limit - 1);
    inner.steps += 1;
    return inner;
  }
  if (const auto* i = std::get_if<InterpProgram>(&p)) return run_interpreter(i->id, x, limit);
  return exec_finite_set(std::get<FiniteSetProgram>(p).mask, x, limit);
}

}  // namespace detail

namespace {

// Callers tend to run the same index many times in a row (t1 scans,
// enumerations), and decoding costs more than a short run.
const Program& decoded(const Nat& e) {
  struct Slot {
    Nat index;
    Program program;
  };
  constexpr std::size_t kSlots = 16;
  thread_local std::vector<Slot> slots;
  thread_local std::size_t next = 0;
  for (const auto& s : slots)
    if (s.index == e) return s.program;
  Program p = decode(e);
  if (slots.size() < kSlots) {
    slots.push_back({e, std::move(p)});
    return slots.back().program;
  }
  slots[next] = {e, std::move(p)};
  const Program& out = slots[next].program;
  next = (next + 1) % kSlots;
  return out;
}

}  // namespace

namespace detail {

Exec exec(const Nat& e, const Nat& x, std::uint64_t limit) {
  Program p = decoded(e);
  return exec(p, x, limit);
}

}  // namespace detail

RunResult run(const Program& p, const Nat& x, Fuel fuel) {
  if (fuel.max_steps == 0) return OutOfFuel{};
  detail::Exec r = detail::exec(p, x, fuel.max_steps - 1);
  if (!r.halted) return OutOfFuel{};
  return Halted{r.steps, std::move(r.output)};
}

RunResult run(const Nat& e, const Nat& x, Fuel fuel) {
  if (fuel.max_steps == 0) return OutOfFuel{};
  // A copy: nested runs by index may replace the cached program.
  Program p = decoded(e);
  return run(p, x, fuel);
}

bool t1(const Nat& e, const Nat& x, std::uint64_t y) {
  if (y == 0) return false;
  auto r = run(e, x, Fuel{y});
  const auto* h = std::get_if<Halted>(&r);
  return h != nullptr && h->steps == y - 1;
}

std::optional<std::uint64_t> w_member(const Nat& e, const Nat& x, Fuel fuel) {
  auto r = run(e, x, fuel);
  if (const auto* h = std::get_if<Halted>(&r)) return h->steps + 1;
  return std::nullopt;
}

Nat smn(const Nat& e, const Nat& a) { return encode(Program{SmnProgram{e, a}}); }

Nat const_index(const Nat& n) { return encode(Program{ConstProgram{n}}); }

Nat interpreter_index(Interpreter which) {
  return encode(Program{InterpProgram{Nat(static_cast<std::uint32_t>(which))}});
}

Nat finite_set_index(const Nat& mask) { return encode(Program{FiniteSetProgram{mask}}); }

Nat diag_index(const Nat& u) { return smn(interpreter_index(Interpreter::Diag), u); }

Nat kleene_fixed_point(const Nat& transformer) {
  // v computes x |-> transformer(diag(x)); diag(v) then runs transformer(diag(v)).
  Nat v = smn(interpreter_index(Interpreter::ComposeDiag), transformer);
  return diag_index(v);
}

std::vector<Instruction> parse_program(std::string_view text) {
  std::vector<Instruction> code;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto c = line.find(';'); c != std::string::npos) line.erase(c);
    std::istringstream words(line);
    std::string op;
    if (!(words >> op)) continue;
    std::transform(op.begin(), op.end(), op.begin(), [](unsigned char ch) { return std::toupper(ch); });
    auto operand = [&](const char* what) {
      std::string w;
      if (!(words >> w))
        throw std::invalid_argument("line " + std::to_string(line_no) + ": missing " + what);
      try {
        return parse_nat(w);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad " + what + " '" + w + "'");
      }
    };
    if (op == "HALT") {
      code.emplace_back(Halt{});
    } else if (op == "INC") {
      code.emplace_back(Inc{operand("register")});
    } else if (op == "DECJZ") {
      Nat r = operand("register");
      code.emplace_back(DecJz{r, operand("target")});
    } else {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown instruction '" + op + "'");
    }
    std::string extra;
    if (words >> extra)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": trailing '" + extra + "'");
  }
  return code;
}

std::string print_program(std::span<const Instruction> code) {
  std::string out;
  for (const auto& ins : code) {
    if (std::holds_alternative<Halt>(ins)) {
      out += "HALT\n";
    } else if (const auto* inc = std::get_if<Inc>(&ins)) {
      out += "INC " + inc->reg.str() + "\n";
    } else {
      const auto& d = std::get<DecJz>(ins);
      out += "DECJZ " + d.reg.str() + " " + d.target.str() + "\n";
    }
  }
  return out;
}

}  // namespace wb::machine
