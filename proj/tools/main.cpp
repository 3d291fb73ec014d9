// cobalt command-line driver: compile formulas to automata, translate
// automata back to formulas, and decide membership/emptiness/equivalence

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cobalt/automaton.hpp"
#include "cobalt/compiler.hpp"
#include "cobalt/errors.hpp"
#include "cobalt/formula.hpp"
#include "cobalt/oracle.hpp"
#include "cobalt/reverse.hpp"
#include "cobalt/word.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

cobalt::FPtr compile_pipeline(const std::string& text) {
  using namespace cobalt;
  FPtr f = parse_formula(text);
  f = uniquify(f);
  f = to_nnf(f);
  f = normalize_for_compilation(f);
  if (!check_existential_shape(f))
    throw NotInFragment(
        "formula is not an existential block of set quantifiers over a "
        "first-order matrix");
  return f;
}

cobalt::Assignment parse_assignment(const std::string& text) {
  cobalt::Assignment asg;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad assignment entry '" + item + "' (want var=pos)");
    asg[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
  }
  return asg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cobalt: a compiler between existential successor set logic and "
      "co-Buchi automata"};
  app.require_subcommand(1);

  // compile
  std::string compile_in, compile_out;
  bool compile_det = false;
  auto* cmd_compile = app.add_subcommand("compile", "compile a formula file to an automaton");
  cmd_compile->add_option("formula", compile_in, "formula file")->required();
  cmd_compile->add_option("-o,--output", compile_out, "automaton output file");
  cmd_compile->add_flag("--deterministic", compile_det,
                        "use the deterministic first-order construction");

  // check
  std::string check_aut, check_lasso;
  auto* cmd_check = app.add_subcommand("check", "decide membership of a lasso word");
  cmd_check->add_option("automaton", check_aut, "automaton file")->required();
  cmd_check->add_option("lasso", check_lasso, "lasso word, e.g. '10 ; 01'")->required();

  // empty
  std::string empty_aut;
  auto* cmd_empty = app.add_subcommand("empty", "decide emptiness, printing a witness");
  cmd_empty->add_option("automaton", empty_aut, "automaton file")->required();

  // equiv
  std::string equiv_a, equiv_b;
  auto* cmd_equiv = app.add_subcommand("equiv", "decide language equivalence");
  cmd_equiv->add_option("first", equiv_a, "automaton file")->required();
  cmd_equiv->add_option("second", equiv_b, "automaton file")->required();

  // to-formula
  std::string tofor_aut;
  auto* cmd_tofor = app.add_subcommand("to-formula", "emit an occupancy formula");
  cmd_tofor->add_option("automaton", tofor_aut, "automaton file")->required();

  // translate
  std::string trans_dir, trans_in;
  auto* cmd_trans = app.add_subcommand("translate", "rewrite between signatures");
  cmd_trans->add_option("direction", trans_dir, "order-to-succ | succ-to-order")
      ->required()
      ->check(CLI::IsMember({"order-to-succ", "succ-to-order"}));
  cmd_trans->add_option("formula", trans_in, "formula file")->required();

  // normalize
  std::string norm_in;
  auto* cmd_norm = app.add_subcommand("normalize", "print the compilable normal form");
  cmd_norm->add_option("formula", norm_in, "formula file")->required();

  // eval
  std::string eval_in, eval_lasso, eval_assign;
  int so_prefix_bound = 2, so_period_mult = 2, fo_window_mult = 1;
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a formula on a lasso word");
  cmd_eval->add_option("formula", eval_in, "formula file")->required();
  cmd_eval->add_option("lasso", eval_lasso, "lasso over the free set tracks")->required();
  cmd_eval->add_option("--assign", eval_assign, "positions, e.g. x=3,y=0");
  cmd_eval->add_option("--so-prefix-bound", so_prefix_bound, "set-witness prefix bound");
  cmd_eval->add_option("--so-period-mult", so_period_mult, "set-witness period multiplier");
  cmd_eval->add_option("--fo-window-mult", fo_window_mult, "position window multiplier");

  // dot
  std::string dot_aut;
  auto* cmd_dot = app.add_subcommand("dot", "render an automaton as graphviz");
  cmd_dot->add_option("automaton", dot_aut, "automaton file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    using namespace cobalt;

    if (*cmd_compile) {
      FPtr f = compile_pipeline(slurp(compile_in));
      OmegaAutomaton a = compile_det ? compile_fo_deterministic(f) : compile(f);
      write_out(compile_out, format_automaton(a));
      return kExitYes;
    }

    if (*cmd_check) {
      OmegaAutomaton a = parse_automaton(slurp(check_aut));
      LassoWord w = parse_lasso(check_lasso);
      bool yes = accepts_lasso(a, w);
      std::cout << (yes ? "ACCEPT" : "REJECT") << "\n";
      return yes ? kExitYes : kExitNo;
    }

    if (*cmd_empty) {
      OmegaAutomaton a = parse_automaton(slurp(empty_aut));
      auto wit = is_empty(a);
      if (!wit) {
        std::cout << "EMPTY\n";
        return kExitYes;
      }
      std::cout << format_lasso(canonicalize(*wit)) << "\n";
      return kExitNo;
    }

    if (*cmd_equiv) {
      OmegaAutomaton a = parse_automaton(slurp(equiv_a));
      OmegaAutomaton b = parse_automaton(slurp(equiv_b));
      auto cex = equivalent(a, b);
      if (!cex) {
        std::cout << "EQUIVALENT\n";
        return kExitYes;
      }
      std::cout << "INEQUIVALENT: " << format_lasso(cex->word) << " accepted by "
                << (cex->accepted_by_first ? "first" : "second") << " only\n";
      return kExitNo;
    }

    if (*cmd_tofor) {
      OmegaAutomaton a = parse_automaton(slurp(tofor_aut));
      std::vector<std::string> state_vars;
      FPtr f = a.acceptance == Acceptance::CoBuchi
                   ? cobuchi_to_formula(a, &state_vars)
                   : buchi_to_formula(a, &state_vars);
      std::cout << "# signature: "
                << (a.acceptance == Acceptance::CoBuchi ? "successor" : "order")
                << "\n";
      for (std::size_t q = 0; q < state_vars.size(); ++q)
        std::cout << "# state " << q << " -> " << state_vars[q] << "\n";
      std::cout << render_formula(f) << "\n";
      return kExitYes;
    }

    if (*cmd_trans) {
      FPtr f = parse_formula(slurp(trans_in));
      FPtr out = trans_dir == "order-to-succ" ? order_to_successor(f)
                                              : successor_to_order(f);
      std::cout << render_formula(out) << "\n";
      return kExitYes;
    }

    if (*cmd_norm) {
      FPtr f = parse_formula(slurp(norm_in));
      f = normalize_for_compilation(to_nnf(uniquify(f)));
      std::cout << render_formula(f) << "\n";
      return kExitYes;
    }

    if (*cmd_eval) {
      FPtr f = parse_formula(slurp(eval_in));
      LassoWord w = parse_lasso(eval_lasso);
      Assignment asg = parse_assignment(eval_assign);
      auto [fo, so] = free_variables(f);
      TrackSignature sig;
      sig.so_vars.assign(so.begin(), so.end());
      if (w.width() != sig.width())
        throw std::runtime_error(
            "lasso width " + std::to_string(w.width()) + " does not cover the " +
            std::to_string(sig.width()) + " free set variables (sorted order)");
      SoBounds bounds{so_prefix_bound, so_period_mult};
      bool verdict;
      if (!contains_so_quantifier(f))
        verdict = eval_fo(f, w, sig, asg, fo_window_mult);
      else if (check_existential_shape(f) && f->kind == FKind::ExistsSO)
        verdict = eval_exists_so(f, w, sig, bounds, asg, fo_window_mult);
      else
        verdict = eval_bounded(f, w, sig, bounds, asg, fo_window_mult);
      std::cout << (verdict ? "TRUE" : "FALSE") << "\n";
      return verdict ? kExitYes : kExitNo;
    }

    if (*cmd_dot) {
      OmegaAutomaton a = parse_automaton(slurp(dot_aut));
      std::cout << to_dot(a);
      return kExitYes;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
