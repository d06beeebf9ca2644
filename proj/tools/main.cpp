#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "stair/encode.hpp"
#include "stair/error.hpp"
#include "stair/genfunc.hpp"
#include "stair/gridding.hpp"
#include "stair/lang.hpp"
#include "stair/panel.hpp"
#include "stair/verify.hpp"

using namespace stair;
using nlohmann::json;

namespace {

// Usage problems detected after CLI11 has parsed the flags.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string format = "text";
  std::optional<int> c, q, max_n;
  std::vector<int> qs;
  std::string basis;
  std::uint64_t seed = 20261015;
};

// Arrow glyphs to ASCII; whitespace dropped.
std::string normalize_panel_text(const std::string& text) {
  static const std::pair<std::string, std::string> glyphs[] = {{"↔", "<>"}, {"→", ">"}, {"←", "<"}};
  std::string s = text;
  for (const auto& [from, to] : glyphs) {
    for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size())) {
      s.replace(at, from.size(), to);
    }
  }
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  }
  return out;
}

int smallest_c(const PosWord& w) {
  int c = 2;
  while (!in_Lc_infinity(w, c)) ++c;
  return c;
}

json json_word(const PosWord& w) { return json(w); }

void print(const Flags& f, const std::string& text, const json& j) {
  if (f.format == "json") std::cout << j.dump() << "\n";
  else std::cout << text << "\n";
}

void require_format(const Flags& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (f.format == a) return;
  }
  throw UsageError("--format " + f.format + " is not available for this command");
}

int cmd_grid(const Flags& f, const std::string& perm) {
  require_format(f, {"text", "json", "dot"});
  const Permutation pi = parse_permutation(perm);
  if (contains(pi, Permutation({3, 2, 1}))) throw DomainError(pi.str() + " contains 321");
  const GriddedPermutation g = greedy_gridding(pi);
  if (f.format == "dot") {
    std::cout << gridding_dot(g);
    return 0;
  }
  std::string text = "permutation " + pi.str() + "\n" + render_gridding(g);
  json cells = json::array();
  for (int k = 1; k <= g.max_cell(); ++k) {
    std::vector<int> values;
    for (int p : g.cell_positions(k)) values.push_back(pi.values()[p]);
    std::sort(values.begin(), values.end());
    text += "\ncell " + std::to_string(k) + ":";
    for (int v : values) text += " " + std::to_string(v);
    cells.push_back(values);
  }
  print(f, text, {{"permutation", pi.values()}, {"cell", g.cell}, {"cells", cells}});
  return 0;
}

int cmd_encode(const Flags& f, const std::string& kind, const std::string& input) {
  require_format(f, {"text", "json"});
  if (kind == "omnibus" || kind == "dyck") {
    const Permutation pi = parse_permutation(input);
    if (contains(pi, Permutation({3, 2, 1}))) throw DomainError(pi.str() + " contains 321");
    if (kind == "dyck") {
      const std::string d = dyck_encode(pi);
      print(f, d, {{"dyck", d}});
    } else {
      const PosWord w = omnibus(greedy_gridding(pi));
      print(f, format_word(w), {{"omnibus", json_word(w)}});
    }
    return 0;
  }
  const PosWord w = parse_word(input);
  if (!satisfies_sac(w)) throw DomainError(format_word(w) + " violates the small ascent condition");
  if (kind == "domino") {
    const std::string d = domino_encoding(w);
    json factors = json::array();
    for (int i = 1; i < max_letter(w); ++i) factors.push_back(json_word(domino_factor(w, i)));
    print(f, d, {{"domino", d}, {"factors", factors}});
    return 0;
  }
  const int c = f.c.value_or(smallest_c(w));
  const std::string e = format_encoding(eta(w, c));
  print(f, e, {{"c", c}, {"panel", e}});
  return 0;
}

int cmd_decode(const Flags& f, const std::string& kind, const std::string& input) {
  require_format(f, {"text", "json"});
  if (kind == "omnibus" || kind == "dyck") {
    const Permutation pi = kind == "dyck" ? dyck_decode(input) : phi(parse_word(input));
    print(f, pi.str(), {{"permutation", pi.values()}});
    return 0;
  }
  PosWord w;
  if (kind == "domino") {
    w = input.empty() ? PosWord{} : omnibus_from_factors(split_domino_word(input));
  } else {
    const std::string text = normalize_panel_text(input);
    w = text.empty() ? PosWord{} : eta_inverse(parse_encoding(text), f.c.value_or(0));
  }
  print(f, format_word(w), {{"word", json_word(w)}});
  return 0;
}

int cmd_genfunc(const Flags& f) {
  require_format(f, {"text", "json"});
  if (f.basis.empty()) throw UsageError("--basis is required");
  const auto basis = parse_basis(f.basis);
  const RationalFunction gf = gf_class(basis, f.q, f.c);
  const int n = f.max_n.value_or(9);
  const auto coeffs = series_coefficients(gf, n);
  std::string text = gf.str();
  json table = json::array();
  for (int k = 0; k <= n; ++k) {
    text += "\n" + std::to_string(k) + " " + coeffs[k].get_str();
    table.push_back(coeffs[k].get_str());
  }
  print(f, text, {{"basis", f.basis}, {"c", f.c.value_or(default_c(basis))}, {"generating_function", json::parse(gf.json())},
                  {"coefficients", table}});
  return 0;
}

int cmd_verify(const Flags& f, const std::string& suite) {
  require_format(f, {"text", "json"});
  SuiteOptions o;
  o.max_n = f.max_n;
  o.c = f.c;
  o.q = f.qs;
  o.seed = f.seed;
  if (!f.basis.empty()) o.bases = {parse_basis(f.basis)};
  SuiteResult r;
  try {
    r = run_suite(suite, o);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
  print(f, std::string(r.pass ? "PASS " : "FAIL ") + r.name + " (" + std::to_string(r.checked) + " checks, " + secs + "): " + r.detail,
        {{"suite", r.name}, {"pass", r.pass}, {"checked", r.checked}, {"seconds", r.seconds}, {"detail", r.detail}});
  return r.pass ? 0 : 1;
}

int cmd_automaton(const Flags& f, const std::string& kind) {
  const int c = f.c.value_or(3);
  Automaton a = [&] {
    if (kind == "P") return automaton_Pc(c);
    if (kind == "L") return automaton_Lc_eta(c);
    if (kind == "G") return automaton_Gc_eta(c);
    if (kind == "U") return automaton_U_dyck(f.q.value_or(1));
    if (kind == "W") {
      if (!f.q) throw UsageError("--q is required");
      return automaton_Wq(c, *f.q);
    }
    if (f.basis.empty()) throw UsageError("--basis is required");
    const auto basis = parse_basis(f.basis);
    if (kind == "geq") {
      if (basis.size() != 1) throw UsageError("geq takes a single permutation in --basis");
      return automaton_Gc_geq_beta(f.c.value_or(default_c(basis)), basis[0]);
    }
    return automaton_class(basis, f.q, f.c);
  }();
  if (f.format == "json") std::cout << to_json(a) << "\n";
  else if (f.format == "dot") std::cout << to_dot(a, kind);
  else std::cout << kind << ": " << a.num_states() << " states, " << a.alphabet->size() << " symbols\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staircase encodings of 321-avoiding permutation classes"};
  app.require_subcommand(1);
  Flags f;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
  };

  std::string perm, kind, input, suite;
  auto* grid = app.add_subcommand("grid", "Greedy gridding of a 321-avoiding permutation");
  grid->add_option("perm", perm, "Permutation, e.g. 231 or \"2 3 1\"")->required();
  common(grid);

  auto* encode = app.add_subcommand("encode", "Encode a permutation or word");
  encode->add_option("kind", kind, "omnibus | domino | panel | dyck")->required()->check(CLI::IsMember({"omnibus", "domino", "panel", "dyck"}));
  encode->add_option("input", input, "Permutation (omnibus, dyck) or SAC word (domino, panel)")->required();
  encode->add_option("--c", f.c, "Panel parameter c")->check(CLI::Range(2, 64));
  common(encode);

  auto* decode = app.add_subcommand("decode", "Invert an encoding");
  decode->add_option("kind", kind, "omnibus | domino | panel | dyck")->required()->check(CLI::IsMember({"omnibus", "domino", "panel", "dyck"}));
  decode->add_option("input", input, "Encoded text")->required();
  decode->add_option("--c", f.c, "Check the panel encoding against L_c^eta")->check(CLI::Range(2, 64));
  common(decode);

  auto* genfunc = app.add_subcommand("genfunc", "Generating function of Av(321, basis)");
  genfunc->add_option("--basis", f.basis, "Semicolon-separated basis, e.g. \"231;2143\"")->required();
  genfunc->add_option("--c", f.c, "Panel parameter (default 1 + shortest basis length)")->check(CLI::Range(2, 64));
  genfunc->add_option("--q", f.q, "Restrict to W_q")->check(CLI::PositiveNumber);
  genfunc->add_option("--max-n", f.max_n, "Coefficient table length")->check(CLI::NonNegativeNumber);
  common(genfunc);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "roundtrip | catalan | greedy | dyck | u | wq | classes")->required();
  verify->add_option("--max-n", f.max_n, "Size bound")->check(CLI::NonNegativeNumber);
  verify->add_option("--c", f.c, "Panel parameter")->check(CLI::Range(2, 64));
  verify->add_option("--q", f.qs, "q values for the wq suite")->check(CLI::PositiveNumber);
  verify->add_option("--basis", f.basis, "Basis for the classes suite");
  verify->add_option("--seed", f.seed, "Seed for randomized checks");
  common(verify);

  auto* automaton = app.add_subcommand("automaton", "Build and print an automaton");
  automaton->add_option("kind", kind, "P | L | G | geq | class | U | W")->required()->check(CLI::IsMember({"P", "L", "G", "geq", "class", "U", "W"}));
  automaton->add_option("--c", f.c, "Panel parameter (default 3)")->check(CLI::Range(2, 64));
  automaton->add_option("--q", f.q, "q for U, W and class")->check(CLI::PositiveNumber);
  automaton->add_option("--basis", f.basis, "Basis for class and geq");
  common(automaton);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*grid) return cmd_grid(f, perm);
    if (*encode) return cmd_encode(f, kind, input);
    if (*decode) return cmd_decode(f, kind, input);
    if (*genfunc) return cmd_genfunc(f);
    if (*verify) return cmd_verify(f, suite);
    return cmd_automaton(f, kind);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
