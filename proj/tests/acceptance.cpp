// Acceptance criteria.  Every comparison is exact; the runtime limits below
// are part of each criterion.  Usage: acceptance [id ...], ids 1..9 and 1c.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>

#include "stair/encode.hpp"
#include "stair/error.hpp"
#include "stair/gridding.hpp"
#include "stair/lang.hpp"
#include "stair/panel.hpp"
#include "stair/verify.hpp"

using namespace stair;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

const char* kWord = "2312312232345231233412123212343";
// Reference eta_4 string in ASCII arrow notation (> right, < left, <> both).
// It contains the letter "2<", which is outside the alphabet.
const char* kReferenceEta4 = "1231>1>1212321>#121<121>121<>2<231<232#1<23###";
// What the construction yields for the same word.
const char* kConstructedEta4 = "1231>1>1212321>#121<121>121<2231<232#1<23###";

Outcome from_suite(const std::string& name, SuiteOptions o = {}) {
  const SuiteResult r = run_suite(name, o);
  return {r.pass, std::to_string(r.checked) + " checks; " + r.detail};
}

Outcome criterion1() {
  const std::string got = format_encoding(eta(parse_word(kWord), 4));
  std::string decoded;
  try {
    decoded = format_word(eta_inverse(parse_encoding(kReferenceEta4), 4));
  } catch (const std::exception& e) {
    decoded = std::string("error: ") + e.what();
  }
  const bool pass = got == kReferenceEta4 && decoded == format_word(parse_word(kWord));
  return {pass, "encode gives " + got + "; decoding the reference: " + decoded};
}

Outcome criterion1_constructed() {
  const std::string got = format_encoding(eta(parse_word(kWord), 4));
  const PosWord back = eta_inverse(parse_encoding(kConstructedEta4), 4);
  const bool in_l = accepts(automaton_Lc_eta(4), PanelCodec(4).word(parse_encoding(kConstructedEta4)));
  return {got == kConstructedEta4 && back == parse_word(kWord) && in_l, "encode = " + got};
}

Outcome criterion2() {
  const GriddedPermutation g = greedy_gridding(parse_permutation("2 3 1 4 7 8 5 11 6 9 12 10 14 13 15"));
  const PosWord w = omnibus(g);
  const std::string d = domino_encoding(w);
  const bool pass = format_word(w) == "2 1 1 2 3 3 4 5 6 4 5 6 2 3 2" &&
                    d == "**#*oo***#oo**o*o#oo**o#o*o*#o*o*#oo#" && format_word(domino_factor(w, 1)) == "2 1 1 2 2 2" &&
                    omnibus_from_factors(split_domino_word(d)) == w;
  return {pass, "omnibus " + format_word(w) + ", domino " + d};
}

Outcome criterion6() {
  Outcome o = from_suite("dyck");
  o.pass = o.pass && dyck_encode(parse_permutation("31562487")) == "uuudduududdduudd";
  return o;
}

Outcome criterion8() {
  SuiteOptions o;
  o.max_n = 14;
  return from_suite("u", o);
}

Outcome criterion9() {
  SuiteOptions o;
  o.q = {10, 11};
  o.c = 3;  // every word of length <= 7 lies in L_3^infinity
  o.max_n = 7;
  return from_suite("wq", o);
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"1", "eta_4 example, reference string", 1.0, criterion1},
      {"1c", "eta_4 example, constructed string", 1.0, criterion1_constructed},
      {"2", "omnibus and domino goldens", 1.0, criterion2},
      {"3", "G_c^eta counts are Catalan, n <= 9", 120.0,
       [] {
         SuiteOptions o;
         o.max_n = 9;
         return from_suite("catalan", o);
       }},
      {"4", "class generating functions match the oracle, n <= 9", 600.0,
       [] {
         SuiteOptions o;
         o.max_n = 9;
         return from_suite("classes", o);
       }},
      {"5", "greediness recognition, |pi| <= 7", 300.0,
       [] {
         SuiteOptions o;
         o.max_n = 7;
         o.c = 3;
         return from_suite("greedy", o);
       }},
      {"6", "Dyck pipeline", 600.0, criterion6},
      {"7", "round trips, length <= 8, c in {2,3,4}", 600.0,
       [] {
         SuiteOptions o;
         o.max_n = 8;
         return from_suite("roundtrip", o);
       }},
      {"8", "antichain U", 600.0, criterion8},
      {"9", "W_q membership, q in {10,11}", 600.0, criterion9},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failures = 0;
  for (const Criterion& c : criteria()) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / limit %.0fs", secs, c.limit_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << timing
              << (in_time ? "" : ", too slow") << ") " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
