/// @file unit_regex.cpp
/// Regex membership, decomposition, and the one-or-more equivalence test.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pathq/regex.hpp"

using namespace pathq;

static Regex sym(const char* s) { return rx_sym(s); }

// a | ab+ | ac+ | c
static Regex running_example() {
  return rx_union(
      rx_union(sym("a"), rx_concat(sym("a"), rx_plus(sym("b")))),
      rx_union(rx_concat(sym("a"), rx_plus(sym("c"))), sym("c")));
}

TEST_CASE("matches is the epsilon-excluded language") {
  Regex fp = rx_plus(sym("Flight"));
  CHECK(matches(fp, {"Flight", "Flight"}));
  CHECK_FALSE(matches(fp, {"Flight", "byTrain"}));
  Regex mix = rx_union(fp, rx_plus(sym("byTrain")));
  CHECK_FALSE(matches(mix, {"Flight", "byTrain"}));
  CHECK(matches(running_example(), {"a", "c"}));
  CHECK(matches(running_example(), {"a"}));
  CHECK(matches(running_example(), {"c"}));
  CHECK_FALSE(matches(running_example(), {"b"}));
  // star keeps its one-or-more reading at the language level: the automaton
  // start state never accepts, even though star is nullable as a tree
  CHECK(matches(rx_star(sym("a")), {"a"}));
  auto aut = build_automaton(rx_star(sym("a")), {"a"});
  CHECK_FALSE(aut.accepting[0]);
  CHECK(remainder_equiv(rx_star(sym("a")), rx_plus(sym("a"))));
}

TEST_CASE("decompose on the running example") {
  std::set<std::string> sigma{"a", "b", "c"};
  auto d = decompose(running_example(), sigma);
  CHECK(d.s0 == std::set<std::string>{"a", "c"});
  CHECK(d.s1 == std::set<std::string>{"a"});
  REQUIRE(d.rem.count("a") == 1);
  CHECK(remainder_equiv(d.rem.at("a"),
                        rx_union(rx_plus(sym("b")), rx_plus(sym("c")))));
}

TEST_CASE("decompose degenerate shapes") {
  std::set<std::string> sigma{"a", "b"};
  auto single = decompose(sym("a"), sigma);
  CHECK(single.s0 == std::set<std::string>{"a"});
  CHECK(single.s1.empty());
  auto plus = decompose(rx_plus(sym("a")), sigma);
  CHECK(plus.s0 == std::set<std::string>{"a"});
  CHECK(plus.s1 == std::set<std::string>{"a"});
  CHECK(remainder_equiv(plus.rem.at("a"), rx_plus(sym("a"))));
  CHECK_THROWS_WITH(decompose(rx_empty(), sigma), "uninhabited pattern");
}

TEST_CASE("is_universal_plus") {
  CHECK(is_universal_plus(rx_plus(sym("Flight")), {"Flight"}));
  CHECK_FALSE(is_universal_plus(
      rx_union(rx_plus(sym("Flight")), rx_plus(sym("byTrain"))),
      {"Flight", "byTrain"}));
  CHECK(is_universal_plus(rx_plus(rx_union(sym("Flight"), sym("byTrain"))),
                          {"Flight", "byTrain"}));
  CHECK_FALSE(is_universal_plus(sym("a"), {"a"}));
}

TEST_CASE("remainder_equiv is language equivalence") {
  CHECK(remainder_equiv(rx_union(rx_plus(sym("b")), rx_plus(sym("c"))),
                        rx_union(rx_plus(sym("b")), rx_plus(sym("c")))));
  CHECK(remainder_equiv(rx_concat(sym("b"), rx_star(sym("b"))),
                        rx_plus(sym("b"))));
  CHECK_FALSE(remainder_equiv(rx_plus(sym("b")), rx_plus(sym("c"))));
}

static Regex random_rx(std::mt19937_64& rng, const std::vector<std::string>& sigma,
                       int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 4);
  switch (pick(rng)) {
    case 0: {
      std::uniform_int_distribution<size_t> s(0, sigma.size() - 1);
      return rx_sym(sigma[s(rng)]);
    }
    case 1: return rx_star(random_rx(rng, sigma, depth - 1));
    case 2: return rx_plus(random_rx(rng, sigma, depth - 1));
    case 3:
      return rx_union(random_rx(rng, sigma, depth - 1),
                      random_rx(rng, sigma, depth - 1));
    default:
      return rx_concat(random_rx(rng, sigma, depth - 1),
                       random_rx(rng, sigma, depth - 1));
  }
}

// Word membership through iterated decomposition: length-1 via s0, longer
// words by stepping into the remainder of the first symbol.
static bool decomp_matches(const Regex& r, const std::set<std::string>& sigma,
                           const std::vector<std::string>& w, size_t at) {
  if (!language_nonempty(r, sigma)) return false;
  auto d = decompose(r, sigma);
  if (at + 1 == w.size()) return d.s0.count(w[at]) > 0;
  if (!d.s1.count(w[at])) return false;
  return decomp_matches(d.rem.at(w[at]), sigma, w, at + 1);
}

TEST_CASE("decomposition agrees with the direct matcher on random regexes") {
  std::vector<std::string> sv{"a", "b"};
  std::set<std::string> sigma{"a", "b"};
  std::mt19937_64 rng(7);
  // all nonempty words of length <= 4 over {a,b}
  std::vector<std::vector<std::string>> words;
  for (int len = 1; len <= 4; ++len) {
    for (int mask = 0; mask < (1 << (2 * len)); ++mask) {
      std::vector<std::string> w;
      int m = mask;
      bool ok = true;
      for (int i = 0; i < len; ++i) {
        int s = m & 3;
        m >>= 2;
        if (s > 1) { ok = false; break; }
        w.push_back(sv[s]);
      }
      if (ok) words.push_back(w);
    }
  }
  for (int i = 0; i < 120; ++i) {
    Regex r = random_rx(rng, sv, 3);
    if (!language_nonempty(r, sigma)) continue;
    for (auto& w : words)
      CHECK(matches(r, w) == decomp_matches(r, sigma, w, 0));
  }
}

TEST_CASE("regex printing round-trips through its own structure") {
  auto r = running_example();
  auto s = regex_str(r);
  CHECK(s.find('|') != std::string::npos);
  CHECK(s.find('+') != std::string::npos);
}
