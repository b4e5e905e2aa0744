/// @file unit_rdpa.cpp
/// Register data path automata and their constraint-definition translation.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pathq/rdpa.hpp"

using namespace pathq;

static DataPath dp(std::vector<Value> v) { return DataPath{std::move(v)}; }
static Value I(long long v) { return Value::integer(v); }
static Value W(const char* s) { return Value::text(s); }

TEST_CASE("data paths alternate data and word symbols") {
  CHECK_NOTHROW(validate_data_path(dp({I(5), W("a"), I(5)})));
  CHECK_THROWS(validate_data_path(dp({I(5)})));            // too short
  CHECK_THROWS(validate_data_path(dp({I(5), W("a")})));    // even length
  CHECK_THROWS(validate_data_path(dp({I(5), I(5), I(5)})));  // no word symbol
  CHECK_THROWS(validate_data_path(dp({W("a"), I(5), W("a")})));
}

TEST_CASE("the equality automaton accepts matching endpoints") {
  Rdpa a = a_eq();
  CHECK_NOTHROW(a.validate());
  CHECK(accepts(a, dp({I(5), W("a"), I(5)})));
  CHECK_FALSE(accepts(a, dp({I(5), W("a"), I(6)})));
  // runs restart after each accepting pair, so pairs check independently
  CHECK(accepts(a, dp({I(1), W("a"), I(1), W("a"), I(2), W("a"), I(2)})));
  CHECK_FALSE(accepts(a, dp({I(1), W("a"), I(2), W("a"), I(2), W("a"), I(2)})));
  // a five-position path strands the run mid-pair
  CHECK_FALSE(accepts(a, dp({I(2), W("a"), I(2), W("a"), I(2)})));
}

TEST_CASE("an automaton with no final states accepts nothing") {
  Rdpa a = a_eq();
  a.finals.clear();
  for (long long d1 = 0; d1 <= 2; ++d1)
    for (long long d2 = 0; d2 <= 2; ++d2)
      CHECK_FALSE(accepts(a, dp({I(d1), W("a"), I(d2)})));
}

TEST_CASE("condition evaluation covers registers, constants, and boolean ops") {
  std::vector<long long> regs{5, kBotReg};
  CHECK(eval_cond(rc_true(), regs, 5));
  CHECK(eval_cond(rc_regeq(1), regs, 5));
  CHECK_FALSE(eval_cond(rc_regeq(1), regs, 6));
  CHECK(eval_cond(rc_regne(1), regs, 6));
  CHECK_FALSE(eval_cond(rc_regeq(2), regs, 5));  // unset register matches nothing
  CHECK(eval_cond(rc_eq(7), regs, 7));
  CHECK(eval_cond(rc_ne(7), regs, 8));
  CHECK(eval_cond(rc_and(rc_regeq(1), rc_ne(9)), regs, 5));
  CHECK(eval_cond(rc_or(rc_eq(9), rc_regeq(1)), regs, 5));
  CHECK_FALSE(eval_cond(rc_not(rc_regeq(1)), regs, 5));
}

TEST_CASE("data_constr on the length/last definition keeps one branch") {
  auto def = length_last_def();
  auto branches = data_constr(def, dp({I(0), W("e"), I(0), W("e"), I(3)}));
  REQUIRE(branches.size() == 1);
  const auto& cs = branches[0];
  CHECK(cs.consistent());
  CHECK(cs.entailed("?w.length") == Value::integer(3));
  CHECK(cs.entailed("?w.last") == Value::integer(3));
}

TEST_CASE("data_constr discards branches eagerly") {
  auto def = length_last_def();
  // a nonzero interior datum refutes the data disjunct and the word
  // disjunct alike, so the whole crossing collapses
  auto b1 = data_constr(def, dp({I(0), W("e"), I(5), W("e"), I(3)}));
  CHECK(b1.empty());
}

TEST_CASE("the separation property: last == length picks out L exactly") {
  auto def = length_last_def();
  auto phi = length_last_phi();
  CHECK(recognized(def, phi, dp({I(0), W("e"), I(0), W("e"), I(3)})));
  CHECK_FALSE(recognized(def, phi, dp({I(0), W("e"), I(0), W("e"), I(4)})));
  CHECK_FALSE(recognized(def, phi, dp({I(1), W("e"), I(0), W("e"), I(3)})));
  CHECK(recognized(def, phi, dp({I(0), W("e"), I(2)})));
}

TEST_CASE("cond_dnf flattens nested boolean structure") {
  auto c = rc_and(rc_or(rc_regeq(1), rc_eq(3)), rc_ne(4));
  auto dnf = rdpa_detail::cond_dnf(c, false);
  CHECK(dnf.size() == 2);
  // negation pushes inward and swaps the connectives
  auto neg = rdpa_detail::cond_dnf(rc_not(rc_or(rc_regeq(1), rc_eq(3))), false);
  CHECK(neg.size() == 1);
  CHECK(neg[0].size() == 2);
}

TEST_CASE("translate(a_eq) recognizes the same data paths") {
  Rdpa a = a_eq();
  auto [def, phi] = translate(a);
  for (long long d1 = 0; d1 <= 3; ++d1)
    for (long long d2 = 0; d2 <= 3; ++d2)
      for (long long d3 = 0; d3 <= 3; ++d3) {
        DataPath w3 = dp({I(d1), W("a"), I(d2)});
        CHECK(recognized(def, phi, w3) == accepts(a, w3));
        CHECK(recognized(def, phi, w3) == (d1 == d2));
        DataPath w5 = dp({I(d1), W("a"), I(d2), W("a"), I(d3)});
        CHECK(recognized(def, phi, w5) == accepts(a, w5));
      }
}

TEST_CASE("translate exposes state and register properties") {
  Rdpa a = a_eq();
  auto [def, phi] = translate(a);
  std::set<std::string> names;
  for (auto& ps : def.props) names.insert(ps.name);
  CHECK(names.count("state"));
  CHECK(names.count("r1"));
  // the acceptance filter pins the initial configuration
  CHECK(phi.size() == 1 + a.k);
}

TEST_CASE("rdpa validation rejects out-of-range pieces") {
  Rdpa a = a_eq();
  a.q0 = 99;
  CHECK_THROWS(a.validate());
  Rdpa b = a_eq();
  b.dtr.push_back({0, 99, rc_true(), {}});
  CHECK_THROWS(b.validate());
  Rdpa c = a_eq();
  c.dtr.push_back({0, 0, rc_regeq(5), {}});
  CHECK_THROWS(c.validate());
}
