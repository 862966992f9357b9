#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mext/element.hpp"

using namespace mext;

namespace {
const SpacePtr root = make_root_space(FinSet({"a", "b", "c"}));
}

TEST_CASE("constructors canonicalize") {
  auto s = make_subset(MonadKind::exp, root, {2, 0, 2});
  CHECK(std::get<Subset>(s.payload).atoms == std::vector<int>{0, 2});
  CHECK_THROWS_AS(make_subset(MonadKind::exp, root, {}), shape_error);
  CHECK_THROWS_AS(make_subset(MonadKind::exp, root, {3}), shape_error);
  CHECK_THROWS_AS(make_subset(MonadKind::lambda, root, {0}), shape_error);  // wrong shape

  auto f = make_family(MonadKind::lambda, root, {{0, 1}, {1, 0}, {1}, {0, 1, 2}});
  CHECK(std::get<Family>(f.payload).members == std::vector<std::vector<int>>{{1}});
  CHECK_THROWS_AS(make_family(MonadKind::incl, root, {}), shape_error);
  CHECK_THROWS_AS(make_family(MonadKind::incl, root, {{0}, {}}), shape_error);

  auto d = make_dist(root, {{1, Rat(1, 4)}, {0, Rat(1, 2)}, {1, Rat(1, 4)}, {2, Rat(0)}});
  const auto& mass = std::get<Dist>(d.payload).mass;
  CHECK(mass == std::vector<std::pair<int, Rat>>{{0, Rat(1, 2)}, {1, Rat(1, 2)}});
  CHECK_THROWS_AS(make_dist(root, {{0, Rat(1, 2)}}), shape_error);                     // sum != 1
  CHECK_THROWS_AS(make_dist(root, {{0, Rat(3, 2)}, {1, Rat(-1, 2)}}), shape_error);    // negative
  CHECK_THROWS_AS(make_point(MonadKind::id, root, 7), shape_error);
}

TEST_CASE("antichain minimization") {
  CHECK(minimize_antichain({{0, 1}, {1}, {0, 1, 2}, {2}}) ==
        std::vector<std::vector<int>>{{1}, {2}});
  CHECK(minimize_antichain({{2, 0}, {0, 2}}) == std::vector<std::vector<int>>{{0, 2}});
  CHECK(minimize_antichain({{0}, {1}, {2}}) ==
        std::vector<std::vector<int>>{{0}, {1}, {2}});
}

TEST_CASE("equality needs matching bases") {
  auto other = make_root_space(FinSet({"a", "b", "c"}));   // equal labels, new pointer
  auto diff = make_root_space(FinSet({"x", "y"}));
  auto e1 = make_subset(MonadKind::exp, root, {0, 1});
  auto e2 = make_subset(MonadKind::exp, other, {0, 1});
  CHECK(same_base(root, other));
  CHECK(e1 == e2);
  auto e3 = make_subset(MonadKind::exp, diff, {0, 1});
  CHECK(e1 != e3);
  CHECK_THROWS_AS((void)(e1 < e3), shape_error);
}

TEST_CASE("render and parse are inverse") {
  struct Case { MonadKind k; std::string text; };
  std::vector<Case> cases = {
      {MonadKind::id, "b"},
      {MonadKind::exp, "{a}"},
      {MonadKind::exp, "{a,b,c}"},
      {MonadKind::lambda, "[{a}]"},
      {MonadKind::lambda, "[{a},{b,c}]"},
      {MonadKind::incl, "[{a,b},{a,c},{b,c}]"},
      {MonadKind::prob, "{a:1}"},
      {MonadKind::prob, "{a:1/2, b:1/3, c:1/6}"},
  };
  for (const auto& c : cases) {
    auto e = parse_element(c.k, root, c.text);
    CHECK(render(e) == c.text);
    CHECK(parse_element(c.k, root, render(e)) == e);
  }
}

TEST_CASE("parse rejects malformed text") {
  CHECK_THROWS_AS(parse_element(MonadKind::id, root, "z"), parse_error);
  CHECK_THROWS_AS(parse_element(MonadKind::exp, root, "{a,z}"), parse_error);
  CHECK_THROWS_AS(parse_element(MonadKind::exp, root, "a,b"), parse_error);
  CHECK_THROWS_AS(parse_element(MonadKind::exp, root, "{a,b"), parse_error);
  CHECK_THROWS_AS(parse_element(MonadKind::lambda, root, "{a}"), parse_error);
  CHECK_THROWS_AS(parse_element(MonadKind::lambda, root, "[]"), parse_error);
  CHECK_THROWS_AS(parse_element(MonadKind::prob, root, "{a}"), parse_error);
  CHECK_THROWS_AS(parse_element(MonadKind::prob, root, "{a:1/0}"), parse_error);
  CHECK_THROWS_AS(parse_element(MonadKind::prob, root, "{a:x}"), parse_error);
  CHECK_THROWS_AS(parse_element(MonadKind::prob, root, "{a:1/2}"), shape_error);
}

TEST_CASE("support spaces decode their atoms") {
  auto e1 = make_subset(MonadKind::exp, root, {0});
  auto e2 = make_subset(MonadKind::exp, root, {1, 2});
  auto sp = make_support_space(root, {e1, e2});
  CHECK(sp->set.labels() == std::vector<std::string>{"{a}", "{b,c}"});
  CHECK(sp->decoded[1] == e2);

  auto sub = make_subspace(sp, {1});
  CHECK(sub->set.size() == 1);
  CHECK(sub->decoded[0] == e2);
  auto inc = inclusion_map(sub, sp);
  CHECK(inc.apply(0) == 1);

  auto foreign = make_subset(MonadKind::exp, make_root_space(FinSet({"x"})), {0});
  CHECK_THROWS_AS(make_support_space(root, {foreign}), shape_error);
}

TEST_CASE("nested renders stay parseable") {
  auto e1 = make_subset(MonadKind::exp, root, {0, 1});
  auto e2 = make_subset(MonadKind::exp, root, {2});
  auto sp = make_support_space(root, {e1, e2});
  auto m = make_subset(MonadKind::exp, sp, {0, 1});
  CHECK(render(m) == "{{a,b},{c}}");
  CHECK(parse_element(MonadKind::exp, sp, render(m)) == m);

  auto d1 = make_dist(root, {{0, Rat(1, 2)}, {1, Rat(1, 2)}});
  auto d2 = make_dist(root, {{2, Rat(1)}});
  auto dsp = make_support_space(root, {d1, d2});
  auto dd = make_dist(dsp, {{0, Rat(2, 3)}, {1, Rat(1, 3)}});
  CHECK(render(dd) == "{{a:1/2, b:1/2}:2/3, {c:1}:1/3}");
  CHECK(parse_element(MonadKind::prob, dsp, render(dd)) == dd);
}

TEST_CASE("used atoms") {
  CHECK(used_atoms(make_point(MonadKind::id, root, 1)) == std::vector<int>{1});
  CHECK(used_atoms(make_subset(MonadKind::exp, root, {2, 0})) == std::vector<int>{0, 2});
  CHECK(used_atoms(make_family(MonadKind::incl, root, {{0, 1}, {1, 2}})) ==
        std::vector<int>{0, 1, 2});
  CHECK(used_atoms(make_dist(root, {{2, Rat(1)}})) == std::vector<int>{2});
}
