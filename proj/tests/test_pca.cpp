#include <random>

#include <catch_amalgamated.hpp>

#include "epcr/pca.hpp"

using namespace epcr;

namespace {

PcaInstance make(std::initializer_list<const char*> xs) {
  std::vector<PeriodString> out;
  for (const char* x : xs) out.emplace_back(x);
  return PcaInstance(std::move(out));
}

PcaInstance random_instance(std::mt19937_64& rng) {
  std::vector<PeriodString> xs;
  const std::size_t m = 1 + rng() % 3;
  while (xs.size() < m) {
    std::string s(1 + rng() % 4, '0');
    for (auto& c : s) c = (rng() & 1) ? '1' : '0';
    if (s.find('1') != std::string::npos) xs.emplace_back(s);
  }
  return PcaInstance(std::move(xs));
}

}  // namespace

TEST_CASE("pca_solve on small instances") {
  CHECK(pca_solve(make({"1"})) == 0u);
  CHECK_FALSE(pca_solve(make({"10", "01"})));
  CHECK(pca_solve(make({"110", "10"})) == 0u);
  CHECK(pca_solve(make({"01", "001"})) == 5u);
  CHECK(make({"110", "10"}).lcm() == 6);
}

TEST_CASE("empty instances are rejected") {
  CHECK_THROWS_AS(PcaInstance({}), std::invalid_argument);
  CHECK_THROWS_AS(parse_pca("# nothing\n\n"), ParseError);
  CHECK_THROWS_AS(parse_pca("10\n00\n"), ParseError);
}

TEST_CASE("pca files round-trip") {
  const auto x = parse_pca("# X\n110\n\n10\n");
  REQUIRE(x.strings.size() == 2);
  CHECK(x.strings[0].str() == "110");
  CHECK(serialize(x) == "110\n10\n");
  CHECK(parse_pca(serialize(x)).strings == x.strings);
}

TEST_CASE("the lcm budget is enforced") {
  const auto x = make({"1000000", "10000000000"});  // lcm 77
  CHECK(pca_solve(x, 77) == 0u);
  CHECK_THROWS_AS(pca_solve(x, 76), BudgetExceeded);
}

TEST_CASE("witnesses are minimal and verify pointwise") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 500; ++round) {
    const auto x = random_instance(rng);
    const auto w = pca_solve(x);
    const auto period = x.lcm().convert_to<std::uint64_t>();
    std::optional<std::uint64_t> first;
    for (std::uint64_t i = 0; i < period && !first; ++i) {
      bool all = true;
      for (const auto& s : x.strings) all = all && s.str()[i % s.size()] == '1';
      if (all) first = i;
    }
    CHECK(w == first);
  }
}

TEST_CASE("answers are invariant under duplication and self-concatenation") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 300; ++round) {
    const auto x = random_instance(rng);
    const auto w = pca_solve(x);
    const std::size_t pick = rng() % x.strings.size();

    auto dup = x.strings;
    dup.push_back(x.strings[pick]);
    CHECK(pca_solve(PcaInstance(dup)).has_value() == w.has_value());

    auto doubled = x.strings;
    doubled[pick] = PeriodString(x.strings[pick].str() + x.strings[pick].str());
    CHECK(pca_solve(PcaInstance(doubled)) == w);
  }
}
