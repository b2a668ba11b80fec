#include <doctest.h>

#include <string>
#include <vector>

#include "gf/combing.hpp"
#include "gf/oracle.hpp"

using namespace gf;

namespace {

Word W(const GroupOracle& o, const std::string& s) { return parse_word(o.alphabet(), s); }

} // namespace

TEST_CASE("finite table validation") {
  FiniteGroupTable z6 = cyclic_table(6, "a");
  CHECK(z6.order == 6);
  CHECK(z6.identity == 0);
  CHECK(z6.inverse[1] == 5);
  CHECK(table_generators_generate(z6));

  FiniteGroupTable s3 = s3_table("s", "r");
  CHECK(s3.order == 6);
  int s = s3.gens[0].second, r = s3.gens[1].second;
  CHECK(s3.mul(s, s) == s3.identity);
  CHECK(s3.mul(r, s3.mul(r, r)) == s3.identity);
  CHECK(s3.mul(s, r) != s3.mul(r, s));
  // s r s = r^-1
  CHECK(s3.mul(s3.mul(s, r), s) == s3.inverse[static_cast<size_t>(r)]);

  FiniteGroupTable d6 = dihedral_table(6, "c", "d");
  CHECK(d6.order == 12);
  int c = d6.gens[0].second, d = d6.gens[1].second;
  CHECK(d6.mul(c, c) == d6.identity);
  CHECK(d6.mul(d, d) == d6.identity);
  int cd = d6.mul(c, d);
  int p = cd;
  int ord = 1;
  while (p != d6.identity) {
    p = d6.mul(p, cd);
    ++ord;
  }
  CHECK(ord == 6);

  FiniteGroupTable bad;
  bad.order = 2;
  bad.mult = {{0, 1}, {1, 1}};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("finite table parse and serialize") {
  FiniteGroupTable z3 = cyclic_table(3, "g");
  FiniteGroupTable back = FiniteGroupTable::parse(z3.serialize());
  CHECK(back.order == 3);
  CHECK(back.mult == z3.mult);
  CHECK(back.gens == z3.gens);

  CHECK_THROWS_AS(FiniteGroupTable::parse("order: 2\n0 1\n"), Error);
  CHECK_THROWS_AS(FiniteGroupTable::parse("0 1\n1 0\n"), Error);
  CHECK_THROWS_AS(FiniteGroupTable::parse("order: 2\n0 1\n1 0 0\n"), Error);
  FiniteGroupTable ok = FiniteGroupTable::parse("# comment\norder: 2\n0 1 # trailing\n1 0\ngen: t 1\n");
  CHECK(ok.gens.size() == 1);
}

TEST_CASE("table canonical words") {
  FiniteGroupTable z6 = cyclic_table(6, "a");
  auto least = table_canonical_words(z6);
  Alphabet a({"a"});
  REQUIRE(least[4].has_value());
  CHECK(word_to_string(a, *least[0]) == "1");
  CHECK(word_to_string(a, *least[1]) == "a");
  CHECK(word_to_string(a, *least[2]) == "a a");
  CHECK(word_to_string(a, *least[4]) == "a^-1 a^-1");
  CHECK(word_to_string(a, *least[5]) == "a^-1");
}

TEST_CASE("table homomorphism search") {
  FiniteGroupTable z2 = cyclic_table(2, "x");
  FiniteGroupTable z3 = cyclic_table(3, "y");
  FiniteGroupTable z6 = cyclic_table(6, "a");
  FiniteGroupTable s3 = s3_table("s", "r");

  CHECK(all_table_homomorphisms(z2, z2).size() == 2);
  CHECK(all_table_homomorphisms(z3, z2).size() == 1);
  CHECK(all_table_homomorphisms(s3, z2).size() == 2);
  CHECK(all_table_homomorphisms(z2, s3).size() == 4);
  CHECK(all_table_homomorphisms(z6, s3).size() == 6);

  CHECK(exists_nontrivial_hom(s3, z2));
  CHECK_FALSE(exists_nontrivial_hom(z3, z2));
  CHECK(exists_embedded_copy(z2, s3));
  CHECK(exists_embedded_copy(z3, s3));
  CHECK_FALSE(exists_embedded_copy(z3, z2));
  CHECK_FALSE(exists_embedded_copy(s3, z6));
}

TEST_CASE("free oracle") {
  OraclePtr f = make_free_oracle(Alphabet({"a", "b"}));
  CHECK(f->is_trivial(W(*f, "1")));
  CHECK_FALSE(f->is_trivial(W(*f, "a")));
  CHECK(f->equal(W(*f, "a b"), W(*f, "a b")));
  CHECK_FALSE(f->equal(W(*f, "a b"), W(*f, "b a")));
  CHECK(ball_enumerate(*f, 2).size() == 17);
  CHECK(oracle_distance(*f, W(*f, "a"), W(*f, "b")) == 2);
}

TEST_CASE("finite oracle") {
  OraclePtr z6 = make_finite_oracle(cyclic_table(6, "a"));
  CHECK(z6->is_trivial(parse_word(z6->alphabet(), "a a a a a a")));
  CHECK_FALSE(z6->is_trivial(parse_word(z6->alphabet(), "a a a")));
  CHECK(z6->canonical(W(*z6, "a a a a")) == W(*z6, "a^-1 a^-1"));
  CHECK(z6->equal(W(*z6, "a a a a"), W(*z6, "a^-1 a^-1")));
  CHECK(ball_enumerate(*z6, 10).size() == 6);

  OraclePtr s3 = make_finite_oracle(s3_table("s", "r"));
  CHECK(s3->equal(W(*s3, "s r s"), W(*s3, "r^-1")));
  CHECK(ball_enumerate(*s3, 6).size() == 6);
}

TEST_CASE("direct product oracle") {
  OraclePtr f = make_direct_product(make_free_oracle(Alphabet({"a"})), make_free_oracle(Alphabet({"b"})));
  CHECK(product_left_size(*f) == 1);
  CHECK(f->equal(W(*f, "a b"), W(*f, "b a")));
  CHECK(f->canonical(W(*f, "b a")) == W(*f, "a b"));
  CHECK(f->canonical(W(*f, "b a b^-1")) == W(*f, "a"));
  CHECK(ball_enumerate(*f, 2).size() == 13);
  CHECK(oracle_distance(*f, W(*f, "a"), W(*f, "b")) == 2);

  OraclePtr zz = make_direct_product(make_finite_oracle(cyclic_table(2, "x")),
                                     make_finite_oracle(cyclic_table(3, "y")));
  CHECK(ball_enumerate(*zz, 3).size() == 6);
  CHECK(zz->is_trivial(W(*zz, "x y x y x y x y x y x y")));

  CHECK_THROWS_AS(make_direct_product(make_free_oracle(Alphabet({"a"})), make_free_oracle(Alphabet({"a"}))),
                  Error);
}

TEST_CASE("free product oracle") {
  OraclePtr g = make_free_product(make_finite_oracle(cyclic_table(2, "x")),
                                  make_finite_oracle(cyclic_table(3, "y")));
  CHECK(g->is_trivial(W(*g, "x x")));
  CHECK(g->is_trivial(W(*g, "y y y")));
  CHECK_FALSE(g->is_trivial(W(*g, "x y x y")));
  CHECK(g->canonical(W(*g, "x^-1 y y")) == W(*g, "x y^-1"));
  CHECK(g->equal(W(*g, "x y y"), W(*g, "x^-1 y^-1")));
  CHECK(ball_enumerate(*g, 3).size() == 14);

  // Infinite dihedral shadow: short balls match the order-12 dihedral table.
  OraclePtr zu = make_free_product(make_finite_oracle(cyclic_table(2, "c")),
                                   make_finite_oracle(cyclic_table(2, "d")));
  OraclePtr dih = make_finite_oracle(dihedral_table(6, "c", "d"));
  auto bu = ball_enumerate(*zu, 4);
  auto bd = ball_enumerate(*dih, 4);
  REQUIRE(bu.size() == bd.size());
  CHECK(bu.size() == 9);
  for (size_t i = 0; i < bu.size(); ++i)
    CHECK(word_key(bu[i]) == word_key(bd[i]));
}

TEST_CASE("kill generators oracle") {
  OraclePtr k = make_kill_generators(Alphabet({"a", "b"}), {"a"});
  CHECK(k->is_trivial(W(*k, "a b a b^-1")));
  CHECK(k->canonical(W(*k, "b a b")) == W(*k, "b b"));
  CHECK_FALSE(k->is_trivial(W(*k, "b")));

  OraclePtr all = make_kill_generators(Alphabet({"a", "b"}), {"a", "b"});
  CHECK(all->is_trivial(W(*all, "a b a")));
  CHECK(ball_enumerate(*all, 3).size() == 1);

  CHECK_THROWS_AS(make_kill_generators(Alphabet({"a"}), {"z"}), Error);
}

TEST_CASE("ball enumeration contracts") {
  OraclePtr f = make_free_oracle(Alphabet({"a", "b"}));
  auto ball = ball_enumerate(*f, 3);
  for (size_t i = 1; i < ball.size(); ++i)
    CHECK(shortlex_less(ball[i - 1], ball[i]));
  for (const Word& w : ball)
    CHECK(f->canonical(w) == w);
  CHECK_THROWS_AS(ball_enumerate(*f, 8, 100), Error);
}

TEST_CASE("fellow traveller bounds") {
  OraclePtr f2 = make_free_oracle(Alphabet({"a", "b"}));
  CHECK(fellow_traveller_bound(*f2, canonical_combing(), 6) == 1);

  OraclePtr prod = make_direct_product(make_free_oracle(Alphabet({"a"})), make_free_oracle(Alphabet({"b"})));
  CHECK(fellow_traveller_bound(*prod, canonical_combing(), 5) == 2);

  OraclePtr triv = make_kill_generators(Alphabet({"a"}), {"a"});
  CHECK(fellow_traveller_bound(*triv, canonical_combing(), 3) == 0);

  Combing broken = [](const Word& w) -> std::optional<Word> {
    if (w.size() >= 2) return std::nullopt;
    return w;
  };
  CHECK_THROWS_AS(fellow_traveller_bound(*f2, broken, 4), Error);
}
