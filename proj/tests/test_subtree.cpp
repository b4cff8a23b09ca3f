#include <unordered_map>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "arbor/core.hpp"
#include "arbor/subtree.hpp"
#include "arbor/value.hpp"

using namespace arbor;

TEST_SUITE("subtree") {

TEST_CASE("even sub-tree recovered from any member") {
  EvenSubTree st = even_subtree_from_member(Value(359));
  CHECK(st.parent == Value(1214));
  CHECK(st.params.N == 5);
  CHECK(st.params.h == Value(5));
  REQUIRE(st.children.size() == 5);
  CHECK(st.children[0] == Value(809));
  CHECK(st.children[1] == Value(539));
  CHECK(st.children[2] == Value(359));
  CHECK(st.children[3] == Value(239));
  CHECK(st.children[4] == Value(159));
  CHECK(st.main_child == Value(809));

  EvenSubTree from_parent = even_subtree_from_member(Value(1214));
  CHECK(from_parent.children == st.children);
  EvenSubTree from_last = even_subtree_from_member(Value(159));
  CHECK(from_last.children == st.children);
}

TEST_CASE("even sub-tree of 80") {
  EvenSubTree st = even_subtree_from_member(Value(80));
  CHECK(st.parent == Value(80));
  REQUIRE(st.children.size() == 4);
  CHECK(st.children[0] == Value(53));
  CHECK(st.children[1] == Value(35));
  CHECK(st.children[2] == Value(23));
  CHECK(st.children[3] == Value(15));
  CHECK(st.main_child == Value(53));
}

TEST_CASE("minimal even sub-tree") {
  EvenSubTree st = even_subtree_from_member(Value(2));
  CHECK(st.parent == Value(2));
  REQUIRE(st.children.size() == 1);
  CHECK(st.children[0] == Value(1));
  CHECK(st.main_child == Value(1));
}

TEST_CASE("evens without parent form are rejected") {
  CHECK_THROWS_AS(even_subtree_from_member(Value(84)), DomainError);
  CHECK_THROWS_AS(even_subtree_from_member(Value(4)), DomainError);
  CHECK_THROWS_AS(even_subtree_from_member(Value(0)), DomainError);
}

TEST_CASE("children chain to the parent one step at a time") {
  CHECK(children_chain_check(even_subtree_from_member(Value(1214))));
  CHECK(children_chain_check(even_subtree_from_member(Value(80))));
  CHECK(children_chain_check(even_subtree_from_member(Value(2))));
}

TEST_CASE("child i reaches the parent in exactly i steps") {
  for (oracle::u64 t = 2; t <= 20000; t += 2) {
    if (t % 3 != 2) continue;
    EvenSubTree st = even_subtree_from_member(Value(t));
    REQUIRE(children_chain_check(st));
    for (std::size_t i = 0; i < st.children.size(); ++i) {
      REQUIRE(st.children[i].is_odd());
      REQUIRE(iterate(st.children[i], i + 1, MapVariant::kShortcut) ==
              st.parent);
      if (i > 0) REQUIRE(st.children[i] < st.children[i - 1]);
    }
  }
}

TEST_CASE("main child goldens") {
  CHECK(main_child({4, Value(1)}) == Value(53));
  CHECK(main_child({2, Value(1)}) == Value(5));
  CHECK(main_child({1, Value(1)}) == Value(1));
  CHECK(main_child({5, Value(5)}) == Value(809));
}

TEST_CASE("main child is the direct odd predecessor") {
  for (oracle::u64 t = 2; t <= 20000; t += 2) {
    auto pred = direct_odd_predecessor(Value(t));
    REQUIRE(pred.has_value() == (t % 3 == 2));
    if (pred) {
      EvenSubTree st = even_subtree_from_member(Value(t));
      REQUIRE(*pred == st.main_child);
      REQUIRE(Value(3) * *pred + Value(1) == Value(2) * Value(t));
    }
  }
}

TEST_CASE("direct odd predecessor goldens") {
  REQUIRE(direct_odd_predecessor(Value(80)).has_value());
  CHECK(*direct_odd_predecessor(Value(80)) == Value(53));
  CHECK(!direct_odd_predecessor(Value(42)).has_value());
  REQUIRE(direct_odd_predecessor(Value(2)).has_value());
  CHECK(*direct_odd_predecessor(Value(2)) == Value(1));
  CHECK_THROWS_AS(direct_odd_predecessor(Value(5)), DomainError);
}

TEST_CASE("odd sub-tree goldens") {
  OddSubTree st = odd_subtree(Value(85), 4);
  CHECK(st.parent == Value(85));
  CHECK(st.cls.cls == OddClass::kM5);
  REQUIRE(st.children.size() == 4);
  CHECK(st.children[0] == Value(170));
  CHECK(st.children[1] == Value(340));
  CHECK(st.children[2] == Value(680));
  CHECK(st.children[3] == Value(1360));
  REQUIRE(st.productive.size() == 4);
  CHECK(st.productive[0]);
  CHECK(!st.productive[1]);
  CHECK(st.productive[2]);
  CHECK(!st.productive[3]);

  OddSubTree flower = odd_subtree(Value(21), 3);
  CHECK(flower.cls.cls == OddClass::kM3);
  CHECK(flower.children == std::vector<Value>{Value(42), Value(84), Value(168)});
  CHECK(flower.productive == std::vector<bool>{false, false, false});

  OddSubTree root = odd_subtree(Value(1), 6);
  CHECK(root.children.size() == 6);
  CHECK(root.children[0] == Value(2));
  CHECK(root.children[5] == Value(64));
  CHECK(root.productive ==
        std::vector<bool>{true, false, true, false, true, false});

  CHECK_THROWS_AS(odd_subtree(Value(6), 1), DomainError);
}

TEST_CASE("productivity matches capability and alternates by class") {
  for (oracle::u64 p = 1; p <= 99999; p += 2) {
    OddSubTree st = odd_subtree(Value(p), 6);
    for (std::size_t i = 0; i < st.children.size(); ++i) {
      bool capable = st.children[i].mod3() == 2;
      REQUIRE(st.productive[i] == capable);
      if (st.cls.cls == OddClass::kM3) {
        REQUIRE(!st.productive[i]);
      } else {
        bool odd_b = (i + 1) % 2 == 1;
        bool expect = st.cls.cls == OddClass::kM1 ? !odd_b : odd_b;
        REQUIRE(st.productive[i] == expect);
      }
    }
  }
}

TEST_CASE("grandparent goldens") {
  CHECK(grandparent_of_parent(Value(404)) == Value(101));
  CHECK(grandparent_of_parent(Value(2)) == Value(1));
  CHECK(grandparent_of_parent(Value(20)) == Value(5));
  CHECK_THROWS_AS(grandparent_of_parent(Value(84)), DomainError);
  CHECK_THROWS_AS(grandparent_of_parent(Value(5)), DomainError);
}

TEST_CASE("every odd belongs to exactly one even sub-tree") {
  constexpr oracle::u64 kParentBound = 1000000;
  std::unordered_map<oracle::u64, oracle::u64> owner;
  for (oracle::u64 t = 2; t <= kParentBound; t += 2) {
    if (t % 3 != 2) continue;
    EvenSubTree st = even_subtree_from_member(Value(t));
    for (const Value& c : st.children) {
      auto [it, inserted] = owner.emplace(c.as_u64(), t);
      REQUIRE(inserted);
    }
  }
  for (oracle::u64 d = 1; d <= kParentBound; d += 2) {
    oracle::u128 parent = oracle::parent_of_odd(d);
    auto it = owner.find(d);
    if (parent <= kParentBound) {
      REQUIRE(it != owner.end());
      REQUIRE(oracle::u128{it->second} == parent);
    } else {
      REQUIRE(it == owner.end());
    }
  }
}

}  // TEST_SUITE
