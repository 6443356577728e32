#include <doctest.h>

#include "fdseal/partition.hpp"
#include "support.hpp"

using namespace fdseal;
using testsupport::repeated_pair_table;
using testsupport::overlapping_sets_table;

TEST_CASE("compute_partition basics") {
    Relation rel = overlapping_sets_table();

    Partition pb = compute_partition_by_name(rel, {"B"});
    REQUIRE(pb.class_count() == 2);
    std::vector<size_t> sizes;
    for (const auto& c : pb.classes) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{1, 5});

    Partition pab = compute_partition_by_name(rel, {"A", "B"});
    CHECK(pab.class_count() == 4);

    size_t total = 0;
    for (const auto& c : pab.classes) total += c.size();
    CHECK(total == rel.size());
}

TEST_CASE("single-row relation gives one singleton class") {
    Relation rel = testsupport::make_relation({"A", "B"}, {{"x", "y"}});
    Partition p = compute_partition_by_name(rel, {"A", "B"});
    REQUIRE(p.class_count() == 1);
    CHECK(p.classes[0].size() == 1);
}

TEST_CASE("encrypted-shape partition has two classes on the pair") {
    // the homogenized shape of the 4-row fixture: two ciphertext copies
    Relation rel = testsupport::make_relation(
        {"A", "B", "C"}, {{"ea1", "eb1", "ec1"},
                          {"ea1", "eb1", "ec2"},
                          {"ea2", "eb2", "ec3"},
                          {"ea2", "eb2", "ec4"}});
    Partition p = compute_partition_by_name(rel, {"A", "B"});
    REQUIRE(p.class_count() == 2);
    CHECK(p.classes[0].size() == 2);
    CHECK(p.classes[1].size() == 2);
}

TEST_CASE("partition_product equals direct computation") {
    Relation rel = overlapping_sets_table();
    Partition pa = compute_partition_by_name(rel, {"A"});
    Partition pb = compute_partition_by_name(rel, {"B"});
    Partition prod = partition_product(pa, pb, rel.size());
    Partition direct = compute_partition_by_name(rel, {"A", "B"});

    REQUIRE(prod.class_count() == direct.class_count());
    CHECK(prod.attrs == direct.attrs);
    for (size_t i = 0; i < prod.class_count(); ++i)
        CHECK(prod.classes[i].members == direct.classes[i].members);
}

TEST_CASE("product with itself and with all-singletons") {
    Relation rel = overlapping_sets_table();
    Partition pa = compute_partition_by_name(rel, {"A"});
    Partition same = partition_product(pa, pa, rel.size());
    REQUIRE(same.class_count() == pa.class_count());
    for (size_t i = 0; i < same.class_count(); ++i)
        CHECK(same.classes[i].members == pa.classes[i].members);

    // C in the 4-row fig1a shape is not all-singleton; build one explicitly
    Relation uni = testsupport::make_relation(
        {"A", "U"}, {{"a", "u1"}, {"a", "u2"}, {"a", "u3"}});
    Partition pu = compute_partition_by_name(uni, {"U"});
    Partition pa2 = compute_partition_by_name(uni, {"A"});
    Partition prod = partition_product(pa2, pu, uni.size());
    CHECK(prod.all_singletons());
    CHECK(prod.class_count() == uni.size());
}

TEST_CASE("refines on the paper fixtures") {
    Relation constant = repeated_pair_table();
    CHECK(refines(compute_partition_by_name(constant, {"A"}), compute_partition_by_name(constant, {"B"}), constant.size()));

    Relation skewed = testsupport::skewed_classes_table();
    CHECK_FALSE(
        refines(compute_partition_by_name(skewed, {"A"}), compute_partition_by_name(skewed, {"B"}), skewed.size()));

    // supersets always refine
    Relation overlapped = overlapping_sets_table();
    CHECK(refines(compute_partition_by_name(overlapped, {"A", "B"}), compute_partition_by_name(overlapped, {"A"}),
                  overlapped.size()));
}

TEST_CASE("product is commutative and refinement is monotone, randomized") {
    Rng rng(42);
    testsupport::GenOptions opt;
    opt.min_rows = 30;
    opt.max_rows = 120;
    opt.min_attrs = 3;
    opt.max_attrs = 6;
    for (int round = 0; round < 10; ++round) {
        Relation rel = testsupport::random_relation(rng, opt);
        AttrSet x{0}, y{1};
        Partition px = compute_partition(rel, x);
        Partition py = compute_partition(rel, y);
        Partition xy = partition_product(px, py, rel.size());
        Partition yx = partition_product(py, px, rel.size());
        REQUIRE(xy.class_count() == yx.class_count());
        for (size_t i = 0; i < xy.class_count(); ++i)
            CHECK(xy.classes[i].members == yx.classes[i].members);

        CHECK(refines(xy, px, rel.size()));
        CHECK(refines(xy, py, rel.size()));
    }
}

TEST_CASE("FD witness property: refinement matches the all-pairs check") {
    Rng rng(99);
    testsupport::GenOptions opt;
    opt.min_rows = 40;
    opt.max_rows = 200;
    opt.min_attrs = 3;
    opt.max_attrs = 6;
    for (int round = 0; round < 10; ++round) {
        Relation rel = testsupport::random_relation(rng, opt);
        const size_t m = rel.arity();
        for (AttrIndex rhs = 0; rhs < m; ++rhs) {
            AttrSet lhs;
            for (AttrIndex a = 0; a < m; ++a)
                if (a != rhs && rng.unit() < 0.5) lhs.push_back(a);
            if (lhs.empty()) lhs.push_back(rhs == 0 ? 1 : 0);

            bool via_refines = refines(compute_partition(rel, lhs),
                                       compute_partition(rel, AttrSet{rhs}), rel.size());
            CHECK(via_refines == testsupport::fd_holds_bruteforce(rel, lhs, rhs));
        }
    }
}
