#include "support.hpp"

#include <doctest.h>

using namespace gm4;

TEST_CASE("parallel kernels equal the serial references") {
    auto box = sl2z_box(7);
    auto a = classify_batch(box), b = classify_batch_serial(box);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    CHECK(psi_batch(box) == psi_batch_serial(box));
    CHECK(conjugacy_partition(box, Ambient::SL2Z) == conjugacy_partition_serial(box, Ambient::SL2Z));
    CHECK(conjugacy_partition(box, Ambient::GL2Z) == conjugacy_partition_serial(box, Ambient::GL2Z));
}

TEST_CASE("batch errors are rethrown") {
    std::vector<Mat2> ms = sl2z_box(1);
    ms.push_back(Mat2::diag(1, -1));
    CHECK_THROWS_AS(classify_batch(ms), NotInSL2Z);
    CHECK_THROWS_AS(psi_batch(ms), NotInSL2Z);
}

TEST_CASE("partition ids follow first appearance") {
    std::vector<Mat2> ms{mat_T(1), mat_T(-1), Mat2(1L, 0L, -1L, 1L), mat_T(-1)};
    CHECK(conjugacy_partition(ms, Ambient::SL2Z) == std::vector<int>{0, 1, 0, 1});
    CHECK(conjugacy_partition(ms, Ambient::GL2Z) == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("box enumeration") {
    auto b = sl2z_box(1);
    CHECK(b.size() == 20);
    for (const auto& m : b) CHECK(m.det() == 1);
}
