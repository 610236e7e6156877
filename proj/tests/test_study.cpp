#include "navier4/study.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace navier4 {
namespace {

StudyRow row(int n, double error) { return {n, 1.0 / (double(n) * n), 1, error, StudyMetric::error}; }

TEST(ObservedOrder, Arithmetic) {
    const std::vector<StudyRow> rows{row(50, 1e-2), row(100, 2.5e-3)};
    const auto o = observed_order(rows);
    ASSERT_EQ(o.size(), 1u);
    EXPECT_NEAR(*o[0], 2.0, 1e-12);
}

TEST(ObservedOrder, PublishedFourthOrderPair) {
    const std::vector<StudyRow> rows{row(50, 2.2152e-08), row(100, 1.3831e-09)};
    EXPECT_NEAR(*observed_order(rows)[0], 4.00, 5e-3);
}

TEST(ObservedOrder, EqualErrorsGiveZero) {
    const std::vector<StudyRow> rows{row(10, 1e-3), row(30, 1e-3)};
    EXPECT_EQ(*observed_order(rows)[0], 0.0);
}

TEST(ObservedOrder, UndefinedMarkers) {
    const std::vector<StudyRow> rows{row(10, 1e-3), row(20, 0.0), row(40, 1e-5), row(80, 2.5e-6)};
    const auto o = observed_order(rows);
    ASSERT_EQ(o.size(), 3u);
    EXPECT_FALSE(o[0].has_value());
    EXPECT_FALSE(o[1].has_value());
    EXPECT_NEAR(*o[2], 2.0, 1e-12);
    EXPECT_TRUE(observed_order(std::vector<StudyRow>{row(10, 1.0)}).empty());
}

TEST(ConvergenceTable, InputOrderAndPermutation) {
    const Problem p = example1();
    const auto rule = StoppingRule::exact_error();
    const std::vector<int> ns{100, 50, 150};
    const std::vector<int> permuted{150, 100, 50};
    const auto a = convergence_table(p, ns, rule);
    const auto b = convergence_table(p, permuted, rule);
    ASSERT_EQ(a.size(), 3u);
    EXPECT_EQ(a[0], b[1]);
    EXPECT_EQ(a[1], b[2]);
    EXPECT_EQ(a[2], b[0]);
    EXPECT_EQ(a[0].n, 100);
    EXPECT_EQ(a[0].iterations, 3);
    EXPECT_NEAR(a[0].error, 2.8588e-06, 5e-10);
}

TEST(ConvergenceTable, ParallelMatchesSerial) {
    const Problem p = example1();
    const std::vector<int> ns{50, 100, 150, 200};
    const auto rule = StoppingRule::successive(1e-10);
    EXPECT_EQ(convergence_table(p, ns, rule, true), convergence_table(p, ns, rule, false));
}

TEST(ConvergenceTable, ResidualMetricWithoutExact) {
    const std::vector<int> ns{20, 40};
    const auto rows = convergence_table(example2(), ns, StoppingRule::successive(1e-10));
    for (const auto& r : rows) {
        EXPECT_EQ(r.metric, StudyMetric::residual);
        EXPECT_LE(r.error, 1e-10);
    }
    std::ostringstream os;
    write_csv(rows, os);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "N,h2,m,residual");
}

TEST(ConvergenceTable, Errors) {
    const Problem p = example1();
    const std::vector<int> empty;
    EXPECT_THROW(convergence_table(p, empty, StoppingRule::exact_error()), ArgumentError);
    const std::vector<int> bad{10, 1};
    EXPECT_THROW(convergence_table(p, bad, StoppingRule::exact_error()), ArgumentError);
    const std::vector<int> ok{10};
    EXPECT_THROW(convergence_table(example2(), ok, StoppingRule::exact_error()), ArgumentError);
    const std::vector<int> two{10, 20};
    try {
        convergence_table(p, two, StoppingRule::successive(1e-10, 2));
        FAIL();
    } catch (const NonConvergenceError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("N=10: ", 0), 0u) << e.what();
    }
}

TEST(ConvergenceTable, LinearProblemErrorsDropAtLeastFourfold) {
    const std::vector<int> ns{25, 50, 100, 200};
    const auto rows = convergence_table(testing::linear_sine_problem(), ns, StoppingRule::successive(1e-12));
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) EXPECT_GE(rows[i].error / rows[i + 1].error, 4.0);
    for (const auto& o : observed_order(rows)) EXPECT_GE(*o, 1.8);
}

TEST(ConvergenceTable, Example1NearFourthOrder) {
    const std::vector<int> ns{50, 100, 150, 200};
    const auto rows = convergence_table(example1(), ns, StoppingRule::successive(1e-10));
    for (const auto& o : observed_order(rows)) EXPECT_GE(*o, 3.5);
}

TEST(StudyCsv, Format) {
    const std::vector<StudyRow> rows{row(50, 1.4305e-4)};
    std::ostringstream os;
    write_csv(rows, os);
    EXPECT_EQ(os.str(), "N,h2,m,error\n50,4.0000e-04,1,1.4305e-04\n");
    EXPECT_EQ(sci5(2.8588e-06), "2.8588e-06");
}

}  // namespace
}  // namespace navier4
