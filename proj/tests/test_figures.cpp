#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "faraday/figures.hpp"

using namespace faraday;

namespace {

ParsedCsv parse(const OutputFile& f) {
    std::istringstream in(f.content);
    return parse_csv(in);
}

std::vector<double> column(const ParsedCsv& p, const std::string& name) {
    const auto it = std::find(p.table.columns.begin(), p.table.columns.end(), name);
    EXPECT_NE(it, p.table.columns.end()) << name;
    const auto k = static_cast<std::size_t>(it - p.table.columns.begin());
    std::vector<double> out;
    for (const auto& r : p.table.rows) out.push_back(std::stod(r[k]));
    return out;
}

}  // namespace

TEST(Figures, UnknownId) { EXPECT_THROW((void)figure_job(2, 1), std::invalid_argument); }

TEST(Figures, Figure3ProbabilityCurves) {
    const auto files = figure_job(3, 2);
    ASSERT_EQ(files.size(), 1u);
    const auto p = parse(files[0]);
    ASSERT_EQ(p.table.rows.size(), 4001u);
    const auto d = column(p, "delta/kappa_i");
    const auto PH = column(p, "P_H");
    const auto Pe = column(p, "P_empty");
    const std::size_t mid = 2000;
    EXPECT_EQ(d[mid], 0.0);
    EXPECT_GT(PH[mid], 0.99);
    // loss channel dips at zero shift
    EXPECT_LT(Pe[mid], Pe[mid - 200]);
    EXPECT_LT(Pe[mid], Pe[mid + 200]);
    EXPECT_LT(Pe[mid], 0.01);
}

TEST(Figures, Figure4Fisher) {
    const auto p = parse(figure_job(4, 2).at(0));
    ASSERT_EQ(p.table.rows.size(), 4001u);
    const auto F = column(p, "F_I");
    EXPECT_NEAR(*std::max_element(F.begin(), F.end()), 28.95, 0.05);
}

TEST(Figures, Figure5Spot) {
    SystemParams q = overcoupled_params(1.0);
    const double at10 = sensitivity_sp(q).value_scaled;
    EXPECT_LT(at10, 0.03);
    // the coupling 0.1 trace has its minimum in the overcoupled region
    q.kappa_ex = 2.0;
    EXPECT_GT(sensitivity_sp(q).value_scaled, at10);
}

TEST(Figures, Figure6MapAndRidge) {
    const auto files = figure_job(6, 2);
    ASSERT_EQ(files.size(), 2u);
    const auto map = parse(files[0]);
    EXPECT_EQ(map.table.rows.size(), 91u * 2001u);
    const auto ridge = parse(files[1]);
    EXPECT_EQ(ridge.table.rows.size(), 91u);
    for (const auto& v : column(ridge, "fwhm/kappa_i")) EXPECT_GT(v, 0.0);
}

TEST(Figures, Figure7VPortFisher) {
    const auto p = parse(figure_job(7, 2).at(0));
    ASSERT_EQ(p.table.rows.size(), 4001u);
    const auto F = column(p, "F_IV");
    const double peak = *std::max_element(F.begin(), F.end());
    EXPECT_NEAR(peak, 2.772e6, 0.01e6);
    for (const auto& f : column(p, "flag")) EXPECT_EQ(f, 0.0);
}
