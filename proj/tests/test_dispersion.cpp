#include <gtest/gtest.h>

#include <qpmspdc/dispersion.hpp>

#include "oracles.hpp"

using namespace qpmspdc;

namespace {

const std::string data_dir = QPMSPDC_DATA_DIR;

constexpr const char* good_file = R"(# test set
name = ppln_e
form_id = handbook_ir_pole
coefficients = 4.5820, 0.099169, 0.04443, 0.02195
valid_range_nm = 400, 5000
source = handbook
)";

std::string without_line(std::string text, const std::string& key) {
    const auto at = text.find(key + " =");
    const auto end = text.find('\n', at);
    return text.erase(at, end - at + 1);
}

} // namespace

TEST(Dispersion, IndexAt1064MatchesHandbookTable) {
    const auto ln = congruent_lithium_niobate();
    const double n = refractive_index(ln, 1064.0);
    EXPECT_NEAR(n, 2.15, 0.01);
    EXPECT_NEAR(n, oracle::handbook_ne(1.064), 1e-14);
}

TEST(Dispersion, IndexAt532MatchesHandbookTable) {
    const auto ln = congruent_lithium_niobate();
    const double n = refractive_index(ln, 532.0);
    EXPECT_NEAR(n, 2.23, 0.01);
    EXPECT_NEAR(n, oracle::handbook_ne(0.532), 1e-14);
}

// Frozen from the oracle; guards against silent coefficient edits.
TEST(Dispersion, FrozenValues) {
    const auto ln = congruent_lithium_niobate();
    EXPECT_NEAR(refractive_index(ln, 532.0), 2.23415012, 1e-8);
    EXPECT_NEAR(refractive_index(ln, 810.0), 2.17479353, 1e-8);
    EXPECT_NEAR(refractive_index(ln, 1064.0), 2.15599779, 1e-8);
    EXPECT_NEAR(refractive_index(ln, 1550.0), 2.13806461, 1e-8);
}

TEST(Dispersion, AgreesWithIndependentSetWithinTwoThousandths) {
    const auto ln = congruent_lithium_niobate();
    for (double l = 500.0; l <= 2000.0; l += 10.0)
        EXPECT_NEAR(refractive_index(ln, l), oracle::zelmon_ne(l / 1000.0), 4e-3) << l;
}

TEST(Dispersion, BelowWindowIsRangeError) {
    const auto ln = congruent_lithium_niobate();
    try {
        refractive_index(ln, 299.0);
        FAIL() << "expected RangeError";
    } catch (const RangeError& e) {
        EXPECT_NE(std::string(e.what()).find("minimum"), std::string::npos);
        EXPECT_EQ(e.kind(), ErrorKind::range);
    }
    try {
        refractive_index(ln, 6000.0);
        FAIL() << "expected RangeError";
    } catch (const RangeError& e) {
        EXPECT_NE(std::string(e.what()).find("maximum"), std::string::npos);
    }
}

TEST(Dispersion, NonFiniteIsInputError) {
    const auto ln = congruent_lithium_niobate();
    EXPECT_THROW(refractive_index(ln, std::nan("")), InputError);
    EXPECT_THROW(refractive_index(ln, INFINITY), InputError);
}

TEST(Dispersion, WellFormedFileParses) {
    const auto m = parse_sellmeier(good_file);
    EXPECT_EQ(m.name, "ppln_e");
    EXPECT_EQ(m.form, SellmeierForm::handbook_ir_pole);
    EXPECT_EQ(m.coefficients.size(), 4u);
}

TEST(Dispersion, MissingFormIdIsParseError) {
    EXPECT_THROW(parse_sellmeier(without_line(good_file, "form_id")), ParseError);
    EXPECT_THROW(parse_sellmeier(without_line(good_file, "source")), ParseError);
}

TEST(Dispersion, WrongArityIsArityError) {
    std::string text = good_file;
    text.replace(text.find("4.5820, "), 8, "");
    EXPECT_THROW(parse_sellmeier(text), ArityError);
    EXPECT_THROW(make_sellmeier("x", SellmeierForm::sellmeier_3pole, {1, 2, 3}, {400, 5000}, ""), ArityError);
}

TEST(Dispersion, MalformedFilesAreRejected) {
    EXPECT_THROW(parse_sellmeier(std::string(good_file) + "name = again\n"), ParseError);
    EXPECT_THROW(parse_sellmeier(std::string(good_file) + "garbage line\n"), ParseError);
    std::string unknown = good_file;
    unknown.replace(unknown.find("handbook_ir_pole"), 16, "cauchy");
    EXPECT_THROW(parse_sellmeier(unknown), ParseError);
    std::string badnum = good_file;
    badnum.replace(badnum.find("4.5820"), 6, "4.58x0");
    EXPECT_THROW(parse_sellmeier(badnum), ParseError);
    std::string badrange = good_file;
    badrange.replace(badrange.find("400, 5000"), 9, "200, 5000");
    EXPECT_THROW(parse_sellmeier(badrange), InputError);
}

TEST(Dispersion, ShippedFilesLoad) {
    const auto shipped = load_sellmeier(data_dir + "/ppln_e_handbook.sellmeier");
    EXPECT_EQ(shipped, congruent_lithium_niobate());
    const auto alt = load_sellmeier(data_dir + "/ln_e_zelmon.sellmeier");
    EXPECT_EQ(alt.form, SellmeierForm::sellmeier_3pole);
    EXPECT_NEAR(refractive_index(alt, 1064.0), oracle::zelmon_ne(1.064), 1e-14);
    EXPECT_THROW(load_sellmeier(data_dir + "/missing.sellmeier"), IoError);
}

TEST(Dispersion, NormalDispersionOn500To2000) {
    const auto ln = congruent_lithium_niobate();
    double prev = refractive_index(ln, 500.0);
    for (int l = 501; l <= 2000; ++l) {
        const double n = refractive_index(ln, l);
        ASSERT_LT(n, prev) << l;
        prev = n;
    }
}

TEST(Dispersion, Corridor500To1600) {
    const auto ln = congruent_lithium_niobate();
    for (int l = 500; l <= 1600; ++l) {
        const double n = refractive_index(ln, l);
        ASSERT_GT(n, 2.0);
        ASSERT_LT(n, 2.5);
    }
}

TEST(Dispersion, IndexInsideOneToFourAcrossWindow) {
    for (const auto& m : {congruent_lithium_niobate(), load_sellmeier(data_dir + "/ln_e_zelmon.sellmeier")})
        for (double l = m.valid_range.min_nm; l <= m.valid_range.max_nm; l += 1.0) {
            const double n = refractive_index(m, l);
            ASSERT_GT(n, 1.0);
            ASSERT_LT(n, 4.0);
        }
}

TEST(Dispersion, BitIdenticalRepeats) {
    const auto ln = congruent_lithium_niobate();
    for (double l : {532.0, 810.0, 1064.0, 1550.07}) EXPECT_EQ(refractive_index(ln, l), refractive_index(ln, l));
}
