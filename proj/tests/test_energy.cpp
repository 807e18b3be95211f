#include <gtest/gtest.h>

#include <vector>

#include "wbasn/energy.hpp"
#include "wbasn/rng.hpp"

using namespace wbasn;

namespace {

RadioModel unit_model() { return {0.5, 0.5, 1, RadioVariant::Literal}; }

} // namespace

TEST(DirectTx, Examples) {
    RadioModel m;
    EXPECT_EQ(direct_tx_energy(m, 0, 30), 0.0);
    EXPECT_EQ(direct_tx_energy(unit_model(), 1, 1), 1.0);
    RadioModel ex{5e-8, 1e-10, 1024, RadioVariant::Literal};
    EXPECT_NEAR(direct_tx_energy(ex, 1024, 50), 1.28256e-1, 1e-12 * 1.28256e-1);
}

TEST(DirectTx, NegativeInputsThrow) {
    RadioModel m;
    EXPECT_THROW(direct_tx_energy(m, -1, 3), NegativeInput);
    EXPECT_THROW(direct_tx_energy(m, 8, -3), NegativeInput);
}

TEST(DirectTx, FirstOrderVariantKeepsCircuitryFlat) {
    RadioModel m{2.0, 1.0, 1, RadioVariant::FirstOrder};
    EXPECT_EQ(direct_tx_energy(m, 3, 4), 2.0 * 3 + 1.0 * 3 * 16);
    EXPECT_EQ(rx_energy(m, 3), 6.0);
}

TEST(MultihopTx, Examples) {
    auto m = unit_model();
    std::vector<double> one{7.0};
    EXPECT_EQ(multihop_tx_energy(m, 3, one), direct_tx_energy(m, 3, 7.0));
    std::vector<double> three{10, 10, 10};
    EXPECT_EQ(multihop_tx_energy(m, 1, three), 300.0);
    EXPECT_EQ(multihop_tx_energy(m, 1, std::vector<double>{}), 0.0);
}

TEST(MultihopTx, EqualHopsMatchClosedForm) {
    // integer-representable constants keep the arithmetic exact
    RadioModel m{3.0, 1.0, 1, RadioVariant::Literal};
    for (int n = 1; n <= 10; ++n)
        for (int d = 0; d <= 12; ++d)
            for (int k : {1, 8, 1024}) {
                std::vector<double> hops(n, d);
                double closed = n * (3.0 + 1.0) * k * d * d;
                ASSERT_EQ(multihop_tx_energy(m, k, hops), closed);
            }
}

TEST(MultihopRx, Examples) {
    RadioModel m{0.5e-9, 0.5e-9, 1024, RadioVariant::Literal};
    EXPECT_EQ(multihop_rx_energy(m, 1024, 1), 0.0);
    EXPECT_NEAR(multihop_rx_energy(m, 1024, 3), 2.048e-6, 1e-12 * 2.048e-6);
    EXPECT_EQ(multihop_rx_energy(m, 0, 2), 0.0);
}

TEST(MultihopRx, ZeroHopsThrow) {
    EXPECT_THROW(multihop_rx_energy(RadioModel{}, 8, 0), InvalidHopCount);
    EXPECT_THROW(multihop_rx_energy(RadioModel{}, 8, -2), InvalidHopCount);
}

TEST(MultihopTotal, Examples) {
    auto m = unit_model();
    EXPECT_EQ(multihop_total_energy(m, 5, std::vector<double>{6}), direct_tx_energy(m, 5, 6));
    EXPECT_EQ(multihop_total_energy(m, 1, std::vector<double>{10, 10, 10}), 302.0);
    EXPECT_EQ(multihop_total_energy(m, 1, std::vector<double>{}), 0.0);
}

TEST(EnergyProperties, Homogeneity) {
    RadioModel m;
    Rng rng(9);
    for (int i = 0; i < 500; ++i) {
        double k = std::floor(rng.uniform(1, 4096));
        std::vector<double> d;
        int n = 1 + static_cast<int>(rng.uniform() * 6);
        for (int j = 0; j < n; ++j) d.push_back(rng.uniform(0, 80));
        std::vector<double> d2;
        for (double x : d) d2.push_back(2 * x);
        EXPECT_DOUBLE_EQ(multihop_tx_energy(m, 2 * k, d), 2 * multihop_tx_energy(m, k, d));
        EXPECT_DOUBLE_EQ(multihop_rx_energy(m, 2 * k, n), 2 * multihop_rx_energy(m, k, n));
        EXPECT_DOUBLE_EQ(multihop_tx_energy(m, k, d2), 4 * multihop_tx_energy(m, k, d));
        EXPECT_DOUBLE_EQ(direct_tx_energy(m, k, 2 * d[0]), 4 * direct_tx_energy(m, k, d[0]));
        EXPECT_EQ(multihop_rx_energy(m, k, n), multihop_rx_energy(m, k, n)); // no distance term
    }
}

TEST(EnergyProperties, MultihopAtEqualSpacingNeverCheaperThanDirect) {
    RadioModel m;
    for (int n = 1; n <= 10; ++n)
        for (double d : {0.0, 0.5, 3.0, 40.0}) {
            std::vector<double> hops(n, d);
            EXPECT_GE(multihop_total_energy(m, 1024, hops), direct_tx_energy(m, 1024, d));
        }
}

TEST(Battery, DebitExamples) {
    Battery b = debit(Battery(1.0), 0.3);
    EXPECT_DOUBLE_EQ(b.residual(), 0.7);
    EXPECT_FALSE(b.dead());

    Battery c = debit(Battery(0.2), 0.5);
    EXPECT_EQ(c.residual(), 0.0);
    EXPECT_TRUE(c.dead());
    EXPECT_EQ(c.spent_quanta(), c.initial_quanta());

    Battery d = debit(c, 1.0);
    EXPECT_EQ(d.residual_quanta(), c.residual_quanta());
    EXPECT_EQ(d.spent_quanta(), c.spent_quanta());
}

TEST(Battery, NegativeDebitThrows) {
    Battery b(1.0);
    EXPECT_THROW(b.debit(-0.1), NegativeInput);
}

TEST(Battery, ConservationIsExact) {
    Rng rng(12);
    Battery b(0.05);
    auto last = b.residual_quanta();
    while (!b.dead()) {
        b.debit(rng.uniform(0, 1e-4));
        ASSERT_LE(b.residual_quanta(), last);
        ASSERT_GE(b.residual_quanta(), 0);
        ASSERT_EQ(b.residual_quanta() + b.spent_quanta(), b.initial_quanta());
        last = b.residual_quanta();
    }
}

TEST(RadioModel, Validation) {
    EXPECT_NO_THROW(validate(RadioModel{}));
    RadioModel m;
    m.packet_bits = 0;
    EXPECT_THROW(validate(m), ValidationError);
    m = {};
    m.e_amp = -1;
    EXPECT_THROW(validate(m), ValidationError);
}
