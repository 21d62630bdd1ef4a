// Tests for the bound formulas and the discriminant range scan.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmrel/bounds.hpp>

#include <algorithm>
#include <cmath>
#include <string>

using namespace cmrel;
using doctest::Approx;

namespace {

Discriminant D(long v) { return Discriminant::make(v); }

}  // namespace

TEST_CASE("height bound right-hand side") {
    BoundConfig a;
    a.c0 = 1;
    a.c1 = 1;
    a.epsilon = mpq_class(1, 2);
    CHECK(height_bound_rhs(a, 2, 0, 4) == Approx(4));
    a.c1 = 2;
    CHECK(height_bound_rhs(a, 2, 0, 4) == Approx(16));

    BoundConfig b;
    b.c0 = 3;
    b.c1 = 1;
    b.epsilon = 1;
    CHECK(height_bound_rhs(b, 1, 5, 7) == Approx(36));

    CHECK_THROWS_AS(height_bound_rhs(a, 0, 0, 4), std::domain_error);
    CHECK_THROWS_AS(height_bound_rhs(a, 2, 0, 0), std::domain_error);
    CHECK_THROWS_AS(height_bound_rhs(a, 2, -1, 4), std::domain_error);

    BoundConfig bad;
    bad.epsilon = 0;
    CHECK_THROWS_AS(height_bound_rhs(bad, 1, 0, 4), std::invalid_argument);
    bad.epsilon = mpq_class(1, 2);
    bad.c0 = 0;
    CHECK_THROWS_AS(height_bound_rhs(bad, 1, 0, 4), std::invalid_argument);
}

TEST_CASE("isogeny bound right-hand side") {
    BoundConfig cfg;
    cfg.C1 = 0;
    cfg.C2 = 1;
    CHECK(isogeny_bound_rhs(cfg, 1) == Approx(0));
    cfg.C1 = 2;
    cfg.C2 = 0;
    CHECK(isogeny_bound_rhs(cfg, 1000000) == Approx(2));
    cfg.C1 = 1;
    cfg.C2 = 2;
    CHECK(isogeny_bound_rhs(cfg, 100) == Approx(1 + 2 * std::log(100.0)));
    CHECK_THROWS_AS(isogeny_bound_rhs(cfg, 0), std::domain_error);
}

TEST_CASE("conjectured prime-count right-hand side") {
    BoundConfig cfg;
    cfg.C1 = 1;
    cfg.C2 = 0;
    cfg.C3 = 2;
    CHECK(conjecture_rhs(cfg, 3, 49) == Approx(7));
    CHECK(conjecture_rhs(cfg, 1000, 49) == Approx(7));  // C2 = 0: degree drops out
    cfg.C1 = 2;
    cfg.C2 = 1;
    cfg.C3 = 1;
    CHECK(conjecture_rhs(cfg, 3, 5) == Approx(30));
    cfg.C3 = 0;
    CHECK_THROWS_AS(conjecture_rhs(cfg, 3, 5), std::invalid_argument);
    cfg.C3 = 9;
    CHECK_THROWS_AS(conjecture_rhs(cfg, 0, 5), std::domain_error);
    CHECK_THROWS_AS(conjecture_rhs(cfg, 3, 0), std::domain_error);
}

TEST_CASE("discriminant comparison check") {
    BoundConfig cfg;
    cfg.c4 = 1;
    cfg.c5 = 2;
    BrauerSiegelCheck r = brauer_siegel_check(cfg, 10, 0, 64);
    CHECK(r.lhs == Approx(64));
    CHECK(r.rhs == Approx(100));
    CHECK(r.holds);

    cfg.c5 = 1;
    r = brauer_siegel_check(cfg, 3, 2, 100);
    CHECK(r.lhs == Approx(100));
    CHECK(r.rhs == Approx(3));
    CHECK_FALSE(r.holds);

    // the larger of degree and pset count feeds the max
    r = brauer_siegel_check(cfg, 1, 7, 5);
    CHECK(r.rhs == Approx(7));
    CHECK(r.holds);
}

TEST_CASE("height bound grows strictly in every argument") {
    BoundConfig cfg;
    for (long deg = 1; deg <= 5; ++deg)
        for (long ps = 0; ps <= 4; ++ps)
            for (long absd = 3; absd <= 40; absd += 7) {
                double base = height_bound_rhs(cfg, deg, ps, absd);
                CHECK(height_bound_rhs(cfg, deg + 1, ps, absd) > base);
                CHECK(height_bound_rhs(cfg, deg, ps + 1, absd) > base);
                CHECK(height_bound_rhs(cfg, deg, ps, absd + 1) > base);
            }
}

TEST_CASE("scan of a single discriminant row") {
    auto rows = scan(D(-3), -4, -4, BoundConfig{}, 0);
    REQUIRE(rows.size() == 1);
    const ScanRecord& r = rows[0];
    CHECK(r.d == -4);
    CHECK(r.class_number == 1);
    CHECK(r.pset_size == 0);
    CHECK(r.status == "ok");
    CHECK(r.weil_height == Approx(std::log(1728.0)).epsilon(1e-9));
    CHECK(r.htbound_rhs == Approx(2));  // 1 * 1^1 * (0 + 4^(1/2))^1
    CHECK(r.isogeny_rhs == Approx(1));  // 1 + 1 * log 1
    CHECK(r.conjecture_rhs == Approx(std::pow(4.0, 1.0 / 9)));
    CHECK_FALSE(r.ht_ok);  // log 1728 > 2 under the illustrative defaults
    CHECK(r.conj_ok);
}

TEST_CASE("scan filters to valid discriminant values") {
    auto rows = scan(D(-3), -8, -7, BoundConfig{}, 128);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].d == -7);  // |d| ascending
    CHECK(rows[1].d == -8);
    CHECK(rows[0].pset_size == 1);
    CHECK(rows[1].pset_size == 1);

    CHECK(scan(D(-3), -6, -5, BoundConfig{}, 128).empty());

    auto skip = scan(D(-3), -4, -3, BoundConfig{}, 128);
    REQUIRE(skip.size() == 1);  // the base discriminant is skipped
    CHECK(skip[0].d == -4);

    CHECK_THROWS_AS(scan(D(-3), -4, 0, BoundConfig{}, 128), std::domain_error);
}

TEST_CASE("scan rows are self-consistent, ordered, and reproducible") {
    BoundConfig cfg;
    auto rows = scan(D(-3), -60, -4, cfg, 0);
    CHECK(rows.size() == 29);
    for (const ScanRecord& r : rows) {
        CAPTURE(r.d);
        CHECK(r.status == "ok");
        CHECK(std::isfinite(r.weil_height));
        CHECK(r.weil_height >= 0);
        CHECK(r.ht_ok == (r.weil_height <= r.htbound_rhs));
        CHECK(r.conj_ok == (static_cast<double>(r.pset_size) <= r.conjecture_rhs));
    }
    for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].d > rows[i].d);

    std::string a = scan_csv(rows);
    std::string b = scan_csv(scan(D(-3), -60, -4, cfg, 0));
    CHECK(a == b);
    CHECK(a.substr(0, a.find('\n')) == kScanCsvHeader);
    CHECK(static_cast<size_t>(std::count(a.begin(), a.end(), '\n')) == rows.size() + 1);
}
