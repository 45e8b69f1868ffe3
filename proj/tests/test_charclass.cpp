#include <catch2/catch_amalgamated.hpp>

#include "ccalc/charclass.hpp"
#include "test_util.hpp"

using namespace ccalc;

namespace {

RingPtr free_even(std::vector<std::pair<std::string, int>> gens, int trunc,
                  Coeff coeff = Coeff::Q) {
    RingPresentation p;
    p.coeff = coeff;
    for (auto& [n, d] : gens) p.gens.push_back({n, d});
    p.trunc = trunc;
    return ring_new(p);
}

// Ring on formal degree-2 roots y1..yn.
RingPtr root_ring(int n, int trunc) {
    std::vector<std::pair<std::string, int>> gens;
    for (int i = 1; i <= n; ++i) gens.push_back({"y" + std::to_string(i), 2});
    return free_even(std::move(gens), trunc);
}

// Elementary symmetric polynomials of the root generators, e[0] = 1.
std::vector<Element> elementary(const RingPtr& r, int n) {
    Element prod = elem_one(r);
    for (int i = 1; i <= n; ++i) prod = prod * (elem_one(r) + elem_gen(r, "y" + std::to_string(i)));
    std::vector<Element> e;
    for (int l = 0; l <= n; ++l) e.push_back(graded_part(prod, 2 * l));
    return e;
}

// Coefficients of t^j in the product of (1 + t*(x + y_i)): the degree-j
// elementary symmetric polynomial in the shifted roots.
std::vector<EquivariantPoly> shifted_elementary(const RingPtr& r, int n) {
    std::vector<EquivariantPoly> tot{ep_one(r)};
    for (int i = 1; i <= n; ++i) {
        EquivariantPoly root = ep_zero(r);
        ep_set(root, 1, elem_one(r));
        ep_set(root, 0, elem_gen(r, "y" + std::to_string(i)));
        std::vector<EquivariantPoly> nxt(tot.size() + 1, ep_zero(r));
        for (size_t j = 0; j < tot.size(); ++j) {
            nxt[j] = ep_add(nxt[j], tot[j]);
            nxt[j + 1] = ep_add(nxt[j + 1], ep_mul(tot[j], root));
        }
        tot = std::move(nxt);
    }
    return tot;
}

void expect_code(const std::string& code, const std::function<void()>& f) {
    try {
        f();
        FAIL("expected " + code);
    } catch (const CalcError& e) {
        REQUIRE(e.code == code);
    }
}

} // namespace

TEST_CASE("segre classes invert the total chern class") {
    auto r = free_even({{"c1", 2}, {"c2", 4}}, 8);
    Element c1 = elem_gen(r, "c1"), c2 = elem_gen(r, "c2");

    SECTION("trivial bundle") {
        ComplexBundleClass V{r, 3, {}};
        auto s = segre(V);
        REQUIRE(s[0] == elem_one(r));
        for (size_t j = 1; j < s.size(); ++j) REQUIRE(s[j].is_zero());
    }
    SECTION("line bundle alternates") {
        ComplexBundleClass V{r, 1, {c1}};
        auto s = segre(V);
        REQUIRE(s[1] == -c1);
        REQUIRE(s[2] == c1 * c1);
        REQUIRE(s[3] == -(c1 * c1 * c1));
    }
    SECTION("inversion is an involution") {
        ComplexBundleClass V{r, 2, {c1, c2}};
        auto s = segre(V);
        auto back = total_class_inverse(r, s);
        REQUIRE(back[0] == elem_one(r));
        REQUIRE(back[1] == c1);
        REQUIRE(back[2] == c2);
        for (size_t j = 3; j < back.size(); ++j) REQUIRE(back[j].is_zero());
    }
    SECTION("c*s = 1 for random chern data") {
        std::mt19937 rng(424242);
        for (int trial = 0; trial < 25; ++trial) {
            ComplexBundleClass V{r, 2,
                                 {testutil::random_homogeneous(rng, r, 2, 3),
                                  testutil::random_homogeneous(rng, r, 4, 3)}};
            auto s = segre(V);
            Element total_s = elem_zero(r);
            for (auto& e : s) total_s = total_s + e;
            REQUIRE(total_chern(V) * total_s == elem_one(r));
        }
    }
    SECTION("works over Z2") {
        auto z2 = free_even({{"w2", 2}}, 8, Coeff::Z2);
        ComplexBundleClass V{z2, 1, {elem_gen(z2, "w2")}};
        auto s = segre(V);
        for (int j = 1; j <= 4; ++j) REQUIRE(s[size_t(j)] == elem_pow(elem_gen(z2, "w2"), j));
    }
    SECTION("inhomogeneous chern data is rejected") {
        ComplexBundleClass V{r, 1, {elem_one(r) + c1}};
        expect_code("DegreeMismatch", [&] { segre(V); });
    }
}

TEST_CASE("equivariant euler polynomial") {
    auto r = free_even({{"c1", 2}, {"c2", 4}}, 8);
    Element c1 = elem_gen(r, "c1"), c2 = elem_gen(r, "c2");

    EquivariantPoly e0 = equivariant_euler(0, ComplexBundleClass{r, 0, {}});
    REQUIRE(e0 == ep_one(r));

    EquivariantPoly e1 = equivariant_euler(1, ComplexBundleClass{r, 1, {}});
    REQUIRE(ep_coeff(e1, 1) == elem_one(r));
    REQUIRE(ep_coeff(e1, 0).is_zero());

    EquivariantPoly e2 = equivariant_euler(2, ComplexBundleClass{r, 2, {c1, c2}});
    REQUIRE(ep_coeff(e2, 2) == elem_one(r));
    REQUIRE(ep_coeff(e2, 1) == c1);
    REQUIRE(ep_coeff(e2, 0) == c2);
    REQUIRE(ep_to_text(e2) == "x^2 + c1*x + c2");

    expect_code("RankTooSmall",
                [&] { equivariant_euler(1, ComplexBundleClass{r, 1, {c1, c2}}); });
    expect_code("RankTooSmall", [&] { equivariant_euler(-1, ComplexBundleClass{r, 0, {}}); });

    SECTION("matches the product of the root factors") {
        for (int a = 1; a <= 3; ++a) {
            auto rr = root_ring(a, 2 * a);
            auto e = elementary(rr, a);
            std::vector<Element> chern(e.begin() + 1, e.end());
            EquivariantPoly got = equivariant_euler(a, ComplexBundleClass{rr, a, chern});
            EquivariantPoly want = ep_one(rr);
            for (int i = 1; i <= a; ++i) {
                EquivariantPoly f = ep_zero(rr);
                ep_set(f, 1, elem_one(rr));
                ep_set(f, 0, elem_gen(rr, "y" + std::to_string(i)));
                want = ep_mul(want, f);
            }
            REQUIRE(got == want);
        }
    }
}

TEST_CASE("equivariant chern classes against the formal-roots oracle") {
    SECTION("small closed forms") {
        auto r = free_even({{"s1", 2}}, 6);
        std::vector<Element> s{elem_one(r), elem_gen(r, "s1")};
        EquivariantPoly c0 = equivariant_chern(r, 3, s, 0);
        REQUIRE(c0 == ep_one(r));
        EquivariantPoly c1 = equivariant_chern(r, 3, s, 1);
        REQUIRE(ep_coeff(c1, 1) == elem_const(r, 3));
        REQUIRE(ep_coeff(c1, 0) == elem_gen(r, "s1"));
        expect_code("NegativeRank", [&] { equivariant_chern(r, -1, s, 1); });
    }
    SECTION("roots oracle sweep") {
        for (int a = 0; a <= 3; ++a) {
            int jmax = 5;
            auto rr = root_ring(std::max(a, 1), 2 * jmax);
            auto oracle = shifted_elementary(rr, a);
            auto e = elementary(rr, a); // s_l identified with e_l
            for (int j = 0; j <= jmax; ++j) {
                EquivariantPoly got = equivariant_chern(rr, a, e, j);
                EquivariantPoly want = j < int(oracle.size()) ? oracle[size_t(j)] : ep_zero(rr);
                REQUIRE(got == want);
            }
        }
    }
    SECTION("entries past the rank are ignored") {
        auto r = free_even({{"s1", 2}, {"s2", 4}}, 8);
        std::vector<Element> s{elem_one(r), elem_gen(r, "s1"), elem_gen(r, "s2")};
        std::vector<Element> cut{elem_one(r), elem_gen(r, "s1")};
        for (int j = 0; j <= 4; ++j)
            REQUIRE(equivariant_chern(r, 1, s, j) == equivariant_chern(r, 1, cut, j));
    }
}

TEST_CASE("projective pushforward") {
    auto r = free_even({{"c1", 2}, {"c2", 4}, {"c3", 6}}, 8);
    ComplexBundleClass V{r, 3, {elem_gen(r, "c1"), elem_gen(r, "c2"), elem_gen(r, "c3")}};
    auto s = segre(V);

    REQUIRE(projective_pushforward(r, 3, s, 0).is_zero());
    REQUIRE(projective_pushforward(r, 3, s, 1).is_zero());
    REQUIRE(projective_pushforward(r, 3, s, 2) == elem_one(r));
    REQUIRE(projective_pushforward(r, 3, s, 3) == s[1]);
    REQUIRE(s[1] == -elem_gen(r, "c1"));

    SECTION("agrees with the rewriting oracle") {
        for (int a = 1; a <= 4; ++a) {
            std::vector<std::pair<std::string, int>> gens;
            for (int i = 1; i <= a; ++i) gens.push_back({"c" + std::to_string(i), 2 * i});
            auto ra = free_even(std::move(gens), 8);
            std::vector<Element> chern;
            for (int i = 1; i <= a; ++i) chern.push_back(elem_gen(ra, "c" + std::to_string(i)));
            auto sa = segre(ComplexBundleClass{ra, a, chern});
            for (int j = 0; j <= a + 4; ++j) {
                Element direct = projective_pushforward(ra, a, sa, j);
                Element rewritten = pushforward_rewrite_oracle(ra, a, chern, j);
                REQUIRE(direct == rewritten);
            }
        }
    }
    SECTION("oracle works with composite chern entries") {
        Element c1 = elem_gen(r, "c1");
        std::vector<Element> chern{c1 * Rat(2), c1 * c1 - elem_gen(r, "c2")};
        auto s2 = segre(ComplexBundleClass{r, 2, chern});
        for (int j = 0; j <= 6; ++j)
            REQUIRE(projective_pushforward(r, 2, s2, j) ==
                    pushforward_rewrite_oracle(r, 2, chern, j));
    }
}

TEST_CASE("chern character") {
    auto r = free_even({{"u", 2}, {"v", 2}}, 10);
    Element u = elem_gen(r, "u"), v = elem_gen(r, "v");

    SECTION("line bundle exponentiates") {
        ComplexBundleClass L{r, 1, {u}};
        REQUIRE(chern_character(L) == series_exp(u));
    }
    SECTION("trivial bundle is its rank") {
        REQUIRE(chern_character(ComplexBundleClass{r, 5, {}}) == elem_const(r, 5));
        REQUIRE(chern_character(ComplexBundleClass{r, -2, {}}) == elem_const(r, -2));
    }
    SECTION("rank-2 degree-4 part is (c1^2 - 2c2)/2") {
        auto r2 = free_even({{"c1", 2}, {"c2", 4}}, 8);
        Element c1 = elem_gen(r2, "c1"), c2 = elem_gen(r2, "c2");
        Element ch = chern_character(ComplexBundleClass{r2, 2, {c1, c2}});
        REQUIRE(graded_part(ch, 0) == elem_const(r2, 2));
        REQUIRE(graded_part(ch, 2) == c1);
        REQUIRE(graded_part(ch, 4) == (c1 * c1 - c2 * Rat(2)) * Rat(1, 2));
        REQUIRE(graded_part(ch, 6) == (c1 * c1 * c1 - c1 * c2 * Rat(3)) * Rat(1, 6));
    }
    SECTION("multiplicative on line-bundle tensor products") {
        ComplexBundleClass L1{r, 1, {u}}, L2{r, 1, {v}}, T{r, 1, {u + v}};
        REQUIRE(chern_character(T) == chern_character(L1) * chern_character(L2));
    }
    SECTION("additive on sums") {
        ComplexBundleClass L1{r, 1, {u}}, L2{r, 1, {v}};
        ComplexBundleClass S{r, 2, {u + v, u * v}};
        REQUIRE(chern_character(S) == chern_character(L1) + chern_character(L2));
    }
    SECTION("integral rings are rejected") {
        auto z = free_even({{"c1", 2}}, 6, Coeff::Z);
        expect_code("NonRationalRing",
                    [&] { chern_character(ComplexBundleClass{z, 1, {elem_gen(z, "c1")}}); });
    }
}

TEST_CASE("todd class") {
    auto r = free_even({{"c1", 2}, {"c2", 4}, {"c3", 6}}, 8);
    Element c1 = elem_gen(r, "c1"), c2 = elem_gen(r, "c2");

    SECTION("low-degree table") {
        Element td = todd_class(ComplexBundleClass{r, 3, {c1, c2, elem_gen(r, "c3")}});
        REQUIRE(graded_part(td, 0) == elem_one(r));
        REQUIRE(graded_part(td, 2) == c1 * Rat(1, 2));
        REQUIRE(graded_part(td, 4) == (c1 * c1 + c2) * Rat(1, 12));
        REQUIRE(graded_part(td, 6) == c1 * c2 * Rat(1, 24));
    }
    SECTION("trivial bundle") {
        REQUIRE(todd_class(ComplexBundleClass{r, 4, {}}) == elem_one(r));
    }
    SECTION("multiplicative over explicit roots") {
        auto rr = root_ring(2, 8);
        Element y1 = elem_gen(rr, "y1"), y2 = elem_gen(rr, "y2");
        ComplexBundleClass L1{rr, 1, {y1}}, L2{rr, 1, {y2}};
        ComplexBundleClass S{rr, 2, {y1 + y2, y1 * y2}};
        REQUIRE(todd_class(S) == todd_class(L1) * todd_class(L2));
    }
    SECTION("defining series reproduces the line-bundle todd class") {
        auto r1 = free_even({{"c1", 2}}, 12);
        Element td = todd_class(ComplexBundleClass{r1, 1, {elem_gen(r1, "c1")}});
        RationalSeries ts = todd_series(6);
        for (int k = 0; k <= 6; ++k)
            REQUIRE(graded_part(td, 2 * k) == elem_pow(elem_gen(r1, "c1"), k) * ts.coeff(k));
    }
}

TEST_CASE("a-hat class") {
    auto r = free_even({{"p1", 4}, {"p2", 8}}, 8);
    Element p1 = elem_gen(r, "p1"), p2 = elem_gen(r, "p2");

    SECTION("low-degree table") {
        RealBundleClass W{r, 4, {}, std::vector<Element>{p1, p2}, std::nullopt};
        Element a = ahat_class(W);
        REQUIRE(graded_part(a, 0) == elem_one(r));
        REQUIRE(graded_part(a, 4) == p1 * Rat(-1, 24));
        REQUIRE(graded_part(a, 8) == (p1 * p1 * Rat(7) - p2 * Rat(4)) * Rat(1, 5760));
    }
    SECTION("trivial and missing data") {
        RealBundleClass W0{r, 3, {}, std::vector<Element>{}, std::nullopt};
        REQUIRE(ahat_class(W0) == elem_one(r));
        RealBundleClass W1{r, 3, {}, std::nullopt, std::nullopt};
        expect_code("MissingPontryagin", [&] { ahat_class(W1); });
    }
    SECTION("multiplicative over explicit pontryagin roots") {
        auto rr = free_even({{"z1", 4}, {"z2", 4}}, 8);
        Element z1 = elem_gen(rr, "z1"), z2 = elem_gen(rr, "z2");
        RealBundleClass W1{rr, 3, {}, std::vector<Element>{z1}, std::nullopt};
        RealBundleClass W2{rr, 3, {}, std::vector<Element>{z2}, std::nullopt};
        RealBundleClass S{rr, 6, {}, std::vector<Element>{z1 + z2, z1 * z2}, std::nullopt};
        REQUIRE(ahat_class(S) == ahat_class(W1) * ahat_class(W2));
    }
}

TEST_CASE("equivariant todd coefficients") {
    SECTION("trivial bundles give scalar coefficients") {
        auto r = free_even({{"c1", 2}}, 4);
        for (int d = 1; d <= 4; ++d) {
            auto td = equivariant_todd(ComplexBundleClass{r, d, {}}, 6);
            RationalSeries want = rs_pow(todd_series(6), d);
            for (int j = 0; j <= 6; ++j) REQUIRE(td[size_t(j)] == elem_const(r, want.coeff(j)));
            REQUIRE(constant_term(td[1]) == Rat(d, 2));
        }
    }
    SECTION("frozen scalars for a single trivial line") {
        auto r = free_even({{"c1", 2}}, 2);
        auto td = equivariant_todd(ComplexBundleClass{r, 1, {}}, 4);
        REQUIRE(constant_term(td[0]) == 1);
        REQUIRE(constant_term(td[1]) == Rat(1, 2));
        REQUIRE(constant_term(td[2]) == Rat(1, 12));
        REQUIRE(constant_term(td[3]) == 0);
        REQUIRE(constant_term(td[4]) == Rat(-1, 720));
    }
    SECTION("x = 0 recovers the todd class") {
        auto r = free_even({{"c1", 2}, {"c2", 4}}, 8);
        ComplexBundleClass V{r, 2, {elem_gen(r, "c1"), elem_gen(r, "c2")}};
        auto td = equivariant_todd(V, 3);
        REQUIRE(td[0] == todd_class(V));
    }
    SECTION("line bundle matches the shifted-series oracle") {
        auto r = free_even({{"y", 2}}, 8);
        Element y = elem_gen(r, "y");
        ComplexBundleClass L{r, 1, {y}};
        auto td = equivariant_todd(L, 4);
        RationalSeries ts = todd_series(10);
        for (int j = 0; j <= 4; ++j) {
            Element want = elem_zero(r); // [x^j] td(x+y) = sum_k td_k binom(k,j) y^{k-j}
            for (int k = j; k <= j + 4; ++k)
                want = want + elem_pow(y, k - j) * (ts.coeff(k) * Rat(binom_int(Int(k), Int(j))));
            REQUIRE(td[size_t(j)] == want);
        }
        REQUIRE(constant_term(td[1]) == Rat(1, 2));
    }
}

TEST_CASE("mu and sw class conversions") {
    auto r = free_even({{"t", 3}, {"c1", 2}, {"c2", 4}}, 9);
    Element t = elem_gen(r, "t"), c1 = elem_gen(r, "c1"), c2 = elem_gen(r, "c2");

    SECTION("trivial bundle is the identity") {
        std::vector<Element> mu{t, t * c1, t * c2};
        auto sw = mu_to_sw(mu, {elem_one(r)});
        REQUIRE(sw.size() == mu.size());
        for (size_t i = 0; i < mu.size(); ++i) REQUIRE(sw[i] == mu[i]);
    }
    SECTION("single mu spreads by the segre classes") {
        std::vector<Element> s{elem_one(r), c1, c1 * c1};
        auto sw = mu_to_sw({t}, s);
        REQUIRE(sw.size() == 3);
        REQUIRE(sw[0] == t);
        REQUIRE(sw[1] == t * c1);
        REQUIRE(sw[2] == t * c1 * c1);
    }
    SECTION("roundtrip through a genuine bundle") {
        ComplexBundleClass V{r, 2, {c1, c2}};
        auto s = segre(V);
        std::vector<Element> c{elem_one(r), c1, c2};
        std::mt19937 rng(1337);
        for (int trial = 0; trial < 15; ++trial) {
            std::vector<Element> mu;
            for (int m = 0; m < 3; ++m)
                mu.push_back(testutil::random_homogeneous(rng, r, 3 + 2 * m, 3));
            auto sw = mu_to_sw(mu, s);
            auto back = sw_to_mu(sw, c);
            for (size_t m = 0; m < mu.size(); ++m) REQUIRE(back[m] == mu[m]);
            for (size_t m = mu.size(); m < back.size(); ++m) REQUIRE(back[m].is_zero());
        }
    }
    SECTION("degree policing") {
        expect_code("DegreeMismatch", [&] { mu_to_sw({c1, c1}, {elem_one(r)}); });
        expect_code("DegreeMismatch", [&] { mu_to_sw({elem_one(r) + c1}, {elem_one(r)}); });
        expect_code("DegreeMismatch", [&] { mu_to_sw({t}, {elem_one(r), t}); });
    }
}

TEST_CASE("bundle serialization and validation") {
    auto r = free_even({{"c1", 2}, {"c2", 4}}, 8);
    Element c1 = elem_gen(r, "c1"), c2 = elem_gen(r, "c2");

    SECTION("complex bundle roundtrip") {
        ComplexBundleClass V{r, -3, {c1, c2}};
        Json j = complex_bundle_to_json(V);
        ComplexBundleClass back = complex_bundle_from_json(r, j);
        REQUIRE(back.rank == -3);
        REQUIRE(back.chern.size() == 2);
        REQUIRE(back.chern[0] == c1);
        REQUIRE(back.chern[1] == c2);
        expect_code("BadSchema", [&] { complex_bundle_from_json(r, Json::array()); });
    }
    SECTION("real bundle roundtrip with options") {
        auto rw = free_even({{"w1", 1}, {"w2", 2}, {"w3", 3}}, 6, Coeff::Z2);
        RealBundleClass W{rw, 3,
                          {elem_gen(rw, "w1"), elem_gen(rw, "w2"), elem_gen(rw, "w3")},
                          std::nullopt, elem_gen(rw, "w2")};
        Json j = real_bundle_to_json(W);
        RealBundleClass back = real_bundle_from_json(rw, j);
        REQUIRE(back.sw.size() == 3);
        REQUIRE(back.kappa.has_value());
        REQUIRE(*back.kappa == elem_gen(rw, "w2"));
        REQUIRE(!back.pontryagin.has_value());
        REQUIRE(validate_real_bundle(back).empty());
    }
    SECTION("soft warnings") {
        auto rw = free_even({{"w1", 1}, {"w2", 2}, {"w3", 3}}, 6, Coeff::Z2);
        RealBundleClass W{rw, 2,
                          {elem_gen(rw, "w1"), elem_gen(rw, "w2"), elem_gen(rw, "w3")},
                          std::nullopt, std::nullopt};
        auto warnings = validate_real_bundle(W);
        REQUIRE(warnings.size() == 1);
        REQUIRE(warnings[0].find("w3") != std::string::npos);

        W.kappa = elem_gen(rw, "w1") * elem_gen(rw, "w1"); // degree 2 but not w2
        auto warn2 = validate_real_bundle(W);
        REQUIRE(warn2.size() == 2);
        REQUIRE(warn2[1].find("kappa") != std::string::npos);
    }
    SECTION("hard degree errors") {
        RealBundleClass W{r, 2, {c1}, std::nullopt, std::nullopt}; // w1 must have degree 1
        expect_code("DegreeMismatch", [&] { validate_real_bundle(W); });
    }
    SECTION("equivariant poly json") {
        EquivariantPoly p = equivariant_euler(2, ComplexBundleClass{r, 2, {c1, c2}});
        Json j = ep_to_json(p);
        REQUIRE(ep_from_json(r, j) == p);
    }
}
