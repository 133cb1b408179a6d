"""Boundary images, stage records, gamma data and expected tables for
P^n(2^r), 4 <= n <= 11.

Boundary facts are stored only for generators that are not suspensions
(the engine handles d(E a) = beta_k o (2^r iota_k) o a) and only where
composition with a stored image does not already determine the value.
Stage records carry what the exact sequences cannot see: the extra
relation from [beta_k, gamma_3] and conclusions about extensions.
"""

P4 = "derived: pinch-map fiber of P^4(2^r)"
P4_EXT = "derived: Toda bracket lift and stable summand of P^4(2^r)"


def build(b) -> None:
    bnd, stage, con, param, table = b.bnd, b.stage, b.con, b.param, b.table
    G = b.GAMMA["k"]

    param("s1", "sign", (1, -1), "sign of 2^(r-1) beta_3 nu' in the boundary of nu_4")
    param("s3", "sign", (1, -1), "sign of gamma_3 for k = 3")

    # ======================================================== P^4, k = 3
    G["3"] = {"gamma3": "s3*2^r*[beta_3,beta_6]"}
    bnd("moore(3)", "nu_4", "s1*2^(r-1)*beta_3 nu' + 2^r*beta_6", P4)
    stage("J3(3):10", P4,
          extra=["2^r*[beta_3,[beta_3,beta_6]]"],
          constraints=[
              con("lift_double_equals", "derived: Toda bracket {gamma_3, eta_8, 2 iota_9}", "r==1",
                  of="eta_9", value="[beta_3,beta_6] eta_8 eta_9"),
              con("lift_order", "derived: Toda bracket {gamma_3, eta_8, 2 iota_9}", "r>=2",
                  of="eta_9", order="2"),
          ])
    stage("P4:6", b.IMPORTED_LOW, constraints=[con("splits", b.IMPORTED_LOW)])
    stage("P4:7", b.IMPORTED_LOW, constraints=[con("splits", b.IMPORTED_LOW)])
    stage("P4:8", P4_EXT, constraints=[
        con("splits", P4_EXT, "r==1 or r>=3"),
        con("lift_order", P4_EXT, "r==2", of="E(nu') eta_7", order="2"),
        con("lift_min_order", "derived: suspension of twice the lift of nu_4 eta_7 is nonzero", "r==2",
            of="nu_4 eta_7", order="4"),
        con("has_summand", "derived: pi_8(P^9(4)) is a retract", "r==2", group="4"),
    ])
    stage("P4:9", P4_EXT, constraints=[con("splits", "derived: lifts composed with eta_8")])
    stage("P4:10", P4_EXT, constraints=[
        con("has_summand", "derived: pi_10(P^9(2^r)) is a retract", "r==1", group="4"),
        con("has_summand", "derived: pi_10(P^9(2^r)) is a retract", "r>=2", group="(2)^2"),
        con("summand_splits_off", "derived: loop homology of the iterated Samelson product",
            element="[beta_3,[beta_3,beta_6]]"),
    ])
    T1 = "table: homotopy of P^4(2^r)"
    table(4, 6, [("r<=2", "(2)^(1+theta(r)) + 2^(r+1)"), ("r>=3", "2 + 4 + 2^r")], T1)
    table(4, 7, [(None, "(2)^2 + 4^theta(r)")], T1)
    table(4, 8, [("r==1", "(2)^3"), ("r==2", "(2)^2 + (4)^2"), ("r>=3", "(2)^4 + 2^r")], T1)
    table(4, 9, [(None, "(2)^(2+theta(r)) + 2^m(r,3)")], T1)
    table(4, 10, [("r==1", "(2)^2 + 4"), ("r>=2", "(2)^2 + 2^m(r,3) + 2^r")], T1)

    # ======================================================== P^5, k = 4
    P5 = "derived: pinch-map fiber of P^5(2^r)"
    P5_EXT = "derived: Toda bracket lifts for P^5(2^r)"
    param("a0", "odd", (1, 3, 5), "odd unit in gamma_3 for k = 4")
    param("s4", "sign", (1, -1), "sign of the nu_4 sigma' term in the second-stage boundary of sigma_8")
    param("c0", "integer", (0, 1), "undetermined beta_11 nu_11 coefficient, r = 1")
    param("d0", "integer", (0, 1, 2), "undetermined Samelson product coefficient")
    param("s5", "sign", (1, -1), "sign of beta_4 E(eps') in the boundary of nu_5 sigma_8, r = 1")
    for v in ("x1", "y1", "z1", "w1", "u1", "v1"):
        param(v, "integer", (0, 1), "undetermined term in the boundary of nu_5 sigma_8, r = 1")
    param("x2", "odd", (1, 3), "unit in the boundary of nu_5 sigma_8, r = 2")
    for v in ("y2", "z2", "w2"):
        param(v, "integer", (0, 1), "undetermined term in the boundary of nu_5 sigma_8, r = 2")
    G["4"] = {"gamma3": "2^r*a0*beta_11"}

    bnd("gamma2(4)", "E(sigma')", "2^(r+1)*beta_4 nu_4 sigma' - 2^(r+1)*beta_4 E(eps')", P5,
        note="gamma_2 o sigma' with E(nu') sigma' = 2 E(eps')")
    bnd("gamma2(4)", "sigma_8",
        "s4*2^r*beta_4 nu_4 sigma' + 2^r*beta_4 E(eps') + 2^r*(1-theta(r))*c0*beta_11 nu_11"
        " + 2^r*d0*[beta_4,beta_11]", P5,
        note="Hopf invariant of sigma_8 is iota_15; the remaining terms are not determined")
    bnd("moore(4)", "sigma'''", "0", "derived: sigma''' lifts through the pinch fiber",
        note="E sigma''' = 2 sigma'' and the boundary lands in an elementary group")
    bnd("moore(4)", "nu_5 sigma_8",
        "s5*beta_4 E(eps') + x1*beta_4 nu_4 sigma' + x1*beta_4 E(eps') + y1*beta_4 eta_4 mu_5"
        " + z1*beta_11 nu_11 + w1*[beta_4,beta_11] + u1*lift(nu_8 nu_11) + v1*lift(eta_12) eta_13",
        P5, when="r==1")
    bnd("moore(4)", "nu_5 sigma_8",
        "2*x2*beta_4 nu_4 sigma' + 2*y2*beta_4 E(eps') + 2*z2*beta_11 nu_11 + 2*w2*[beta_4,beta_11]",
        P5, when="r==2", note="at least one coefficient is a unit; the unit is placed on nu_4 sigma'")
    bnd("moore(4)", "nu_5 sigma_8", "0", P5, when="r>=3")

    stage("J2(4):9", P5, constraints=[
        con("lift_double_equals", "derived: Toda bracket {gamma_2, eta_7, 2 iota_8}", "r==1",
            of="eta_8", value="beta_4 E(nu') eta_7 eta_8"),
        con("lift_order", "derived: Toda bracket {gamma_2, eta_7, 2 iota_8}", "r>=2", of="eta_8", order="2"),
    ])
    stage("J2(4):10", P5, constraints=[con("splits", "derived: lift of eta_8 composed with eta_9")],
          lifts={"eta_8 eta_9": "lift(eta_8) eta_9"})
    stage("J2(4):11", P5, constraints=[con("splits", "derived: free summand and a lift of a multiple of nu_8")])
    stage("J2(4):14", P5, beyond_range=True,
          constraints=[con("splits", "derived: lift of nu_8 nu_11 has order 2")])
    stage("J3(4):13", P5, constraints=[
        con("lift_double_equals", "derived: Toda bracket {gamma_3, eta_11, 2 iota_12}", "r==1",
            of="eta_12", value="beta_11 eta_11 eta_12"),
        con("lift_order", "derived: Toda bracket {gamma_3, eta_11, 2 iota_12}", "r>=2", of="eta_12", order="2"),
    ])
    stage("J3(4):14", P5, extra=["2^r*a0*[beta_4,beta_11]"],
          constraints=[con("splits", "derived: lift of eta_12 composed with eta_13")],
          lifts={"eta_12 eta_13": "lift(eta_12) eta_13"})
    stage("P5:8", b.IMPORTED_LOW, constraints=[con("splits", b.IMPORTED_LOW)])
    stage("P5:9", P5_EXT, constraints=[
        con("lift_double_equals", "derived: Toda bracket {2 iota_4, nu_4 eta_7, 4 iota_9}", "r==2",
            of="nu_5 eta_8", value="beta_4 E(nu') eta_7 eta_8"),
        con("lift_order", P5_EXT, "r>=3", of="nu_5 eta_8", order="2"),
    ])
    stage("P5:10", P5_EXT, constraints=[con("splits", "derived: lift of nu_5 eta_8 composed with eta_9")])
    stage("P5:11", P5_EXT, constraints=[con("splits", P5_EXT)])
    stage("P5:12", P5_EXT, constraints=[con("splits", P5_EXT)])
    stage("P5:13", P5_EXT, constraints=[
        con("lift_double_equals", "derived: Toda bracket {2 iota_4, eps_4, 2 iota_12}", "r==1",
            of="eps_5", value="beta_4 eta_4 eps_5"),
        con("lift_order", P5_EXT, "r>=2", of="eps_5", order="2"),
    ])
    stage("P5:14", P5_EXT, constraints=[
        con("lift_order", P5_EXT, of="nu_5 nu_8 nu_11", order="2"),
        con("lift_order", P5_EXT, of="eta_5 eps_6", order="2"),
        con("lift_min_order", "derived: Toda bracket {2 iota_4, mu_4, 2 iota_13} is nonzero", "r==1",
            of="mu_5", order="4"),
        con("lift_order", P5_EXT, "r>=2", of="mu_5", order="2"),
    ])
    T2 = "table: homotopy of P^5(2^r)"
    table(5, 8, [(None, "(2)^(1+theta(r)) + 2^m(r,3)")], T2)
    table(5, 9, [("r<=2", "(2)^2 + 4^theta(r)"), ("r>=3", "(2)^4")], T2)
    table(5, 10, [("r==1", "2 + 4"), ("r>=2", "(2)^2 + 2^m(r+1,3)")], T2)
    table(5, 11, [(None, "2 + 2^m(r+1,3) + 2^r")], T2)
    table(5, 12, [(None, "(2)^3")], T2)
    table(5, 13, [("r==1", "(2)^2 + (4)^2"), ("r>=2", "(2)^6")], T2)
    table(5, 14, [("r==1", "(2)^7 + 4"), ("r==2", "(2)^7 + (4)^3"), ("r>=3", "(2)^6 + 4 + (8)^2 + 2^r")], T2)

    # ======================================================== P^6, k = 5
    P6 = "derived: pinch-map fiber of P^6(2^r)"
    P6_EXT = "derived: Toda bracket lifts for P^6(2^r)"
    param("s6", "sign", (1, -1), "sign of the beta_10 term in the boundary of Delta(iota_13)")
    param("l6", "odd", (1, 3), "odd multiple in the boundary of bar_nu_6 (Hopf invariant of bar_nu_6)")
    G["5"] = {"gamma3": "2^r*a0*[beta_5,beta_10]"}

    bnd("moore(5)", "Delta(iota_13)", "beta_5 nu_5 eta_8 eta_9 + s6*4*beta_10", P6, when="r==1",
        note="the beta_10 coefficient comes from H(Delta(iota_13)) = 2 iota_11; the other term from an order 8 element")
    bnd("moore(5)", "Delta(iota_13)", "s6*2^(r+1)*beta_10", P6, when="r>=2",
        note="naturality in r kills the beta_5 term")
    bnd("moore(5)", "Delta(sigma_13)", "beta_5 nu_5 eta_8 eta_9 sigma_10 + s6*4*beta_10 sigma_10", P6, when="r==1",
        note="Delta(sigma_13) = Delta(iota_13) sigma_11 and the boundary commutes with composing a suspension")
    bnd("moore(5)", "Delta(sigma_13)", "s6*2^(r+1)*beta_10 sigma_10", P6, when="r>=2",
        note="Delta(sigma_13) = Delta(iota_13) sigma_11")
    bnd("moore(5)", "sigma''", "beta_5 sigma'''", P6, when="r==1")
    bnd("moore(5)", "sigma''", "0", P6, when="r>=2", note="2^(r-1) sigma''' = 0")
    bnd("moore(5)", "bar_nu_6", "2^r*l6*beta_10 nu_10", P6,
        note="second James-Hopf invariant of bar_nu_6 is an odd multiple of nu_11; the stable part vanishes")

    stage("J3(5):16", P6, constraints=[
        con("lift_double_equals", "derived: Toda bracket {gamma_3, eta_14, 2 iota_15}", "r==1",
            of="eta_15", value="[beta_5,beta_10] eta_14 eta_15"),
        con("lift_order", "derived: Toda bracket {gamma_3, eta_14, 2 iota_15}", "r>=2", of="eta_15", order="2"),
    ])
    stage("J3(5):17", P6, constraints=[con("splits", "derived: lift of eta_15 composed with eta_16")],
          lifts={"eta_15 eta_16": "lift(eta_15) eta_16"})
    stage("J3(5):18", P6, extra=["2^r*a0*[beta_5,[beta_5,beta_10]]"],
          constraints=[con("splits", "derived: Toda bracket {gamma_3, delta_r nu_14, 2^m(r,3) iota_17} is zero")])
    stage("P6:12", P6_EXT, constraints=[con("splits", "derived: suspension of a split sequence for P^5(2^r)")])
    stage("P6:13", P6_EXT, constraints=[
        con("lift_order", "derived: Toda bracket {2 iota_5, sigma''', 2 iota_12} is zero", "r==1",
            of="2*sigma''", order="2"),
        con("summand_splits_off", "derived: second James-Hopf invariant of beta_10 nu_10", "r>=2",
            element="beta_10 nu_10"),
        con("summand_splits_off", "derived: comparison with r = 1", "r>=2", element="beta_5 eps_5"),
    ])
    stage("P6:14", P6_EXT, constraints=[
        con("lift_order", "derived: Hurewicz divisibility of [i_5, tau_6 beta_10]",
            of="2^(3-m(r,3))*bar_nu_6", order="2^m(r,3)"),
        con("lift_double_equals", "derived: Toda bracket {2 iota_5, eps_5, 2 iota_13}", "r==1",
            of="eps_6", value="beta_5 eta_5 eps_6"),
        con("lift_order", "derived: Toda bracket {2^r iota_5, eps_5, 2 iota_13}", "r>=2", of="eps_6", order="2"),
    ])
    stage("P6:15", P6_EXT, constraints=[
        con("lift_order", P6_EXT, of="nu_6 nu_9 nu_12", order="2"),
        con("lift_order", P6_EXT, of="eta_6 eps_7", order="2"),
        con("lift_double_equals", "derived: Toda bracket {2 iota_5, mu_5, 2 iota_14}", "r==1",
            of="mu_6", value="beta_5 eta_5 mu_6"),
        con("lift_order", P6_EXT, "r>=2", of="mu_6", order="2"),
    ])
    stage("P6:16", P6_EXT, constraints=[con("splits", "derived: lifts of delta_r nu_6 and eta_6 composed")])
    stage("P6:17", P6_EXT, constraints=[
        con("lift_order", "derived: Toda bracket {2^r iota_5, delta_r zeta_5, 2^m(r,3) iota_16} is zero",
            of="2^(3-m(r,3))*zeta_6", order="2^m(r,3)"),
        con("lift_double_equals", "derived: lift through the cone on 2 nu_10", "r==1",
            of="bar_nu_6 nu_14", value="beta_5 nu_5 eta_8 eps_9"),
        con("lift_order", "derived: lift through the cone on 2 nu_10", "r>=2", of="bar_nu_6 nu_14", order="4"),
    ])
    stage("P6:18", P6_EXT, constraints=[
        con("lift_double_equals", "derived: Toda bracket {2 iota_5, nu_5 mu_8, 2 iota_17}", "r==1",
            of="nu_6 mu_9", value="beta_5 nu_5 eta_8 mu_9"),
        con("splits", "derived: map from P^11(2^r) lifting Delta(iota_13) p_11", "r>=2"),
    ])
    T3 = "table: homotopy of P^6(2^r)"
    table(6, 10, [("r==1", "8"), ("r>=2", "2 + 2^(r+1)")], T3)
    table(6, 11, [(None, "(2)^2")], T3)
    table(6, 12, [(None, "(2)^(2+theta(r))")], T3)
    table(6, 13, [("r==1", "(2)^3"), ("r>=2", "2 + 4 + 2^m(r,3)")], T3)
    table(6, 14, [("r==1", "(2)^4 + 4"), ("r>=2", "(2)^4 + 2^m(r,3) + 2^r")], T3)
    table(6, 15, [("r==1", "(2)^4 + 4"), ("r>=2", "(2)^5 + 2^m(r,3)")], T3)
    table(6, 16, [("r==1", "(2)^6 + 4"), ("r>=2", "(2)^6 + (2^m(r,3))^2")], T3)
    table(6, 17, [("r==1", "(2)^5 + (8)^2", "(2)^4 + (8)^2",
                   "cokernel (2)^2 + (8)^2 and kernel (2)^2 as derived in the text give order 2^10,"
                   " one factor of 2 less than the table entry"), ("r>=2", "(2)^4 + 4 + (2^m(r,3))^2 + 2^m(r+1,4)")], T3)
    table(6, 18, [("r==1", "(2)^5 + 8"), ("r>=2", "(2)^4 + 2^r + 2^m(r,3) + 2^m(r+1,4)")], T3)

    # ======================================================== P^7, k = 6
    P7 = "derived: pinch-map fiber of P^7(2^r)"
    P7_EXT = "derived: Toda bracket lifts for P^7(2^r)"
    P7_IMP = "imported: homotopy of P^7(2) from the projective plane computation (Wu)"
    param("s7", "sign", (1, -1), "sign of the boundary of sigma' for k = 6")
    param("b6", "integer", (0, 1, 3), "undetermined zeta_6 coefficient of gamma_3 for k = 6")
    param("c6", "integer", (0, 1), "undetermined bar_nu_6 nu_14 coefficient of gamma_3 for k = 6")
    G["6"] = {"gamma3": "2^r*a0*beta_17 + 2^r*b6*beta_6 zeta_6 + 2^r*c6*beta_6 bar_nu_6 nu_14"}

    bnd("moore(6)", "sigma'", "s7*2^(r-1)*beta_6 sigma''", P7,
        note="H'_2 kills the lift of eta_12 and stably 4 x = 2^(r+1)")

    stage("J2(6):13", P7, constraints=[
        con("splits", "derived: Toda bracket {2^r Delta(iota_13), eta_11, 2 iota_12} is zero")])
    stage("J2(6):14", P7, constraints=[con("splits", "derived: lift of eta_12 composed with eta_13")],
          lifts={"eta_12 eta_13": "lift(eta_12) eta_13"})
    stage("J2(6):15", P7, constraints=[
        con("splits", "derived: Toda bracket {2^r Delta(iota_13), delta_(r+1) nu_11, 2^m(r+1,3) iota_14} is zero")])
    stage("J2(6):18", P7, constraints=[
        con("splits", "derived: Toda bracket {2^r Delta(iota_13), nu_11^2, 2 iota_17} lies in 2 Delta(sigma_13)")])
    stage("J2(6):19", P7, constraints=[
        con("splits", "derived: Toda bracket {2^r Delta(iota_13), delta_r sigma_11, 2^m(r,4) iota_18} is zero")])
    stage("J3(6):19", P7, constraints=[
        con("lift_double_equals", "derived: Toda bracket {gamma_3, eta_17, 2 iota_18}", "r==1",
            of="eta_18", value="beta_17 eta_17 eta_18"),
        con("lift_order", "derived: Toda bracket {gamma_3, eta_17, 2 iota_18}", "r>=2", of="eta_18", order="2"),
    ])
    stage("P7:13", P7_EXT, constraints=[
        con("splits", "derived: Toda bracket {2^r iota_6, nu_6^2, 2 iota_12} lies in 2 sigma''")])
    stage("P7:14", P7_EXT, constraints=[
        con("splits", "derived: Toda bracket {2^r iota_6, 2^(2-r) sigma'', 2^r iota_13} and naturality in r")])
    stage("P7:15", P7_EXT, constraints=[
        con("lift_order", P7_IMP, "r==1", of="sigma' eta_14", order="8"),
        con("lift_double_equals", "derived: stable Toda bracket {2 iota, bar_nu, 2 iota} = nu^3", "r==1",
            of="bar_nu_7", value="beta_6 nu_6 nu_9 nu_12"),
        con("lift_double_equals", "derived: stable Toda bracket {2 iota, eps, 2 iota} = eta eps", "r==1",
            of="eps_7", value="beta_6 eta_6 eps_7"),
        con("splits", "derived: 2^(r+1) annihilates pi_15 and the stable sequence splits", "r>=2"),
    ])
    stage("P7:16", P7_EXT, constraints=[
        con("lift_order", "derived: lift of sigma' eta_14 composed with eta_15", of="sigma' eta_14 eta_15", order="2"),
        con("lift_order", "derived: lift of bar_nu_7 composed with eta_15", of="nu_7 nu_10 nu_13", order="2"),
        con("lift_order", "derived: lift of eps_7 composed with eta_15", of="eta_7 eps_8", order="2"),
        con("lift_double_equals", "derived: Toda bracket {2 iota_6, mu_6, 2 iota_15}", "r==1",
            of="mu_7", value="beta_6 eta_6 mu_7"),
        con("lift_order", "derived: Toda bracket {2^r iota_6, mu_6, 2 iota_15}", "r>=2", of="mu_7", order="2"),
    ])
    stage("P7:17", P7_EXT, constraints=[con("splits", "derived: suspension of a split sequence for P^6(2^r)")])
    stage("P7:18", P7_EXT, constraints=[
        con("splits", "derived: suspended lift of delta_r zeta_6 and a lift of bar_nu_7 composed with nu_15")])
    T4 = "table: homotopy of P^7(2^r)"
    table(7, 11, [(None, "2^r")], T4)
    table(7, 12, [(None, "2")], T4)
    table(7, 13, [(None, "(2)^2 + 2^m(r-1,2)")], T4)
    table(7, 14, [(None, "(2)^2 + 2^m(r+1,3) + 2^m(r,3)")], T4)
    table(7, 15, [("r==1", "2 + (4)^2 + 8"),
                  ("r>=2", "(2)^2 + 2^m(r,3)", "(2)^6 + 2^m(r+1,3)",
                   "the exact sequence derived in the text has (2)^3 + 2^m(r+1,3) on the left and (2)^3 on the"
                   " right, and it splits; the table entry is far too small")], T4)
    table(7, 16, [("r==1", "(2)^4 + 4"), ("r>=2", "(2)^5 + 2^m(r,3)")], T4)
    table(7, 17, [("r<=3", "2 + 4 + (2^m(r,3))^3"),
                  ("r>=4", "2 + 4 + (2^m(r,3))^3", "2 + 4 + (8)^2 + 2^r",
                   "pi_17 of the third stage carries Z/2^r on beta_17 for r >= 3, which the"
                   " boundary of zeta_7 does not touch; the table caps it at 8")], T4)
    table(7, 18, [(None, "(2)^3 + 2^m(r,3) + 2^m(r,4)")], T4)
    table(7, 19, [("r==1", "(2)^2 + 4"), ("r>=2", "(2)^3 + 2^m(r,4)")], T4)

    # ======================================================== P^8, k = 7
    P8 = "derived: pinch-map fiber of P^8(2^r)"
    P8_EXT = "derived: Toda bracket lifts for P^8(2^r)"
    param("s8", "sign", (1, -1), "sign of gamma_3 for k = 7")
    param("y1", "odd", (1, 3, 5, 7), "odd coefficient of beta_7 sigma' in the boundary of sigma_8 when r = 1")
    param("s9", "sign", (1, -1), "sign of the beta_7 sigma' term in the boundary of sigma_8 when r = 2")
    G["7"] = {"gamma3": "s8*2^r*[beta_7,beta_14]"}
    y_note = ("the coefficient of beta_7 sigma' reduces the degree formula for (2^r iota_8) sigma_8 mod 8;"
              " one statement writes the term as beta_14 sigma', which does not lie in pi_14 of the fiber,"
              " and the later use has beta_7 sigma', which is what is recorded here")
    bnd("moore(7)", "sigma_8", "2*beta_14 + y1*beta_7 sigma'", P8, "r==1", y_note)
    bnd("moore(7)", "sigma_8", "4*beta_14 + s9*2*beta_7 sigma'", P8, "r==2", y_note)
    bnd("moore(7)", "sigma_8", "8*beta_14 + 4*beta_7 sigma'", P8, "r==3", y_note)
    bnd("moore(7)", "sigma_8", "2^r*beta_14", P8, "r>=4", y_note)
    stage("P8:14", P8_EXT, constraints=[con("splits", "derived: suspension of a split sequence for P^7(2^r)")])
    stage("P8:15", P8_EXT, constraints=[con("splits", "derived: suspension of a split sequence for P^7(2^r)")])
    stage("P8:16", P8_EXT, constraints=[
        con("lift_order", "derived: Toda bracket {2^r iota_7, sigma' eta_14, 2 iota_15}", of="E(sigma') eta_15",
            order="2"),
        con("lift_double_equals", "derived: Toda bracket {2 iota_8, bar_nu_8, 2 iota_16}", "r==1",
            of="bar_nu_8", value="beta_7 nu_7 nu_10 nu_13"),
        con("lift_order", "derived: Toda bracket {2^r iota_8, bar_nu_8, 2 iota_16}", "r>=2", of="bar_nu_8", order="2"),
        con("lift_double_equals", "derived: Toda bracket {2 iota_7, eps_7, 2 iota_15}", "r==1",
            of="eps_8", value="beta_7 eta_7 eps_8"),
        con("lift_order", "derived: Toda bracket {2^r iota_7, eps_7, 2 iota_15}", "r>=2", of="eps_8", order="2"),
        con("lift_min_order", "derived: map P^15(2^(r-1)) -> P^8(2^r) over sigma_8", "r==2",
            of="sigma_8 eta_15", order="4"),
        con("lift_order", "derived: map P^15(2^(r-1)) -> P^8(2^r) over sigma_8", "r>=3",
            of="sigma_8 eta_15", order="2"),
    ])
    stage("P8:17", P8_EXT, constraints=[
        con("lift_order", "derived: lift of sigma_8 eta_15 composed with eta_16", "r>=2",
            of="sigma_8 eta_15 eta_16", order="2"),
        con("lift_order", "derived: lift of E(sigma') eta_15 composed with eta_16",
            of="E(sigma') eta_15 eta_16", order="2"),
        con("lift_order", "derived: lift of bar_nu_8 composed with eta_16", of="nu_8 nu_11 nu_14", order="2"),
        con("lift_order", "derived: lift of eps_8 composed with eta_16", of="eta_8 eps_9", order="2"),
        con("lift_double_equals", "derived: Toda bracket {2 iota_7, mu_7, 2 iota_16}", "r==1",
            of="mu_8", value="beta_7 eta_7 mu_8"),
        con("lift_order", "derived: Toda bracket {2^r iota_7, mu_7, 2 iota_16}", "r>=2", of="mu_8", order="2"),
    ])
    stage("P8:18", P8_EXT, constraints=[
        con("splits", "derived: double suspension into pi_20(P^10(2^r)), where the fiber classes split off")])
    stage("P8:21", P8_EXT, constraints=[
        con("splits", "derived: lifts of nu_8 sigma_11 nu_18 and sigma_8 nu_15 nu_18 of order 2")])
    T5 = "table: homotopy of P^8(2^r)"
    table(8, 13, [(None, "2")], T5)
    table(8, 14, [("r<=3", "2 + 2^(r-1) + 2^(r+1)"), ("r>=4", "2 + 8 + 2^r")], T5)
    table(8, 15, [(None, "(2)^(3+theta(r)) + 2^m(r,3)")], T5)
    table(8, 16, [("r==1", "(2)^3 + (4)^2"), ("r==2", "(2)^7 + 4"), ("r>=3", "(2)^9")], T5)
    table(8, 17, [("r==1", "(2)^3 + (4)^2"), ("r>=2", "(2)^6 + 2^m(r-1,3) + 8")], T5)
    table(8, 18, [(None, "(2)^2 + 2^m(r-1,3) + 2^m(r,3) + 2^m(r+1,3)")], T5)
    table(8, 19, [(None, "2 + 2^m(r,3)")], T5)
    table(8, 20, [(None, "(2)^(1+theta(r)) + 2^r")], T5)
    table(8, 21, [("r==1", "(2)^3 + 2^m(r,2) + 2^m(r-1,3) + 2^m(r+1,4)", "(2)^3 + 4",
                   "the kernel class sigma_8 nu_15 nu_18 only exists for r >= 2, so the three Z/2 summands"
                   " counted for all r drop to two at r = 1"),
                  ("r>=2", "(2)^3 + 2^m(r,2) + 2^m(r-1,3) + 2^m(r+1,4)")], T5)

    # ======================================================== P^9, P^10, P^11 from the second stage
    FAM = "derived: second James stage of the fiber of P^n(2^r), n = 9, 10, 11"
    FAM_T = "table: homotopy of P^9, P^10 and P^11"
    stage("J2(8):17", FAM, constraints=[
        con("lift_double_equals", "derived: Toda bracket {2 W[iota_8,iota_8], eta_15, 2 iota_16}", "r==1",
            of="eta_16", value="beta_8 E(sigma') eta_15 eta_16"),
        con("lift_order", "derived: Toda bracket {2^r W[iota_8,iota_8], eta_15, 2 iota_16}", "r>=2",
            of="eta_16", order="2"),
    ])
    stage("P9:15", FAM, constraints=[con("splits", "derived: suspension of a split sequence for P^8(2^r)")])
    stage("P9:16", FAM, constraints=[con("splits", "derived: suspension of a split sequence for P^8(2^r)")])
    stage("P9:17", FAM, constraints=[
        con("lift_double_equals", "derived: Toda bracket {2 iota_9, bar_nu_9, 2 iota_17}", "r==1",
            of="bar_nu_9", value="beta_8 nu_8 nu_11 nu_14"),
        con("lift_order", "derived: Toda bracket {2^r iota_9, bar_nu_9, 2 iota_17}", "r>=2", of="bar_nu_9", order="2"),
        con("lift_double_equals", "derived: Toda bracket {2 iota_8, eps_8, 2 iota_16}", "r==1",
            of="eps_9", value="beta_8 eta_8 eps_9"),
        con("lift_order", "derived: Toda bracket {2^r iota_8, eps_8, 2 iota_16}", "r>=2", of="eps_9", order="2"),
        con("lift_min_order", "derived: suspension of the map P^15(2^(r-1)) -> P^8(2^r) over sigma_8", "r==2",
            of="sigma_9 eta_16", order="4"),
        con("lift_order", "derived: suspension of the map P^15(2^(r-1)) -> P^8(2^r) over sigma_8", "r>=3",
            of="sigma_9 eta_16", order="2"),
    ])
    param("s10", "sign", (1, -1), "sign of the beta_18 term in the boundary of Delta(iota_21)")
    bnd("moore(9)", "Delta(iota_21)", "beta_9 sigma_9 eta_16 eta_17 + beta_9 nu_9 nu_12 nu_15 + beta_9 eta_9 eps_10"
        " + s10*4*beta_18", FAM, "r==1",
        "the beta_18 coefficient is fixed by the second Hopf invariant 2 iota_19; the beta_9 term is"
        " [iota_9, iota_9] eta_17, the same mechanism as the r = 1 boundary of Delta(iota_13)")
    bnd("moore(9)", "Delta(iota_21)", "s10*2^(r+1)*beta_18", FAM, "r>=2",
        "the beta_9 term vanishes by naturality in r")
    stage("P10:17", FAM, constraints=[con("splits", "derived: suspension of a split sequence for P^9(2^r)")])
    stage("P10:18", FAM, constraints=[
        con("lift_double_equals", "derived: Toda bracket {2 iota_10, bar_nu_10, 2 iota_18}", "r==1",
            of="bar_nu_10", value="beta_9 nu_9 nu_12 nu_15"),
        con("lift_order", "derived: Toda bracket {2^r iota_10, bar_nu_10, 2 iota_18}", "r>=2", of="bar_nu_10",
            order="2"),
        con("lift_double_equals", "derived: Toda bracket {2 iota_9, eps_9, 2 iota_17}", "r==1",
            of="eps_10", value="beta_9 eta_9 eps_10"),
        con("lift_order", "derived: Toda bracket {2^r iota_9, eps_9, 2 iota_17}", "r>=2", of="eps_10", order="2"),
    ])
    stage("P11:19", FAM, constraints=[
        con("lift_double_equals", "derived: Toda bracket {2 iota_11, bar_nu_11, 2 iota_19}", "r==1",
            of="bar_nu_11", value="beta_10 nu_10 nu_13 nu_16"),
        con("lift_order", "derived: Toda bracket {2^r iota_11, bar_nu_11, 2 iota_19}", "r>=2", of="bar_nu_11",
            order="2"),
        con("lift_double_equals", "derived: Toda bracket {2 iota_10, eps_10, 2 iota_18}", "r==1",
            of="eps_11", value="beta_10 eta_10 eps_11"),
        con("lift_order", "derived: Toda bracket {2^r iota_10, eps_10, 2 iota_18}", "r>=2", of="eps_11", order="2"),
    ])
    table(9, 15, [(None, "2 + 2^m(r-1,3) + 2^(r+1)")], FAM_T, "families")
    table(9, 16, [(None, "(2)^(3+theta(r)) + 2^m(r,4)")], FAM_T, "families")
    table(9, 17, [("r==1", "(2)^3 + (4)^2"), ("r==2", "(2)^7 + 4"), ("r>=3", "(2)^9")], FAM_T, "families")
    table(10, 17, [(None, "(2)^3 + 2^m(r,4)")], FAM_T, "families")
    table(10, 18, [("r==1", "2 + (4)^2 + 8"), ("r>=2", "(2)^6 + 2^(r+1)")], FAM_T, "families")
    table(11, 19, [("r==1", "(2)^2 + (4)^2"), ("r>=2", "(2)^5 + 2^r")], FAM_T, "families")
