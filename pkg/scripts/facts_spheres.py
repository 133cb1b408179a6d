"""2-primary homotopy groups of spheres and the composition relations among
their generators, as used by the Moore space computations.

Generators follow Toda's names in ASCII: eta_n, nu_n, sigma_n, eps_n,
bar_nu_n, mu_n, zeta_n, kappa_n, nu', sigma', sigma'', sigma''', eps', mu'.
Words are composites, leftmost applied last.
"""


def build(b) -> None:
    sph, comp, susp, hopf, white, degree = b.sph, b.comp, b.susp, b.hopf, b.white, b.degree

    # ---------------------------------------------------------------- stems 1-2
    for n in range(2, 25):
        sph(n, n + 1, (f"eta_{n}", 0 if n == 2 else 2))
    for n in range(2, 25):
        sph(n, n + 2, (f"eta_{n} eta_{n + 1}", 2))

    # ---------------------------------------------------------------- stem 3
    sph(3, 6, ("nu'", 4))
    sph(4, 7, ("nu_4", 0), ("E(nu')", 4))
    for n in range(5, 25):
        sph(n, n + 3, (f"nu_{n}", 8))
    comp("eta_3 eta_4 eta_5", "2*nu'", stable=True)
    susp("E^2(nu')", "2*nu_5")

    # ---------------------------------------------------------------- stem 4
    sph(3, 7, ("nu' eta_6", 2))
    sph(4, 8, ("nu_4 eta_7", 2), ("E(nu') eta_7", 2))
    sph(5, 9, ("nu_5 eta_8", 2))
    for n in range(6, 25):
        sph(n, n + 4)
    comp("eta_3 nu_4", "nu' eta_6", stable=True)

    # ---------------------------------------------------------------- stem 5
    sph(3, 8, ("nu' eta_6 eta_7", 2))
    sph(4, 9, ("nu_4 eta_7 eta_8", 2), ("E(nu') eta_7 eta_8", 2))
    sph(5, 10, ("nu_5 eta_8 eta_9", 2))
    sph(6, 11, ("Delta(iota_13)", 0))
    for n in range(7, 25):
        sph(n, n + 5)

    # ---------------------------------------------------------------- stem 6
    sph(3, 9)
    sph(4, 10, ("nu_4 nu_7", 8))
    for n in range(5, 25):
        sph(n, n + 6, (f"nu_{n} nu_{n + 3}", 2))

    # ---------------------------------------------------------------- stem 7
    sph(3, 10)
    sph(4, 11)
    sph(5, 12, ("sigma'''", 2))
    sph(6, 13, ("sigma''", 4))
    sph(7, 14, ("sigma'", 8))
    sph(8, 15, ("sigma_8", 0), ("E(sigma')", 8))
    for n in range(9, 25):
        sph(n, n + 7, (f"sigma_{n}", 16))
    susp("E(sigma'')", "2*sigma'")
    susp("E(sigma''')", "2*sigma''")
    susp("E^2(sigma')", "2*sigma_9")
    hopf("sigma_8", "iota_15")
    white("W[iota_8,iota_8]", "2*sigma_8 - E(sigma')")

    # ---------------------------------------------------------------- stem 8
    sph(3, 11, ("eps_3", 2))
    sph(4, 12, ("eps_4", 2))
    sph(5, 13, ("eps_5", 2))
    sph(6, 14, ("bar_nu_6", 8), ("eps_6", 2))
    sph(7, 15, ("sigma' eta_14", 2), ("bar_nu_7", 2), ("eps_7", 2))
    sph(8, 16, ("sigma_8 eta_15", 2), ("E(sigma') eta_15", 2), ("bar_nu_8", 2), ("eps_8", 2))
    sph(9, 17, ("sigma_9 eta_16", 2), ("bar_nu_9", 2), ("eps_9", 2))
    for n in range(10, 25):
        sph(n, n + 8, (f"bar_nu_{n}", 2), (f"eps_{n}", 2))
    comp("eps_3 eta_11", "eta_3 eps_4", stable=True)
    comp("eta_7 sigma_8", "sigma' eta_14 + bar_nu_7 + eps_7", stable=True)
    comp("sigma_10 eta_17", "bar_nu_10 + eps_10", stable=True)
    comp("eta_6 bar_nu_7", "nu_6 nu_9 nu_12", stable=True)
    comp("bar_nu_6 eta_14", "nu_6 nu_9 nu_12", stable=True)

    # ---------------------------------------------------------------- stem 9
    sph(3, 12, ("mu_3", 2), ("eta_3 eps_4", 2))
    sph(4, 13, ("nu_4 nu_7 nu_10", 2), ("mu_4", 2), ("eta_4 eps_5", 2))
    sph(5, 14, ("nu_5 nu_8 nu_11", 2), ("mu_5", 2), ("eta_5 eps_6", 2))
    sph(6, 15, ("nu_6 nu_9 nu_12", 2), ("mu_6", 2), ("eta_6 eps_7", 2))
    sph(7, 16, ("sigma' eta_14 eta_15", 2), ("nu_7 nu_10 nu_13", 2), ("mu_7", 2), ("eta_7 eps_8", 2))
    sph(8, 17, ("sigma_8 eta_15 eta_16", 2), ("E(sigma') eta_15 eta_16", 2), ("nu_8 nu_11 nu_14", 2),
        ("mu_8", 2), ("eta_8 eps_9", 2))
    sph(9, 18, ("sigma_9 eta_16 eta_17", 2), ("nu_9 nu_12 nu_15", 2), ("mu_9", 2), ("eta_9 eps_10", 2))
    sph(10, 19, ("Delta(iota_21)", 0), ("nu_10 nu_13 nu_16", 2), ("mu_10", 2), ("eta_10 eps_11", 2))
    for n in range(11, 25):
        sph(n, n + 9, (f"nu_{n} nu_{n + 3} nu_{n + 6}", 2), (f"mu_{n}", 2), (f"eta_{n} eps_{n + 1}", 2))
    comp("mu_3 eta_12", "eta_3 mu_4", stable=True)
    comp("nu_6 eta_9", "0", stable=True)
    comp("sigma'' eta_13", "4*bar_nu_6")

    # ---------------------------------------------------------------- stem 10
    sph(3, 13, ("eps'", 4), ("eta_3 mu_4", 2))
    sph(4, 14, ("nu_4 sigma'", 8), ("E(eps')", 4), ("eta_4 mu_5", 2))
    sph(5, 15, ("nu_5 sigma_8", 8), ("eta_5 mu_6", 2))
    comp("E(nu') sigma'", "2*E(eps')")
    comp("nu_5 E(sigma')", "2*nu_5 sigma_8")
    susp("E^2(eps')", "2*nu_5 sigma_8", note="the sign is fixed by the choice of eps'")
    sph(6, 16, ("nu_6 sigma_9", 8), ("eta_6 mu_7", 2))
    sph(7, 17, ("nu_7 sigma_10", 8), ("eta_7 mu_8", 2))
    sph(8, 18, ("sigma_8 nu_15", 8), ("nu_8 sigma_11", 8), ("eta_8 mu_9", 2))
    comp("sigma' nu_14", "nu_7 sigma_10", note="Toda has an odd multiple; the unit is absorbed into sigma'")

    # ---------------------------------------------------------------- stem 11
    sph(5, 16, ("zeta_5", 8), ("nu_5 bar_nu_8", 2), ("nu_5 eps_8", 2))
    sph(6, 17, ("zeta_6", 8), ("bar_nu_6 nu_14", 4))
    sph(7, 18, ("zeta_7", 8), ("bar_nu_7 nu_15", 2))
    sph(8, 19, ("zeta_8", 8), ("bar_nu_8 nu_16", 2))
    hopf("zeta_5", "8*sigma_9")
    comp("nu_6 eps_9", "2*bar_nu_6 nu_14")
    comp("nu_6 bar_nu_9", "2*bar_nu_6 nu_14")

    # ---------------------------------------------------------------- stem 12
    sph(5, 17, ("nu_5 nu_8 nu_11 nu_14", 2), ("nu_5 mu_8", 2), ("nu_5 eta_8 eps_9", 2))
    sph(6, 18, ("Delta(sigma_13)", 16))
    comp("nu_5 eta_8 eta_9 sigma_10", "nu_5 nu_8 nu_11 nu_14 + nu_5 eta_8 eps_9")
    comp("nu_6 mu_9", "8*Delta(sigma_13)")
    comp("Delta(iota_13) sigma_11", "Delta(sigma_13)",
         note="Toda writes an odd multiple; the unit is absorbed into the generator")

    # ---------------------------------------------------------------- stem 13
    sph(5, 18, ("nu_5 sigma_8 nu_15", 2), ("nu_5 eta_8 mu_9", 2))
    sph(6, 19, ("nu_6 sigma_9 nu_16", 2))
    sph(7, 19)
    sph(8, 20)
    sph(7, 20, ("nu_7 sigma_10 nu_17", 2))
    sph(8, 21, ("sigma_8 nu_15 nu_18", 2), ("nu_8 sigma_11 nu_18", 2))

    # ---------------------------------------------------------------- stem 14
    sph(7, 21, ("sigma' sigma_14", 8), ("kappa_7", 4))
    sph(8, 22, ("sigma_8 sigma_15", 16), ("E(sigma') sigma_15", 8), ("kappa_8", 4))

    # ---------------------------------------------------------------- Whitehead squares and Hopf invariants
    white("W[iota_4,iota_4]", "2*nu_4 - E(nu')")
    white("W[iota_5,iota_5]", "nu_5 eta_8")
    white("W[iota_6,iota_6]", "Delta(iota_13)")
    white("W[iota_9,iota_9]", "sigma_9 eta_16 + bar_nu_9 + eps_9")
    white("W[iota_10,iota_10]", "Delta(iota_21)")
    hopf("nu_4", "iota_7")
    comp("Delta(iota_13) eta_11", "0", note="Delta(eta_13) = 0")
    comp("Delta(iota_13) nu_11", "2*bar_nu_6", note="Delta(nu_13) = 2 bar_nu_6 up to sign")
    b.param("zh", "integer", (0, 1), "whether zeta_6 eta_17 is 8 Delta(sigma_13) or zero")
    comp("zeta_6 eta_17", "zh*8*Delta(sigma_13)", note="only known to lie in the subgroup generated by 8 Delta(sigma_13)")
    degree("bar_nu_6", "t^2*bar_nu_6", note="second James-Hopf invariant of bar_nu_6 is an odd multiple of nu_11")
    hopf("nu'", "eta_5")
    hopf("sigma'", "eta_13")
    hopf("sigma''", "eta_11 eta_12")
    hopf("sigma'''", "4*nu_9")
    degree("nu_4 sigma'", "t^2*nu_4 sigma' - t*(t-1)*E(eps')", src="derived: (t iota_4) nu_4 composed with sigma'",
           note="for even t; the cross term [nu_4, E(nu')] eta_13 has coefficient t^2 C(t,2), which is even")
    hopf("Delta(iota_21)", "2*iota_19", note="second Hopf invariant of a Whitehead square on an even sphere")

    # ---------------------------------------------------------------- Toda brackets
    bracket = b.bracket
    TB = "Toda bracket (Toda, Composition Methods)"
    TB_LOW = "derived: Toda bracket in a low-dimensional sphere, by juggling"
    for n in range(3, 23):
        bracket(f"2*iota_{n}", f"eta_{n}", f"2*iota_{n + 1}", f"eta_{n} eta_{n + 1}", TB)

    bracket("2*iota_3", "nu' eta_6", "2*iota_7", "nu' eta_6 eta_7", TB_LOW)
    bracket("2^r*iota_3", "nu' eta_6", "2*iota_7", "0", TB_LOW, when="r>=2")
    bracket("4*iota_4", "nu_4 eta_7", "2*iota_8", "E(nu') eta_7 eta_8", TB_LOW)
    bracket("2^r*iota_4", "nu_4 eta_7", "2*iota_8", "0", TB_LOW, when="r>=3")
    bracket("2*iota_4", "mu_4", "2*iota_13", "eta_4 mu_5", TB_LOW, indeterminacy="2*nu_4 sigma', 2*E(eps')")
    bracket("2^r*iota_4", "mu_4", "2*iota_13", "0", TB_LOW, indeterminacy="2*nu_4 sigma', 2*E(eps')",
            when="r>=2")
    bracket("2*iota_5", "sigma'''", "2*iota_12", "0", TB_LOW)
    bracket("2*iota_6", "2*sigma''", "2*iota_13", "0", TB_LOW, indeterminacy="2*bar_nu_6")
    bracket("4*iota_6", "sigma''", "4*iota_13", "0", TB_LOW, indeterminacy="4*bar_nu_6")
    bracket("2*iota_7", "sigma' eta_14", "2*iota_15", "sigma' eta_14 eta_15", TB_LOW)
    bracket("2^r*iota_7", "sigma' eta_14", "2*iota_15", "0", TB_LOW, when="r>=2")

    # {2 iota, a, 2 iota} contains a eta; with 2^r iota, r >= 2, it contains 0
    for n, a, rhs in [(4, "eps_4", "eta_4 eps_5"), (5, "eps_5", "eta_5 eps_6"), (7, "eps_7", "eta_7 eps_8"),
                      (8, "eps_8", "eta_8 eps_9"), (9, "eps_9", "eta_9 eps_10"), (10, "eps_10", "eta_10 eps_11"),
                      (5, "mu_5", "eta_5 mu_6"), (6, "mu_6", "eta_6 mu_7"), (7, "mu_7", "eta_7 mu_8"),
                      (5, "nu_5 mu_8", "nu_5 eta_8 mu_9"),
                      (8, "bar_nu_8", "nu_8 nu_11 nu_14"), (9, "bar_nu_9", "nu_9 nu_12 nu_15"),
                      (10, "bar_nu_10", "nu_10 nu_13 nu_16"), (11, "bar_nu_11", "nu_11 nu_14 nu_17")]:
        m = n + b.word_stem(a)
        bracket(f"2*iota_{n}", a, f"2*iota_{m}", rhs, TB)
        bracket(f"2^r*iota_{n}", a, f"2*iota_{m}", "0", TB, when="r>=2")
    for n in range(5, 21):
        bracket(f"2*iota_{n}", f"eta_{n} eta_{n + 1}", f"2*iota_{n + 2}", f"4*nu_{n}", TB)
        bracket(f"eta_{n}", f"2*iota_{n + 1}", f"eta_{n + 1}", f"2*nu_{n}", TB)
