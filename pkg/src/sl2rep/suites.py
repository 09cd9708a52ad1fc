"""Verification suites: parameter-swept checks of the structural claims.

Each suite runs a battery of exact checks (tolerance zero: everything is
finite-field arithmetic) over a documented default grid and returns a
report whose checks carry stable identifiers and human-readable claims.
Reports are reproducible given the same parameters and seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

from .field import GF
from .linalg import Mat
from .reps import (SL2Element, baby_verma, check_rep, direct_sum, premet_w,
                   simple, twist, weyl)
from .graded import (baby_verma_graded, char_twist, check_graded, dual_graded,
                     induce, induce_graded, premet_w_graded, realize_x,
                     restrict, restrict_level, shift_operator, twist_graded,
                     verify_nonsplit_steps, voigt_filtration, weyl_graded)
from .homalg import (DEFAULT_SEED, decompose, ext1_dim, hom_dim,
                     is_indecomposable, is_isomorphic, is_projective, omega)
from .support import (FiniteSubgroup, ProjPoint, act_on_point,
                      cyclic_torus_subgroup, module_stabilizer,
                      orbit_stabilizer, is_cyclic, projective_line, support)
from .skew import clifford_counts, skew_induce, skew_decompose, skew_restrict

__all__ = ["run_suite", "SUITE_NAMES", "VerificationReport", "CheckResult"]


@dataclass
class CheckResult:
    check_id: str
    claim: str
    passed: bool
    details: str = ""


@dataclass
class VerificationReport:
    suite: str
    params: dict
    checks: list = dc_field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check_id: str, claim: str, passed: bool, details: str = ""):
        self.checks.append(CheckResult(check_id, claim, bool(passed), details))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "params": {k: repr(v) for k, v in self.params.items()},
            "passed": self.passed,
            "elapsed_seconds": round(self.elapsed, 3),
            "checks": [{"id": c.check_id, "claim": c.claim,
                        "passed": c.passed, "details": c.details}
                       for c in self.checks],
        }


def _grid(params):
    ps = params.get("ps", [3, 5]) if params.get("p") is None else [params["p"]]
    rs = params.get("rs", [1, 2]) if params.get("r") is None else [params["r"]]
    return ps, rs


def _std_g(field):
    return SL2Element.from_ints(field, 1, 0, 1, 1)


def _a_values(field, params):
    if params.get("a") is not None:
        return [params["a"]]
    return list(range(field.p - 1))


# ----------------------------------------------------------------------
# Individual suites.
# ----------------------------------------------------------------------

def _suite_relations(report, params, seed):
    ps = params.get("ps", [3, 5, 7]) if params.get("p") is None else [params["p"]]
    for p in ps:
        F = GF(p)
        g = _std_g(F)
        mods = {}
        for d in range(0, 2 * p + 2):
            mods[f"weyl({d})"] = weyl(d, F)
        for i in range(p):
            mods[f"verma({i})"] = baby_verma(i, F)
        for s in (1, 2):
            for a in (0, p - 2):
                mods[f"w({s * p + a})"] = premet_w(s * p + a, F)
        mods["twist"] = twist(baby_verma(0, F), g)
        ok = all(check_rep(M) == [] for M in mods.values())
        report.add(f"relations-p{p}", "structure identities hold exactly", ok)
        graded_ok = (check_graded(induce(mods["twist"], 2)) == []
                     and check_graded(weyl_graded(p + 1, 2, F)) == []
                     and check_graded(premet_w_graded(p, 2, F)) == [])
        report.add(f"graded-relations-p{p}", "grading constraints hold exactly",
                   graded_ok)
        if p == 7:
            gen = cyclic_torus_subgroup(F, 3).elements[1]
            from .skew import check_skew
            sk = skew_induce(premet_w(p + 1, F), gen)
            report.add("skew-relations-p7", "equivariance constraints hold exactly",
                       check_skew(sk) == [])
        # dimension facts
        dims_ok = all(weyl(d, F).dim == d + 1 for d in range(2 * p + 2))
        dims_ok &= all(baby_verma(i, F).dim == p for i in range(p))
        dims_ok &= all(premet_w(s * p + a, F).dim == s * p
                       for s in (1, 2) for a in range(p - 1))
        report.add(f"dimensions-p{p}",
                   "dim V(d)=d+1, dim Z(i)=p, dim W(sp+a)=sp", dims_ok)


def _suite_prop_2_1_2_2(report, params, seed):
    ps, rs = _grid(params)
    for p in ps:
        F = GF(p)
        for r in rs:
            if r < 2:
                continue
            for a in _a_values(F, params):
                g = params.get("g") or _std_g(F)
                Z = twist(baby_verma(a, F), g)
                M = induce(Z, r)
                filt = voigt_filtration(M)
                n = filt.length - 1
                z = Z.dim
                tag = f"p{p}-r{r}-a{a}"
                dims_ok = all(filt.steps[l].cols == (l + 1) * z
                              for l in range(n + 1))
                report.add(f"step-dims-{tag}", "dim N_l = (l+1) dim Z", dims_ok)
                S = filt.shift
                eye = Mat.identity(F, M.dim)
                img_ok = True
                for j in range(n + 1):
                    for l in range(j + 1):
                        img = ((S - eye).power(l + 1) @ filt.steps[j]).column_space()
                        if j - l - 1 >= 0:
                            from .linalg import spans_equal
                            img_ok &= spans_equal(img, filt.steps[j - l - 1])
                        else:
                            img_ok &= img.cols == 0
                report.add(f"step-images-{tag}",
                           "image of the (l+1)-st shift power on N_j is N_{j-l-1}",
                           img_ok)
                comp_ok = True
                for j in range(1, n + 1):
                    for l in range(j):
                        for m_ in range(n):
                            if l + m_ + 2 > j:
                                continue
                            lhs = (filt.shift_power_map(m_ + 1, j - l - 1)
                                   @ filt.shift_power_map(l + 1, j))
                            rhs = filt.shift_power_map(m_ + l + 2, j)
                            comp_ok &= lhs == rhs
                report.add(f"composition-{tag}",
                           "restricted shift powers compose additively", comp_ok)
                quot_ok = all(is_isomorphic(filt.step_quotient(l), Z, seed=seed)
                              for l in range(n + 1))
                report.add(f"step-quotients-{tag}",
                           "every step quotient is a copy of Z", quot_ok)


def _suite_prop_2_4_2_6(report, params, seed):
    ps, rs = _grid(params)
    for p in ps:
        F = GF(p)
        g = params.get("g") or _std_g(F)
        for a in _a_values(F, params):
            tag = f"p{p}-a{a}"
            Z = twist(baby_verma(a, F), g)
            report.add(f"ext1-{tag}", "dim Ext^1(Z, Z) = 1",
                       ext1_dim(Z, Z) == 1)
            for r in rs:
                if r < 2:
                    continue
                M = induce(Z, r)
                rtag = f"{tag}-r{r}"
                report.add(f"brick-{rtag}", "the induced module is a brick",
                           hom_dim(M, M) == 1)
                filt = voigt_filtration(M)
                steps = verify_nonsplit_steps(filt, seed=seed)
                report.add(f"nonsplit-{rtag}",
                           "no filtration step splits off its quotient",
                           all(not s.split for s in steps))
                report.add(f"middle-exact-{rtag}",
                           "middle-term sequences are exact",
                           all(s.middle_exact is not False for s in steps))
                report.add(f"middle-projfree-{rtag}",
                           "middle terms have no projective summand",
                           all(s.middle_projective_free is not False for s in steps))
                end_ok = all(
                    hom_dim(filt.step_rep(l), filt.step_rep(l)) == l + 1
                    and is_indecomposable(filt.step_rep(l), seed=seed)
                    for l in range(filt.length))
                report.add(f"step-end-{rtag}",
                           "N_l is indecomposable with End of dimension l+1",
                           end_ok)
        # control case: Borel-stable module, the filtration splits
        for r in rs:
            if r < 2:
                continue
            filt0 = voigt_filtration(induce(baby_verma(0, F), r))
            steps0 = verify_nonsplit_steps(filt0, seed=seed)
            report.add(f"split-control-p{p}-r{r}",
                       "the untwisted filtration splits at every step",
                       all(s.split for s in steps0))


def _suite_prop_3_1(report, params, seed):
    ps, rs = _grid(params)
    for p in ps:
        F = GF(p)
        g = params.get("g") or _std_g(F)
        avals = params.get("a")
        avals = [avals] if avals is not None else [0, 1]
        for r in rs:
            if r < 2:
                continue
            for a in avals:
                tag = f"p{p}-r{r}-a{a}"
                Z = twist(baby_verma(a, F), g)
                M = induce(Z, r)
                report.add(f"brick-{tag}",
                           "graded End of the induced module is one-dimensional",
                           hom_dim(M, M) == 1)
                target = twist(premet_w(p ** r + a, F), g)
                report.add(f"restriction-{tag}",
                           "the induced module restricts to the twisted W(p^r + a)",
                           is_isomorphic(restrict(M), target, seed=seed))
                filt = voigt_filtration(M)
                for l in range(filt.length):
                    want = twist(premet_w((l + 1) * p + a, F), g)
                    ok = is_isomorphic(filt.step_rep(l), want, seed=seed)
                    report.add(f"step-iso-{tag}-l{l}",
                               f"N_{l} is the twisted W({(l + 1) * p + a})", ok)


def _suite_thm_3_3(report, params, seed):
    p = params.get("p") or 3
    F = GF(p)
    g = params.get("g") or _std_g(F)
    r = params.get("r") or 1
    s = params.get("s") or 1
    avals = [params["a"]] if params.get("a") is not None else [0, 1]
    for a in avals:
        Z = twist(baby_verma(a, F), g)
        Y = induce(Z, r)
        N = induce_graded(Y, s)
        filt = voigt_filtration(N)
        for l in range(1, filt.length + 1):
            tag = f"p{p}-r{r}-s{s}-a{a}-l{l}"
            want = twist(premet_w(l * p ** r + a, F), g)
            report.add(f"twostage-restrict-{tag}",
                       f"two-stage step N_{l - 1} restricts to the twisted "
                       f"W({l * p ** r + a})",
                       is_isomorphic(filt.step_rep(l - 1), want, seed=seed))
            X = realize_x(a, g, l, r)
            step = restrict_level(filt.step_module(l - 1), r)
            report.add(f"twostage-route-{tag}",
                       "two-stage step matches the direct realisation",
                       is_isomorphic(X, step, seed=seed))


def _suite_sec_4(report, params, seed):
    q = 7
    F = GF(q)
    d = params.get("d", 8)
    gs = [SL2Element.identity(F), SL2Element.w0(F),
          SL2Element.from_ints(F, 1, 0, 1, 1)]
    for n in (2, 3, 6):
        Gamma = cyclic_torus_subgroup(F, n)
        for k, g in enumerate(gs):
            tag = f"n{n}-g{k}"
            M = twist(premet_w(d, F), g)
            pt = act_on_point(g, ProjPoint.of(F, 1, 0))
            _, stab = orbit_stabilizer(Gamma, pt)
            mstab = module_stabilizer(Gamma, M, seed=seed)
            report.add(f"stab-match-{tag}",
                       "module stabiliser equals the point stabiliser",
                       set(stab.elements) == set(mstab.elements))
            report.add(f"stab-cyclic-{tag}",
                       "the stabiliser is cyclic", is_cyclic(mstab))


def _suite_sec_5(report, params, seed):
    p = params.get("p") or 3
    r = params.get("r") or 2
    F = GF(p)
    g = params.get("g") or _std_g(F)
    avals = [params["a"]] if params.get("a") is not None else [0, 1]
    n = p ** (r - 1)
    for a in avals:
        tag = f"p{p}-r{r}-a{a}"
        X = realize_x(a, g, 1, r)
        M = induce(restrict(X), r)
        parts = decompose(M, seed=seed)
        count = sum(m for _, m in parts)
        report.add(f"summand-count-{tag}",
                   f"the re-induced module has exactly {n} summands",
                   count == n)
        report.add(f"twist-stable-control-{tag}",
                   "every summand is a copy of the original (stable case)",
                   all(is_isomorphic(S, X, seed=seed) for S, _ in parts))
        report.add(f"pairwise-noniso-{tag}",
                   "the summands are pairwise non-isomorphic character twists",
                   len(parts) == n and all(m == 1 for _, m in parts))
        # regular case: the graded W-family has trivial character stabiliser
        W = premet_w_graded(p + a, r, F)
        MW = induce(restrict(W), r)
        partsW = decompose(MW, seed=seed)
        okW = (len(partsW) == n and all(m == 1 for _, m in partsW))
        twists = [char_twist(W, p * k) for k in range(n)]
        matched = all(any(is_isomorphic(S, T, seed=seed) for T in twists)
                      for S, _ in partsW)
        report.add(f"regular-case-{tag}",
                   "the induced stable-free module splits into pairwise "
                   "non-isomorphic character twists", okW and matched)


def _suite_sec_6(report, params, seed):
    F = GF(7)
    n = params.get("n", 3)
    gen = cyclic_torus_subgroup(F, n).elements[1]
    d = params.get("d", 8)
    # full stabiliser
    M = premet_w(d, F)
    rep = clifford_counts(M, gen, seed=seed)
    report.add("full-stab-count",
               "stable module: orbit classes x stabiliser = group order",
               rep.count_identity and rep.stabilizer_order == n)
    report.add("full-stab-dims", "equivariant summand dimensions match",
               rep.skew_summands == [(M.dim, 1)] * n and rep.dims_conserved)
    report.add("full-stab-bound",
               "classes above one plain class are bounded by the group order",
               rep.restriction_classes_bound)
    # trivial stabiliser
    h = SL2Element.from_ints(F, 1, 0, 1, 1)
    M2 = twist(M, h)
    rep2 = clifford_counts(M2, gen, seed=seed)
    report.add("free-orbit-count",
               "free orbit: as many plain classes as group elements",
               rep2.count_identity and rep2.orbit_classes == n)
    report.add("free-orbit-induced",
               "free orbit induces a single equivariant summand",
               rep2.skew_summands == [(n * M2.dim, 1)] and rep2.dims_conserved)


def _suite_thm_1_3(report, params, seed):
    p = params.get("p") or 3
    r = params.get("r") or 2
    F = GF(p)
    g = params.get("g") or _std_g(F)
    lams = [p * k for k in range(p ** (r - 1))]
    family = {}
    for d in range(0, 3 * p):
        if d % p == p - 1:
            continue
        for lam in lams:
            family[f"V({d})+{lam}"] = char_twist(weyl_graded(d, r, F), lam)
    w0 = SL2Element.w0(F)
    for d in (p, p + 1, 2 * p, 2 * p + 1):
        for j in (0, 1):
            for lam in lams:
                W = premet_w_graded(d, r, F)
                if j:
                    W = twist_graded(W, w0)
                family[f"W({d})w{j}+{lam}"] = char_twist(W, lam)
    for a in (0, 1):
        for l in (1, 2):
            family[f"X({a},{l})"] = realize_x(a, g, l, r)
    names = sorted(family)
    from .homalg import _fingerprint
    prints = {nm: _fingerprint(family[nm]) for nm in names}
    bad = []
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            if prints[names[i]] != prints[names[j]]:
                continue
            if is_isomorphic(family[names[i]], family[names[j]], seed=seed):
                bad.append((names[i], names[j]))
    report.add("pairwise-noniso",
               f"all {len(names)} family members are pairwise non-isomorphic",
               not bad, details="; ".join(f"{a} = {b}" for a, b in bad[:5]))


SUITES = {
    "relations": _suite_relations,
    "prop-2.1-2.2": _suite_prop_2_1_2_2,
    "prop-2.4-2.6": _suite_prop_2_4_2_6,
    "prop-3.1": _suite_prop_3_1,
    "thm-3.3": _suite_thm_3_3,
    "sec-4-stabilizers": _suite_sec_4,
    "sec-5-clifford": _suite_sec_5,
    "sec-6-counting": _suite_sec_6,
    "thm-1.3-pairwise": _suite_thm_1_3,
}

SUITE_NAMES = sorted(SUITES)


def run_suite(name: str, params: dict | None = None,
              seed: int = DEFAULT_SEED) -> VerificationReport:
    """Run one named suite; unknown names raise KeyError."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    params = dict(params or {})
    if params.get("a") is not None and params.get("p") is not None:
        if params["a"] >= params["p"] - 1:
            raise ValueError("weight parameter must satisfy a <= p - 2")
    report = VerificationReport(name, params)
    t0 = time.time()
    SUITES[name](report, params, seed)
    report.elapsed = time.time() - t0
    return report
