"""Finite-instance checkers and the exhaustive sweep explorer.

Every finitely checkable claim about weight cones of strata is packaged as a
named check producing a CheckResult.  A failing result always carries a
witness that re-verifies with the cone kernel alone: either a vector
together with a violated constraint of the cone it was claimed to lie in,
or a full membership certificate for a vector claimed to lie outside.

The explorer sweeps all cycle partitions of all degrees up to a bound for a
list of primes, runs every check on every stratum, and aggregates a
deterministic JSON-ready report: strata are processed in sorted order and
results merged positionally, so the output is byte-identical no matter how
many worker processes are used.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .cone_kernel import (
    Cone,
    cone_complete,
    cone_equal,
    cone_from_constraints,
    cone_from_rays,
    cone_image,
    cone_member,
)
from .splitting import (
    EmbeddingId,
    SplittingConfig,
    Stratum,
    admissible_set,
    frobenius_shift,
    index_tables,
    places_and_iw,
    sign_epsilon,
    tilde_closure,
)
from .weights import (
    cone_D,
    delta_class,
    explicit_constraints,
    f_recipe,
    f_weight,
    functional_LT,
    functional_Lf,
    generators_G,
    generators_Gprime,
    gl2_generators,
    lift_jT,
    minimal_cone,
    monomial_weight,
    reduce_iT,
    reduction_matrix,
    section_recipe,
    weight_basis,
    weight_pair,
)

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check on one stratum."""

    name: str
    stratum: str
    status: str
    witness: dict | None = None


@dataclass(frozen=True)
class Report:
    """Aggregated sweep results, ready for JSON serialization."""

    schema: int
    config: dict
    strata: tuple[dict, ...]
    open_question: dict
    summary: dict

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "config": self.config,
            "strata": list(self.strata),
            "open_question": self.open_question,
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# ---------------------------------------------------------------------------
# serialization helpers: mathematical integers travel as decimal strings so
# arbitrary-precision values survive any JSON consumer


def _num(x) -> str:
    return str(x)


def _vec(v: Sequence) -> list[str]:
    return [_num(x) for x in v]


def _vecs(vs: Iterable[Sequence]) -> list[list[str]]:
    return [_vec(v) for v in vs]


def _emb_key(emb: EmbeddingId) -> str:
    return f"{emb.cycle}.{emb.pos}"


def _cone_record(cone: Cone) -> dict:
    c = cone_complete(cone)
    return {
        "dim": c.dim,
        "ineqs": _vecs(c.con.ineqs),
        "eqns": _vecs(c.con.eqns),
        "rays": _vecs(c.gen.rays),
        "lines": _vecs(c.gen.lines),
    }


def _dot(form: Sequence, vec: Sequence):
    return sum(a * b for a, b in zip(form, vec))


# ---------------------------------------------------------------------------
# witness builders


def _outside_witness(vec: Sequence, cert) -> dict:
    return {"weight": _vec(vec), "violated_form": _vec(cert.violated_form)}


def _inside_witness(vec: Sequence, cert, cone: Cone) -> dict:
    c = cone_complete(cone)
    return {
        "weight": _vec(vec),
        "ray_coeffs": {_num(i): _num(x)
                       for i, x in sorted(cert.ray_coeffs.items())},
        "line_coeffs": {_num(i): _num(x)
                        for i, x in sorted(cert.line_coeffs.items())},
        "rays": _vecs(c.gen.rays),
        "lines": _vecs(c.gen.lines),
    }


def _equality_result(name: str, key: str, left: Cone, right: Cone,
                     left_label: str, right_label: str) -> CheckResult:
    """Pass iff the completed cones agree; on failure, witness a generator
    of one side with a violated constraint of the other."""
    a = cone_complete(left)
    b = cone_complete(right)
    for source, target, src_label, tgt_label in (
            (a, b, left_label, right_label),
            (b, a, right_label, left_label)):
        for gen in source.gen.rays + source.gen.lines + tuple(
                tuple(-x for x in line) for line in source.gen.lines):
            cert = cone_member(target, gen)
            if not cert.inside:
                witness = _outside_witness(gen, cert)
                witness["generator_of"] = src_label
                witness["not_in"] = tgt_label
                return CheckResult(name, key, FAIL, witness)
    return CheckResult(name, key, PASS)


# ---------------------------------------------------------------------------
# per-stratum shared data


@dataclass
class _StratumData:
    stratum: Stratum
    tables: object
    dcone: Cone
    forms: tuple


def _prepare(stratum: Stratum) -> _StratumData:
    return _StratumData(
        stratum=stratum,
        tables=index_tables(stratum, extended_n=True),
        dcone=cone_D(stratum),
        forms=explicit_constraints(stratum).ineqs,
    )


# ---------------------------------------------------------------------------
# individual checks


def _check_optimal_basis(data: _StratumData) -> CheckResult:
    return _equality_result(
        "optimal_basis", data.stratum.key(),
        cone_D(data.stratum, "G"), data.dcone,
        "pair-generated cone", "one-ray-per-embedding cone")


def _check_explicit_halfspaces(data: _StratumData) -> CheckResult:
    cut = cone_from_constraints(data.forms, dim=data.stratum.config.degree)
    return _equality_result(
        "explicit_halfspaces", data.stratum.key(),
        data.dcone, cut, "generated cone", "half-space cone")


def _check_biorthogonality(data: _StratumData) -> CheckResult:
    t = data.stratum
    key = t.key()
    outside = sorted(t.complement())
    gens = generators_Gprime(t)
    rays = [w for w, is_line in gens if not is_line]
    lines = [w for w, is_line in gens if is_line]
    for beta, form in zip(outside, data.forms):
        for tau, ray in zip(outside, rays):
            value = _dot(form, ray)
            good = value > 0 if tau == beta else value == 0
            if not good:
                return CheckResult("biorthogonality", key, FAIL, {
                    "functional_at": _emb_key(beta),
                    "generator_at": _emb_key(tau),
                    "functional": _vec(form),
                    "generator": _vec(ray),
                    "value": _num(value)})
        for line in lines:
            if _dot(form, line) != 0:
                return CheckResult("biorthogonality", key, FAIL, {
                    "functional_at": _emb_key(beta),
                    "functional": _vec(form),
                    "line": _vec(line),
                    "value": _num(_dot(form, line))})
    return CheckResult("biorthogonality", key, PASS)


def _hasse_type_cone(stratum: Stratum) -> Cone:
    config = stratum.config
    rays = [weight_basis(config, "h", beta)
            for beta in sorted(stratum.complement())]
    lines = [weight_basis(config, "b", beta)
             for beta in sorted(stratum.members)]
    return cone_complete(cone_from_rays(rays, lines, dim=config.degree))


def _check_admissible_dichotomy(data: _StratumData) -> CheckResult:
    """Admissible strata carry exactly the Hasse-type cone; otherwise the
    inclusion is claimed strict, witnessed by a distinguished generator
    outside the Hasse-type cone.

    Since the weight cone is generated by the distinguished generators plus
    the lines shared with the Hasse-type cone, strictness is equivalent to
    some generator escaping; when every one of them stays inside, the cones
    are equal and the witness lists the full set of membership certificates
    proving it."""
    t = data.stratum
    key = t.key()
    name = "admissible_dichotomy"
    hasse = _hasse_type_cone(t)
    for gen in hasse.gen.rays + hasse.gen.lines + tuple(
            tuple(-x for x in line) for line in hasse.gen.lines):
        cert = cone_member(data.dcone, gen)
        if not cert.inside:
            witness = _outside_witness(gen, cert)
            witness["generator_of"] = "Hasse-type cone"
            witness["not_in"] = "weight cone"
            return CheckResult(name, key, FAIL, witness)
    tilde = data.tables.tilde
    if tilde.members == t.members:
        return _equality_result(name, key, hasse, data.dcone,
                                "Hasse-type cone", "weight cone")
    memberships = []
    for beta in sorted(t.complement()):
        fw = f_weight(t, beta)
        cert = cone_member(hasse, fw)
        if not cert.inside:
            witness = _outside_witness(fw, cert)
            witness["strict_via"] = _emb_key(beta)
            return CheckResult(name, key, PASS, witness)
        memberships.append({
            "generator_at": _emb_key(beta),
            "weight": _vec(fw),
            "ray_coeffs": {_num(i): _num(x)
                           for i, x in sorted(cert.ray_coeffs.items())},
            "line_coeffs": {_num(i): _num(x)
                            for i, x in sorted(cert.line_coeffs.items())},
        })
    return CheckResult(name, key, FAIL, {
        "claimed": "strict inclusion of the Hasse-type cone",
        "found": "the cones are equal",
        "rays": _vecs(hasse.gen.rays),
        "lines": _vecs(hasse.gen.lines),
        "memberships": memberships,
    })


def _check_hasse_identity(data: _StratumData) -> CheckResult:
    config = data.stratum.config
    key = data.stratum.key()
    for c, f in enumerate(config.cycle_lengths):
        for n in range(1, f):
            for m in range(1, f - n + 1):
                beta = EmbeddingId(c, 0)
                mid = frobenius_shift(config, beta, n)
                top = frobenius_shift(config, beta, n + m)
                long = weight_pair(config, "h", top, beta)
                split = tuple(
                    a + config.p ** m * b
                    for a, b in zip(weight_pair(config, "h", top, mid),
                                    weight_pair(config, "h", mid, beta)))
                if long != split:
                    return CheckResult("hasse_identity", key, FAIL, {
                        "cycle": _num(c), "n": _num(n), "m": _num(m),
                        "direct": _vec(long), "composed": _vec(split)})
    return CheckResult("hasse_identity", key, PASS)


def _check_reduction_identities(data: _StratumData) -> CheckResult:
    t = data.stratum
    key = t.key()
    name = "reduction_identities"
    config = t.config
    outside = sorted(t.complement())
    for i in range(len(outside)):
        probe = tuple(1 if j == i else 0 for j in range(len(outside)))
        back = reduce_iT(t, lift_jT(t, probe))
        if back != probe:
            return CheckResult(name, key, FAIL, {
                "probe": _vec(probe), "round_trip": _vec(back)})
    rows = reduction_matrix(t)
    kernel = cone_from_constraints([], rows, dim=config.degree)
    spanned = cone_from_rays(
        [], [weight_basis(config, "b", beta) for beta in sorted(t.members)],
        dim=config.degree)
    result = _equality_result(name, key, kernel, spanned,
                              "reduction kernel", "span of b lines on T")
    if result.status != PASS:
        return result
    reduced = cone_image(rows, data.dcone)
    lifted_rays = [lift_jT(t, ray) for ray in cone_complete(reduced).gen.rays]
    lifted_lines = [lift_jT(t, line)
                    for line in cone_complete(reduced).gen.lines]
    lifted_lines += [weight_basis(config, "b", beta)
                     for beta in sorted(t.members)]
    rebuilt = cone_from_rays(lifted_rays, lifted_lines, dim=config.degree)
    return _equality_result(name, key, data.dcone, rebuilt,
                            "weight cone", "lifted reduction plus kernel")


def _check_recipe_weights(data: _StratumData) -> CheckResult:
    t = data.stratum
    key = t.key()
    name = "recipe_weights"
    config = t.config
    tilde = data.tables.tilde
    for c, f in enumerate(config.cycle_lengths):
        in_t = t.cycle_members(c)
        in_tilde = tilde.cycle_members(c)
        targets = ({i for i in range(f) if i not in in_tilde}
                   | {(i + 1) % f for i in in_tilde - in_t})
        for i in range(f):
            if i in in_t:
                continue
            for j in sorted(targets):
                emb, target = EmbeddingId(c, i), EmbeddingId(c, j)
                try:
                    monomial = section_recipe(t, emb, target)
                except AssertionError as exc:
                    return CheckResult(name, key, FAIL, {
                        "pair": [_emb_key(emb), _emb_key(target)],
                        "error": str(exc)})
                got = monomial_weight(monomial)
                want = weight_pair(config, "h", emb, target)
                if got != want:
                    return CheckResult(name, key, FAIL, {
                        "pair": [_emb_key(emb), _emb_key(target)],
                        "monomial_weight": _vec(got),
                        "pair_weight": _vec(want)})
    for beta in sorted(t.complement()):
        try:
            monomial, tag = f_recipe(t, beta)
        except AssertionError as exc:
            return CheckResult(name, key, FAIL, {
                "generator_at": _emb_key(beta), "error": str(exc)})
        if monomial_weight(monomial) != f_weight(t, beta):
            return CheckResult(name, key, FAIL, {
                "generator_at": _emb_key(beta),
                "monomial_weight": _vec(monomial_weight(monomial)),
                "generator_weight": _vec(f_weight(t, beta))})
        if tag.is_zero() != (beta not in tilde):
            return CheckResult(name, key, FAIL, {
                "generator_at": _emb_key(beta),
                "tag_residues": _vec(tag.residues)})
    return CheckResult(name, key, PASS)


def _check_divisor_functionals(data: _StratumData) -> CheckResult:
    """Each distinguished generator at an admissible embedding violates its
    own divisibility functional, and the pairing is -2 p^(n + delta) with
    delta >= 0."""
    t = data.stratum
    key = t.key()
    name = "divisor_functionals"
    adm = sorted(admissible_set(t))
    if not adm:
        return CheckResult(name, key, INFO,
                           {"reason": "no admissible embeddings"})
    p = t.config.p
    for beta in adm:
        fw = f_weight(t, beta)
        form = functional_Lf(t, beta, beta)
        value = _dot(form, fw)
        n = data.tables.n_of(beta)
        power = -value
        good = value < 0 and power % 2 == 0
        if good:
            power //= 2
            while power % p == 0:
                power //= p
            good = power == 1 and -value >= 2 * p ** n
        if not good:
            return CheckResult(name, key, FAIL, {
                "beta": _emb_key(beta),
                "functional": _vec(form),
                "generator": _vec(fw),
                "value": _num(value)})
    return CheckResult(name, key, PASS)


def _check_minimal_nesting(data: _StratumData) -> CheckResult:
    t = data.stratum
    key = t.key()
    name = "minimal_nesting"
    mini = cone_complete(minimal_cone(t, "min"))
    mini0 = cone_complete(minimal_cone(t, "min0"))
    reduced = cone_complete(cone_image(reduction_matrix(t), data.dcone))
    for small, big, small_label, big_label in (
            (mini, mini0, "minimal cone", "diagonal minimal cone"),
            (mini0, reduced, "diagonal minimal cone", "reduced weight cone")):
        for gen in small.gen.rays + small.gen.lines + tuple(
                tuple(-x for x in line) for line in small.gen.lines):
            cert = cone_member(big, gen)
            if not cert.inside:
                witness = _outside_witness(gen, cert)
                witness["generator_of"] = small_label
                witness["not_in"] = big_label
                return CheckResult(name, key, FAIL, witness)
    return CheckResult(name, key, PASS)


def _check_diagonal_minimal(data: _StratumData) -> CheckResult:
    """For admissible strata the minimal cone has the explicit diagonal
    description p^n l(shift^n beta) >= l(beta)."""
    t = data.stratum
    key = t.key()
    name = "diagonal_minimal"
    if data.tables.tilde.members != t.members:
        return CheckResult(name, key, INFO,
                           {"reason": "tilde closure differs from T"})
    outside = sorted(t.complement())
    index = {beta: i for i, beta in enumerate(outside)}
    forms = []
    for beta in outside:
        n = data.tables.n_of(beta)
        form = [0] * len(outside)
        form[index[beta]] -= 1
        shifted = frobenius_shift(t.config, beta, n)
        form[index[shifted]] += t.config.p ** n
        forms.append(tuple(form))
    described = cone_from_constraints(forms, dim=len(outside))
    return _equality_result(name, key, minimal_cone(t, "min"), described,
                            "minimal cone", "diagonal description")


def _check_gl2_product(data: _StratumData) -> CheckResult:
    t = data.stratum
    dim = t.config.degree
    gens = gl2_generators(t)
    rays = [bw.lam + bw.kappa for bw, is_line in gens if not is_line]
    lines = [bw.lam + bw.kappa for bw, is_line in gens if is_line]
    built = cone_from_rays(rays, lines, dim=2 * dim)
    product = cone_from_constraints(
        [(0,) * dim + form for form in data.forms], dim=2 * dim)
    return _equality_result(
        "gl2_product", t.key(), built, product,
        "bi-weight generated cone", "free-by-weight-cone product")


def _hasse_coordinates(config: SplittingConfig,
                       weight: Sequence[int]) -> list[Fraction]:
    """Rational coordinates of a weight in the Hasse-weight basis.

    Per cycle the basis matrix has determinant +-(p^f - (-1)^f), never
    zero, so the solution exists and is unique; lattice membership is its
    integrality."""
    coords: list[Fraction] = []
    offset = 0
    for f in config.cycle_lengths:
        aug = [[Fraction(0)] * f + [Fraction(weight[offset + i])]
               for i in range(f)]
        for j in range(f):
            aug[j][j] -= 1
            aug[(j - 1) % f][j] += config.p
        for col in range(f):
            piv = next(r for r in range(col, f) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            scale = aug[col][col]
            aug[col] = [x / scale for x in aug[col]]
            for r in range(f):
                if r != col and aug[r][col] != 0:
                    factor = aug[r][col]
                    aug[r] = [a - factor * b
                              for a, b in zip(aug[r], aug[col])]
        coords.extend(row[-1] for row in aug)
        offset += f
    return coords


def _check_delta_kernel(data: _StratumData) -> CheckResult:
    """The per-cycle residue invariant vanishes exactly on the lattice
    spanned by the Hasse weights; checked on all basis Hasse weights and a
    deterministic sample of random integer weights."""
    t = data.stratum
    config = t.config
    key = t.key()
    name = "delta_kernel"
    samples = [weight_basis(config, "h", emb) for emb in config.embeddings()]
    rng = random.Random(f"delta:{config.p}:{config.cycle_lengths}:{key}")
    samples += [tuple(rng.randint(-40, 40) for _ in range(config.degree))
                for _ in range(25)]
    for weight in samples:
        coords = _hasse_coordinates(config, weight)
        in_lattice = all(c.denominator == 1 for c in coords)
        if delta_class(config, weight).is_zero() != in_lattice:
            return CheckResult(name, key, FAIL, {
                "weight": _vec(weight),
                "residues": _vec(delta_class(config, weight).residues),
                "hasse_coordinates": _vec(coords)})
    return CheckResult(name, key, PASS)


def _check_product_structure(data: _StratumData) -> CheckResult:
    """Multi-cycle weight cones factor through the per-cycle cones."""
    t = data.stratum
    config = t.config
    key = t.key()
    name = "product_structure"
    if len(config.cycle_lengths) < 2:
        return CheckResult(name, key, INFO, {"reason": "single cycle"})
    rays = []
    lines = []
    offset = 0
    for c, f in enumerate(config.cycle_lengths):
        sub_config = SplittingConfig(config.p, (f,))
        sub = Stratum(sub_config, frozenset(
            EmbeddingId(0, i) for i in t.cycle_members(c)))
        def pad(v):
            return ((0,) * offset + tuple(v)
                    + (0,) * (config.degree - offset - f))
        for w, is_line in generators_Gprime(sub):
            (lines if is_line else rays).append(pad(w))
        offset += f
    built = cone_from_rays(rays, lines, dim=config.degree)
    return _equality_result(name, key, built, data.dcone,
                            "per-cycle product cone", "weight cone")


_CHECKS = (
    _check_optimal_basis,
    _check_explicit_halfspaces,
    _check_biorthogonality,
    _check_admissible_dichotomy,
    _check_hasse_identity,
    _check_reduction_identities,
    _check_recipe_weights,
    _check_divisor_functionals,
    _check_minimal_nesting,
    _check_diagonal_minimal,
    _check_gl2_product,
    _check_delta_kernel,
    _check_product_structure,
)


def check_stratum(stratum: Stratum) -> list[CheckResult]:
    """Run every named check on one stratum."""
    data = _prepare(stratum)
    return [check(data) for check in _CHECKS]


def check_min_question(stratum: Stratum) -> CheckResult:
    """Compare the two minimal-cone variants.

    Their equality is an open question, so the result is informational
    either way; an unequal pair is reported with a witness ray."""
    key = stratum.key()
    mini = cone_complete(minimal_cone(stratum, "min"))
    mini0 = cone_complete(minimal_cone(stratum, "min0"))
    if cone_equal(mini, mini0):
        return CheckResult("minimal_equality", key, INFO, {"equal": True})
    for gen in mini0.gen.rays + mini0.gen.lines + tuple(
            tuple(-x for x in line) for line in mini0.gen.lines):
        cert = cone_member(mini, gen)
        if not cert.inside:
            witness = _outside_witness(gen, cert)
            witness["equal"] = False
            return CheckResult("minimal_equality", key, INFO, witness)
    # minimal is contained in the diagonal variant by construction, so an
    # unequal pair always yields a witness above
    return CheckResult("minimal_equality", key, INFO, {"equal": False})


# ---------------------------------------------------------------------------
# stratum records and reports


def stratum_dossier(stratum: Stratum) -> dict:
    """The JSON-ready dossier of one stratum: derived combinatorial data,
    generators, half-spaces, and minimal cones."""
    config = stratum.config
    tables = index_tables(stratum, extended_n=True)
    eps = sign_epsilon(stratum)
    s, iw = places_and_iw(stratum)
    embeddings = config.embeddings()
    record = {
        "p": _num(config.p),
        "cycles": _vec(config.cycle_lengths),
        "t": stratum.key(),
        "tilde": tables.tilde.key(),
        "S": {
            "embeddings": [_emb_key(e) for e in sorted(s.embeddings)],
            "primes": _vec(sorted(s.primes)),
        },
        "iw": _vec(sorted(iw)),
        "tables": {
            "mu": {_emb_key(e): _num(tables.mu[e]) for e in embeddings},
            "nu": {_emb_key(e): _num(tables.nu[e]) for e in embeddings
                   if e in tables.nu},
            "n": {_emb_key(e): _num(tables.n[e]) for e in embeddings
                  if e in tables.n},
            "epsilon": {_emb_key(e): _num(eps[e]) for e in embeddings},
        },
        "generators_G": [
            {"weight": _vec(w), "line": is_line}
            for w, is_line in generators_G(stratum)],
        "generators_Gprime": [
            {"weight": _vec(w), "line": is_line}
            for w, is_line in generators_Gprime(stratum)],
        "halfspaces": _vecs(explicit_constraints(stratum).ineqs),
        "minimal": _cone_record(minimal_cone(stratum, "min")),
        "minimal0": _cone_record(minimal_cone(stratum, "min0")),
    }
    return record


def stratum_record(stratum: Stratum) -> dict:
    """A stratum dossier extended with all check results."""
    record = stratum_dossier(stratum)
    results = check_stratum(stratum) + [check_min_question(stratum)]
    record["checks"] = [
        {"name": r.name, "status": r.status}
        | ({"witness": r.witness} if r.witness is not None else {})
        for r in results]
    return record


def _summarize(records: Sequence[dict]) -> tuple[dict, dict]:
    counts = {PASS: 0, FAIL: 0, INFO: 0}
    unequal = []
    for record in records:
        for check in record["checks"]:
            counts[check["status"]] += 1
            if check["name"] == "minimal_equality" and \
                    not check["witness"]["equal"]:
                unequal.append({"p": record["p"], "cycles": record["cycles"],
                                "t": record["t"]})
    summary = {
        "strata": len(records),
        "checks": sum(counts.values()),
        "pass": counts[PASS],
        "fail": counts[FAIL],
        "info": counts[INFO],
    }
    open_question = {
        "equal": summary["strata"] - len(unequal),
        "unequal": len(unequal),
        "instances": unequal,
    }
    return open_question, summary


def check_report(config: SplittingConfig,
                 strata: Sequence[Stratum] | None = None,
                 jobs: int = 1) -> Report:
    """Report over the given strata (default: all strata of the config),
    sorted by canonical key."""
    if strata is None:
        embeddings = config.embeddings()
        strata = [Stratum(config, frozenset(
            e for i, e in enumerate(embeddings) if mask >> i & 1))
            for mask in range(1 << config.degree)]
    tasks = sorted(
        ((config.p, config.cycle_lengths, s.key()) for s in strata),
        key=lambda task: task[2])
    records = _run_tasks(tasks, jobs)
    open_question, summary = _summarize(records)
    return Report(
        schema=SCHEMA_VERSION,
        config={"p": _num(config.p), "cycles": _vec(config.cycle_lengths)},
        strata=tuple(records),
        open_question=open_question,
        summary=summary,
    )


def partitions(d: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing integer partitions of d, descending lexicographically."""
    def rec(left: int, cap: int, prefix: tuple[int, ...]):
        if left == 0:
            yield prefix
            return
        for part in range(min(left, cap), 0, -1):
            yield from rec(left - part, part, prefix + (part,))
    yield from rec(d, d, ())


def _record_task(task: tuple[int, tuple[int, ...], str]) -> dict:
    p, lengths, key = task
    config = SplittingConfig(p, lengths)
    members = frozenset()
    if key:
        members = frozenset(
            EmbeddingId(int(part.split(".")[0]), int(part.split(".")[1]))
            for part in key.split(","))
    return stratum_record(Stratum(config, members))


def _run_tasks(tasks: Sequence[tuple], jobs: int) -> list[dict]:
    if jobs <= 1 or len(tasks) <= 1:
        return [_record_task(task) for task in tasks]
    try:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(tasks) // (jobs * 8))
            return list(pool.map(_record_task, tasks, chunksize=chunk))
    except (OSError, BrokenProcessPool) as exc:
        raise RuntimeError(
            f"parallel execution with {jobs} workers failed: {exc}; "
            "rerun with --jobs 1") from exc


def explore(p_list: Sequence[int], d_max: int, jobs: int = 1) -> Report:
    """Sweep all cycle partitions of every degree up to d_max for every
    prime in p_list, checking all strata of each configuration."""
    if d_max < 1:
        raise ValueError("the degree bound must be at least 1")
    primes = sorted(set(p_list))
    tasks = []
    for p in primes:
        for d in range(1, d_max + 1):
            for lengths in sorted(partitions(d)):
                config = SplittingConfig(p, lengths)
                embeddings = config.embeddings()
                keys = sorted(
                    Stratum(config, frozenset(
                        e for i, e in enumerate(embeddings)
                        if mask >> i & 1)).key()
                    for mask in range(1 << d))
                tasks.extend((p, lengths, key) for key in keys)
    records = _run_tasks(tasks, jobs)
    open_question, summary = _summarize(records)
    return Report(
        schema=SCHEMA_VERSION,
        config={"p_list": _vec(primes), "d_max": _num(d_max)},
        strata=tuple(records),
        open_question=open_question,
        summary=summary,
    )
