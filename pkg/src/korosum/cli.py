"""Command-line surface: single-shot queries, parameter scans, reports.

Scans are data-parallel over moduli with a fixed-order gather, so the same
config produces byte-identical output no matter how many workers run it.
No environment variable influences results.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple

from . import bounds, digits, normalnum, numtheory, sumeval
from .errors import BoundViolation, ConfigError, KorosumError, RangeViolation
from .numtheory import PrimeSet

#: Relative slack allowed between an empirical sum and any proven bound.
VALIDITY_SLACK = 1e-6

_CSV_FIELDS = (
    "m",
    "a",
    "N",
    "k_star",
    "s_abs",
    "ratio",
    "bound_recursive",
    "bound_main",
    "bound_long",
    "bound_short",
    "bound_prime",
    "nontrivial_recursive",
    "nontrivial_main",
)


@dataclass
class ScanRow:
    m: int
    a: int
    N: int
    k_star: int
    s_abs: float
    ratio: float
    bound_recursive: float
    bound_main: float
    bound_long: float
    bound_short: Optional[float]
    bound_prime: Optional[float]
    nontrivial_recursive: bool
    nontrivial_main: bool


@dataclass
class ScanConfig:
    primes: Tuple[int, ...]
    b: int
    m_lo: int
    m_hi: int
    a_policy: Dict
    n_policy: Dict
    k_lo: int
    k_hi: int
    seed: int
    out_path: Optional[str]
    out_format: str
    workers: int


def load_scan_config(doc: Dict) -> ScanConfig:
    """Validate a scan config document, reporting the offending field path."""
    if not isinstance(doc, dict):
        raise ConfigError("", "config must be a JSON object")

    def need(field, kind):
        if field not in doc:
            raise ConfigError(field, "missing")
        value = doc[field]
        if not isinstance(value, kind):
            raise ConfigError(field, f"expected {kind.__name__}")
        return value

    primes = need("primes", list)
    if not primes or not all(isinstance(p, int) for p in primes):
        raise ConfigError("primes", "must be a non-empty list of primes")
    b = need("b", int)
    m_range = need("m_range", list)
    if len(m_range) != 2 or not all(isinstance(v, int) for v in m_range):
        raise ConfigError("m_range", "must be [lo, hi]")
    m_lo, m_hi = m_range
    if m_lo < 2 or m_hi < m_lo:
        raise ConfigError("m_range", "need 2 <= lo <= hi")
    a_policy = need("a_policy", dict)
    kind = a_policy.get("kind")
    if kind == "fixed":
        values = a_policy.get("values")
        if not isinstance(values, list) or not values:
            raise ConfigError("a_policy.values", "must be a non-empty list")
    elif kind == "sample":
        if not isinstance(a_policy.get("count"), int) or a_policy["count"] < 1:
            raise ConfigError("a_policy.count", "must be a positive integer")
    elif kind != "all":
        raise ConfigError("a_policy.kind", "must be fixed | sample | all")
    n_policy = need("N_policy", dict)
    kind = n_policy.get("kind")
    if kind == "explicit":
        values = n_policy.get("values")
        if not isinstance(values, list) or not values or any(
            not isinstance(v, int) or v < 1 for v in values
        ):
            raise ConfigError("N_policy.values", "must be positive integers")
    elif kind == "powers":
        exps = n_policy.get("exponents")
        if not isinstance(exps, list) or not exps:
            raise ConfigError("N_policy.exponents", "must be a non-empty list")
    else:
        raise ConfigError("N_policy.kind", "must be explicit | powers")
    k_range = need("k_range", list)
    if len(k_range) != 2 or k_range[0] < 0 or k_range[1] < k_range[0]:
        raise ConfigError("k_range", "must be [lo, hi] with 0 <= lo <= hi")
    seed = need("seed", int)
    out = doc.get("output", {})
    out_format = out.get("format", "csv")
    if out_format not in ("csv", "json"):
        raise ConfigError("output.format", "must be csv | json")
    workers = doc.get("workers", 1)
    if not isinstance(workers, int) or workers < 1:
        raise ConfigError("workers", "must be a positive integer")
    try:
        PrimeSet(tuple(sorted(primes)))
    except KorosumError as exc:
        raise ConfigError("primes", str(exc)) from None
    for p in sorted(primes):
        if b % p == 0:
            raise ConfigError("b", f"b={b} shares the prime {p} with the prime set")
    return ScanConfig(
        primes=tuple(sorted(primes)),
        b=b,
        m_lo=m_lo,
        m_hi=m_hi,
        a_policy=a_policy,
        n_policy=n_policy,
        k_lo=k_range[0],
        k_hi=k_range[1],
        seed=seed,
        out_path=out.get("path"),
        out_format=out_format,
        workers=workers,
    )


def _units_for(m: int, policy: Dict, seed: int) -> List[int]:
    if policy["kind"] == "fixed":
        chosen = sorted({a % m for a in policy["values"]})
        return [a for a in chosen if a and math.gcd(a, m) == 1]
    if policy["kind"] == "all":
        return [a for a in range(1, m) if math.gcd(a, m) == 1]
    count = policy["count"]
    phi = numtheory.euler_phi(m)
    if phi <= count:
        return [a for a in range(1, m) if math.gcd(a, m) == 1]
    rng = random.Random(f"{seed}:{m}")
    picked = set()
    while len(picked) < count:
        a = rng.randrange(1, m)
        if math.gcd(a, m) == 1:
            picked.add(a)
    return sorted(picked)


def _n_values_for(m: int, policy: Dict) -> List[int]:
    if policy["kind"] == "explicit":
        return sorted(set(policy["values"]))
    return sorted({max(1, math.ceil(m**x)) for x in policy["exponents"]})


def _scan_cell(payload) -> Tuple[List[Dict], Optional[Dict]]:
    """All rows for one modulus; returns (rows, violation_or_None)."""
    m, b, primes, a_policy, n_policy, k_lo, k_hi, seed = payload
    P = PrimeSet(primes)
    rows: List[Dict] = []
    order = numtheory.mult_order(b, m)
    prime_base = None
    fac = numtheory.factorize(m)
    if len(fac) == 1:
        p = next(iter(fac))
        if p % 2 == 1:
            prime_base = (p, fac[p])
    for a in _units_for(m, a_policy, seed):
        for N in _n_values_for(m, n_policy):
            s_abs = sumeval.eval_sum_reduced(a, b, m, N).magnitude
            recs = [bounds.bound_eval(m, N, k, P, b, "recursive") for k in range(k_lo, k_hi + 1)]
            best = min(recs, key=lambda r: (r.bound_value, r.k))
            main = bounds.bound_eval(m, N, best.k, P, b, "main")
            long_rep = bounds.bound_baseline(m, N, 1, P, b, "long")
            short_val = None
            if N <= order:
                short_val = bounds.bound_baseline(m, N, 1, P, b, "short").bound_value
            prime_val = None
            if prime_base is not None and N >= 2:
                prime_val = bounds.bound_korobov_prime(prime_base[0], prime_base[1], N)
            valid_bounds = [r.bound_value for r in recs]
            valid_bounds += [main.bound_value, long_rep.bound_value]
            if short_val is not None:
                valid_bounds.append(short_val)
            for v in valid_bounds:
                if s_abs > v * (1.0 + VALIDITY_SLACK):
                    return rows, {
                        "m": m,
                        "a": a,
                        "N": N,
                        "s_abs": s_abs,
                        "violated_bound": v,
                    }
            rows.append(
                {
                    "m": m,
                    "a": a,
                    "N": N,
                    "k_star": best.k,
                    "s_abs": s_abs,
                    "ratio": s_abs / N,
                    "bound_recursive": best.bound_value,
                    "bound_main": main.bound_value,
                    "bound_long": long_rep.bound_value,
                    "bound_short": short_val,
                    "bound_prime": prime_val,
                    "nontrivial_recursive": best.nontrivial,
                    "nontrivial_main": main.nontrivial,
                }
            )
    return rows, None


def run_scan(config: ScanConfig, workers: Optional[int] = None) -> List[ScanRow]:
    """Enumerate P-smooth m in range and evaluate sums against all bounds.

    Output order is (m, a, N) regardless of worker count.  Any bound
    violation beyond slack aborts with a counterexample.
    """
    P = PrimeSet(config.primes)
    moduli = numtheory.smooth_numbers(P, config.m_hi, lo=max(config.m_lo, 2))
    if not moduli:
        raise ConfigError("m_range", "contains no smooth modulus")
    payloads = [
        (m, config.b, config.primes, config.a_policy, config.n_policy,
         config.k_lo, config.k_hi, config.seed)
        for m in moduli
    ]
    nworkers = workers if workers is not None else config.workers
    if nworkers > 1:
        with Pool(nworkers) as pool:
            results = pool.map(_scan_cell, payloads)
    else:
        results = [_scan_cell(p) for p in payloads]
    rows: List[Dict] = []
    for cell_rows, violation in results:
        if violation is not None:
            raise BoundViolation(violation)
        rows.extend(cell_rows)
    rows.sort(key=lambda r: (r["m"], r["a"], r["N"]))
    return [ScanRow(**r) for r in rows]


def _fmt_float(x: float) -> str:
    return format(x, ".17g")


def render_report(rows: Sequence[ScanRow], format: str = "csv") -> bytes:
    """CSV with a fixed header and 17-significant-digit floats, or JSON with
    stable key order; both re-parse to bit-identical values."""
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_CSV_FIELDS)
        for row in rows:
            record = dataclasses.asdict(row)
            out = []
            for field in _CSV_FIELDS:
                v = record[field]
                if v is None:
                    out.append("")
                elif isinstance(v, bool):
                    out.append("true" if v else "false")
                elif isinstance(v, float):
                    out.append(_fmt_float(v))
                else:
                    out.append(str(v))
            writer.writerow(out)
        return buf.getvalue().encode("utf-8")
    if format == "json":
        payload = {"rows": [dataclasses.asdict(r) for r in rows]}
        return (json.dumps(payload, indent=1) + "\n").encode("utf-8")
    raise ConfigError("output.format", f"unknown format {format!r}")


def rows_from_csv(data: bytes) -> List[ScanRow]:
    """Parse render_report CSV output back into rows (lossless)."""
    text = data.decode("utf-8")
    reader = csv.DictReader(io.StringIO(text))
    rows = []
    for record in reader:
        kwargs = {}
        for field in _CSV_FIELDS:
            raw = record[field]
            if field in ("m", "a", "N", "k_star"):
                kwargs[field] = int(raw)
            elif field in ("nontrivial_recursive", "nontrivial_main"):
                kwargs[field] = raw == "true"
            elif raw == "":
                kwargs[field] = None
            else:
                kwargs[field] = float(raw)
        rows.append(ScanRow(**kwargs))
    return rows


def load_schedule(doc: Dict) -> normalnum.Schedule:
    """Build a Schedule from its JSON description."""
    if not isinstance(doc, dict):
        raise ConfigError("", "schedule must be a JSON object")
    for field in ("b", "primes", "c", "m"):
        if field not in doc:
            raise ConfigError(field, "missing")
    try:
        primes = PrimeSet(tuple(sorted(doc["primes"])))
    except (KorosumError, TypeError) as exc:
        raise ConfigError("primes", str(exc)) from None
    epsilon = float(doc.get("epsilon", 0.1))

    def build(field: str):
        entry = doc[field]
        kind = entry.get("kind") if isinstance(entry, dict) else None
        if kind == "geometric":
            base = entry.get("base")
            if not isinstance(base, int) or base < 2:
                raise ConfigError(f"{field}.base", "must be an integer >= 2")
            return lambda k: base**k
        if kind == "explicit":
            values = entry.get("values")
            if not isinstance(values, list) or not values:
                raise ConfigError(f"{field}.values", "must be a non-empty list")
            tup = tuple(values)

            def fn(k, _v=tup, _f=field):
                if not 1 <= k <= len(_v):
                    raise ConfigError(_f, f"schedule exhausted at k={k}")
                return _v[k - 1]

            return fn
        raise ConfigError(f"{field}.kind", "must be geometric | explicit")

    return normalnum.Schedule(
        b=doc["b"], primes=primes, c_fn=build("c"), m_fn=build("m"), epsilon=epsilon
    )


def _to_jsonable(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, PrimeSet):
        return list(obj.primes)
    return obj


def _emit(args, payload: Dict, text_lines: Sequence[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(_to_jsonable(payload), indent=2))
    else:
        for line in text_lines:
            print(line)


def _parse_primes(text: str) -> Tuple[int, ...]:
    try:
        return tuple(sorted(int(tok) for tok in text.split(",") if tok))
    except ValueError:
        raise argparse.ArgumentTypeError("primes must be a comma-separated integer list")


def _cmd_order(args) -> int:
    if args.primes:
        P = PrimeSet(args.primes)
        st = numtheory.mult_order_structured(args.b, args.m, P)
        payload = {
            "m": st.m, "tau1": st.tau1, "mu": st.mu, "tau_prime": st.tau_prime,
            "beta": st.beta, "m1": st.m1, "order": st.order,
        }
        _emit(args, payload, [
            f"ord({args.b}, {args.m}) = {st.order}",
            f"  tau1={st.tau1} mu={st.mu} tau'={st.tau_prime} m1={st.m1} beta={st.beta}",
        ])
    else:
        order = numtheory.mult_order(args.b, args.m)
        _emit(args, {"order": order}, [f"ord({args.b}, {args.m}) = {order}"])
    return 0


def _cmd_sum(args) -> int:
    fn = sumeval.eval_sum_reduced if args.reduced else sumeval.eval_sum
    res = fn(args.a, args.b, args.m, args.n)
    payload = {"value": res.value, "magnitude": res.magnitude,
               "N": res.N, "m": res.m, "a": res.a, "b": res.b}
    _emit(args, payload, [
        f"S_{args.n}({args.a}/{args.m}, b={args.b}) = {res.value:.12g}",
        f"|S| = {res.magnitude:.12g}   |S|/N = {res.magnitude / args.n:.6g}",
    ])
    return 0


def _cmd_bound(args) -> int:
    P = PrimeSet(args.primes)
    if args.form == "best":
        best = bounds.best_k(args.m, args.n, P, args.b, args.k_max)
        rep = best.report
        payload = _to_jsonable(rep)
        payload["k_hat"] = best.k_hat
        _emit(args, payload, [
            f"best level k*={best.k_star} (interval prediction k_hat={best.k_hat})",
            f"bound = {rep.bound_value:.6g}  nontrivial={rep.nontrivial}",
        ])
        return 0
    if args.form in ("short", "long"):
        rep = bounds.bound_baseline(args.m, args.n, args.d, P, args.b, args.form)
    else:
        rep = bounds.bound_eval(args.m, args.n, args.k, P, args.b, args.form)
    _emit(args, _to_jsonable(rep), [
        f"{rep.source} bound at k={rep.k}: {rep.bound_value:.6g} "
        f"(terms {rep.term_main:.6g} + {rep.term_secondary:.6g}), "
        f"nontrivial={rep.nontrivial}",
    ])
    return 0


def _cmd_intervals(args) -> int:
    rows = []
    lines = []
    for k in range(args.k_max + 1):
        ik, tk = bounds.intervals(k)
        rows.append({
            "k": k,
            "lo": str(ik.lo),
            "hi": None if ik.hi is None else str(ik.hi),
            "optimal_lo": None if tk is None else str(tk.lo),
            "optimal_hi": None if tk is None else str(tk.hi),
        })
        hi = "inf" if ik.hi is None else f"{ik.hi} ({float(ik.hi):.6f})"
        line = f"I_{k} = [{ik.lo} ({float(ik.lo):.6f}), {hi}]"
        if tk is not None:
            line += f"   optimal ~ [{float(tk.lo):.6f}, {float(tk.hi):.6f}]"
        lines.append(line)
    _emit(args, {"intervals": rows}, lines)
    return 0


def _cmd_constants(args) -> int:
    P = PrimeSet(args.primes)
    kc = bounds.k_constants(P, args.b)
    lc = bounds.epsilon_prime_and_c(120)
    mant, exp10 = kc.k1_mantissa_exponent()
    table = [bounds.constants(k, P, args.b) for k in range(args.k_max + 1)]
    payload = {
        "M": numtheory.capital_m(P, args.b),
        "Q": P.Q,
        "K1": kc.k1, "K1_mantissa": mant, "K1_exp10": exp10,
        "K2": kc.k2, "K3": kc.k3,
        "c": lc.c, "c_tail": lc.tail_bound,
        "levels": [{"k": cs.k, "A_k": cs.a_k, "B_k": cs.b_k} for cs in table],
    }
    lines = [
        f"M = {payload['M']}, Q = {P.Q}",
        f"K1 = {mant:.6f}e{exp10}, K2 = {kc.k2:g}, K3 = {kc.k3:.6g}",
        f"c = {lc.c:.18f} +/- {lc.tail_bound:.3g}",
    ]
    lines += [f"  k={cs.k}: A_k = {cs.a_k:.6g}, B_k = {cs.b_k:.6g}" for cs in table]
    _emit(args, payload, lines)
    return 0


def _cmd_scan(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    config = load_scan_config(doc)
    rows = run_scan(config, workers=args.workers)
    fmt = args.format or config.out_format
    data = render_report(rows, fmt)
    out_path = args.out or config.out_path
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(data)
        print(f"wrote {len(rows)} rows to {out_path}", file=sys.stderr)
    else:
        sys.stdout.buffer.write(data)
    return 0


def _cmd_digits(args) -> int:
    pattern = digits.DigitPattern.from_string(args.pattern, args.base)
    if args.primes:
        P = PrimeSet(args.primes)
        rep = digits.deviation_report(args.a, args.m, pattern, args.n, P, args.base)
        occ = rep.occurrence
        payload = _to_jsonable(rep)
        lines = [
            f"pattern {args.pattern} occurs {occ.count} times in the first {args.n} digits",
            f"expected {occ.expected:.6g}, deviation {occ.deviation:+.6g}",
            f"envelope {rep.envelope:.6g}, ratio {rep.ratio:.6g} (advisory)",
        ]
    else:
        occ = digits.count_occurrences(args.a, args.m, pattern, args.n)
        payload = _to_jsonable(occ)
        lines = [
            f"pattern {args.pattern} occurs {occ.count} times in the first {args.n} digits",
            f"expected {occ.expected:.6g}, deviation {occ.deviation:+.6g}",
        ]
    _emit(args, payload, lines)
    return 0


def _cmd_normal(args) -> int:
    with open(args.schedule, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    schedule = load_schedule(doc)
    validation = normalnum.validate_schedule(schedule, args.k_check)
    trace = normalnum.discrepancy_trace(schedule, args.n_max)
    payload = {
        "validation": _to_jsonable(validation),
        "trace": [{"N": n, "d_star": d, "d_two_sided_max": 2 * d} for n, d in trace.rows],
        "final_d_star": trace.final_d_star,
        "overall_decreasing": trace.overall_decreasing,
    }
    lines = [f"schedule ok through k={validation.horizon}; "
             f"hypothesis ratio decreasing: {validation.ratio_decreasing}"]
    lines += [f"  N={n:>9}  D* = {d:.6f}  (D <= {2 * d:.6f})" for n, d in trace.rows]
    lines.append(f"final D* = {trace.final_d_star:.6f}, trend decreasing: "
                 f"{trace.overall_decreasing}")
    _emit(args, payload, lines)
    return 0


def _cmd_verify(args) -> int:
    rep = sumeval.verify_differencing(args.a, args.b, args.m, args.m_prime, args.n)
    _emit(args, _to_jsonable(rep), [
        f"lhs^2 = {rep.lhs_squared:.6g}  rhs = {rep.rhs:.6g}  "
        f"(m'={rep.m_prime}, tau={rep.tau})",
        f"holds: {rep.holds}",
    ])
    return 0 if rep.holds else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="korosum",
        description="Exponential sums e(a b^n / m): exact evaluation, explicit "
                    "bounds, digit statistics, normal-number constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = sub.add_parser("order", help="multiplicative order of b mod m")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--primes", type=_parse_primes, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("sum", help="evaluate S_N = sum e(a b^n / m)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reduced", action="store_true",
                   help="use the period-folded evaluator")
    add_json(p)
    p.set_defaults(func=_cmd_sum)

    p = sub.add_parser("bound", help="evaluate a bound on |S_N|")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--primes", type=_parse_primes, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--form", choices=("recursive", "main", "short", "long", "best"),
                   default="recursive")
    p.add_argument("--d", type=int, default=1, help="gcd(a, m) for the short form")
    p.add_argument("--k-max", type=int, default=8, dest="k_max")
    add_json(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("intervals", help="non-trivial and optimal exponent ranges")
    p.add_argument("--k-max", type=int, default=8, dest="k_max")
    add_json(p)
    p.set_defaults(func=_cmd_intervals)

    p = sub.add_parser("constants", help="environment constants M, Q, K1-K3, A_k, B_k, c")
    p.add_argument("--primes", type=_parse_primes, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--k-max", type=int, default=6, dest="k_max")
    add_json(p)
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("scan", help="parameter sweep from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("digits", help="pattern statistics in the expansion of a/m")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--primes", type=_parse_primes, default=None,
                   help="enables the advisory deviation envelope")
    add_json(p)
    p.set_defaults(func=_cmd_digits)

    p = sub.add_parser("normal", help="normal-number schedule diagnostics")
    p.add_argument("--schedule", required=True)
    p.add_argument("--n-max", type=int, required=True, dest="n_max")
    p.add_argument("--k-check", type=int, default=12, dest="k_check")
    add_json(p)
    p.set_defaults(func=_cmd_normal)

    p = sub.add_parser("verify", help="check the differencing inequality on one instance")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--m-prime", type=int, required=True, dest="m_prime")
    p.add_argument("--n", type=int, required=True)
    add_json(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BoundViolation as exc:
        print("THEOREM VIOLATION (implementation bug): counterexample follows",
              file=sys.stderr)
        print(json.dumps(_to_jsonable(exc.detail), indent=2), file=sys.stderr)
        return 3
    except (ConfigError, RangeViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KorosumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
